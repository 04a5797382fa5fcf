//! Finitely generated abelian groups given by presentations, homomorphisms
//! between them, and the finite limits and colimits the diagram checks need.

mod diagram;
mod group;
mod hom;
mod homset;
mod limits;
pub mod random;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use diagram::{Cospan, Span, Square};
pub use group::{AbGroup, Canonical};
pub use hom::{compose, compose_chain, well_defined, Hom};
pub use homset::{combine, hom_group_generators, hom_lattice_generators};
pub use limits::{
    cokernel, copair, direct_sum, identity, image, is_pullback_square, is_pushout_square, kernel,
    mediating_from_pushout, mediating_into_pullback, pair, pullback, pushout, zero_hom,
    zero_object, DirectSum, PullbackResult, PushoutResult,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbError {
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not well defined: {0}")]
    NotWellDefined(String),
    #[error("endpoint mismatch in {0}")]
    EndpointMismatch(&'static str),
    #[error("square does not commute: {0}")]
    NotCommutative(String),
    #[error("cocone condition violated: {0}")]
    CoconeViolated(String),
    #[error("sampling gave up on {what} after {attempts} attempts")]
    Sampling { what: &'static str, attempts: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
