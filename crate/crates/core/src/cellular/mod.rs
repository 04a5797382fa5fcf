//! Classes of monomorphisms given by a cokernel condition, cellular squares,
//! and checkers for the axioms such classes may or may not satisfy.
//!
//! Over `Z` every group has projective dimension at most one, so
//! `Ext^i(A, N) = 0` for `i >= 2` and the orthogonality test for a class
//! `⊥∞{B_1, ..}` is the single condition `Ext^1(A, B_k) = 0` for all `k`.

mod checks;
pub mod sample;

use thiserror::Error;

use crate::abgrp::{
    cokernel, mediating_from_pushout, pushout, AbError, AbGroup, Hom, PushoutResult, Square,
};
use crate::linalg::{column_basis, IntMatrix};

pub use checks::{
    check_cellular_implies_pullback, check_coherence, check_effective_unions,
    check_left_cancellable,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellularError {
    #[error("square does not commute: {0}")]
    NotCommutative(String),
    #[error("edge {edge} is not in M: {detail}")]
    NotInM { edge: String, detail: String },
    #[error("the two squares are over different spans")]
    SpanMismatch,
    #[error("square {0} is not cellular")]
    NotCellular(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Ab(#[from] AbError),
}

/// Which cokernels an arrow of `M` may have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSpec {
    TorsionFree,
    /// Groups `A` with `Ext^1(A, B) = 0` for every listed `B`.
    PerpOf(Vec<AbGroup>),
    AllGroups,
}

impl ClassSpec {
    /// Short name used in reports: `torsion-free`, `perp(Z/2)`, `all`.
    pub fn name(&self) -> String {
        match self {
            ClassSpec::TorsionFree => "torsion-free".into(),
            ClassSpec::AllGroups => "all".into(),
            ClassSpec::PerpOf(ts) => format!(
                "perp({})",
                ts.iter().map(AbGroup::describe).collect::<Vec<_>>().join(", ")
            ),
        }
    }

    pub fn contains(&self, g: &AbGroup) -> bool {
        in_class(g, self)
    }
}

/// The class `M` of monomorphisms whose cokernel lies in `class_spec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularStructure {
    pub class_spec: ClassSpec,
}

impl CellularStructure {
    pub fn new(class_spec: ClassSpec) -> Self {
        CellularStructure { class_spec }
    }

    pub fn torsion_free() -> Self {
        Self::new(ClassSpec::TorsionFree)
    }

    pub fn all_groups() -> Self {
        Self::new(ClassSpec::AllGroups)
    }

    pub fn perp_of(targets: Vec<AbGroup>) -> Self {
        Self::new(ClassSpec::PerpOf(targets))
    }

    pub fn name(&self) -> String {
        self.class_spec.name()
    }

    pub fn in_m(&self, f: &Hom) -> bool {
        in_m(f, self)
    }

    pub fn require(&self, edge: &str, f: &Hom) -> Result<(), CellularError> {
        if self.in_m(f) {
            Ok(())
        } else {
            let detail = if f.is_mono() {
                format!("cokernel {} is outside {}", cokernel(f).0.describe(), self.name())
            } else {
                "not a monomorphism".to_string()
            };
            Err(CellularError::NotInM {
                edge: edge.to_string(),
                detail,
            })
        }
    }
}

/// `Ext^1(a, n)`.
///
/// `a = Z^k / R` with `R` replaced by a basis `R'` (`k x r`) of its column
/// span, so `0 → Z^r → Z^k → a → 0` is exact. Then `Ext^1(a, n)` is the
/// cokernel of `Hom(Z^k, n) → Hom(Z^r, n)`, `φ ↦ φ R'`. With `n = Z^m / S`
/// and `Hom(Z^r, n) = n^r` this is `Z^(m r)` modulo `I_r ⊗ S` and
/// `R'^T ⊗ I_m`.
pub fn ext1(a: &AbGroup, n: &AbGroup) -> AbGroup {
    let r = column_basis(a.rels());
    let m = n.n_gens();
    let blocks = IntMatrix::identity(r.cols()).kron(n.rels());
    let image = r.transpose().kron(&IntMatrix::identity(m));
    let rels = blocks.hstack(&image).expect("both have m*r rows");
    AbGroup::new(m * r.cols(), rels).expect("rows match generators")
}

pub fn in_class(g: &AbGroup, spec: &ClassSpec) -> bool {
    match spec {
        ClassSpec::TorsionFree => g.is_torsion_free(),
        ClassSpec::AllGroups => true,
        ClassSpec::PerpOf(ts) => ts.iter().all(|b| ext1(g, b).is_trivial()),
    }
}

/// Mono with cokernel in the class.
pub fn in_m(f: &Hom, cs: &CellularStructure) -> bool {
    f.is_mono() && in_class(&cokernel(f).0, &cs.class_spec)
}

/// Whether `0 → a` is in `M`.
pub fn is_cellular_object(a: &AbGroup, cs: &CellularStructure) -> bool {
    in_class(a, &cs.class_spec)
}

/// Outcome of the cellular test for one square.
#[derive(Clone, Debug)]
pub struct CellularVerdict {
    pub is_cellular: bool,
    /// `t: P → D` with `t ∘ into_b = v` and `t ∘ into_c = u`.
    pub mediating: Hom,
    pub pushout: PushoutResult,
}

/// Checks that the square commutes and all four edges are in `M`.
pub fn check_square(sq: &Square, cs: &CellularStructure) -> Result<(), CellularError> {
    if !sq.commutes()? {
        return Err(CellularError::NotCommutative(
            "u∘g and v∘f differ modulo the relations of D".into(),
        ));
    }
    for (name, e) in sq.edges() {
        cs.require(name, e)?;
    }
    Ok(())
}

/// A square of `M`-arrows is cellular when the map from the pushout of its
/// span into `D` is in `M`.
pub fn is_cellular_square(sq: &Square, cs: &CellularStructure) -> Result<CellularVerdict, CellularError> {
    check_square(sq, cs)?;
    Ok(cellular_verdict_unchecked(sq, cs)?)
}

/// The cellular test without the precondition checks.
pub(crate) fn cellular_verdict_unchecked(
    sq: &Square,
    cs: &CellularStructure,
) -> Result<CellularVerdict, AbError> {
    let po = pushout(&sq.span());
    let t = mediating_from_pushout(&po, &sq.v, &sq.u)?;
    Ok(CellularVerdict {
        is_cellular: cs.in_m(&t),
        mediating: t,
        pushout: po,
    })
}
