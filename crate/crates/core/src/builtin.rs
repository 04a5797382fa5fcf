//! Fixed regression diagrams, available to the CLI as `@builtin`.

use crate::abgrp::{pushout, AbGroup, Hom, Span, Square};
use crate::cellular::CellularStructure;
use crate::independence::IndependenceNotion;
use crate::workbench::format::{InstanceBuilder, InstanceFile};

fn z() -> AbGroup {
    AbGroup::free(1)
}

fn h(src: &AbGroup, dst: &AbGroup, entries: &[i64]) -> Hom {
    Hom::from_i64(src, dst, entries).expect("builtin homs are well defined")
}

/// `A = 0`, `B = <(1,0)>`, `C = <(1,2)>` inside `D = Z^2`. A pullback square
/// whose pushout map `Z^2 → Z^2` has determinant 2.
pub fn regression_square() -> Square {
    let (o, z, z2) = (AbGroup::zero(), z(), AbGroup::free(2));
    Square::new(
        Hom::zero(&o, &z),
        Hom::zero(&o, &z),
        h(&z, &z2, &[1, 2]),
        h(&z, &z2, &[1, 0]),
    )
    .expect("commutes")
}

/// The coordinate axes of `Z^2` over `0`: a pushout square.
pub fn coordinate_square() -> Square {
    let (o, z, z2) = (AbGroup::zero(), z(), AbGroup::free(2));
    Square::new(
        Hom::zero(&o, &z),
        Hom::zero(&o, &z),
        h(&z, &z2, &[0, 1]),
        h(&z, &z2, &[1, 0]),
    )
    .expect("commutes")
}

/// `Z/4 ←− Z −id→ Z`: the pushout is a copy of `B = Z/4`.
pub fn span_id() -> Span {
    let z = z();
    Span::new(h(&z, &AbGroup::cyclic(4), &[1]), Hom::identity(&z)).expect("shared source")
}

/// `Z ←×2− Z −×3→ Z`.
pub fn span_23() -> Span {
    let z = z();
    Span::new(h(&z, &z, &[2]), h(&z, &z, &[3])).expect("shared source")
}

/// Two squares over the span `Z ← 0 → Z`: the pushout (`D = Z^2`) and the
/// collapsed square (`D = Z`, `u = v = id`).
pub fn indiscrete_pair() -> (Square, Square) {
    let (o, z) = (AbGroup::zero(), z());
    let span = Span::new(Hom::zero(&o, &z), Hom::zero(&o, &z)).expect("shared source");
    let po = pushout(&span).square();
    let collapsed = Square::new(
        span.f.clone(),
        span.g.clone(),
        Hom::identity(&z),
        Hom::identity(&z),
    )
    .expect("commutes");
    (po, collapsed)
}

/// `f: Z → Z ⊕ Z/2`, `1 ↦ (1, 1)` and the projection `g` onto `Z`.
/// `g ∘ f = id`, while `coker f = Z/2`.
pub fn left_cancel_witness() -> (Hom, Hom) {
    let z = z();
    let b = AbGroup::from_relations(2, &[&[0, 2]]).expect("Z + Z/2");
    (h(&z, &b, &[1, 1]), h(&b, &z, &[1, 0]))
}

/// `f: Z → Z^2`, `1 ↦ (2, 1)` with `g = id`: every arrow is in `M` for
/// torsion-free cokernels, so this is not a counterexample.
pub fn left_cancel_control() -> (Hom, Hom) {
    let (z, z2) = (z(), AbGroup::free(2));
    (h(&z, &z2, &[2, 1]), Hom::identity(&z2))
}

/// The builtin instance file (torsion-free structure, cellular notion).
pub fn builtin_instance() -> InstanceFile {
    let mut b = InstanceBuilder::new();
    let (o, z) = (AbGroup::zero(), z());
    b.group("O", &o);
    b.group("Z", &z);
    for n in [2u64, 3, 4, 6] {
        b.group(&format!("Z{n}"), &AbGroup::cyclic(n));
    }
    b.group("Z_2", &AbGroup::free(2));
    b.group("Z_Z2", left_cancel_witness().0.dst());
    b.hom("id_Z", &Hom::identity(&z));
    b.hom("zero_Z", &Hom::zero(&o, &z));
    b.square("reg_pullback", &regression_square());
    b.square("eu_coordinate", &coordinate_square());
    let (ind_po, ind_col) = indiscrete_pair();
    b.square("ind_pushout", &ind_po);
    b.square("ind_collapsed", &ind_col);
    b.span("span_id", &span_id());
    b.span("span_23", &span_23());
    let (f, g) = left_cancel_witness();
    b.hom("lc_f", &f);
    b.hom("lc_g", &g);
    let (f, g) = left_cancel_control();
    b.hom("lc_control_f", &f);
    b.hom("lc_control_g", &g);
    b.notion(&IndependenceNotion::CellularSquares(CellularStructure::torsion_free()));
    b.build()
}

/// The committed copy of [`builtin_instance`].
pub const BUILTIN_JSON: &str = include_str!("../data/builtin.json");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn committed_copy_is_in_sync() {
        let parsed: InstanceFile = serde_json::from_str(BUILTIN_JSON).unwrap();
        assert_eq!(parsed, builtin_instance(), "regenerate data/builtin.json");
    }
}
