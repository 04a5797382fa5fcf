//! Independence notions as predicates on squares, amalgamation, and the
//! harnesses that test existence, uniqueness, symmetry, invariance and
//! transitivity on samples.

mod compare;
mod sequence;
mod suites;

use crate::abgrp::{pushout, AbGroup, Hom, PushoutResult, Span, Square};
use crate::cellular::{check_square, is_cellular_square, CellularError, CellularStructure};

pub use compare::{
    compare_notions, probe_merge, search_groups, uniqueness_probe, MergeOutcome, Obstruction,
};
pub use sequence::{build_independent_sequence, verify_independent_sequence, IndependentSequence};
pub use suites::{
    verify_existence, verify_invariance, verify_sequences, verify_symmetry, verify_transitivity,
    verify_uniqueness,
};

/// A class of commuting squares of `M`-arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndependenceNotion {
    /// Squares whose pushout map lies in `M`.
    CellularSquares(CellularStructure),
    /// Every square.
    Indiscrete(CellularStructure),
    /// Pullback squares.
    PullbackSquares(CellularStructure),
}

impl IndependenceNotion {
    pub fn structure(&self) -> &CellularStructure {
        match self {
            IndependenceNotion::CellularSquares(cs)
            | IndependenceNotion::Indiscrete(cs)
            | IndependenceNotion::PullbackSquares(cs) => cs,
        }
    }

    /// `cellular`, `indiscrete` or `pullback`.
    pub fn kind_name(&self) -> &'static str {
        match self {
            IndependenceNotion::CellularSquares(_) => "cellular",
            IndependenceNotion::Indiscrete(_) => "indiscrete",
            IndependenceNotion::PullbackSquares(_) => "pullback",
        }
    }

    pub fn from_name(name: &str, cs: CellularStructure) -> Option<Self> {
        match name {
            "cellular" => Some(IndependenceNotion::CellularSquares(cs)),
            "indiscrete" => Some(IndependenceNotion::Indiscrete(cs)),
            "pullback" => Some(IndependenceNotion::PullbackSquares(cs)),
            _ => None,
        }
    }

    pub fn with_structure(&self, cs: CellularStructure) -> Self {
        Self::from_name(self.kind_name(), cs).expect("known kind")
    }

    pub fn is_cellular(&self) -> bool {
        matches!(self, IndependenceNotion::CellularSquares(_))
    }
}

/// Whether a commuting square of `M`-arrows belongs to the notion.
pub fn is_independent(notion: &IndependenceNotion, sq: &Square) -> Result<bool, CellularError> {
    let cs = notion.structure();
    match notion {
        IndependenceNotion::CellularSquares(_) => Ok(is_cellular_square(sq, cs)?.is_cellular),
        IndependenceNotion::Indiscrete(_) => {
            check_square(sq, cs)?;
            Ok(true)
        }
        IndependenceNotion::PullbackSquares(_) => {
            check_square(sq, cs)?;
            Ok(crate::abgrp::is_pullback_square(sq)?)
        }
    }
}

/// The pushout square of a span of `M`-arrows.
pub fn amalgamate(span: &Span, cs: &CellularStructure) -> Result<Square, CellularError> {
    cs.require("f", &span.f)?;
    cs.require("g", &span.g)?;
    Ok(pushout(span).square())
}

/// A common amalgam of two cellular squares over one span.
#[derive(Clone, Debug)]
pub struct Unified {
    pub e: AbGroup,
    /// `D¹ → E`.
    pub d1: Hom,
    /// `D² → E`.
    pub d2: Hom,
    pub pushout: PushoutResult,
    /// The mediating maps `P → D¹` and `P → D²`.
    pub t1: Hom,
    pub t2: Hom,
}

/// Pushes out the two mediating maps `t_i: P → D^i` out of the pushout of
/// the shared span. The `d_i` are pushouts of `M`-arrows, hence in `M`, and
/// agree on the images of `B` and of `C`.
pub fn unify_amalgams(sq1: &Square, sq2: &Square, cs: &CellularStructure) -> Result<Unified, CellularError> {
    if !sq1.span().same_as(&sq2.span())? {
        return Err(CellularError::SpanMismatch);
    }
    let v1 = is_cellular_square(sq1, cs)?;
    if !v1.is_cellular {
        return Err(CellularError::NotCellular("sq1"));
    }
    let v2 = is_cellular_square(sq2, cs)?;
    if !v2.is_cellular {
        return Err(CellularError::NotCellular("sq2"));
    }
    let po = v1.pushout;
    let t1 = v1.mediating;
    let t2 = crate::abgrp::mediating_from_pushout(&po, &sq2.v, &sq2.u)?;
    let merge = pushout(&Span::new(t1.clone(), t2.clone())?);
    Ok(Unified {
        e: merge.p.clone(),
        d1: merge.into_b,
        d2: merge.into_c,
        pushout: po,
        t1,
        t2,
    })
}

/// Checks the contracts of a merge `(d1, d2)` of `sq1`, `sq2`: both in `M`,
/// `d1 v¹ = d2 v²`, `d1 u¹ = d2 u²`, and both extended squares independent.
/// Returns the first violated contract.
pub fn check_merge(
    notion: &IndependenceNotion,
    sq1: &Square,
    sq2: &Square,
    d1: &Hom,
    d2: &Hom,
) -> Result<Option<&'static str>, CellularError> {
    use crate::abgrp::compose;
    let cs = notion.structure();
    if !cs.in_m(d1) || !cs.in_m(d2) {
        return Ok(Some("merge-arrow-not-in-M"));
    }
    if !compose(d1, &sq1.v)?.equals(&compose(d2, &sq2.v)?)? {
        return Ok(Some("merge-disagrees-on-B"));
    }
    if !compose(d1, &sq1.u)?.equals(&compose(d2, &sq2.u)?)? {
        return Ok(Some("merge-disagrees-on-C"));
    }
    if !is_independent(notion, &sq1.extend(d1)?)? || !is_independent(notion, &sq2.extend(d2)?)? {
        return Ok(Some("merged-square-not-independent"));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn tf() -> CellularStructure {
        CellularStructure::torsion_free()
    }

    #[test]
    fn notion_examples() {
        let reg = builtin::regression_square();
        let cellular = IndependenceNotion::CellularSquares(tf());
        let indiscrete = IndependenceNotion::Indiscrete(tf());
        let pb = IndependenceNotion::PullbackSquares(tf());
        assert!(!is_independent(&cellular, &reg).unwrap());
        assert!(is_independent(&indiscrete, &reg).unwrap());
        assert!(is_independent(&pb, &reg).unwrap());
        assert!(!is_independent(&cellular, &reg.transpose()).unwrap());
        let po = pushout(&builtin::span_23()).square();
        let all = IndependenceNotion::CellularSquares(CellularStructure::all_groups());
        assert!(is_independent(&all, &po).unwrap());
    }

    #[test]
    fn amalgamation_examples() {
        let z = AbGroup::free(1);
        let id = Hom::identity(&z);
        let sq = amalgamate(&Span::new(id.clone(), id).unwrap(), &tf()).unwrap();
        assert!(sq.d().isomorphic(&z));
        let o = AbGroup::zero();
        let span = Span::new(Hom::zero(&o, &z), Hom::zero(&o, &z)).unwrap();
        let sq = amalgamate(&span, &tf()).unwrap();
        assert_eq!(sq.d().canon().0, 2);
        assert!(is_independent(&IndependenceNotion::CellularSquares(tf()), &sq).unwrap());
        let two = Hom::from_i64(&z, &z, &[2]).unwrap();
        assert!(amalgamate(&Span::new(two.clone(), two).unwrap(), &tf()).is_err());
    }

    #[test]
    fn unify_examples() {
        let cs = tf();
        let notion = IndependenceNotion::CellularSquares(cs.clone());
        let (po, collapsed) = builtin::indiscrete_pair();
        let u = unify_amalgams(&po, &po, &cs).unwrap();
        assert!(u.e.isomorphic(po.d()));
        assert_eq!(check_merge(&notion, &po, &po, &u.d1, &u.d2).unwrap(), None);

        // the pushout against the pushout padded by a free summand
        let z = AbGroup::free(1);
        let ds = crate::abgrp::direct_sum(po.d(), &z);
        let padded = po.extend(&ds.inj_a).unwrap();
        let u = unify_amalgams(&po, &padded, &cs).unwrap();
        assert_eq!(u.e.canon().0, 3);
        assert_eq!(check_merge(&notion, &po, &padded, &u.d1, &u.d2).unwrap(), None);

        assert!(matches!(
            unify_amalgams(&po, &collapsed, &cs),
            Err(CellularError::NotCellular("sq2")) | Err(CellularError::NotInM { .. })
        ));
        let reg = builtin::regression_square();
        assert!(unify_amalgams(&po, &reg, &cs).is_err());
    }
}
