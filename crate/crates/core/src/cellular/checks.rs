use rand::Rng;
use serde_json::json;

use crate::abgrp::random::{random_group, random_hom, RETRY_CAP};
use crate::abgrp::{cokernel, compose, is_pullback_square, mediating_into_pullback, pullback, AbError, Hom};
use crate::builtin;
use crate::harness::{run_samples, CheckReport, Sampler};
use crate::workbench::format::{canon_json, homs_instance, square_instance};

use super::sample::{cellular_square, m_extension, m_subobject, mixed_square, random_subgroup};
use super::{cellular_verdict_unchecked, CellularError, CellularStructure};

fn require_samples(n: usize) -> Result<(), CellularError> {
    if n == 0 {
        return Err(CellularError::InvalidInput("n_samples must be positive".into()));
    }
    Ok(())
}

fn starved(what: &'static str) -> CellularError {
    CellularError::Ab(AbError::Sampling {
        what,
        attempts: RETRY_CAP,
    })
}

fn left_cancel_builtin(f: &Hom, g: &Hom, cs: &CellularStructure) -> serde_json::Value {
    let gf = compose(g, f).expect("composable");
    let (f_in, g_in, gf_in) = (cs.in_m(f), cs.in_m(g), cs.in_m(&gf));
    json!({
        "f_in_m": f_in,
        "g_in_m": g_in,
        "gf_in_m": gf_in,
        "coker_f": canon_json(&cokernel(f).0),
        "counterexample": gf_in && !f_in,
    })
}

/// `gf ∈ M` and `g ∈ M` imply `f ∈ M`.
///
/// Draws `g ∈ M` out of a random `B` and a subgroup inclusion `f` into `B`,
/// rejecting until `gf ∈ M`.
pub fn check_coherence(cs: &CellularStructure, sampler: &Sampler, n_samples: usize) -> Result<CheckReport, CellularError> {
    require_samples(n_samples)?;
    let mut report = CheckReport::new("coherence", &cs.name());
    let caps = sampler.caps;
    run_samples(&mut report, sampler, n_samples, |_, rng, log| {
        for _ in 0..RETRY_CAP {
            let b = random_group(rng, caps);
            let g = m_extension(rng, &b, cs, caps)?;
            let f = random_subgroup(rng, &b, caps)?;
            let gf = compose(&g, &f)?;
            if !cs.in_m(&gf) {
                log.count("rejected");
                continue;
            }
            if !cs.in_m(&f) {
                log.fail(
                    "f-not-in-M",
                    "g and gf are in M but f is not",
                    homs_instance(&[("f", &f), ("g", &g)], cs),
                );
            }
            return Ok(());
        }
        Err(starved("coherence triple"))
    });
    Ok(report.finish())
}

/// `gf ∈ M` implies `f ∈ M`, with no condition on `g`.
pub fn check_left_cancellable(
    cs: &CellularStructure,
    sampler: &Sampler,
    n_samples: usize,
) -> Result<CheckReport, CellularError> {
    require_samples(n_samples)?;
    let mut report = CheckReport::new("left-cancel", &cs.name());
    let caps = sampler.caps;
    run_samples(&mut report, sampler, n_samples, |_, rng, log| {
        for _ in 0..RETRY_CAP {
            let b = random_group(rng, caps);
            let f = random_subgroup(rng, &b, caps)?;
            let g = match rng.gen_range(0..3) {
                0 => {
                    let c = random_group(rng, caps);
                    random_hom(rng, &b, &c)
                }
                1 => {
                    // quotient by a random subgroup, then into a bigger group
                    let n = random_subgroup(rng, &b, caps)?;
                    let q = cokernel(&n).1;
                    let e = m_extension(rng, q.dst(), cs, caps)?;
                    compose(&e, &q)?
                }
                _ => m_extension(rng, &b, cs, caps)?,
            };
            let gf = compose(&g, &f)?;
            if !cs.in_m(&gf) {
                log.count("rejected");
                continue;
            }
            if cs.in_m(&g) {
                log.count("g_in_m");
            }
            if !cs.in_m(&f) {
                log.fail(
                    "f-not-in-M",
                    format!("gf is in M but f is not (coker f = {})", cokernel(&f).0.describe()),
                    homs_instance(&[("f", &f), ("g", &g)], cs),
                );
            }
            return Ok(());
        }
        Err(starved("left-cancel pair"))
    });
    let (f, g) = builtin::left_cancel_witness();
    report
        .builtins
        .insert("lc_witness".into(), left_cancel_builtin(&f, &g, cs));
    let (f, g) = builtin::left_cancel_control();
    report
        .builtins
        .insert("lc_control".into(), left_cancel_builtin(&f, &g, cs));
    Ok(report.finish())
}

/// Outcome of the effective-unions test on one cospan of `M`-arrows.
#[derive(Clone, Debug)]
pub struct UnionCheck {
    pub projections_in_m: bool,
    /// `None` when the projections are not in `M`.
    pub cellular: Option<bool>,
    pub square: crate::abgrp::Square,
    pub mediating: Option<Hom>,
}

/// Pulls back `v: B → D` and `u: C → D`, and tests both premises.
pub fn union_check(v: &Hom, u: &Hom, cs: &CellularStructure) -> Result<UnionCheck, CellularError> {
    let pb = pullback(v, u)?;
    let sq = pb.square();
    let projections_in_m = cs.in_m(&sq.f) && cs.in_m(&sq.g);
    let (cellular, mediating) = if projections_in_m {
        let verdict = cellular_verdict_unchecked(&sq, cs)?;
        (Some(verdict.is_cellular), Some(verdict.mediating))
    } else {
        (None, None)
    };
    Ok(UnionCheck {
        projections_in_m,
        cellular,
        square: sq,
        mediating,
    })
}

fn union_builtin(name: &str, cs: &CellularStructure) -> serde_json::Value {
    let sq = match name {
        "reg_pullback" => builtin::regression_square(),
        _ => builtin::coordinate_square(),
    };
    match union_check(&sq.v, &sq.u, cs) {
        Ok(c) => json!({
            "projections_in_m": c.projections_in_m,
            "cellular": c.cellular,
            "mediating_cokernel": c.mediating.map(|t| canon_json(&cokernel(&t).0)),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// Pullbacks of `M`-arrows have projections in `M` and form cellular squares.
pub fn check_effective_unions(
    cs: &CellularStructure,
    sampler: &Sampler,
    n_samples: usize,
) -> Result<CheckReport, CellularError> {
    require_samples(n_samples)?;
    let mut report = CheckReport::new("effective-unions", &cs.name());
    let caps = sampler.caps;
    run_samples(&mut report, sampler, n_samples, |_, rng, log| {
        let d = random_group(rng, caps);
        let v = m_subobject(rng, &d, cs, caps)?;
        let u = if rng.gen_bool(0.1) {
            v.clone()
        } else {
            m_subobject(rng, &d, cs, caps)?
        };
        let c = union_check(&v, &u, cs)?;
        match c.cellular {
            None => log.fail(
                "projection-not-in-M",
                "a pullback projection is not in M",
                square_instance("pullback", &c.square, cs),
            ),
            Some(false) => {
                let t = c.mediating.expect("present when projections are in M");
                log.count("projections_in_m");
                log.fail(
                    "pullback-not-cellular",
                    format!(
                        "mediating map has cokernel {}",
                        cokernel(&t).0.describe()
                    ),
                    square_instance("pullback", &c.square, cs),
                )
            }
            Some(true) => {
                log.count("projections_in_m");
                log.count("cellular");
            }
        }
        Ok(())
    });
    for name in ["reg_pullback", "eu_coordinate"] {
        report.builtins.insert(name.into(), union_builtin(name, cs));
    }
    Ok(report.finish())
}

/// Cellular squares are pullbacks, given that `M` is stable under pullback
/// and every epimorphism in `M` is an isomorphism.
///
/// Both premises are evaluated on each sample: the pullback of the cospan
/// must have projections in `M`, and each epimorphic edge (and the
/// mediating map) must be an isomorphism. A non-pullback square counts as a
/// failure only when both premises held on that sample.
pub fn check_cellular_implies_pullback(
    cs: &CellularStructure,
    sampler: &Sampler,
    n_samples: usize,
) -> Result<CheckReport, CellularError> {
    require_samples(n_samples)?;
    let mut report = CheckReport::new("cellular-implies-pullback", &cs.name());
    let caps = sampler.caps;
    run_samples(&mut report, sampler, n_samples, |_, rng, log| {
        let (sq, verdict) = {
            let mut found = None;
            for _ in 0..RETRY_CAP {
                let sq = if rng.gen_bool(0.5) {
                    cellular_square(rng, cs, caps)?
                } else {
                    mixed_square(rng, cs, caps)?
                };
                let verdict = cellular_verdict_unchecked(&sq, cs)?;
                if verdict.is_cellular {
                    found = Some((sq, verdict));
                    break;
                }
                log.count("rejected");
            }
            found.ok_or_else(|| starved("cellular square"))?
        };
        let pb = pullback(&sq.v, &sq.u)?;
        let premise1 = cs.in_m(&pb.q_b) && cs.in_m(&pb.q_c);
        let arrows = [&sq.f, &sq.g, &sq.u, &sq.v, &verdict.mediating];
        let premise2 = arrows.iter().all(|e| !e.is_epi() || e.is_iso());
        if premise1 {
            log.count("premise1_held");
        }
        if premise2 {
            log.count("premise2_held");
        }
        let m = mediating_into_pullback(&pb, &sq.f, &sq.g)?;
        let is_pb = m.is_iso();
        debug_assert_eq!(is_pb, is_pullback_square(&sq)?);
        if is_pb {
            log.count("pullback");
        } else if premise1 && premise2 {
            log.fail(
                "cellular-not-pullback",
                "cellular square whose comparison map into the pullback is not an isomorphism",
                square_instance("square", &sq, cs),
            );
        } else {
            log.count("not_pullback_premise_failed");
        }
        Ok(())
    });
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgrp::AbGroup;
    use crate::harness::Verdict;

    #[test]
    fn zero_samples_is_an_input_error() {
        let cs = CellularStructure::torsion_free();
        let s = Sampler::default();
        assert!(check_coherence(&cs, &s, 0).is_err());
        assert!(check_left_cancellable(&cs, &s, 0).is_err());
        assert!(check_effective_unions(&cs, &s, 0).is_err());
        assert!(check_cellular_implies_pullback(&cs, &s, 0).is_err());
    }

    #[test]
    fn builtin_unions() {
        let tf = CellularStructure::torsion_free();
        let sq = builtin::regression_square();
        let c = union_check(&sq.v, &sq.u, &tf).unwrap();
        assert!(c.projections_in_m);
        assert_eq!(c.cellular, Some(false));
        let t = c.mediating.unwrap();
        assert_eq!(cokernel(&t).0.order(), Some(2.into()));

        let sq = builtin::coordinate_square();
        let c = union_check(&sq.v, &sq.u, &tf).unwrap();
        assert!(c.square.a().is_trivial());
        assert_eq!(c.cellular, Some(true));

        let z = AbGroup::free(1);
        let id = Hom::identity(&z);
        let c = union_check(&id, &id, &tf).unwrap();
        assert_eq!(c.cellular, Some(true));
    }

    #[test]
    fn builtin_left_cancel() {
        let tf = CellularStructure::torsion_free();
        let (f, g) = builtin::left_cancel_witness();
        let v = left_cancel_builtin(&f, &g, &tf);
        assert_eq!(v["counterexample"], true);
        let (f, g) = builtin::left_cancel_control();
        let v = left_cancel_builtin(&f, &g, &tf);
        assert_eq!(v["f_in_m"], true);
        assert_eq!(v["counterexample"], false);
    }

    #[test]
    fn small_runs() {
        let s = Sampler::new(1);
        let all = CellularStructure::all_groups();
        assert_eq!(check_left_cancellable(&all, &s, 30).unwrap().verdict, Verdict::AllPassed);
        assert_eq!(check_coherence(&all, &s, 30).unwrap().verdict, Verdict::AllPassed);
        let tf = CellularStructure::torsion_free();
        assert_eq!(check_coherence(&tf, &s, 30).unwrap().verdict, Verdict::AllPassed);
        assert_eq!(
            check_cellular_implies_pullback(&tf, &s, 30).unwrap().verdict,
            Verdict::AllPassed
        );
    }
}
