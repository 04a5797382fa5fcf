use num_bigint::BigInt;
use serde_json::json;

use crate::abgrp::{
    combine, compose, copair, direct_sum, hom_group_generators, kernel, pushout, AbGroup, Hom,
    Span, Square,
};
use crate::cellular::sample::mixed_square;
use crate::cellular::CellularError;
use crate::harness::{run_samples, CheckReport, Sampler, Witness};
use crate::linalg::IntMatrix;
use crate::workbench::format::InstanceBuilder;

use super::{amalgamate, check_merge, is_independent, unify_amalgams, IndependenceNotion};

/// Invariant factors tried for the target of a merge (0 is `Z`).
pub const SEARCH_FACTORS: [i64; 4] = [0, 2, 3, 4];
/// Coefficient range for combinations of hom generators.
pub const SEARCH_COEFF: i64 = 3;
/// Candidates tried per target group before moving on.
pub const SEARCH_CAP_PER_GROUP: usize = 20_000;

/// A nonzero element of `D_which` that every merge must kill.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub which: usize,
    /// Generator coordinates in `D_which`.
    pub element: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub enum MergeOutcome {
    Merged {
        e: AbGroup,
        d1: Hom,
        d2: Hom,
        route: &'static str,
    },
    NotFound {
        obstruction: Option<Obstruction>,
        groups_searched: usize,
        candidates: usize,
    },
}

/// Target groups of the bounded search: diagonal presentations with at most
/// `bound` generators and factors from [`SEARCH_FACTORS`], one per
/// multiset of factors.
pub fn search_groups(bound: usize) -> Vec<AbGroup> {
    fn rec(start: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        if left == 0 {
            return;
        }
        for (k, &f) in SEARCH_FACTORS.iter().enumerate().skip(start) {
            cur.push(f);
            rec(k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut lists = Vec::new();
    rec(0, bound, &mut Vec::new(), &mut lists);
    lists
        .into_iter()
        .map(|fs| {
            let n = fs.len();
            let mut rels = IntMatrix::zeros(n, n);
            for (i, f) in fs.iter().enumerate() {
                rels.set(i, i, BigInt::from(*f));
            }
            AbGroup::new(n, rels).expect("square diagonal")
        })
        .collect()
}

/// Tries to merge two squares over one span into a common independent amalgam.
///
/// 1. For cellular squares, the pushout of the two mediating maps.
/// 2. The universal candidate `E = D¹ ⊕ D² / ((v¹b, -v²b), (u¹c, -u²c))`;
///    every merge factors through it, so if `D^i → E` is not injective
///    no merge exists at all and the kernel element is returned as an
///    obstruction.
/// 3. A bounded search over `φ: E_univ → E` for the groups of
///    [`search_groups`]`(bound)`, with `φ` a combination of hom generators
///    with coefficients in `[-3, 3]`.
pub fn probe_merge(
    notion: &IndependenceNotion,
    sq1: &Square,
    sq2: &Square,
    bound: usize,
) -> Result<MergeOutcome, CellularError> {
    merge_with_budget(notion, sq1, sq2, bound, usize::MAX, false)
}

pub(crate) fn merge_with_budget(
    notion: &IndependenceNotion,
    sq1: &Square,
    sq2: &Square,
    bound: usize,
    budget: usize,
    stop_at_obstruction: bool,
) -> Result<MergeOutcome, CellularError> {
    if !sq1.span().same_as(&sq2.span())? {
        return Err(CellularError::SpanMismatch);
    }
    let cs = notion.structure();
    if notion.is_cellular() {
        if let Ok(u) = unify_amalgams(sq1, sq2, cs) {
            if check_merge(notion, sq1, sq2, &u.d1, &u.d2)?.is_none() {
                return Ok(MergeOutcome::Merged {
                    e: u.e,
                    d1: u.d1,
                    d2: u.d2,
                    route: "mediating-pushout",
                });
            }
        }
    }
    let ds = direct_sum(sq1.b(), sq1.c());
    let k1 = copair(&ds, &sq1.v, &sq1.u)?;
    let k2 = copair(&ds, &sq2.v, &sq2.u)?;
    let univ = pushout(&Span::new(k1, k2)?);
    let (e1, e2) = (univ.into_b.clone(), univ.into_c.clone());
    if check_merge(notion, sq1, sq2, &e1, &e2)?.is_none() {
        return Ok(MergeOutcome::Merged {
            e: univ.p.clone(),
            d1: e1,
            d2: e2,
            route: "universal",
        });
    }
    let obstruction = [(1, &e1), (2, &e2)].into_iter().find_map(|(which, e)| {
        let (k, inc) = kernel(e).ok()?;
        let c = k.canonical();
        (0..c.dim()).find_map(|j| {
            let element = inc
                .mat()
                .mul_vec(&c.from_canon.column(j))
                .expect("kernel dimension");
            let zero = e.src().is_zero_element(&element).unwrap_or(true);
            (!zero).then_some(Obstruction { which, element })
        })
    });
    if obstruction.is_some() && stop_at_obstruction {
        return Ok(MergeOutcome::NotFound {
            obstruction,
            groups_searched: 0,
            candidates: 0,
        });
    }
    let mut candidates = 0usize;
    let mut groups_searched = 0usize;
    for target in search_groups(bound) {
        groups_searched += 1;
        let gens = hom_group_generators(&univ.p, &target);
        let mut coeffs = vec![-SEARCH_COEFF; gens.len()];
        let mut tried = 0usize;
        loop {
            if candidates >= budget {
                break;
            }
            candidates += 1;
            tried += 1;
            let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
            let phi = combine(&univ.p, &target, &gens, &big);
            let d1 = compose(&phi, &e1)?;
            let d2 = compose(&phi, &e2)?;
            if check_merge(notion, sq1, sq2, &d1, &d2)?.is_none() {
                return Ok(MergeOutcome::Merged {
                    e: target,
                    d1,
                    d2,
                    route: "search",
                });
            }
            if tried >= SEARCH_CAP_PER_GROUP || !next_coeffs(&mut coeffs) {
                break;
            }
        }
    }
    Ok(MergeOutcome::NotFound {
        obstruction,
        groups_searched,
        candidates,
    })
}

fn next_coeffs(c: &mut [i64]) -> bool {
    for x in c.iter_mut() {
        if *x < SEARCH_COEFF {
            *x += 1;
            return true;
        }
        *x = -SEARCH_COEFF;
    }
    false
}

fn pair_instance(sq1: &Square, sq2: &Square, notion: &IndependenceNotion) -> crate::workbench::format::InstanceFile {
    let mut b = InstanceBuilder::new();
    b.square("sq1", sq1).square("sq2", sq2).notion(notion);
    b.build()
}

/// Looks for a common independent amalgam of two independent squares over
/// one span; see [`probe_merge`]. The verdict is `all-passed` when a merge
/// is found and verified and `inconclusive` otherwise. When an obstruction
/// shows that no merge exists for any `E`, it is attached as evidence and
/// counted in `stats["certified_no_merge"]`.
pub fn uniqueness_probe(
    notion: &IndependenceNotion,
    sq1: &Square,
    sq2: &Square,
    bound: usize,
) -> Result<CheckReport, CellularError> {
    let mut report = CheckReport::new("uniqueness-probe", &notion.structure().name());
    report.notion = Some(notion.kind_name().to_string());
    for (name, sq) in [("sq1", sq1), ("sq2", sq2)] {
        if !is_independent(notion, sq)? {
            return Err(CellularError::InvalidInput(format!("{name} is not independent")));
        }
    }
    report.samples_run = 1;
    match probe_merge(notion, sq1, sq2, bound)? {
        MergeOutcome::Merged { e, d1, d2, route } => {
            report.bump("merged", 1);
            report.bump(&format!("route/{route}"), 1);
            let mut b = InstanceBuilder::new();
            b.square("sq1", sq1).square("sq2", sq2);
            b.hom("d1", &d1);
            b.hom("d2", &d2);
            b.notion(notion);
            report.evidence.push(Witness {
                sample: None,
                kind: "merge".into(),
                detail: format!("common amalgam {} via {route}", e.describe()),
                instance: b.build(),
            });
        }
        MergeOutcome::NotFound {
            obstruction,
            groups_searched,
            candidates,
        } => {
            report.bump("groups_searched", groups_searched as u64);
            report.bump("candidates", candidates as u64);
            report.starved = 1;
            if let Some(ob) = obstruction {
                let element: Vec<String> = ob.element.iter().map(|x| x.to_string()).collect();
                report.bump("certified_no_merge", 1);
                report.evidence.push(Witness {
                    sample: None,
                    kind: "obstruction".into(),
                    detail: format!(
                        "every cocone kills ({}) in D{}, so no arrow D{} → E is a monomorphism",
                        element.join(","),
                        ob.which,
                        ob.which
                    ),
                    instance: pair_instance(sq1, sq2, notion),
                });
                report.builtins.insert(
                    "forced_relation".into(),
                    json!({ "square": ob.which, "element": element }),
                );
            }
        }
    }
    Ok(report.finish())
}

/// Classifies sampled squares of `M`-arrows as independent for both, one or
/// neither notion. For every `n2`-independent square it also replays the
/// merge of that square with the `n1`-amalgam of its span (pushout-of-
/// mediating route for cellular pairs, otherwise the universal candidate, an
/// obstruction check and a small bounded search).
pub fn compare_notions(
    n1: &IndependenceNotion,
    n2: &IndependenceNotion,
    sampler: &Sampler,
    n: usize,
) -> Result<CheckReport, CellularError> {
    if n == 0 {
        return Err(CellularError::InvalidInput("n_samples must be positive".into()));
    }
    if n1.structure() != n2.structure() {
        return Err(CellularError::InvalidInput(
            "compared notions must share a cellular structure".into(),
        ));
    }
    let cs = n1.structure();
    let suite = format!("compare/{}-{}", n1.kind_name(), n2.kind_name());
    let mut report = CheckReport::new(&suite, &cs.name());
    run_samples(&mut report, sampler, n, |_, rng, log| {
        let sq = mixed_square(rng, cs, sampler.caps)?;
        let a = is_independent(n1, &sq)?;
        let b = is_independent(n2, &sq)?;
        match (a, b) {
            (true, true) => log.count("agree"),
            (false, false) => log.count("agree"),
            (true, false) => log.fail("only-n1", format!("{} but not {}", n1.kind_name(), n2.kind_name()), pair_instance(&sq, &sq, n1)),
            (false, true) => log.fail("only-n2", format!("{} but not {}", n2.kind_name(), n1.kind_name()), pair_instance(&sq, &sq, n2)),
        }
        if b {
            let amalgam = amalgamate(&sq.span(), cs)?;
            match merge_with_budget(n2, &amalgam, &sq, 1, 200, true)? {
                MergeOutcome::Merged { .. } => log.count("replay_merged"),
                MergeOutcome::NotFound {
                    obstruction: Some(_),
                    ..
                } => log.count("replay_obstructed"),
                MergeOutcome::NotFound { .. } => log.count("replay_unmerged"),
            }
        }
        Ok(())
    });
    let (po, collapsed) = crate::builtin::indiscrete_pair();
    let reg = crate::builtin::regression_square();
    for (name, sq) in [("ind_pushout", &po), ("ind_collapsed", &collapsed), ("reg_pullback", &reg)] {
        let v = |notion: &IndependenceNotion| match is_independent(notion, sq) {
            Ok(x) => json!(x),
            Err(e) => json!(e.to_string()),
        };
        report
            .builtins
            .insert(name.into(), json!({ "n1": v(n1), "n2": v(n2) }));
    }
    Ok(report.finish())
}
