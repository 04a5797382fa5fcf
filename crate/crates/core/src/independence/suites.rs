use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::abgrp::random::{random_group, random_representation, RETRY_CAP};
use crate::abgrp::{compose, AbError, Span, Square};
use crate::cellular::sample::{cellular_square, cellular_square_over, m_extension, m_span, mixed_square};
use crate::cellular::CellularError;
use crate::harness::{run_samples, CheckReport, Sampler};
use crate::workbench::format::{square_instance, InstanceBuilder};

use super::compare::probe_merge;
use super::sequence::sequence_instance;
use super::{
    amalgamate, build_independent_sequence, check_merge, is_independent, unify_amalgams,
    verify_independent_sequence, IndependenceNotion, MergeOutcome,
};

fn require_samples(n: usize) -> Result<(), CellularError> {
    if n == 0 {
        return Err(CellularError::InvalidInput("n_samples must be positive".into()));
    }
    Ok(())
}

fn new_report(suite: &str, notion: &IndependenceNotion) -> CheckReport {
    let mut r = CheckReport::new(suite, &notion.structure().name());
    r.notion = Some(notion.kind_name().to_string());
    r
}

/// A square that is independent for `notion`. Cellular squares are drawn
/// directly; for other notions mixed squares are filtered.
fn independent_square(
    rng: &mut ChaCha8Rng,
    notion: &IndependenceNotion,
    sampler: &Sampler,
) -> Result<Square, CellularError> {
    let cs = notion.structure();
    if notion.is_cellular() {
        return Ok(cellular_square(rng, cs, sampler.caps)?);
    }
    for _ in 0..RETRY_CAP {
        let sq = mixed_square(rng, cs, sampler.caps)?;
        if is_independent(notion, &sq)? {
            return Ok(sq);
        }
    }
    Err(AbError::Sampling {
        what: "independent square",
        attempts: RETRY_CAP,
    }
    .into())
}

/// `(A, B, C, D)` independent iff `(A, B, C, E)` independent, for an
/// `M`-arrow `D → E`.
pub fn verify_invariance(
    notion: &IndependenceNotion,
    sampler: &Sampler,
    n: usize,
) -> Result<CheckReport, CellularError> {
    require_samples(n)?;
    let cs = notion.structure();
    let mut report = new_report("invariance", notion);
    run_samples(&mut report, sampler, n, |_, rng, log| {
        let sq = mixed_square(rng, cs, sampler.caps)?;
        let e = if rng.gen_bool(0.1) {
            random_representation(rng, sq.d())
        } else {
            m_extension(rng, sq.d(), cs, sampler.caps)?
        };
        let ext = sq.extend(&e)?;
        let before = is_independent(notion, &sq)?;
        let after = is_independent(notion, &ext)?;
        if before {
            log.count("independent");
        }
        if before && !after {
            log.fail(
                "forward",
                "independent square becomes dependent after extending D",
                extension_instance(&sq, &e, notion),
            );
        }
        if !before && after {
            log.fail(
                "backward",
                "dependent square becomes independent after extending D",
                extension_instance(&sq, &e, notion),
            );
        }
        Ok(())
    });
    Ok(report.finish())
}

fn extension_instance(
    sq: &Square,
    e: &crate::abgrp::Hom,
    notion: &IndependenceNotion,
) -> crate::workbench::format::InstanceFile {
    let mut b = InstanceBuilder::new();
    b.square("square", sq);
    b.hom("extension", e);
    if let Ok(ext) = sq.extend(e) {
        b.square("extended", &ext);
    }
    b.notion(notion);
    b.build()
}

/// The verdict is unchanged by transposing the square.
pub fn verify_symmetry(notion: &IndependenceNotion, sampler: &Sampler, n: usize) -> Result<CheckReport, CellularError> {
    require_samples(n)?;
    let cs = notion.structure();
    let mut report = new_report("symmetry", notion);
    run_samples(&mut report, sampler, n, |_, rng, log| {
        let sq = mixed_square(rng, cs, sampler.caps)?;
        let a = is_independent(notion, &sq)?;
        let b = is_independent(notion, &sq.transpose())?;
        if a {
            log.count("independent");
        }
        if a != b {
            log.fail(
                "asymmetric",
                format!("square {a}, transpose {b}"),
                square_instance("square", &sq, cs),
            );
        }
        Ok(())
    });
    Ok(report.finish())
}

/// Every span of `M`-arrows has an independent amalgam.
pub fn verify_existence(notion: &IndependenceNotion, sampler: &Sampler, n: usize) -> Result<CheckReport, CellularError> {
    require_samples(n)?;
    let cs = notion.structure();
    let mut report = new_report("existence", notion);
    run_samples(&mut report, sampler, n, |_, rng, log| {
        let span = m_span(rng, cs, sampler.caps)?;
        let sq = amalgamate(&span, cs)?;
        let ok = sq.edges().iter().all(|(_, e)| cs.in_m(e)) && is_independent(notion, &sq)?;
        if !ok {
            let mut b = InstanceBuilder::new();
            b.span("span", &span).square("amalgam", &sq).notion(notion);
            log.fail("no-independent-amalgam", "the amalgam is not independent", b.build());
        }
        Ok(())
    });
    Ok(report.finish())
}

/// Two independent amalgams of one span merge into a common one.
pub fn verify_uniqueness(notion: &IndependenceNotion, sampler: &Sampler, n: usize) -> Result<CheckReport, CellularError> {
    require_samples(n)?;
    let cs = notion.structure();
    let mut report = new_report("uniqueness", notion);
    run_samples(&mut report, sampler, n, |_, rng, log| {
        let span = m_span(rng, cs, sampler.caps)?;
        let sq1 = cellular_square_over(rng, &span, cs, sampler.caps)?;
        let sq2 = cellular_square_over(rng, &span, cs, sampler.caps)?;
        let instance = || {
            let mut b = InstanceBuilder::new();
            b.square("sq1", &sq1).square("sq2", &sq2).notion(notion);
            b.build()
        };
        if notion.is_cellular() {
            let u = unify_amalgams(&sq1, &sq2, cs)?;
            if let Some(kind) = check_merge(notion, &sq1, &sq2, &u.d1, &u.d2)? {
                log.fail(kind, "the merged amalgam violates a contract", instance());
            }
            return Ok(());
        }
        match probe_merge(notion, &sq1, &sq2, sampler.bound)? {
            MergeOutcome::Merged { .. } => log.count("merged"),
            MergeOutcome::NotFound {
                obstruction: Some(_), ..
            } => log.fail("no-merge", "a forced relation rules out every merge", instance()),
            MergeOutcome::NotFound { obstruction: None, .. } => {
                return Err(AbError::Sampling {
                    what: "merge within the search bound",
                    attempts: 1,
                }
                .into())
            }
        }
        Ok(())
    });
    Ok(report.finish())
}

/// Pasting two independent squares side by side gives an independent
/// rectangle.
///
/// The left square comes from the notion's sampler. The right one is the
/// pushout of `(f', v)` for an `M`-arrow `f'` out of `B`, followed by an
/// `M`-extension of its corner, so neither square is only a pushout.
pub fn verify_transitivity(notion: &IndependenceNotion, sampler: &Sampler, n: usize) -> Result<CheckReport, CellularError> {
    require_samples(n)?;
    let cs = notion.structure();
    let mut report = new_report("transitivity", notion);
    run_samples(&mut report, sampler, n, |_, rng, log| {
        let left = independent_square(rng, notion, sampler)?;
        let f2 = m_extension(rng, left.b(), cs, sampler.caps)?;
        let right = cellular_square_over(rng, &Span::new(f2, left.v.clone())?, cs, sampler.caps)?;
        if !is_independent(notion, &right)? {
            log.count("right_not_independent");
            return Ok(());
        }
        let outer = Square::new(
            compose(&right.f, &left.f)?,
            left.g.clone(),
            compose(&right.u, &left.u)?,
            right.v.clone(),
        )?;
        if !is_independent(notion, &outer)? {
            let mut b = InstanceBuilder::new();
            b.square("left", &left)
                .square("right", &right)
                .square("outer", &outer)
                .notion(notion);
            log.fail("outer-not-independent", "pasted rectangle is not independent", b.build());
        }
        Ok(())
    });
    Ok(report.finish())
}

/// Build/verify round trips for lengths `1..=6` (sample `i` has length
/// `1 + i mod 6`) over random `M`-arrows.
pub fn verify_sequences(notion: &IndependenceNotion, sampler: &Sampler, n: usize) -> Result<CheckReport, CellularError> {
    require_samples(n)?;
    let cs = notion.structure();
    let mut report = new_report("sequences", notion);
    if !notion.is_cellular() {
        return Err(CellularError::Unsupported(format!(
            "sequences need constructive existence; the {} notion has none",
            notion.kind_name()
        )));
    }
    const OK: [&str; 6] = ["length_1_ok", "length_2_ok", "length_3_ok", "length_4_ok", "length_5_ok", "length_6_ok"];
    run_samples(&mut report, sampler, n, |i, rng, log| {
        let caps = crate::abgrp::random::Caps {
            gens: sampler.caps.gens.min(2),
            ..sampler.caps
        };
        let a = random_group(rng, caps);
        let f = m_extension(rng, &a, cs, caps)?;
        let len = 1 + i % 6;
        let seq = build_independent_sequence(&f, len, notion)?;
        let r = verify_independent_sequence(&seq, notion);
        if r.failures.is_empty() {
            log.count(OK[len - 1]);
        }
        for w in r.failures {
            log.fail(&w.kind, w.detail, sequence_instance(&seq, cs));
        }
        Ok(())
    });
    Ok(report.finish())
}
