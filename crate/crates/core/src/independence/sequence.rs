use std::collections::BTreeMap;

use crate::abgrp::{compose, pushout, AbGroup, Hom, Span, Square};
use crate::cellular::{CellularError, CellularStructure};
use crate::harness::{CheckReport, Witness};
use crate::workbench::format::InstanceBuilder;

use super::{is_independent, IndependenceNotion};

/// Independent copies of the target of `base: M₀ → M`.
///
/// `objects[i] = N_i` with `N_0 = M`; `arrows[i - 1] = f_i: M → N_i` for
/// `1 <= i <= alpha` (and `f_0` is the identity of `M`); `transitions`
/// holds `g_{i,j}: N_i → N_j` for every `i <= j`, stored rather than
/// recomputed so that functoriality can be checked.
#[derive(Clone, Debug)]
pub struct IndependentSequence {
    pub base: Hom,
    pub objects: Vec<AbGroup>,
    pub arrows: Vec<Hom>,
    pub transitions: BTreeMap<(usize, usize), Hom>,
}

impl IndependentSequence {
    /// `alpha`.
    pub fn length(&self) -> usize {
        self.objects.len() - 1
    }

    /// `f_i: M → N_i`.
    pub fn f(&self, i: usize) -> Hom {
        if i == 0 {
            Hom::identity(self.base.dst())
        } else {
            self.arrows[i - 1].clone()
        }
    }

    pub fn g(&self, i: usize, j: usize) -> Option<&Hom> {
        self.transitions.get(&(i, j))
    }

    /// The square `(g_{0,i} ∘ f₀, f₀, f_j, g_{i,j})` for `i < j`.
    pub fn square(&self, i: usize, j: usize) -> Result<Square, CellularError> {
        let g0i = self.g(0, i).ok_or_else(|| missing(0, i))?;
        let gij = self.g(i, j).ok_or_else(|| missing(i, j))?;
        Ok(Square::new_unchecked(
            compose(g0i, &self.base)?,
            self.base.clone(),
            self.f(j),
            gij.clone(),
        )?)
    }
}

fn missing(i: usize, j: usize) -> CellularError {
    CellularError::InvalidInput(format!("transition g_{{{i},{j}}} is missing"))
}

/// Builds `N_0 = M, N_1, ..., N_alpha` by repeated pushouts: step `i → i+1`
/// pushes out the span `(g_{0,i} ∘ f₀, f₀)`, giving `g_{i,i+1}` and `f_{i+1}`.
pub fn build_independent_sequence(
    f: &Hom,
    length: usize,
    notion: &IndependenceNotion,
) -> Result<IndependentSequence, CellularError> {
    if !notion.is_cellular() {
        return Err(CellularError::Unsupported(format!(
            "no constructive existence for the {} notion",
            notion.kind_name()
        )));
    }
    if length == 0 {
        return Err(CellularError::InvalidInput("length must be at least 1".into()));
    }
    notion.structure().require("f", f)?;
    let m = f.dst().clone();
    let mut objects = vec![m.clone()];
    let mut arrows = Vec::new();
    let mut transitions = BTreeMap::new();
    transitions.insert((0, 0), Hom::identity(&m));
    for i in 0..length {
        let g0i = &transitions[&(0, i)];
        let po = pushout(&Span::new(compose(g0i, f)?, f.clone())?);
        let step = po.into_b;
        let n_next = po.p.clone();
        for k in 0..=i {
            let gk = compose(&step, &transitions[&(k, i)])?;
            transitions.insert((k, i + 1), gk);
        }
        transitions.insert((i + 1, i + 1), Hom::identity(&n_next));
        arrows.push(po.into_c);
        objects.push(n_next);
    }
    Ok(IndependentSequence {
        base: f.clone(),
        objects,
        arrows,
        transitions,
    })
}

/// Checks functoriality, commutation for `i < j <= alpha` and independence
/// for `i < j < alpha`, reporting the first failing index tuple in each
/// category.
pub fn verify_independent_sequence(
    seq: &IndependentSequence,
    notion: &IndependenceNotion,
) -> CheckReport {
    let cs = notion.structure();
    let mut report = CheckReport::new("sequence", &cs.name());
    report.notion = Some(notion.kind_name().to_string());
    report.samples_run = 1;
    let witness = |kind: &str, detail: String| Witness {
        sample: None,
        kind: kind.to_string(),
        detail,
        instance: sequence_instance(seq, cs),
    };
    let alpha = seq.length();

    if let Some(detail) = shape_problem(seq) {
        report.record_failure(witness("shape", detail));
        return report.finish();
    }

    'functoriality: for i in 0..=alpha {
        let gii = &seq.transitions[&(i, i)];
        if !gii.equals(&Hom::identity(&seq.objects[i])).unwrap_or(false) {
            report.record_failure(witness("functoriality", format!("g_{{{i},{i}}} is not the identity")));
            break;
        }
        for j in i..=alpha {
            for k in j..=alpha {
                report.bump("functoriality_checked", 1);
                let lhs = compose(&seq.transitions[&(j, k)], &seq.transitions[&(i, j)]);
                let ok = lhs
                    .and_then(|l| l.equals(&seq.transitions[&(i, k)]))
                    .unwrap_or(false);
                if !ok {
                    report.record_failure(witness(
                        "functoriality",
                        format!("g_{{{j},{k}}} ∘ g_{{{i},{j}}} != g_{{{i},{k}}} at ({i},{j},{k})"),
                    ));
                    break 'functoriality;
                }
            }
        }
    }

    'commutation: for i in 0..alpha {
        for j in i + 1..=alpha {
            report.bump("commutation_checked", 1);
            let ok = seq
                .square(i, j)
                .and_then(|sq| Ok(sq.commutes()?))
                .unwrap_or(false);
            if !ok {
                report.record_failure(witness("commutation", format!("square ({i},{j}) does not commute")));
                break 'commutation;
            }
        }
    }

    'independence: for i in 0..alpha {
        for j in i + 1..alpha {
            report.bump("independence_checked", 1);
            let verdict = seq.square(i, j).and_then(|sq| is_independent(notion, &sq));
            match verdict {
                Ok(true) => {}
                Ok(false) => {
                    report.record_failure(witness("independence", format!("square ({i},{j}) is not independent")));
                    break 'independence;
                }
                Err(e) => {
                    report.record_failure(witness("independence", format!("square ({i},{j}): {e}")));
                    break 'independence;
                }
            }
        }
    }
    report.finish()
}

fn shape_problem(seq: &IndependentSequence) -> Option<String> {
    let alpha = seq.objects.len().checked_sub(1)?;
    if alpha == 0 {
        return Some("a sequence needs at least N_0 and N_1".into());
    }
    if seq.arrows.len() != alpha {
        return Some(format!("{} arrows for length {alpha}", seq.arrows.len()));
    }
    if &seq.objects[0] != seq.base.dst() {
        return Some("N_0 must be the target of the base".into());
    }
    for (i, f) in seq.arrows.iter().enumerate() {
        if f.src() != seq.base.dst() || f.dst() != &seq.objects[i + 1] {
            return Some(format!("f_{} must go from M to N_{}", i + 1, i + 1));
        }
    }
    for i in 0..=alpha {
        for j in i..=alpha {
            match seq.transitions.get(&(i, j)) {
                None => return Some(format!("transition g_{{{i},{j}}} is missing")),
                Some(g) if g.src() != &seq.objects[i] || g.dst() != &seq.objects[j] => {
                    return Some(format!("g_{{{i},{j}}} must go from N_{i} to N_{j}"))
                }
                _ => {}
            }
        }
    }
    None
}

pub(crate) fn sequence_instance(seq: &IndependentSequence, cs: &CellularStructure) -> crate::workbench::format::InstanceFile {
    let mut b = InstanceBuilder::new();
    b.sequence("seq", seq).structure(cs);
    b.build()
}
