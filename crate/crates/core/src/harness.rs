//! Seeded sampling runs and their reports.
//!
//! A run draws `n` samples. Sample `i` of suite `s` gets its own generator
//! seeded with [`sub_seed`]`(seed, s, i)`, so results do not depend on
//! evaluation order or on the number of worker threads.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abgrp::random::Caps;
use crate::abgrp::AbError;
use crate::cellular::CellularError;
use crate::workbench::format::InstanceFile;

/// Witnesses kept per failure kind; the total is in `stats["failures/<kind>"]`.
pub const WITNESSES_PER_KIND: usize = 4;

pub fn fnv1a64(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// `splitmix64(fnv1a64(suite) ^ splitmix64(seed) ^ index)`.
pub fn sub_seed(seed: u64, suite: &str, index: u64) -> u64 {
    splitmix64(fnv1a64(suite) ^ splitmix64(seed) ^ index)
}

/// Seed, presentation caps and search bound shared by all harnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampler {
    pub seed: u64,
    pub caps: Caps,
    pub bound: usize,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler {
            seed: 7,
            caps: Caps::default(),
            bound: 3,
        }
    }
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            seed,
            ..Self::default()
        }
    }

    pub fn rng(&self, suite: &str, index: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(sub_seed(self.seed, suite, index as u64))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AllPassed,
    CounterexamplesFound,
    Inconclusive,
}

/// A failing (or otherwise notable) diagram, serialized so it can be fed
/// back to `cellwork query`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<usize>,
    pub kind: String,
    pub detail: String,
    pub instance: InstanceFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub structure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notion: Option<String>,
    pub samples_run: usize,
    pub failures: Vec<Witness>,
    /// Diagrams attached for reference that are not failures (certificates,
    /// obstructions).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub evidence: Vec<Witness>,
    pub starved: usize,
    pub verdict: Verdict,
    pub stats: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub builtins: BTreeMap<String, serde_json::Value>,
}

impl CheckReport {
    pub fn new(suite: &str, structure: &str) -> Self {
        CheckReport {
            suite: suite.to_string(),
            structure: structure.to_string(),
            notion: None,
            samples_run: 0,
            failures: Vec::new(),
            evidence: Vec::new(),
            starved: 0,
            verdict: Verdict::AllPassed,
            stats: BTreeMap::new(),
            builtins: BTreeMap::new(),
        }
    }

    pub fn stat(&self, key: &str) -> u64 {
        self.stats.get(key).copied().unwrap_or(0)
    }

    pub fn bump(&mut self, key: &str, by: u64) {
        *self.stats.entry(key.to_string()).or_insert(0) += by;
    }

    /// Records a failure, keeping at most [`WITNESSES_PER_KIND`] diagrams per kind.
    pub fn record_failure(&mut self, w: Witness) {
        let key = format!("failures/{}", w.kind);
        let seen = self.stat(&key);
        self.bump(&key, 1);
        if (seen as usize) < WITNESSES_PER_KIND {
            self.failures.push(w);
        }
    }

    /// Failure kinds that occurred, from the stats (so dropped witnesses count).
    pub fn failure_kinds(&self) -> Vec<String> {
        self.stats
            .keys()
            .filter_map(|k| k.strip_prefix("failures/").map(str::to_string))
            .collect()
    }

    pub fn total_failures(&self) -> u64 {
        self.stats
            .iter()
            .filter(|(k, _)| k.starts_with("failures/"))
            .map(|(_, v)| v)
            .sum()
    }

    /// Sets the verdict: counterexamples if any failure was recorded,
    /// inconclusive if more than a tenth of the samples starved.
    pub fn finish(mut self) -> Self {
        self.verdict = if self.total_failures() > 0 {
            Verdict::CounterexamplesFound
        } else if self.starved * 10 > self.samples_run {
            Verdict::Inconclusive
        } else {
            Verdict::AllPassed
        };
        self
    }
}

/// What one sample produced.
#[derive(Default, Debug)]
pub struct SampleLog {
    pub failures: Vec<Witness>,
    pub counts: Vec<&'static str>,
}

impl SampleLog {
    pub fn count(&mut self, key: &'static str) {
        self.counts.push(key);
    }

    pub fn fail(&mut self, kind: &str, detail: impl Into<String>, instance: InstanceFile) {
        self.failures.push(Witness {
            sample: None,
            kind: kind.to_string(),
            detail: detail.into(),
            instance,
        });
    }
}

/// Runs `n` samples of `body` in parallel and merges them in index order.
///
/// A sample that returns a sampling error counts as starved; any other error
/// is recorded as a `harness-error` failure.
pub fn run_samples<F>(report: &mut CheckReport, sampler: &Sampler, n: usize, body: F)
where
    F: Fn(usize, &mut ChaCha8Rng, &mut SampleLog) -> Result<(), CellularError> + Sync,
{
    let suite = report.suite.clone();
    let results: Vec<(SampleLog, Result<(), CellularError>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = sampler.rng(&suite, i);
            let mut log = SampleLog::default();
            let r = body(i, &mut rng, &mut log);
            (log, r)
        })
        .collect();
    report.samples_run += n;
    for (i, (log, r)) in results.into_iter().enumerate() {
        for key in log.counts {
            report.bump(key, 1);
        }
        for mut w in log.failures {
            w.sample = Some(i);
            report.record_failure(w);
        }
        match r {
            Ok(()) => {}
            Err(CellularError::Ab(AbError::Sampling { .. })) => report.starved += 1,
            Err(e) => report.record_failure(Witness {
                sample: Some(i),
                kind: "harness-error".into(),
                detail: e.to_string(),
                instance: InstanceFile::default(),
            }),
        }
    }
}
