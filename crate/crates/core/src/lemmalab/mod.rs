//! Exhaustive and sampled checks of the finite inequalities behind the
//! construction, with JSON-ready reports.
//!
//! Asserted checks must report zero violations; report-only checks sweep
//! statements whose hypotheses are asymptotic and merely record what they
//! see. Sampled sweeps draw instance `i` from a ChaCha8 generator seeded
//! with the report seed and switched to stream `i`, so results do not
//! depend on scheduling or thread count.

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use checks::{
    check_eq_2, check_lemma_2_3, check_lemma_2_4, check_lemma_2_6, check_lemma_3_2,
    check_lemma_3_3, check_lemma_3_4, check_lemma_3_7, check_prop_2_7,
};

use crate::caps::Caps;
use crate::error::{Error, Result};

/// Identifies the sampling scheme recorded in every sampled report.
pub const RNG_NAME: &str = "chacha8-stream/1";
pub const DEFAULT_SAMPLES: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Asserted,
    ReportOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sweep {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

impl Sweep {
    fn label(&self) -> &'static str {
        match self {
            Sweep::Exhaustive => "exhaustive",
            Sweep::Sampled { .. } => "sampled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma_id: String,
    pub mode: Mode,
    pub sweep: Sweep,
    pub instances_checked: u64,
    pub violations: u64,
    /// Largest observed value / bound, where the check has a ratio.
    pub worst_ratio: Option<f64>,
    pub parameters: BTreeMap<String, Value>,
    /// Reproduction data for the first violating instance in sweep order.
    pub first_violation: Option<Value>,
    pub notes: BTreeMap<String, Value>,
}

impl LemmaReport {
    /// Asserted reports pass with zero violations; report-only always pass.
    pub fn passed(&self) -> bool {
        self.mode == Mode::ReportOnly || self.violations == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    ChoosablePairs,
    MaxTwoCycles,
    InvolutionRelation,
    GoodPairCount,
    EdgeTwoCycles,
    HalfTwoCycles,
    ClosePermutations,
    FixedEdgeCount,
    CliqueSize,
}

impl LemmaId {
    pub const ALL: [LemmaId; 9] = [
        LemmaId::ChoosablePairs,
        LemmaId::MaxTwoCycles,
        LemmaId::InvolutionRelation,
        LemmaId::GoodPairCount,
        LemmaId::EdgeTwoCycles,
        LemmaId::HalfTwoCycles,
        LemmaId::ClosePermutations,
        LemmaId::FixedEdgeCount,
        LemmaId::CliqueSize,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LemmaId::ChoosablePairs => "2.3",
            LemmaId::MaxTwoCycles => "2.4",
            LemmaId::InvolutionRelation => "2.6",
            LemmaId::GoodPairCount => "3.2",
            LemmaId::EdgeTwoCycles => "3.3",
            LemmaId::HalfTwoCycles => "3.4",
            LemmaId::ClosePermutations => "3.7",
            LemmaId::FixedEdgeCount => "eq2",
            LemmaId::CliqueSize => "2.7",
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            LemmaId::EdgeTwoCycles => Mode::ReportOnly,
            _ => Mode::Asserted,
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<_> = LemmaId::ALL.iter().map(|i| i.as_str()).collect();
                Error::invalid(format!(
                    "unknown lemma id {s:?}; known: {}",
                    known.join(", ")
                ))
            })
    }
}

/// Parameters for [`run`]. Unset fields take per-check defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaRequest {
    pub id: LemmaId,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub n_max: Option<usize>,
    pub r_max: Option<usize>,
    pub delta: Option<f64>,
    pub sweep: Sweep,
}

impl LemmaRequest {
    pub fn new(id: LemmaId) -> LemmaRequest {
        LemmaRequest {
            id,
            n: None,
            r: None,
            n_max: None,
            r_max: None,
            delta: None,
            sweep: Sweep::Exhaustive,
        }
    }
}

pub fn run(req: &LemmaRequest, caps: &Caps) -> Result<LemmaReport> {
    let n = req.n.unwrap_or(4);
    let r = req.r.unwrap_or(2);
    match req.id {
        LemmaId::ChoosablePairs => check_lemma_2_3(n, r, caps),
        LemmaId::MaxTwoCycles => {
            check_lemma_2_4(req.n_max.unwrap_or(8), req.r_max.unwrap_or(4), caps)
        }
        LemmaId::InvolutionRelation => check_lemma_2_6(n, r, caps),
        LemmaId::GoodPairCount => check_lemma_3_2(n, r, req.sweep, caps),
        LemmaId::EdgeTwoCycles => check_lemma_3_3(
            req.n.unwrap_or(6),
            r,
            req.delta.unwrap_or(4.0),
            req.sweep,
            caps,
        ),
        LemmaId::HalfTwoCycles => check_lemma_3_4(n, r, req.sweep, caps),
        LemmaId::ClosePermutations => check_lemma_3_7(req.n_max.or(req.n).unwrap_or(6), caps),
        LemmaId::FixedEdgeCount => check_eq_2(req.n_max.unwrap_or(8), req.r_max.unwrap_or(4), caps),
        LemmaId::CliqueSize => check_prop_2_7(n, r, req.sweep, caps),
    }
}

pub(crate) fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Per-chunk counters, merged in sweep order.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    pub instances: u64,
    pub violations: u64,
    pub first_violation: Option<Value>,
    pub worst: Option<f64>,
    pub tight: u64,
    pub first_tight: Option<Value>,
}

impl Tally {
    pub fn violation(&mut self, data: impl FnOnce() -> Value) {
        self.violations += 1;
        if self.first_violation.is_none() {
            self.first_violation = Some(data());
        }
    }

    pub fn ratio(&mut self, r: f64) {
        self.worst = Some(self.worst.map_or(r, |w| w.max(r)));
    }

    pub fn tight(&mut self, data: impl FnOnce() -> Value) {
        self.tight += 1;
        if self.first_tight.is_none() {
            self.first_tight = Some(data());
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.violations += other.violations;
        self.first_violation = self.first_violation.or(other.first_violation);
        self.worst = match (self.worst, other.worst) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.tight += other.tight;
        self.first_tight = self.first_tight.or(other.first_tight);
        self
    }

    pub fn sum(parts: Vec<Tally>) -> Tally {
        parts.into_iter().fold(Tally::default(), Tally::merge)
    }
}

pub(crate) fn report(
    id: LemmaId,
    sweep: Sweep,
    tally: Tally,
    mut parameters: BTreeMap<String, Value>,
    mut notes: BTreeMap<String, Value>,
) -> LemmaReport {
    parameters.insert("sweep".into(), sweep.label().into());
    if let Sweep::Sampled { samples, seed } = sweep {
        parameters.insert("samples".into(), samples.into());
        parameters.insert("seed".into(), seed.into());
        parameters.insert("rng".into(), RNG_NAME.into());
    }
    if tally.tight > 0 || tally.first_tight.is_some() {
        notes.insert("tight_instances".into(), tally.tight.into());
    }
    if let Some(t) = tally.first_tight {
        notes.insert("tightness_witness".into(), t);
    }
    LemmaReport {
        lemma_id: id.as_str().to_string(),
        mode: id.mode(),
        sweep,
        instances_checked: tally.instances,
        violations: tally.violations,
        worst_ratio: tally.worst,
        parameters,
        first_violation: tally.first_violation,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn ids_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(id.as_str().parse::<LemmaId>().unwrap(), id);
        }
        assert!("9.9".parse::<LemmaId>().is_err());
    }

    #[test]
    fn streams_are_independent_of_order() {
        let a: Vec<u64> = (0..4).map(|i| instance_rng(5, i).next_u64()).collect();
        let b: Vec<u64> = (0..4)
            .rev()
            .map(|i| instance_rng(5, i).next_u64())
            .collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn tally_keeps_first_violation() {
        let mut a = Tally::default();
        let mut b = Tally::default();
        b.violation(|| "b".into());
        a.instances = 1;
        let mut c = Tally::default();
        c.violation(|| "c".into());
        let t = Tally::sum(vec![a, b, c]);
        assert_eq!(t.violations, 2);
        assert_eq!(t.first_violation, Some("b".into()));
    }
}
