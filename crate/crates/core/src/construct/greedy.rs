//! Randomized greedy constructions.
//!
//! Each step adds the candidate column that covers the most new points.
//! Candidates come either from a random pool or from a full scan, as decided
//! by a [`Schedule`]; ties are broken uniformly at random.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Algorithm, Code, ConstructError};
use crate::coverage::{CoverageState, GainScratch};
use crate::gf::FieldSpec;
use crate::pg::Column;

/// Attempts are launched in batches of this size, so stopping at a target
/// length does not depend on the worker count.
const BATCH: usize = 8;

/// Candidate selection for one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRule {
    /// Evaluate this many distinct random candidates.
    Random(usize),
    /// Evaluate every eligible candidate.
    FullScan,
}

/// Which rule applies at each step. Steps are counted from 0 after the start
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    /// Explicit rules for the first steps.
    pub steps: Vec<StepRule>,
    /// Pool size for random steps not listed in `steps`.
    pub pool: usize,
    /// Every `k`-th step is a full scan.
    pub full_scan_every: Option<usize>,
    /// Full scan once at most this many points are uncovered.
    pub full_scan_below: Option<u64>,
    /// Full scan whenever its estimated cost in kernel visits is at most this.
    pub full_scan_budget: Option<u64>,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            steps: Vec::new(),
            pool: 50,
            full_scan_every: None,
            full_scan_below: None,
            full_scan_budget: Some(1 << 24),
        }
    }
}

impl Schedule {
    /// Full scan on every step.
    pub fn exhaustive() -> Self {
        Schedule {
            steps: Vec::new(),
            pool: 1,
            full_scan_every: Some(1),
            full_scan_below: None,
            full_scan_budget: None,
        }
    }

    /// Random pools of a fixed size and nothing else.
    pub fn random(pool: usize) -> Self {
        Schedule {
            steps: Vec::new(),
            pool,
            full_scan_every: None,
            full_scan_below: None,
            full_scan_budget: None,
        }
    }

    pub fn rule(&self, step: usize, state: &CoverageState) -> StepRule {
        if let Some(&rule) = self.steps.get(step) {
            return rule;
        }
        let full = self.full_scan_below.is_some_and(|t| state.uncovered_count() <= t)
            || self.full_scan_every.is_some_and(|k| k > 0 && (step + 1).is_multiple_of(k))
            || self.full_scan_budget.is_some_and(|b| state.all_gains_cost() <= b);
        if full {
            StepRule::FullScan
        } else {
            StepRule::Random(self.pool)
        }
    }

    fn validate(&self) -> Result<(), ConstructError> {
        if self.pool == 0 || self.steps.contains(&StepRule::Random(0)) {
            return Err(ConstructError::InvalidConfig(
                "random steps need a pool of at least one candidate".into(),
            ));
        }
        Ok(())
    }
}

/// Settings shared by both greedy variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyConfig {
    pub schedule: Schedule,
    /// Columns every attempt starts from.
    pub start_matrix: Vec<Column>,
    pub seed: u64,
    pub attempts: usize,
    /// Stop launching attempts once a code this short has been found.
    pub target_length: Option<usize>,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig {
            schedule: Schedule::default(),
            start_matrix: Vec::new(),
            seed: 0,
            attempts: 1,
            target_length: None,
        }
    }
}

/// Candidate pool of a greedy variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Any column not yet in the matrix.
    Rand,
    /// Only columns not yet covered, which keeps the minimum distance at R+2.
    Distance,
}

impl Variant {
    fn algorithm(self) -> Algorithm {
        match self {
            Variant::Rand => Algorithm::RandGreedy,
            Variant::Distance => Algorithm::DRandGreedy,
        }
    }
}

/// Result of a multi-attempt search.
#[derive(Debug, Clone)]
pub struct GreedyOutcome {
    /// Shortest code; the earliest attempt wins ties.
    pub best: Code,
    /// Length reached by each attempt that ran, in attempt order.
    pub lengths: Vec<usize>,
    /// Columns found by each attempt that ran, in attempt order.
    pub runs: Vec<Vec<Column>>,
}

/// Greedy search whose candidates are all columns outside the matrix.
pub fn rand_greedy(
    field: &FieldSpec,
    r: usize,
    radius: usize,
    cfg: &GreedyConfig,
) -> Result<Code, ConstructError> {
    greedy_search(field, r, radius, cfg, Variant::Rand).map(|o| o.best)
}

/// Greedy search restricted to columns that are not yet covered.
pub fn d_rand_greedy(
    field: &FieldSpec,
    r: usize,
    radius: usize,
    cfg: &GreedyConfig,
) -> Result<Code, ConstructError> {
    greedy_search(field, r, radius, cfg, Variant::Distance).map(|o| o.best)
}

pub fn greedy_search(
    field: &FieldSpec,
    r: usize,
    radius: usize,
    cfg: &GreedyConfig,
    variant: Variant,
) -> Result<GreedyOutcome, ConstructError> {
    if cfg.attempts == 0 {
        return Err(ConstructError::InvalidConfig("attempts must be at least 1".into()));
    }
    cfg.schedule.validate()?;
    let mut start = CoverageState::new(field, r, radius)?;
    for c in &cfg.start_matrix {
        start
            .add_column(c.clone())
            .map_err(|e| ConstructError::InvalidStartMatrix(e.to_string()))?;
    }

    let mut results: Vec<Vec<Column>> = Vec::new();
    let mut first = 0;
    while first < cfg.attempts {
        let batch: Vec<Vec<Column>> = (first..(first + BATCH).min(cfg.attempts))
            .into_par_iter()
            .map(|a| {
                let mut rng = ChaCha8Rng::seed_from_u64(attempt_seed(cfg.seed, a as u64));
                attempt(start.clone(), &cfg.schedule, variant, &mut rng)
            })
            .collect();
        results.extend(batch);
        first += BATCH;
        if let Some(t) = cfg.target_length {
            if results.iter().any(|c| c.len() <= t) {
                break;
            }
        }
    }
    let lengths: Vec<usize> = results.iter().map(Vec::len).collect();
    let best_index = (0..results.len()).min_by_key(|&i| (lengths[i], i)).unwrap();
    let columns = results[best_index].clone();
    Ok(GreedyOutcome {
        best: Code {
            field: field.clone(),
            r,
            radius,
            columns,
            algorithm: variant.algorithm(),
            seed: Some(cfg.seed),
            d: None,
        },
        lengths,
        runs: results,
    })
}

/// Seed of attempt `a`: the base seed xor a splitmix64 hash of `a`.
pub(crate) fn attempt_seed(seed: u64, a: u64) -> u64 {
    let mut z = a.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    seed ^ (z ^ (z >> 31))
}

fn attempt(
    mut state: CoverageState,
    schedule: &Schedule,
    variant: Variant,
    rng: &mut ChaCha8Rng,
) -> Vec<Column> {
    let mut scratch = GainScratch::new();
    let mut step = 0;
    while !state.is_complete() {
        let mut pick = match schedule.rule(step, &state) {
            StepRule::Random(pool) => {
                let cands = sample(&state, variant, pool, rng);
                let gains: Vec<u64> = cands
                    .iter()
                    .map(|&k| {
                        let c = state.space().unrank(k);
                        state.gain_with(&c, &mut scratch).expect("candidate outside matrix")
                    })
                    .collect();
                choose(&cands, &gains, rng)
            }
            StepRule::FullScan => None,
        };
        if pick.is_none() {
            let votes = state.all_gains();
            let cands: Vec<u64> = match variant {
                Variant::Distance => state.covered().complement().collect(),
                Variant::Rand => (0..state.point_count())
                    .filter(|&k| !state.contains_rank(k))
                    .collect(),
            };
            let gains: Vec<u64> = cands.iter().map(|&k| votes[k as usize] as u64).collect();
            pick = choose(&cands, &gains, rng);
        }
        let k = pick.expect("an uncovered point always has positive gain");
        state
            .add_column(state.space().unrank(k))
            .expect("candidate outside matrix");
        step += 1;
    }
    state.columns().to_vec()
}

/// Uniform choice among the candidates of largest positive gain.
fn choose(cands: &[u64], gains: &[u64], rng: &mut ChaCha8Rng) -> Option<u64> {
    let best = *gains.iter().max()?;
    if best == 0 {
        return None;
    }
    let ties: Vec<u64> = cands
        .iter()
        .zip(gains)
        .filter(|(_, &g)| g == best)
        .map(|(&k, _)| k)
        .collect();
    Some(ties[rng.gen_range(0..ties.len())])
}

/// Up to `pool` distinct eligible ranks, drawn uniformly.
fn sample(state: &CoverageState, variant: Variant, pool: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let n = state.point_count();
    let eligible = |k: u64| match variant {
        Variant::Distance => !state.covered().contains(k),
        Variant::Rand => !state.contains_rank(k),
    };
    let available = match variant {
        Variant::Distance => state.uncovered_count(),
        Variant::Rand => n - state.columns().len() as u64,
    };
    if available <= pool as u64 {
        return (0..n).filter(|&k| eligible(k)).collect();
    }
    if available >= n / 8 && available >= 4 * pool as u64 {
        // rejection sampling is cheap while eligible points are dense
        let mut out: Vec<u64> = Vec::with_capacity(pool);
        while out.len() < pool {
            let k = rng.gen_range(0..n);
            if eligible(k) && !out.contains(&k) {
                out.push(k);
            }
        }
        return out;
    }
    let all: Vec<u64> = (0..n).filter(|&k| eligible(k)).collect();
    index::sample(rng, all.len(), pool)
        .into_iter()
        .map(|i| all[i])
        .collect()
}
