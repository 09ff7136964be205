//! Seeded Monte Carlo runs of the Random Edge walk.
//!
//! Trials are split into fixed blocks of [`BLOCK_TRIALS`]; block `b` draws
//! from a ChaCha8 stream seeded by `seed` with stream id `b`. Histograms are
//! merged by addition, so results do not depend on the worker count.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::{PolytopeDigraph, VertexId};
use crate::rational::Rational;

pub const BLOCK_TRIALS: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimulationStats {
    pub trials: u64,
    pub seed: u64,
    /// Path length to trial count.
    pub histogram: BTreeMap<u64, u64>,
}

impl SimulationStats {
    /// Exact sample mean.
    pub fn mean(&self) -> Rational {
        if self.trials == 0 {
            return Rational::zero();
        }
        let sum: u128 = self.histogram.iter().map(|(&k, &c)| k as u128 * c as u128).sum();
        Rational::from_big(sum.into(), self.trials.into())
    }

    /// Exact unbiased sample variance; zero for fewer than two trials.
    pub fn sample_variance(&self) -> Rational {
        if self.trials < 2 {
            return Rational::zero();
        }
        let n = self.trials as u128;
        let s1: u128 = self.histogram.iter().map(|(&k, &c)| k as u128 * c as u128).sum();
        let s2: u128 = self
            .histogram
            .iter()
            .map(|(&k, &c)| (k as u128) * (k as u128) * c as u128)
            .sum();
        // (n·s2 − s1²) / (n(n−1))
        let num = num_bigint::BigInt::from(n) * num_bigint::BigInt::from(s2)
            - num_bigint::BigInt::from(s1) * num_bigint::BigInt::from(s1);
        Rational::from_big(num, num_bigint::BigInt::from(n * (n - 1)))
    }

    pub fn standard_error(&self) -> f64 {
        if self.trials == 0 {
            return 0.0;
        }
        (self.sample_variance().to_f64() / self.trials as f64).sqrt()
    }

    fn merge(mut self, other: SimulationStats) -> SimulationStats {
        self.trials += other.trials;
        for (k, c) in other.histogram {
            *self.histogram.entry(k).or_insert(0) += c;
        }
        self
    }
}

fn run_block(g: &PolytopeDigraph, start: usize, seed: u64, block: u64, trials: u64) -> SimulationStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let mut histogram = BTreeMap::new();
    for _ in 0..trials {
        let mut v = start;
        let mut steps = 0u64;
        while v != 0 {
            let down = g.down(v);
            v = down[rng.gen_range(0..down.len())];
            steps += 1;
        }
        *histogram.entry(steps).or_insert(0) += 1;
    }
    SimulationStats {
        trials,
        seed,
        histogram,
    }
}

fn blocks(trials: u64) -> Vec<(u64, u64)> {
    let full = trials / BLOCK_TRIALS;
    let rest = trials % BLOCK_TRIALS;
    let mut out: Vec<(u64, u64)> = (0..full).map(|b| (b, BLOCK_TRIALS)).collect();
    if rest > 0 {
        out.push((full, rest));
    }
    out
}

fn precheck(g: &PolytopeDigraph, start: VertexId) -> Result<(), GraphError> {
    if start.0 >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange(start.0));
    }
    match (1..g.vertex_count()).find(|&v| g.down_degree(v) == 0) {
        Some(vertex) => Err(GraphError::SinkNotUnique { vertex }),
        None => Ok(()),
    }
}

fn empty(seed: u64) -> SimulationStats {
    SimulationStats {
        trials: 0,
        seed,
        histogram: BTreeMap::new(),
    }
}

/// Single-threaded run; the reference for every parallel result.
pub fn simulate_sequential(
    g: &PolytopeDigraph,
    start: VertexId,
    trials: u64,
    seed: u64,
) -> Result<SimulationStats, GraphError> {
    precheck(g, start)?;
    Ok(blocks(trials)
        .into_iter()
        .map(|(b, t)| run_block(g, start.0, seed, b, t))
        .fold(empty(seed), SimulationStats::merge))
}

/// Runs on the global rayon pool when the `parallel` feature is on.
pub fn simulate(g: &PolytopeDigraph, start: VertexId, trials: u64, seed: u64) -> Result<SimulationStats, GraphError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        precheck(g, start)?;
        Ok(blocks(trials)
            .into_par_iter()
            .map(|(b, t)| run_block(g, start.0, seed, b, t))
            .reduce(|| empty(seed), SimulationStats::merge))
    }
    #[cfg(not(feature = "parallel"))]
    {
        simulate_sequential(g, start, trials, seed)
    }
}

/// Like [`simulate`] with an explicit worker count; `jobs <= 1` is sequential.
pub fn simulate_with_jobs(
    g: &PolytopeDigraph,
    start: VertexId,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<SimulationStats, GraphError> {
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| GraphError::Precondition(e.to_string()))?;
        return pool.install(|| simulate(g, start, trials, seed));
    }
    let _ = jobs;
    simulate_sequential(g, start, trials, seed)
}
