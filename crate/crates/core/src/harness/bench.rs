//! Timing and size reports.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;

use super::engine::{Engine, PairEngine};
use super::gen::{generate, GenParams};
use super::oracle::Oracle;

/// Timing repetitions per query; the median is kept.
pub const MIN_REPS: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub kind: String,
    pub n: usize,
    pub queries: usize,
    pub build_ms: f64,
    pub storage: usize,
    pub query_mean_us: f64,
    pub query_median_us: f64,
    pub query_max_us: f64,
    pub mean_k: f64,
    pub mean_seeds: f64,
    pub max_seeds: usize,
    /// Largest `|seeds| / (sqrt(n) + k + 1)` over the queries.
    pub seed_ratio: f64,
    pub oracle_match: bool,
}

fn median(v: &mut [f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_unstable_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 { v[m] } else { 0.5 * (v[m - 1] + v[m]) }
}

/// Builds, times and checks one generated instance. Each query is timed
/// `reps` times (at least [`MIN_REPS`]) and its median kept.
pub fn bench_one(params: &GenParams, reps: usize) -> Result<BenchRow> {
    let reps = reps.max(MIN_REPS);
    let inst = generate(params)?;
    let start = Instant::now();
    let engine = Engine::build(&inst)?;
    let build_ms = start.elapsed().as_secs_f64() * 1e3;
    let oracle = Oracle::new(&inst);

    let mut times = Vec::with_capacity(inst.queries.len());
    let (mut total_k, mut total_seeds, mut max_seeds) = (0usize, 0usize, 0usize);
    let mut seed_ratio: f64 = 0.0;
    let mut oracle_match = true;
    let root_n = (inst.len() as f64).sqrt();
    for q in &inst.queries {
        let mut samples = Vec::with_capacity(reps);
        let mut last = None;
        for _ in 0..reps {
            let t = Instant::now();
            let a = engine.answer(q)?;
            samples.push(t.elapsed().as_secs_f64() * 1e6);
            last = Some(a);
        }
        let a = last.expect("at least one repetition");
        times.push(median(&mut samples));
        oracle_match &= a.pairs == oracle.pairs(q);
        let (k, s) = (a.pairs.len(), a.seeds.len());
        total_k += k;
        total_seeds += s;
        max_seeds = max_seeds.max(s);
        seed_ratio = seed_ratio.max(s as f64 / (root_n + k as f64 + 1.0));
    }
    let m = inst.queries.len().max(1) as f64;
    let query_mean_us = times.iter().sum::<f64>() / m;
    let query_max_us = times.iter().copied().fold(0.0, f64::max);
    Ok(BenchRow {
        kind: inst.kind.to_string(),
        n: inst.len(),
        queries: inst.queries.len(),
        build_ms,
        storage: engine.storage(),
        query_mean_us,
        query_median_us: median(&mut times),
        query_max_us,
        mean_k: total_k as f64 / m,
        mean_seeds: total_seeds as f64 / m,
        max_seeds,
        seed_ratio,
        oracle_match,
    })
}

/// One row per size, all other parameters shared.
pub fn run_bench(base: &GenParams, sizes: &[usize], reps: usize) -> Result<Vec<BenchRow>> {
    sizes.iter().map(|&n| bench_one(&GenParams { n, ..*base }, reps)).collect()
}

pub fn write_csv(rows: &[BenchRow], w: impl Write) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}
