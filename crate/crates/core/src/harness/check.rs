//! Engine-versus-oracle checks and counterexample shrinking.

use std::time::Instant;

use crate::error::Result;
use crate::sets::PairReport;

use super::engine::{Engine, PairEngine};
use super::gen::{generate, GenParams};
use super::instance::{Instance, Kind};
use super::oracle::Oracle;

/// A minimal instance on which the engine disagrees with the oracle.
#[derive(Clone, Debug)]
pub struct Counterexample {
    /// Index of the failing query in the original instance.
    pub query: usize,
    /// Shrunk instance holding only the failing query.
    pub instance: Instance,
    pub expected: PairReport,
    pub got: PairReport,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub kind: Kind,
    pub n: usize,
    pub seed: u64,
    pub build_secs: f64,
    pub storage: usize,
    /// Engine output per query.
    pub outputs: Vec<PairReport>,
    pub seed_sizes: Vec<usize>,
    pub mismatches: usize,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    pub fn total_pairs(&self) -> usize {
        self.outputs.iter().map(PairReport::len).sum()
    }

    /// One-line summary without timing fields.
    pub fn summary(&self) -> String {
        format!(
            "kind={} n={} seed={} queries={} pairs={} max_seeds={} storage={} mismatches={} {}",
            self.kind,
            self.n,
            self.seed,
            self.outputs.len(),
            self.total_pairs(),
            self.seed_sizes.iter().max().copied().unwrap_or(0),
            self.storage,
            self.mismatches,
            if self.passed() { "ok" } else { "FAILED" }
        )
    }
}

/// Greedily drops items while `fails` keeps holding. In the result, removing
/// any single item makes `fails` false.
pub fn shrink<T: Clone>(mut items: Vec<T>, mut fails: impl FnMut(&[T]) -> bool) -> Vec<T> {
    loop {
        let mut changed = false;
        let mut k = items.len();
        while k > 0 {
            k -= 1;
            let mut fewer = items.clone();
            fewer.remove(k);
            if fails(&fewer) {
                items = fewer;
                changed = true;
            }
        }
        if !changed {
            return items;
        }
    }
}

/// Generates an instance and checks the engine on it.
pub fn run_check(params: &GenParams) -> Result<CheckReport> {
    check_instance(&generate(params)?)
}

pub fn check_instance(inst: &Instance) -> Result<CheckReport> {
    check_instance_with(inst, Engine::build)
}

/// Checks the engine produced by `build` against the oracle on every query
/// of `inst`. The first mismatch is shrunk to a minimal counterexample.
pub fn check_instance_with<E: PairEngine>(
    inst: &Instance,
    build: impl Fn(&Instance) -> Result<E>,
) -> Result<CheckReport> {
    let start = Instant::now();
    let engine = build(inst)?;
    let build_secs = start.elapsed().as_secs_f64();
    let oracle = Oracle::new(inst);
    let mut outputs = Vec::with_capacity(inst.queries.len());
    let mut seed_sizes = Vec::with_capacity(inst.queries.len());
    let mut mismatches = 0;
    let mut first_bad = None;
    for (k, q) in inst.queries.iter().enumerate() {
        let answer = engine.answer(q)?;
        if answer.pairs != oracle.pairs(q) {
            mismatches += 1;
            first_bad.get_or_insert(k);
        }
        seed_sizes.push(answer.seeds.len());
        outputs.push(answer.pairs);
    }
    let counterexample = first_bad.map(|k| minimize(inst, k, &build));
    Ok(CheckReport {
        kind: inst.kind,
        n: inst.len(),
        seed: inst.seed,
        build_secs,
        storage: engine.storage(),
        outputs,
        seed_sizes,
        mismatches,
        counterexample,
    })
}

fn minimize<E: PairEngine>(inst: &Instance, query: usize, build: &impl Fn(&Instance) -> Result<E>) -> Counterexample {
    let single = Instance {
        queries: vec![inst.queries[query]],
        ..inst.clone()
    };
    let q = single.queries[0];
    let outcome = |sub: &Instance| -> Option<(PairReport, PairReport)> {
        let got = build(sub).ok()?.answer(&q).ok()?.pairs;
        let expected = Oracle::new(sub).pairs(&q);
        (got != expected).then_some((expected, got))
    };
    let keep = shrink((0..inst.len()).collect(), |keep| outcome(&single.select(keep)).is_some());
    let instance = single.select(&keep);
    let (expected, got) = outcome(&instance).unwrap_or_default();
    Counterexample {
        query,
        instance,
        expected,
        got,
    }
}
