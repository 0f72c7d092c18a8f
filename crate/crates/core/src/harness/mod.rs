//! Ground truth, instance generation and check/bench drivers.

pub mod bench;
pub mod check;
pub mod engine;
pub mod gen;
pub mod instance;
pub mod oracle;

pub use bench::{bench_one, run_bench, write_csv, BenchRow};
pub use check::{check_instance, check_instance_with, run_check, shrink, CheckReport, Counterexample};
pub use engine::{Answer, Engine, PairEngine};
pub use gen::{generate, GenParams, Regime, DOMAIN};
pub use instance::{outputs_to_string, write_outputs, Instance, Kind, Objects, Query};
pub use oracle::{oracle_pairs, Oracle};
