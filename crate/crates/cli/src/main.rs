//! `rangepairs`: generate instances, run queries, and check or benchmark the
//! engines against the brute-force oracle.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! any other error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use rangepairs::harness::{
    bench_one, generate, run_check, write_csv, write_outputs, Engine, GenParams, Instance, Kind, Oracle, PairEngine,
};

#[derive(Parser)]
#[command(name = "rangepairs", version, about = "Report object pairs intersecting inside a query range")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct KindArgs {
    /// segments, rects, boxes, cubes, fatboxes or disks.
    #[arg(long)]
    kind: String,
    /// Aspect-ratio bound for `fatboxes`.
    #[arg(long)]
    alpha: Option<f64>,
    /// Shrink queries with n so the expected answer size stays constant.
    #[arg(long)]
    fixed_k: bool,
}

impl KindArgs {
    fn params(&self, n: usize, queries: usize, seed: u64) -> Result<GenParams> {
        let kind = Kind::parse(&self.kind, self.alpha)?;
        let p = GenParams::new(kind, n, queries, seed);
        Ok(if self.fixed_k { p.fixed_k() } else { p })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance as JSON lines.
    Gen {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        queries: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Answer the queries of an instance file.
    Query {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Use the engine (the default).
        #[arg(long, conflicts_with = "oracle")]
        engine: bool,
        /// Use the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Compare the engine with the oracle on a random instance.
    Check {
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the engine's answers here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write a shrunk failing instance.
        #[arg(long, default_value = "counterexample.jsonl")]
        counterexample: PathBuf,
    },
    /// Time the engine over several sizes and write a CSV report.
    Bench {
        #[command(flatten)]
        kind: KindArgs,
        /// Comma-separated instance sizes.
        #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Timing repetitions per query (at least 5).
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn create(path: &PathBuf) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

/// Runs a command; `Ok(false)` means a check failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen {
            kind,
            n,
            seed,
            queries,
            out,
        } => {
            let inst = generate(&kind.params(n, queries, seed)?)?;
            inst.save(&out).with_context(|| format!("writing {}", out.display()))?;
            Ok(true)
        }
        Command::Query {
            input,
            out,
            engine: _,
            oracle,
        } => {
            let inst = Instance::load(&input).with_context(|| format!("reading {}", input.display()))?;
            let outputs = if oracle {
                let o = Oracle::new(&inst);
                inst.queries.iter().map(|q| o.pairs(q)).collect::<Vec<_>>()
            } else {
                let e = Engine::build(&inst)?;
                inst.queries.iter().map(|q| Ok(e.answer(q)?.pairs)).collect::<Result<Vec<_>>>()?
            };
            let mut w = create(&out)?;
            write_outputs(&mut w, &outputs)?;
            w.flush()?;
            Ok(true)
        }
        Command::Check {
            kind,
            n,
            queries,
            seed,
            out,
            counterexample,
        } => {
            let report = run_check(&kind.params(n, queries, seed)?)?;
            println!("{}", report.summary());
            if let Some(out) = out {
                let mut w = create(&out)?;
                write_outputs(&mut w, &report.outputs)?;
                w.flush()?;
            }
            if let Some(cx) = &report.counterexample {
                cx.instance.save(&counterexample)?;
                eprintln!(
                    "query {} fails on {} objects; expected {:?}, got {:?}; instance written to {}",
                    cx.query,
                    cx.instance.len(),
                    cx.expected.to_arrays(),
                    cx.got.to_arrays(),
                    counterexample.display()
                );
            }
            Ok(report.passed())
        }
        Command::Bench {
            kind,
            sizes,
            queries,
            seed,
            reps,
            out,
        } => {
            let base = kind.params(0, queries, seed)?;
            let mut rows = Vec::with_capacity(sizes.len());
            let mut stdout = io::stdout().lock();
            for n in sizes {
                let row = bench_one(&GenParams { n, ..base }, reps)?;
                writeln!(
                    stdout,
                    "n={} build={:.1}ms storage={} median={:.1}us mean_k={:.2} max_seeds={} match={}",
                    row.n, row.build_ms, row.storage, row.query_median_us, row.mean_k, row.max_seeds, row.oracle_match
                )?;
                rows.push(row);
            }
            write_csv(&rows, create(&out)?)?;
            Ok(rows.iter().all(|r| r.oracle_match))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
