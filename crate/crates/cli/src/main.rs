use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use fqlab_core::report::write_atomic;
use fqlab_core::{
    distance_count, isotropic_set, minimize_distance_search, product_set, run_sweep, verify_bound,
    Elem, Error, FieldSpec, PointSet, PointSetFile, Space, SweepConfig, TheoremId,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "fqlab", version)]
#[command(about = "Distance sets over finite fields: sweeps, bound checks, constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check over a grid of fields and dimensions
    VerifyAll {
        /// Field as p or p,k (repeatable)
        #[arg(long = "field", value_parser = parse_field)]
        fields: Vec<(u64, u32)>,
        /// Dimension (repeatable)
        #[arg(long = "dim")]
        dims: Vec<usize>,
        /// Random instances per (field, dimension)
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = fqlab_core::DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Report path
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0: one per core)
        #[arg(long, env = "FQLAB_JOBS", default_value_t = 0)]
        jobs: usize,
    },
    /// Check one lower bound on a pair of point-set files
    TheoremCheck {
        #[arg(long)]
        theorem: String,
        e: PathBuf,
        f: PathBuf,
    },
    /// Write a construction to a point-set file
    Example {
        kind: ExampleKind,
        #[arg(long, value_parser = parse_field)]
        field: (u64, u32),
        #[arg(long)]
        dim: usize,
        /// Factor set A for product sets, comma separated element indices
        #[arg(long, value_delimiter = ',')]
        factor: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hill-climb for a set with few distances
    Search {
        #[arg(long, value_parser = parse_field)]
        field: (u64, u32),
        #[arg(long)]
        dim: usize,
        /// Cardinality of the set
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Best set
        #[arg(long)]
        out: Option<PathBuf>,
        /// Trajectory CSV (stdout if omitted)
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleKind {
    Isotropic,
    Product,
}

fn parse_field(s: &str) -> Result<(u64, u32), String> {
    let mut parts = s.split(',');
    let p = parts
        .next()
        .unwrap_or_default()
        .trim()
        .parse::<u64>()
        .map_err(|e| format!("bad characteristic in {s:?}: {e}"))?;
    let k = match parts.next() {
        Some(k) => k.trim().parse::<u32>().map_err(|e| format!("bad degree in {s:?}: {e}"))?,
        None => 1,
    };
    if parts.next().is_some() {
        return Err(format!("expected p or p,k, got {s:?}"));
    }
    Ok((p, k))
}

fn space_for((p, k): (u64, u32), dim: usize) -> Result<Space, Error> {
    Space::new(Arc::new(FieldSpec::new(p, k, None)?), dim)
}

fn fail(code: u8, err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(code)
}

fn write_set(path: &Path, space: &Space, set: &PointSet) -> Result<(), Error> {
    set.to_file(space).write(path)
}

fn verify_all(config: SweepConfig, out: Option<PathBuf>) -> ExitCode {
    let report = match run_sweep(&config) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    if let Some(path) = out {
        if let Err(e) = report.write(&path) {
            return fail(EXIT_USAGE, e);
        }
    }
    let s = &report.summary;
    println!(
        "records={} pass={} fail={} unmet={}",
        s.total, s.pass, s.fail, s.unmet
    );
    for (check, n) in &s.failures_by_check {
        println!("failed {check}: {n}");
    }
    ExitCode::from(report.exit_code() as u8)
}

fn theorem_check(theorem: &str, e: &Path, f: &Path) -> ExitCode {
    let run = || -> Result<_, Error> {
        let theorem: TheoremId = theorem.parse()?;
        let (se, e) = PointSetFile::read(e)?.into_set()?;
        let (sf, f) = PointSetFile::read(f)?.into_set()?;
        if se != sf {
            return Err(Error::DimensionMismatch(
                "the two sets live in different spaces".into(),
            ));
        }
        verify_bound(&se, &e, &f, theorem)
    };
    match run() {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            if !report.hypotheses_met {
                ExitCode::from(EXIT_USAGE)
            } else if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn example(kind: ExampleKind, field: (u64, u32), dim: usize, factor: &[u32], out: Option<PathBuf>) -> ExitCode {
    let run = || -> Result<(), Error> {
        let space = space_for(field, dim)?;
        let set = match kind {
            ExampleKind::Isotropic => isotropic_set(&space)?,
            ExampleKind::Product => {
                let a: Vec<Elem> = factor.iter().map(|&x| Elem(x)).collect();
                product_set(&space, &a)?
            }
        };
        let delta = distance_count(&space, &set, &set)?;
        if let Some(path) = out {
            write_set(&path, &space, &set)?;
        }
        println!("card={} delta={}", set.card(), delta);
        Ok(())
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn search(
    field: (u64, u32),
    dim: usize,
    n: usize,
    iters: usize,
    seed: u64,
    out: Option<PathBuf>,
    trajectory: Option<PathBuf>,
) -> ExitCode {
    let run = || -> Result<(), Error> {
        let space = space_for(field, dim)?;
        let r = minimize_distance_search(&space, n, iters, seed)?;
        if let Some(path) = out {
            write_set(&path, &space, &r.set)?;
        }
        match trajectory {
            Some(path) => write_atomic(&path, r.trajectory_csv().as_bytes())?,
            None => print!("{}", r.trajectory_csv()),
        }
        eprintln!("card={} delta={} initial_delta={}", r.set.card(), r.delta, r.initial_delta);
        Ok(())
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_USAGE, e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::VerifyAll {
            fields,
            dims,
            instances,
            seed,
            tolerance,
            out,
            jobs,
        } => {
            let defaults = SweepConfig::default();
            let config = SweepConfig {
                fields: if fields.is_empty() { defaults.fields } else { fields },
                dims: if dims.is_empty() { defaults.dims } else { dims },
                instances,
                seed,
                tolerance,
                jobs,
            };
            verify_all(config, out)
        }
        Command::TheoremCheck { theorem, e, f } => theorem_check(&theorem, &e, &f),
        Command::Example {
            kind,
            field,
            dim,
            factor,
            out,
        } => example(kind, field, dim, &factor, out),
        Command::Search {
            field,
            dim,
            n,
            iters,
            seed,
            out,
            trajectory,
        } => search(field, dim, n, iters, seed, out, trajectory),
    }
}
