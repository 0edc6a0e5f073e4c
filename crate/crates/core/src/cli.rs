//! The `majpop` command line.
//!
//! Exit codes: 0 success, 1 infeasible instance, 2 invalid input, 3 internal
//! invariant violation (including a failed certification). Results go to
//! stdout as JSON (CSV for `bench --format csv`); diagnostics go to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::completion::{construct_matrix, feasible_min_remaining, geth_vector, LineSums};
use crate::error::{Error, Result};
use crate::instance::{Instance, Variant};
use crate::lattice::{covers, join, join_recursive, meet, LatticePair};
use crate::majcore::{conjugate, default_conjugate_dim, Partition};
use crate::oracle::{certify, Budget};
use crate::solvers::{enumerate_optima, peak_shave, solve, TiePolicy};

#[derive(Debug, Parser)]
#[command(name = "majpop", version, about = "Majorization-optimal (0,1)-matrix completion")]
struct Cli {
    /// Output format; csv is only available for bench.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for the random tie policy and for bench instance generation.
    #[arg(long, global = true, env = "MAJPOP_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Random,
    LowestIndex,
    HighestIndex,
    LoadOrder,
    LoadOrderReversed,
}

impl PolicyArg {
    fn with_seed(self, seed: u64) -> TiePolicy {
        match self {
            PolicyArg::Random => TiePolicy::UniformRandom(seed),
            PolicyArg::LowestIndex => TiePolicy::LowestIndex,
            PolicyArg::HighestIndex => TiePolicy::HighestIndex,
            PolicyArg::LoadOrder => TiePolicy::LoadOrder,
            PolicyArg::LoadOrderReversed => TiePolicy::LoadOrderReversed,
        }
    }
}

#[derive(Debug, Args)]
struct InstanceArg {
    /// Path to a JSON instance file.
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance and print the matrix and objective.
    Solve {
        #[command(flatten)]
        file: InstanceArg,
        #[arg(long, value_enum, default_value_t = PolicyArg::LowestIndex)]
        tie_policy: PolicyArg,
    },
    /// List every objective vector reachable through tie choices.
    Enumerate {
        #[command(flatten)]
        file: InstanceArg,
        /// Upper bound on explored search states.
        #[arg(long, default_value_t = 1_000_000)]
        max_branches: u64,
    },
    /// Test whether an instance admits a feasible matrix.
    Feasible {
        #[command(flatten)]
        file: InstanceArg,
    },
    /// Partition conjugate of a comma-separated vector.
    Conjugate {
        #[arg(long, value_delimiter = ',', required = true)]
        vector: Vec<u64>,
        /// Output length; defaults to max(len, max entry).
        #[arg(long)]
        dim: Option<u64>,
    },
    /// A sorted vector below the ceiling and majorized by the target.
    Geth {
        #[arg(long, value_delimiter = ',', required = true)]
        ceiling: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        target: Vec<u64>,
    },
    /// Build a matrix with prescribed row and column sums.
    Construct {
        #[arg(long, value_delimiter = ',', required = true)]
        rows: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<u64>,
    },
    /// Dominance-lattice operations on comma-separated partitions.
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// Exhaustive checks on small instances.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
    /// Time peak shaving on random instances.
    Bench {
        /// Row counts, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// Column counts, comma-separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[arg(long, value_enum, default_value_t = PolicyArg::LowestIndex)]
        tie_policy: PolicyArg,
    },
}

#[derive(Debug, Subcommand)]
enum LatticeOp {
    Meet {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<u64>,
    },
    Join {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<u64>,
    },
    /// Whether y covers x.
    Covers {
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum OracleOp {
    /// Certify the structural claims on one instance.
    Certify {
        #[command(flatten)]
        file: InstanceArg,
        #[arg(long, default_value_t = Budget::default().max_n)]
        max_n: usize,
        #[arg(long, default_value_t = Budget::default().max_total)]
        max_total: u128,
    },
}

/// One timed solve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub m: usize,
    pub n: usize,
    pub policy: String,
    pub seed: u64,
    pub wall_time_ns: u128,
    pub feasible: bool,
}

/// A random peak-shaving instance: `r[i]` uniform in `[1, n]` and `c[j]`
/// uniform in `[m/2, m]`, drawn in that order from `rng`.
pub fn random_instance(m: usize, n: usize, rng: &mut impl Rng) -> (Vec<u64>, Vec<u64>) {
    let r = (0..m).map(|_| rng.random_range(1..=n as u64)).collect();
    let c = (0..n).map(|_| rng.random_range(m as u64 / 2..=m as u64)).collect();
    (c, r)
}

/// Times peak shaving for every `(m, n, repeat)` in loop order.
///
/// All instances come from one ChaCha8 stream seeded with `seed`; only the
/// solver call is timed.
pub fn bench(ms: &[usize], ns: &[usize], repeats: usize, seed: u64, policy: TiePolicy) -> Result<Vec<BenchRecord>> {
    if ms.is_empty() || ns.is_empty() || repeats == 0 {
        return Err(Error::InvalidInput(
            "bench needs nonempty m and n ranges and repeats >= 1".into(),
        ));
    }
    if let Some(bad) = ns.iter().chain(ms).find(|&&v| v == 0) {
        return Err(Error::InvalidInput(format!("bench sizes must be positive, got {bad}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(ms.len() * ns.len() * repeats);
    for &m in ms {
        for &n in ns {
            for _ in 0..repeats {
                let (c, r) = random_instance(m, n, &mut rng);
                let start = Instant::now();
                let res = peak_shave(&c, &r, policy)?;
                let wall_time_ns = start.elapsed().as_nanos();
                out.push(BenchRecord {
                    m,
                    n,
                    policy: policy.name().to_string(),
                    seed,
                    wall_time_ns,
                    feasible: res.feasible,
                });
            }
        }
    }
    Ok(out)
}

/// Parses `args` (including the program name) and runs the command.
///
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string(value).map_err(|e| Error::Invariant(format!("serializing output: {e}")))?;
    writeln!(out, "{text}").map_err(|e| Error::InvalidInput(format!("writing output: {e}")))
}

fn load(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    Instance::from_json(&text)
}

fn partition(v: &[u64], name: &str) -> Result<Partition> {
    Partition::new(v.to_vec()).map_err(|e| Error::InvalidInput(format!("--{name}: {e}")))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let is_bench = matches!(cli.command, Command::Bench { .. });
    if cli.format == Format::Csv && !is_bench {
        return Err(Error::InvalidInput("--format csv is only available for bench".into()));
    }
    match &cli.command {
        Command::Solve { file, tie_policy } => {
            let inst = load(&file.instance)?;
            let res = solve(&inst, tie_policy.with_seed(cli.seed))?;
            emit(out, &res)?;
            Ok(if res.feasible { 0 } else { 1 })
        }
        Command::Enumerate { file, max_branches } => {
            let inst = load(&file.instance)?;
            let optima = enumerate_optima(&inst, *max_branches)?;
            emit(out, &json!({ "count": optima.len(), "optima": optima }))?;
            Ok(0)
        }
        Command::Feasible { file } => {
            let inst = load(&file.instance)?;
            let feasible = instance_feasible(&inst)?;
            emit(out, &json!({ "variant": inst.variant, "feasible": feasible }))?;
            Ok(if feasible { 0 } else { 1 })
        }
        Command::Conjugate { vector, dim } => {
            let dim = match dim {
                Some(d) => usize::try_from(*d).map_err(|_| Error::InvalidInput("--dim is too large".into()))?,
                None => default_conjugate_dim(vector),
            };
            emit(out, &conjugate(vector, dim)?)?;
            Ok(0)
        }
        Command::Geth { ceiling, target } => {
            emit(out, &geth_vector(ceiling, &partition(target, "target")?)?)?;
            Ok(0)
        }
        Command::Construct { rows, cols } => {
            emit(out, &construct_matrix(&LineSums::new(rows.clone(), cols.clone()))?)?;
            Ok(0)
        }
        Command::Lattice { op } => {
            match op {
                LatticeOp::Meet { x, y } => {
                    let pair = LatticePair::new(partition(x, "x")?, partition(y, "y")?)?;
                    emit(out, &meet(&pair))?;
                }
                LatticeOp::Join { x, y } => {
                    let pair = LatticePair::new(partition(x, "x")?, partition(y, "y")?)?;
                    let (a, b) = (join(&pair), join_recursive(&pair));
                    if a != b {
                        return Err(Error::Invariant(format!("join methods disagree: {a} vs {b}")));
                    }
                    emit(out, &a)?;
                }
                LatticeOp::Covers { y, x } => {
                    emit(out, &covers(&partition(y, "y")?, &partition(x, "x")?)?)?;
                }
            }
            Ok(0)
        }
        Command::Oracle {
            op: OracleOp::Certify { file, max_n, max_total },
        } => {
            let inst = load(&file.instance)?;
            let report = certify(
                &inst,
                Budget {
                    max_n: *max_n,
                    max_total: *max_total,
                },
            )?;
            emit(out, &report)?;
            Ok(if report.passed() { 0 } else { 3 })
        }
        Command::Bench {
            m,
            n,
            repeats,
            tie_policy,
        } => {
            let records = bench(m, n, *repeats, cli.seed, tie_policy.with_seed(cli.seed))?;
            match cli.format {
                Format::Json => emit(out, &records)?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    for rec in &records {
                        w.serialize(rec)
                            .map_err(|e| Error::InvalidInput(format!("writing csv: {e}")))?;
                    }
                    w.flush()
                        .map_err(|e| Error::InvalidInput(format!("writing csv: {e}")))?;
                }
            }
            Ok(0)
        }
    }
}

/// Whether any matrix satisfies the instance's constraints.
pub fn instance_feasible(inst: &Instance) -> Result<bool> {
    inst.validate()?;
    let n = inst.n();
    Ok(match inst.variant {
        Variant::MinCombined => inst.r.iter().all(|&v| v as usize <= n),
        _ => feasible_min_remaining(inst.field("ceiling")?, &inst.r),
    })
}
