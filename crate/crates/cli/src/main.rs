//! `locdim`: decompose, construct, verify, and sweep from the command line.
//!
//! Exit codes: 0 success, 2 postcondition failure or invalid certificate,
//! 64 usage or parse error, 65 input outside the supported domain,
//! 66 exact-solver size limit.

use clap::{Args, Parser, Subcommand, ValueEnum};
use locdim_core::bounds::bounds_with_omega;
use locdim_core::clique::clique_number;
use locdim_core::construction::{
    construct_with, size_audit, ConstructError, ConstructOptions, SingletonPolicy,
};
use locdim_core::exact::{exact_with_limit, ExactError, DEFAULT_EXACT_LIMIT};
use locdim_core::generators::{
    default_p, gen_extremal, gen_gnp, gen_named, gen_random_with_omega, GenError, NamedFamily,
};
use locdim_core::io::{parse_any, to_graph6};
use locdim_core::packing::{greedy_packing, validate_decomposition, PackingError};
use locdim_core::sweep::{
    run_sweep, summarize, SweepConfig, SweepOutcome, CSV_COLUMNS, TIMING_COLUMNS,
};
use locdim_core::verify::{is_local_resolving, LocalCheck};
use locdim_core::{Graph, Vertex};
use serde_json::json;
use std::fmt::Display;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_POSTCONDITION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DOMAIN: u8 = 65;
const EXIT_SIZE_LIMIT: u8 = 66;

#[derive(Parser)]
#[command(
    name = "locdim",
    version,
    about = "Local metric dimension of graphs with clique number at most 4"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Base seed for random families and sweeps.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Largest graph order the exact solver accepts (at most 64).
    #[arg(long, global = true, env = "LOCDIM_EXACT_LIMIT", default_value_t = DEFAULT_EXACT_LIMIT)]
    limit: usize,
    /// Omit timing columns so that repeated runs are byte-identical.
    #[arg(long, global = true)]
    deterministic_output: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// graph6 or edge-list file; stdin when absent or `-`.
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a local resolving set of size at most floor(2n/3).
    Construct {
        #[command(flatten)]
        input: Input,
        /// Put every leftover singleton into the set.
        #[arg(long)]
        all_singletons: bool,
    },
    /// Minimum local resolving set by exhaustive search.
    Exact {
        #[command(flatten)]
        input: Input,
    },
    /// Check a candidate set.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertex list, e.g. `0,3,5`.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<Vertex>,
    },
    /// Closed-form lower and upper bounds.
    Bounds {
        #[command(flatten)]
        input: Input,
    },
    /// Greedy pattern decomposition as JSON.
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Emit graph6 lines.
    Gen(GenArgs),
    /// Seeded random corpus as CSV.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Extremal,
    Complete,
    Path,
    Cycle,
    CompleteMinusEdge,
    Gnp,
    Random,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    /// Triangle count for `extremal`.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability for `gnp` and `random`.
    #[arg(long)]
    p: Option<f64>,
    /// Target clique number for `random`.
    #[arg(long, default_value_t = 4)]
    omega: usize,
    /// Number of graphs; graph `k` uses seed `seed + k`.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 100_000)]
    max_tries: usize,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 5)]
    n_min: usize,
    #[arg(long, default_value_t = 9)]
    n_max: usize,
    /// Graphs per order.
    #[arg(long, default_value_t = 50)]
    count: usize,
    #[arg(long, default_value_t = 4)]
    omega: usize,
    /// Edge probability; chosen per order when absent.
    #[arg(long)]
    p: Option<f64>,
    /// Also run the exact solver.
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = 100_000)]
    max_tries: usize,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

impl From<ConstructError> for Failure {
    fn from(e: ConstructError) -> Self {
        let code = match e {
            ConstructError::Empty
            | ConstructError::Disconnected
            | ConstructError::CliqueTooLarge
            | ConstructError::PoolResidue(_) => EXIT_DOMAIN,
            _ => EXIT_POSTCONDITION,
        };
        fail(code, e)
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        let code = match e {
            ExactError::Disconnected => EXIT_DOMAIN,
            ExactError::SizeLimit { .. } | ExactError::LimitTooLarge(_) => EXIT_SIZE_LIMIT,
        };
        fail(code, e)
    }
}

impl From<PackingError> for Failure {
    fn from(e: PackingError) -> Self {
        fail(EXIT_DOMAIN, e)
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        let code = match e {
            GenError::Exhausted { .. } => EXIT_DOMAIN,
            _ => EXIT_USAGE,
        };
        fail(code, e)
    }
}

fn read_graph(input: &Input) -> Result<Graph, Failure> {
    let text = match &input.input {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
            .map_err(|e| fail(EXIT_USAGE, format!("{}: {e}", path.display())))?,
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| fail(EXIT_USAGE, format!("stdin: {e}")))?;
            s
        }
    };
    parse_any(&text).map_err(|e| fail(EXIT_USAGE, e))
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn braces(set: &[Vertex]) -> String {
    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Construct {
            input,
            all_singletons,
        } => {
            let g = read_graph(&input)?;
            let omega = clique_number(&g);
            let d = greedy_packing(&g)?;
            let options = ConstructOptions {
                singletons: if all_singletons {
                    SingletonPolicy::AddAll
                } else {
                    SingletonPolicy::AddIfNeeded
                },
            };
            let c = construct_with(&g, &d, options)?;
            let check = is_local_resolving(&g, &c.set);
            let audit = size_audit(&g, &c.trace);
            // the all-singletons mode is not bound-preserving, so only the
            // certificate is a hard postcondition there
            let ok = check.is_valid() && (audit.within_bound || all_singletons);
            if cli.json {
                print_json(&json!({
                    "n": g.n(),
                    "m": g.m(),
                    "omega": omega,
                    "set": c.set,
                    "size": c.set.len(),
                    "bound": audit.bound,
                    "valid": check.is_valid(),
                    "trace": c.trace,
                    "size_audit": audit,
                }));
            } else {
                println!("n = {}, m = {}, omega = {omega}", g.n(), g.m());
                println!("S = {}", braces(&c.set));
                println!("|S| = {}, floor(2n/3) = {}", c.set.len(), audit.bound);
                let cases: Vec<String> = c
                    .trace
                    .case_histogram()
                    .iter()
                    .map(|(t, k)| format!("{t} x{k}"))
                    .collect();
                println!("cases: {}", cases.join(", "));
                if c.trace.fallbacks() > 0 {
                    println!("fallback steps: {}", c.trace.fallbacks());
                }
                match &check {
                    LocalCheck::Certificate(cert) => {
                        println!(
                            "certificate: valid ({} witnessed edges)",
                            cert.witnesses.len()
                        )
                    }
                    LocalCheck::Failure { edge } => {
                        println!("certificate: INVALID at edge {edge:?}")
                    }
                }
            }
            if !ok {
                eprintln!("error: postcondition failed");
                return Ok(EXIT_POSTCONDITION);
            }
            Ok(0)
        }
        Command::Exact { input } => {
            let g = read_graph(&input)?;
            let r = exact_with_limit(&g, cli.limit)?;
            if cli.json {
                print_json(&r);
            } else {
                println!("{}", r.dimension);
                println!("witness = {}", braces(&r.witness));
            }
            Ok(0)
        }
        Command::Verify { input, set } => {
            let g = read_graph(&input)?;
            if let Some(&v) = set.iter().find(|&&v| v >= g.n()) {
                return Err(fail(
                    EXIT_USAGE,
                    format!("vertex {v} out of range for n = {}", g.n()),
                ));
            }
            let check = is_local_resolving(&g, &set);
            if cli.json {
                print_json(&check);
            } else {
                match &check {
                    LocalCheck::Certificate(cert) => {
                        println!(
                            "certificate valid: {} edges witnessed",
                            cert.witnesses.len()
                        );
                        for w in &cert.witnesses {
                            println!("  {}-{} by {}", w.edge.0, w.edge.1, w.by);
                        }
                    }
                    LocalCheck::Failure { edge } => {
                        println!(
                            "not a local resolving set: edge {}-{} is not distinguished",
                            edge.0, edge.1
                        )
                    }
                }
            }
            Ok(if check.is_valid() {
                0
            } else {
                EXIT_POSTCONDITION
            })
        }
        Command::Bounds { input } => {
            let g = read_graph(&input)?;
            let b = bounds_with_omega(&g, clique_number(&g));
            if cli.json {
                print_json(&b);
            } else {
                let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
                println!("{:<22}{}", "n", b.n);
                println!("{:<22}{}", "m", b.m);
                println!("{:<22}{}", "omega", b.omega);
                println!("{:<22}{}", "ceil(log2 omega)", b.lower_log);
                println!("{:<22}{}", "n - 2^(n - omega)", b.lower_gap);
                println!("{:<22}{}", "lower bound", b.lower);
                println!("{:<22}{}", "upper bound (omega)", opt(b.upper_by_omega));
                println!("{:<22}{}", "bipartite", b.bipartite);
                println!("{:<22}{}", "complete", b.complete);
                println!("{:<22}{}", "omega = n - 1", b.omega_is_n_minus_1);
                println!("{:<22}{}", "implied value", opt(b.implied));
            }
            Ok(0)
        }
        Command::Decompose { input } => {
            let g = read_graph(&input)?;
            let d = greedy_packing(&g)?;
            let audit = validate_decomposition(&g, &d);
            if cli.json {
                print_json(&json!({ "decomposition": d.to_json_layers(), "audit": audit }));
            } else {
                println!(
                    "{}",
                    serde_json::to_string(&d.to_json_layers()).expect("serializable")
                );
                for f in audit.failures() {
                    eprintln!("audit: {} failed: {:?}", f.name, f.witnesses);
                }
            }
            Ok(if audit.passed() {
                0
            } else {
                EXIT_POSTCONDITION
            })
        }
        Command::Gen(args) => {
            for line in generate(&args, cli.seed)? {
                println!("{line}");
            }
            Ok(0)
        }
        Command::Sweep(ref args) => sweep(args, &cli),
    }
}

fn generate(args: &GenArgs, seed: u64) -> Result<Vec<String>, Failure> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| fail(EXIT_USAGE, format!("--{flag} is required")))
    };
    let mut out = Vec::with_capacity(args.count);
    for k in 0..args.count {
        let s = seed.wrapping_add(k as u64);
        let g = match args.family {
            Family::Extremal => gen_extremal(need(args.t, "t")?)?,
            Family::Complete => gen_named(NamedFamily::Complete, need(args.n, "n")?)?,
            Family::Path => gen_named(NamedFamily::Path, need(args.n, "n")?)?,
            Family::Cycle => gen_named(NamedFamily::Cycle, need(args.n, "n")?)?,
            Family::CompleteMinusEdge => {
                gen_named(NamedFamily::CompleteMinusEdge, need(args.n, "n")?)?
            }
            Family::Gnp => {
                let n = need(args.n, "n")?;
                let p = args.p.ok_or_else(|| fail(EXIT_USAGE, "--p is required"))?;
                if !(p > 0.0 && p < 1.0) {
                    return Err(GenError::InvalidProbability(p).into());
                }
                gen_gnp(n, p, s)
            }
            Family::Random => {
                let n = need(args.n, "n")?;
                let p = args.p.unwrap_or_else(|| default_p(n, args.omega));
                gen_random_with_omega(n, p, args.omega, s, args.max_tries)?
            }
        };
        out.push(to_graph6(&g));
    }
    Ok(out)
}

fn sweep(args: &SweepArgs, cli: &Cli) -> Result<u8, Failure> {
    if args.n_min > args.n_max {
        return Err(fail(EXIT_USAGE, "--n-min exceeds --n-max"));
    }
    if !(2..=4).contains(&args.omega) {
        return Err(GenError::InvalidOmega(args.omega).into());
    }
    if args.exact && args.n_max > cli.limit {
        return Err(ExactError::SizeLimit {
            n: args.n_max,
            limit: cli.limit,
        }
        .into());
    }
    let cfg = SweepConfig {
        n_min: args.n_min,
        n_max: args.n_max,
        count: args.count,
        omega: args.omega,
        seed: cli.seed,
        p: args.p,
        exact_limit: args.exact.then_some(cli.limit),
        max_tries: args.max_tries,
    };
    let outcomes = run_sweep(&cfg);
    let summary = summarize(&outcomes);
    let timing = !cli.deterministic_output;
    if cli.json {
        let rows: Vec<_> = outcomes
            .iter()
            .map(|o| match o {
                SweepOutcome::Row(r) => json!({ "row": r, "violation": r.is_violation() }),
                SweepOutcome::Skipped { n, seed, reason } => {
                    json!({ "skipped": { "n": n, "seed": seed, "reason": reason } })
                }
            })
            .collect();
        print_json(&json!({ "rows": rows, "summary": summary }));
    } else {
        let mut header: Vec<&str> = CSV_COLUMNS.to_vec();
        if timing {
            header.extend(TIMING_COLUMNS);
        }
        println!("{}", header.join(","));
        for o in &outcomes {
            match o {
                SweepOutcome::Row(r) => println!("{}", r.csv(timing)),
                SweepOutcome::Skipped { n, seed, reason } => {
                    println!("# skipped n={n} seed={seed}: {reason}")
                }
            }
        }
        let exact_ratio = summary
            .max_exact_ratio
            .map_or_else(|| "-".to_string(), |r| format!("{r:.4}"));
        println!(
            "# summary graphs={} skipped={} max_construct_ratio={:.4} max_exact_ratio={exact_ratio} invalid={} violations={}",
            summary.graphs, summary.skipped, summary.max_construct_ratio, summary.invalid, summary.violations
        );
    }
    Ok(if summary.violations == 0 {
        0
    } else {
        EXIT_POSTCONDITION
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
