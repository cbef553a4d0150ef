use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fourier_minors::bounds::{self, BoundMethod, CACHE_DIR_ENV};
use fourier_minors::cyclo_factor::{self, FieldSetup, DEFAULT_SEED};
use fourier_minors::identities::{self, Identity};
use fourier_minors::minors::{self, Context, UNCERTAINTY_BUDGET};
use fourier_minors::real_cheb;
use fourier_minors::rings::primes::parse_prime;
use fourier_minors::schur::{self, IndexSet};
use fourier_minors::{Error, RunOptions, VERSION};

mod output;

use output::{emit, Format};

#[derive(Parser, Debug)]
#[command(name = "fourier-minors", version, about = "Exact checks of minors of prime-size Fourier matrices")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    /// Seed for randomized steps (field construction, random sweeps).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Allow the slow size range.
    #[arg(long, global = true)]
    extended: bool,
    /// Ignore every size and budget guard.
    #[arg(long, global = true)]
    force: bool,
    /// Directory for cached bound computations (default: $FOURIER_MINORS_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct PrimePair {
    #[arg(long, value_parser = prime)]
    p: u64,
    #[arg(long, value_parser = prime)]
    q: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    New,
    Zhang,
}

impl From<MethodArg> for BoundMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::New => BoundMethod::New,
            MethodArg::Zhang => BoundMethod::Zhang,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Irreducible factors of Φ_p over F_q.
    Factor(PrimePair),
    /// The field F_q[X]/P̄ with traces and cosets.
    Field {
        #[command(flatten)]
        pq: PrimePair,
        /// Factor of Φ_p to use as modulus, e.g. "X^3 + X + 1".
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Schur data of a row set A and column set B.
    Schur {
        #[arg(long, value_parser = prime)]
        p: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<usize>,
        /// Also report coset counts for this q.
        #[arg(long, value_parser = prime)]
        q: Option<u64>,
    },
    /// Sufficient bound on q for all minors to be nonzero.
    Bound {
        #[arg(long, value_parser = prime)]
        p: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::New)]
        method: MethodArg,
    },
    /// Least admissible prime q above a bound.
    FirstPrime {
        #[arg(long, value_parser = prime)]
        p: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::New)]
        method: MethodArg,
    },
    /// First admissible primes for p = 2, 3, 5, 7, 11, 13 up to --pmax.
    Table {
        #[arg(long, default_value_t = 7)]
        pmax: usize,
    },
    /// All minors of F_p over F_q.
    VerifyMinors {
        #[arg(long, value_parser = prime)]
        p: u64,
        #[arg(long, value_parser = prime, required_unless_present = "char0")]
        q: Option<u64>,
        /// Work in characteristic zero instead.
        #[arg(long, conflicts_with_all = ["q", "modulus"])]
        char0: bool,
        #[arg(long)]
        modulus: Option<String>,
    },
    /// All minors of F_p in characteristic zero.
    VerifyClassic {
        #[arg(long, value_parser = prime)]
        p: u64,
    },
    /// All minors of the real Vandermonde matrix on the nodes 2cos(2πj/p).
    RealMinors {
        #[arg(long, value_parser = prime)]
        p: u64,
    },
    /// All minors of the cosine matrix (2cos(2πkj/p)).
    RealDct {
        #[arg(long, value_parser = prime)]
        p: u64,
    },
    /// Minimal polynomial, Chebyshev identity and φ_j checks.
    RealIdentities {
        #[arg(long, value_parser = prime)]
        p: u64,
    },
    /// Orbit-sum identities over Z[X]/Φ_p, or over F_q[X]/P̄ when --q is given.
    Identities {
        #[arg(long, value_parser = prime)]
        p: u64,
        #[arg(long, value_parser = prime)]
        q: Option<u64>,
        /// Check every pair (A, B).
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Check this many random pairs.
        #[arg(long, default_value_t = 200)]
        random: usize,
    },
    /// Minimum of ‖g‖₀ + ‖F_p g‖₀ over nonzero g ∈ F_q^p (needs p | q − 1).
    Uncertainty {
        #[command(flatten)]
        pq: PrimePair,
        #[arg(long)]
        modulus: Option<String>,
        /// Largest number of vectors to scan.
        #[arg(long, default_value_t = UNCERTAINTY_BUDGET)]
        budget: u64,
    },
}

fn prime(s: &str) -> Result<u64, String> {
    parse_prime(s).map_err(|e| e.to_string())
}

/// Outcome of a command: the report and whether it found a violation.
struct Outcome {
    report: Value,
    violation: bool,
    /// Pre-rendered output for the csv/text formats.
    alt: Option<(String, String)>,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, violation: false, alt: None }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn setup(p: u64, q: u64, modulus: Option<&str>, seed: u64) -> Result<FieldSetup, Error> {
    match modulus {
        Some(m) => FieldSetup::with_modulus_str(p as usize, q, m),
        None => FieldSetup::build_seeded(p as usize, q, seed),
    }
}

fn run(cmd: &Command, g: &Global) -> Result<Outcome, Error> {
    let opts = RunOptions { threads: g.threads as usize, extended: g.extended, force: g.force };
    let cache = g.cache_dir.clone().or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from));
    Ok(match cmd {
        Command::Factor(pq) => {
            let factors = cyclo_factor::phi_factors_seeded(pq.p as usize, pq.q, g.seed)?;
            Outcome::ok(json!({
                "p": pq.p,
                "q": pq.q,
                "r": cyclo_factor::mult_order(pq.q, pq.p)?,
                "factors": factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::Field { pq, modulus } => {
            let s = setup(pq.p, pq.q, modulus.as_deref(), g.seed)?;
            let traces = cyclo_factor::trace_table(&s);
            let cosets = cyclo_factor::coset_table(s.p(), s.q())?;
            Outcome::ok(json!({
                "p": s.p(),
                "q": s.q(),
                "r": s.r(),
                "modulus": s.pbar().to_string(),
                "omega": "X",
                "traces": (1..s.p()).map(|i| (i.to_string(), Value::from(traces.get(i)))).collect::<serde_json::Map<_, _>>(),
                "cosets": cosets.cosets,
                "coset_reps": cosets.reps,
            }))
        }
        Command::Schur { p, a, b, q } => {
            let (a, b) = (IndexSet::new(*p as usize, a.clone())?, IndexSet::new(*p as usize, b.clone())?);
            let spec = schur::jacobi_trudi_spec(&a, &b)?;
            let mut report = json!({
                "p": p,
                "a": a,
                "b": b,
                "partition": schur::partition_of(&a),
                "ratio": schur::schur_eval_ones(&a).to_string(),
                "spec": spec.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "m": spec.m_count().to_string(),
            });
            if let Some(q) = q {
                let counts = spec.coset_counts(&cyclo_factor::coset_table(*p as usize, *q)?);
                report["q"] = json!(q);
                report["coset_counts"] =
                    counts.iter().map(|(n, m)| (n.to_string(), Value::from(m.to_string()))).collect();
            }
            Outcome::ok(report)
        }
        Command::Bound { p, method } => {
            let r = bounds::cached_bound(*p as usize, (*method).into(), &opts, cache.as_deref())?;
            let mut report = to_value(&r);
            report["work_estimate"] = json!(bounds::new_bound_work(*p as usize).to_string());
            Outcome::ok(report)
        }
        Command::FirstPrime { p, method } => {
            let r = bounds::cached_bound(*p as usize, (*method).into(), &opts, cache.as_deref())?;
            Outcome::ok(json!({
                "p": p,
                "method": r.method,
                "bound": r.value.to_string(),
                "q": bounds::first_admissible_prime(*p as usize, &r.value)?,
                "boundary_is_admissible": *p > 3 && bounds::boundary_is_admissible(*p as usize, &r.value),
            }))
        }
        Command::Table { pmax } => {
            if *pmax > 13 {
                return Err(Error::Parse(format!("--pmax {pmax} is above 13")));
            }
            let rows = bounds::reproduce_table(*pmax, &opts, cache.as_deref())?;
            Outcome { report: json!({ "rows": rows }), violation: false, alt: Some(output::table_alt(&rows)) }
        }
        Command::VerifyMinors { p, q, char0, modulus } => {
            let ctx = match q {
                Some(q) if !char0 => Context::Finite(setup(*p, *q, modulus.as_deref(), g.seed)?),
                _ => Context::char_zero(*p as usize)?,
            };
            minor_outcome(minors::verify_all_minors(&ctx, &opts)?)
        }
        Command::VerifyClassic { p } => {
            minor_outcome(minors::verify_all_minors(&Context::char_zero(*p as usize)?, &opts)?)
        }
        Command::RealMinors { p } => minor_outcome(real_cheb::verify_real_minors(*p as usize, &opts)?),
        Command::RealDct { p } => minor_outcome(real_cheb::verify_dct_minors(*p as usize, &opts)?),
        Command::RealIdentities { p } => {
            let r = real_cheb::real_identities(*p as usize)?;
            Outcome { violation: !r.all_hold(), report: to_value(&r), alt: None }
        }
        Command::Identities { p, q, exhaustive, random } => {
            let p = *p as usize;
            let pairs = if *exhaustive {
                identities::all_pairs(p)
            } else {
                identities::random_pairs(p, *random, g.seed)
            };
            let kinds: &[Identity] = if q.is_some() {
                &[Identity::FrobeniusSum]
            } else {
                &[Identity::ScalingSum, Identity::RatioNonvanishing]
            };
            let summaries = kinds
                .iter()
                .map(|&k| identities::sweep(k, p, *q, &pairs, &opts))
                .collect::<Result<Vec<_>, _>>()?;
            Outcome {
                violation: summaries.iter().any(|s| !s.passed()),
                report: json!({ "mode": if *exhaustive { "exhaustive" } else { "random" }, "summaries": summaries }),
                alt: None,
            }
        }
        Command::Uncertainty { pq, modulus, budget } => {
            let s = setup(pq.p, pq.q, modulus.as_deref(), g.seed)?;
            let r = minors::uncertainty_min(&s, *budget)?;
            let mut report = to_value(&r);
            report["matrix"] = json!(minors::prime_field_matrix(&s)?);
            Outcome { violation: r.min < r.p + 1, report, alt: None }
        }
    })
}

fn minor_outcome(r: minors::MinorReport) -> Outcome {
    Outcome { violation: !r.verified, report: to_value(&r), alt: None }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Factor(_) => "factor",
        Command::Field { .. } => "field",
        Command::Schur { .. } => "schur",
        Command::Bound { .. } => "bound",
        Command::FirstPrime { .. } => "first-prime",
        Command::Table { .. } => "table",
        Command::VerifyMinors { .. } => "verify-minors",
        Command::VerifyClassic { .. } => "verify-classic",
        Command::RealMinors { .. } => "real-minors",
        Command::RealDct { .. } => "real-dct",
        Command::RealIdentities { .. } => "real-identities",
        Command::Identities { .. } => "identities",
        Command::Uncertainty { .. } => "uncertainty",
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::LimitExceeded { .. } | Error::ExpansionCap { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command, &cli.global) {
        Ok(outcome) => {
            let envelope = json!({
                "command": command_name(&cli.command),
                "version": VERSION,
                "seed": cli.global.seed,
                "elapsed_s": start.elapsed().as_secs_f64(),
                "report": outcome.report,
            });
            if let Err(e) = emit(cli.global.format, &envelope, outcome.alt.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(outcome.violation))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
