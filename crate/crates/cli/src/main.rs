//! Command-line front end. Every subcommand reads a generator set as JSON,
//! runs one pipeline from the library, prints a JSON report to standard
//! output and a one-line summary to standard error.
//!
//! Exit codes: 0 success, 1 usage or parse problem, 2 a checked property is
//! false, 3 rejected input (sign, integrality), 4 resource cap reached.

// error values are large but travel only on cold paths
#![allow(clippy::result_large_err)]

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use equicone::caratheodory;
use equicone::chain::{self, GeneratorSet};
use equicone::dualchain;
use equicone::jsonio::{
    self, cone_json, decomposition_json, dual_chain_json, gordan_json, hilbert_json,
    min_terms_json, stability_json, vector_json,
};
use equicone::monoid;
use equicone::{
    Error, FsVector, LocalCone, DEFAULT_BUDGET, DEFAULT_NORM_BOUND, DEFAULT_ORBIT_CAP,
};

const EXIT_USAGE: u8 = 1;
const EXIT_FALSIFIED: u8 = 2;
const EXIT_REJECTED: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "equicone",
    version,
    about = "Exact computations with symmetric-group-invariant cones and monoids",
    after_help = "Input is JSON: {\"generators\": [[1, 2], [0, \"1/2\"]], \"target\": [1, 1]}.\n\
        Coordinates are integers or \"p/q\" strings; floats are rejected.\n\
        Reports go to standard output, a one-line summary to standard error.\n\
        EQUICONE_THREADS is accepted for forward compatibility; every pipeline\n\
        currently runs sequentially, so reports are byte-identical across runs."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dual-chain basis F_r plus per-dimension verification of the dual slices
    #[command(name = "dual-chain")]
    DualChain {
        #[command(flatten)]
        common: Common,
        /// Largest dimension to verify (default: widest generator + 3)
        #[arg(long = "nmax")]
        n_max: Option<usize>,
        /// Emit exact recombination witnesses for both inclusions
        #[arg(long)]
        emit_witnesses: bool,
    },
    /// Hilbert basis of the cone spanned by the listed generators
    Hilbert {
        #[command(flatten)]
        common: Common,
        /// Ambient dimension (default: widest generator)
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        budget: BudgetOpt,
    },
    /// Full pipeline: stability index, Hilbert basis chain, merge checks
    Gordan {
        #[command(flatten)]
        common: Common,
        /// Largest dimension in the chain (default: widest generator + 3)
        #[arg(long = "nmax")]
        n_max: Option<usize>,
        #[command(flatten)]
        budget: BudgetOpt,
    },
    /// Stability index of the slice chain, with recombination certificate
    #[command(name = "stab-index")]
    StabIndex {
        #[command(flatten)]
        common: Common,
    },
    /// Decompose the target over the generator orbit in at most |supp| terms
    Caratheodory {
        #[command(flatten)]
        common: Common,
        /// Target vector as JSON, e.g. [1, 1, 0]; overrides the input file
        #[arg(long)]
        target: Option<String>,
    },
    /// Minimum number of orbit terms expressing the target
    #[command(name = "min-terms")]
    MinTerms {
        #[command(flatten)]
        common: Common,
        /// Target vector as JSON; overrides the input file
        #[arg(long)]
        target: Option<String>,
        /// Ambient dimension of the search (default: fits target and generators)
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        budget: BudgetOpt,
    },
    /// Brute-force irreducible integer points inside a norm ball (oracle)
    #[command(name = "oracle-hb")]
    OracleHb {
        #[command(flatten)]
        common: Common,
        /// Ambient dimension (default: widest generator)
        #[arg(long)]
        dim: Option<usize>,
        /// 1-norm enumeration bound
        #[arg(long, default_value_t = DEFAULT_NORM_BOUND)]
        norm_bound: u64,
        #[command(flatten)]
        budget: BudgetOpt,
    },
    /// The dimension-n slice of the invariant cone spanned by the generators
    Localize {
        #[command(flatten)]
        common: Common,
        /// Slice dimension (default: widest generator + 3)
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Dual of the cone spanned by the listed generators
    Dualize {
        #[command(flatten)]
        common: Common,
        /// Ambient dimension (default: widest generator)
        #[arg(long)]
        dim: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    /// Input file; standard input when absent or "-"
    input: Option<PathBuf>,
    /// Cap on the total size of any single orbit enumeration
    #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
    orbit_cap: usize,
    /// Reserved; all pipelines are deterministic
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct BudgetOpt {
    /// Cap on search steps (lattice points visited, LPs solved)
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

struct Output {
    json: String,
    summary: String,
    code: u8,
}

fn render<T: Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value)
        .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))
}

fn read_input(common: &Common) -> Result<jsonio::ParsedInput, Error> {
    let text = match &common.input {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?,
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    jsonio::parse_input(&text)
}

fn target_vector(
    input: &jsonio::ParsedInput,
    flag: &Option<String>,
) -> Result<FsVector, Error> {
    if let Some(text) = flag {
        return jsonio::parse_vector(text);
    }
    input.target.clone().ok_or_else(|| {
        Error::Parse("this command needs a target vector: pass --target or add a \
             \"target\" key to the input file"
            .into())
    })
}

/// Cone spanned by the listed generators themselves (no orbit closure).
fn plain_cone(a: &GeneratorSet, dim: Option<usize>) -> Result<(LocalCone, usize), Error> {
    let least = a.max_width().max(1);
    let n = dim.unwrap_or(least);
    if n < least {
        return Err(Error::Dimension(format!(
            "generators need {least} coordinates but --dim is {n}"
        )));
    }
    Ok((LocalCone::from_generators(a.generators(), n)?, n))
}

fn default_window(a: &GeneratorSet) -> usize {
    a.max_width() + 3
}

#[derive(Serialize)]
struct OracleJson {
    dim: usize,
    bound: u64,
    elements: Vec<Vec<String>>,
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::DualChain { common, n_max, emit_witnesses } => {
            let input = read_input(&common)?;
            let a = input.generators;
            let n_max = n_max.unwrap_or_else(|| default_window(&a));
            let report =
                dualchain::verify_dual_chain(&a, n_max, common.orbit_cap, emit_witnesses)?;
            let capped = report.slices.iter().any(|s| s.resource_error.is_some());
            let summary = match report.verified {
                Some(true) => format!(
                    "r = {}; F_{} has {} generators; dual slices verified up to dimension {}",
                    report.basis.index,
                    report.basis.index,
                    report.basis.basis.len(),
                    n_max
                ),
                Some(false) => format!(
                    "r = {}; a dual slice disagrees with the padded basis orbit",
                    report.basis.index
                ),
                None if report.basis.degenerate => format!(
                    "r = {}; basis is degenerate (the non-decreasing dual subcone has a \
                     lineality direction or a stray short ray), slices not checked",
                    report.basis.index
                ),
                None => format!(
                    "r = {}; some dual slices hit the orbit cap and were not checked",
                    report.basis.index
                ),
            };
            let code = match report.verified {
                Some(true) => 0,
                Some(false) => EXIT_FALSIFIED,
                None if capped => EXIT_RESOURCE,
                None => 0,
            };
            Ok(Output { json: render(&dual_chain_json(&report))?, summary, code })
        }
        Command::Hilbert { common, dim, budget } => {
            let input = read_input(&common)?;
            let a = input.generators;
            a.require_integral("a Hilbert basis")?;
            let (cone, n) = plain_cone(&a, dim)?;
            let hb = monoid::hilbert_basis(&cone, budget.budget)?;
            let summary = format!(
                "Hilbert basis in dimension {n}: {} elements, largest 1-norm {}",
                hb.elements.len(),
                hb.max_norm
            );
            Ok(Output { json: render(&hilbert_json(&hb))?, summary, code: 0 })
        }
        Command::Gordan { common, n_max, budget } => {
            let input = read_input(&common)?;
            let a = input.generators;
            let n_max = n_max.unwrap_or_else(|| default_window(&a));
            let report = monoid::gordan_report(&a, n_max, common.orbit_cap, budget.budget)?;
            let settled = match report.r_hilbert {
                Some(m) => format!("basis chain settles at {m}"),
                None => "basis chain did not settle in the window".into(),
            };
            let summary = format!(
                "cone index {}; {}; window {}; norms {:?}; merges {}",
                report.r_cone,
                settled,
                report.window,
                report.norms,
                if report.merge_ok { "ok" } else { "FAILED" }
            );
            let code = if report.verdict && report.merge_ok { 0 } else { EXIT_FALSIFIED };
            Ok(Output { json: render(&gordan_json(&report))?, summary, code })
        }
        Command::StabIndex { common } => {
            let input = read_input(&common)?;
            let cert = chain::stability_index(&input.generators, common.orbit_cap)?;
            let summary = format!(
                "stability index r = {}; {} recombination witnesses, {} rejected candidates",
                cert.index,
                cert.witnesses.len(),
                cert.failures.len()
            );
            Ok(Output { json: render(&stability_json(&cert))?, summary, code: 0 })
        }
        Command::Caratheodory { common, target } => {
            let input = read_input(&common)?;
            let u = target_vector(&input, &target)?;
            let d = caratheodory::decompose(&input.generators, &u, common.orbit_cap)?;
            let summary = format!(
                "decomposed into {} orbit terms (support size {})",
                d.terms.len(),
                d.support_size
            );
            Ok(Output { json: render(&decomposition_json(&d))?, summary, code: 0 })
        }
        Command::MinTerms { common, target, dim, budget } => {
            let input = read_input(&common)?;
            let u = target_vector(&input, &target)?;
            let a = input.generators;
            let n = dim.unwrap_or_else(|| u.width().max(a.max_width()).max(1));
            let m = caratheodory::min_terms(&a, &u, n, common.orbit_cap, budget.budget)?;
            let summary = format!(
                "minimum terms = {} in dimension {} ({} feasibility problems solved)",
                m.minimum, m.ambient, m.lp_calls
            );
            Ok(Output { json: render(&min_terms_json(&m))?, summary, code: 0 })
        }
        Command::OracleHb { common, dim, norm_bound, budget } => {
            let input = read_input(&common)?;
            let a = input.generators;
            a.require_integral("the brute-force oracle")?;
            let (cone, n) = plain_cone(&a, dim)?;
            let elements = monoid::brute_force_hilbert(&cone, norm_bound, budget.budget)?;
            let summary = format!(
                "{} irreducible integer points with 1-norm at most {norm_bound}",
                elements.len()
            );
            let json = render(&OracleJson {
                dim: n,
                bound: norm_bound,
                elements: elements.iter().map(|e| vector_json(e, n)).collect(),
            })?;
            Ok(Output { json, summary, code: 0 })
        }
        Command::Localize { common, dim } => {
            let input = read_input(&common)?;
            let a = input.generators;
            let n = dim.unwrap_or_else(|| default_window(&a));
            let cone = chain::localize(&a, n, common.orbit_cap)?;
            let summary = format!(
                "slice at dimension {n}: {} extreme rays, {} facets",
                cone.rays().len(),
                cone.ineqs().len()
            );
            Ok(Output { json: render(&cone_json(&cone))?, summary, code: 0 })
        }
        Command::Dualize { common, dim } => {
            let input = read_input(&common)?;
            let (cone, n) = plain_cone(&input.generators, dim)?;
            let dual = cone.dualize();
            let summary = format!(
                "dual cone in dimension {n}: {} extreme rays, {} lineality directions",
                dual.rays().len(),
                dual.lineality().len()
            );
            Ok(Output { json: render(&cone_json(&dual))?, summary, code: 0 })
        }
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Dimension(_)
        | Error::BadPermutation { .. }
        | Error::Internal(_) => EXIT_USAGE,
        Error::NotMember { .. } => EXIT_FALSIFIED,
        Error::Rejected(_) => EXIT_REJECTED,
        Error::OrbitCap { .. } | Error::Budget { .. } => EXIT_RESOURCE,
    }
}

fn check_thread_env() -> Result<(), String> {
    match std::env::var("EQUICONE_THREADS") {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(()),
            _ => Err(format!(
                "EQUICONE_THREADS must be a positive integer, got {v:?}"
            )),
        },
        Err(_) => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version print to stdout and succeed; real usage
            // errors are remapped from clap's exit 2, which this tool reserves
            // for falsified properties
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = check_thread_env() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli.command) {
        Ok(out) => {
            println!("{}", out.json);
            eprintln!("{}", out.summary);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
