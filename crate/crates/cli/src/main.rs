//! Command-line front end: apply path operators, dump Macdonald data and tau
//! components, run the verification suites.
//!
//! All output is JSON on stdout (canonical key order, so identical inputs
//! produce byte-identical output); `--pretty` renders the same data
//! indented. Exit codes: 0 on success or a passing verification, 1 on a
//! failing verification, 2 on usage errors.

use clap::{Args, Parser, Subcommand};
use qtpaths_core::json::{symfunc_from_json, symfunc_to_json, tensor_to_json, scalar_to_json};
use qtpaths_core::laurent::{expansion_coeff, explicit_rhs, ExpansionSide};
use qtpaths_core::macdonald::{mac_basis, WeightSpec};
use qtpaths_core::partition::Partition;
use qtpaths_core::paths::{q_apply, r_apply, Engine};
use qtpaths_core::paths::BetaSeq;
use qtpaths_core::qt::QtScalar;
use qtpaths_core::tau::tau_build;
use qtpaths_core::verify;
use qtpaths_core::SymFunc;
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qtpaths", version, about = "Exact (q,t) path operators on symmetric functions")]
struct Cli {
    /// Maximum source degree for operator computations.
    #[arg(long, global = true, env = "QTPATHS_WINDOW", default_value_t = 4)]
    window: u32,

    /// Truncation order in z for tau-function computations.
    #[arg(long, global = true, default_value_t = 3)]
    zmax: u32,

    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the path operator R_beta to a symmetric function.
    RApply(ApplyArgs),
    /// Apply the reparametrized operator Q_alpha to a symmetric function.
    QApply(QApplyArgs),
    /// Dump the Macdonald basis data at one degree.
    Mac {
        /// Degree n.
        #[arg(long)]
        n: u32,
    },
    /// Build the truncated tau function for the weight G_1/G_2.
    Tau {
        /// Comma-separated rational coefficients of G_1 (constant term first).
        #[arg(long)]
        g1: String,
        /// Comma-separated rational coefficients of G_2.
        #[arg(long)]
        g2: String,
    },
    /// Evaluate the closed product formula for R_betas . 1.
    ExplicitRhs {
        /// Semicolon-separated factors, each a comma-separated integer list,
        /// e.g. "1,-2;3".
        #[arg(long)]
        betas: String,
    },
    /// Extract one basis coefficient of R_betas . 1.
    Expansion {
        /// Factors as in explicit-rhs.
        #[arg(long)]
        beta: String,
        /// Partition, comma-separated.
        #[arg(long)]
        lambda: String,
        /// Coefficient family: schur, monomial, or elementary.
        #[arg(long)]
        side: String,
    },
    /// Run verification suites; "all" runs every suite.
    Verify {
        /// Suite name or "all".
        suite: String,
    },
}

#[derive(Args)]
struct ApplyArgs {
    /// Comma-separated integer index sequence.
    #[arg(long)]
    beta: String,
    /// Input symmetric function as JSON ("-" reads stdin; a bare integer is
    /// the corresponding constant).
    #[arg(long, default_value = "1")]
    input: String,
    /// Evaluation engine: paths, increments, or voa.
    #[arg(long, default_value = "increments")]
    engine: String,
}

#[derive(Args)]
struct QApplyArgs {
    /// Comma-separated nonnegative distances.
    #[arg(long)]
    alpha: String,
    #[arg(long, default_value = "1")]
    input: String,
    #[arg(long, default_value = "increments")]
    engine: String,
}

fn parse_int_list(s: &str) -> Result<Vec<i64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("bad integer {x:?}: {e}")))
        .collect()
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let parts = parse_int_list(s)?
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|_| format!("negative part {x}")))
        .collect::<Result<Vec<u32>, String>>()?;
    Partition::new(parts).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<QtScalar, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = num.trim().parse::<i64>().map_err(|e| format!("bad rational {s:?}: {e}"))?;
        let d = den.trim().parse::<i64>().map_err(|e| format!("bad rational {s:?}: {e}"))?;
        QtScalar::from_ratio(n, d).map_err(|e| e.to_string())
    } else {
        let n = s.parse::<i64>().map_err(|e| format!("bad integer {s:?}: {e}"))?;
        Ok(QtScalar::from_int(n))
    }
}

fn parse_weight(s: &str) -> Result<WeightSpec, String> {
    let coeffs = s.split(',').map(parse_rational).collect::<Result<Vec<_>, String>>()?;
    WeightSpec::new(coeffs).map_err(|e| e.to_string())
}

fn parse_betas(s: &str) -> Result<BetaSeq, String> {
    let groups = s
        .split(';')
        .map(parse_int_list)
        .collect::<Result<Vec<Vec<i64>>, String>>()?;
    Ok(BetaSeq::new(groups))
}

fn parse_input(s: &str) -> Result<SymFunc, String> {
    let text = if s == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| e.to_string())?;
        buf
    } else {
        s.to_string()
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("malformed JSON: {e}"))?;
    symfunc_from_json(&value).map_err(|e| e.to_string())
}

fn emit(value: &Value, pretty: bool) {
    if pretty {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        println!("{}", serde_json::to_string(value).expect("serializable"));
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::RApply(args) => {
            let beta = parse_int_list(&args.beta)?;
            let f = parse_input(&args.input)?;
            let engine = Engine::from_name(&args.engine).map_err(|e| e.to_string())?;
            let out = r_apply(&beta, &f, engine).map_err(|e| e.to_string())?;
            emit(&symfunc_to_json(&out), cli.pretty);
            Ok(ExitCode::SUCCESS)
        }
        Command::QApply(args) => {
            let alpha = parse_int_list(&args.alpha)?;
            let f = parse_input(&args.input)?;
            let engine = Engine::from_name(&args.engine).map_err(|e| e.to_string())?;
            let out = q_apply(&alpha, &f, engine).map_err(|e| e.to_string())?;
            emit(&symfunc_to_json(&out), cli.pretty);
            Ok(ExitCode::SUCCESS)
        }
        Command::Mac { n } => {
            let data = mac_basis(*n).map_err(|e| e.to_string())?;
            let entries: Vec<Value> = data
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "lambda": e.lambda.parts(),
                        "htilde": symfunc_to_json(&e.htilde_s),
                        "eigenvalue": scalar_to_json(&e.eigenvalue),
                        "b_stat": scalar_to_json(&e.b_stat),
                        "norm_star": scalar_to_json(&e.norm_star),
                    })
                })
                .collect();
            emit(&json!({ "n": n, "entries": entries }), cli.pretty);
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau { g1, g2 } => {
            let g1 = parse_weight(g1)?;
            let g2 = parse_weight(g2)?;
            let tau = tau_build(&g1, &g2, cli.zmax).map_err(|e| e.to_string())?;
            emit(&tensor_to_json(&tau), cli.pretty);
            Ok(ExitCode::SUCCESS)
        }
        Command::ExplicitRhs { betas } => {
            let seq = parse_betas(betas)?;
            let out = explicit_rhs(&seq).map_err(|e| e.to_string())?;
            emit(&symfunc_to_json(&out), cli.pretty);
            Ok(ExitCode::SUCCESS)
        }
        Command::Expansion { beta, lambda, side } => {
            let seq = parse_betas(beta)?;
            let lam = parse_partition(lambda)?;
            let side = ExpansionSide::from_name(side).map_err(|e| e.to_string())?;
            let out = expansion_coeff(&seq, &lam, side).map_err(|e| e.to_string())?;
            emit(&scalar_to_json(&out), cli.pretty);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let reports = if suite == "all" {
                verify::run_all(cli.window, cli.zmax).map_err(|e| e.to_string())?
            } else {
                vec![verify::run_suite(suite, cli.window, cli.zmax).map_err(|e| e.to_string())?]
            };
            emit(&verify::reports_to_json(&reports), cli.pretty);
            if reports.iter().all(|r| r.pass()) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
