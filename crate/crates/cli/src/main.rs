//! Command-line front end: session files in, JSON reports out.
//!
//! JSON goes to stdout, a short human summary to stderr. Exit codes:
//! 0 all checks pass, 1 a check failed, 2 input error, 3 bound
//! exceeded.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lnd3_core::report::{run_command, Command, Outcome, RunOptions, Status};
use lnd3_core::{parse_session, SessionSpec};

#[derive(Parser)]
#[command(
    name = "lnd3",
    version,
    about = "Exact computations with locally nilpotent derivations on R[x,y,z]"
)]
struct Cli {
    /// Iteration bound for nilpotence certification and degree
    /// computations.
    #[arg(long, global = true, default_value_t = 64)]
    bound: usize,

    /// Substitute this integer for the parameter `d` before parsing.
    #[arg(long, global = true)]
    d: Option<i64>,

    /// Suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    json_only: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify nilpotence of the session derivation on the generators.
    Nilpotent { session: String },
    /// deg_D of an expression.
    Degd { session: String, expr: String },
    /// Homogeneity degree of the session derivation under its weights.
    Homogeneity { session: String },
    /// Does the expression lie in the kernel?
    Kernel { session: String, expr: String },
    /// Is the expression a local slice?
    Slice { session: String, expr: String },
    /// The Jacobian derivation of a pair of polynomials.
    Jacobian {
        session: String,
        f: String,
        g: String,
    },
    /// Linear-form strata by deg_D threshold.
    Filtration { session: String },
    /// Three forms with strictly increasing deg_D, when they exist.
    Triple { session: String },
    /// Rank upper bound with per-ring certificates.
    Rank { session: String },
    /// Triangularizability of the session derivation.
    Triangular { session: String },
    /// Slice normal form for degree pq - 2.
    Ntr {
        session: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Newton polygon of an expression in two chosen variables.
    Newton {
        session: String,
        expr: String,
        /// The two variables spanning the polygon plane.
        #[arg(long, num_args = 2)]
        vars: Vec<String>,
    },
    /// Replay a built-in worked construction.
    #[command(name = "verify-paper")]
    VerifyPaper {
        /// 1, 2, 3, tr or ntr.
        #[arg(long)]
        example: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Execute the query lines embedded in a session file.
    Run { session: String },
}

fn read_session(path: &str, d: Option<i64>) -> Result<SessionSpec, lnd3_core::Error> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| lnd3_core::Error::Invalid(format!("reading stdin: {}", e)))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| lnd3_core::Error::Invalid(format!("reading {}: {}", path, e)))?
    };
    parse_session(&text, d.map(|v| ("d", v)))
}

fn input_error(msg: String) -> Outcome {
    Outcome {
        json: serde_json::json!({
            "error": msg,
            "status": Status::InputError.label(),
            "version": env!("CARGO_PKG_VERSION"),
        }),
        status: Status::InputError,
    }
}

fn summarize(outcome: &Outcome) -> String {
    let j = &outcome.json;
    let cmd = j["command"].as_str().unwrap_or("?");
    if let Some(err) = j["error"].as_str() {
        return format!("{}: error: {}", cmd, err);
    }
    let detail = match cmd {
        "degd" => format!("deg_D = {}", j["result"]["result"]),
        "nilpotent" => format!(
            "certified = {}, orders = {}",
            j["result"]["certified"], j["result"]["orders"]
        ),
        "homogeneity" => format!("degree = {}", j["result"]["degree"]),
        "kernel" => format!("in kernel = {}", j["result"]["in_kernel"]),
        "slice" => format!("local slice = {}", j["result"]["local_slice"]),
        "filtration" => format!("jumps = {}", j["result"]["jumps"]),
        "triple" => format!("{}", j["result"]),
        "rank" => format!("rank <= {}", j["result"]["rank_upper_bound"]),
        "triangular" => format!("triangular = {}", j["result"]["triangular"]),
        "ntr" => format!(
            "h = {}, c = {}, swapped = {}",
            j["result"]["h"], j["result"]["c"], j["result"]["swapped"]
        ),
        "newton" => format!(
            "vertices = {}, divides = {}",
            j["result"]["vertices"], j["result"]["divides"]
        ),
        "verify-paper" => {
            let mut lines = Vec::new();
            if let Some(reports) = j["result"]["reports"].as_array() {
                for r in reports {
                    let inst = r["instance"].as_str().unwrap_or("?");
                    let checks = r["checks"].as_array().cloned().unwrap_or_default();
                    let passed = checks.iter().filter(|c| c["pass"] == true).count();
                    lines.push(format!(
                        "  {}: {}/{} checks pass",
                        inst,
                        passed,
                        checks.len()
                    ));
                }
            }
            format!("pass = {}\n{}", j["result"]["pass"], lines.join("\n"))
        }
        _ => String::new(),
    };
    format!(
        "{}: {} [{}]",
        cmd,
        detail,
        j["status"].as_str().unwrap_or("?")
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        bound: cli.bound,
        parameter: cli.d.map(|v| ("d".to_string(), v)),
    };

    let needs_session = |path: &String| read_session(path, cli.d);

    let (outcome, extra_summaries) = match &cli.command {
        Cmd::Run { session } => match needs_session(session) {
            Ok(s) => {
                let mut results = Vec::new();
                let mut summaries = Vec::new();
                let mut status = Status::Ok;
                for query in &s.queries {
                    let out = match lnd3_core::parse_command(&query.text) {
                        Ok(cmd) => run_command(Some(&s), &cmd, &opts),
                        Err(e) => input_error(format!("line {}: {}", query.line, e)),
                    };
                    status = Status::worst(status, out.status);
                    summaries.push(summarize(&out));
                    results.push(out.json);
                }
                (
                    Outcome {
                        json: serde_json::json!({
                            "command": "run",
                            "results": results,
                            "status": status.label(),
                            "version": env!("CARGO_PKG_VERSION"),
                        }),
                        status,
                    },
                    summaries,
                )
            }
            Err(e) => (input_error(e.to_string()), Vec::new()),
        },
        other => {
            let (cmd, session) = match other {
                Cmd::Nilpotent { session } => (Command::Nilpotent, Some(session)),
                Cmd::Degd { session, expr } => {
                    (Command::DegD { expr: expr.clone() }, Some(session))
                }
                Cmd::Homogeneity { session } => (Command::Homogeneity, Some(session)),
                Cmd::Kernel { session, expr } => {
                    (Command::Kernel { expr: expr.clone() }, Some(session))
                }
                Cmd::Slice { session, expr } => {
                    (Command::Slice { expr: expr.clone() }, Some(session))
                }
                Cmd::Jacobian { session, f, g } => (
                    Command::Jacobian {
                        f: f.clone(),
                        g: g.clone(),
                    },
                    Some(session),
                ),
                Cmd::Filtration { session } => (Command::Filtration, Some(session)),
                Cmd::Triple { session } => (Command::Triple, Some(session)),
                Cmd::Rank { session } => (Command::Rank, Some(session)),
                Cmd::Triangular { session } => (Command::Triangular, Some(session)),
                Cmd::Ntr { session, p, q } => (Command::Ntr { p: *p, q: *q }, Some(session)),
                Cmd::Newton {
                    session,
                    expr,
                    vars,
                } => (
                    Command::Newton {
                        expr: expr.clone(),
                        vars: (vars[0].clone(), vars[1].clone()),
                    },
                    Some(session),
                ),
                Cmd::VerifyPaper { example, p, q } => (
                    Command::VerifyPaper {
                        example: example.clone(),
                        d: cli.d,
                        p: *p,
                        q: *q,
                    },
                    None,
                ),
                Cmd::Run { .. } => unreachable!(),
            };
            let outcome = match session {
                Some(path) => match needs_session(path) {
                    Ok(s) => run_command(Some(&s), &cmd, &opts),
                    Err(e) => input_error(e.to_string()),
                },
                None => run_command(None, &cmd, &opts),
            };
            (outcome, Vec::new())
        }
    };

    println!("{}", serde_json::to_string_pretty(&outcome.json).unwrap());
    if !cli.json_only {
        for s in &extra_summaries {
            eprintln!("{}", s);
        }
        eprintln!("{}", summarize(&outcome));
    }
    ExitCode::from(outcome.status.exit_code() as u8)
}
