//! Command-line front end. `run` is separate from `main` so tests can drive it
//! in-process.

pub mod graph_file;
pub mod output;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::flows::{count_group_flows, count_totally_cyclic, FiniteAbelianGroup};
use crate::matroid::tutte;
use crate::quasipoly::{fit_flow_quasipolynomial, FlowMode};
use crate::signed_graph::SignedGraph;
use crate::theorems::{run_check, Check, CheckParams};

use output::{
    Document, EvalDoc, ModflowDoc, PolyDoc, ReportDoc, TcoDoc, TutteDoc, VerifyDoc,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_IDENTITY: i32 = 3;

/// Environment variable overriding the enumeration budget.
pub const BUDGET_VAR: &str = "FLOWCOUNT_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "flowcount", version, about = "Count integral and group flows on signed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Graph file, or `-` for stdin.
    graph: PathBuf,
    /// Print JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct ModeFlag {
    /// Nowhere-zero flows (default).
    #[arg(long)]
    strict: bool,
    /// All flows, zeros allowed.
    #[arg(long)]
    weak: bool,
}

impl ModeFlag {
    fn mode(&self) -> FlowMode {
        if self.weak {
            FlowMode::Weak
        } else {
            FlowMode::Strict
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckArg {
    All,
    Reciprocity,
    Mobius,
    Tutte,
    Contraction,
    Tc,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit the flow quasipolynomial.
    Poly {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        mode: ModeFlag,
    },
    /// Count flows over a finite abelian group.
    Modflow {
        #[command(flatten)]
        input: Input,
        /// Cyclic factors, e.g. `4` or `2,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<u64>,
    },
    /// Tutte polynomial of the bias matroid.
    Tutte {
        #[command(flatten)]
        input: Input,
    },
    /// Count totally cyclic orientations.
    Tco {
        #[command(flatten)]
        input: Input,
    },
    /// Evaluate the flow quasipolynomial at an integer.
    Eval {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_negative_numbers = true)]
        at: i64,
        #[command(flatten)]
        mode: ModeFlag,
    },
    /// Check the identities on a graph.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "all")]
        check: CheckArg,
        #[arg(long, default_value_t = 2)]
        k_max: u32,
        /// Odd group orders for the modular check.
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        orders: Vec<u64>,
    },
}

fn mode_name(mode: FlowMode) -> &'static str {
    match mode {
        FlowMode::Strict => "strict",
        FlowMode::Weak => "weak",
    }
}

fn budget_from_env() -> Result<Budget> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Budget::new)
            .map_err(|_| Error::Internal(format!("{BUDGET_VAR} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(Budget::default()),
    }
}

fn load(input: &Input) -> std::result::Result<(String, SignedGraph), String> {
    let (name, text) = if input.graph.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading stdin: {e}"))?;
        ("<stdin>".to_string(), s)
    } else {
        let text = std::fs::read_to_string(&input.graph)
            .map_err(|e| format!("{}: {e}", input.graph.display()))?;
        (input.graph.display().to_string(), text)
    };
    let g = graph_file::parse_graph(&text).map_err(|e| format!("{name}: {e}"))?;
    Ok((name, g))
}

/// What a command produced: rendered text plus whether every identity held.
struct Outcome {
    text: String,
    identities_hold: bool,
}

fn done(doc: &impl Document, json: bool) -> Outcome {
    Outcome {
        text: doc.render(json),
        identities_hold: true,
    }
}

fn execute(cmd: &Command, name: String, g: &SignedGraph, budget: &Budget) -> Result<Outcome> {
    match cmd {
        Command::Poly { input, mode } => {
            let q = fit_flow_quasipolynomial(g, mode.mode(), budget)?;
            let doc = PolyDoc::new(name, mode_name(mode.mode()), g.cyclomatic(), g.is_balanced(), &q);
            Ok(done(&doc, input.json))
        }
        Command::Modflow { input, group } => {
            let grp = FiniteAbelianGroup::new(group.clone())?;
            let counts = count_group_flows(g, &grp, budget)?;
            let doc = ModflowDoc {
                graph: name,
                group: grp.to_string(),
                order: grp.order().to_string(),
                total: counts.total.to_string(),
                nowhere_zero: counts.nowhere_zero.to_string(),
            };
            Ok(done(&doc, input.json))
        }
        Command::Tutte { input } => Ok(done(&TutteDoc::new(name, &tutte(g, budget)?), input.json)),
        Command::Tco { input } => {
            let doc = TcoDoc {
                graph: name,
                totally_cyclic: count_totally_cyclic(g, budget)?.to_string(),
            };
            Ok(done(&doc, input.json))
        }
        Command::Eval { input, at, mode } => {
            let q = fit_flow_quasipolynomial(g, mode.mode(), budget)?;
            let doc = EvalDoc {
                graph: name,
                mode: mode_name(mode.mode()),
                at: at.to_string(),
                value: q.evaluate(*at).to_string(),
            };
            Ok(done(&doc, input.json))
        }
        Command::Verify {
            input,
            check,
            k_max,
            orders,
        } => {
            let params = CheckParams {
                k_max: *k_max,
                odd_orders: orders.clone(),
            };
            let mut skipped = Vec::new();
            let checks: Vec<Check> = match check {
                CheckArg::All => Check::ALL
                    .into_iter()
                    .filter(|c| {
                        let skip = *c == Check::Contraction && !g.is_all_positive();
                        if skip {
                            skipped.push(c.name().to_string());
                        }
                        !skip
                    })
                    .collect(),
                CheckArg::Reciprocity => vec![Check::Reciprocity],
                CheckArg::Mobius => vec![Check::Mobius],
                CheckArg::Tutte => vec![Check::ModularTutte],
                CheckArg::Contraction => vec![Check::Contraction],
                CheckArg::Tc => vec![Check::TotallyCyclic],
            };
            let reports: Vec<ReportDoc> = checks
                .into_iter()
                .map(|c| run_check(g, c, &params, budget).map(|r| ReportDoc::from(&r)))
                .collect::<Result<_>>()?;
            let pass = reports.iter().all(|r| r.pass);
            let doc = VerifyDoc {
                graph: name,
                pass,
                reports,
                skipped,
            };
            Ok(Outcome {
                text: doc.render(input.json),
                identities_hold: pass,
            })
        }
    }
}

fn input_of(cmd: &Command) -> &Input {
    match cmd {
        Command::Poly { input, .. }
        | Command::Modflow { input, .. }
        | Command::Tutte { input }
        | Command::Tco { input }
        | Command::Eval { input, .. }
        | Command::Verify { input, .. } => input,
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let budget = match budget_from_env() {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let (name, g) = match load(input_of(&cli.command)) {
        Ok(x) => x,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_INPUT;
        }
    };
    match execute(&cli.command, name, &g, &budget) {
        Ok(outcome) => {
            let _ = write!(out, "{}", outcome.text);
            if outcome.identities_hold {
                EXIT_OK
            } else {
                EXIT_IDENTITY
            }
        }
        Err(e @ Error::BudgetExceeded { .. }) => {
            let _ = writeln!(err, "error: {e} (raise {BUDGET_VAR} to allow it)");
            EXIT_BUDGET
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
