//! The `rc-lab` command line: argument parsing, configuration and report
//! assembly. Every subcommand yields a [`Report`]; the exit code is 0 when
//! all of its checks pass, 1 when one fails and 2 on bad arguments.

pub mod config;
pub mod report;

mod compute;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rc_lab::exactcore::{parse_rat, Rat};

pub use config::RunConfig;
pub use report::{Check, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "rc-lab", version, about = "Exact Rankin-Cohen brackets and deformation products")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// A `key = value` file with prec, hbar_order, grid_bound, kappa_samples, seed.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// q-expansion of a product of E4, E6, Delta, Phi and constants.
    Form {
        spec: String,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// The Rankin-Cohen bracket [f, g]_n.
    Bracket {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// A formal deformation product f * g to a given order in hbar.
    Star(StarArgs),
    /// The discrete-series model.
    #[command(subcommand)]
    Rep(RepCommand),
    /// Solve the associativity identities for A_n.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum Kind {
    Cmz,
    Eholzer,
}

#[derive(Args, Debug)]
struct StarArgs {
    #[arg(long, value_enum, default_value = "eholzer")]
    kind: Kind,
    #[arg(long, value_parser = rat_arg)]
    kappa: Option<Rat>,
    /// Sums of products are allowed, e.g. `E4+E6`.
    #[arg(long)]
    f: String,
    #[arg(long)]
    g: String,
    #[arg(long)]
    order: Option<u32>,
    #[arg(long)]
    prec: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum RepCommand {
    /// Casimir eigenvalue on the basis vectors of lowest weight `weight`.
    Casimir {
        #[arg(long)]
        weight: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
    /// Dimensions of the triple-tensor slices and of the kernel of the lowering map.
    KernelDims {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long, default_value = "4,4,6", value_parser = weights_arg)]
        weights: (u32, u32, u32),
    },
}

#[derive(Subcommand, Debug)]
enum SolveCommand {
    /// Global solve for A_n on a grid of half weights.
    An {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 6)]
        grid: u32,
        #[arg(long, default_value = "-5/4", allow_hyphen_values = true, value_parser = rat_arg)]
        c: Rat,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// The Y-free combination equals the bracket.
    Combi {
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// The associativity identities for a coefficient table.
    Ident {
        #[arg(long, value_enum, default_value = "cmz")]
        kind: Kind,
        #[arg(long, value_parser = rat_arg)]
        kappa: Option<Rat>,
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long)]
        grid: Option<u32>,
    },
    /// Nullities of the A_n systems and the degree of A_n in c.
    CmzUnique {
        #[arg(long, default_value_t = 5)]
        n_max: u32,
        #[arg(long, default_value_t = 6)]
        grid: u32,
        #[arg(long, default_value = "-5/4", allow_hyphen_values = true, value_parser = rat_arg)]
        c: Rat,
    },
    /// Shift residuals and the 3x3 determinant.
    Fine {
        #[arg(long)]
        grid: Option<u32>,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Positivity of P3 and the diff against the printed appendix.
    P3,
    /// Randomised search for equal products with non-proportional factors.
    Uniqueness {
        #[arg(long, default_value_t = 1000)]
        seeds: usize,
        #[arg(long, default_value_t = 3)]
        order: u32,
        #[arg(long)]
        prec: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Every suite, one summary check per suite.
    All,
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn weights_arg(s: &str) -> Result<(u32, u32, u32), String> {
    let w: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match w[..] {
        [a, b, c] if a > 0 && b > 0 && c > 0 && a % 2 == 0 && b % 2 == 0 && c % 2 == 0 => Ok((a, b, c)),
        _ => Err("expected three positive even weights, e.g. 4,4,6".into()),
    }
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn usage(msg: impl Into<String>) -> Outcome {
    Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut config = match &cli.config {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => c,
            Err(e) => return usage(e),
        },
        None => RunConfig::default(),
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let report = match dispatch(cli.command, &mut config, echo) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let stdout = if cli.json { report.to_json() + "\n" } else { report.to_text() };
    Outcome { code: if report.ok { 0 } else { 1 }, stdout, stderr: String::new() }
}

fn dispatch(command: Command, cfg: &mut RunConfig, echo: Vec<String>) -> Result<Report, String> {
    fn set<T: Copy>(slot: &mut T, flag: Option<T>) {
        if let Some(v) = flag {
            *slot = v;
        }
    }
    let fixed = |cfg: &mut RunConfig| -> Result<RunConfig, String> {
        cfg.validate()?;
        Ok(cfg.clone())
    };
    match command {
        Command::Form { spec, prec } => {
            set(&mut cfg.prec, prec);
            let cfg = fixed(cfg)?;
            compute::form(echo, cfg, &spec)
        }
        Command::Bracket { f, g, n, prec } => {
            set(&mut cfg.prec, prec);
            let cfg = fixed(cfg)?;
            compute::bracket(echo, cfg, &f, &g, n)
        }
        Command::Star(a) => {
            set(&mut cfg.prec, a.prec);
            set(&mut cfg.hbar_order, a.order);
            let cfg = fixed(cfg)?;
            compute::star(echo, cfg, a.kind, a.kappa, &a.f, &a.g)
        }
        Command::Rep(RepCommand::Casimir { weight, n_max }) => {
            let cfg = fixed(cfg)?;
            compute::rep_casimir(echo, cfg, weight, n_max)
        }
        Command::Rep(RepCommand::KernelDims { n_max, weights }) => {
            let cfg = fixed(cfg)?;
            compute::rep_kernel_dims(echo, cfg, weights, n_max)
        }
        Command::Solve(SolveCommand::An { n, grid, c }) => {
            let cfg = fixed(cfg)?;
            compute::solve_an(echo, cfg, n, grid, &c)
        }
        Command::Verify(v) => {
            let mut report = match v {
                VerifyCommand::Combi { n_max, prec } => {
                    set(&mut cfg.prec, prec);
                    let cfg = fixed(cfg)?;
                    let checks = verify::combi(cfg.prec, n_max);
                    with_checks(echo, cfg, checks)
                }
                VerifyCommand::Ident { kind, kappa, n_max, grid } => {
                    set(&mut cfg.grid_bound, grid);
                    if let Some(k) = kappa {
                        cfg.kappa_samples = vec![k];
                    }
                    let cfg = fixed(cfg)?;
                    let checks = verify::ident(kind, &cfg.kappa_samples, n_max, cfg.grid_bound);
                    with_checks(echo, cfg, checks)
                }
                VerifyCommand::CmzUnique { n_max, grid, c } => {
                    let cfg = fixed(cfg)?;
                    with_checks(echo, cfg, verify::cmz_unique(n_max, grid, &c))
                }
                VerifyCommand::Fine { grid, n_max, prec } => {
                    set(&mut cfg.grid_bound, grid);
                    set(&mut cfg.prec, prec);
                    let cfg = fixed(cfg)?;
                    let checks = verify::fine(cfg.grid_bound, n_max, cfg.prec);
                    with_checks(echo, cfg, checks)
                }
                VerifyCommand::P3 => {
                    let cfg = fixed(cfg)?;
                    let (checks, text) = verify::p3();
                    let mut r = with_checks(echo, cfg, checks);
                    r.text = Some(text);
                    r
                }
                VerifyCommand::Uniqueness { seeds, order, prec, seed } => {
                    set(&mut cfg.prec, prec);
                    set(&mut cfg.seed, seed);
                    let cfg = fixed(cfg)?;
                    let checks = verify::uniqueness(cfg.seed, seeds, order, cfg.prec);
                    with_checks(echo, cfg, checks)
                }
                VerifyCommand::All => {
                    let cfg = fixed(cfg)?;
                    let checks = verify::all(&cfg);
                    with_checks(echo, cfg, checks)
                }
            };
            report.ok = report.checked.iter().all(Check::passed);
            Ok(report)
        }
    }
}

fn with_checks(echo: Vec<String>, cfg: RunConfig, checks: Vec<Check>) -> Report {
    let mut r = Report::new(echo, cfg);
    r.extend(checks);
    r
}
