//! `nilcover`: classification, theta orbits, `c_O` and table reproduction.
//!
//! Output is JSON on stdout. Exit codes: 0 success, 1 invalid input (or
//! differences found by `tables --diff`), 2 internal check failure.

mod tables;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilcover::admissibility::classify_classical;
use nilcover::characters::c_coefficient;
use nilcover::cover::{CoverSpec, GroupForm};
use nilcover::data::tables as load_tables;
use nilcover::duality::sommers_pipeline;
use nilcover::exec::ExecMode;
use nilcover::theta::{check_theta_orbit, theta_orbit};
use nilcover::{Error, Partition};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "nilcover",
    version,
    about = "Nilpotent orbits and theta representations of covering groups"
)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quasi-admissibility and raisability of an orbit.
    Classify {
        #[command(flatten)]
        cover: CoverArgs,
        /// Partition such as `3,3,1`, or a Bala–Carter label such as `A2+~A1`.
        #[arg(long)]
        orbit: String,
    },
    /// Predicted wavefront orbit of the theta representation.
    Theta {
        #[command(flatten)]
        cover: CoverArgs,
        /// Also report whether the orbit is quasi-admissible and not raisable.
        #[arg(long)]
        check: bool,
        /// Include every step of the duality pipeline (classical groups).
        #[arg(long)]
        trace: bool,
    },
    /// The coefficient `c_O` for a cover of GL_r, with both sides of its identity.
    #[command(name = "c-coeff")]
    CCoeff {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: u32,
        /// Quadratic form `a,b` with `Q(y) = a·Σy_i² + b·Σ_{i<j} y_i y_j`.
        #[arg(long, value_parser = parse_form, allow_hyphen_values = true)]
        form: Option<(i64, i64)>,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Integral root subsystem of the exceptional character.
    Subsystem {
        #[command(flatten)]
        cover: CoverArgs,
        /// Use `Σ ω_α / n_α` instead of the saturated character.
        #[arg(long)]
        naive: bool,
    },
    /// Re-derive a curated table or a classical theta sweep.
    Tables(tables::TablesArgs),
}

#[derive(Args)]
struct CoverArgs {
    /// GL, SO_odd, SO_even, Sp, Spin_odd, Spin_even, G2, F4, E6, E7 or E8.
    #[arg(long)]
    group: String,
    /// Rank; fixed for the exceptional groups.
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long)]
    n: u32,
    /// `Inv_BD`, the value of Q on a short coroot.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "form")]
    inv_bd: Option<i64>,
    /// Quadratic form `a,b` for GL.
    #[arg(long, value_parser = parse_form, allow_hyphen_values = true)]
    form: Option<(i64, i64)>,
    /// Override the persistence rule for symplectic covers.
    #[arg(long)]
    persistent: Option<bool>,
}

#[derive(Args)]
struct ExecArgs {
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

impl ExecArgs {
    fn mode(&self) -> ExecMode {
        if self.sequential {
            ExecMode::Sequential
        } else {
            ExecMode::Parallel
        }
    }
}

fn parse_form(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected `a,b`")?;
    let num = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((num(a)?, num(b)?))
}

impl CoverArgs {
    fn spec(&self) -> Result<CoverSpec, Error> {
        let group: GroupForm = self.group.parse()?;
        let rank = match (self.rank, group.fixed_rank()) {
            (Some(r), _) | (None, Some(r)) => r,
            (None, None) => return Err(Error::Invalid(format!("--rank is required for {group}"))),
        };
        let mut spec = CoverSpec::new(group, rank, self.n)?;
        if let Some(k) = self.inv_bd {
            spec = spec.with_inv_bd(k)?;
        }
        if let Some((a, b)) = self.form {
            spec = spec.with_gl_form(a, b)?;
        }
        if let Some(p) = self.persistent {
            spec = spec.with_persistence(p);
        }
        Ok(spec)
    }
}

/// What a command produced: a JSON value and whether it found differences.
pub struct Report {
    value: serde_json::Value,
    differences: bool,
}

impl Report {
    pub fn of(value: impl Serialize) -> Result<Self, Error> {
        Self::with_differences(value, false)
    }

    pub fn with_differences(value: impl Serialize, differences: bool) -> Result<Self, Error> {
        let value = serde_json::to_value(value).map_err(|e| Error::Internal(e.to_string()))?;
        Ok(Self { value, differences })
    }
}

#[derive(Serialize)]
struct SubsystemOutput {
    spec: CoverSpec,
    nu: Vec<String>,
    denominators: Vec<u32>,
    subsystem: nilcover::SubsystemReport,
}

#[derive(Serialize)]
struct ThetaOutput<T: Serialize> {
    #[serde(flatten)]
    result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<nilcover::duality::PipelineTrace>,
}

fn run(command: Command) -> Result<Report, Error> {
    match command {
        Command::Classify { cover, orbit } => {
            let spec = cover.spec()?;
            let verdict = if spec.group.is_exceptional() {
                load_tables()?.classify_exceptional(&spec, &orbit)?
            } else {
                classify_classical(&orbit.parse::<Partition>()?, &spec)?
            };
            Report::of(verdict)
        }
        Command::Theta {
            cover,
            check,
            trace,
        } => {
            let spec = cover.spec()?;
            let trace = if trace && !spec.group.is_exceptional() {
                Some(sommers_pipeline(&spec)?)
            } else {
                None
            };
            if check {
                Report::of(ThetaOutput {
                    result: check_theta_orbit(&spec)?,
                    trace,
                })
            } else {
                Report::of(ThetaOutput {
                    result: theta_orbit(&spec)?,
                    trace,
                })
            }
        }
        Command::CCoeff { r, n, form, exec } => {
            let mut spec = CoverSpec::new(GroupForm::Gl, r, n)?;
            if let Some((a, b)) = form {
                spec = spec.with_gl_form(a, b)?;
            }
            Report::of(c_coefficient(&spec, exec.mode())?)
        }
        Command::Subsystem { cover, naive } => {
            let spec = cover.spec()?;
            let rs = spec.root_system()?;
            let character = spec.exceptional_character(&rs);
            let (nu, denominators) = if naive {
                let nu = spec.naive_character(&rs);
                let d = rs
                    .simples()
                    .into_iter()
                    .map(|i| spec.n_alpha(&rs, i))
                    .collect();
                (nu, d)
            } else {
                (character.nu, character.denominators)
            };
            Report::of(SubsystemOutput {
                subsystem: rs.integral_subsystem(&nu),
                nu: nu.iter().map(ToString::to_string).collect(),
                denominators,
                spec,
            })
        }
        Command::Tables(args) => tables::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(report) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&report.value)
            } else {
                serde_json::to_string(&report.value)
            };
            println!("{}", text.expect("JSON values serialize"));
            ExitCode::from(u8::from(report.differences))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Internal(_)) {
                2
            } else {
                1
            })
        }
    }
}
