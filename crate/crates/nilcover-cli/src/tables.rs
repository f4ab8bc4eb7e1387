//! `tables`: re-derive the curated tables and the classical theta sweep.

use clap::Args;
use nilcover::audit::{audit_orbit_table, audit_theta_table, OrbitRowAudit, ThetaCellAudit};
use nilcover::cover::{CoverSpec, GroupForm};
use nilcover::data::tables as load_tables;
use nilcover::duality::sommers_pipeline;
use nilcover::exec;
use nilcover::theta::closed_form;
use nilcover::{Error, Partition};
use serde::Serialize;

use crate::{ExecArgs, Report};

#[derive(Args)]
pub struct TablesArgs {
    /// `G2` … `E8` for the orbit tables, `theta-G2` … `theta-E8` for the theta
    /// tables, or `classical` for the closed-form sweep.
    #[arg(long)]
    which: String,
    /// Emit only the rows where derived and printed values differ; exit 1 if any.
    #[arg(long)]
    diff: bool,
    #[arg(long, default_value_t = 60)]
    n_max: u32,
    /// Largest rank of the classical sweep.
    #[arg(long, default_value_t = 12)]
    rank_max: usize,
    #[command(flatten)]
    exec: ExecArgs,
}

#[derive(Serialize)]
struct TableOutput<R: Serialize> {
    which: String,
    checked: usize,
    differences: usize,
    rows: Vec<R>,
}

fn output<R: Serialize>(
    args: &TablesArgs,
    rows: Vec<R>,
    differs: impl Fn(&R) -> bool,
) -> Result<Report, Error> {
    let checked = rows.len();
    let rows: Vec<R> = if args.diff {
        rows.into_iter().filter(|r| differs(r)).collect()
    } else {
        rows
    };
    let differences = if args.diff {
        rows.len()
    } else {
        rows.iter().filter(|r| differs(r)).count()
    };
    Report::with_differences(
        TableOutput {
            which: args.which.clone(),
            checked,
            differences,
            rows,
        },
        args.diff && differences > 0,
    )
}

#[derive(Serialize)]
struct ThetaRow {
    #[serde(flatten)]
    audit: ThetaCellAudit,
    orbit: String,
}

#[derive(Serialize)]
struct ClassicalRow {
    group: GroupForm,
    rank: usize,
    n: u32,
    persistent: bool,
    closed_form: Partition,
    pipeline: Partition,
    agrees: bool,
}

pub fn run(args: &TablesArgs) -> Result<Report, Error> {
    let which = args.which.trim();
    if which.eq_ignore_ascii_case("classical") {
        return classical(args);
    }
    let (theta, name) = match which.split_once('-') {
        Some((prefix, g)) if prefix.eq_ignore_ascii_case("theta") => (true, g),
        _ => (false, which),
    };
    let group: GroupForm = name.parse()?;
    if !group.is_exceptional() {
        return Err(Error::Invalid(format!("no curated table for {group}")));
    }
    let t = load_tables()?;
    if theta {
        let rows = audit_theta_table(t, group, args.n_max)?
            .into_iter()
            .map(|audit| {
                let orbit = t.lookup_theta(group, audit.n)?.orbit.clone();
                Ok(ThetaRow { audit, orbit })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        output(args, rows, |r| !r.audit.matches)
    } else {
        let rows = audit_orbit_table(t, group, args.n_max);
        output(args, rows, |r: &OrbitRowAudit| !r.ok())
    }
}

fn classical(args: &TablesArgs) -> Result<Report, Error> {
    let mut specs = Vec::new();
    for group in [
        GroupForm::Gl,
        GroupForm::SoOdd,
        GroupForm::Sp,
        GroupForm::SoEven,
    ] {
        for rank in 1..=args.rank_max {
            for n in 1..=args.n_max {
                if let Ok(spec) = CoverSpec::new(group, rank, n) {
                    specs.push(spec);
                }
            }
        }
    }
    let rows = exec::try_map(args.exec.mode(), &specs, |spec| {
        let closed = closed_form(spec)?
            .ok_or_else(|| Error::Internal(format!("no closed form for {spec}")))?;
        let pipeline = sommers_pipeline(spec)?.orbit;
        Ok::<_, Error>(ClassicalRow {
            group: spec.group,
            rank: spec.rank,
            n: spec.n,
            persistent: spec.is_persistent(),
            agrees: closed == pipeline,
            closed_form: closed,
            pipeline,
        })
    })?;
    // non-persistent symplectic covers are outside the closed forms' scope
    output(args, rows, |r| r.persistent && !r.agrees)
}
