//! Re-derivation of the curated tables from first principles.
//!
//! Each row of the exceptional orbit table is re-evaluated with the splitting
//! criterion over a range of degrees, and each row of the theta table is
//! compared with the integral subsystem of the exceptional character.

use serde::Serialize;

use crate::admissibility::Raisability;
use crate::cover::{CoverSpec, GroupForm};
use crate::data::{Condition, OrbitRecord, Tables, ThetaRecord};
use crate::error::Result;
use crate::roots::SubsystemLabel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRowAudit {
    pub group: GroupForm,
    pub orbit: String,
    pub qa_printed: Condition,
    pub qa_derived: Vec<u32>,
    pub qa_matches: bool,
    pub raisable_printed: Condition,
    /// `None` when the row has no raising data.
    pub raisable_derived: Option<Vec<u32>>,
    pub raisable_matches: bool,
    /// Whether every recorded variant gives the same verdicts.
    pub variants_agree: bool,
}

impl OrbitRowAudit {
    pub fn ok(&self) -> bool {
        self.qa_matches && self.raisable_matches && self.variants_agree
    }
}

fn printed_set(cond: &Condition, n_max: u32) -> Option<Vec<u32>> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        if cond.holds(n)? {
            out.push(n);
        }
    }
    Some(out)
}

pub fn audit_orbit_row(row: &OrbitRecord, n_max: u32) -> OrbitRowAudit {
    let verdicts: Vec<_> = (1..=n_max).map(|n| (n, row.verdict(n))).collect();
    let qa_derived: Vec<u32> = verdicts
        .iter()
        .filter(|(_, v)| v.quasi_admissible)
        .map(|(n, _)| *n)
        .collect();
    let qa_matches = printed_set(&row.qa_printed, n_max).as_ref() == Some(&qa_derived);

    let raisable_derived = row.tau.map(|_| {
        verdicts
            .iter()
            .filter(|(_, v)| v.raisable == Raisability::Raisable)
            .map(|(n, _)| *n)
            .collect::<Vec<_>>()
    });
    let raisable_matches = match (&raisable_derived, printed_set(&row.raisable_printed, n_max)) {
        (Some(d), Some(p)) => *d == p,
        (None, None) => true,
        _ => false,
    };

    let variants_agree = (1..=n_max).all(|n| {
        let base = row.verdict(n);
        row.variant_verdicts(n)
            .iter()
            .all(|v| v.quasi_admissible == base.quasi_admissible && v.raisable == base.raisable)
    });

    OrbitRowAudit {
        group: row.group,
        orbit: row.orbit.clone(),
        qa_printed: row.qa_printed.clone(),
        qa_derived,
        qa_matches,
        raisable_printed: row.raisable_printed.clone(),
        raisable_derived,
        raisable_matches,
        variants_agree,
    }
}

pub fn audit_orbit_table(tables: &Tables, group: GroupForm, n_max: u32) -> Vec<OrbitRowAudit> {
    tables
        .orbits
        .iter()
        .filter(|r| r.group == group)
        .map(|r| audit_orbit_row(r, n_max))
        .collect()
}

/// One degree of a theta-table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaCellAudit {
    pub group: GroupForm,
    pub n: u32,
    pub printed: SubsystemLabel,
    pub computed: SubsystemLabel,
    pub matches: bool,
    /// The recorded correction, when the printed value is known to be wrong.
    pub erratum: Option<String>,
    /// Whether the computed value equals the recorded correction.
    pub matches_erratum: bool,
}

/// `Φ_ν` for the exceptional character of the `n`-fold cover with `Inv_BD = 1`.
pub fn theta_subsystem(group: GroupForm, n: u32) -> Result<SubsystemLabel> {
    let rank = group.fixed_rank().unwrap_or(0);
    let spec = CoverSpec::new(group, rank, n)?;
    let rs = spec.root_system()?;
    let nu = spec.exceptional_character(&rs).nu;
    Ok(rs.integral_subsystem(&nu).label)
}

pub fn audit_theta_cell(row: &ThetaRecord, n: u32) -> Result<ThetaCellAudit> {
    let printed = row.printed_phi()?;
    let computed = theta_subsystem(row.group, n)?;
    let erratum = row.erratum(n).map(|e| e.computed.clone());
    let matches_erratum = match &erratum {
        Some(e) => e.parse::<SubsystemLabel>()? == computed,
        None => false,
    };
    Ok(ThetaCellAudit {
        group: row.group,
        n,
        matches: printed == computed,
        printed,
        computed,
        erratum,
        matches_erratum,
    })
}

/// Every degree `1..=n_max` of the theta table for `group`.
pub fn audit_theta_table(
    tables: &Tables,
    group: GroupForm,
    n_max: u32,
) -> Result<Vec<ThetaCellAudit>> {
    (1..=n_max)
        .map(|n| audit_theta_cell(tables.lookup_theta(group, n)?, n))
        .collect()
}
