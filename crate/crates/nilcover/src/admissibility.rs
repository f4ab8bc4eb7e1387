//! Quasi-admissibility and raisability of split nilpotent orbits.
//!
//! Both properties reduce to whether an `lcm(n, 2)`-fold cover of a simple
//! factor (or of an auxiliary `SL_2`) splits, which depends only on a pair of
//! Brylinski–Deligne invariants `(q1, q2)`. The classifiers below assemble
//! that list of pairs for an orbit and feed it through [`splits`].

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cover::{CoverSpec, GroupForm};
use crate::error::{Error, Result};
use crate::partition::{ClassicalType, Partition};

/// `(Inv_BD of the n-fold restriction, Inv_BD of the metaplectic pullback)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BdPair {
    pub q1: i64,
    pub q2: i64,
}

impl BdPair {
    pub const fn new(q1: i64, q2: i64) -> Self {
        Self { q1, q2 }
    }
}

/// Divisibility form: `n* | (n*/n)·q1 + (n*/2)·q2` with `n* = lcm(n, 2)`.
pub fn splits(pair: BdPair, n: u32) -> bool {
    let n = i64::from(n);
    let star = n.lcm(&2);
    ((star / n) * pair.q1 + (star / 2) * pair.q2) % star == 0
}

/// Case form: `n | q1` when `q2` is even, `n / gcd(n, q1) = 2` when `q2` is odd.
pub fn splits_by_cases(pair: BdPair, n: u32) -> bool {
    let n = i64::from(n);
    if pair.q2 % 2 == 0 {
        pair.q1 % n == 0
    } else {
        n / n.gcd(&pair.q1) == 2
    }
}

/// Outcome of the raising criterion, which is only a sufficient condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Raisability {
    #[serde(rename = "yes")]
    Raisable,
    /// Some auxiliary `SL_2` exists but none of them certifies raisability.
    #[serde(rename = "no_by_criterion")]
    NotRaisableByCriterion,
    /// No auxiliary `SL_2` satisfying the hypotheses is available.
    #[serde(rename = "not_applicable")]
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvidenceRole {
    /// A simple factor of the reductive stabilizer.
    Stabilizer,
    /// An auxiliary `SL_2` used for raising.
    Raising,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub role: EvidenceRole,
    pub factor: String,
    pub pair: BdPair,
    pub splits: bool,
}

/// A factor-level input to [`Verdict::from_factors`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub label: String,
    pub pair: BdPair,
}

impl Factor {
    pub fn new(label: impl Into<String>, pair: BdPair) -> Self {
        Self {
            label: label.into(),
            pair,
        }
    }
}

const KERNEL_HYPOTHESIS: &str =
    "splitting of the simply connected cover is taken to be equivalent to splitting of the derived stabilizer cover; coprimality of n with the isogeny kernel is not checked";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub quasi_admissible: bool,
    pub raisable: Raisability,
    pub evidence: Vec<Evidence>,
    /// Set when both properties hold at once, which no theta orbit may exhibit.
    pub contract_violation: bool,
    pub assumptions: Vec<String>,
}

impl Verdict {
    /// Quasi-admissible iff every stabilizer factor splits; raisable iff some
    /// raising `SL_2` does not split.
    pub fn from_factors(stabilizer: &[Factor], raising: &[Factor], n: u32) -> Self {
        let mut evidence = Vec::with_capacity(stabilizer.len() + raising.len());
        let mut quasi_admissible = true;
        for f in stabilizer {
            let ok = splits(f.pair, n);
            quasi_admissible &= ok;
            evidence.push(Evidence {
                role: EvidenceRole::Stabilizer,
                factor: f.label.clone(),
                pair: f.pair,
                splits: ok,
            });
        }
        let mut raisable = if raising.is_empty() {
            Raisability::NotApplicable
        } else {
            Raisability::NotRaisableByCriterion
        };
        for f in raising {
            let ok = splits(f.pair, n);
            if !ok {
                raisable = Raisability::Raisable;
            }
            evidence.push(Evidence {
                role: EvidenceRole::Raising,
                factor: f.label.clone(),
                pair: f.pair,
                splits: ok,
            });
        }
        Self {
            quasi_admissible,
            raisable,
            evidence,
            contract_violation: quasi_admissible && raisable == Raisability::Raisable,
            assumptions: vec![KERNEL_HYPOTHESIS.to_string()],
        }
    }

    /// Whether this is the verdict required of a theta orbit.
    pub fn is_theta_compatible(&self) -> bool {
        self.quasi_admissible && self.raisable != Raisability::Raisable
    }
}

/// Dispatches on the group of `spec`.
pub fn classify_classical(p: &Partition, spec: &CoverSpec) -> Result<Verdict> {
    match spec.group {
        GroupForm::Gl => classify_type_a(p, spec),
        GroupForm::SoOdd | GroupForm::SoEven => classify_type_bd(p, spec),
        GroupForm::Sp => classify_type_c(p, spec),
        g => Err(Error::invalid(format!(
            "partition classification is available for GL, SO and Sp covers, not {g}"
        ))),
    }
}

fn check_orbit(p: &Partition, spec: &CoverSpec, t: ClassicalType) -> Result<()> {
    let size = spec
        .group
        .partition_size(spec.rank)
        .ok_or_else(|| Error::invalid("not a classical group"))?;
    if !p.is_valid(t, size) {
        return Err(Error::invalid(format!(
            "{p} is not a nilpotent orbit of type {t} and size {size}"
        )));
    }
    Ok(())
}

/// `Σ 2·min(p, q)·mult(q)` over parts `q` of the opposite parity to `p`.
fn opposite_parity_mixing(p: &Partition, part: u32) -> i64 {
    p.multiplicities()
        .iter()
        .filter(|&&(q, _)| (q + part) % 2 == 1)
        .map(|&(q, m)| 2 * i64::from(part.min(q)) * m as i64)
        .sum()
}

/// `Σ min(p, q)·mult(q)` over parts `q` of the opposite parity to `p`.
fn half_mixing(p: &Partition, part: u32) -> i64 {
    opposite_parity_mixing(p, part) / 2
}

/// Orbits of `GL_r`: each part `p` repeated `d ≥ 2` times contributes a `GL_d`
/// factor with `q1 = p·Q(α∨)`, which also serves as the raising `SL_2`.
pub fn classify_type_a(p: &Partition, spec: &CoverSpec) -> Result<Verdict> {
    if spec.group != GroupForm::Gl {
        return Err(Error::invalid("type A classification needs a GL cover"));
    }
    check_orbit(p, spec, ClassicalType::A)?;
    let q_alpha = spec.inv_bd();
    if q_alpha == 0 {
        return Err(Error::invalid(
            "Q(α∨) = 0: the cover is not a genuine n-fold cover on SL_r",
        ));
    }
    let mut stabilizer = Vec::new();
    let mut raising = Vec::new();
    for (part, d) in p.multiplicities() {
        if d < 2 {
            continue;
        }
        let pair = BdPair::new(i64::from(part) * q_alpha, opposite_parity_mixing(p, part));
        stabilizer.push(Factor::new(format!("GL{d} on part {part}"), pair));
        raising.push(Factor::new(format!("SL2 in GL{d} on part {part}"), pair));
    }
    Ok(Verdict::from_factors(&stabilizer, &raising, spec.n))
}

/// Orthogonal orbits. Even parts `p` (multiplicity `d`) give `Sp_d` factors,
/// odd parts `q` with multiplicity `e ≥ 3` give `SO_e` factors.
pub fn classify_type_bd(p: &Partition, spec: &CoverSpec) -> Result<Verdict> {
    let t = match spec.group {
        GroupForm::SoOdd => ClassicalType::B,
        GroupForm::SoEven => ClassicalType::D,
        _ => return Err(Error::invalid("type B/D classification needs an SO cover")),
    };
    check_orbit(p, spec, t)?;
    // Q(α∨) of the ambient SL, from Inv_BD(SO) = 2·Q(α∨).
    let k = spec.inv_bd() / 2;
    let mut stabilizer = Vec::new();
    let mut raising = Vec::new();
    for (part, mult) in p.multiplicities() {
        let part_i = i64::from(part);
        let mixing = half_mixing(p, part);
        if part % 2 == 0 {
            if mult >= 2 {
                let pair = BdPair::new(part_i * k, mixing);
                stabilizer.push(Factor::new(format!("Sp{mult} on part {part}"), pair));
                let m = part_i * i64::from(p.frak_a(part)?) + smaller_opposite_weight(p, part);
                raising.push(Factor::new(
                    format!("long-root SL2 in Sp{mult} on part {part}"),
                    BdPair::new(part_i * k, m),
                ));
            }
        } else if mult >= 3 {
            let scale = if mult == 3 { 4 } else { 2 };
            let pair = BdPair::new(scale * part_i * k, scale * mixing);
            stabilizer.push(Factor::new(format!("SO{mult} on part {part}"), pair));
            if mult >= 4 {
                let m = part_i * i64::from(p.frak_a(part)?) + smaller_opposite_weight(p, part);
                raising.push(Factor::new(
                    format!("GL2-root SL2 in SO{mult} on part {part}"),
                    BdPair::new(2 * part_i * k, m),
                ));
            }
        }
    }
    Ok(Verdict::from_factors(&stabilizer, &raising, spec.n))
}

/// Symplectic orbits. Odd parts `q` (multiplicity `e ≥ 2`) give `Sp_e`
/// factors, even parts `p` with multiplicity `d ≥ 3` give `SO_d` factors.
pub fn classify_type_c(p: &Partition, spec: &CoverSpec) -> Result<Verdict> {
    if spec.group != GroupForm::Sp {
        return Err(Error::invalid("type C classification needs an Sp cover"));
    }
    check_orbit(p, spec, ClassicalType::C)?;
    let k = spec.inv_bd();
    let mut stabilizer = Vec::new();
    let mut raising = Vec::new();
    for (part, mult) in p.multiplicities() {
        let part_i = i64::from(part);
        let mixing = half_mixing(p, part);
        if part % 2 == 1 {
            if mult >= 2 {
                let pair = BdPair::new(part_i * k, mixing);
                stabilizer.push(Factor::new(format!("Sp{mult} on part {part}"), pair));
                let m = part_i * i64::from(p.frak_a(part)?) + smaller_opposite_weight(p, part);
                raising.push(Factor::new(
                    format!("long-root SL2 in Sp{mult} on part {part}"),
                    BdPair::new(part_i * k, m),
                ));
            }
        } else if mult >= 3 {
            let scale = if mult == 3 { 4 } else { 2 };
            let pair = BdPair::new(scale * part_i * k, scale * mixing);
            stabilizer.push(Factor::new(format!("SO{mult} on part {part}"), pair));
            if mult >= 4 {
                let m = part_i * i64::from(p.frak_a(part)?) + smaller_opposite_weight(p, part);
                raising.push(Factor::new(
                    format!("GL2-root SL2 in SO{mult} on part {part}"),
                    BdPair::new(2 * part_i * k, m),
                ));
            }
        }
    }
    Ok(Verdict::from_factors(&stabilizer, &raising, spec.n))
}

/// `Σ q·mult(q)` over parts `q < part` of the opposite parity.
fn smaller_opposite_weight(p: &Partition, part: u32) -> i64 {
    p.multiplicities()
        .iter()
        .filter(|&&(q, _)| q < part && (q + part) % 2 == 1)
        .map(|&(q, m)| i64::from(q) * m as i64)
        .sum()
}
