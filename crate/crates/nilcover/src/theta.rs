//! Predicted wavefront orbits of theta representations.
//!
//! Classical covers at their default normalization go through closed-form
//! family formulas, written with `O^{N,k}_X`, the `X`-collapse of `(k^a b)`
//! where `N = a·k + b`. Other normalizations fall back to
//! [`sommers_pipeline`]. Exceptional covers are looked up in the curated table.

use serde::Serialize;

use crate::admissibility::{classify_classical, Raisability, Verdict};
use crate::cover::{CoverSpec, GroupForm, QNormalization};
use crate::data::tables;
use crate::duality::sommers_pipeline;
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::partition::{ClassicalType, Partition};

/// A classical partition or an exceptional Bala–Carter label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OrbitName {
    Partition(Partition),
    Label(String),
}

impl std::fmt::Display for OrbitName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Partition(p) => write!(f, "{p}"),
            Self::Label(s) => f.write_str(s),
        }
    }
}

/// A Levi subgroup in which the orbit is regular, as a list of factor names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeviDescription {
    pub factors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaOrbitResult {
    pub orbit: OrbitName,
    pub via_closed_form: bool,
    /// `None` for `Spin` forms, which have no partition classifier.
    pub verdict: Option<Verdict>,
    pub levi_regular: Option<LeviDescription>,
}

/// `O^{size,k}_t`: the `t`-collapse of `(k^a b)`.
pub fn collapsed_rectangle(k: u32, size: u32, t: ClassicalType) -> Result<Partition> {
    let p = Partition::rectangular(k, size);
    match t {
        ClassicalType::A => Ok(p),
        _ => p.collapse(t),
    }
}

/// `(head) ∪ O^{size − head, k}_t`, or the regular orbit when `size < head`.
fn prefixed(
    head: u32,
    k: u32,
    size: u32,
    t: ClassicalType,
    regular: Partition,
) -> Result<Partition> {
    match size.checked_sub(head) {
        Some(rest) => Ok(Partition::new(vec![head]).union(&collapsed_rectangle(k, rest, t)?)),
        None => Ok(regular),
    }
}

/// The family formula for `Spin_{2r+1}` of degree `n`.
pub fn spin_odd_orbit(rank: u32, n: u32) -> Result<Partition> {
    collapsed_rectangle(n, 2 * rank + 1, ClassicalType::B)
}

/// The family formula for `Spin_{2r}` of degree `n`.
pub fn spin_even_orbit(rank: u32, n: u32) -> Result<Partition> {
    let size = 2 * rank;
    if n % 2 == 1 {
        collapsed_rectangle(n, size, ClassicalType::D)
    } else {
        // the remainder has odd size, so its collapse is of type B
        prefixed(
            n + 1,
            n,
            size,
            ClassicalType::B,
            Partition::new(vec![size - 1, 1]),
        )
    }
}

fn sp_orbit(rank: u32, n: u32) -> Result<Partition> {
    let size = 2 * rank;
    if n % 2 == 1 {
        collapsed_rectangle(n, size, ClassicalType::C)
    } else if n.is_multiple_of(4) {
        collapsed_rectangle(n / 2, size, ClassicalType::C)
    } else {
        let k = n / 2;
        prefixed(k + 1, k, size, ClassicalType::C, Partition::new(vec![size]))
    }
}

/// The closed-form orbit, or `None` when the cover is outside the tabulated
/// normalizations.
///
/// The `Spin` formulas assume the generic lattice, so `Spin_3`, `Spin_5` and
/// `Spin_4` (isogenous to `SL_2`, `Sp_4`, `SL_2 × SL_2`) are left to the pipeline.
pub fn closed_form(spec: &CoverSpec) -> Result<Option<Partition>> {
    let r = spec.rank as u32;
    let default =
        matches!(spec.q, QNormalization::InvBd { inv_bd } if inv_bd == spec.group.default_inv_bd());
    let orbit = match spec.group {
        GroupForm::Gl => {
            if spec.inv_bd() == 0 {
                return Err(Error::invalid(
                    "Q(α∨) = 0: the cover is not a genuine n-fold cover on SL_r",
                ));
            }
            Partition::rectangular(spec.n_alpha_uniform(), r)
        }
        _ if !default => return Ok(None),
        GroupForm::SpinOdd | GroupForm::SpinEven if r <= 2 => return Ok(None),
        GroupForm::SpinOdd => spin_odd_orbit(r, spec.n)?,
        GroupForm::SoOdd => spin_odd_orbit(r, spec.n_alpha_uniform())?,
        GroupForm::SpinEven => spin_even_orbit(r, spec.n)?,
        GroupForm::SoEven => spin_even_orbit(r, spec.n_alpha_uniform())?,
        GroupForm::Sp => sp_orbit(r, spec.n)?,
        g => return Err(Error::invalid(format!("{g} is not a classical group"))),
    };
    Ok(Some(orbit))
}

/// Predicted theta orbit with its admissibility verdict.
pub fn theta_orbit(spec: &CoverSpec) -> Result<ThetaOrbitResult> {
    if spec.group.is_exceptional() {
        return exceptional_theta_orbit(spec);
    }
    let (orbit, via_closed_form) = match closed_form(spec)? {
        Some(p) => (p, true),
        None => (sommers_pipeline(spec)?.orbit, false),
    };
    let t = spec.group.classical_type().expect("classical");
    let size = spec.group.partition_size(spec.rank).expect("classical");
    if !orbit.is_valid(t, size) {
        return Err(Error::internal(format!(
            "theta orbit {orbit} is not a type {t} orbit of size {size}"
        )));
    }
    let verdict = match spec.group {
        GroupForm::SpinOdd | GroupForm::SpinEven => None,
        _ => Some(classify_classical(&orbit, spec)?),
    };
    Ok(ThetaOrbitResult {
        levi_regular: classical_levi(&orbit, t),
        orbit: OrbitName::Partition(orbit),
        via_closed_form,
        verdict,
    })
}

fn exceptional_theta_orbit(spec: &CoverSpec) -> Result<ThetaOrbitResult> {
    if spec.inv_bd() != 1 {
        return Err(Error::invalid("the theta tables assume Inv_BD = 1"));
    }
    let t = tables()?;
    let row = t.lookup_theta(spec.group, spec.n)?;
    let verdict = t.classify_exceptional(spec, &row.orbit)?;
    let levi_regular = row.levi_regular.then(|| LeviDescription {
        factors: if row.orbit == "0" {
            Vec::new()
        } else {
            vec![row.orbit.clone()]
        },
    });
    Ok(ThetaOrbitResult {
        orbit: OrbitName::Label(row.orbit.clone()),
        via_closed_form: false,
        verdict: Some(verdict),
        levi_regular,
    })
}

/// Splits `p` as the regular orbit of `G' × ∏ GL_{k}` with `G'` of type `t`,
/// each `GL_k` contributing a pair of parts `k`.
pub fn classical_levi(p: &Partition, t: ClassicalType) -> Option<LeviDescription> {
    if t == ClassicalType::A {
        return Some(LeviDescription {
            factors: p.parts().iter().map(|k| format!("GL{k}")).collect(),
        });
    }
    let mults = p.multiplicities();
    let odd_mults: Vec<u32> = mults
        .iter()
        .filter(|(_, m)| m % 2 == 1)
        .map(|&(q, _)| q)
        .collect();
    let small: Option<String> = match (t, odd_mults.as_slice()) {
        (ClassicalType::C, []) => None,
        (ClassicalType::C, [q]) if q % 2 == 0 => Some(format!("Sp{q}")),
        (ClassicalType::B, [q]) if q % 2 == 1 => Some(format!("SO{q}")),
        (ClassicalType::D, []) => None,
        (ClassicalType::D, [q, 1]) if q % 2 == 1 => Some(format!("SO{}", q + 1)),
        _ => return None,
    };
    let mut factors: Vec<String> = small.into_iter().collect();
    for (q, m) in mults {
        let pairs = m / 2;
        factors.extend(std::iter::repeat_n(format!("GL{q}"), pairs));
    }
    Some(LeviDescription { factors })
}

/// Outcome of checking that a theta orbit is quasi-admissible and not raisable.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaCheck {
    pub spec: CoverSpec,
    pub result: ThetaOrbitResult,
    /// `None` when no verdict is available (`Spin` forms).
    pub passed: Option<bool>,
    /// Factors whose theta representations must be generic.
    pub generic_levi_factors: Option<Vec<String>>,
}

/// Runs [`theta_orbit`] and checks the verdict. Symplectic covers must be
/// persistent.
pub fn check_theta_orbit(spec: &CoverSpec) -> Result<ThetaCheck> {
    if spec.group == GroupForm::Sp && !spec.is_persistent() {
        return Err(Error::invalid(format!("{spec} is not persistent")));
    }
    let result = theta_orbit(spec)?;
    let passed = result
        .verdict
        .as_ref()
        .map(|v| v.quasi_admissible && v.raisable != Raisability::Raisable);
    Ok(ThetaCheck {
        spec: spec.clone(),
        generic_levi_factors: result.levi_regular.as_ref().map(|l| l.factors.clone()),
        result,
        passed,
    })
}

/// [`check_theta_orbit`] over many covers.
pub fn check_theta_orbits(specs: &[CoverSpec], mode: ExecMode) -> Result<Vec<ThetaCheck>> {
    exec::try_map(mode, specs, check_theta_orbit)
}
