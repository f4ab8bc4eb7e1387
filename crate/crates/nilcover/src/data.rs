//! Curated tables for the exceptional groups.
//!
//! Two JSON-lines files ship with the crate: per-orbit Brylinski–Deligne data
//! (`exceptional_orbits.jsonl`) and the theta-orbit table indexed by the cover
//! degree (`theta_orbits.jsonl`). Setting [`DATA_DIR_ENV`] to a directory
//! holding files of the same names replaces the embedded copies.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::admissibility::{BdPair, Factor, Verdict};
use crate::cover::{CoverSpec, GroupForm};
use crate::error::{Error, Result};
use crate::roots::SubsystemLabel;

pub const DATA_DIR_ENV: &str = "NILCOVER_DATA_DIR";
pub const SCHEMA_VERSION: u32 = 1;

const ORBITS_FILE: &str = "exceptional_orbits.jsonl";
const THETA_FILE: &str = "theta_orbits.jsonl";
const EMBEDDED_ORBITS: &str = include_str!("../data/exceptional_orbits.jsonl");
const EMBEDDED_THETA: &str = include_str!("../data/theta_orbits.jsonl");

/// A set of cover degrees as printed in the tables, e.g. `n = 4, 12` or `n | 24`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    OneOf(Vec<u32>),
    AtLeast(u32),
    NoneOf(Vec<u32>),
    Divides(u32),
    All,
    /// The criterion does not apply.
    NotApplicable,
}

impl Condition {
    /// `None` for [`Condition::NotApplicable`].
    pub fn holds(&self, n: u32) -> Option<bool> {
        Some(match self {
            Self::OneOf(v) => v.contains(&n),
            Self::AtLeast(k) => n >= *k,
            Self::NoneOf(v) => !v.contains(&n),
            Self::Divides(k) => k % n == 0,
            Self::All => true,
            Self::NotApplicable => return None,
        })
    }
}

fn parse_list(s: &str) -> Option<Vec<u32>> {
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}

impl FromStr for Condition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("bad degree condition `{s}`"));
        let t = s.trim();
        match t {
            "all n" => return Ok(Self::All),
            "n.a." => return Ok(Self::NotApplicable),
            _ => {}
        }
        let rest = t.strip_prefix('n').ok_or_else(bad)?.trim_start();
        if let Some(v) = rest.strip_prefix(">=") {
            return v.trim().parse().map(Self::AtLeast).map_err(|_| bad());
        }
        if let Some(v) = rest.strip_prefix("!=") {
            return parse_list(v).map(Self::NoneOf).ok_or_else(bad);
        }
        if let Some(v) = rest.strip_prefix('|') {
            return v.trim().parse().map(Self::Divides).map_err(|_| bad());
        }
        if let Some(v) = rest.strip_prefix('=') {
            return parse_list(v).map(Self::OneOf).ok_or_else(bad);
        }
        Err(bad())
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ");
        match self {
            Self::OneOf(v) => write!(f, "n = {}", join(v)),
            Self::AtLeast(k) => write!(f, "n >= {k}"),
            Self::NoneOf(v) => write!(f, "n != {}", join(v)),
            Self::Divides(k) => write!(f, "n | {k}"),
            Self::All => f.write_str("all n"),
            Self::NotApplicable => f.write_str("n.a."),
        }
    }
}

impl Serialize for Condition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Condition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Alternative `(Q1, Q2)` values from a worked computation that disagrees with the table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorVariant {
    pub factors: Vec<BdPair>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub group: GroupForm,
    pub orbit: String,
    pub special: bool,
    pub even: bool,
    /// Derived stabilizer as printed, factors joined by ` x `.
    pub stabilizer: String,
    pub factors: Vec<BdPair>,
    /// Pair of the raising `SL_2`, when one is known.
    pub tau: Option<BdPair>,
    pub qa_printed: Condition,
    pub raisable_printed: Condition,
    #[serde(default)]
    pub variants: Vec<FactorVariant>,
    #[serde(default)]
    pub note: Option<String>,
}

impl OrbitRecord {
    fn stabilizer_factors(&self, pairs: &[BdPair]) -> Vec<Factor> {
        let names: Vec<&str> = self.stabilizer.split(" x ").collect();
        pairs
            .iter()
            .enumerate()
            .map(|(i, &pair)| {
                let name = if names.len() == pairs.len() {
                    names[i].to_string()
                } else {
                    format!("factor {} of {}", i + 1, self.stabilizer)
                };
                Factor::new(name, pair)
            })
            .collect()
    }

    fn raising_factors(&self) -> Vec<Factor> {
        self.tau
            .iter()
            .map(|&pair| Factor::new(format!("raising SL2 for {}", self.orbit), pair))
            .collect()
    }

    /// Verdict from the tabulated pairs.
    pub fn verdict(&self, n: u32) -> Verdict {
        Verdict::from_factors(
            &self.stabilizer_factors(&self.factors),
            &self.raising_factors(),
            n,
        )
    }

    /// Verdicts under each recorded alternative set of pairs.
    pub fn variant_verdicts(&self, n: u32) -> Vec<Verdict> {
        self.variants
            .iter()
            .map(|v| {
                Verdict::from_factors(
                    &self.stabilizer_factors(&v.factors),
                    &self.raising_factors(),
                    n,
                )
            })
            .collect()
    }
}

/// A degree whose printed integral subsystem disagrees with the computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub n: Vec<u32>,
    pub computed: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaRecord {
    pub group: GroupForm,
    /// Degrees listed explicitly.
    pub n: Vec<u32>,
    /// All degrees from this value on.
    #[serde(default)]
    pub n_from: Option<u32>,
    /// Integral subsystem as printed.
    pub phi: String,
    pub j: String,
    pub orbit: String,
    pub dim: u32,
    /// Whether the orbit is the regular orbit of a Levi subgroup.
    pub levi_regular: bool,
    #[serde(default)]
    pub errata: Vec<Erratum>,
}

impl ThetaRecord {
    pub fn covers(&self, n: u32) -> bool {
        self.n.contains(&n) || self.n_from.is_some_and(|k| n >= k)
    }

    pub fn printed_phi(&self) -> Result<SubsystemLabel> {
        self.phi.parse()
    }

    pub fn erratum(&self, n: u32) -> Option<&Erratum> {
        self.errata.iter().find(|e| e.n.contains(&n))
    }
}

#[derive(Deserialize)]
struct Header {
    schema_version: u32,
    kind: String,
}

#[derive(Clone, Debug)]
pub struct Tables {
    pub orbits: Vec<OrbitRecord>,
    pub theta: Vec<ThetaRecord>,
    /// Where the tables came from: `embedded` or a directory.
    pub source: String,
}

fn parse_jsonl<T: serde::de::DeserializeOwned>(
    text: &str,
    path: &str,
    kind: &str,
) -> Result<Vec<T>> {
    let data_err = |line: usize, message: String| Error::Data {
        path: format!("{path}:{line}"),
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = lines
        .next()
        .ok_or_else(|| data_err(1, "empty file".into()))?;
    let header: Header =
        serde_json::from_str(first).map_err(|e| data_err(1, format!("bad header: {e}")))?;
    if header.schema_version != SCHEMA_VERSION || header.kind != kind {
        return Err(data_err(
            1,
            format!(
                "expected {kind} schema {SCHEMA_VERSION}, found {} schema {}",
                header.kind, header.schema_version
            ),
        ));
    }
    lines
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| data_err(i + 1, e.to_string())))
        .collect()
}

impl Tables {
    pub fn embedded() -> Result<Self> {
        Ok(Self {
            orbits: parse_jsonl(EMBEDDED_ORBITS, ORBITS_FILE, "exceptional_orbits")?,
            theta: parse_jsonl(EMBEDDED_THETA, THETA_FILE, "theta_orbits")?,
            source: "embedded".into(),
        })
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| -> Result<(String, String)> {
            let path = dir.join(name);
            let shown = path.display().to_string();
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Data {
                path: shown.clone(),
                message: e.to_string(),
            })?;
            Ok((text, shown))
        };
        let (orbits, orbits_path) = read(ORBITS_FILE)?;
        let (theta, theta_path) = read(THETA_FILE)?;
        Ok(Self {
            orbits: parse_jsonl(&orbits, &orbits_path, "exceptional_orbits")?,
            theta: parse_jsonl(&theta, &theta_path, "theta_orbits")?,
            source: dir.display().to_string(),
        })
    }

    /// The directory named by [`DATA_DIR_ENV`] if set, else the embedded copy.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(DATA_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Self::load_dir(Path::new(&dir)),
            _ => Self::embedded(),
        }
    }

    pub fn lookup_orbit(&self, group: GroupForm, label: &str) -> Result<&OrbitRecord> {
        let key = normalize_label(label);
        self.orbits
            .iter()
            .find(|r| r.group == group && normalize_label(&r.orbit) == key)
            .ok_or_else(|| Error::NotFound(format!("orbit {label} of {group} is not tabulated")))
    }

    pub fn lookup_theta(&self, group: GroupForm, n: u32) -> Result<&ThetaRecord> {
        if !group.is_exceptional() {
            return Err(Error::invalid(format!(
                "{group} has no theta table; use the closed forms"
            )));
        }
        let mut hits = self
            .theta
            .iter()
            .filter(|r| r.group == group && r.covers(n));
        let first = hits
            .next()
            .ok_or_else(|| Error::NotFound(format!("no theta row of {group} covers n = {n}")))?;
        if hits.next().is_some() {
            return Err(Error::internal(format!(
                "several theta rows of {group} cover n = {n}"
            )));
        }
        Ok(first)
    }

    /// Classifies an exceptional orbit: tabulated rows, else the zero orbit,
    /// else a distinguished orbit (trivial stabilizer, nothing to check).
    pub fn classify_exceptional(&self, spec: &CoverSpec, label: &str) -> Result<Verdict> {
        check_exceptional(spec)?;
        if let Ok(rec) = self.lookup_orbit(spec.group, label) {
            return Ok(rec.verdict(spec.n));
        }
        let rank = spec.group.fixed_rank().expect("exceptional");
        match bala_carter_rank(label)? {
            0 => {
                let whole = Factor::new(spec.group.to_string(), BdPair::new(1, 0));
                let raiser = Factor::new("root SL2", BdPair::new(1, 0));
                Ok(Verdict::from_factors(&[whole], &[raiser], spec.n))
            }
            r if r == rank => Ok(Verdict::from_factors(&[], &[], spec.n)),
            _ => Err(Error::NotFound(format!(
                "orbit {label} of {} is neither tabulated nor distinguished",
                spec.group
            ))),
        }
    }
}

fn check_exceptional(spec: &CoverSpec) -> Result<()> {
    if !spec.group.is_exceptional() {
        return Err(Error::invalid(format!("{} is not exceptional", spec.group)));
    }
    if spec.inv_bd() != 1 {
        return Err(Error::invalid("the exceptional tables assume Inv_BD = 1"));
    }
    Ok(())
}

/// Drops whitespace and maps `Ã`, `{0}` and `∅` to their ASCII forms.
fn normalize_label(s: &str) -> String {
    let t: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .replace('Ã', "~A");
    match t.as_str() {
        "{0}" | "∅" | "zero" => "0".into(),
        _ => t,
    }
}

/// Semisimple rank of the Levi in a Bala–Carter label, e.g. 8 for `E8(a7)`.
pub fn bala_carter_rank(label: &str) -> Result<usize> {
    let t = normalize_label(label);
    let levi = match t.find('(') {
        Some(i) if i > 0 => &t[..i],
        _ => t.as_str(),
    };
    Ok(levi.parse::<SubsystemLabel>()?.rank())
}

static TABLES: OnceLock<std::result::Result<Tables, String>> = OnceLock::new();

/// Process-wide tables, loaded once via [`Tables::from_env`].
pub fn tables() -> Result<&'static Tables> {
    TABLES
        .get_or_init(|| Tables::from_env().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|m| Error::Data {
            path: "tables".into(),
            message: m.clone(),
        })
}
