//! Covering-group data: the quadratic form `Q` on the cocharacter lattice `Y`,
//! the derived integers `n_α`, `ñ_α`, and the exceptional character.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::ClassicalType;
use crate::roots::{CartanLabel, Family, Rational, RootSystem};

/// Group together with its isogeny form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupForm {
    #[serde(rename = "GL")]
    Gl,
    #[serde(rename = "SO_odd")]
    SoOdd,
    #[serde(rename = "SO_even")]
    SoEven,
    #[serde(rename = "Sp")]
    Sp,
    #[serde(rename = "Spin_odd")]
    SpinOdd,
    #[serde(rename = "Spin_even")]
    SpinEven,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl GroupForm {
    pub const EXCEPTIONAL: [GroupForm; 5] = [Self::G2, Self::F4, Self::E6, Self::E7, Self::E8];

    pub fn is_exceptional(self) -> bool {
        Self::EXCEPTIONAL.contains(&self)
    }

    /// Rank of the exceptional groups; `None` for the classical families.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Self::G2 => Some(2),
            Self::F4 => Some(4),
            Self::E6 => Some(6),
            Self::E7 => Some(7),
            Self::E8 => Some(8),
            _ => None,
        }
    }

    /// Partition type of nilpotent orbits for the classical families.
    pub fn classical_type(self) -> Option<ClassicalType> {
        match self {
            Self::Gl => Some(ClassicalType::A),
            Self::SoOdd | Self::SpinOdd => Some(ClassicalType::B),
            Self::Sp => Some(ClassicalType::C),
            Self::SoEven | Self::SpinEven => Some(ClassicalType::D),
            _ => None,
        }
    }

    /// Size of the standard representation, i.e. of orbit partitions.
    pub fn partition_size(self, rank: usize) -> Option<u32> {
        let r = rank as u32;
        Some(match self.classical_type()? {
            ClassicalType::A => r,
            ClassicalType::B => 2 * r + 1,
            ClassicalType::C | ClassicalType::D => 2 * r,
        })
    }

    pub fn cartan_label(self, rank: usize) -> CartanLabel {
        use Family::*;
        match self {
            Self::Gl => CartanLabel::new(A, rank.saturating_sub(1)),
            Self::SoOdd | Self::SpinOdd => CartanLabel::new(B, rank),
            Self::Sp => CartanLabel::new(C, rank),
            Self::SoEven | Self::SpinEven => CartanLabel::new(D, rank),
            Self::G2 => CartanLabel::new(G, 2),
            Self::F4 => CartanLabel::new(F, 4),
            Self::E6 => CartanLabel::new(E, 6),
            Self::E7 => CartanLabel::new(E, 7),
            Self::E8 => CartanLabel::new(E, 8),
        }
    }

    pub fn default_inv_bd(self) -> i64 {
        match self {
            Self::SoOdd | Self::SoEven => 2,
            _ => 1,
        }
    }

    fn min_rank(self) -> usize {
        match self {
            Self::SoEven | Self::SpinEven => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for GroupForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Gl => "GL",
            Self::SoOdd => "SO_odd",
            Self::SoEven => "SO_even",
            Self::Sp => "Sp",
            Self::SpinOdd => "Spin_odd",
            Self::SpinEven => "Spin_even",
            Self::G2 => "G2",
            Self::F4 => "F4",
            Self::E6 => "E6",
            Self::E7 => "E7",
            Self::E8 => "E8",
        };
        f.write_str(s)
    }
}

impl FromStr for GroupForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        Ok(match key.as_str() {
            "gl" => Self::Gl,
            "soodd" | "so2r+1" | "b" => Self::SoOdd,
            "soeven" | "so2r" | "d" => Self::SoEven,
            "sp" | "sp2r" | "c" => Self::Sp,
            "spinodd" | "spin2r+1" => Self::SpinOdd,
            "spineven" | "spin2r" => Self::SpinEven,
            "g2" => Self::G2,
            "f4" => Self::F4,
            "e6" => Self::E6,
            "e7" => Self::E7,
            "e8" => Self::E8,
            _ => return Err(Error::invalid(format!("unknown group `{s}`"))),
        })
    }
}

/// Normalization of the quadratic form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QNormalization {
    /// Value of `Q` on a short coroot.
    InvBd { inv_bd: i64 },
    /// `Q(y) = a·Σ y_i² + b·Σ_{i<j} y_i y_j` on `Y = Z^r` (GL only).
    GlForm { a: i64, b: i64 },
}

/// An `n`-fold cover, described by its quadratic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverSpec {
    pub group: GroupForm,
    pub rank: usize,
    pub n: u32,
    #[serde(flatten)]
    pub q: QNormalization,
    /// Persistence is taken on trust; `None` means "use the known rule".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub persistent: Option<bool>,
}

#[derive(Deserialize)]
struct RawSpec {
    group: String,
    #[serde(default)]
    form: Option<String>,
    #[serde(default)]
    rank: Option<usize>,
    n: u32,
    #[serde(default, alias = "invBD")]
    inv_bd: Option<i64>,
    #[serde(default)]
    a: Option<i64>,
    #[serde(default)]
    b: Option<i64>,
    #[serde(default)]
    persistent: Option<bool>,
}

impl<'de> Deserialize<'de> for CoverSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawSpec::deserialize(d)?;
        let group = match raw.form.as_deref() {
            None => raw.group.parse(),
            Some(form) => group_from_family_form(&raw.group, form),
        }
        .map_err(D::Error::custom)?;
        let rank = raw
            .rank
            .or(group.fixed_rank())
            .ok_or_else(|| D::Error::custom("missing rank"))?;
        let mut spec = CoverSpec::new(group, rank, raw.n).map_err(D::Error::custom)?;
        match (raw.inv_bd, raw.a, raw.b) {
            (Some(k), None, None) => spec = spec.with_inv_bd(k).map_err(D::Error::custom)?,
            (None, Some(a), Some(b)) => spec = spec.with_gl_form(a, b).map_err(D::Error::custom)?,
            (None, None, None) => {}
            _ => return Err(D::Error::custom("give either inv_bd or both a and b")),
        }
        spec.persistent = raw.persistent;
        Ok(spec)
    }
}

fn group_from_family_form(family: &str, form: &str) -> Result<GroupForm> {
    let form = form.to_ascii_lowercase().replace(['_', '-', ' '], "");
    let sc = matches!(form.as_str(), "simplyconnected" | "sc");
    Ok(
        match (family.trim().to_ascii_uppercase().as_str(), form.as_str()) {
            ("A", "gl") => GroupForm::Gl,
            ("B", "so") => GroupForm::SoOdd,
            ("B", _) if sc => GroupForm::SpinOdd,
            ("C", "sp") => GroupForm::Sp,
            ("C", _) if sc => GroupForm::Sp,
            ("D", "so") => GroupForm::SoEven,
            ("D", _) if sc => GroupForm::SpinEven,
            (f, _) if sc => f.parse()?,
            (f, fm) => {
                return Err(Error::invalid(format!(
                    "unsupported group {f} with form {fm}"
                )))
            }
        },
    )
}

/// `ν̃` in fundamental-weight coordinates together with the simple-root `ñ_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalCharacter {
    pub nu: Vec<Rational>,
    pub denominators: Vec<u32>,
}

/// Shape of `Y` inside its ambient coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LatticeShape {
    /// All integer vectors.
    Full,
    /// Integer vectors with even coordinate sum.
    EvenSum,
}

impl CoverSpec {
    /// A cover with the default normalization of its group: `Inv_BD = 2` for
    /// `SO` forms (restriction from `SL`), `Inv_BD = 1` otherwise, and
    /// `(a, b) = (0, 1)` for `GL`.
    pub fn new(group: GroupForm, rank: usize, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("cover degree must be positive"));
        }
        let rank = match group.fixed_rank() {
            Some(r) if rank != r => {
                return Err(Error::invalid(format!("{group} has rank {r}, not {rank}")));
            }
            Some(r) => r,
            None if rank < group.min_rank() => {
                return Err(Error::invalid(format!("rank {rank} too small for {group}")));
            }
            None => rank,
        };
        let q = match group {
            GroupForm::Gl => QNormalization::GlForm { a: 0, b: 1 },
            g => QNormalization::InvBd {
                inv_bd: g.default_inv_bd(),
            },
        };
        Ok(Self {
            group,
            rank,
            n,
            q,
            persistent: None,
        })
    }

    pub fn with_inv_bd(mut self, inv_bd: i64) -> Result<Self> {
        if self.group == GroupForm::Gl {
            return Err(Error::invalid("GL covers are normalized by (a, b)"));
        }
        if matches!(self.group, GroupForm::SoOdd | GroupForm::SoEven) && inv_bd % 2 != 0 {
            return Err(Error::invalid(
                "Q is integral on Y only for even Inv_BD on SO",
            ));
        }
        self.q = QNormalization::InvBd { inv_bd };
        Ok(self)
    }

    pub fn with_gl_form(mut self, a: i64, b: i64) -> Result<Self> {
        if self.group != GroupForm::Gl {
            return Err(Error::invalid("(a, b) normalization applies to GL only"));
        }
        self.q = QNormalization::GlForm { a, b };
        Ok(self)
    }

    pub fn with_persistence(mut self, persistent: bool) -> Self {
        self.persistent = Some(persistent);
        self
    }

    pub fn root_system(&self) -> Result<RootSystem> {
        RootSystem::build(self.group.cartan_label(self.rank))
    }

    /// `Q` at a short coroot (for `GL`, at any coroot: `2a − b`).
    pub fn inv_bd(&self) -> i64 {
        match self.q {
            QNormalization::InvBd { inv_bd } => inv_bd,
            QNormalization::GlForm { a, b } => 2 * a - b,
        }
    }

    fn shape(&self) -> LatticeShape {
        match self.group {
            GroupForm::SpinOdd | GroupForm::SpinEven => LatticeShape::EvenSum,
            _ => LatticeShape::Full,
        }
    }

    /// Dimension of the ambient coordinates of `Y`.
    pub fn ambient_dim(&self) -> usize {
        self.rank
    }

    /// `B_Q(x, y)` in ambient coordinates: ε-coordinates for the classical
    /// families, simple-coroot coordinates for the exceptional groups.
    pub fn bilinear(&self, rs: &RootSystem, x: &[i64], y: &[i64]) -> i64 {
        let dot = |u: &[i64], v: &[i64]| -> i64 { u.iter().zip(v).map(|(a, b)| a * b).sum() };
        match (self.group, self.q) {
            (GroupForm::Gl, QNormalization::GlForm { a, b }) => {
                let (sx, sy): (i64, i64) = (x.iter().sum(), y.iter().sum());
                (2 * a - b) * dot(x, y) + b * sx * sy
            }
            (GroupForm::Sp, _) => 2 * self.inv_bd() * dot(x, y),
            (
                GroupForm::SoOdd | GroupForm::SoEven | GroupForm::SpinOdd | GroupForm::SpinEven,
                _,
            ) => self.inv_bd() * dot(x, y),
            _ => {
                // B(α_i∨, α_j∨) = Q(α_i∨)·A_ij with Q(α_i∨) = Inv·(longest / |α_i|²)
                let simples = rs.simples();
                let longest = simples.iter().map(|&i| rs.length(i)).max().unwrap_or(1);
                let a = rs.cartan_matrix();
                let r = x.len();
                (0..r)
                    .map(|i| {
                        let qi = self.inv_bd() * longest / rs.length(simples[i]);
                        (0..r).map(|j| x[i] * qi * a[i][j] * y[j]).sum::<i64>()
                    })
                    .sum()
            }
        }
    }

    /// `Q(y) = B_Q(y, y) / 2`.
    pub fn quadratic(&self, rs: &RootSystem, y: &[i64]) -> i64 {
        self.bilinear(rs, y, y) / 2
    }

    /// A basis of `Y` in ambient coordinates.
    pub fn lattice_basis(&self) -> Vec<Vec<i64>> {
        let r = self.ambient_dim();
        let unit = |i: usize| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        };
        match self.shape() {
            LatticeShape::Full => (0..r).map(unit).collect(),
            LatticeShape::EvenSum => {
                let mut basis: Vec<Vec<i64>> = (0..r.saturating_sub(1))
                    .map(|i| {
                        let mut e = unit(i);
                        e[i + 1] = -1;
                        e
                    })
                    .collect();
                let mut last = vec![0; r];
                if r >= 2 {
                    last[r - 2] = 1;
                    last[r - 1] = 1;
                } else {
                    last[0] = 2;
                }
                basis.push(last);
                basis
            }
        }
    }

    pub fn lattice_contains(&self, y: &[i64]) -> bool {
        y.len() == self.ambient_dim()
            && match self.shape() {
                LatticeShape::Full => true,
                LatticeShape::EvenSum => y.iter().sum::<i64>() % 2 == 0,
            }
    }

    /// Membership in `Y_{Q,n} = {y ∈ Y : B_Q(y, Y) ⊆ nZ}`.
    pub fn in_y_qn(&self, rs: &RootSystem, y: &[i64]) -> bool {
        let n = i64::from(self.n);
        self.lattice_contains(y)
            && self
                .lattice_basis()
                .iter()
                .all(|b| self.bilinear(rs, y, b).rem_euclid(n) == 0)
    }

    /// The coroot of `roots[i]` in ambient coordinates.
    pub fn coroot_ambient(&self, rs: &RootSystem, i: usize) -> Vec<i64> {
        if self.group.is_exceptional() {
            rs.coroot(i).to_vec()
        } else {
            rs.coroot_epsilon(i)
                .expect("classical root systems carry ε-coordinates")
        }
    }

    /// `Q(α∨)`.
    pub fn q_of_coroot(&self, rs: &RootSystem, i: usize) -> i64 {
        self.quadratic(rs, &self.coroot_ambient(rs, i))
    }

    /// `n_α = n / gcd(n, Q(α∨))`.
    pub fn n_alpha(&self, rs: &RootSystem, i: usize) -> u32 {
        let q = self.q_of_coroot(rs, i);
        let n = i64::from(self.n);
        (n / n.gcd(&q)) as u32
    }

    /// `n / gcd(n, Inv_BD)`, the value of `n_α` on short coroots (all coroots for `GL`).
    pub fn n_alpha_uniform(&self) -> u32 {
        let q = self.inv_bd();
        let n = i64::from(self.n);
        (n / n.gcd(&q)) as u32
    }

    /// Smallest `t ≥ 1` with `t·α∨ ∈ Y_{Q,n}`.
    pub fn tilde_n_alpha(&self, rs: &RootSystem, i: usize) -> u32 {
        let co = self.coroot_ambient(rs, i);
        let g = self
            .lattice_basis()
            .iter()
            .fold(0i64, |g, b| g.gcd(&self.bilinear(rs, &co, b)));
        let n = i64::from(self.n);
        (n / n.gcd(&g)) as u32
    }

    /// `ν̃ = Σ ω_α / ñ_α` over the simple roots.
    pub fn exceptional_character(&self, rs: &RootSystem) -> ExceptionalCharacter {
        let denominators: Vec<u32> = rs
            .simples()
            .into_iter()
            .map(|i| self.tilde_n_alpha(rs, i))
            .collect();
        let nu = denominators
            .iter()
            .map(|&d| Rational::new(1, i64::from(d)))
            .collect();
        ExceptionalCharacter { nu, denominators }
    }

    /// `ν = Σ ω_α / n_α`, the unsaturated character.
    pub fn naive_character(&self, rs: &RootSystem) -> Vec<Rational> {
        rs.simples()
            .into_iter()
            .map(|i| Rational::new(1, i64::from(self.n_alpha(rs, i))))
            .collect()
    }

    /// `ñ_α = n_α` on every simple root.
    pub fn is_saturated_on_simples(&self, rs: &RootSystem) -> bool {
        rs.simples()
            .into_iter()
            .all(|i| self.tilde_n_alpha(rs, i) == self.n_alpha(rs, i))
    }

    /// The user's persistence flag, or the known rule: symplectic covers are
    /// persistent exactly when `n` is odd or divisible by 4.
    pub fn is_persistent(&self) -> bool {
        self.persistent.unwrap_or(match self.group {
            GroupForm::Sp => self.n % 2 == 1 || self.n.is_multiple_of(4),
            _ => true,
        })
    }

    /// `Inv_BD` of the pulled-back cover of a subgroup: `Q` at the image of the
    /// subgroup's short coroot.
    pub fn pullback_bd_invariant(
        &self,
        rs: &RootSystem,
        image_of_short_coroot: &[i64],
    ) -> Result<i64> {
        if !self.lattice_contains(image_of_short_coroot) {
            return Err(Error::invalid("embedded coroot does not lie in Y"));
        }
        Ok(self.quadratic(rs, image_of_short_coroot))
    }
}

impl fmt::Display for CoverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(rank {}) n={}", self.group, self.rank, self.n)?;
        match self.q {
            QNormalization::InvBd { inv_bd } => write!(f, " Inv_BD={inv_bd}"),
            QNormalization::GlForm { a, b } => write!(f, " (a,b)=({a},{b})"),
        }
    }
}
