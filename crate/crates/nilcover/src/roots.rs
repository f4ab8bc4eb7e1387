//! Root data for the simple types, integral subsystems and Cartan-type recognition.
//!
//! Roots are stored as integer vectors in the basis of simple roots, coroots
//! in the basis of simple coroots. Weights are given in fundamental-weight
//! coordinates, so `⟨ν, α∨⟩` is the dot product of `ν` with the coroot vector.
//! Classical types additionally carry their usual ε-coordinate realization.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Self::A => 'A',
            Self::B => 'B',
            Self::C => 'C',
            Self::D => 'D',
            Self::E => 'E',
            Self::F => 'F',
            Self::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Self::A,
            'B' => Self::B,
            'C' => Self::C,
            'D' => Self::D,
            'E' => Self::E,
            'F' => Self::F,
            'G' => Self::G,
            _ => return None,
        })
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Self::A | Self::D | Self::E)
    }
}

/// Type and rank of an irreducible root system, e.g. `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanLabel {
    pub family: Family,
    pub rank: usize,
}

impl CartanLabel {
    pub const fn new(family: Family, rank: usize) -> Self {
        Self { family, rank }
    }

    /// Number of roots (positive and negative).
    pub fn root_count(self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1),
            Family::B | Family::C => 2 * r * r,
            Family::D => 2 * r * (r.saturating_sub(1)),
            Family::E => match r {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }
}

impl fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::invalid(format!("bad Cartan label `{s}`")))?;
        let rank = chars
            .as_str()
            .parse()
            .map_err(|_| Error::invalid(format!("bad Cartan label `{s}`")))?;
        Ok(Self { family, rank })
    }
}

impl Serialize for CartanLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Complete root datum of one of the supported types.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: CartanLabel,
    cartan: Vec<Vec<i64>>,
    /// `2(α_i, α_j)` in units where the shortest simple root has `(α, α) = 1`
    /// (simply-laced types use length 1 throughout).
    form2: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    /// `(α, α)` for each root, in the same units.
    lengths: Vec<i64>,
    positive: usize,
    index: HashMap<Vec<i64>, usize>,
    epsilon_simple: Option<Vec<Vec<i64>>>,
}

impl RootSystem {
    /// Builds the root system of `label`, Bourbaki numbering.
    ///
    /// Besides the standard range this accepts the small classical cases
    /// `A0`, `B1`, `C1`, `D2` which the classical cover families need.
    pub fn build(label: CartanLabel) -> Result<Self> {
        let r = label.rank;
        let unsupported = || Error::invalid(format!("unsupported root system {label}"));
        let classical =
            |simple: Vec<Vec<i64>>| -> Result<Self> { Self::from_epsilon_simples(label, simple) };
        match label.family {
            Family::A => classical((0..r).map(|i| unit_diff(r + 1, i, i + 1)).collect()),
            Family::B | Family::C if r >= 1 => {
                let mut simple: Vec<Vec<i64>> =
                    (0..r - 1).map(|i| unit_diff(r, i, i + 1)).collect();
                let mut last = vec![0; r];
                last[r - 1] = if label.family == Family::B { 1 } else { 2 };
                simple.push(last);
                classical(simple)
            }
            Family::D if r >= 2 => {
                let mut simple: Vec<Vec<i64>> =
                    (0..r - 1).map(|i| unit_diff(r, i, i + 1)).collect();
                let mut last = vec![0; r];
                last[r - 2] = 1;
                last[r - 1] = 1;
                simple.push(last);
                classical(simple)
            }
            Family::G if r == 2 => Self::from_cartan(label, vec![vec![2, -1], vec![-3, 2]], None),
            Family::F if r == 4 => Self::from_cartan(
                label,
                vec![
                    vec![2, -1, 0, 0],
                    vec![-1, 2, -2, 0],
                    vec![0, -1, 2, -1],
                    vec![0, 0, -1, 2],
                ],
                None,
            ),
            Family::E if (6..=8).contains(&r) => {
                // chain 1-3-4-5-..-r with node 2 attached to node 4
                let mut a = vec![vec![0i64; r]; r];
                for (i, row) in a.iter_mut().enumerate() {
                    row[i] = 2;
                }
                let mut link = |i: usize, j: usize| {
                    a[i - 1][j - 1] = -1;
                    a[j - 1][i - 1] = -1;
                };
                link(1, 3);
                link(2, 4);
                for i in 3..r {
                    link(i, i + 1);
                }
                Self::from_cartan(label, a, None)
            }
            _ => Err(unsupported()),
        }
    }

    fn from_epsilon_simples(label: CartanLabel, simple: Vec<Vec<i64>>) -> Result<Self> {
        let r = simple.len();
        let dot = |x: &[i64], y: &[i64]| -> i64 { x.iter().zip(y).map(|(a, b)| a * b).sum() };
        let cartan = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| 2 * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j]))
                    .collect()
            })
            .collect();
        Self::from_cartan(label, cartan, Some(simple))
    }

    fn from_cartan(
        label: CartanLabel,
        cartan: Vec<Vec<i64>>,
        epsilon_simple: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        let r = cartan.len();
        let lengths_simple = simple_lengths(&cartan)?;
        let form2: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| cartan[i][j] * lengths_simple[j]).collect())
            .collect();

        let positives = positive_roots(&cartan);
        let mut roots = positives.clone();
        roots.extend(
            positives
                .iter()
                .map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()),
        );
        let lengths: Vec<i64> = roots.iter().map(|v| quad(&form2, v) / 2).collect();
        let coroots = roots
            .iter()
            .zip(&lengths)
            .map(|(v, &len)| {
                v.iter()
                    .zip(&lengths_simple)
                    .map(|(c, d)| c * d / len)
                    .collect()
            })
            .collect();
        let index = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let rs = Self {
            label,
            cartan,
            form2,
            roots,
            coroots,
            lengths,
            positive: positives.len(),
            index,
            epsilon_simple,
        };
        if rs.roots.len() != label.root_count() {
            return Err(Error::internal(format!(
                "{label}: generated {} roots, expected {}",
                rs.roots.len(),
                label.root_count()
            )));
        }
        Ok(rs)
    }

    pub fn label(&self) -> CartanLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots in simple-root coordinates; positive roots first, ordered by height,
    /// followed by their negatives in the same order.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn num_positive(&self) -> usize {
        self.positive
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.positive
    }

    pub fn negative_of(&self, i: usize) -> usize {
        if i < self.positive {
            i + self.positive
        } else {
            i - self.positive
        }
    }

    /// Indices of the simple roots.
    pub fn simples(&self) -> Vec<usize> {
        (0..self.rank())
            .map(|i| {
                let mut e = vec![0; self.rank()];
                e[i] = 1;
                self.index[&e]
            })
            .collect()
    }

    pub fn find(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    /// `(α, α)`; the shortest roots have length 1.
    pub fn length(&self, i: usize) -> i64 {
        self.lengths[i]
    }

    pub fn is_short(&self, i: usize) -> bool {
        !self.label.family.is_simply_laced() && self.lengths[i] == 1
    }

    /// `⟨β, α∨⟩` for roots `β = roots[b]`, `α = roots[a]`.
    pub fn root_pairing(&self, b: usize, a: usize) -> i64 {
        let beta = &self.roots[b];
        let co = &self.coroots[a];
        (0..self.rank())
            .map(|i| {
                beta[i]
                    * (0..self.rank())
                        .map(|j| co[j] * self.cartan[i][j])
                        .sum::<i64>()
            })
            .sum()
    }

    /// `2(x, y)` for root-lattice vectors.
    pub fn form2(&self, x: &[i64], y: &[i64]) -> i64 {
        bilinear(&self.form2, x, y)
    }

    /// `⟨ν, α∨⟩` for `ν` in fundamental-weight coordinates.
    pub fn pairing(&self, nu: &[Rational], root: usize) -> Rational {
        nu.iter()
            .zip(&self.coroots[root])
            .map(|(x, &c)| x * c)
            .sum()
    }

    /// Half the sum of the positive roots, in simple-root coordinates.
    pub fn rho(&self) -> Vec<Rational> {
        half_sum(&self.roots[..self.positive], self.rank())
    }

    /// Half the sum of the positive coroots, in simple-coroot coordinates.
    pub fn rho_check(&self) -> Vec<Rational> {
        half_sum(&self.coroots[..self.positive], self.rank())
    }

    /// Fundamental weights in simple-root coordinates (rows of the inverse Cartan matrix).
    pub fn fundamental_weights(&self) -> Vec<Vec<Rational>> {
        invert(&self.cartan)
    }

    /// Order of the Weyl group, from the exponents read off the height distribution.
    pub fn weyl_order(&self) -> u128 {
        let max_height = (0..self.positive)
            .map(|i| self.height(i))
            .max()
            .unwrap_or(0);
        let counts: Vec<usize> = (1..=max_height)
            .map(|h| (0..self.positive).filter(|&i| self.height(i) == h).count())
            .collect();
        // exponents form the partition conjugate to the height counts
        let mut order: u128 = 1;
        for (h, w) in counts.iter().enumerate() {
            let next = counts.get(h + 1).copied().unwrap_or(0);
            for _ in 0..(w - next) {
                order *= (h as u128) + 2;
            }
        }
        order
    }

    /// Whether ε-coordinates are available (classical types).
    pub fn has_epsilon(&self) -> bool {
        self.epsilon_simple.is_some()
    }

    /// Dimension of the ε-space (`r + 1` for `A_r`, `r` otherwise).
    pub fn epsilon_dim(&self) -> Option<usize> {
        self.epsilon_simple
            .as_ref()
            .map(|s| s.first().map_or(self.label.rank + 1, Vec::len))
    }

    /// The root in ε-coordinates.
    pub fn root_epsilon(&self, i: usize) -> Option<Vec<i64>> {
        let simple = self.epsilon_simple.as_ref()?;
        Some(combine(simple, &self.roots[i], self.epsilon_dim()?))
    }

    /// The coroot `2α/(α,α)` in ε-coordinates.
    pub fn coroot_epsilon(&self, i: usize) -> Option<Vec<i64>> {
        let v = self.root_epsilon(i)?;
        let norm: i64 = v.iter().map(|x| x * x).sum();
        Some(v.iter().map(|x| 2 * x / norm).collect())
    }

    pub fn simple_coroot_epsilon(&self) -> Option<Vec<Vec<i64>>> {
        self.simples()
            .into_iter()
            .map(|i| self.coroot_epsilon(i))
            .collect()
    }

    /// All roots `α` with `⟨ν, α∨⟩ ∈ Z`.
    pub fn integral_subsystem(&self, nu: &[Rational]) -> SubsystemReport {
        let members: Vec<usize> = (0..self.roots.len())
            .filter(|&i| self.pairing(nu, i).is_integer())
            .collect();
        self.subsystem_report(members)
    }

    /// Simple system, components and labels of a closed subsystem given by member indices.
    pub fn subsystem_report(&self, members: Vec<usize>) -> SubsystemReport {
        let member_set: HashSet<usize> = members.iter().copied().collect();
        let positive: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&i| self.is_positive(i))
            .collect();
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&b| {
                !positive.iter().any(|&g| {
                    g != b
                        && self.height(g) < self.height(b)
                        && self
                            .find(&sub(&self.roots[b], &self.roots[g]))
                            .is_some_and(|d| member_set.contains(&d) && self.is_positive(d))
                })
            })
            .collect();

        let mut components = Vec::new();
        let mut seen = vec![false; simple.len()];
        for start in 0..simple.len() {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(i) = stack.pop() {
                comp.push(simple[i]);
                for j in 0..simple.len() {
                    if !seen[j] && self.root_pairing(simple[i], simple[j]) != 0 {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            let matrix: Vec<Vec<i64>> = comp
                .iter()
                .map(|&i| comp.iter().map(|&j| self.root_pairing(i, j)).collect())
                .collect();
            let cartan = classify_component(&matrix).expect("subsystem of a root system");
            let short = comp.iter().all(|&i| self.is_short(i));
            components.push(Component {
                label: ComponentLabel { cartan, short },
                simples: comp,
            });
        }
        components.sort_by(|a, b| b.label.cmp(&a.label).then(a.simples.cmp(&b.simples)));
        let mut label =
            SubsystemLabel::from_components(components.iter().map(|c| c.label).collect());
        label.prime = self.prime_marker(&simple, &label);
        SubsystemReport {
            members,
            simples: simple,
            components,
            label,
        }
    }
}

impl RootSystem {
    /// Whether the roots in the rational span of `simples` are exactly the
    /// subsystem they generate, i.e. the subsystem is conjugate to a Levi subsystem.
    pub fn is_rationally_closed(&self, simples: &[usize]) -> bool {
        let base: Vec<Vec<i64>> = simples.iter().map(|&i| self.roots[i].clone()).collect();
        let rk = rank(&base);
        let in_span = (0..self.roots.len())
            .filter(|&b| {
                let mut rows = base.clone();
                rows.push(self.roots[b].clone());
                rank(&rows) == rk
            })
            .count();
        let generated = self.subsystem_members(simples);
        in_span == generated
    }

    /// Number of roots in the subsystem generated by `simples` (closure under reflections).
    fn subsystem_members(&self, simples: &[usize]) -> usize {
        let mut seen: HashSet<usize> = simples.iter().copied().collect();
        let mut frontier: Vec<usize> = simples.to_vec();
        while let Some(b) = frontier.pop() {
            for &a in simples {
                let k = self.root_pairing(b, a);
                let image: Vec<i64> = self.roots[b]
                    .iter()
                    .zip(&self.roots[a])
                    .map(|(x, y)| x - k * y)
                    .collect();
                let idx = self.find(&image).expect("reflection of a root is a root");
                if seen.insert(idx) {
                    frontier.push(idx);
                }
            }
        }
        seen.len()
    }

    /// Roots orthogonal to every root in `simples`.
    pub fn orthogonal_complement(&self, simples: &[usize]) -> SubsystemReport {
        let members = (0..self.roots.len())
            .filter(|&b| simples.iter().all(|&a| self.root_pairing(b, a) == 0))
            .collect();
        self.subsystem_report(members)
    }

    /// Separates the two conjugacy classes of `3A1` and `4A1` in `E7` and of `4A1` in `E8`.
    ///
    /// `E7`: `(3A1)''` has a `D4` among the roots orthogonal to it; the Levi `4A1`
    /// is `(4A1)''`. `E8`: the Levi `4A1` is `(4A1)'`.
    fn prime_marker(&self, simples: &[usize], label: &SubsystemLabel) -> Option<Prime> {
        let all_a1 = label
            .components
            .iter()
            .all(|c| c.cartan == CartanLabel::new(Family::A, 1));
        if !all_a1 || self.label.family != Family::E {
            return None;
        }
        match (self.label.rank, label.components.len()) {
            (7, 3) => {
                let orth = self.orthogonal_complement(simples);
                let has_d4 = orth
                    .label
                    .components
                    .iter()
                    .any(|c| c.cartan == CartanLabel::new(Family::D, 4));
                Some(if has_d4 { Prime::Double } else { Prime::Single })
            }
            (7, 4) => Some(if self.is_rationally_closed(simples) {
                Prime::Double
            } else {
                Prime::Single
            }),
            (8, 4) => Some(if self.is_rationally_closed(simples) {
                Prime::Single
            } else {
                Prime::Double
            }),
            _ => None,
        }
    }
}

/// Irreducible component label with the short-root decoration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentLabel {
    pub cartan: CartanLabel,
    /// All roots short in a non-simply-laced ambient system (printed with `~`).
    pub short: bool,
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.short {
            f.write_str("~")?;
        }
        write!(f, "{}", self.cartan)
    }
}

/// Conjugacy-class marker used for some `kA1` subsystems of `E7` and `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prime {
    Single,
    Double,
}

/// Multiset of component labels, e.g. `A4+A3`, `2A2+~A1`, `(4A1)''`, `∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsystemLabel {
    /// Sorted largest first; repeated entries are repeated components.
    pub components: Vec<ComponentLabel>,
    pub prime: Option<Prime>,
}

impl SubsystemLabel {
    pub fn from_components(mut components: Vec<ComponentLabel>) -> Self {
        components.sort_by(|a, b| b.cmp(a));
        Self {
            components,
            prime: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Total rank.
    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.cartan.rank).sum()
    }

    /// Number of positive roots.
    pub fn positive_roots(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.cartan.root_count() / 2)
            .sum()
    }
}

impl fmt::Display for SubsystemLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        let mut groups: Vec<(ComponentLabel, usize)> = Vec::new();
        for &c in &self.components {
            match groups.last_mut() {
                Some((l, k)) if *l == c => *k += 1,
                _ => groups.push((c, 1)),
            }
        }
        let body = groups
            .iter()
            .map(|(l, k)| {
                if *k == 1 {
                    l.to_string()
                } else {
                    format!("{k}{l}")
                }
            })
            .collect::<Vec<_>>()
            .join("+");
        match self.prime {
            None => f.write_str(&body),
            Some(Prime::Single) => write!(f, "({body})'"),
            Some(Prime::Double) => write!(f, "({body})''"),
        }
    }
}

/// Parses labels such as `A4+A3`, `2A2 + ~A1`, `Ã2`, `(4A1)''`, `A2+A2+A1`, `0`, `∅`.
impl FromStr for SubsystemLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("bad subsystem label `{s}`"));
        let mut body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut prime = None;
        if body.starts_with('(') {
            let close = body.find(')').ok_or_else(bad)?;
            let marks = &body[close + 1..];
            prime = match marks {
                "'" => Some(Prime::Single),
                "''" => Some(Prime::Double),
                "" => None,
                _ => return Err(bad()),
            };
            body = body[1..close].to_string();
        }
        if body.is_empty() || body == "0" || body == "∅" || body == "{0}" {
            return Ok(Self {
                components: Vec::new(),
                prime,
            });
        }
        let mut components = Vec::new();
        for term in body.split('+') {
            let term = term.replace('Ã', "~A");
            let digits: String = term.chars().take_while(char::is_ascii_digit).collect();
            let count: usize = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| bad())?
            };
            let rest = &term[digits.len()..];
            let (short, rest) = match rest.strip_prefix('~') {
                Some(r) => (true, r),
                None => (false, rest),
            };
            let cartan: CartanLabel = rest.parse().map_err(|_| bad())?;
            components.extend(std::iter::repeat_n(ComponentLabel { cartan, short }, count));
        }
        let mut label = Self::from_components(components);
        label.prime = prime;
        Ok(label)
    }
}

impl Serialize for SubsystemLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub label: ComponentLabel,
    /// Indices (into the ambient root list) of this component's simple roots.
    pub simples: Vec<usize>,
}

impl Serialize for ComponentLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Result of an integral-subsystem computation.
#[derive(Clone, Debug, Serialize)]
pub struct SubsystemReport {
    /// Indices of all member roots (closed under negation).
    pub members: Vec<usize>,
    /// Indices of the chosen simple system.
    pub simples: Vec<usize>,
    pub components: Vec<Component>,
    pub label: SubsystemLabel,
}

/// Identifies an irreducible Cartan matrix `A_ij = ⟨α_i, α_j∨⟩`.
///
/// A rank-two matrix with a double bond is reported as `B2`.
#[allow(clippy::needless_range_loop)]
pub fn classify_component(matrix: &[Vec<i64>]) -> Result<CartanLabel> {
    let n = matrix.len();
    let not_cartan = |why: &str| Error::invalid(format!("not an irreducible Cartan matrix: {why}"));
    if n == 0 || matrix.iter().any(|row| row.len() != n) {
        return Err(not_cartan("shape"));
    }
    let mut bonds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut multiple = Vec::new();
    for i in 0..n {
        if matrix[i][i] != 2 {
            return Err(not_cartan("diagonal"));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (matrix[i][j], matrix[j][i]);
            if a > 0 || (a == 0) != (b == 0) {
                return Err(not_cartan("off-diagonal signs"));
            }
            if a != 0 {
                let m = a * b;
                if !(1..=3).contains(&m) {
                    return Err(not_cartan("bond"));
                }
                bonds[i].push(j);
                if m > 1 && i < j {
                    multiple.push((i, j, m));
                }
            }
        }
    }
    // connected and a tree
    let edges: usize = bonds.iter().map(Vec::len).sum::<usize>() / 2;
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in &bonds[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if seen.iter().any(|s| !s) || edges != n - 1 {
        return Err(not_cartan("diagram is not a connected tree"));
    }
    let label = |f, r| Ok(CartanLabel::new(f, r));
    if n == 1 {
        return label(Family::A, 1);
    }
    match multiple.as_slice() {
        [] => {
            let branches: Vec<usize> = (0..n).filter(|&i| bonds[i].len() >= 3).collect();
            match branches.as_slice() {
                [] => label(Family::A, n),
                [b] if bonds[*b].len() == 3 => {
                    let mut arms: Vec<usize> = bonds[*b]
                        .iter()
                        .map(|&s| arm_length(&bonds, *b, s))
                        .collect();
                    arms.sort_unstable();
                    match (arms[0], arms[1], arms[2]) {
                        (1, 1, k) => label(Family::D, k + 3),
                        (1, 2, 2) => label(Family::E, 6),
                        (1, 2, 3) => label(Family::E, 7),
                        (1, 2, 4) => label(Family::E, 8),
                        _ => Err(not_cartan("unknown simply-laced diagram")),
                    }
                }
                _ => Err(not_cartan("unknown simply-laced diagram")),
            }
        }
        [(_, _, 3)] if n == 2 => label(Family::G, 2),
        [(i, j, 2)] => {
            if n == 2 {
                return label(Family::B, 2);
            }
            let (i, j) = (*i, *j);
            let end_i = bonds[i].len() == 1;
            let end_j = bonds[j].len() == 1;
            if !end_i && !end_j {
                return if n == 4 {
                    label(Family::F, 4)
                } else {
                    Err(not_cartan("unknown diagram"))
                };
            }
            let (end, other) = if end_i { (i, j) } else { (j, i) };
            // |A_{end,other}| = 2 iff the end node is the long one
            if matrix[end][other] == -2 {
                label(Family::C, n)
            } else {
                label(Family::B, n)
            }
        }
        _ => Err(not_cartan("unknown diagram")),
    }
}

fn arm_length(bonds: &[Vec<usize>], from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = bonds[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [n] => {
                prev = cur;
                cur = *n;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Squared lengths of simple roots, scaled so the shortest in each component is 1.
fn simple_lengths(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let r = cartan.len();
    let mut len: Vec<Option<Rational>> = vec![None; r];
    for start in 0..r {
        if len[start].is_some() {
            continue;
        }
        len[start] = Some(Rational::from_integer(1));
        let mut stack = vec![start];
        let mut comp = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..r {
                if i != j && cartan[i][j] != 0 && len[j].is_none() {
                    // (α_j,α_j)/(α_i,α_i) = A_ji / A_ij
                    len[j] = Some(len[i].unwrap() * Rational::new(cartan[j][i], cartan[i][j]));
                    stack.push(j);
                    comp.push(j);
                }
            }
        }
        let min = comp.iter().map(|&i| len[i].unwrap()).min().unwrap();
        for &i in &comp {
            len[i] = Some(len[i].unwrap() / min);
        }
    }
    len.into_iter()
        .map(|l| {
            let l = l.unwrap();
            if l.is_integer() {
                Ok(l.to_integer())
            } else {
                Err(Error::internal("non-integral root length ratio"))
            }
        })
        .collect()
}

fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        })
        .collect();
    while !layer.is_empty() {
        layer.sort_unstable_by(|a, b| b.cmp(a));
        layer.dedup();
        for v in &layer {
            known.insert(v.clone());
        }
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                let pair: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.push(up);
                }
            }
        }
        all.append(&mut layer);
        layer = next;
    }
    all
}

fn unit_diff(dim: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v[j] = -1;
    v
}

fn combine(basis: &[Vec<i64>], coeffs: &[i64], dim: usize) -> Vec<i64> {
    let mut out = vec![0; dim];
    for (b, &c) in basis.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

fn sub(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn bilinear(m: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    (0..x.len())
        .map(|i| (0..y.len()).map(|j| x[i] * m[i][j] * y[j]).sum::<i64>())
        .sum()
}

fn quad(m: &[Vec<i64>], x: &[i64]) -> i64 {
    bilinear(m, x, x)
}

fn half_sum(vs: &[Vec<i64>], r: usize) -> Vec<Rational> {
    (0..r)
        .map(|i| Rational::new(vs.iter().map(|v| v[i]).sum(), 2))
        .collect()
}

/// Inverse of an integer matrix over the rationals.
fn rank(rows: &[Vec<i64>]) -> usize {
    let zero = Rational::from_integer(0);
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rk = 0;
    for c in 0..cols {
        let Some(p) = (rk..m.len()).find(|&i| m[i][c] != zero) else {
            continue;
        };
        m.swap(rk, p);
        let pivot_row = m[rk].clone();
        for row in m.iter_mut().skip(rk + 1) {
            if row[c] != zero {
                let f = row[c] / pivot_row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        rk += 1;
    }
    rk
}

fn invert(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x)).collect();
            r.extend((0..n).map(|j| Rational::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != Rational::from_integer(0))
            .expect("invertible");
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != Rational::from_integer(0) {
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}
