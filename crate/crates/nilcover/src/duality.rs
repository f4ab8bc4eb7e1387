//! Order-reversing dualities on classical nilpotent orbits.
//!
//! [`d_ls`] and [`d_bv`] are the transpose-collapse recipes. [`d_som`] extends
//! the Barbasch–Vogan map to pairs `(p1, p2)` coming from a pseudo-Levi
//! subalgebra of the dual Lie algebra, and [`sommers_pipeline`] produces that
//! pair from the integral subsystem of a cover's exceptional character.
//!
//! Conventions for `d_som`, with `t` the type of the orbit produced:
//!
//! | ambient | `t` | recipe |
//! |---|---|---|
//! | `C_r` | `B` | `(p1 ∪ (p2⁺)_B)^⊤_B`, `⁺` adds a box to the largest part |
//! | `B_r` | `C` | `(p1 ∪ (p2⁻)_C)^⊤_C`, `⁻` removes a box from the smallest part |
//! | `D_r` | `D` | `(p1 ∪ ((p2^⊤)_D)^⊤)^⊤_D` |
//! | `A_{r−1}` | `A` | `p2^⊤` |
//!
//! The smallest type `B` partition above `p2` is not unique in general, so the
//! `C_r` row reads `p2^B` as `(p2⁺)_B`. With `p1` empty every row is `d_bv`.

use serde::Serialize;

use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::partition::{ClassicalType, Partition};
use crate::roots::{CartanLabel, Family, RootSystem, SubsystemLabel};

/// `collapse(transpose(p), t)`.
pub fn d_ls(p: &Partition, t: ClassicalType) -> Result<Partition> {
    require_type(p, t)?;
    p.transpose().collapse(t)
}

/// `d_LS` followed by the passage to the Langlands dual type.
pub fn d_bv(p: &Partition, source: ClassicalType) -> Result<Partition> {
    require_type(p, source)?;
    let t = p.transpose();
    match source {
        ClassicalType::A => Ok(t),
        ClassicalType::B => t.remove_box().collapse(ClassicalType::C),
        ClassicalType::C => add_box_to_largest(&t).collapse(ClassicalType::B),
        ClassicalType::D => t.collapse(ClassicalType::D),
    }
}

fn add_box_to_largest(p: &Partition) -> Partition {
    let mut parts = p.parts().to_vec();
    match parts.first_mut() {
        Some(first) => *first += 1,
        None => parts.push(1),
    }
    Partition::new(parts)
}

fn require_type(p: &Partition, t: ClassicalType) -> Result<()> {
    if p.is_type_valid(t) && t.admits_size(p.size()) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "{p} is not a partition of type {t}"
        )))
    }
}

/// Whether `p` lies in the image of `d_LS` (closed-form test on `p^⊤`).
pub fn is_special(p: &Partition, t: ClassicalType) -> bool {
    let tr = p.transpose();
    match t {
        ClassicalType::A => true,
        ClassicalType::B => tr.is_type_valid(ClassicalType::B),
        ClassicalType::C | ClassicalType::D => tr.is_type_valid(ClassicalType::C),
    }
}

/// Regular orbit of a pseudo-Levi of the dual algebra, split as `p1 ∪ p2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudoLeviPair {
    /// Type of the ambient dual algebra.
    pub ambient: ClassicalType,
    /// `r` for `GL_r`, `B_r`, `C_r`, `D_r`.
    pub rank: usize,
    /// Regular orbit of the simple factor containing the lowest root, if any.
    pub p1: Partition,
    pub p2: Partition,
}

impl PseudoLeviPair {
    pub fn new(ambient: ClassicalType, rank: usize, p1: Partition, p2: Partition) -> Result<Self> {
        let pair = Self {
            ambient,
            rank,
            p1,
            p2,
        };
        let want = pair.ambient_size();
        let got = pair.p1.size() + pair.p2.size();
        if got != want {
            return Err(Error::invalid(format!(
                "pseudo-Levi parts have total size {got}, the ambient {ambient}{rank} needs {want}"
            )));
        }
        Ok(pair)
    }

    /// Size of the standard representation of the ambient algebra.
    pub fn ambient_size(&self) -> u32 {
        let r = self.rank as u32;
        match self.ambient {
            ClassicalType::A => r,
            ClassicalType::B => 2 * r + 1,
            ClassicalType::C | ClassicalType::D => 2 * r,
        }
    }

    /// Type of the orbit that [`d_som`] produces.
    pub fn target_type(&self) -> ClassicalType {
        self.ambient.dual()
    }
}

/// Sommers' duality; see the module docs for the conventions.
pub fn d_som(pair: &PseudoLeviPair) -> Result<Partition> {
    use ClassicalType::*;
    let PseudoLeviPair { p1, p2, .. } = pair;
    let out = match pair.ambient {
        A => {
            if !p1.is_empty() {
                return Err(Error::invalid("a type A pseudo-Levi has no p1 part"));
            }
            p2.transpose()
        }
        C => {
            let q = add_box_to_largest(p2).collapse(B)?;
            p1.union(&q).transpose().collapse(B)?
        }
        B => {
            let q = p2.remove_box().collapse(C)?;
            p1.union(&q).transpose().collapse(C)?
        }
        D => {
            let q = p2.transpose().collapse(D)?.transpose();
            p1.union(&q).transpose().collapse(D)?
        }
    };
    let t = pair.target_type();
    if !out.is_type_valid(t) {
        return Err(Error::internal(format!(
            "d_Som produced {out}, not of type {t}"
        )));
    }
    Ok(out)
}

/// Builds the pair from component labels alone.
///
/// Each `A_{k−1}` is a `GL_k` block contributing `(k, k)` (a single `k` in
/// type A); ambient coordinates not covered by any component count as `GL_1`
/// blocks. `rank` counts coordinates, so it is `r` for `GL_r`. Labels cannot
/// tell `D2`, `D3` apart from `2A1`, `A3`, so pairs from actual integral
/// subsystems should come from [`pseudo_levi_from_groups`].
pub fn pseudo_levi_from_components(
    components: &[CartanLabel],
    ambient: ClassicalType,
    rank: usize,
) -> Result<PseudoLeviPair> {
    let mut p1: Option<Vec<u32>> = None;
    let mut p2: Vec<u32> = Vec::new();
    let mut used = 0usize;
    let mut has_b = false;
    for c in components {
        let k = c.rank as u32;
        match (c.family, ambient) {
            (Family::A, ClassicalType::A) => {
                p2.push(k + 1);
                used += c.rank + 1;
            }
            (Family::A, _) => {
                p2.extend([k + 1, k + 1]);
                used += c.rank + 1;
            }
            (Family::C, ClassicalType::C) | (Family::D, ClassicalType::B | ClassicalType::D) => {
                if p1.is_some() {
                    return Err(Error::invalid("more than one non-A component"));
                }
                p1 = Some(if c.family == Family::C {
                    vec![2 * k]
                } else {
                    vec![2 * k - 1, 1]
                });
                used += c.rank;
            }
            (Family::B, ClassicalType::B) if !has_b => {
                has_b = true;
                p2.push(2 * k + 1);
                used += c.rank;
            }
            _ => {
                return Err(Error::invalid(format!(
                    "component {c} cannot occur in type {ambient}"
                )))
            }
        }
    }
    if used > rank {
        return Err(Error::invalid(format!(
            "components need {used} coordinates, only {rank} exist"
        )));
    }
    for _ in used..rank {
        if ambient == ClassicalType::A {
            p2.push(1);
        } else {
            p2.extend([1, 1]);
        }
    }
    if ambient == ClassicalType::B && !has_b {
        p2.push(1);
    }
    PseudoLeviPair::new(
        ambient,
        rank,
        Partition::new(p1.unwrap_or_default()),
        Partition::new(p2),
    )
}

/// Kind of an irreducible piece of a subsystem of a classical root system,
/// read off from the coordinates it involves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    /// Only `±(ε_i − ε_j)`-like roots, possibly after sign changes; `k = 1` is a bare coordinate.
    A,
    /// Contains a root supported on one coordinate, long (`2ε_i`).
    C,
    /// Contains a root supported on one coordinate, short (`ε_i`).
    B,
    /// All `±ε_i ± ε_j` on `k ≥ 2` coordinates.
    D,
}

/// A connected block of ε-coordinates and the subsystem type it carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateGroup {
    pub kind: GroupKind,
    pub coordinates: Vec<usize>,
}

impl CoordinateGroup {
    pub fn size(&self) -> usize {
        self.coordinates.len()
    }

    pub fn label(&self) -> Option<CartanLabel> {
        let k = self.size();
        Some(match self.kind {
            GroupKind::A if k >= 2 => CartanLabel::new(Family::A, k - 1),
            GroupKind::A => return None,
            GroupKind::B => CartanLabel::new(Family::B, k),
            GroupKind::C => CartanLabel::new(Family::C, k),
            GroupKind::D => CartanLabel::new(Family::D, k),
        })
    }
}

/// Groups the ε-coordinates of `vectors` (closed under negation) into
/// connected blocks and identifies each block's type.
///
/// `single_kind` is the kind assigned to blocks containing a vector with one
/// nonzero coordinate.
pub fn coordinate_groups(
    vectors: &[Vec<i64>],
    dim: usize,
    single_kind: GroupKind,
) -> Result<Vec<CoordinateGroup>> {
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for v in vectors {
        let support: Vec<usize> = (0..dim).filter(|&i| v[i] != 0).collect();
        if let Some((&first, rest)) = support.split_first() {
            for &i in rest {
                let (a, b) = (find(&mut parent, first), find(&mut parent, i));
                parent[a] = b;
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; dim];
    for i in 0..dim {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(b) => blocks[b].push(i),
            None => {
                root_of[r] = Some(blocks.len());
                blocks.push(vec![i]);
            }
        }
    }
    blocks
        .into_iter()
        .map(|coordinates| {
            let inside: Vec<&Vec<i64>> = vectors
                .iter()
                .filter(|v| coordinates.iter().any(|&i| v[i] != 0))
                .collect();
            let k = coordinates.len();
            let count = inside.len();
            let single = inside
                .iter()
                .any(|v| v.iter().filter(|&&x| x != 0).count() == 1);
            let kind = if single {
                single_kind
            } else if k >= 2 && count == 2 * k * (k - 1) {
                GroupKind::D
            } else if count == k * (k - 1) {
                GroupKind::A
            } else {
                return Err(Error::internal(format!(
                    "{count} roots on {k} coordinates fit no classical type"
                )));
            };
            Ok(CoordinateGroup { kind, coordinates })
        })
        .collect()
}

/// Turns coordinate groups of the dual algebra into a pair for [`d_som`].
///
/// The `p1` part is taken from the first `C` group (ambient `C`) or the first
/// `D` group (ambient `B` or `D`); further groups of that kind go to `p2`.
pub fn pseudo_levi_from_groups(
    groups: &[CoordinateGroup],
    ambient: ClassicalType,
    rank: usize,
) -> Result<PseudoLeviPair> {
    let mut p1: Option<Vec<u32>> = None;
    let mut p2: Vec<u32> = Vec::new();
    let mut has_b = false;
    for g in groups {
        let k = g.size() as u32;
        let regular: Vec<u32> = match (g.kind, ambient) {
            (GroupKind::A, ClassicalType::A) => vec![k],
            (GroupKind::A, _) => vec![k, k],
            (GroupKind::C, ClassicalType::C) => vec![2 * k],
            (GroupKind::D, ClassicalType::B | ClassicalType::D) => vec![2 * k - 1, 1],
            (GroupKind::B, ClassicalType::B) => {
                if has_b {
                    return Err(Error::internal("two type B blocks in a type B algebra"));
                }
                has_b = true;
                p2.push(2 * k + 1);
                continue;
            }
            (kind, _) => {
                return Err(Error::internal(format!(
                    "a {kind:?} block cannot occur in type {ambient}"
                )));
            }
        };
        if g.kind != GroupKind::A && p1.is_none() {
            p1 = Some(regular);
        } else {
            p2.extend(regular);
        }
    }
    if ambient == ClassicalType::B && !has_b {
        p2.push(1);
    }
    PseudoLeviPair::new(
        ambient,
        rank,
        Partition::new(p1.unwrap_or_default()),
        Partition::new(p2),
    )
}

/// Every intermediate of the duality pipeline for one cover.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineTrace {
    pub denominators: Vec<u32>,
    /// Integral subsystem of the cover's group.
    pub integral: SubsystemLabel,
    /// The same subsystem read as coroots, i.e. inside the dual algebra.
    pub groups: Vec<CoordinateGroup>,
    pub pair: PseudoLeviPair,
    pub orbit: Partition,
}

/// Exceptional character, integral coroots, pseudo-Levi pair, `d_som`.
pub fn sommers_pipeline(spec: &CoverSpec) -> Result<PipelineTrace> {
    let t = spec
        .group
        .classical_type()
        .ok_or_else(|| Error::invalid(format!("{} is not a classical group", spec.group)))?;
    let rs = spec.root_system()?;
    let character = spec.exceptional_character(&rs);
    let report = rs.integral_subsystem(&character.nu);
    let (groups, ambient, rank) = dual_groups(&rs, &report.members, t, spec.rank)?;
    let pair = pseudo_levi_from_groups(&groups, ambient, rank)?;
    let orbit = d_som(&pair)?;
    Ok(PipelineTrace {
        denominators: character.denominators,
        integral: report.label,
        groups,
        pair,
        orbit,
    })
}

fn dual_groups(
    rs: &RootSystem,
    members: &[usize],
    t: ClassicalType,
    rank: usize,
) -> Result<(Vec<CoordinateGroup>, ClassicalType, usize)> {
    let dim = rs
        .epsilon_dim()
        .ok_or_else(|| Error::internal("missing ε-coordinates"))?;
    let coroots: Vec<Vec<i64>> = members
        .iter()
        .map(|&i| rs.coroot_epsilon(i).expect("classical"))
        .collect();
    // a coroot on one coordinate is long in the dual of B and short in the dual of C
    let single = match t {
        ClassicalType::B => GroupKind::C,
        _ => GroupKind::B,
    };
    let groups = coordinate_groups(&coroots, dim, single)?;
    Ok((
        groups,
        t.dual(),
        if t == ClassicalType::A { dim } else { rank },
    ))
}
