//! Integer partitions and the classical-type parity operations on them.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Zero parts are never stored, so `(n^a b)` with `b = 0` is simply `(n^a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
    size: u32,
}

/// Classical Lie type, as far as partition parity rules are concerned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalType {
    A,
    B,
    C,
    D,
}

impl ClassicalType {
    /// The Langlands dual family.
    pub fn dual(self) -> Self {
        match self {
            Self::B => Self::C,
            Self::C => Self::B,
            t => t,
        }
    }

    /// Parity of parts that must occur with even multiplicity, if any.
    fn constrained_parity(self) -> Option<u32> {
        match self {
            Self::A => None,
            Self::B | Self::D => Some(0),
            Self::C => Some(1),
        }
    }

    /// Whether a partition of `size` can be valid for this type at all.
    pub fn admits_size(self, size: u32) -> bool {
        match self {
            Self::A => true,
            Self::B => size % 2 == 1,
            Self::C | Self::D => size.is_multiple_of(2),
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for ClassicalType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            _ => Err(Error::invalid(format!("unknown classical type `{s}`"))),
        }
    }
}

impl Partition {
    /// Builds a partition from parts in any order; zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size = parts.iter().sum();
        Self { parts, size }
    }

    /// Builds a partition, rejecting input that is not weakly decreasing and positive.
    pub fn from_descending(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("partition parts must be weakly decreasing"));
        }
        Ok(Self::new(parts))
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `(k^a b)` where `size = a·k + b` and `0 ≤ b < k`.
    pub fn rectangular(k: u32, size: u32) -> Self {
        assert!(k > 0, "block width must be positive");
        let mut parts = vec![k; (size / k) as usize];
        parts.push(size % k);
        Self::new(parts)
    }

    /// Partition with `count` copies of `part`.
    pub fn repeated(part: u32, count: usize) -> Self {
        Self::new(vec![part; count])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Run-length view, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let width = self.largest().unwrap_or(0);
        let parts = (0..width)
            .map(|i| self.parts.iter().filter(|&&p| p > i).count() as u32)
            .collect();
        Self::new(parts)
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::new(parts)
    }

    /// Prefix sums, padded with the total once parts run out.
    fn prefix_sum(&self, len: usize) -> impl Iterator<Item = u32> + '_ {
        let mut acc = 0;
        (0..len).map(move |i| {
            acc += self.parts.get(i).copied().unwrap_or(0);
            acc
        })
    }

    /// Dominance order. For partitions of different sizes this compares
    /// padded prefix sums over the longer length.
    pub fn dominates(&self, other: &Self) -> bool {
        let len = self.len().max(other.len());
        self.prefix_sum(len)
            .zip(other.prefix_sum(len))
            .all(|(a, b)| a >= b)
    }

    /// Dominance as a partial order.
    pub fn dominance_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.dominates(other), other.dominates(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            (false, false) => None,
        }
    }

    /// Parity rule only, ignoring size.
    pub fn is_type_valid(&self, t: ClassicalType) -> bool {
        match t.constrained_parity() {
            None => true,
            Some(parity) => self
                .multiplicities()
                .iter()
                .all(|&(p, m)| p % 2 != parity || m % 2 == 0),
        }
    }

    /// Whether this labels a nilpotent orbit of type `t` in an ambient space of `ambient_size`.
    pub fn is_valid(&self, t: ClassicalType, ambient_size: u32) -> bool {
        self.size == ambient_size && self.is_type_valid(t)
    }

    fn check_parity(&self, t: ClassicalType) -> Result<()> {
        if t.admits_size(self.size) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "size {} has the wrong parity for type {t}",
                self.size
            )))
        }
    }

    /// Largest partition of type `t` dominated by `self`.
    pub fn collapse(&self, t: ClassicalType) -> Result<Self> {
        self.check_parity(t)?;
        let Some(parity) = t.constrained_parity() else {
            return Ok(self.clone());
        };
        let mut parts = self.parts.clone();
        while let Some(q) = largest_bad_part(&parts, parity) {
            // lower the last q, raise the first part below q - 1
            let last = parts.iter().rposition(|&p| p == q).expect("part present");
            parts[last] -= 1;
            parts.push(0);
            let target = (last + 1..parts.len())
                .find(|&i| parts[i] + 1 < q)
                .expect("a trailing zero always qualifies");
            parts[target] += 1;
            parts.retain(|&p| p > 0);
            parts.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(Self::new(parts))
    }

    /// Smallest partition of type `t` dominating `self`.
    ///
    /// Unlike the collapse, this need not exist: `(4,2,2,1)` lies below both
    /// `(5,2,2)` and `(4,4,1)` among type `B` partitions, and nothing of type
    /// `D` dominates `(2)`. Both situations are validation errors.
    pub fn expansion(&self, t: ClassicalType) -> Result<Self> {
        let minimal = self.minimal_expansions(t)?;
        match minimal.as_slice() {
            [only] => Ok(only.clone()),
            [] => Err(Error::invalid(format!(
                "no partition of type {t} dominates {self}"
            ))),
            several => {
                let list: Vec<String> = several.iter().map(ToString::to_string).collect();
                Err(Error::invalid(format!(
                    "{self} has no smallest type {t} partition above it; minimal ones: {}",
                    list.join(" ")
                )))
            }
        }
    }

    /// Minimal partitions of type `t` dominating `self`, found by climbing
    /// single-box moves and stopping at the first valid partition on each path.
    pub fn minimal_expansions(&self, t: ClassicalType) -> Result<Vec<Self>> {
        self.check_parity(t)?;
        if self.is_type_valid(t) {
            return Ok(vec![self.clone()]);
        }
        let mut seen: HashSet<Vec<u32>> = HashSet::from([self.parts.clone()]);
        let mut frontier = vec![self.parts.clone()];
        let mut valid: Vec<Self> = Vec::new();
        while let Some(parts) = frontier.pop() {
            for next in raise_one_box(&parts) {
                if !seen.insert(next.clone()) {
                    continue;
                }
                let q = Self::new(next.clone());
                if q.is_type_valid(t) {
                    valid.push(q);
                } else {
                    frontier.push(next);
                }
            }
        }
        let minimal: Vec<Self> = valid
            .iter()
            .filter(|v| !valid.iter().any(|w| w != *v && v.dominates(w)))
            .cloned()
            .collect();
        Ok(minimal)
    }

    /// Sum of multiplicities of parts larger than `part` whose difference with
    /// `part` is odd.
    pub fn frak_a(&self, part: u32) -> Result<u32> {
        self.require_part(part)?;
        Ok(self.opposite_parity_count(part, |p| p > part))
    }

    /// Sum of multiplicities of parts smaller than `part` whose difference
    /// with `part` is odd.
    pub fn frak_b(&self, part: u32) -> Result<u32> {
        self.require_part(part)?;
        Ok(self.opposite_parity_count(part, |p| p < part))
    }

    fn opposite_parity_count(&self, part: u32, side: impl Fn(u32) -> bool) -> u32 {
        self.parts
            .iter()
            .filter(|&&p| side(p) && (p + part) % 2 == 1)
            .count() as u32
    }

    fn require_part(&self, part: u32) -> Result<()> {
        if self.parts.contains(&part) {
            Ok(())
        } else {
            Err(Error::invalid(format!("{part} is not a part of {self}")))
        }
    }

    /// Subtract one from the smallest part.
    pub fn remove_box(&self) -> Self {
        let mut parts = self.parts.clone();
        if let Some(last) = parts.last_mut() {
            *last -= 1;
        }
        Self::new(parts)
    }
}

/// Every partition obtained by moving one box to a higher row.
fn raise_one_box(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..parts.len() {
        if i > 0 && parts[i] == parts[i - 1] {
            continue;
        }
        for j in i + 1..parts.len() {
            if parts.get(j + 1) == Some(&parts[j]) {
                continue;
            }
            let mut next = parts.to_vec();
            next[i] += 1;
            next[j] -= 1;
            if next[j] == 0 {
                next.pop();
            }
            out.push(next);
        }
    }
    out
}

/// Largest part of the constrained parity that occurs an odd number of times.
fn largest_bad_part(parts: &[u32], parity: u32) -> Option<u32> {
    let mut i = 0;
    while i < parts.len() {
        let q = parts[i];
        let run = parts[i..].iter().take_while(|&&p| p == q).count();
        if q % 2 == parity && run % 2 == 1 {
            return Some(q);
        }
        i += run;
    }
    None
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::new(prefix.clone()));
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            prefix.push(k);
            go(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Self::from_descending(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Parses `"3,3,1"` (or `"(3,3,1)"`); the empty string is the empty partition.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if body.is_empty() {
            return Ok(Self::empty());
        }
        let parts = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("bad partition part `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_descending(parts)
    }
}
