//! Characters of `S_r` and the coefficient `c_O` for covers of `GL_r`.
//!
//! Class functions are stored on cycle types in the order of
//! [`partitions_of`]. Inner products are exact: `⟨f, g⟩ = Σ_c f(c) g(c) / z_c`.
//!
//! The permutation character `σ^X` comes from the twisted action
//! `w[y] = w(y − δ) + δ` on `Y / Y_{Q,n}` with `Y = Z^r` and the integral shift
//! `δ = (r − 1, …, 1, 0)`. A coset is identified by its signature
//! `s(y) = (B_Q(y, e_i) mod n)_i`, and since `B_Q` is `W`-invariant the action
//! on signatures is `x ↦ w·(x − s(δ)) + s(δ)` with `w` permuting coordinates.

use std::collections::HashMap;

use serde::Serialize;

use crate::cover::{CoverSpec, GroupForm, QNormalization};
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::partition::{partitions_of, Partition};
use crate::roots::Rational;

/// Largest rank accepted by the character engine.
pub const MAX_RANK: u32 = 12;
/// Largest quotient `Y / Y_{Q,n}` that will be enumerated.
pub const MAX_ELEMENTS: usize = 1_000_000;

fn check_rank(r: u32) -> Result<()> {
    if r == 0 || r > MAX_RANK {
        return Err(Error::invalid(format!("rank {r} outside 1..={MAX_RANK}")));
    }
    Ok(())
}

/// A rational-valued function on the cycle types of `S_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    r: u32,
    classes: Vec<Partition>,
    values: Vec<Rational>,
}

impl ClassFunction {
    pub fn from_fn(r: u32, mut f: impl FnMut(&Partition) -> Rational) -> Self {
        let classes = partitions_of(r);
        let values = classes.iter().map(&mut f).collect();
        Self { r, classes, values }
    }

    pub fn trivial(r: u32) -> Self {
        Self::from_fn(r, |_| Rational::from_integer(1))
    }

    pub fn sign(r: u32) -> Self {
        Self::from_fn(r, |c| Rational::from_integer(cycle_sign(c)))
    }

    pub fn rank(&self) -> u32 {
        self.r
    }

    pub fn value(&self, cycle_type: &Partition) -> Option<Rational> {
        self.classes
            .iter()
            .position(|c| c == cycle_type)
            .map(|i| self.values[i])
    }

    pub fn degree(&self) -> Rational {
        *self.values.last().expect("S_r has at least one class")
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, Rational)> {
        self.classes.iter().zip(self.values.iter().copied())
    }

    pub fn inner(&self, other: &Self) -> Rational {
        assert_eq!(self.r, other.r, "class functions on different groups");
        self.classes
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(c, (x, y))| x * y / Rational::from_integer(centralizer_order(c)))
            .sum()
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x * y)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, k: Rational) -> Self {
        Self {
            values: self.values.iter().map(|x| x * k).collect(),
            ..self.clone()
        }
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(Rational::is_integer)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Rational, Rational) -> Rational) -> Self {
        assert_eq!(self.r, other.r, "class functions on different groups");
        Self {
            r: self.r,
            classes: self.classes.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&x, &y)| f(x, y))
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct ClassValue<'a> {
    cycle_type: &'a Partition,
    value: String,
}

impl Serialize for ClassFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(|(c, v)| ClassValue {
            cycle_type: c,
            value: v.to_string(),
        }))
    }
}

fn factorial(k: u32) -> i64 {
    (1..=i64::from(k)).product()
}

/// `z_c = ∏ k^{m_k} m_k!`, the order of the centralizer of cycle type `c`.
pub fn centralizer_order(c: &Partition) -> i64 {
    c.multiplicities()
        .into_iter()
        .map(|(k, m)| i64::from(k).pow(m as u32) * factorial(m as u32))
        .product()
}

pub fn cycle_sign(c: &Partition) -> i64 {
    let odd = c.parts().iter().map(|&k| k - 1).sum::<u32>() % 2;
    if odd == 0 {
        1
    } else {
        -1
    }
}

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule on β-sets.
pub fn mn_value(lambda: &Partition, mu: &Partition) -> i64 {
    assert_eq!(lambda.size(), mu.size(), "χ^λ(μ) needs |λ| = |μ|");
    let len = lambda.len() as u32;
    let beta: Vec<u32> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i as u32)
        .collect();
    let mut memo = HashMap::new();
    strip(&beta, mu.parts(), &mut memo)
}

fn strip(beta: &[u32], hooks: &[u32], memo: &mut HashMap<(Vec<u32>, usize), i64>) -> i64 {
    let Some((&k, rest)) = hooks.split_first() else {
        return 1;
    };
    let key = (beta.to_vec(), hooks.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let Some(target) = b.checked_sub(k) else {
            continue;
        };
        if beta.contains(&target) {
            continue;
        }
        let crossed = beta.iter().filter(|&&x| target < x && x < b).count();
        let mut next = beta.to_vec();
        next[i] = target;
        let sign = if crossed % 2 == 0 { 1 } else { -1 };
        total += sign * strip(&normalize(next), rest, memo);
    }
    memo.insert(key, total);
    total
}

/// Sorts a β-set decreasingly and drops the trailing `0, 1, …` run of empty rows.
fn normalize(mut beta: Vec<u32>) -> Vec<u32> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    while beta.last() == Some(&0) {
        beta.pop();
        for x in &mut beta {
            *x -= 1;
        }
    }
    beta
}

/// The irreducible character `χ^λ`; `χ^{(r)}` is trivial and `χ^{(1^r)}` the sign.
pub fn mn_character(lambda: &Partition) -> ClassFunction {
    ClassFunction::from_fn(lambda.size(), |mu| {
        Rational::from_integer(mn_value(lambda, mu))
    })
}

/// A conjugacy class of the Young subgroup `S_λ = S_{λ_1} × S_{λ_2} × ⋯`.
#[derive(Clone, Debug)]
pub struct YoungClass {
    /// One cycle type per block of `λ`.
    pub blocks: Vec<Partition>,
    pub cycle_type: Partition,
    pub size: i64,
}

pub fn young_order(lambda: &Partition) -> i64 {
    lambda.parts().iter().map(|&k| factorial(k)).product()
}

pub fn young_classes(lambda: &Partition) -> Vec<YoungClass> {
    let mut out = vec![YoungClass {
        blocks: Vec::new(),
        cycle_type: Partition::empty(),
        size: 1,
    }];
    for &k in lambda.parts() {
        let block_classes = partitions_of(k);
        out = out
            .into_iter()
            .flat_map(|cls| {
                block_classes.iter().map(move |mu| {
                    let mut blocks = cls.blocks.clone();
                    blocks.push(mu.clone());
                    YoungClass {
                        cycle_type: cls.cycle_type.union(mu),
                        size: cls.size * factorial(k) / centralizer_order(mu),
                        blocks,
                    }
                })
            })
            .collect();
    }
    out
}

/// `Ind_{S_λ}^{S_r} ε`.
pub fn induced_sign(lambda: &Partition) -> ClassFunction {
    let order = young_order(lambda);
    let classes = young_classes(lambda);
    ClassFunction::from_fn(lambda.size(), |c| {
        let inside: i64 = classes
            .iter()
            .filter(|k| &k.cycle_type == c)
            .map(|k| k.size * cycle_sign(&k.cycle_type))
            .sum();
        Rational::new(inside * centralizer_order(c), order)
    })
}

/// `⟨ε, Res χ⟩` over the Young subgroup `S_λ`.
pub fn restricted_sign_pairing(lambda: &Partition, chi: &ClassFunction) -> Rational {
    let total: Rational = young_classes(lambda)
        .iter()
        .map(|k| {
            let v = chi.value(&k.cycle_type).expect("cycle type of S_r");
            v * Rational::from_integer(k.size * cycle_sign(&k.cycle_type))
        })
        .sum();
    total / Rational::from_integer(young_order(lambda))
}

/// Multiplicities `⟨f, χ^λ⟩` of the irreducible characters, nonzero ones only.
pub fn decompose(f: &ClassFunction) -> Vec<(Partition, Rational)> {
    partitions_of(f.rank())
        .into_iter()
        .filter_map(|lambda| {
            let m = f.inner(&mn_character(&lambda));
            (m != Rational::from_integer(0)).then_some((lambda, m))
        })
        .collect()
}

/// `j_{S_λ}^{S_r}(ε) = χ^{λ^⊤}`, the constituent of `Ind ε_λ` leading in dominance.
pub fn j_induce_sign(lambda: &Partition) -> ClassFunction {
    let chi = mn_character(&lambda.transpose());
    debug_assert_eq!(induced_sign(lambda).inner(&chi), Rational::from_integer(1));
    chi
}

/// `Y / Y_{Q,n}` for a cover of `GL_r`, as a set of signatures.
#[derive(Clone, Debug)]
pub struct QuotientActionSpace {
    r: usize,
    n: u32,
    elements: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    shift: Vec<i64>,
    shift_signature: Vec<u32>,
}

impl QuotientActionSpace {
    /// The quotient with the standard shift `δ = (r − 1, …, 0)`.
    pub fn new(spec: &CoverSpec) -> Result<Self> {
        let delta = (0..spec.rank as i64).rev().collect();
        Self::with_shift(spec, delta)
    }

    pub fn with_shift(spec: &CoverSpec, shift: Vec<i64>) -> Result<Self> {
        let QNormalization::GlForm { a, b } = spec.q else {
            return Err(Error::invalid("σ^X is implemented for covers of GL_r only"));
        };
        if spec.group != GroupForm::Gl {
            return Err(Error::invalid("σ^X is implemented for covers of GL_r only"));
        }
        let r = spec.rank;
        check_rank(r as u32)?;
        if shift.len() != r {
            return Err(Error::invalid(format!("shift vector needs {r} entries")));
        }
        let n = i64::from(spec.n);
        // B_Q(e_i, e_j) = (2a − b)·δ_ij + b
        let gram = |i: usize, j: usize| if i == j { 2 * a } else { b };
        let signature = |y: &[i64]| -> Vec<u32> {
            (0..r)
                .map(|i| (0..r).map(|j| y[j] * gram(j, i)).sum::<i64>().rem_euclid(n) as u32)
                .collect()
        };
        let generators: Vec<Vec<u32>> = (0..r)
            .map(|j| {
                let mut e = vec![0; r];
                e[j] = 1;
                signature(&e)
            })
            .collect();
        let zero = vec![0u32; r];
        let mut index = HashMap::from([(zero.clone(), 0)]);
        let mut elements = vec![zero];
        let mut next = 0;
        while next < elements.len() {
            let x = elements[next].clone();
            next += 1;
            for g in &generators {
                let y: Vec<u32> = x.iter().zip(g).map(|(p, q)| (p + q) % spec.n).collect();
                if !index.contains_key(&y) {
                    if elements.len() == MAX_ELEMENTS {
                        return Err(Error::invalid(format!(
                            "Y/Y_(Q,n) has more than {MAX_ELEMENTS} elements"
                        )));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let shift_signature = signature(&shift);
        let space = Self {
            r,
            n: spec.n,
            elements,
            index,
            shift,
            shift_signature,
        };
        space.check_action()?;
        Ok(space)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    /// `w[x]` for the permutation `w` given as `w[i] = w(i)`.
    pub fn act(&self, w: &[usize], x: &[u32]) -> Vec<u32> {
        let n = self.n;
        let d = &self.shift_signature;
        let mut out = vec![0; self.r];
        for i in 0..self.r {
            let moved = (x[i] + n - d[i]) % n;
            out[w[i]] = moved;
        }
        out.iter().zip(d).map(|(v, s)| (v + s) % n).collect()
    }

    /// Index of an element, if `x` is a signature in the quotient.
    pub fn position(&self, x: &[u32]) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Each simple transposition must permute the elements.
    fn check_action(&self) -> Result<()> {
        for k in 0..self.r.saturating_sub(1) {
            let mut w: Vec<usize> = (0..self.r).collect();
            w.swap(k, k + 1);
            let mut hit = vec![false; self.len()];
            for x in &self.elements {
                let j = self
                    .position(&self.act(&w, x))
                    .ok_or_else(|| Error::internal("twisted action leaves Y/Y_(Q,n)"))?;
                if std::mem::replace(&mut hit[j], true) {
                    return Err(Error::internal("twisted action is not injective"));
                }
            }
        }
        Ok(())
    }

    pub fn fixed_points(&self, w: &[usize]) -> usize {
        self.elements
            .iter()
            .filter(|x| &self.act(w, x) == *x)
            .count()
    }
}

/// A permutation of cycle type `c` built from consecutive cycles.
pub fn permutation_of_type(c: &Partition) -> Vec<usize> {
    let mut w = Vec::with_capacity(c.size() as usize);
    let mut start = 0;
    for &k in c.parts() {
        let k = k as usize;
        w.extend((1..k).map(|i| start + i));
        w.push(start);
        start += k;
    }
    w
}

/// The permutation character of the twisted action.
pub fn sigma_x_character(space: &QuotientActionSpace, mode: ExecMode) -> ClassFunction {
    let classes = partitions_of(space.r as u32);
    let counts = exec::map(mode, &classes, |c| {
        space.fixed_points(&permutation_of_type(c))
    });
    let mut counts = counts.into_iter();
    ClassFunction::from_fn(space.r as u32, |_| {
        Rational::from_integer(counts.next().unwrap() as i64)
    })
}

/// `dim Wh = ⟨ε, Res σ^X⟩` over `S_μ`, as an integer.
pub fn dim_wh(mu: &Partition, sigma: &ClassFunction) -> Result<i64> {
    let v = restricted_sign_pairing(mu, sigma);
    if !v.is_integer() {
        return Err(Error::internal(format!("⟨ε, σ^X⟩ over S_{mu} is {v}")));
    }
    Ok(v.to_integer())
}

#[derive(Clone, Debug, Serialize)]
pub struct DimEntry {
    pub mu: Partition,
    pub dim: i64,
}

/// Both sides of the identity for `c_O`, with the full `dim Wh` table.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientAudit {
    pub r: u32,
    pub n: u32,
    pub a: i64,
    pub b: i64,
    pub n_alpha: u32,
    pub quotient_size: usize,
    /// `(n_α^a b)`, the leading shape.
    pub lambda: Partition,
    /// `⟨ε, Res σ^X⟩` over `S_λ`.
    pub lhs: i64,
    /// `⟨χ^{λ^⊤}, σ^X⟩ = ⟨j(ε_{W_ν}), ε ⊗ σ^X⟩`.
    pub rhs: i64,
    pub c: i64,
    pub dim_table: Vec<DimEntry>,
}

/// `c_O` for a cover of `GL_r`. A disagreement between the two sides is an
/// internal error.
pub fn c_coefficient(spec: &CoverSpec, mode: ExecMode) -> Result<CoefficientAudit> {
    let QNormalization::GlForm { a, b } = spec.q else {
        return Err(Error::invalid("c_O is implemented for covers of GL_r only"));
    };
    if spec.inv_bd() == 0 {
        return Err(Error::invalid("Q(α∨) = 2a − b must be nonzero"));
    }
    let r = spec.rank as u32;
    let n_alpha = spec.n_alpha_uniform();
    let space = QuotientActionSpace::new(spec)?;
    let sigma = sigma_x_character(&space, mode);
    let lambda = Partition::rectangular(n_alpha, r);

    let rhs = j_induce_sign(&lambda).inner(&sigma);
    if !rhs.is_integer() {
        return Err(Error::internal(format!(
            "⟨χ, σ^X⟩ = {rhs} is not an integer"
        )));
    }
    let rhs = rhs.to_integer();
    let mus = partitions_of(r);
    let dims = exec::try_map(mode, &mus, |mu| dim_wh(mu, &sigma))?;
    let dim_table: Vec<DimEntry> = mus
        .into_iter()
        .zip(dims)
        .map(|(mu, dim)| DimEntry { mu, dim })
        .collect();
    let lhs = dim_table
        .iter()
        .find(|e| e.mu == lambda)
        .expect("λ ⊢ r")
        .dim;
    if lhs != rhs {
        return Err(Error::internal(format!(
            "c_O sides disagree for {spec}: restricted sum {lhs}, character pairing {rhs}"
        )));
    }
    Ok(CoefficientAudit {
        r,
        n: spec.n,
        a,
        b,
        n_alpha,
        quotient_size: space.len(),
        lambda,
        lhs,
        rhs,
        c: lhs,
        dim_table,
    })
}
