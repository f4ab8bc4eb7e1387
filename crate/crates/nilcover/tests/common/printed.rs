//! The explicit case formulas, transcribed clause by clause.
#![allow(dead_code)]

use nilcover::cover::{CoverSpec, GroupForm};
use nilcover::partition::Partition;

fn build(blocks: &[(u32, u32)]) -> Partition {
    Partition::new(
        blocks
            .iter()
            .flat_map(|&(part, times)| std::iter::repeat_n(part, times as usize))
            .collect(),
    )
}

/// Orbit for `Spin_{2r+1}` of degree `n`, with `r = na + b`.
pub fn spin_odd(r: u32, n: u32) -> Partition {
    let (a, b) = (r / n, r % n);
    let m = n / 2;
    if n % 2 == 1 {
        if b <= m {
            build(&[(n, 2 * a), (2 * b + 1, 1)])
        } else {
            build(&[(n, 2 * a + 1), (2 * b + 1 - n, 1)])
        }
    } else if b < m {
        build(&[(n, 2 * a), (2 * b + 1, 1)])
    } else {
        build(&[(n, 2 * a), (n - 1, 1), (2 * b + 1 - n, 1), (1, 1)])
    }
}

/// Orbit for `Spin_{2r}` of degree `n`, with `r − 1 = na + b`; `None`
/// where a clause would need a negative exponent.
pub fn spin_even(r: u32, n: u32) -> Option<Partition> {
    let (a, b) = ((r - 1) / n, (r - 1) % n);
    let m = n / 2;
    Some(if n % 2 == 1 {
        if b <= m {
            build(&[(n, 2 * a), (2 * b + 1, 1), (1, 1)])
        } else {
            build(&[(n, 2 * a + 1), (2 * b + 2 - n, 1)])
        }
    } else if b < m {
        if a == 0 {
            return None;
        }
        build(&[
            (n + 1, 1),
            (n, 2 * a - 2),
            (n - 1, 1),
            (2 * b + 1, 1),
            (1, 1),
        ])
    } else {
        build(&[(n + 1, 1), (n, 2 * a), (2 * b + 1 - n, 1)])
    })
}

/// The three symplectic families, keyed on `n`.
pub fn sp(r: u32, n: u32) -> Option<Partition> {
    let size = 2 * r;
    Some(if n % 2 == 1 {
        let (a, b) = (size / n, size % n);
        if a % 2 == 0 {
            build(&[(n, a), (b, 1)])
        } else {
            build(&[(n, a - 1), (n - 1, 1), (b + 1, 1)])
        }
    } else if n % 4 == 2 {
        let k = n / 2;
        let rest = size.checked_sub(k + 1)?;
        let (a, b) = (rest / k, rest % k);
        if a % 2 == 0 {
            build(&[(k + 1, 1), (k, a), (b, 1)])
        } else {
            build(&[(k + 1, 1), (k, a - 1), (k - 1, 1), (b + 1, 1)])
        }
    } else {
        let half = n / 2;
        build(&[(half, size / half), (size % half, 1)])
    })
}

pub fn gl(r: u32, n: u32) -> Partition {
    build(&[(n, r / n), (r % n, 1)])
}

/// The printed orbit for a cover at its default normalization, when a clause applies.
pub fn for_cover(spec: &CoverSpec) -> Option<Partition> {
    let r = spec.rank as u32;
    let n_alpha = spec.n_alpha_uniform();
    match spec.group {
        GroupForm::Gl => Some(gl(r, n_alpha)),
        GroupForm::SoOdd => Some(spin_odd(r, n_alpha)),
        GroupForm::SoEven => spin_even(r, n_alpha),
        GroupForm::Sp => sp(r, spec.n),
        _ => None,
    }
}
