//! Exhaustive checks of the partition dualities, reporting failures as text.
#![allow(dead_code)]

use nilcover::duality::{d_ls, is_special};
use nilcover::partition::{partitions_of, ClassicalType, Partition};

use ClassicalType::{A, B, C, D};

#[derive(Debug, Default)]
pub struct Report {
    pub checked: usize,
    pub failures: Vec<String>,
    /// Partitions with more than one minimal expansion.
    pub ambiguous: usize,
}

impl Report {
    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

fn sorted(mut v: Vec<Partition>) -> Vec<Partition> {
    v.sort_by(|x, y| x.parts().cmp(y.parts()));
    v
}

pub fn orbits(t: ClassicalType, size: u32) -> Vec<Partition> {
    partitions_of(size)
        .into_iter()
        .filter(|q| q.is_type_valid(t))
        .collect()
}

pub fn types_for(size: u32) -> Vec<ClassicalType> {
    [A, B, C, D]
        .into_iter()
        .filter(|t| t.admits_size(size))
        .collect()
}

/// Collapse is the largest valid partition below, and the minimal expansions
/// are exactly the minimal valid partitions above, for types B, C, D.
pub fn collapse_and_expansion(max_size: u32) -> Report {
    let mut report = Report::default();
    for size in 0..=max_size {
        let all = partitions_of(size);
        for t in [B, C, D] {
            if !t.admits_size(size) {
                if let Some(q) = all.iter().find(|q| q.collapse(t).is_ok()) {
                    report.fail(format!(
                        "{t}-collapse of {q} exists for an inadmissible size"
                    ));
                }
                continue;
            }
            let valid: Vec<&Partition> = all.iter().filter(|q| q.is_type_valid(t)).collect();
            for q in &all {
                report.checked += 1;
                let below: Vec<&Partition> =
                    valid.iter().copied().filter(|v| q.dominates(v)).collect();
                let above: Vec<&Partition> =
                    valid.iter().copied().filter(|v| v.dominates(q)).collect();
                match q.collapse(t) {
                    Ok(c) if below.contains(&&c) && below.iter().all(|v| c.dominates(v)) => {}
                    other => report.fail(format!("{t}-collapse of {q}: {other:?}")),
                }
                let minimal = sorted(
                    above
                        .iter()
                        .filter(|v| !above.iter().any(|w| w != *v && v.dominates(w)))
                        .map(|v| (*v).clone())
                        .collect(),
                );
                if minimal.len() > 1 {
                    report.ambiguous += 1;
                }
                match q.minimal_expansions(t) {
                    Ok(found) if sorted(found.clone()) == minimal => {}
                    other => report.fail(format!(
                        "minimal {t}-expansions of {q}: {other:?}, expected {minimal:?}"
                    )),
                }
                match (q.expansion(t), minimal.as_slice()) {
                    (Ok(e), [only]) if &e == only => {}
                    (Err(_), m) if m.len() != 1 => {}
                    (got, _) => report.fail(format!("{t}-expansion of {q}: {got:?}")),
                }
            }
        }
    }
    report
}

pub fn transpose_involution(max_size: u32) -> Report {
    let mut report = Report::default();
    for size in 0..=max_size {
        for q in partitions_of(size) {
            report.checked += 1;
            let t = q.transpose();
            if t.size() != size || t.transpose() != q {
                report.fail(format!("transpose of {q}"));
            }
        }
    }
    report
}

/// `d_LS` lands in special orbits, satisfies `d³ = d` and reverses dominance.
pub fn d_ls_properties(max_size: u32) -> Report {
    let mut report = Report::default();
    for size in 1..=max_size {
        for t in types_for(size) {
            let os = orbits(t, size);
            let images: Vec<Partition> = match os.iter().map(|o| d_ls(o, t)).collect() {
                Ok(v) => v,
                Err(e) => {
                    report.fail(format!("d_LS in type {t}, size {size}: {e}"));
                    continue;
                }
            };
            for (o, d) in os.iter().zip(&images) {
                report.checked += 1;
                if !is_special(d, t) {
                    report.fail(format!("d_LS({o}) = {d} is not special in type {t}"));
                }
                match d_ls(d, t).and_then(|e| d_ls(&e, t)) {
                    Ok(d3) if &d3 == d => {}
                    other => report.fail(format!("d³ ≠ d for {o} in type {t}: {other:?}")),
                }
            }
            for i in 0..os.len() {
                for j in 0..os.len() {
                    if os[i].dominates(&os[j]) && !images[j].dominates(&images[i]) {
                        report.fail(format!("type {t}: {} ≥ {} is not reversed", os[i], os[j]));
                    }
                }
            }
        }
    }
    report
}
