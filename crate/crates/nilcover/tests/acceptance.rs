//! One PASS/FAIL line per acceptance criterion, written straight to stderr so
//! it shows up in the test log even when the test passes.

use std::io::Write;
use std::time::{Duration, Instant};

use nilcover::admissibility::{classify_classical, splits, splits_by_cases, BdPair, Raisability};
use nilcover::audit::{audit_orbit_table, audit_theta_table};
use nilcover::characters::c_coefficient;
use nilcover::cover::{CoverSpec, GroupForm};
use nilcover::data::Tables;
use nilcover::duality::sommers_pipeline;
use nilcover::exec::ExecMode;
use nilcover::partition::Partition;
use nilcover::theta::{check_theta_orbits, theta_orbit, OrbitName};

#[path = "common/oracles.rs"]
mod oracles;
#[path = "common/printed.rs"]
mod printed;

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

/// Runs `check`, prints the verdict line and fails the test on any failure
/// or on exceeding the time budget.
fn criterion(number: u32, title: &str, budget: Duration, check: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let mut failures = outcome.failures;
    if elapsed > budget {
        failures.push(format!("took {elapsed:.2?}, budget {budget:?}"));
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let line = format!(
        "[acceptance] criterion {number} {status}: {title}; {} ({elapsed:.2?})\n",
        outcome.summary
    );
    std::io::stderr().lock().write_all(line.as_bytes()).unwrap();
    assert!(failures.is_empty(), "criterion {number}: {failures:#?}");
}

fn tables() -> Tables {
    Tables::embedded().unwrap()
}

fn gate_specs() -> Vec<CoverSpec> {
    let mut out = Vec::new();
    for group in [
        GroupForm::Gl,
        GroupForm::SoOdd,
        GroupForm::Sp,
        GroupForm::SoEven,
    ] {
        for rank in 1..=12 {
            for n in 1..=10 {
                if let Ok(s) = CoverSpec::new(group, rank, n) {
                    if s.is_persistent() {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn criterion_1_exceptional_orbit_tables() {
    criterion(
        1,
        "exceptional orbit tables re-derived for n <= 60",
        Duration::from_secs(5),
        || {
            let t = tables();
            let audits: Vec<_> = GroupForm::EXCEPTIONAL
                .into_iter()
                .flat_map(|g| audit_orbit_table(&t, g, 60))
                .collect();
            let failures = audits
                .iter()
                .filter(|a| !a.ok())
                .map(|a| format!("{} {}", a.group, a.orbit))
                .collect();
            let with_raising = audits
                .iter()
                .filter(|a| a.raisable_derived.is_some())
                .count();
            Outcome {
                failures,
                summary: format!("{} rows, {with_raising} with raising data", audits.len()),
            }
        },
    );
}

#[test]
fn criterion_2_theta_subsystems() {
    criterion(
        2,
        "integral subsystems of exceptional characters for n <= 60",
        Duration::from_secs(60),
        || {
            let t = tables();
            let mut cells = 0;
            let mut failures = Vec::new();
            let mut errata = 0;
            for g in GroupForm::EXCEPTIONAL {
                for cell in audit_theta_table(&t, g, 60).unwrap() {
                    cells += 1;
                    if !cell.matches {
                        errata += usize::from(cell.matches_erratum);
                        failures.push(format!(
                            "{g} n={}: printed {} computed {}",
                            cell.n, cell.printed, cell.computed
                        ));
                    }
                }
            }
            Outcome {
            summary: format!(
                "{cells} cells, {} differ from the printed list ({errata} of them match a recorded erratum)",
                failures.len()
            ),
            failures,
        }
        },
    );
}

#[test]
fn criterion_3_closed_forms_against_the_pipeline() {
    criterion(
        3,
        "classical theta orbits: closed form, pipeline and printed cases",
        Duration::from_secs(30),
        || {
            let specs = gate_specs();
            let mut failures = Vec::new();
            let (mut verbatim, mut uncovered, mut invalid_clause) = (0, 0, 0);
            for s in &specs {
                let result = theta_orbit(s).unwrap();
                let OrbitName::Partition(orbit) = &result.orbit else {
                    unreachable!()
                };
                let piped = sommers_pipeline(s).unwrap().orbit;
                if !result.via_closed_form || &piped != orbit {
                    failures.push(format!("{s}: closed form {orbit}, pipeline {piped}"));
                }
                match printed::for_cover(s) {
                    None => uncovered += 1,
                    Some(text) if &text == orbit => verbatim += 1,
                    Some(text) => {
                        let t = s.group.classical_type().unwrap();
                        if !text.is_type_valid(t) {
                            invalid_clause += 1;
                        }
                        failures.push(format!("{s}: printed case {text}, computed {orbit}"));
                    }
                }
            }
            for (s, expected) in [
                (CoverSpec::new(GroupForm::SoOdd, 4, 3).unwrap(), "3,3,3"),
                (CoverSpec::new(GroupForm::Sp, 3, 3).unwrap(), "3,3"),
                (CoverSpec::new(GroupForm::Gl, 7, 3).unwrap(), "3,3,1"),
            ] {
                let expected: Partition = expected.parse().unwrap();
                if theta_orbit(&s).unwrap().orbit != OrbitName::Partition(expected.clone()) {
                    failures.push(format!("{s}: expected {expected}"));
                }
            }
            Outcome {
                summary: format!(
                "{} covers agree with the pipeline; {verbatim} match the printed case verbatim, \
                 {invalid_clause} differ where the printed case is not a valid orbit, \
                 {uncovered} outside the printed clauses",
                specs.len()
            ),
                failures,
            }
        },
    );
}

#[test]
fn criterion_4_theta_orbits_are_quasi_admissible() {
    criterion(
        4,
        "theta orbits are quasi-admissible and not raisable",
        Duration::from_secs(30),
        || {
            let mut specs = gate_specs();
            for g in GroupForm::EXCEPTIONAL {
                specs.extend(
                    (1..=60).map(|n| CoverSpec::new(g, g.fixed_rank().unwrap(), n).unwrap()),
                );
            }
            let checks = check_theta_orbits(&specs, ExecMode::default()).unwrap();
            let failures = checks
                .iter()
                .filter(|c| c.passed != Some(true))
                .map(|c| format!("{}: {} {:?}", c.spec, c.result.orbit, c.result.verdict))
                .collect();
            Outcome {
                summary: format!("{} theta orbits classified", checks.len()),
                failures,
            }
        },
    );
}

#[test]
fn criterion_5_partition_duality_oracles() {
    criterion(
        5,
        "collapse, expansion, transpose and d_LS against brute force",
        Duration::from_secs(60),
        || {
            let collapse = oracles::collapse_and_expansion(20);
            let transpose = oracles::transpose_involution(30);
            let dls = oracles::d_ls_properties(16);
            let summary = format!(
            "{} collapse/expansion cases ({} with several minimal expansions), {} transposes, {} d_LS images",
            collapse.checked, collapse.ambiguous, transpose.checked, dls.checked
        );
            Outcome {
                failures: [collapse.failures, transpose.failures, dls.failures].concat(),
                summary,
            }
        },
    );
}

#[test]
fn criterion_6_gl_coefficient_identity() {
    criterion(
        6,
        "both sides of the c_O identity for GL_r",
        Duration::from_secs(120),
        || {
            let forms = [
                (0, 1),
                (1, 1),
                (0, -1),
                (-1, -1),
                (1, 3),
                (2, 3),
                (-1, -3),
                (-2, -3),
            ];
            let mut failures = Vec::new();
            let mut cases = 0;
            let mut vanishing = 0;
            for r in 1..=6 {
                for n in 1..=4 {
                    for (a, b) in forms {
                        cases += 1;
                        let spec = CoverSpec::new(GroupForm::Gl, r, n)
                            .unwrap()
                            .with_gl_form(a, b)
                            .unwrap();
                        let audit = match c_coefficient(&spec, ExecMode::default()) {
                            Ok(audit) => audit,
                            Err(e) => {
                                failures.push(format!("{spec}: {e}"));
                                continue;
                            }
                        };
                        for e in audit
                            .dim_table
                            .iter()
                            .filter(|e| e.mu.largest() > Some(audit.n_alpha))
                        {
                            vanishing += 1;
                            if e.dim != 0 {
                                failures.push(format!("{spec}: dim Wh for {} is {}", e.mu, e.dim));
                            }
                        }
                        if n == 1 && audit.c != 1 {
                            failures.push(format!("{spec}: c = {} for the trivial cover", audit.c));
                        }
                    }
                }
            }
            Outcome {
                summary: format!("{cases} covers, {vanishing} vanishing dim Wh checks"),
                failures,
            }
        },
    );
}

#[test]
fn criterion_7_splitting_criterion() {
    criterion(
        7,
        "splitting criterion forms agree; zero orbit raisable",
        Duration::from_secs(60),
        || {
            let mut failures = Vec::new();
            let mut grid = 0;
            for n in 1..=100u32 {
                for q1 in -100..=100 {
                    for q2 in -100..=100 {
                        grid += 1;
                        let pair = BdPair::new(q1, q2);
                        if splits(pair, n) != splits_by_cases(pair, n) {
                            failures.push(format!("({q1}, {q2}) n={n}"));
                        }
                    }
                }
            }
            let t = tables();
            let mut zero = 0;
            for n in 2..=60 {
                for rank in 1..=8 {
                    // SL_r with Q(α∨) = −1 stands in for type A; GL_1 has no roots
                    for group in [GroupForm::Sp, GroupForm::Gl] {
                        if group == GroupForm::Gl && rank == 1 {
                            continue;
                        }
                        let spec = CoverSpec::new(group, rank, n).unwrap();
                        let size = spec.group.partition_size(rank).unwrap();
                        let v = classify_classical(&Partition::repeated(1, size as usize), &spec)
                            .unwrap();
                        zero += 1;
                        if v.raisable != Raisability::Raisable {
                            failures.push(format!("zero orbit of {spec}"));
                        }
                    }
                }
                for g in GroupForm::EXCEPTIONAL {
                    let spec = CoverSpec::new(g, g.fixed_rank().unwrap(), n).unwrap();
                    zero += 1;
                    if t.classify_exceptional(&spec, "0").unwrap().raisable != Raisability::Raisable
                    {
                        failures.push(format!("zero orbit of {spec}"));
                    }
                }
            }
            Outcome {
                summary: format!("{grid} (q1, q2, n) triples, {zero} zero-orbit covers"),
                failures,
            }
        },
    );
}
