use nilcover::cover::{CoverSpec, GroupForm};
use nilcover::duality::{
    coordinate_groups, d_bv, d_ls, d_som, is_special, pseudo_levi_from_components,
    sommers_pipeline, GroupKind, PseudoLeviPair,
};
use nilcover::partition::{ClassicalType, Partition};
use nilcover::roots::{CartanLabel, Family};

use oracles::{orbits, types_for};
use ClassicalType::{A, B, C, D};

#[path = "common/oracles.rs"]
mod oracles;

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn collapse_and_expansion_agree_with_exhaustive_search() {
    let report = oracles::collapse_and_expansion(20);
    assert!(report.failures.is_empty(), "{:#?}", report.failures);
    assert!(report.checked > 2_000, "{}", report.checked);
    assert!(report.ambiguous > 0);
}

#[test]
fn collapse_examples() {
    assert_eq!(p("3,1").collapse(C).unwrap(), p("2,2"));
    assert_eq!(p("3,3").collapse(C).unwrap(), p("3,3"));
    // (4) ∪ (3,1)_C from the symplectic family with n = 6, r = 4
    assert_eq!(p("4").union(&p("3,1").collapse(C).unwrap()), p("4,2,2"));
    assert!(p("2,1").collapse(C).is_err());
    assert!(p("2").expansion(B).is_err());
    assert!(p("2").expansion(D).unwrap_err().is_validation());
    assert!(p("4,2,2,1").expansion(B).unwrap_err().is_validation());
    assert_eq!(p("4,2,2,1").minimal_expansions(B).unwrap().len(), 2);
    assert_eq!(p("2,1").expansion(B).unwrap(), p("3"));
}

#[test]
fn transpose_is_an_involution() {
    let report = oracles::transpose_involution(30);
    assert!(report.failures.is_empty(), "{:#?}", report.failures);
    assert_eq!(p("2,2,1").transpose(), p("3,2"));
}

#[test]
fn d_ls_reverses_order_and_is_idempotent_up_to_three() {
    let report = oracles::d_ls_properties(16);
    assert!(report.failures.is_empty(), "{:#?}", report.failures);
}

#[test]
fn special_orbits_are_the_image_of_d_ls() {
    for size in 1..=12 {
        for t in types_for(size) {
            let os = orbits(t, size);
            let image: Vec<Partition> = os.iter().map(|o| d_ls(o, t).unwrap()).collect();
            for o in &os {
                assert_eq!(is_special(o, t), image.contains(o), "type {t} {o}");
            }
        }
    }
}

#[test]
fn duality_endpoints() {
    for r in 1..=8u32 {
        let zero_b = Partition::repeated(1, 2 * r as usize + 1);
        assert_eq!(d_bv(&zero_b, B).unwrap(), Partition::new(vec![2 * r]));
        assert_eq!(
            d_bv(&Partition::new(vec![2 * r + 1]), B).unwrap(),
            Partition::repeated(1, 2 * r as usize)
        );
        let zero_c = Partition::repeated(1, 2 * r as usize);
        assert_eq!(d_bv(&zero_c, C).unwrap(), Partition::new(vec![2 * r + 1]));
        assert_eq!(d_ls(&Partition::new(vec![2 * r]), C).unwrap(), zero_c);
        assert_eq!(d_ls(&zero_c, C).unwrap(), Partition::new(vec![2 * r]));
    }
    // GL: ((a+1)^b a^(n-b)) goes to (n^a b)
    assert_eq!(d_bv(&p("2,2,1"), A).unwrap(), p("3,2"));
    assert!(d_bv(&p("2,1"), C).unwrap_err().is_validation());
}

#[test]
fn d_som_without_p1_is_d_bv() {
    for r in 1..=7usize {
        for (ambient, size) in [(C, 2 * r as u32), (B, 2 * r as u32 + 1), (D, 2 * r as u32)] {
            if ambient == D && r < 2 {
                continue;
            }
            for o in orbits(ambient, size) {
                let pair = PseudoLeviPair::new(ambient, r, Partition::empty(), o.clone()).unwrap();
                assert_eq!(
                    d_som(&pair).unwrap(),
                    d_bv(&o, ambient).unwrap(),
                    "{ambient}{r} {o}"
                );
            }
        }
    }
}

fn label(family: Family, rank: usize) -> CartanLabel {
    CartanLabel::new(family, rank)
}

#[test]
fn pair_from_labelled_components() {
    let pair =
        pseudo_levi_from_components(&[label(Family::C, 2), label(Family::A, 2)], C, 5).unwrap();
    assert_eq!(pair.p1, p("4"));
    assert_eq!(pair.p2, p("3,3"));
    // the same pair arises from the cover SO11 of degree 3
    let trace = sommers_pipeline(&CoverSpec::new(GroupForm::SoOdd, 5, 3).unwrap()).unwrap();
    assert_eq!(trace.pair, pair);
    assert_eq!(trace.orbit, p("3,3,3,1,1"));

    let empty = pseudo_levi_from_components(&[label(Family::A, 1)], C, 3).unwrap();
    assert!(empty.p1.is_empty());
    assert_eq!(empty.p2, p("2,2,1,1"));
    let two_c = pseudo_levi_from_components(&[label(Family::C, 1), label(Family::C, 1)], C, 2);
    assert!(two_c.unwrap_err().is_validation());
    assert!(pseudo_levi_from_components(&[label(Family::A, 4)], C, 3)
        .unwrap_err()
        .is_validation());
}

#[test]
fn rank_two_d_is_read_from_coordinates() {
    // ±e1 ± e2 has the root count of D2 on two coordinates, ±(e1 − e2) that of A1
    let d2: Vec<Vec<i64>> = vec![vec![1, -1], vec![-1, 1], vec![1, 1], vec![-1, -1]];
    let groups = coordinate_groups(&d2, 2, GroupKind::B).unwrap();
    assert_eq!(groups.len(), 1);
    assert_eq!(groups[0].kind, GroupKind::D);
    let a1: Vec<Vec<i64>> = vec![vec![1, -1], vec![-1, 1]];
    assert_eq!(
        coordinate_groups(&a1, 2, GroupKind::B).unwrap()[0].kind,
        GroupKind::A
    );
    let c1: Vec<Vec<i64>> = vec![vec![2, 0], vec![-2, 0]];
    let groups = coordinate_groups(&c1, 2, GroupKind::C).unwrap();
    assert_eq!(
        groups.iter().map(|g| g.kind).collect::<Vec<_>>(),
        vec![GroupKind::C, GroupKind::A]
    );
}

/// `(A_{2a−1})^x (A_{2a})^y` as labels, skipping `A_0`.
fn a_blocks(a: usize, x: usize, y: usize) -> Vec<CartanLabel> {
    let mut out = Vec::new();
    if 2 * a > 1 {
        out.extend(std::iter::repeat_n(label(Family::A, 2 * a - 1), x));
    }
    if a > 0 {
        out.extend(std::iter::repeat_n(label(Family::A, 2 * a), y));
    }
    out
}

#[test]
fn odd_orthogonal_family_from_components() {
    // C_a × (A_{2a−1})^{m−b} × (A_{2a})^b inside Sp_{2r}, n = 2m + 1, r = na + b, b ≤ m
    let mut checked = 0;
    for m in 1..=4usize {
        let n = 2 * m + 1;
        for a in 1..=3usize {
            for b in 0..=m {
                let r = n * a + b;
                let mut comps = vec![label(Family::C, a)];
                comps.extend(a_blocks(a, m - b, b));
                let pair = pseudo_levi_from_components(&comps, C, r).unwrap();
                let mut want = vec![n as u32; 2 * a];
                want.push(2 * b as u32 + 1);
                assert_eq!(d_som(&pair).unwrap(), Partition::new(want), "n={n} r={r}");
                checked += 1;
            }
        }
    }
    assert!(checked > 30);
}

#[test]
fn even_orthogonal_family_from_components() {
    // D_{a+1} × (A_{2a−1})^{m−b} × (A_{2a})^b inside SO_{2r}, n = 2m + 1, r − 1 = na + b, b ≤ m
    for m in 1..=4usize {
        let n = 2 * m + 1;
        for a in 1..=3usize {
            for b in 0..=m {
                let r = n * a + b + 1;
                let mut comps = vec![label(Family::D, a + 1)];
                comps.extend(a_blocks(a, m - b, b));
                let pair = pseudo_levi_from_components(&comps, D, r).unwrap();
                let mut want = vec![n as u32; 2 * a];
                want.extend([2 * b as u32 + 1, 1]);
                assert_eq!(d_som(&pair).unwrap(), Partition::new(want), "n={n} r={r}");
            }
        }
    }
}

/// Nontrivial pieces of the dual integral subsystem as `(kind, coordinates)`.
fn dual_shape(spec: &CoverSpec) -> Vec<(GroupKind, usize)> {
    let trace = sommers_pipeline(spec).unwrap();
    let mut shape: Vec<(GroupKind, usize)> = trace
        .groups
        .iter()
        .filter(|g| !(g.size() == 1 && matches!(g.kind, GroupKind::A | GroupKind::D)))
        .map(|g| (g.kind, g.size()))
        .collect();
    shape.sort_by_key(|&(k, s)| (k as u8, s));
    shape
}

fn expected_shape(pieces: &[(GroupKind, usize, usize)]) -> Vec<(GroupKind, usize)> {
    let mut shape = Vec::new();
    for &(kind, coords, count) in pieces {
        if coords == 0 || (coords == 1 && matches!(kind, GroupKind::A | GroupKind::D)) {
            continue;
        }
        shape.extend(std::iter::repeat_n((kind, coords), count));
    }
    shape.sort_by_key(|&(k, s)| (k as u8, s));
    shape
}

#[test]
fn dual_subsystems_of_spin_covers_have_the_stated_components() {
    use GroupKind::{A as GA, C as GC, D as GD};
    for r in 3..=12usize {
        for n in 1..=10usize {
            let (a, b) = (r / n, r % n);
            let m = n / 2;
            // A_{k} occupies k + 1 coordinates
            let pieces = if n % 2 == 1 {
                if b <= m {
                    vec![(GC, a, 1), (GA, 2 * a, m - b), (GA, 2 * a + 1, b)]
                } else {
                    vec![
                        (GC, a + 1, 1),
                        (GA, 2 * a + 1, 2 * m - b + 1),
                        (GA, 2 * a + 2, b - m - 1),
                    ]
                }
            } else if b < m {
                vec![(GC, a, 2), (GA, 2 * a, m - 1 - b), (GA, 2 * a + 1, b)]
            } else {
                vec![
                    (GC, a + 1, 1),
                    (GC, a, 1),
                    (GA, 2 * a + 1, 2 * m - b - 1),
                    (GA, 2 * a + 2, b - m),
                ]
            };
            let spec = CoverSpec::new(GroupForm::SpinOdd, r, n as u32).unwrap();
            assert_eq!(
                dual_shape(&spec),
                expected_shape(&pieces),
                "Spin{} n={n}",
                2 * r + 1
            );

            let (a, b) = ((r - 1) / n, (r - 1) % n);
            let pieces = if n % 2 == 1 {
                if b <= m {
                    vec![(GD, a + 1, 1), (GA, 2 * a, m - b), (GA, 2 * a + 1, b)]
                } else {
                    vec![
                        (GD, a + 1, 1),
                        (GA, 2 * a + 1, 2 * m - b),
                        (GA, 2 * a + 2, b - m),
                    ]
                }
            } else if b < m {
                vec![
                    (GD, a + 1, 1),
                    (GD, a, 1),
                    (GA, 2 * a, m - 1 - b),
                    (GA, 2 * a + 1, b),
                ]
            } else {
                vec![
                    (GD, a + 1, 2),
                    (GA, 2 * a + 1, 2 * m - b - 1),
                    (GA, 2 * a + 2, b - m),
                ]
            };
            let spec = CoverSpec::new(GroupForm::SpinEven, r, n as u32).unwrap();
            assert_eq!(
                dual_shape(&spec),
                expected_shape(&pieces),
                "Spin{} n={n}",
                2 * r
            );
        }
    }
}
