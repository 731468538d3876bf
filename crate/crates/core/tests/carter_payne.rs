use proptest::prelude::*;

use weylhom::carterpayne::{
    coordinates_from_generator, cor62_conditions, example64_family, psi2_on_generator, verify_cor62, verify_prop61,
};
use weylhom::homspace::{HomCandidate, HomSolver, Verdict};
use weylhom::linalg::GfMatrix;
use weylhom::modarith::{p_divides_r, PrimeField};
use weylhom::tableaux::{partitions, Partition};

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// `(lambda, mu, p)` with `m >= 3`, `mu = (lambda_1 + d, r - lambda_1 - d)`,
/// `0 < d <= lambda_2 - lambda_3`, `mu_2 <= lambda_1`.
fn raising_instances(r_max: u32) -> Vec<(Partition, Partition, u32)> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        for r in 3..=r_max {
            for lambda in partitions(r, r as usize).into_iter().filter(|l| l.len() >= 3) {
                let (l1, l2, l3) = (lambda.part(0), lambda.part(1), lambda.part(2));
                for d in 1..=l2 - l3 {
                    let (m1, m2) = (l1 + d, r - l1 - d);
                    if m2 <= l1 && m2 <= m1 {
                        out.push((lambda.clone(), Partition::new(vec![m1, m2]).unwrap(), p));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn second_map_is_a_hom_whenever_its_own_conditions_hold() {
    let mut checked = 0;
    for (lambda, mu, p) in raising_instances(16) {
        let f = gf(p);
        let conds = cor62_conditions(&lambda, &mu, f).unwrap();
        let [_, rows, raising, collapse] = conds.flags();
        if !(rows && raising && collapse) {
            continue;
        }
        let solver = HomSolver::new(&lambda, &mu, f).unwrap();
        let d = mu.part(0) - lambda.part(0);
        let image = psi2_on_generator(&lambda, d, solver.straightener()).unwrap();
        let psi2 = coordinates_from_generator(&solver, &image).unwrap();
        assert!(solver.is_homomorphism(&psi2).unwrap(), "{lambda} -> {mu} mod {p}");
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn full_conditions_give_two_independent_maps() {
    let mut passed = 0;
    for (lambda, mu, p) in raising_instances(16) {
        let report = verify_cor62(&lambda, &mu, gf(p)).unwrap();
        if !report.conditions.all_hold() {
            assert_eq!(report.verdict, Verdict::ConditionsFailed);
            continue;
        }
        let n = report.tableau_count;
        assert!(n >= 2);
        let ones = HomCandidate::all_ones(n).coeffs;
        assert_eq!(report.psi2.iter().filter(|&&c| c != 0).count(), 1, "{lambda} -> {mu}: {:?}", report.psi2);
        assert_ne!(report.psi2, ones);
        assert_eq!(GfMatrix::from_rows(gf(p), n, &[ones, report.psi2.clone()]).rank(), 2);
        assert_eq!(report.verdict, Verdict::Pass, "{lambda} -> {mu} mod {p}");
        assert!(report.dimension.unwrap() >= 2);
        passed += 1;
    }
    assert!(passed > 0);
}

#[test]
fn family_shapes_for_small_primes() {
    let e = example64_family(gf(2));
    assert_eq!((e.a, e.lambda.to_string(), e.mu.to_string()), (8, "8,3,1,1,1,1".into(), "10,5".into()));
    let e = example64_family(gf(3));
    assert_eq!(e.a, 28);
    assert_eq!(e.mu.to_string(), "31,20");
    assert_eq!(e.lambda.degree(), 51);
}

fn two_part_raisings() -> Vec<(Partition, u32, u32)> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        for r in 2..=12u32 {
            for lambda in partitions(r, 2).into_iter().filter(|l| l.len() == 2) {
                for d in 1..=lambda.part(1) {
                    out.push((lambda.clone(), d, p));
                }
            }
        }
    }
    out
}

#[test]
fn raising_map_is_a_nonzero_hom_under_its_condition() {
    for (lambda, d, p) in two_part_raisings() {
        let report = verify_prop61(&lambda, d, gf(p)).unwrap();
        let x = (lambda.part(0) - lambda.part(1) + d + 1) as u64;
        assert_eq!(report.condition.divisible, p_divides_r(x, d as u64, gf(p)));
        if report.condition.divisible {
            assert!(report.is_hom && report.nonzero, "{lambda}, d={d}, p={p}: {:?}", report.coordinates);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn raising_image_has_standard_coordinates((lambda, d, p) in prop::sample::select(two_part_raisings())) {
        let report = verify_prop61(&lambda, d, gf(p)).unwrap();
        prop_assert_eq!(report.target.degree(), lambda.degree());
        prop_assert_eq!(report.target.part(0), lambda.part(0) + d);
        prop_assert!(report.nonzero);
    }
}
