use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use inducibility::arith::{to_f64, BigRational};
use inducibility::density::{copies_in_complete_multipartite, density_polynomial, SimplexPoint};
use inducibility::graphs::{
    blowup, complete_multipartite, count_induced, is_complete_multipartite, symmetrize_to_multipartite,
};
use inducibility::optimize::{inducibility_partite, OptimizerConfig};
use inducibility::turan::{g_value, inducibility_turan, threshold_t, Threshold};
use inducibility::{Graph, PartiteProfile};

fn quick() -> OptimizerConfig {
    OptimizerConfig { restarts: 16, ..OptimizerConfig::default() }
}

#[test]
fn turan_optima_are_equipartitions() {
    for s in 3..=10u32 {
        for r in 2..s {
            if s > 3 * r + 1 {
                continue;
            }
            let Threshold::Finite(t) = threshold_t(s, r).unwrap() else { unreachable!() };
            let top = (t as u32 + 2).min(9);
            let profile = PartiteProfile::turan(s, r).unwrap();
            for k in r + 1..=top {
                let ell = (k as u64 - 1).min(t);
                let rep = inducibility_partite(&profile, k, &quick()).unwrap();
                let want = to_f64(&g_value(s, r, ell).unwrap());
                assert!((rep.value - want).abs() < 1e-8, "T({s},{r}), k={k}: {} vs {want}", rep.value);
                for (i, x) in rep.point.iter().enumerate() {
                    let target = if (i as u64) < ell { 1.0 / ell as f64 } else { 0.0 };
                    assert!((x - target).abs() < 1e-5, "T({s},{r}), k={k}: {:?}", rep.point);
                }
                let closed = inducibility_turan(s, r, Some(k)).unwrap();
                assert_eq!(closed.ell, Some(ell));
            }
        }
    }
}

#[test]
fn optimum_beats_the_r_part_equipartition() {
    for s in 2..=6u32 {
        for p in PartiteProfile::all_with_vertices(s, s as usize) {
            let r = p.num_parts();
            if r < 2 {
                continue;
            }
            let poly = density_polynomial(&p, r).unwrap();
            let SimplexPoint::Exact(eq) = SimplexPoint::equipartition(r, r).unwrap() else { unreachable!() };
            let floor = to_f64(&poly.evaluate_exact(&eq).unwrap());
            for k in r as u32 + 1..=r as u32 + 2 {
                let rep = inducibility_partite(&p, k, &quick()).unwrap();
                assert!(rep.value >= floor - 1e-9, "{p}, k={k}: {} < {floor}", rep.value);
            }
        }
    }
}

/// Profiles with at most four parts of size at most three.
fn small_profile() -> impl Strategy<Value = PartiteProfile> {
    prop::collection::vec(1u32..=3, 1..=4).prop_map(|parts| PartiteProfile::new(parts).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn blowup_counts_match_the_closed_form(
        f in small_profile(),
        host in prop::collection::vec(1u64..=3, 1..=4),
    ) {
        let sizes: Vec<usize> = host.iter().map(|&h| h as usize).collect();
        let k = Graph::complete(sizes.len()).unwrap();
        let g = blowup(&k, &sizes).unwrap();
        let target = complete_multipartite(&f).unwrap();
        prop_assert_eq!(count_induced(&target, &g), copies_in_complete_multipartite(&f, &host));
    }

    #[test]
    fn symmetrization_never_loses_copies(
        seed in any::<u64>(),
        n in 3usize..=9,
        density in 0.1f64..0.9,
        f in small_profile(),
    ) {
        let target = complete_multipartite(&f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Graph::random(n, density, &mut rng).unwrap();
        let trace = symmetrize_to_multipartite(&g, std::slice::from_ref(&target)).unwrap();
        prop_assert!(trace.is_monotone());
        prop_assert!(is_complete_multipartite(&trace.graph).is_some());
        let before = count_induced(&target, &g);
        let after = count_induced(&target, &trace.graph);
        prop_assert!(after >= before);
        if let Some(last) = trace.steps.last() {
            prop_assert_eq!(BigInt::from(last.count_after), after);
        }
    }

    #[test]
    fn exact_and_numeric_evaluation_agree(
        f in small_profile(),
        weights in prop::collection::vec(1u64..50, 1..=5),
    ) {
        let m = weights.len();
        let poly = density_polynomial(&f, m).unwrap();
        let total: u64 = weights.iter().sum();
        let xs: Vec<BigRational> = weights.iter().map(|&w| BigRational::new(w.into(), total.into())).collect();
        let exact = poly.evaluate_exact(&xs).unwrap();
        prop_assert_eq!(&exact, &poly.evaluate_exact_by_placements(&xs).unwrap());
        let floats: Vec<f64> = xs.iter().map(to_f64).collect();
        let numeric = poly.evaluate_numeric(&floats).unwrap();
        prop_assert!((numeric - to_f64(&exact)).abs() < 1e-12);
    }
}
