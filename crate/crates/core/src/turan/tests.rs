use super::*;
use crate::arith::ratio;
use crate::density::density_polynomial;

fn q(n: i64, d: i64) -> BigRational {
    ratio(n, d)
}

#[test]
fn g_value_examples() {
    assert_eq!(g_value(4, 3, 5).unwrap(), q(72, 125));
    assert_eq!(g_value(5, 3, 3).unwrap(), q(10, 27));
    assert_eq!(g_value(6, 4, 6).unwrap(), q(25, 72));
    assert!(matches!(g_value(6, 4, 3), Err(Error::Domain(_))));
}

#[test]
fn f_ratio_examples() {
    assert_eq!(f_ratio(4, 3, 5).unwrap(), q(128, 125));
    assert_eq!(f_ratio(4, 3, 6).unwrap(), q(625, 648));
    assert!(f_ratio(4, 3, 3).is_err());
}

#[test]
fn f_ratio_is_ratio_of_consecutive_g() {
    for s in 3..=12 {
        for r in 2..s {
            for ell in r as u64 + 1..=30 {
                let lhs = f_ratio(s, r, ell).unwrap();
                let rhs = g_value(s, r, ell).unwrap() / g_value(s, r, ell - 1).unwrap();
                assert_eq!(lhs, rhs, "s={s} r={r} ell={ell}");
            }
        }
    }
}

#[test]
fn threshold_examples() {
    assert_eq!(threshold_t(4, 3).unwrap(), Threshold::Finite(5));
    assert_eq!(threshold_t(14, 13).unwrap(), Threshold::Finite(86));
    assert_eq!(threshold_t(5, 5).unwrap(), Threshold::Infinite);
    assert!(threshold_t(3, 4).is_err());
}

#[test]
fn threshold_for_one_extra_vertex() {
    // K_r^- = T(r, r-1): t = ceil((r-2)(3r+1)/6) for r = 4..14
    for r in 4u64..=14 {
        let want = ((r - 2) * (3 * r + 1)).div_ceil(6);
        assert_eq!(threshold_t(r as u32, r as u32 - 1).unwrap(), Threshold::Finite(want));
    }
}

#[test]
fn g_is_unimodal_with_peak_at_threshold() {
    for s in 3..=20 {
        for r in 2..s {
            let Threshold::Finite(t) = threshold_t(s, r).unwrap() else { panic!() };
            let end = (t + 10).max(r as u64 + 10);
            let g: Vec<BigRational> = (r as u64..=end).map(|l| g_value(s, r, l).unwrap()).collect();
            let peak = (t - r as u64) as usize;
            assert!(g[..=peak].windows(2).all(|w| w[0] < w[1]));
            assert!(g[peak..].windows(2).all(|w| w[0] > w[1]));
        }
    }
}

#[test]
fn bs_condition_examples() {
    assert!(!bs_condition(12, 6).unwrap());
    assert!(bs_condition(11, 3).unwrap());
    for (s, r) in [(12, 3), (13, 3), (14, 3), (14, 4)] {
        assert!(bs_condition(s, r).unwrap());
    }
    assert!(!bs_condition(15, 4).unwrap());
    // s = floor(s/r)(r+1) zeroes the second factor
    assert!(!bs_condition(10, 4).unwrap());
    assert!(bs_condition(8, 4).unwrap());
    assert!(bs_condition(4, 4).is_err());
}

#[test]
fn inducibility_examples() {
    let res = inducibility_turan(6, 4, Some(7)).unwrap();
    assert_eq!(res.value, q(25, 72));
    assert_eq!(res.t, Threshold::Finite(6));
    assert_eq!(res.ell, Some(6));
    assert_eq!(res.certificate, Certificate::TheoremTuran);

    let res = inducibility_turan(6, 4, Some(5)).unwrap();
    assert_eq!(res.value, q(135, 512));
    assert_eq!(res.ell, Some(4));
    let poly = density_polynomial(&PartiteProfile::turan(6, 4).unwrap(), 4).unwrap();
    let Some(SimplexPoint::Exact(xs)) = &res.graphon else { panic!() };
    assert_eq!(poly.evaluate_exact(xs).unwrap(), res.value);

    let res = inducibility_turan(5, 3, None).unwrap();
    assert_eq!(res.value, q(10, 27));
    assert_eq!(res.t, Threshold::Finite(3));
}

#[test]
fn trivial_and_clique_cases() {
    let res = inducibility_turan(6, 4, Some(4)).unwrap();
    assert_eq!(res.certificate, Certificate::TrivialZero);
    assert!(res.value.is_zero());

    let res = inducibility_turan(4, 4, Some(6)).unwrap();
    assert_eq!(res.certificate, Certificate::ErdosZykov);
    assert_eq!(res.value, g_value(4, 4, 5).unwrap());

    let res = inducibility_turan(4, 4, None).unwrap();
    assert_eq!(res.value, BigRational::one());
    assert_eq!(res.t, Threshold::Infinite);
    assert!(!res.attained);
    assert!(res.graphon.is_none());
}

#[test]
fn certificates_by_regime() {
    assert_eq!(inducibility_turan(9, 2, None).unwrap().certificate, Certificate::BrownSidorenkoBipartite);
    assert_eq!(inducibility_turan(13, 4, None).unwrap().certificate, Certificate::TheoremTuran);
    let bs = inducibility_turan(11, 3, None).unwrap();
    assert_eq!(bs.certificate, Certificate::BsCondition);
    assert_eq!(bs.t, Threshold::Finite(3));
    let open = inducibility_turan(15, 4, None).unwrap();
    assert_eq!(open.certificate, Certificate::Conjectural);
    assert!(!open.proven);
    assert!(inducibility_turan(3, 1, None).is_err());
    assert!(inducibility_turan(3, 4, None).is_err());
}

#[test]
fn monotone_in_forbidden_clique() {
    for s in 3..=9 {
        for r in 2..s {
            let Threshold::Finite(t) = threshold_t(s, r).unwrap() else { panic!() };
            let vals: Vec<BigRational> = (r + 1..=(t as u32 + 1))
                .map(|k| inducibility_turan(s, r, Some(k)).unwrap().value)
                .collect();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

#[test]
fn table_has_78_proven_rows() {
    let rows = table14().unwrap();
    assert_eq!(rows.len(), 78);
    assert!(rows.iter().all(|r| r.proven && r.certificate != Certificate::Conjectural));
    let last = rows.last().unwrap();
    assert_eq!((last.s, last.r, last.t), (14, 13, Threshold::Finite(86)));
    assert_eq!(
        format_rational(&last.value),
        "2800242205096869658125/6873056497129163140972"
    );
    let csv = table_csv(&rows);
    assert!(csv.starts_with("s,r,t,numerator,denominator,certificate\n3,2,2,3,4,brown-sidorenko-bipartite\n"));
    assert!(csv.contains("\n4,3,5,72,125,theorem-turan\n"));
    assert!(csv.contains("\n9,7,15,224224,703125,theorem-turan\n"));
}

#[test]
fn clique_unions() {
    let res = inducibility_clique_union(&[2, 2, 2]).unwrap();
    assert_eq!((res.value.clone(), res.t), (q(10, 81), Threshold::Finite(3)));
    let res = inducibility_clique_union(&[3, 3]).unwrap();
    assert_eq!((res.value.clone(), res.t), (q(5, 16), Threshold::Finite(2)));
    let res = inducibility_clique_union(&[1, 1, 1]).unwrap();
    assert_eq!(res.value, BigRational::one());
    assert!(inducibility_clique_union(&[3, 1]).is_err());
}

#[test]
fn bipartite_examples() {
    let opt = bipartite_inducibility(1, 4, 1e-14).unwrap();
    assert!((opt.value - 5.0 / 12.0).abs() < 1e-12);
    assert!((opt.alpha - (0.5 - 1.0 / 12f64.sqrt())).abs() < 1e-10);
    let opt = bipartite_inducibility(1, 5, 1e-14).unwrap();
    assert!((opt.value - 2.0 / 9.0 * (5.0 * 10f64.sqrt() - 14.0)).abs() < 1e-12);
    let opt = bipartite_inducibility(3, 3, 1e-14).unwrap();
    assert!((opt.alpha - 0.5).abs() < 1e-10);
    assert!((opt.value - 20.0 / 2.0 * 2.0 / 64.0).abs() < 1e-12);
    assert!(bipartite_inducibility(1, 1, 1e-9).is_err());
}

#[test]
fn certifier_registry_lookup() {
    assert_eq!(certifiers().len(), 5);
    let c = certifier("bs-condition").unwrap();
    assert!(c.applies(11, 3));
    assert!(!c.applies(15, 4));
    assert!(certifier("trivial-zero").is_none());
}
