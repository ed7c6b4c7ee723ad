use num_complex::Complex64;

use normattain::construct::{self, Case};
use normattain::gallery;
use normattain::linalg;
use normattain::lomonosov::{self, DiskMeasure, ScanConfig, TaylorFunctional};
use normattain::operators::opnorm;
use normattain::report;
use normattain::spaces::Space;

fn max_vertex_image(x: &Space, t: &normattain::operators::GeneralOperator) -> f64 {
    x.extreme_points()
        .unwrap()
        .iter()
        .map(|v| t.codomain.norm(&t.apply(v).unwrap()).unwrap())
        .fold(0.0, f64::max)
}

#[test]
fn cube_quotient_takes_the_nonsmooth_branch() {
    let x = Space::lp(3, f64::INFINITY).unwrap();
    let e = Space::lp(2, 2.0).unwrap();
    let tr = construct::theo2_construct(&x, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &e).unwrap();
    assert_eq!(tr.case, Case::Nonsmooth);
    assert_eq!(tr.frame.polygon.len(), 4);
    let z = tr.operator.apply(&[0.0, 0.0, 1.0]).unwrap();
    assert!(linalg::norm2(&z) < 1e-12);
    let rep = opnorm(&tr.operator).unwrap();
    let w = rep.witness.unwrap();
    assert!(w.iter().all(|c| (c.abs() - 1.0).abs() < 1e-12));
    assert!((max_vertex_image(&x, &tr.operator) - rep.norm).abs() < 1e-12);
}

#[test]
fn octahedron_quotient_is_the_diamond() {
    let x = Space::lp(3, 1.0).unwrap();
    let e = Space::lp(2, 2.0).unwrap();
    let tr = construct::theo2_construct(&x, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &e).unwrap();
    assert_eq!(tr.case, Case::Nonsmooth);
    let mut poly = tr.frame.polygon.clone();
    poly.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    assert_eq!(poly, vec![[-1.0, 0.0], [0.0, -1.0], [0.0, 1.0], [1.0, 0.0]]);
    assert_eq!(tr.xt1, [1.0, 0.0]);
}

#[test]
fn smooth_quotient_points_take_case_one() {
    let x = Space::lp(4, f64::INFINITY).unwrap();
    let hexagon: Vec<Vec<f64>> = (0..6)
        .map(|k| {
            let a = std::f64::consts::PI * k as f64 / 3.0;
            vec![a.cos(), a.sin()]
        })
        .collect();
    let e = Space::vertices(hexagon).unwrap();
    let tr = construct::theo2_construct(&x, &[0.0, 0.0, 0.5, -0.5], &[0.5, -0.5, 0.0, 0.0], &e).unwrap();
    assert_eq!(tr.case, Case::SmoothSmooth);
    let d = tr.case1.as_ref().unwrap();
    assert!(d.alpha > 0.0 && d.alpha < 1.0);
    assert!(d.cone.c1 >= -1e-9 && d.cone.c2 >= -1e-9);
    assert!(tr.tau > 0.0 && tr.tau < 1.0);
}

#[test]
fn observation_operator_attains_at_the_common_point() {
    let x = Space::lp(3, f64::INFINITY).unwrap();
    let y = Space::lp(2, 2.0).unwrap();
    let x0 = [1.0, 1.0, 1.0];
    let t = construct::observation_smooth(&x, &x0, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &y).unwrap();
    let rep = opnorm(&t).unwrap();
    assert!((rep.norm - 1.0).abs() < 1e-12);
    assert!((linalg::norm2(&t.apply(&x0).unwrap()) - 1.0).abs() < 1e-12);
    assert_eq!(t.rank(), 2);
}

#[test]
fn segment_model_norms_increase_towards_one() {
    let norms: Vec<f64> = [10, 40, 160, 640]
        .iter()
        .map(|&n| gallery::segment_model(n).unwrap().truncated_norm().unwrap())
        .collect();
    assert!(norms.windows(2).all(|w| w[0] < w[1]));
    assert!(norms.iter().all(|&n| n < 1.0));
    let m = gallery::segment_model(64).unwrap();
    assert!(m.columns().iter().all(|c| c[0].hypot(c[1]) <= m.analytic_sup));
}

#[test]
fn dense_ball_attains_only_along_u0() {
    let e = Space::lp(2, 2.0).unwrap();
    let m = gallery::dense_ball_model(&e, [1.0, 0.0], 512, 7).unwrap();
    assert!(gallery::column_attains(&m, &[1.0, 0.0]).unwrap());
    assert!(!gallery::column_attains(&m, &[0.0, 1.0]).unwrap());
}

#[test]
fn countable_extreme_functional_is_not_attained() {
    let model = gallery::countable_extreme_model(60, 40, 11).unwrap();
    let r = &model.report;
    assert!(!r.segment_functional_attains);
    assert!(r.segment_functional_truncated_max < r.segment_functional_sup);
    assert_eq!(r.failures, 0);
    assert!(r.min_margin > 0.0);
}

#[test]
fn notrotund_witness_attains_through_f1() {
    let x = Space::lp(3, 1.0).unwrap();
    let r = gallery::notrotund_report(&x, &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
    assert!(r.attained);
    assert!((r.f1_at_witness - 1.0).abs() < 1e-12);
    assert!((r.norm - 1.0).abs() < 1e-12);
}

#[test]
fn two_term_polynomial_peaks_at_one() {
    let b = TaylorFunctional::from_real(&[1.0, 1.0]).unwrap();
    let s = lomonosov::sup_modulus(&b, 4096).unwrap();
    assert!((s.r - 2.0).abs() < 1e-12);
}

#[test]
fn off_level_set_atom_fails_support_condition() {
    let b = TaylorFunctional::from_real(&[1.0, 1.0]).unwrap();
    let mu = DiskMeasure::dirac(Complex64::new(0.0, 1.0)).unwrap();
    let r = lomonosov::check_necessary_conditions(&b, &mu, 32, 1e-9).unwrap();
    assert!(!r.support.holds);
    assert!(!r.all_hold());
}

#[test]
fn scan_reports_are_reproducible() {
    let cfg = ScanConfig::new(6, 40, 99);
    let a = lomonosov::scan(&cfg).unwrap();
    let b = lomonosov::scan(&cfg).unwrap();
    assert_eq!(report::to_canonical_json(&a).unwrap(), report::to_canonical_json(&b).unwrap());
    assert_eq!(a.evaluated, 40);
    assert_eq!(a.family_counts.values().sum::<usize>(), 40);
}

#[test]
fn degree_one_scan_never_satisfies_all_conditions() {
    let mut cfg = ScanConfig::new(1, 60, 3);
    cfg.keep = 60;
    let r = lomonosov::scan(&cfg).unwrap();
    assert_eq!(r.holds.all, 0);
    let boundary: Vec<_> = r.best.iter().filter(|c| c.mu.atoms.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12)).collect();
    assert!(!boundary.is_empty());
    assert!(boundary.iter().all(|c| !c.conditions.moment_decay.holds && c.conditions.support.holds));
}
