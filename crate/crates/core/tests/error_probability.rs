mod common;

use common::*;
use latnp::analysis::{
    analytic_pe, analytic_pe_polar, exact_pe_area, level_curve_points, monte_carlo_pe,
    third_relevant_vector, voronoi_polygon_general, voronoi_vertices_reduced,
};
use latnp::lattice::canonicalize_2d;
use latnp::{GeneratorMatrix, ReducedBasis2D};
use rand::Rng;

#[test]
fn analytic_and_area_agree() {
    let mut rng = rng(31);
    for _ in 0..200 {
        let (a, b) = random_reduced(&mut rng, 2.0);
        let m = ReducedBasis2D::new(a, b).unwrap().matrix();
        let f = analytic_pe(a, b).unwrap();
        assert!(
            (exact_pe_area(&m).unwrap() - f).abs() <= 1e-9,
            "(a, b) = ({a}, {b})"
        );
    }
}

#[test]
fn monte_carlo_agrees_with_formula() {
    let mut rng = rng(32);
    for i in 0..20 {
        let (a, b) = random_reduced(&mut rng, 2.0);
        let m = ReducedBasis2D::new(a, b).unwrap().matrix();
        let f = analytic_pe(a, b).unwrap();
        let n = 20_000u64;
        let e = monte_carlo_pe(&m, n, i).unwrap();
        let sigma = (f * (1.0 - f) / n as f64).sqrt();
        assert!(
            (e.estimate - f).abs() <= 4.0 * sigma + 1e-12,
            "(a, b) = ({a}, {b}): {e:?} vs {f}"
        );
    }
}

#[test]
fn formula_bounded_by_one_twelfth() {
    let (mut best, mut arg) = (f64::NEG_INFINITY, (0.0, 0.0));
    for i in 0..100 {
        for j in 0..100 {
            let a = 0.5 * i as f64 / 99.0;
            let b_min = (1.0 - a * a).sqrt().max(HEX_H);
            let b = b_min + (2.0 - b_min) * j as f64 / 99.0;
            let f = analytic_pe(a, b).unwrap();
            assert!((0.0..=1.0 / 12.0 + 1e-12).contains(&f));
            if f > best {
                (best, arg) = (f, (a, b));
            }
        }
    }
    assert!((arg.0 - 0.5).abs() < 1e-12 && (arg.1 - HEX_H).abs() < 1e-9);
}

#[test]
fn area_invariant_under_scaling_and_rotation() {
    let mut rng = rng(33);
    for _ in 0..100 {
        let (a, b) = random_reduced(&mut rng, 2.0);
        let m = ReducedBasis2D::new(a, b).unwrap().matrix();
        let base = exact_pe_area(&m).unwrap();
        let c = rng.random_range(0.01..100.0);
        assert!((exact_pe_area(&m.scaled(c).unwrap()).unwrap() - base).abs() <= 1e-9);

        let q = random_orthogonal(&mut rng, 2);
        let rotated = GeneratorMatrix::from_square(q.mul(m.basis())).unwrap();
        assert!((exact_pe_area(&rotated).unwrap() - base).abs() <= 1e-9);
        let canon = canonicalize_2d(&rotated).unwrap();
        assert!((exact_pe_area(&canon.basis.matrix()).unwrap() - base).abs() <= 1e-9);
    }
}

#[test]
fn voronoi_cells_are_symmetric_convex_and_have_det_area() {
    let mut rng = rng(34);
    for _ in 0..200 {
        let v = random_basis(&mut rng, 2, 10.0, 1e3);
        let cell = voronoi_polygon_general(&v).unwrap();
        assert!(matches!(cell.vertices.len(), 4 | 6));
        assert!(cell.is_convex());
        assert!(cell.is_centrally_symmetric(1e-9 * v.abs_det().sqrt()));
        assert!((cell.area() - v.abs_det()).abs() <= 1e-9 * v.abs_det());

        let (a, b) = random_reduced(&mut rng, 3.0);
        let hexagon = voronoi_vertices_reduced(a, b).unwrap();
        assert!(hexagon.is_centrally_symmetric(1e-12));
        assert!((hexagon.area() - b).abs() <= 1e-12);
    }
}

#[test]
fn third_relevant_vector_is_found_by_general_search() {
    let mut rng = rng(35);
    for _ in 0..300 {
        let (a, b) = random_reduced(&mut rng, 2.0);
        let a = if rng.random_bool(0.5) { -a } else { a };
        if a == 0.0 {
            continue;
        }
        let m = GeneratorMatrix::from_rows(&[vec![1.0, a], vec![0.0, b]]).unwrap();
        let w = third_relevant_vector(a, b).unwrap();
        let cell = voronoi_polygon_general(&m).unwrap();
        assert!(
            cell.has_relevant_vector(w, 1e-9),
            "(a, b) = ({a}, {b}): {:?}",
            cell.relevant_vectors
        );
    }
}

#[test]
fn polar_form_agrees_with_cartesian() {
    let mut rng = rng(36);
    for _ in 0..500 {
        let (a, b) = random_reduced(&mut rng, 2.0);
        let (rho, theta) = (a.hypot(b), b.atan2(a));
        let f = analytic_pe(a, b).unwrap();
        assert!((analytic_pe_polar(theta, rho).unwrap() - f).abs() < 1e-12);
        assert!((analytic_pe_polar(std::f64::consts::PI - theta, rho).unwrap() - f).abs() < 1e-12);
    }
}

#[test]
fn level_curves_lie_on_ellipses() {
    for k in [0.01, 0.02, 0.04, 0.06, 1.0 / 12.0] {
        for (a, b) in level_curve_points(k, 501).unwrap() {
            assert!(((a - 0.5).powi(2) + 4.0 * k * b * b - 0.25).abs() < 1e-12);
            assert!((analytic_pe(a, b).unwrap() - k).abs() < 1e-12);
        }
    }
}

#[test]
fn monte_carlo_handles_higher_dimensions() {
    let e = monte_carlo_pe(&GeneratorMatrix::identity(5).unwrap(), 5000, 0).unwrap();
    assert_eq!(e.estimate, 0.0);
    let mut rng = rng(37);
    let v = random_basis(&mut rng, 4, 3.0, 10.0);
    let e = monte_carlo_pe(&v, 5000, 1).unwrap();
    assert!((0.0..=1.0).contains(&e.estimate));
    assert_eq!(e, monte_carlo_pe(&v, 5000, 1).unwrap());
}
