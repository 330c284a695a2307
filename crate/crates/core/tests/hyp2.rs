mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use teich::hyp2::{
    hyp_distance, k_ratio_sup, torus_extremal_length, twist_prime, HGeodesic, Mobius, Orientation,
    TorusLattice, UHPoint,
};

fn point() -> impl Strategy<Value = UHPoint> {
    (-5.0..5.0f64, 0.05..20.0f64).prop_map(|(x, y)| UHPoint::new(x, y).unwrap())
}

fn mobius() -> impl Strategy<Value = Mobius> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
        .prop_filter("positive determinant", |(a, b, c, d)| a * d - b * c > 0.1)
        .prop_map(|(a, b, c, d)| Mobius::new(a, b, c, d).unwrap())
}

/// Distance by the textbook formula, halved.
fn half_acosh(z1: UHPoint, z2: UHPoint) -> f64 {
    let d2 = (z1.x() - z2.x()).powi(2) + (z1.y() - z2.y()).powi(2);
    0.5 * (1.0 + d2 / (2.0 * z1.y() * z2.y())).acosh()
}

proptest! {
    #[test]
    fn distance_matches_acosh_form(z1 in point(), z2 in point()) {
        let d = hyp_distance(z1, z2);
        prop_assert!((d - half_acosh(z1, z2)).abs() <= 1e-7 * (1.0 + d));
    }

    #[test]
    fn distance_is_mobius_invariant(z1 in point(), z2 in point(), m in mobius()) {
        let d = hyp_distance(z1, z2);
        let e = hyp_distance(m.apply(z1), m.apply(z2));
        prop_assert!((d - e).abs() <= 1e-8 * (1.0 + d), "{d} vs {e}");
    }

    #[test]
    fn k_ratio_is_symmetric_and_logs_to_distance(z1 in point(), z2 in point()) {
        let k12 = k_ratio_sup(z1, z2);
        let k21 = k_ratio_sup(z2, z1);
        prop_assert!(k12 >= 1.0);
        prop_assert!((k12 - k21).abs() <= 1e-9 * k12);
        prop_assert!((0.5 * k12.ln() - hyp_distance(z1, z2)).abs() <= 1e-9);
    }

    #[test]
    fn torus_easy_intersection(
        re in 0.3..3.0f64, arg in -1.0..1.0f64, z in point(),
        u1 in -10i64..=10, v1 in -10i64..=10, u2 in -10i64..=10, v2 in -10i64..=10,
    ) {
        prop_assume!((u1, v1) != (0, 0) && (u2, v2) != (0, 0));
        let alpha = Complex64::from_polar(re, arg);
        let lat = TorusLattice::new(alpha, alpha * z.to_complex()).unwrap();
        let a = torus_extremal_length(&lat, u1 as f64, v1 as f64).unwrap();
        let b = torus_extremal_length(&lat, u2 as f64, v2 as f64).unwrap();
        let i = (u1 * v2 - u2 * v1) as f64;
        prop_assert!(a * b - i * i >= -1e-12 * (1.0 + a * b));
    }

    #[test]
    fn twist_prime_is_mobius_invariant(
        a in -5.0..-0.2f64, b in 0.2..5.0f64, p in -5.0..5.0f64, q in -5.0..5.0f64,
        o in point(), m in mobius(), ell in 0.1..3.0f64,
    ) {
        prop_assume!(p * q < 0.0 && p.abs() > 0.05 && q.abs() > 0.05);
        // axis from a to b; the crossing joins p (inside) and q (outside) or vice versa
        let axis = HGeodesic::between(a, b).unwrap();
        let inside = |x: f64| x > a && x < b;
        prop_assume!(inside(p) != inside(q));
        let crossing = HGeodesic::between(p, q).unwrap();
        let t = twist_prime(axis, ell, crossing, o, Orientation::Positive).unwrap();
        let moved = twist_prime(
            m.apply_geodesic(axis), ell, m.apply_geodesic(crossing), m.apply(o), Orientation::Positive,
        );
        if let Ok(u) = moved {
            prop_assert!((t - u).abs() <= 1e-6 * (1.0 + t.abs()), "{t} vs {u}");
        }
    }
}

#[test]
fn vertical_and_horizontal_examples() {
    let i = UHPoint::i();
    for y in [1e-6, 1e-3, 0.5, 3.0, 1e4] {
        let z = UHPoint::new(0.0, y).unwrap();
        assert!((hyp_distance(i, z) - 0.5 * y.ln().abs()).abs() < 1e-12);
    }
}

#[test]
fn torus_product_on_random_lattices() {
    let mut rng = common::rng(3);
    for _ in 0..5 {
        let (a, b) = common::random_lattice(&mut rng);
        let lat = TorusLattice::new(a, b).unwrap();
        let l = |u: i64, v: i64| torus_extremal_length(&lat, u as f64, v as f64).unwrap();
        // λ(1,0)·λ(0,1) = |α|²|β|²/area² ≥ 1
        assert!(l(1, 0) * l(0, 1) >= 1.0 - 1e-12);
    }
}
