//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 2x2 real matrix `[a, b, c, d]`.
pub type Mat = [f64; 4];

pub fn mul(p: Mat, q: Mat) -> Mat {
    [
        p[0] * q[0] + p[1] * q[2],
        p[0] * q[1] + p[1] * q[3],
        p[2] * q[0] + p[3] * q[2],
        p[2] * q[1] + p[3] * q[3],
    ]
}

pub fn inv(p: Mat) -> Mat {
    let det = p[0] * p[3] - p[1] * p[2];
    [p[3] / det, -p[1] / det, -p[2] / det, p[0] / det]
}

pub fn trace(p: Mat) -> f64 {
    p[0] + p[3]
}

/// Fixed points of a hyperbolic element with `c ≠ 0`.
pub fn fixed_points(p: Mat) -> (f64, f64) {
    let [a, b, c, d] = p;
    // c z² + (d − a) z − b = 0
    let disc = ((d - a).powi(2) + 4.0 * b * c).sqrt();
    ((a - d + disc) / (2.0 * c), (a - d - disc) / (2.0 * c))
}

pub fn apply(p: Mat, x: f64) -> f64 {
    (p[0] * x + p[1]) / (p[2] * x + p[3])
}

/// Distance from the imaginary axis to the geodesic with endpoints `p, q`.
pub fn distance_to_axis(p: f64, q: f64) -> f64 {
    assert!(p * q > 0.0, "geodesics cross");
    ((p + q).abs() / (p - q).abs()).acosh()
}

/// Distance between disjoint geodesics with finite endpoints, from the
/// normal form where the first one is the imaginary axis.
pub fn geodesic_distance(g: (f64, f64), h: (f64, f64)) -> f64 {
    let send = |x: f64| (x - g.0) / (x - g.1);
    let (p, q) = (send(h.0), send(h.1));
    assert!(p * q > 0.0, "geodesics cross");
    ((p + q).abs() / (p - q).abs()).acosh()
}

fn diag(l: f64) -> Mat {
    [(l / 2.0).exp(), 0.0, 0.0, (-l / 2.0).exp()]
}

/// Hyperbolic element of translation length `l` along the geodesic from `a` to `b`.
fn along(a: f64, b: f64, l: f64) -> Mat {
    let m = [b, a, 1.0, 1.0];
    mul(mul(m, diag(l)), inv(m))
}

/// Generators `A, B` of a pants group with `tr A = 2cosh(l1/2)`,
/// `tr B = 2cosh(l2/2)` and `tr AB = −2cosh(l3/2)`, found by bisecting the
/// distance between the axes. Returns the axis distance too.
pub fn pants_group(l1: f64, l2: f64, l3: f64) -> (Mat, Mat, f64) {
    let a = diag(l1);
    let make = |dist: f64| {
        let c = dist.cosh();
        // endpoints 1 and (c+1)/(c−1) sit at distance `dist` from the imaginary axis
        along((c + 1.0) / (c - 1.0), 1.0, l2)
    };
    let target = -2.0 * (l3 / 2.0).cosh();
    let f = |dist: f64| trace(mul(a, make(dist))) - target;
    let (mut lo, mut hi) = (1e-6, 1.0);
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    assert!(f(lo) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let dist = 0.5 * (lo + hi);
    (a, make(dist), dist)
}

/// Matrix-model orthogeodesic lengths `[d11, d22, d12]` of the pants with
/// cuffs `l1, l2, l3` (all positive).
pub fn matrix_orthogeodesics(l1: f64, l2: f64, l3: f64) -> [f64; 3] {
    let (_, b, d12) = pants_group(l1, l2, l3);
    // the axis of A is the imaginary axis; translate each axis by the other generator
    let d11 = distance_to_axis(apply(b, 0.0), b[0] / b[2]);
    let (p, q) = fixed_points(b);
    let e = l1.exp();
    let d22 = geodesic_distance((p, q), (e * p, e * q));
    [d11, d22, d12]
}

/// Crossings of two straight arcs across a unit-circumference annulus, one
/// starting at 0 and one at 1/2, with twists `t1` and `t2`, by scanning the
/// height and counting wraps of the horizontal gap. Heights are sampled at
/// cell midpoints so crossings on the boundary circles are not counted.
pub fn brute_crossings(t1: f64, t2: f64) -> u64 {
    const STEPS: usize = 20_000;
    let gap = |y: f64| 0.5 + (t2 - t1) * y;
    let mut count = 0;
    let mut prev = gap(0.0).floor();
    for k in 0..STEPS {
        let cur = gap((k as f64 + 0.5) / STEPS as f64).floor();
        count += (cur - prev).abs() as u64;
        prev = cur;
    }
    count
}

/// Every symmetric arc-count matrix realizable by disjoint simple arcs in a
/// pants with `m` endpoints on its cuffs.
pub fn enumerate_arc_systems(m: [u64; 3]) -> Vec<[[u64; 3]; 3]> {
    let mut out = Vec::new();
    let top = *m.iter().max().unwrap();
    for a01 in 0..=top {
        for a02 in 0..=top {
            for a12 in 0..=top {
                let off = [[0, a01, a02], [a01, 0, a12], [a02, a12, 0]];
                let mut diag = [0u64; 3];
                let mut ok = true;
                for i in 0..3 {
                    let used: u64 = off[i].iter().sum();
                    if used > m[i] || !(m[i] - used).is_multiple_of(2) {
                        ok = false;
                        break;
                    }
                    diag[i] = (m[i] - used) / 2;
                }
                if !ok {
                    continue;
                }
                // a loop at cuff i separates the other two cuffs
                let loops = (0..3).filter(|&i| diag[i] > 0).count();
                if loops > 1 {
                    continue;
                }
                if let Some(i) = (0..3).find(|&i| diag[i] > 0) {
                    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                    if off[j][k] > 0 {
                        continue;
                    }
                }
                let mut a = off;
                for i in 0..3 {
                    a[i][i] = diag[i];
                }
                out.push(a);
            }
        }
    }
    out
}

pub fn random_modulus<R: Rng>(rng: &mut R) -> (f64, f64) {
    (rng.gen_range(-2.0..=2.0), rng.gen_range(0.2..=5.0))
}

pub fn random_lattice<R: Rng>(rng: &mut R) -> (Complex64, Complex64) {
    let alpha = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
    let (x, y) = random_modulus(rng);
    (alpha, alpha * Complex64::new(x, y))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (mut num, mut den) = (0.0, 0.0);
    for &(x, y) in points {
        num += (x.ln() - mx) * (y.ln() - my);
        den += (x.ln() - mx).powi(2);
    }
    num / den
}

use teich::surface::{
    build_marking, CurveId, CurveKind, Marking, Pants, PantsCurve, PantsDecomposition, PantsEnd,
    SeamMatching, Side, SurfaceSpec,
};

fn curve(name: &str, kind: CurveKind) -> PantsCurve {
    PantsCurve {
        name: name.to_owned(),
        kind,
    }
}

fn end(curve: usize, side: Side) -> PantsEnd {
    PantsEnd::Curve {
        curve: CurveId(curve),
        side,
    }
}

fn marking(spec: SurfaceSpec, curves: Vec<PantsCurve>, pants: Vec<[PantsEnd; 3]>) -> Marking {
    let pants = pants
        .into_iter()
        .enumerate()
        .map(|(i, ends)| Pants {
            name: format!("P{}", i + 1),
            ends,
        })
        .collect();
    let d = PantsDecomposition::new(curves, pants).unwrap();
    let seams: Vec<_> = d
        .internal_curves()
        .map(|id| (id, SeamMatching { pairing: [0, 1] }))
        .collect();
    build_marking(spec, d, &seams).unwrap()
}

/// Genus three as a chain: a | c | d,e | f | b, where `c` and `f` separate.
pub fn genus_three_chain() -> Marking {
    use Side::{Minus, Plus};
    let names = ["a", "b", "c", "d", "e", "f"];
    let curves = names.iter().map(|n| curve(n, CurveKind::Internal)).collect();
    marking(
        SurfaceSpec::new(3, 0, 0).unwrap(),
        curves,
        vec![
            [end(0, Plus), end(0, Minus), end(2, Plus)],
            [end(2, Minus), end(3, Plus), end(4, Plus)],
            [end(3, Minus), end(4, Minus), end(5, Plus)],
            [end(5, Minus), end(1, Plus), end(1, Minus)],
        ],
    )
}

/// Torus with one boundary curve `b` and pants curve `a`.
pub fn holed_torus() -> Marking {
    use Side::{Minus, Plus};
    marking(
        SurfaceSpec::new(1, 0, 1).unwrap(),
        vec![curve("a", CurveKind::Internal), curve("b", CurveKind::Boundary)],
        vec![[end(0, Plus), end(0, Minus), end(1, Plus)]],
    )
}
