//! Betweenness and instability diagnostics for geodesic metric spaces.
//!
//! A point `z` is δ-between `x` and `y` when
//! `d(x,z) + d(z,y) − d(x,y) ≤ δ`. The instability function `s(δ, L)` is
//! the supremum of `d(z, [xy])` over such triples with `d(x,y) ≤ L`; here it
//! is bounded below by explicit search. Every space works on flat `f64`
//! coordinate vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::hyp2::{hyp_distance, UHPoint};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstabilityError {
    #[error("invalid ladder: {0}")]
    Ladder(String),
    #[error("invalid space: {0}")]
    Space(String),
    #[error("s-grids do not match: no value for delta={delta}, L={l}")]
    GridMismatch { delta: f64, l: f64 },
    #[error("need at least two positive s-values to fit a growth rate, got {0}")]
    TooFewPoints(usize),
}

/// A geodesic metric space with a chosen geodesic between any two points.
pub trait MetricSpace: Sync {
    fn dim(&self) -> usize;
    fn distance(&self, a: &[f64], b: &[f64]) -> f64;
    /// Point at fraction `t ∈ [0, 1]` along the chosen geodesic from `a` to `b`.
    fn segment_point(&self, a: &[f64], b: &[f64], t: f64) -> Vec<f64>;
    fn base_point(&self) -> Vec<f64>;
    /// Point reached from `p` by moving a distance `h` along coordinate
    /// direction `dir` (`0..2·dim()`, even indices positive).
    fn offset(&self, p: &[f64], dir: usize, h: f64) -> Vec<f64>;
    /// Pairs `(x, y)` at distance `L` used as structured witnesses.
    fn probe_pairs(&self, l: f64) -> Vec<(Vec<f64>, Vec<f64>)>;
}

/// The model spaces used by the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// `Rⁿ` with the Euclidean norm.
    Euclidean(usize),
    /// `Rⁿ` with the sup norm and straight segments.
    SupProduct(usize),
    /// Sup-metric product of `k` upper half-planes (half-factor metric),
    /// each factor following its own geodesic proportionally.
    HypProduct(usize),
}

impl Space {
    pub fn new_euclidean(n: usize) -> Result<Self, InstabilityError> {
        Self::checked(Space::Euclidean(n), n)
    }

    pub fn new_sup(n: usize) -> Result<Self, InstabilityError> {
        Self::checked(Space::SupProduct(n), n)
    }

    pub fn new_hyp(k: usize) -> Result<Self, InstabilityError> {
        Self::checked(Space::HypProduct(k), k)
    }

    fn checked(s: Space, n: usize) -> Result<Self, InstabilityError> {
        if n == 0 {
            return Err(InstabilityError::Space("dimension must be positive".into()));
        }
        Ok(s)
    }
}

fn uh(p: &[f64], f: usize) -> UHPoint {
    UHPoint::new(p[2 * f], p[2 * f + 1]).expect("point of the upper half-plane")
}

/// Point at fraction `t` of the hyperbolic geodesic from `a` to `b`.
fn hyp_geodesic_point(a: (f64, f64), b: (f64, f64), t: f64) -> (f64, f64) {
    let ((x0, y0), (x1, y1)) = (a, b);
    if x0 == x1 {
        return (x0, y0 * (y1 / y0).powf(t));
    }
    // semicircle centred on the real axis; s(θ) = −ln tan(θ/2) is arclength
    let c = ((x1 * x1 + y1 * y1) - (x0 * x0 + y0 * y0)) / (2.0 * (x1 - x0));
    let r = (x0 - c).hypot(y0);
    let arc = |x: f64, y: f64| -(0.5 * y.atan2(x - c)).tan().ln();
    let s = arc(x0, y0) + t * (arc(x1, y1) - arc(x0, y0));
    let theta = 2.0 * (-s).exp().atan();
    (c + r * theta.cos(), r * theta.sin())
}

impl MetricSpace for Space {
    fn dim(&self) -> usize {
        match *self {
            Space::Euclidean(n) | Space::SupProduct(n) => n,
            Space::HypProduct(k) => 2 * k,
        }
    }

    fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            Space::Euclidean(_) => a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt(),
            Space::SupProduct(_) => a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max),
            Space::HypProduct(k) => (0..k).map(|f| hyp_distance(uh(a, f), uh(b, f))).fold(0.0, f64::max),
        }
    }

    fn segment_point(&self, a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
        match *self {
            Space::Euclidean(_) | Space::SupProduct(_) => {
                a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
            }
            Space::HypProduct(k) => (0..k)
                .flat_map(|f| {
                    let (x, y) = hyp_geodesic_point((a[2 * f], a[2 * f + 1]), (b[2 * f], b[2 * f + 1]), t);
                    [x, y]
                })
                .collect(),
        }
    }

    fn base_point(&self) -> Vec<f64> {
        match *self {
            Space::Euclidean(n) | Space::SupProduct(n) => vec![0.0; n],
            Space::HypProduct(k) => [0.0, 1.0].repeat(k),
        }
    }

    fn offset(&self, p: &[f64], dir: usize, h: f64) -> Vec<f64> {
        let sign = if dir.is_multiple_of(2) { 1.0 } else { -1.0 };
        let i = dir / 2;
        let mut q = p.to_vec();
        match *self {
            Space::Euclidean(_) | Space::SupProduct(_) => q[i] += sign * h,
            Space::HypProduct(_) => {
                let (f, vertical) = (i / 2, i % 2 == 1);
                if vertical {
                    // ½ log of the height ratio is the distance
                    q[2 * f + 1] *= (2.0 * sign * h).exp();
                } else {
                    q[2 * f] += sign * 2.0 * q[2 * f + 1] * h.sinh();
                }
            }
        }
        q
    }

    fn probe_pairs(&self, l: f64) -> Vec<(Vec<f64>, Vec<f64>)> {
        let x = self.base_point();
        let mut out = Vec::new();
        match *self {
            Space::Euclidean(n) | Space::SupProduct(n) => {
                let mut y = x.clone();
                y[0] = l;
                out.push((x.clone(), y));
                if n > 1 {
                    let mut y = x.clone();
                    y[0] = l;
                    y[1] = l;
                    if let Space::Euclidean(_) = self {
                        y[0] = l / 2f64.sqrt();
                        y[1] = l / 2f64.sqrt();
                    }
                    out.push((x.clone(), y));
                }
            }
            Space::HypProduct(_) => {
                out.push((x.clone(), self.offset(&x, 2, l)));
                out.push((x.clone(), self.offset(&x, 0, l)));
            }
        }
        out
    }
}

/// `d(x,z) + d(z,y) − d(x,y)`.
pub fn slack<S: MetricSpace + ?Sized>(space: &S, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
    (space.distance(x, z) + space.distance(z, y) - space.distance(x, y)).max(0.0)
}

/// Whether `z` is δ-between `x` and `y`, together with the slack. A few ulps
/// of `d(x,y)` absorb rounding so that exactly collinear triples pass at `δ = 0`.
pub fn is_delta_between<S: MetricSpace + ?Sized>(space: &S, x: &[f64], y: &[f64], z: &[f64], delta: f64) -> (bool, f64) {
    let s = slack(space, x, y, z);
    (s <= delta + 4.0 * f64::EPSILON * (1.0 + space.distance(x, y)), s)
}

/// Distance from `z` to the chosen geodesic from `x` to `y`: sampled, then
/// refined by ternary search to `resolution` in the path parameter.
pub fn segment_distance<S: MetricSpace + ?Sized>(space: &S, x: &[f64], y: &[f64], z: &[f64], resolution: f64) -> f64 {
    if space.distance(x, y) == 0.0 {
        return space.distance(z, x);
    }
    const SAMPLES: usize = 64;
    let at = |t: f64| space.distance(z, &space.segment_point(x, y, t));
    let (mut best_t, mut best) = (0.0, at(0.0));
    for i in 1..=SAMPLES {
        let t = i as f64 / SAMPLES as f64;
        let d = at(t);
        if d < best {
            best = d;
            best_t = t;
        }
    }
    let step = 1.0 / SAMPLES as f64;
    let (mut lo, mut hi) = ((best_t - step).max(0.0), (best_t + step).min(1.0));
    while hi - lo > resolution.max(1e-15) {
        let a = lo + (hi - lo) / 3.0;
        let b = hi - (hi - lo) / 3.0;
        if at(a) <= at(b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    best.min(at(0.5 * (lo + hi)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetweennessWitness {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    pub delta_slack: f64,
    pub offline_distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    pub random_samples: usize,
    pub seed: u64,
    pub resolution: f64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            random_samples: 2000,
            seed: 0x5eed,
            resolution: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstabilityBound {
    pub value: f64,
    pub witness: Option<BetweennessWitness>,
}

fn witness<S: MetricSpace + ?Sized>(space: &S, x: Vec<f64>, y: Vec<f64>, z: Vec<f64>, resolution: f64) -> BetweennessWitness {
    let delta_slack = slack(space, &x, &y, &z);
    let offline_distance = segment_distance(space, &x, &y, &z, resolution);
    BetweennessWitness {
        x,
        y,
        z,
        delta_slack,
        offline_distance,
    }
}

fn better(a: Option<BetweennessWitness>, b: Option<BetweennessWitness>) -> Option<BetweennessWitness> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.offline_distance > a.offline_distance { b } else { a }),
        (a, b) => a.or(b),
    }
}

/// Lower bound for `s(δ, L)`: structured witnesses (the midpoint of each
/// probe pair pushed along each coordinate direction as far as betweenness
/// allows) followed by seeded random triples.
pub fn instability_lower_bound<S: MetricSpace + ?Sized>(space: &S, delta: f64, l: f64, budget: &SearchBudget) -> InstabilityBound {
    let mut best: Option<BetweennessWitness> = None;
    for (x, y) in space.probe_pairs(l) {
        let mid = space.segment_point(&x, &y, 0.5);
        for dir in 0..2 * space.dim() {
            let ok = |h: f64| is_delta_between(space, &x, &y, &space.offset(&mid, dir, h), delta).0;
            let (mut lo, mut hi) = (0.0, l + delta + 1.0);
            if ok(hi) {
                lo = hi;
            } else {
                for _ in 0..200 {
                    let m = 0.5 * (lo + hi);
                    if ok(m) {
                        lo = m;
                    } else {
                        hi = m;
                    }
                    if hi - lo <= 1e-15 * hi {
                        break;
                    }
                }
            }
            if ok(lo) {
                let w = witness(space, x.clone(), y.clone(), space.offset(&mid, dir, lo), budget.resolution);
                best = better(best, Some(w));
            }
        }
    }
    let random = (0..budget.random_samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            rng.set_stream(k as u64);
            random_triple(space, delta, l, &mut rng, budget.resolution)
        })
        .reduce(|| None, better);
    let best = better(best, random);
    InstabilityBound {
        value: best.as_ref().map_or(0.0, |w| w.offline_distance),
        witness: best,
    }
}

fn random_triple<S: MetricSpace + ?Sized>(
    space: &S,
    delta: f64,
    l: f64,
    rng: &mut ChaCha8Rng,
    resolution: f64,
) -> Option<BetweennessWitness> {
    let walk = |p: Vec<f64>, r: f64, rng: &mut ChaCha8Rng| {
        (0..2 * space.dim()).fold(p, |q, dir| space.offset(&q, dir, r * rng.gen::<f64>() / space.dim() as f64))
    };
    let x = space.base_point();
    let mut y = walk(x.clone(), l, rng);
    let d = space.distance(&x, &y);
    if d > l {
        y = space.segment_point(&x, &y, l / d);
    }
    let t = rng.gen::<f64>();
    let z = walk(space.segment_point(&x, &y, t), 0.5 * l + delta, rng);
    if !is_delta_between(space, &x, &y, &z, delta).0 {
        return None;
    }
    Some(witness(space, x, y, z, resolution))
}

/// Closed form `√(2Lδ + δ²)/2` for Euclidean space.
pub fn euclidean_instability_exact(delta: f64, l: f64) -> f64 {
    (2.0 * l * delta + delta * delta).sqrt() / 2.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square residual of the log-log fit.
    pub residual: f64,
    /// Ladder points dropped because their s-value was not positive.
    pub excluded: Vec<f64>,
}

/// Least-squares slope of `log s` against `log L`, skipping non-positive `s`.
pub fn fit_growth_rate(points: &[(f64, f64)]) -> Result<GrowthFit, InstabilityError> {
    let (used, dropped): (Vec<_>, Vec<_>) = points.iter().partition(|(_, s)| *s > 0.0);
    if used.len() < 2 {
        return Err(InstabilityError::TooFewPoints(used.len()));
    }
    let xs: Vec<f64> = used.iter().map(|(l, _)| l.ln()).collect();
    let ys: Vec<f64> = used.iter().map(|(_, s)| s.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum::<f64>() / n).sqrt();
    Ok(GrowthFit {
        slope,
        intercept,
        residual,
        excluded: dropped.iter().map(|(l, _)| *l).collect(),
    })
}

/// Checks that a ladder has at least five points spanning three decades.
pub fn validate_ladder(ladder: &[f64]) -> Result<(), InstabilityError> {
    if ladder.len() < 5 {
        return Err(InstabilityError::Ladder(format!("need at least 5 points, got {}", ladder.len())));
    }
    if ladder.iter().any(|l| !(*l > 0.0 && l.is_finite())) {
        return Err(InstabilityError::Ladder("values must be positive".into()));
    }
    let lo = ladder.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ladder.iter().copied().fold(0.0, f64::max);
    if (hi / lo).log10() < 3.0 - 1e-12 {
        return Err(InstabilityError::Ladder(format!("values span {:.3} decades, need 3", (hi / lo).log10())));
    }
    Ok(())
}

/// `n` points spaced geometrically from `lo` to `hi` inclusive.
pub fn geometric_ladder(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let r = (hi / lo).ln() / (n - 1) as f64;
    (0..n)
        .map(|k| if k + 1 == n { hi } else { lo * (r * k as f64).exp() })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderRow {
    pub l: f64,
    pub bound: InstabilityBound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEstimate {
    pub rows: Vec<LadderRow>,
    pub fit: GrowthFit,
}

/// Growth rate of the sampled lower bounds along a ladder of `L` values.
pub fn growth_rate_estimate<S: MetricSpace + ?Sized>(
    space: &S,
    delta: f64,
    ladder: &[f64],
    budget: &SearchBudget,
) -> Result<GrowthEstimate, InstabilityError> {
    validate_ladder(ladder)?;
    let rows: Vec<LadderRow> = ladder
        .iter()
        .map(|&l| LadderRow {
            l,
            bound: instability_lower_bound(space, delta, l, budget),
        })
        .collect();
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.l, r.bound.value)).collect();
    let fit = fit_growth_rate(&points)?;
    Ok(GrowthEstimate { rows, fit })
}

/// Sampled values of an instability function on a `(δ, L)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SGrid {
    entries: Vec<(f64, f64, f64)>,
}

impl SGrid {
    pub fn new() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn insert(&mut self, delta: f64, l: f64, s: f64) {
        self.entries.push((delta, l, s));
    }

    pub fn from_fn(deltas: &[f64], ls: &[f64], mut f: impl FnMut(f64, f64) -> f64) -> Self {
        let mut g = Self::new();
        for &d in deltas {
            for &l in ls {
                g.insert(d, l, f(d, l));
            }
        }
        g
    }

    pub fn get(&self, delta: f64, l: f64) -> Option<f64> {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()));
        self.entries
            .iter()
            .find(|(d, x, _)| close(*d, delta) && close(*x, l))
            .map(|e| e.2)
    }

    pub fn entries(&self) -> &[(f64, f64, f64)] {
        &self.entries
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            entries: self.entries.iter().map(|&(d, l, s)| (d, l, k * s)).collect(),
        }
    }
}

impl Default for SGrid {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransferViolation {
    pub delta: f64,
    pub l: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransferReport {
    pub checked: usize,
    pub violations: Vec<TransferViolation>,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `s_X(δ, L) ≤ 3c + 4 s_Y(δ + 3c, L + c)` at every grid point of `sx`.
/// `sy` must contain every shifted argument.
pub fn distortion_transfer_check(sx: &SGrid, sy: &SGrid, c: f64) -> Result<TransferReport, InstabilityError> {
    let mut violations = Vec::new();
    for &(delta, l, lhs) in sx.entries() {
        let y = sy
            .get(delta + 3.0 * c, l + c)
            .ok_or(InstabilityError::GridMismatch { delta: delta + 3.0 * c, l: l + c })?;
        let rhs = 3.0 * c + 4.0 * y;
        if lhs > rhs {
            violations.push(TransferViolation { delta, l, lhs, rhs });
        }
    }
    Ok(TransferReport {
        checked: sx.entries().len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betweenness_examples() {
        let r = Space::Euclidean(1);
        assert_eq!(is_delta_between(&r, &[0.0], &[2.0], &[1.0], 0.01), (true, 0.0));
        let sup = Space::SupProduct(2);
        let (x, y, z) = ([0.0, 0.0], [10.0, 0.0], [5.0, 5.0]);
        assert_eq!(is_delta_between(&sup, &x, &y, &z, 0.01), (true, 0.0));
        let e = Space::Euclidean(2);
        let (ok, s) = is_delta_between(&e, &x, &y, &z, 0.01);
        assert!(!ok);
        assert!((s - (2.0 * 50f64.sqrt() - 10.0)).abs() < 1e-12);
    }

    #[test]
    fn segment_distance_examples() {
        let sup = Space::SupProduct(2);
        assert_eq!(segment_distance(&sup, &[0.0, 0.0], &[10.0, 0.0], &[5.0, 5.0], 1e-9), 5.0);
        let e = Space::Euclidean(2);
        assert!((segment_distance(&e, &[0.0, 0.0], &[2.0, 0.0], &[1.0, 0.7], 1e-9) - 0.7).abs() < 1e-12);
        assert!(segment_distance(&e, &[0.0, 0.0], &[2.0, 0.0], &[0.3, 0.0], 1e-9) < 1e-8);
        assert_eq!(segment_distance(&e, &[1.0, 1.0], &[1.0, 1.0], &[4.0, 5.0], 1e-9), 5.0);
    }

    #[test]
    fn hyperbolic_segment_is_geodesic() {
        let h = Space::HypProduct(1);
        let (a, b) = ([-1.0, 0.5], [2.0, 3.0]);
        let d = h.distance(&a, &b);
        for t in [0.0, 0.1, 0.5, 0.77, 1.0] {
            let p = h.segment_point(&a, &b, t);
            assert!((h.distance(&a, &p) - t * d).abs() < 1e-12);
            assert!((h.distance(&p, &b) - (1.0 - t) * d).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_formula() {
        assert_eq!(euclidean_instability_exact(0.0, 5.0), 0.0);
        assert!((euclidean_instability_exact(0.02, 1.0) - 0.100499).abs() < 1e-6);
        let (a, b) = (euclidean_instability_exact(0.3, 2.0), euclidean_instability_exact(0.9, 6.0));
        assert!((b - 3.0 * a).abs() < 1e-12);
    }

    #[test]
    fn sup_witness() {
        let sup = Space::SupProduct(2);
        let b = instability_lower_bound(&sup, 0.0, 10.0, &SearchBudget::default());
        assert!(b.value >= 5.0 - 1e-9);
        let e = Space::Euclidean(2);
        let b = instability_lower_bound(&e, 0.0, 10.0, &SearchBudget::default());
        assert!(b.value < 1e-6);
    }

    #[test]
    fn growth_fit_on_sqrt() {
        let pts: Vec<_> = geometric_ladder(1.0, 1e4, 9).into_iter().map(|l| (l, l.sqrt())).collect();
        assert!((fit_growth_rate(&pts).unwrap().slope - 0.5).abs() < 1e-6);
        let flat: Vec<_> = pts.iter().map(|&(l, _)| (l, 3.0)).collect();
        assert!(fit_growth_rate(&flat).unwrap().slope.abs() < 1e-12);
        assert!(validate_ladder(&[1.0]).is_err());
        assert!(validate_ladder(&[1.0, 2.0, 3.0, 4.0, 5.0]).is_err());
    }

    #[test]
    fn transfer_controls() {
        let g = SGrid::from_fn(&[0.1, 0.2], &[1.0, 10.0], euclidean_instability_exact);
        assert!(distortion_transfer_check(&g, &g, 0.0).unwrap().holds());
        assert!(!distortion_transfer_check(&g.scaled(10.0), &g, 0.0).unwrap().holds());
        assert!(distortion_transfer_check(&g, &g, 1.0).is_err());
    }
}
