//! Distance estimates on Teichmüller space and the product-region model.
//!
//! [`kerckhoff_distance_estimate`] replaces the supremum over all curves in
//! Kerckhoff's formula by a finite [`CurveFamily`] and the extremal lengths by
//! their estimates. [`pi_map`] sends a point to the noded surface times one
//! upper half-plane per pinched curve, where the sup metric is
//! [`product_distance`].

use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::collar::CollarParams;
use crate::extremal::{Estimator, ExtremalError};
use crate::hyp2::{hyp_distance, torus_extremal_length, HypError, TorusLattice, UHPoint};
use crate::surface::{CurveEntry, CurveId, CurveSystem, FNPoint, Marking, SurfaceError, Twist};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TeichError {
    #[error("curve family is empty")]
    EmptyFamily,
    #[error("curve family would have {0} members, above the limit of {1}")]
    FamilyTooLarge(u128, usize),
    #[error("product points have different shapes: {left} and {right} factors")]
    Shape { left: usize, right: usize },
    #[error(transparent)]
    Extremal(#[from] ExtremalError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Hyp(#[from] HypError),
}

/// Bounds for the default family: intersection numbers up to `i_max` and
/// twist offsets with `|b| ≤ b_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyBounds {
    pub i_max: u64,
    pub b_max: i64,
}

impl Default for FamilyBounds {
    fn default() -> Self {
        Self { i_max: 2, b_max: 8 }
    }
}

pub const MAX_FAMILY_SIZE: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFamily {
    curves: Vec<CurveSystem>,
}

impl CurveFamily {
    pub fn new(curves: Vec<CurveSystem>) -> Result<Self, TeichError> {
        if curves.is_empty() {
            return Err(TeichError::EmptyFamily);
        }
        Ok(Self { curves })
    }

    /// Every curve system with internal intersection numbers in `0..=i_max`
    /// (not all zero, parity respected) and offsets in `-b_max..=b_max` on the
    /// crossed curves, followed by the core of each pants curve.
    pub fn generate(marking: &Marking, bounds: FamilyBounds) -> Result<Self, TeichError> {
        let n = marking.curve_count();
        let internal: Vec<CurveId> = marking.decomposition().internal_curves().collect();
        let k = internal.len();
        let width = 2 * bounds.b_max.max(0) as u128 + 1;
        let per = bounds.i_max as u128 + 1;
        let bound = per.checked_pow(k as u32).and_then(|p| p.checked_mul(width.checked_pow(k as u32)?));
        match bound {
            Some(b) if b <= MAX_FAMILY_SIZE as u128 => {}
            other => return Err(TeichError::FamilyTooLarge(other.unwrap_or(u128::MAX), MAX_FAMILY_SIZE)),
        }
        let mut curves = Vec::new();
        let mut counts = vec![0u64; k];
        loop {
            if counts.iter().any(|&c| c > 0) {
                let mut entries = vec![CurveEntry::default(); n];
                for (j, &c) in internal.iter().zip(&counts) {
                    entries[j.0].intersection = c;
                }
                if CurveSystem::new(marking, entries.clone()).is_ok() {
                    push_twists(marking, &internal, &mut entries, 0, bounds.b_max, &mut curves);
                }
            }
            if !advance(&mut counts, bounds.i_max) {
                break;
            }
        }
        for j in marking.decomposition().curve_ids() {
            let mut entries = vec![CurveEntry::default(); n];
            entries[j.0] = CurveEntry::core(1);
            curves.push(CurveSystem::new(marking, entries)?);
        }
        Self::new(curves)
    }

    pub fn curves(&self) -> &[CurveSystem] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// The family with `extra` appended.
    pub fn extended(&self, extra: impl IntoIterator<Item = CurveSystem>) -> Self {
        let mut curves = self.curves.clone();
        curves.extend(extra);
        Self { curves }
    }
}

fn advance(counts: &mut [u64], max: u64) -> bool {
    for c in counts.iter_mut() {
        if *c < max {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

fn push_twists(
    marking: &Marking,
    internal: &[CurveId],
    entries: &mut Vec<CurveEntry>,
    pos: usize,
    b_max: i64,
    out: &mut Vec<CurveSystem>,
) {
    let Some(&j) = internal.get(pos) else {
        // parity was checked once for these intersection numbers
        out.push(CurveSystem::new(marking, entries.clone()).expect("valid curve system"));
        return;
    };
    if entries[j.0].intersection == 0 {
        push_twists(marking, internal, entries, pos + 1, b_max, out);
        return;
    }
    for b in -b_max..=b_max {
        entries[j.0].twist_offset = b;
        push_twists(marking, internal, entries, pos + 1, b_max, out);
    }
    entries[j.0].twist_offset = 0;
}

/// Largest of `a/b` and `b/a`; pairs of zeros are skipped (`None`) and a
/// single zero gives infinity.
fn symmetric_ratio(a: f64, b: f64) -> Option<f64> {
    match (a > 0.0, b > 0.0) {
        (false, false) => None,
        (true, true) => Some((a / b).max(b / a)),
        _ => Some(f64::INFINITY),
    }
}

/// `½ log` of the largest symmetric ratio of estimated extremal lengths
/// over the family.
pub fn kerckhoff_distance_estimate(
    sigma: &FNPoint,
    tau: &FNPoint,
    family: &CurveFamily,
    marking: &Marking,
    params: &CollarParams,
) -> Result<f64, TeichError> {
    if family.is_empty() {
        return Err(TeichError::EmptyFamily);
    }
    let es = Estimator::new(marking, sigma, params)?;
    let et = Estimator::new(marking, tau, params)?;
    let sup = family
        .curves()
        .par_iter()
        .map(|beta| -> Result<f64, TeichError> {
            let r = symmetric_ratio(es.value(beta)?, et.value(beta)?);
            Ok(r.unwrap_or(1.0))
        })
        .try_reduce(|| 1.0, |a, b| Ok(a.max(b)))?;
    Ok(0.5 * sup.ln())
}

/// Finite-family Kerckhoff estimate on the torus: the extremal lengths are
/// exact and the family is all primitive `(u, v)` with `|u|, |v| ≤ n`.
pub fn torus_family_estimate(z1: UHPoint, z2: UHPoint, n: u32) -> f64 {
    let l1 = TorusLattice::from_modulus(z1);
    let l2 = TorusLattice::from_modulus(z2);
    let n = n as i64;
    let mut sup = 1.0f64;
    for u in 0..=n {
        for v in -n..=n {
            if u.gcd(&v) != 1 || (u == 0 && v != 1) {
                continue;
            }
            let a = torus_extremal_length(&l1, u as f64, v as f64).expect("primitive class");
            let b = torus_extremal_length(&l2, u as f64, v as f64).expect("primitive class");
            if let Some(r) = symmetric_ratio(a, b) {
                sup = sup.max(r);
            }
        }
    }
    0.5 * sup.ln()
}

/// Image of a point under the product-region map.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint {
    /// Coordinates on the noded surface, indexed like its marking.
    pub base: FNPoint,
    /// `(s_i, 1/ℓ_i)` for each pinched curve, in increasing curve order.
    pub factors: Vec<UHPoint>,
    pub pinched: Vec<CurveId>,
}

/// Forgets the coordinates of the curves in `gamma` on the base and records
/// them as upper half-plane points `(s, 1/ℓ)`.
pub fn pi_map(sigma: &FNPoint, gamma: &BTreeSet<CurveId>, marking: &Marking) -> Result<ProductPoint, TeichError> {
    let (_, kept) = marking.pinch(gamma)?;
    let base = FNPoint::from_parts(
        kept.iter().map(|id| sigma.lengths()[id.0]).collect(),
        kept.iter().map(|id| sigma.twists()[id.0]).collect(),
    );
    let mut factors = Vec::with_capacity(gamma.len());
    for &id in gamma {
        factors.push(UHPoint::new(sigma.twist(id)?.value(), 1.0 / sigma.length(id)?)?);
    }
    Ok(ProductPoint {
        base,
        factors,
        pinched: gamma.iter().copied().collect(),
    })
}

/// Re-inserts the pinched coordinates. Lengths come back as `1/(1/ℓ)`,
/// which can differ from `ℓ` in the last bit.
pub fn pi_inverse(p: &ProductPoint, marking: &Marking) -> Result<FNPoint, TeichError> {
    let n = marking.curve_count();
    let mut lengths = Vec::with_capacity(n);
    let mut twists = Vec::with_capacity(n);
    let mut base = 0;
    for id in marking.decomposition().curve_ids() {
        if let Some(k) = p.pinched.iter().position(|&g| g == id) {
            let z = p.factors[k];
            lengths.push(1.0 / z.y());
            twists.push(Twist::from_f64(z.x()).ok_or(HypError::NotInUpperHalfPlane { x: z.x(), y: z.y() })?);
        } else {
            lengths.push(p.base.lengths()[base]);
            twists.push(p.base.twists()[base]);
            base += 1;
        }
    }
    Ok(FNPoint::from_parts(lengths, twists))
}

/// Sup metric: the largest of the base distance and the factor distances.
pub fn product_distance<F>(p: &ProductPoint, q: &ProductPoint, base_metric: F) -> Result<f64, TeichError>
where
    F: FnOnce(&FNPoint, &FNPoint) -> Result<f64, TeichError>,
{
    if p.factors.len() != q.factors.len() || p.pinched != q.pinched {
        return Err(TeichError::Shape {
            left: p.factors.len(),
            right: q.factors.len(),
        });
    }
    let mut d = base_metric(&p.base, &q.base)?;
    for (a, b) in p.factors.iter().zip(&q.factors) {
        d = d.max(hyp_distance(*a, *b));
    }
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discrepancy {
    pub d_teich: f64,
    pub d_product: f64,
    pub discrepancy: f64,
    /// Some pinched curve is longer than `eps1` in one of the points.
    pub thin_warning: bool,
}

/// Everything needed to compare the two distances for a fixed pinched set.
#[derive(Debug, Clone)]
pub struct ProductRegion<'a> {
    marking: &'a Marking,
    gamma: BTreeSet<CurveId>,
    base_marking: Marking,
    base_family: Option<CurveFamily>,
    params: CollarParams,
}

impl<'a> ProductRegion<'a> {
    pub fn new(
        marking: &'a Marking,
        gamma: BTreeSet<CurveId>,
        params: CollarParams,
        base_bounds: FamilyBounds,
    ) -> Result<Self, TeichError> {
        let (base_marking, _) = marking.pinch(&gamma)?;
        let base_family = if base_marking.curve_count() == 0 {
            None
        } else {
            Some(CurveFamily::generate(&base_marking, base_bounds)?)
        };
        Ok(Self {
            marking,
            gamma,
            base_marking,
            base_family,
            params,
        })
    }

    pub fn base_marking(&self) -> &Marking {
        &self.base_marking
    }

    /// Estimated distance on the noded surface; zero when nothing is left.
    pub fn base_distance(&self, a: &FNPoint, b: &FNPoint) -> Result<f64, TeichError> {
        match &self.base_family {
            None => Ok(0.0),
            Some(f) => kerckhoff_distance_estimate(a, b, f, &self.base_marking, &self.params),
        }
    }

    pub fn product_distance(&self, sigma: &FNPoint, tau: &FNPoint) -> Result<f64, TeichError> {
        let p = pi_map(sigma, &self.gamma, self.marking)?;
        let q = pi_map(tau, &self.gamma, self.marking)?;
        product_distance(&p, &q, |a, b| self.base_distance(a, b))
    }

    pub fn discrepancy(&self, sigma: &FNPoint, tau: &FNPoint, family: &CurveFamily) -> Result<Discrepancy, TeichError> {
        let d_teich = kerckhoff_distance_estimate(sigma, tau, family, self.marking, &self.params)?;
        let d_product = self.product_distance(sigma, tau)?;
        let eps = self.params.eps1();
        let thin_warning = self
            .gamma
            .iter()
            .any(|id| sigma.lengths()[id.0] > eps || tau.lengths()[id.0] > eps);
        Ok(Discrepancy {
            d_teich,
            d_product,
            discrepancy: (d_teich - d_product).abs(),
            thin_warning,
        })
    }
}

/// One-shot comparison of the estimated distance and the product distance.
pub fn product_region_discrepancy(
    sigma: &FNPoint,
    tau: &FNPoint,
    gamma: &BTreeSet<CurveId>,
    marking: &Marking,
    params: &CollarParams,
    family: &CurveFamily,
    base_bounds: FamilyBounds,
) -> Result<Discrepancy, TeichError> {
    ProductRegion::new(marking, gamma.clone(), *params, base_bounds)?.discrepancy(sigma, tau, family)
}

/// Length ratio `(y₂ + (b+x₂)²/y₂) / (y₁ + (b+x₁)²/y₁)` contributed by an
/// annulus whose twist moves by `b`.
pub fn annulus_ratio_check(b: f64, x1: f64, y1: f64, x2: f64, y2: f64) -> Result<f64, TeichError> {
    UHPoint::new(x1, y1)?;
    UHPoint::new(x2, y2)?;
    Ok((y2 + (b + x2).powi(2) / y2) / (y1 + (b + x1).powi(2) / y1))
}
