//! Upper half-plane geometry.
//!
//! Distances follow the Teichmüller normalisation: `hyp_distance` is half of
//! the usual hyperbolic distance, so that the distance between two flat tori
//! equals their Teichmüller distance `(1/2) log K`. Positions along a
//! geodesic axis (projections, twisting numbers) use ordinary arclength.

use num_complex::Complex64;
use thiserror::Error;

/// Spread of per-crossing twisting numbers beyond which a warning is raised.
pub const CONJUGATE_TWIST_SPREAD: f64 = 1.0;
const SPREAD_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HypError {
    #[error("point ({x}, {y}) is not in the upper half-plane")]
    NotInUpperHalfPlane { x: f64, y: f64 },
    #[error("ideal point must be finite or the point at infinity")]
    NonFiniteIdeal,
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
    #[error("lattice basis is not positively oriented")]
    DegenerateLattice,
    #[error("extremal length of the zero class is undefined")]
    ZeroClass,
    #[error("projection undefined: ideal point is an endpoint of the axis")]
    ProjectionUndefined,
    #[error("geodesics do not cross transversally")]
    NotCrossing,
    #[error("no crossings supplied")]
    NoCrossings,
    #[error("translation length must be positive, got {0}")]
    NonPositiveLength(f64),
    #[error("mobius map must have positive determinant")]
    DegenerateMobius,
}

/// A point `x + iy` with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UHPoint {
    x: f64,
    y: f64,
}

impl UHPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, HypError> {
        if !(x.is_finite() && y.is_finite() && y > 0.0) {
            return Err(HypError::NotInUpperHalfPlane { x, y });
        }
        Ok(Self { x, y })
    }

    /// The base point `i`.
    pub fn i() -> Self {
        Self { x: 0.0, y: 1.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// A point of the boundary circle `R ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IdealPoint {
    Finite(f64),
    Infinity,
}

impl IdealPoint {
    pub fn finite(x: f64) -> Result<Self, HypError> {
        if x.is_finite() {
            Ok(IdealPoint::Finite(x))
        } else {
            Err(HypError::NonFiniteIdeal)
        }
    }
}

/// An oriented geodesic, running from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HGeodesic {
    start: IdealPoint,
    end: IdealPoint,
}

impl HGeodesic {
    pub fn new(start: IdealPoint, end: IdealPoint) -> Result<Self, HypError> {
        for p in [start, end] {
            if let IdealPoint::Finite(x) = p {
                if !x.is_finite() {
                    return Err(HypError::NonFiniteIdeal);
                }
            }
        }
        if start == end {
            return Err(HypError::DegenerateGeodesic);
        }
        Ok(Self { start, end })
    }

    /// Geodesic between two finite boundary points.
    pub fn between(a: f64, b: f64) -> Result<Self, HypError> {
        Self::new(IdealPoint::finite(a)?, IdealPoint::finite(b)?)
    }

    /// The geodesic from `a` up to `∞`.
    pub fn vertical(a: f64) -> Result<Self, HypError> {
        Self::new(IdealPoint::finite(a)?, IdealPoint::Infinity)
    }

    pub fn start(&self) -> IdealPoint {
        self.start
    }

    pub fn end(&self) -> IdealPoint {
        self.end
    }

    pub fn reversed(self) -> Self {
        Self {
            start: self.end,
            end: self.start,
        }
    }

    fn oriented(self, orientation: Orientation) -> Self {
        match orientation {
            Orientation::Positive => self,
            Orientation::Negative => self.reversed(),
        }
    }

    /// `|M(w)|` for an orientation-preserving Möbius map `M` sending `start`
    /// to 0 and `end` to ∞, up to a positive constant.
    fn axial_modulus(&self, w: Complex64) -> f64 {
        match (self.start, self.end) {
            (IdealPoint::Finite(p), IdealPoint::Finite(q)) => {
                (w - p).norm() / (w - q).norm()
            }
            (IdealPoint::Finite(p), IdealPoint::Infinity) => (w - p).norm(),
            (IdealPoint::Infinity, IdealPoint::Finite(q)) => 1.0 / (w - q).norm(),
            (IdealPoint::Infinity, IdealPoint::Infinity) => unreachable!(),
        }
    }

    /// `M(ξ)` for an ideal point as a signed extended real; positive values
    /// lie to the right of the oriented geodesic.
    fn axial_coordinate(&self, xi: IdealPoint) -> Result<f64, HypError> {
        if xi == self.start || xi == self.end {
            return Err(HypError::ProjectionUndefined);
        }
        let v = match (self.start, self.end, xi) {
            (IdealPoint::Finite(p), IdealPoint::Finite(q), IdealPoint::Finite(x)) => {
                (x - p) / (x - q) * (p - q).signum()
            }
            (IdealPoint::Finite(p), IdealPoint::Finite(q), IdealPoint::Infinity) => {
                (p - q).signum()
            }
            (IdealPoint::Finite(p), IdealPoint::Infinity, IdealPoint::Finite(x)) => x - p,
            (IdealPoint::Infinity, IdealPoint::Finite(q), IdealPoint::Finite(x)) => {
                -1.0 / (x - q)
            }
            _ => return Err(HypError::ProjectionUndefined),
        };
        Ok(v)
    }
}

/// Orientation of an axis relative to its stored start/end order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

/// A real Möbius transformation `z ↦ (az+b)/(cz+d)` normalised to `ad−bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl Mobius {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, HypError> {
        let det = a * d - b * c;
        if !(det > 0.0 && det.is_finite()) {
            return Err(HypError::DegenerateMobius);
        }
        let k = det.sqrt();
        Ok(Self {
            a: a / k,
            b: b / k,
            c: c / k,
            d: d / k,
        })
    }

    pub fn coefficients(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply(&self, z: UHPoint) -> UHPoint {
        let w = (self.a * z.to_complex() + self.b) / (self.c * z.to_complex() + self.d);
        // Im(w) = y / |cz+d|^2 > 0 for det 1
        UHPoint {
            x: w.re,
            y: w.im.max(f64::MIN_POSITIVE),
        }
    }

    pub fn apply_ideal(&self, p: IdealPoint) -> IdealPoint {
        match p {
            IdealPoint::Infinity => {
                if self.c == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite(self.a / self.c)
                }
            }
            IdealPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    pub fn apply_geodesic(&self, g: HGeodesic) -> HGeodesic {
        HGeodesic {
            start: self.apply_ideal(g.start),
            end: self.apply_ideal(g.end),
        }
    }
}

/// Teichmüller-normalised hyperbolic distance `(1/2) arccosh(1 + |z1−z2|²/(2 y1 y2))`.
///
/// Evaluated as `asinh(|z1−z2| / (2 sqrt(y1 y2)))`, which is the same
/// quantity without the cancellation of `arccosh` near 1.
pub fn hyp_distance(z1: UHPoint, z2: UHPoint) -> f64 {
    let chord = (z1.x - z2.x).hypot(z1.y - z2.y);
    (chord / (2.0 * (z1.y * z2.y).sqrt())).asinh()
}

/// `sup_t (y2 + (t+x2)²/y2) / (y1 + (t+x1)²/y1)`, including the `t → ∞`
/// limit `y1/y2`.
///
/// The supremum is located analytically: after translating `x1` to zero the
/// critical points are the roots of
/// `dx t² − (y1² − y2² − dx²) t − dx y1² = 0`.
pub fn k_ratio_sup(z1: UHPoint, z2: UHPoint) -> f64 {
    let dx = z2.x - z1.x;
    let (y1, y2) = (z1.y, z2.y);
    let ratio = |t: f64| (y2 + (t + dx) * (t + dx) / y2) / (y1 + t * t / y1);

    let mut best = y1 / y2;
    if dx == 0.0 {
        best = best.max(ratio(0.0));
    } else {
        let a = dx;
        let b = -(y1 * y1 - y2 * y2 - dx * dx);
        let c = -dx * y1 * y1;
        let disc = b * b - 4.0 * a * c;
        let sign = if b >= 0.0 { 1.0 } else { -1.0 };
        let q = -0.5 * (b + sign * disc.sqrt());
        for t in [q / a, c / q] {
            if t.is_finite() {
                best = best.max(ratio(t));
            }
        }
    }
    best.max(1.0)
}

/// A flat torus `C / (αZ + βZ)` with positively oriented basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusLattice {
    alpha: Complex64,
    beta: Complex64,
}

impl TorusLattice {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self, HypError> {
        let area = (beta * alpha.conj()).im;
        if !(area > 0.0 && area.is_finite()) {
            return Err(HypError::DegenerateLattice);
        }
        Ok(Self { alpha, beta })
    }

    /// The normalised lattice `(1, z)`.
    pub fn from_modulus(z: UHPoint) -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: z.to_complex(),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn area(&self) -> f64 {
        (self.beta * self.alpha.conj()).im
    }
}

/// Extremal length `|uα + vβ|² / Im(β ᾱ)` of the class `(u, v)`.
pub fn torus_extremal_length(lat: &TorusLattice, u: f64, v: f64) -> Result<f64, HypError> {
    if u == 0.0 && v == 0.0 {
        return Err(HypError::ZeroClass);
    }
    Ok((u * lat.alpha + v * lat.beta).norm_sqr() / lat.area())
}

/// Signed arclength position of the foot of the perpendicular from `xi` to
/// `axis`, measured from the foot of `origin`.
///
/// Positions increase toward the forward end of the axis after `orientation`
/// is applied.
pub fn project_ideal_to_axis(
    axis: HGeodesic,
    xi: IdealPoint,
    origin: UHPoint,
    orientation: Orientation,
) -> Result<f64, HypError> {
    let axis = axis.oriented(orientation);
    axis.axial_coordinate(xi)?;
    let xi_mod = match xi {
        IdealPoint::Finite(x) => axis.axial_modulus(Complex64::new(x, 0.0)),
        IdealPoint::Infinity => 1.0,
    };
    Ok(xi_mod.ln() - axis.axial_modulus(origin.to_complex()).ln())
}

/// Signed twisting number `(p(a_R) − p(a_L)) / ell` of `crossing` about `axis`.
///
/// `a_R` is the endpoint of the crossing geodesic lying to the right of the
/// oriented axis. The value does not depend on `orientation`: reversing the
/// axis swaps the two sides and negates positions.
pub fn twist_prime(
    axis: HGeodesic,
    ell: f64,
    crossing: HGeodesic,
    origin: UHPoint,
    orientation: Orientation,
) -> Result<f64, HypError> {
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(HypError::NonPositiveLength(ell));
    }
    let oriented = axis.oriented(orientation);
    let side = |p: IdealPoint| match oriented.axial_coordinate(p) {
        Ok(v) => Ok(v),
        Err(_) => Err(HypError::NotCrossing),
    };
    let (s0, s1) = (side(crossing.start)?, side(crossing.end)?);
    let (right, left) = if s0 > 0.0 && s1 < 0.0 {
        (crossing.start, crossing.end)
    } else if s0 < 0.0 && s1 > 0.0 {
        (crossing.end, crossing.start)
    } else {
        return Err(HypError::NotCrossing);
    };
    let pr = project_ideal_to_axis(axis, right, origin, orientation)?;
    let pl = project_ideal_to_axis(axis, left, origin, orientation)?;
    Ok((pr - pl) / ell)
}

/// Result of minimising per-crossing twisting numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistMin {
    pub value: f64,
    pub spread: f64,
    /// Set when the spread exceeds the bound satisfied by twisting numbers
    /// of a single curve at different crossings.
    pub spread_warning: bool,
}

pub fn twist_min(values: &[f64]) -> Result<TwistMin, HypError> {
    let (lo, hi) = values
        .iter()
        .fold(None, |acc: Option<(f64, f64)>, &v| match acc {
            None => Some((v, v)),
            Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
        })
        .ok_or(HypError::NoCrossings)?;
    let spread = hi - lo;
    Ok(TwistMin {
        value: lo,
        spread,
        spread_warning: spread > CONJUGATE_TWIST_SPREAD + SPREAD_TOL,
    })
}
