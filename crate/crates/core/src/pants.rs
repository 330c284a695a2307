//! Right-angled hexagons, pairs of pants and flat collars.
//!
//! A pair of pants with cuff lengths `L1, L2, L3` is the double of the
//! right-angled hexagon with alternating sides `L1/2, L2/2, L3/2`. The other
//! three sides are the seams `d12, d23, d13`. A cuff of length zero is a cusp
//! and the hexagon degenerates to a pentagon with one ideal vertex.

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PantsError {
    #[error("degenerate hexagon: cosh of the opposite side is {0}, not above 1")]
    DegenerateHexagon(f64),
    #[error("invalid cuff length {0}")]
    InvalidCuff(f64),
    #[error("orthogeodesic d{0}{1} runs into a cusp and is unbounded")]
    Unbounded(usize, usize),
    #[error("cuff index {0} out of range")]
    CuffIndex(usize),
    #[error("no collar: modulus pi/{delta} - 2/{eps0} is not positive")]
    NoCollar { delta: f64, eps0: f64 },
    #[error("invalid collar input: core length {delta}, boundary length {eps0}")]
    InvalidCollar { delta: f64, eps0: f64 },
    #[error("invalid flat annulus: circumference {circumference}, height {height}")]
    InvalidAnnulus { circumference: f64, height: f64 },
}

/// Cuff lengths of a pair of pants; zero encodes a cusp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PantsCuffs {
    lengths: [f64; 3],
}

impl PantsCuffs {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self, PantsError> {
        for l in [l1, l2, l3] {
            if !(l >= 0.0 && l.is_finite()) {
                return Err(PantsError::InvalidCuff(l));
            }
        }
        Ok(Self {
            lengths: [l1, l2, l3],
        })
    }

    pub fn lengths(&self) -> [f64; 3] {
        self.lengths
    }
}

/// Side `c` of a right-angled hexagon opposite to `gamma`, where `a` and `b`
/// are the sides alternating with `c`:
/// `cosh c = sinh a sinh b cosh gamma − cosh a cosh b`.
pub fn hexagon_side(a: f64, gamma: f64, b: f64) -> Result<f64, PantsError> {
    let cosh_c = a.sinh() * b.sinh() * gamma.cosh() - a.cosh() * b.cosh();
    if !(cosh_c > 1.0) {
        return Err(PantsError::DegenerateHexagon(cosh_c));
    }
    Ok(cosh_c.acosh())
}

/// Lengths of the simple orthogeodesics of a pair of pants.
///
/// `get(i, j)` for `i != j` is the seam between cuffs `i` and `j`; `get(i, i)`
/// is the orthogeodesic from cuff `i` back to itself. Entries touching a cusp
/// are infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orthogeodesics {
    d: [[f64; 3]; 3],
}

impl Orthogeodesics {
    pub fn get(&self, i: usize, j: usize) -> Result<f64, PantsError> {
        if i > 2 {
            return Err(PantsError::CuffIndex(i));
        }
        if j > 2 {
            return Err(PantsError::CuffIndex(j));
        }
        let v = self.d[i][j];
        if v.is_finite() {
            Ok(v)
        } else {
            Err(PantsError::Unbounded(i + 1, j + 1))
        }
    }

    /// Raw value, `f64::INFINITY` for entries running into a cusp.
    pub fn raw(&self, i: usize, j: usize) -> f64 {
        self.d[i][j]
    }
}

pub fn pants_orthogeodesics(cuffs: &PantsCuffs) -> Orthogeodesics {
    let half = cuffs.lengths.map(|l| 0.5 * l);
    let c = half.map(f64::cosh);
    let s = half.map(f64::sinh);
    let mut d = [[f64::INFINITY; 3]; 3];

    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        if s[i] > 0.0 && s[j] > 0.0 {
            let cosh_d = (c[k] + c[i] * c[j]) / (s[i] * s[j]);
            d[i][j] = cosh_d.acosh();
            d[j][i] = d[i][j];
        }
    }

    // The orthogeodesic from cuff i to itself crosses the opposite seam at a
    // right angle; each half is the common perpendicular between side L_i/2
    // and seam d_jk, and cosh(half) = sinh(d_ij) sinh(L_j/2). Written out so
    // that it stays finite when cuff j is a cusp.
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        if s[i] > 0.0 {
            let n = c[k] + c[i] * c[j];
            let cosh_half = (n * n - s[i] * s[i] * s[j] * s[j]).sqrt() / s[i];
            d[i][i] = 2.0 * cosh_half.acosh();
        }
    }
    Orthogeodesics { d }
}

/// Modulus `π/δ − 2/ε₀` of the collar around a geodesic of length `delta`
/// whose boundary curves have length `eps0`.
pub fn collar_modulus(delta: f64, eps0: f64) -> Result<f64, PantsError> {
    if !(delta > 0.0 && eps0 > 0.0 && delta.is_finite() && eps0.is_finite()) {
        return Err(PantsError::InvalidCollar { delta, eps0 });
    }
    let m = PI / delta - 2.0 / eps0;
    if m > 0.0 {
        Ok(m)
    } else {
        Err(PantsError::NoCollar { delta, eps0 })
    }
}

/// A Euclidean annulus whose universal cover is the strip
/// `[0, circumference] × R` with vertical period `height`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatAnnulus {
    circumference: f64,
    height: f64,
}

impl FlatAnnulus {
    pub fn new(circumference: f64, height: f64) -> Result<Self, PantsError> {
        if !(circumference > 0.0 && height > 0.0 && circumference.is_finite() && height.is_finite())
        {
            return Err(PantsError::InvalidAnnulus {
                circumference,
                height,
            });
        }
        Ok(Self {
            circumference,
            height,
        })
    }

    pub fn circumference(&self) -> f64 {
        self.circumference
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn modulus(&self) -> f64 {
        self.height / self.circumference
    }
}

/// Twist `(y1 − y0)/H` of an arc lifting to the segment from `(0, y0)` to `(L, y1)`.
pub fn flat_annulus_twist(ann: &FlatAnnulus, y0: f64, y1: f64) -> f64 {
    (y1 - y0) / ann.height
}

/// Vertical offset, in periods, between the endpoints of the two arcs on
/// each boundary circle.
const ARC_OFFSET: f64 = 0.5;

/// Number of interior crossings of two straight arcs with twists `t1`, `t2`.
///
/// The annulus is normalised to the unit strip `(0,1) × R` with period 1.
/// Arc one lifts to `y = t1 x`, the lifts of arc two to `y = ARC_OFFSET + k + t2 x`.
/// Every lift meeting arc one inside the strip is enumerated.
pub fn annulus_arc_crossings(t1: f64, t2: f64) -> u64 {
    let delta = t1 - t2;
    if delta == 0.0 {
        return 0;
    }
    // crossing with lift k at x = (ARC_OFFSET + k) / delta
    let lo = (-delta.abs() - ARC_OFFSET - 1.0).floor() as i64;
    let hi = (delta.abs() + 1.0).ceil() as i64;
    (lo..=hi)
        .filter(|&k| {
            let x = (ARC_OFFSET + k as f64) / delta;
            x > 0.0 && x < 1.0
        })
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_side_examples() {
        let expected = (2f64.sinh().powi(2) * 1f64.cosh() - 2f64.cosh().powi(2)).acosh();
        let c = hexagon_side(2.0, 1.0, 2.0).unwrap();
        assert_eq!(c, expected);
        assert!((c - 2.50189).abs() < 1e-5);
        assert!(matches!(
            hexagon_side(1.0, 1.0, 1.0),
            Err(PantsError::DegenerateHexagon(_))
        ));
        assert_eq!(hexagon_side(0.7, 2.0, 1.3), hexagon_side(1.3, 2.0, 0.7));
    }

    #[test]
    fn symmetric_pants() {
        let o = pants_orthogeodesics(&PantsCuffs::new(2.0, 2.0, 2.0).unwrap());
        let c1 = 1f64.cosh();
        let s1 = 1f64.sinh();
        let d12 = ((c1 + c1 * c1) / (s1 * s1)).acosh();
        assert!((o.get(0, 1).unwrap() - d12).abs() < 1e-15);
        assert!((d12 - 1.70491).abs() < 1e-5);
        assert_eq!(o.get(0, 1), o.get(0, 2));
        assert_eq!(o.get(0, 1), o.get(1, 2));
        assert_eq!(o.get(1, 0), o.get(0, 1));
        assert!((o.get(0, 0).unwrap() - o.get(1, 1).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn cusp_limit() {
        let o = pants_orthogeodesics(&PantsCuffs::new(2.0, 2.0, 0.0).unwrap());
        let c1 = 1f64.cosh();
        let s1 = 1f64.sinh();
        let d12 = ((1.0 + c1 * c1) / (s1 * s1)).acosh();
        assert!((o.get(0, 1).unwrap() - d12).abs() < 1e-15);
        assert_eq!(o.get(0, 2), Err(PantsError::Unbounded(1, 3)));
        assert_eq!(o.get(2, 2), Err(PantsError::Unbounded(3, 3)));
        assert!(o.get(0, 0).unwrap().is_finite());
        let near = pants_orthogeodesics(&PantsCuffs::new(2.0, 2.0, 1e-6).unwrap());
        assert!((near.get(0, 1).unwrap() - d12).abs() < 1e-10);
        assert!((near.get(0, 0).unwrap() - o.get(0, 0).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn two_cusps_keep_the_self_orthogeodesic_finite() {
        let o = pants_orthogeodesics(&PantsCuffs::new(1.0, 0.0, 0.0).unwrap());
        assert!(o.get(0, 0).unwrap().is_finite());
        assert!(o.get(1, 2).is_err());
        assert!(o.get(1, 1).is_err());
        assert_eq!(o.get(3, 0), Err(PantsError::CuffIndex(3)));
    }

    #[test]
    fn permutation_equivariance() {
        let l = [0.4, 1.7, 3.1];
        let base = pants_orthogeodesics(&PantsCuffs::new(l[0], l[1], l[2]).unwrap());
        let perm = [2, 0, 1];
        let permuted =
            pants_orthogeodesics(&PantsCuffs::new(l[perm[0]], l[perm[1]], l[perm[2]]).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                let a = permuted.get(i, j).unwrap();
                let b = base.get(perm[i], perm[j]).unwrap();
                assert!((a - b).abs() < 1e-13, "d{i}{j}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn collar_modulus_examples() {
        let m = collar_modulus(0.05, 0.5).unwrap();
        assert!((m - (20.0 * PI - 4.0)).abs() < 1e-12);
        assert!((m - 58.832).abs() < 1e-3);
        assert!(collar_modulus(0.01, 0.5).unwrap() > collar_modulus(0.02, 0.5).unwrap());
        assert!(matches!(collar_modulus(0.0, 0.5), Err(PantsError::InvalidCollar { .. })));
        assert!(matches!(collar_modulus(0.1, -1.0), Err(PantsError::InvalidCollar { .. })));
    }

    #[test]
    fn collar_boundary_case_has_no_collar() {
        // pi / (pi/4) == 2 / 0.5 exactly
        assert!(matches!(
            collar_modulus(PI / 4.0, 0.5),
            Err(PantsError::NoCollar { .. })
        ));
        assert!(matches!(collar_modulus(1.0, 0.5), Err(PantsError::NoCollar { .. })));
    }

    #[test]
    fn flat_twist() {
        let ann = FlatAnnulus::new(1.0, 2.0).unwrap();
        assert_eq!(flat_annulus_twist(&ann, 0.0, 0.0), 0.0);
        assert_eq!(flat_annulus_twist(&ann, 0.0, 3.0), 1.5);
        assert_eq!(flat_annulus_twist(&ann, 0.0, 3.0 + 2.0), 2.5);
        assert_eq!(flat_annulus_twist(&ann, 0.0, 3.0 - 2.0), 0.5);
        assert_eq!(ann.modulus(), 2.0);
        assert!(FlatAnnulus::new(0.0, 1.0).is_err());
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(annulus_arc_crossings(0.0, 0.0), 0);
        let c = annulus_arc_crossings(0.0, 3.0);
        assert!((2..=4).contains(&c));
        for (a, b) in [(0.3, 2.9), (-1.25, 4.0), (0.5, -0.5), (7.0, 7.75)] {
            assert_eq!(annulus_arc_crossings(a, b), annulus_arc_crossings(b, a));
        }
    }
}
