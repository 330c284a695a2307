//! Extremal-length estimates from a collar decomposition.
//!
//! Annuli use the flat formula in their modulus and the estimated twist;
//! thick components use the square of an estimated hyperbolic length of the
//! part of the curve system they contain. The surface estimate is the
//! largest component value.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::collar::{
    collar_decomposition, component_curves, CollarDecomposition, CollarError, CollarParams,
    ThickComponent,
};
use crate::pants::{pants_orthogeodesics, PantsCuffs, PantsError};
use crate::surface::{
    estimated_twist, CurveId, CurveSystem, FNPoint, Marking, PantsEnd, SurfaceError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtremalError {
    #[error("annulus modulus must be positive and finite, got {0}")]
    Modulus(f64),
    #[error("twist estimate must be finite, got {0}")]
    Twist(f64),
    #[error("arc endpoint counts {0:?} have odd total")]
    Parity([u64; 3]),
    #[error("thick component {0} does not exist")]
    UnknownComponent(usize),
    #[error(transparent)]
    Pants(#[from] PantsError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Collar(#[from] CollarError),
}

/// Flat-annulus contribution: `i²(m + t̂²/m)` for crossing strands, `n²/m`
/// for core copies.
pub fn lambda_annulus(i: u64, n: u64, m: f64, t_hat: f64) -> Result<f64, ExtremalError> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(ExtremalError::Modulus(m));
    }
    if i > 0 {
        if !t_hat.is_finite() {
            return Err(ExtremalError::Twist(t_hat));
        }
        let i = i as f64;
        Ok(i * i * (m + t_hat * t_hat / m))
    } else {
        let n = n as f64;
        Ok(n * n / m)
    }
}

/// Number of arcs between each pair of cuffs of a pants whose cuffs carry
/// `m[0], m[1], m[2]` endpoints. The result is symmetric; diagonal entries
/// count arcs returning to the same cuff.
pub fn arc_multiplicities(m: [u64; 3]) -> Result<[[u64; 3]; 3], ExtremalError> {
    if !(m[0] + m[1] + m[2]).is_multiple_of(2) {
        return Err(ExtremalError::Parity(m));
    }
    let mut a = [[0u64; 3]; 3];
    let big = (0..3).max_by_key(|&i| (m[i], std::cmp::Reverse(i))).unwrap();
    let (j, k) = ((big + 1) % 3, (big + 2) % 3);
    if m[big] > m[j] + m[k] {
        a[big][j] = m[j];
        a[big][k] = m[k];
        a[big][big] = (m[big] - m[j] - m[k]) / 2;
    } else {
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            a[i][j] = (m[i] + m[j] - m[k]) / 2;
        }
    }
    for i in 0..3 {
        for j in 0..i {
            a[i][j] = a[j][i].max(a[i][j]);
            a[j][i] = a[i][j];
        }
    }
    Ok(a)
}

/// Which part of the decomposition a component value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentId {
    Annulus(CurveId),
    Thick(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentLength {
    pub component: ComponentId,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub breakdown: Vec<ComponentLength>,
}

/// Precomputed geometry of one point: its decomposition and the
/// orthogeodesics of every pants.
#[derive(Debug, Clone)]
pub struct Estimator<'a> {
    marking: &'a Marking,
    sigma: &'a FNPoint,
    decomposition: CollarDecomposition,
    thin: BTreeSet<CurveId>,
    // arc lengths between cuffs of each pants, truncated at thin collars
    arcs: Vec<[[f64; 3]; 3]>,
    cuff_lengths: Vec<[f64; 3]>,
}

impl<'a> Estimator<'a> {
    pub fn new(
        marking: &'a Marking,
        sigma: &'a FNPoint,
        params: &CollarParams,
    ) -> Result<Self, ExtremalError> {
        let decomposition = collar_decomposition(marking, sigma, params)?;
        Self::with_decomposition(marking, sigma, params, decomposition)
    }

    pub fn with_decomposition(
        marking: &'a Marking,
        sigma: &'a FNPoint,
        params: &CollarParams,
        decomposition: CollarDecomposition,
    ) -> Result<Self, ExtremalError> {
        let thin = decomposition.thin_curves();
        let mut arcs = Vec::new();
        let mut cuff_lengths = Vec::new();
        for p in marking.decomposition().pants() {
            let l = p.ends.map(|e| match e {
                PantsEnd::Curve { curve, .. } => sigma.lengths()[curve.0],
                PantsEnd::Puncture => 0.0,
            });
            // arcs stop where they enter a thin collar, at the curve of length eps0
            let depth = p.ends.map(|e| match e {
                PantsEnd::Curve { curve, .. } if thin.contains(&curve) => {
                    collar_depth(sigma.lengths()[curve.0], params.eps0())
                }
                _ => 0.0,
            });
            let o = pants_orthogeodesics(&PantsCuffs::new(l[0], l[1], l[2])?);
            let mut d = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    d[i][j] = match o.get(i, j) {
                        Ok(v) => (v - depth[i] - depth[j]).max(0.0),
                        Err(_) => f64::INFINITY,
                    };
                }
            }
            arcs.push(d);
            cuff_lengths.push(l);
        }
        Ok(Self {
            marking,
            sigma,
            thin,
            decomposition,
            arcs,
            cuff_lengths,
        })
    }

    pub fn decomposition(&self) -> &CollarDecomposition {
        &self.decomposition
    }

    /// Estimated hyperbolic length of the part of `beta` inside a thick component.
    pub fn thick_length(&self, component: &ThickComponent, beta: &CurveSystem) -> Result<f64, ExtremalError> {
        let d = self.marking.decomposition();
        let entries = beta.entries();
        let mut total = 0.0;
        for &p in &component.pants {
            let ends = d.pants()[p].ends;
            let m = ends.map(|e| match e {
                PantsEnd::Curve { curve, .. } => entries[curve.0].intersection,
                PantsEnd::Puncture => 0,
            });
            let a = arc_multiplicities(m)?;
            for i in 0..3 {
                for j in i..3 {
                    if a[i][j] > 0 {
                        let d = self.arcs[p][i][j];
                        if !d.is_finite() {
                            return Err(PantsError::Unbounded(i + 1, j + 1).into());
                        }
                        total += a[i][j] as f64 * d;
                    }
                }
            }
        }
        for &j in &component.cuffs {
            let e = entries[j.0];
            if e.intersection > 0 {
                let t = estimated_twist(self.marking, beta, self.sigma, j)?.value();
                total += t.abs() * self.sigma.lengths()[j.0] * e.intersection as f64;
            }
        }
        for j in component_curves(self.marking, component) {
            let e = entries[j.0];
            if e.core_copies > 0 && !self.thin.contains(&j) {
                total += e.core_copies as f64 * self.sigma.lengths()[j.0];
            }
        }
        Ok(total)
    }

    pub fn lambda_thick(&self, index: usize, beta: &CurveSystem) -> Result<f64, ExtremalError> {
        let c = self
            .decomposition
            .thick
            .get(index)
            .ok_or(ExtremalError::UnknownComponent(index))?;
        let l = self.thick_length(c, beta)?;
        Ok(l * l)
    }

    pub fn estimate(&self, beta: &CurveSystem) -> Result<Estimate, ExtremalError> {
        let mut breakdown = Vec::with_capacity(self.decomposition.thin.len() + self.decomposition.thick.len());
        for a in &self.decomposition.thin {
            let e = beta.entry(a.curve)?;
            let t = if e.intersection > 0 {
                estimated_twist(self.marking, beta, self.sigma, a.curve)?.value()
            } else {
                0.0
            };
            breakdown.push(ComponentLength {
                component: ComponentId::Annulus(a.curve),
                value: lambda_annulus(e.intersection, e.core_copies, a.modulus, t)?,
            });
        }
        for k in 0..self.decomposition.thick.len() {
            breakdown.push(ComponentLength {
                component: ComponentId::Thick(k),
                value: self.lambda_thick(k, beta)?,
            });
        }
        let value = breakdown.iter().map(|c| c.value).fold(0.0, f64::max);
        Ok(Estimate { value, breakdown })
    }

    pub fn value(&self, beta: &CurveSystem) -> Result<f64, ExtremalError> {
        Ok(self.estimate(beta)?.value)
    }

    /// Cuff lengths of pants `p` in end order, zero for punctures.
    pub fn cuff_lengths(&self, p: usize) -> [f64; 3] {
        self.cuff_lengths[p]
    }
}

/// Distance from a geodesic of length `ell` to the equidistant curve of
/// length `eps0`.
pub fn collar_depth(ell: f64, eps0: f64) -> f64 {
    (eps0 / ell).max(1.0).acosh()
}

/// Thick-component contribution `ℓ̂²` for component `index` of `decomposition`.
pub fn lambda_thick(
    marking: &Marking,
    decomposition: &CollarDecomposition,
    index: usize,
    beta: &CurveSystem,
    sigma: &FNPoint,
    params: &CollarParams,
) -> Result<f64, ExtremalError> {
    Estimator::with_decomposition(marking, sigma, params, decomposition.clone())?.lambda_thick(index, beta)
}

/// Surface estimate: the maximum over the components of `decomposition`,
/// or of the full collar decomposition when none is given.
pub fn lambda_surface_estimate(
    beta: &CurveSystem,
    sigma: &FNPoint,
    marking: &Marking,
    params: &CollarParams,
    decomposition: Option<&CollarDecomposition>,
) -> Result<Estimate, ExtremalError> {
    let est = match decomposition {
        Some(d) => Estimator::with_decomposition(marking, sigma, params, d.clone())?,
        None => Estimator::new(marking, sigma, params)?,
    };
    est.estimate(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pants::collar_modulus;
    use crate::surface::standard::genus_two;
    use crate::surface::CurveEntry;

    #[test]
    fn annulus_examples() {
        assert_eq!(lambda_annulus(2, 0, 10.0, 5.0).unwrap(), 50.0);
        assert!((lambda_annulus(0, 3, 10.0, 0.0).unwrap() - 0.9).abs() < 1e-15);
        assert_eq!(lambda_annulus(0, 0, 10.0, 0.0).unwrap(), 0.0);
        assert!(lambda_annulus(1, 0, 0.0, 0.0).is_err());
        assert!(lambda_annulus(1, 0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let a = arc_multiplicities([2, 2, 2]).unwrap();
        assert_eq!(a, [[0, 1, 1], [1, 0, 1], [1, 1, 0]]);
        let a = arc_multiplicities([2, 0, 0]).unwrap();
        assert_eq!(a, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]);
        let a = arc_multiplicities([1, 1, 0]).unwrap();
        assert_eq!(a, [[0, 1, 0], [1, 0, 0], [0, 0, 0]]);
        let a = arc_multiplicities([1, 7, 2]).unwrap();
        assert_eq!(a, [[0, 1, 0], [1, 2, 2], [0, 2, 0]]);
        assert!(arc_multiplicities([1, 0, 0]).is_err());
    }

    #[test]
    fn core_of_thin_curve() {
        let m = genus_two();
        let s = FNPoint::new(&m, vec![0.05, 1.2, 0.8], vec![0.0; 3]).unwrap();
        let beta = CurveSystem::new(&m, vec![CurveEntry::core(1), CurveEntry::default(), CurveEntry::default()]).unwrap();
        let e = lambda_surface_estimate(&beta, &s, &m, &CollarParams::default(), None).unwrap();
        let expected = 1.0 / collar_modulus(0.05, 0.5).unwrap();
        assert_eq!(e.value, expected);
        assert!((e.value - 0.016998).abs() < 1e-6);
        let empty = CurveSystem::empty(&m);
        assert_eq!(lambda_surface_estimate(&empty, &s, &m, &CollarParams::default(), None).unwrap().value, 0.0);
    }

    #[test]
    fn annulus_dominates_crossing_curve() {
        let m = genus_two();
        let s = FNPoint::new(&m, vec![0.05, 1.2, 0.8], vec![5.0, 0.0, 0.0]).unwrap();
        let beta = CurveSystem::new(
            &m,
            vec![CurveEntry::crossing(2, 0), CurveEntry::crossing(2, 0), CurveEntry::default()],
        )
        .unwrap();
        let e = lambda_surface_estimate(&beta, &s, &m, &CollarParams::default(), None).unwrap();
        let mm = collar_modulus(0.05, 0.5).unwrap();
        assert_eq!(e.value, 4.0 * (mm + 25.0 / mm));
        assert!((e.value - 237.03).abs() < 0.01);
        assert_eq!(e.breakdown[0].component, ComponentId::Annulus(CurveId(0)));
        assert!(e.breakdown.iter().all(|c| c.value <= e.value));
    }

    #[test]
    fn doubling_quadruples_thick_value() {
        let m = genus_two();
        let s = FNPoint::new(&m, vec![0.7, 1.2, 0.8], vec![0.3, -1.4, 2.2]).unwrap();
        let beta = CurveSystem::new(
            &m,
            vec![CurveEntry::crossing(1, 2), CurveEntry::crossing(1, -1), CurveEntry::default()],
        )
        .unwrap();
        let est = Estimator::new(&m, &s, &CollarParams::default()).unwrap();
        let one = est.lambda_thick(0, &beta).unwrap();
        let two = est.lambda_thick(0, &beta.scaled(2)).unwrap();
        assert!((two - 4.0 * one).abs() <= 1e-12 * two);
    }
}
