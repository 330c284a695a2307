//! Thin/thick collar decompositions of a Fenchel-Nielsen point.
//!
//! Only pants curves can be thin. A thin internal curve of length `δ` carries
//! the collar of modulus `π/δ − 2/ε₀`; a thin boundary curve carries half of
//! that collar, between the boundary geodesic and a curve of length `ε₀`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::pants::{collar_modulus, PantsError};
use crate::surface::{CurveId, CurveKind, FNPoint, Marking, PantsEnd, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CollarError {
    #[error("collar parameters must satisfy 0 < eps1 < eps0 < margulis, got eps1={eps1}, eps0={eps0}, margulis={margulis}")]
    Ordering { eps0: f64, eps1: f64, margulis: f64 },
    #[error("collars around curves of length eps1={eps1} have modulus {modulus} < 1")]
    SmallModulus { eps1: f64, modulus: f64 },
    #[error("curve {0:?} is not thin")]
    NotThin(String),
    #[error("thin curve {curve:?}: {source}")]
    Modulus { curve: String, source: PantsError },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

pub const DEFAULT_EPS0: f64 = 0.5;
pub const DEFAULT_EPS1: f64 = 0.1;

/// `2 asinh 1`, the collar constant of the hyperbolic plane.
pub fn default_margulis() -> f64 {
    2.0 * 1f64.asinh()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollarParams {
    eps0: f64,
    eps1: f64,
    margulis: f64,
}

impl Default for CollarParams {
    fn default() -> Self {
        Self {
            eps0: DEFAULT_EPS0,
            eps1: DEFAULT_EPS1,
            margulis: default_margulis(),
        }
    }
}

impl CollarParams {
    pub fn new(eps0: f64, eps1: f64, margulis: f64) -> Result<Self, CollarError> {
        if !(0.0 < eps1 && eps1 < eps0 && eps0 < margulis && margulis.is_finite()) {
            return Err(CollarError::Ordering {
                eps0,
                eps1,
                margulis,
            });
        }
        // the thinnest collar allowed has the largest core, eps1
        let modulus = std::f64::consts::PI / eps1 - 2.0 / eps0;
        if modulus < 1.0 {
            return Err(CollarError::SmallModulus { eps1, modulus });
        }
        Ok(Self {
            eps0,
            eps1,
            margulis,
        })
    }

    pub fn with_eps(eps0: f64, eps1: f64) -> Result<Self, CollarError> {
        Self::new(eps0, eps1, default_margulis())
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn eps1(&self) -> f64 {
        self.eps1
    }

    pub fn margulis(&self) -> f64 {
        self.margulis
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThinAnnulus {
    pub curve: CurveId,
    pub core_length: f64,
    pub modulus: f64,
    pub peripheral: bool,
}

/// A connected union of pants with the internal cuffs it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThickComponent {
    pub pants: Vec<usize>,
    pub cuffs: Vec<CurveId>,
}

impl ThickComponent {
    pub fn contains_pants(&self, p: usize) -> bool {
        self.pants.binary_search(&p).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CollarDecomposition {
    pub thin: Vec<ThinAnnulus>,
    pub thick: Vec<ThickComponent>,
}

impl CollarDecomposition {
    pub fn thin_curves(&self) -> BTreeSet<CurveId> {
        self.thin.iter().map(|a| a.curve).collect()
    }

    pub fn annulus(&self, id: CurveId) -> Option<&ThinAnnulus> {
        self.thin.iter().find(|a| a.curve == id)
    }
}

/// Curves of length at most `eps1`, in curve order.
pub fn thin_curves(marking: &Marking, sigma: &FNPoint, params: &CollarParams) -> Vec<CurveId> {
    marking
        .decomposition()
        .curve_ids()
        .filter(|&id| sigma.lengths()[id.0] <= params.eps1)
        .collect()
}

pub fn collar_decomposition(
    marking: &Marking,
    sigma: &FNPoint,
    params: &CollarParams,
) -> Result<CollarDecomposition, CollarError> {
    let thin: BTreeSet<CurveId> = thin_curves(marking, sigma, params).into_iter().collect();
    build(marking, sigma, params, &thin)
}

/// Decomposition using only the annuli around `subset`, which must consist
/// of thin curves.
pub fn partial_decomposition(
    marking: &Marking,
    sigma: &FNPoint,
    params: &CollarParams,
    subset: &BTreeSet<CurveId>,
) -> Result<CollarDecomposition, CollarError> {
    for &id in subset {
        let l = sigma.length(id)?;
        if l > params.eps1 {
            return Err(CollarError::NotThin(marking.curve_name(id).to_owned()));
        }
    }
    build(marking, sigma, params, subset)
}

fn build(
    marking: &Marking,
    sigma: &FNPoint,
    params: &CollarParams,
    thin: &BTreeSet<CurveId>,
) -> Result<CollarDecomposition, CollarError> {
    let d = marking.decomposition();
    let mut annuli = Vec::with_capacity(thin.len());
    for &id in thin {
        let core_length = sigma.length(id)?;
        let peripheral = d.curve(id)?.kind == CurveKind::Boundary;
        let full = collar_modulus(core_length, params.eps0).map_err(|source| CollarError::Modulus {
            curve: marking.curve_name(id).to_owned(),
            source,
        })?;
        annuli.push(ThinAnnulus {
            curve: id,
            core_length,
            modulus: if peripheral { 0.5 * full } else { full },
            peripheral,
        });
    }
    // boundary curves never join pants, so only internal curves matter here
    let thick = d
        .components_without(thin)
        .into_iter()
        .map(|mut pants| {
            pants.sort_unstable();
            let cuffs = d
                .internal_curves()
                .filter(|id| !thin.contains(id))
                .filter(|&id| {
                    d.adjacent_pants(id)
                        .is_some_and(|(a, _)| pants.binary_search(&a).is_ok())
                })
                .collect();
            ThickComponent { pants, cuffs }
        })
        .collect();
    Ok(CollarDecomposition {
        thin: annuli,
        thick,
    })
}

/// Curves bounding or lying in a thick component: its internal cuffs plus
/// every curve attached to one of its pants.
pub fn component_curves(marking: &Marking, component: &ThickComponent) -> BTreeSet<CurveId> {
    let d = marking.decomposition();
    component
        .pants
        .iter()
        .flat_map(|&p| d.pants()[p].ends.iter())
        .filter_map(|e| match e {
            PantsEnd::Curve { curve, .. } => Some(*curve),
            PantsEnd::Puncture => None,
        })
        .collect()
}
