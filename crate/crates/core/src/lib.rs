//! Computational geometry of hyperbolic surfaces in Fenchel-Nielsen coordinates.
//!
//! The crate is organised bottom-up:
//!
//! - [`hyp2`]: exact upper half-plane geometry, twisting numbers and the
//!   torus extremal-length formulas.
//! - [`pants`]: right-angled hexagon trigonometry, pants orthogeodesics and
//!   flat collar geometry.
//! - [`surface`]: pants decompositions, markings, Fenchel-Nielsen points and
//!   curve systems in intersection/twist coordinates.
//! - [`collar`]: thin/thick decompositions of a Fenchel-Nielsen point.
//! - [`extremal`]: extremal-length estimators for annuli, thick pieces and
//!   whole surfaces.
//! - [`teich`]: curve-family distance estimates, the product-region map and
//!   its sup metric.
//! - [`instability`]: betweenness and instability diagnostics for metric spaces.
//! - [`format`] and [`cli`]: the text file format and the command-line front end.

pub mod cli;
pub mod collar;
pub mod error;
pub mod extremal;
pub mod format;
pub mod hyp2;
pub mod instability;
pub mod pants;
pub mod surface;
pub mod teich;

pub use error::{Error, Result};
