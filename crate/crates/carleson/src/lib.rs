//! Numerical workbench for Laplace-transform embedding inequalities on the
//! complex upper half-plane.
//!
//! The crate turns the objects of half-plane embedding theory into computable
//! structures:
//!
//! * [`signals`] — a dictionary of test functions on the half-line and on
//!   `R^d` (`d <= 2`) with exact norms and transforms where closed forms
//!   exist, plus grids and quadrature.
//! * [`measures`] — positive Borel measures on the upper half-plane,
//!   Carleson-box masses and box-condition suprema.
//! * [`laplace`] — the transform `Lf(z) = ∫_0^∞ f(t) e^{2πitz} dt` evaluated
//!   exactly for dictionary functions, on points and on half-plane grids.
//! * [`spaces`] — target-space norms: `L^q(dμ)`, weighted Bergman, Hardy, and
//!   the weighted Bergman norm of power series on the unit disk.
//! * [`littlewood_paley`] — FFT-based dyadic decomposition, Besov /
//!   Triebel-Lizorkin / Sobolev norms, and weighted Fourier-inequality checks.
//! * [`embeddings`] — exponent-region classification and bounded-ratio
//!   verification campaigns relating embedding quotients to Carleson
//!   constants.
//! * [`counterexamples`] — the square-lattice atomic measure, the two-weight
//!   factorization audit, and its counting-based infeasibility certificate.
//!
//! Everything is deterministic: random families are generated by a seeded
//! counter-based generator, and all reductions run in a fixed order.

pub mod counterexamples;
pub mod embeddings;
pub mod error;
pub mod fourier;
pub mod grid;
pub mod laplace;
pub mod littlewood_paley;
pub mod measures;
pub mod norms;
pub mod signals;
pub mod spaces;
pub(crate) mod util;

pub use error::{Error, Result};
pub use grid::{GridSpec, QuadRule, Spacing};
pub use measures::{Atom, BoxReport, CarlesonBox, Measure};
pub use norms::{NormValue, SpaceDescriptor};
pub use signals::TestFunction;

/// Crate version string embedded in machine-readable reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
