//! Special functions over complex jets and numerical checks of the
//! Painlevé VI / uniformization identities built on them.
//!
//! Layout, bottom-up:
//!
//! * [`jets`]: order-3 complex jets, Schwarz brackets, Möbius maps.
//! * [`theta`]: Jacobi theta functions and the modular function `x(τ)`.
//! * [`elliptic`]: Weierstrass `℘`, invariants, half-period values, and
//!   the lemniscatic torus.
//! * [`hypergeom`]: Gauss `₂F₁` with analytic continuation and the
//!   Chudnovsky Abelian integral `u(τ)`.
//! * [`painleve`]: P6 residuals, the Picard and Hitchin families, the
//!   `Γ(2)` Schwarz equation, cusp asymptotics, and algebraic-curve fitting.

// guards are written so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod elliptic;
pub mod error;
pub mod grid;
pub mod hypergeom;
pub mod jets;
pub mod painleve;
pub mod report;
pub mod theta;

pub use error::{Error, Result};
pub use jets::{Jet, MobiusMap};
pub use num_complex::Complex64;
pub use report::ResidualReport;
pub use theta::{HalfPlanePoint, ThetaIndex, TruncationPolicy};
