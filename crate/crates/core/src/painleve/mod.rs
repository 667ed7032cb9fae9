//! Painlevé VI in the normalization
//!
//! ```text
//! y″ = ½(1/y + 1/(y−1) + 1/(y−x)) y′² − (1/x + 1/(x−1) + 1/(y−x)) y′
//!    + y(y−1)(y−x)/(x²(x−1)²) · {α − βx/y² + γ(x−1)/(y−1)² − (δ−½)x(x−1)/(y−x)²}
//! ```
//!
//! together with its theta-function solutions, the `Γ(2)` Schwarz equation
//! for `x(τ)`, cusp asymptotics and algebraic-curve extraction.

mod cusps;
mod fit;
mod solutions;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::report::ResidualReport;

pub use cusps::{cusp_asymptotics_check, x_schwarz_residual, Cusp, CuspSample};
pub use fit::{fit_algebraic_relation, fit_minimal_relation, CurveFit, CurveFitSpec};
pub use solutions::{
    calibrate_period_convention, calibrated_substitution, hitchin_residual, hitchin_y, picard_residual, picard_y,
    solution_residual, solution_y, substitution_xy, wp_form_residual, PeriodCalibration, SubstitutionVariant,
    PERIOD_REFERENCE_TAUS,
};

const SEPARATION: f64 = 1e-10;

/// Parameters `(α, β, γ, δ)` exactly as they appear in the equation above.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct P6Params {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
}

impl P6Params {
    pub const PICARD: P6Params = P6Params::real(0.0, 0.0, 0.0, 0.0);
    pub const HITCHIN: P6Params = P6Params::real(0.125, 0.125, 0.125, 0.125);

    pub const fn real(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        P6Params {
            alpha: Complex64::new(alpha, 0.0),
            beta: Complex64::new(beta, 0.0),
            gamma: Complex64::new(gamma, 0.0),
            delta: Complex64::new(delta, 0.0),
        }
    }

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    /// The same equation written with the usual
    /// `α + βx/y² + γ(x−1)/(y−1)² + δx(x−1)/(y−x)²` bracket:
    /// `(α, −β, γ, ½ − δ)`.
    pub fn to_standard(&self) -> [Complex64; 4] {
        [self.alpha, -self.beta, self.gamma, 0.5 - self.delta]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Picard,
    Hitchin,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Picard => "picard",
            Family::Hitchin => "hitchin",
        }
    }

    pub fn params(self) -> P6Params {
        match self {
            Family::Picard => P6Params::PICARD,
            Family::Hitchin => P6Params::HITCHIN,
        }
    }
}

/// A member of the Picard or Hitchin family, labelled by the linear
/// function `Aτ + B`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolutionSpec {
    pub family: Family,
    pub a: Complex64,
    pub b: Complex64,
    /// `(ν, μ, N)` with `A = ν/N`, `B = μ/N` for the algebraic members.
    pub algebraic: Option<(i64, i64, i64)>,
}

impl SolutionSpec {
    pub fn new(family: Family, a: Complex64, b: Complex64) -> Self {
        SolutionSpec {
            family,
            a,
            b,
            algebraic: None,
        }
    }

    pub fn algebraic(family: Family, nu: i64, mu: i64, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParams(format!("N must be at least 1, got {n}")));
        }
        Ok(SolutionSpec {
            family,
            a: Complex64::new(nu as f64 / n as f64, 0.0),
            b: Complex64::new(mu as f64 / n as f64, 0.0),
            algebraic: Some((nu, mu, n)),
        })
    }
}

fn ensure_separated(what: &str, a: Complex64, b: Complex64) -> Result<()> {
    if (a - b).norm() < SEPARATION {
        Err(Error::SingularConfiguration(format!("{what} (|difference| = {:e})", (a - b).norm())))
    } else {
        Ok(())
    }
}

/// Right-hand side of the equation for `y″` given `(x, y, y′)`.
pub fn p6_rhs(x: Complex64, y: Complex64, yx: Complex64, p: &P6Params) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    ensure_separated("x = 0", x, zero)?;
    ensure_separated("x = 1", x, one)?;
    ensure_separated("y = 0", y, zero)?;
    ensure_separated("y = 1", y, one)?;
    ensure_separated("y = x", y, x)?;
    let (ym1, xm1, yx_) = (y - 1.0, x - 1.0, y - x);
    let first = 0.5 * (y.inv() + ym1.inv() + yx_.inv()) * yx * yx;
    let second = (x.inv() + xm1.inv() + yx_.inv()) * yx;
    let bracket = p.alpha - p.beta * x / (y * y) + p.gamma * xm1 / (ym1 * ym1)
        - (p.delta - 0.5) * x * xm1 / (yx_ * yx_);
    let third = y * ym1 * yx_ / (x * x * xm1 * xm1) * bracket;
    let out = first - second + third;
    if out.is_finite() {
        Ok(out)
    } else {
        Err(Error::NonFiniteResult)
    }
}

/// `|y_xx − rhs(x, y, y_x)|` for a solution given parametrically by jets
/// `x(t)`, `y(t)`.
///
/// The parameter value is unknown here, so `tau` is NaN and `tol` is zero;
/// callers attach both with [`ResidualReport::at`] and
/// [`ResidualReport::with_tol`].
pub fn p6_residual_parametric(x: &Jet, y: &Jet, p: &P6Params) -> Result<ResidualReport> {
    if x.order() < 2 || y.order() < 2 {
        return Err(Error::InvalidJet("P6 residual needs order-2 jets".into()));
    }
    let (x1, x2) = (x.d(1), x.d(2));
    if x1.norm() <= SEPARATION {
        return Err(Error::CriticalPoint(x1.norm()));
    }
    let (y1, y2) = (y.d(1), y.d(2));
    let yx = y1 / x1;
    let yxx = (y2 * x1 - y1 * x2) / (x1 * x1 * x1);
    let rhs = p6_rhs(x.value(), y.value(), yx, p)?;
    Ok(ResidualReport::new(
        Complex64::new(f64::NAN, f64::NAN),
        (yxx - rhs).norm(),
        0.0,
        "p6",
        "none",
    ))
}
