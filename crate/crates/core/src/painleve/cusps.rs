//! The `Γ(2)` Schwarz equation `[x, τ] = −½(x² − x + 1)/(x²(x − 1)²)` and the
//! exponential behaviour of `x(τ)` at the three cusps.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::{schwarz_bracket, Jet};
use crate::report::ResidualReport;
use crate::theta::{modular_lambda, modular_x, HalfPlanePoint, TruncationPolicy};

const CUSP_GUARD: f64 = 1e-8;

/// `|[x, τ] + ½(x² − x + 1)/(x²(x − 1)²)|` at `τ`.
pub fn x_schwarz_residual(tau: &HalfPlanePoint, pol: &TruncationPolicy, tol: f64) -> Result<ResidualReport> {
    let x = modular_x(&tau.jet(3), pol)?;
    let x0 = x.value();
    if x0.norm() < CUSP_GUARD || (x0 - 1.0).norm() < CUSP_GUARD {
        return Err(Error::SingularConfiguration(format!("x(τ) = {x0} is at a cusp value")));
    }
    let q = 0.5 * (x0 * x0 - x0 + 1.0) / (x0 * x0 * (x0 - 1.0) * (x0 - 1.0));
    let residual = (schwarz_bracket(&x)? + q).norm();
    Ok(ResidualReport::new(tau.tau(), residual, tol, "x-schwarz", "gamma2"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cusp {
    /// `τ → 0`, `x ≈ 16 e^{−πi/τ}`.
    Zero,
    /// `τ → 1`, `x ≈ (1/16) e^{πi/(τ−1)}`.
    One,
    /// `τ → i∞`, `x ≈ 1 − 16 e^{πiτ}`.
    Infinity,
}

impl Cusp {
    pub fn name(self) -> &'static str {
        match self {
            Cusp::Zero => "zero",
            Cusp::One => "one",
            Cusp::Infinity => "infinity",
        }
    }

    /// The local exponential `e^{πiτ′}` in the coordinate `τ′` at this cusp.
    fn local_nome(self, tau: Complex64) -> Complex64 {
        let ipi = Complex64::new(0.0, PI);
        match self {
            Cusp::Zero => (-ipi / tau).exp(),
            Cusp::One => (ipi / (tau - 1.0)).exp(),
            Cusp::Infinity => (ipi * tau).exp(),
        }
    }
}

/// One sample of a cusp check.
///
/// For `Zero` and `Infinity`, `leading_error` is `|x − asymptote|` and
/// `ratio` is `leading_error/|e^{πiτ′}|²`. For `One`, `leading_error` is
/// `log|x|` and `ratio` is `log|x| / Re(πi/(τ − 1))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspSample {
    pub tau: Complex64,
    pub leading_error: f64,
    pub ratio: f64,
}

/// Evaluates `x(τ)` against its leading cusp asymptote on `samples`, which
/// must approach the cusp (strictly shrinking local exponential).
pub fn cusp_asymptotics_check(
    cusp: Cusp,
    samples: &[HalfPlanePoint],
    pol: &TruncationPolicy,
) -> Result<Vec<CuspSample>> {
    let mut prev = f64::INFINITY;
    let mut out = Vec::with_capacity(samples.len());
    for s in samples {
        let tau = s.tau();
        let nome = cusp.local_nome(tau);
        if cusp == Cusp::One {
            // the exponential grows at this cusp
            let scale = nome.norm().recip();
            if !(scale < prev) {
                return Err(Error::CuspMismatch(format!("τ = {tau} does not move toward the cusp 1")));
            }
            prev = scale;
        } else {
            if !(nome.norm() < prev) || nome.norm() >= 1.0 {
                return Err(Error::CuspMismatch(format!("τ = {tau} does not move toward the cusp {}", cusp.name())));
            }
            prev = nome.norm();
        }
        let t = Jet::constant(tau, 0);
        let sample = match cusp {
            Cusp::Infinity => {
                // 1 − x = λ avoids cancellation in x − 1
                let lam = modular_lambda(&t, pol)?.value();
                let err = (lam - 16.0 * nome).norm();
                CuspSample {
                    tau,
                    leading_error: err,
                    ratio: err / nome.norm_sqr(),
                }
            }
            Cusp::Zero => {
                let x = modular_x(&t, pol)?.value();
                let err = (x - 16.0 * nome).norm();
                CuspSample {
                    tau,
                    leading_error: err,
                    ratio: err / nome.norm_sqr(),
                }
            }
            Cusp::One => {
                let x = modular_x(&t, pol)?.value();
                let growth = x.norm().ln();
                let rate = (Complex64::new(0.0, PI) / (tau - 1.0)).re;
                CuspSample {
                    tau,
                    leading_error: growth,
                    ratio: growth / rate,
                }
            }
        };
        out.push(sample);
    }
    Ok(out)
}
