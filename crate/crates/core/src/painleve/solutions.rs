//! The uniformizing substitution `(z, τ) ↦ (x, y)` and the Picard and
//! Hitchin theta-function solutions.
//!
//! The family label `Aτ + B` is the `℘`-variable of the substitution, whose
//! lattice has periods `2, 2τ`. The theta functions (period 1) are therefore
//! evaluated at `w = (Aτ + B)/2`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{p6_residual_parametric, Family, P6Params, SolutionSpec};
use crate::elliptic::{wp_eval, PeriodConvention};
use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::report::ResidualReport;
use crate::theta::{modular_x, theta1_prime, theta_eval, theta_null, HalfPlanePoint, ThetaIndex, TruncationPolicy};

const POLE_TOL: f64 = 1e-10;
const CALIBRATION_TOL: f64 = 1e-6;

pub const PERIOD_REFERENCE_TAUS: [Complex64; 3] = [
    Complex64::new(0.0, 1.1),
    Complex64::new(0.3, 1.2),
    Complex64::new(-0.25, 0.9),
];

/// How `Aτ + B` enters `℘` in the substitution: period convention, and
/// whether the argument is halved first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubstitutionVariant {
    pub conv: PeriodConvention,
    pub halved: bool,
}

impl SubstitutionVariant {
    pub fn all() -> [SubstitutionVariant; 4] {
        let v = |conv, halved| SubstitutionVariant { conv, halved };
        [
            v(PeriodConvention::Unit, false),
            v(PeriodConvention::Unit, true),
            v(PeriodConvention::Double, false),
            v(PeriodConvention::Double, true),
        ]
    }

    pub fn name(&self) -> String {
        format!("{}/{}", self.conv.name(), if self.halved { "z-half" } else { "z" })
    }

    fn argument(&self, z: &Jet) -> Jet {
        if self.halved {
            *z * 0.5
        } else {
            *z
        }
    }
}

#[derive(Clone, Debug)]
pub struct PeriodCalibration {
    pub selected: SubstitutionVariant,
    /// Largest `|y_Picard − y_substitution|` over the reference points.
    pub scores: Vec<(SubstitutionVariant, f64)>,
}

/// `x = θ₄⁴/θ₃⁴` and `y = ⅓ + x/3 − (4/π²)·℘(z|τ)/θ₃⁴`.
pub fn substitution_xy(z: &Jet, tau: &Jet, conv: PeriodConvention, pol: &TruncationPolicy) -> Result<(Jet, Jet)> {
    let x = modular_x(tau, pol)?;
    let t3 = theta_null(ThetaIndex::THREE, tau, pol)?;
    let (wp, _) = wp_eval(z, tau, conv, pol)?;
    let y = (x + 1.0) * (1.0 / 3.0) - wp.checked_div(&t3.powi(4))? * (4.0 / (PI * PI));
    Ok((x, y.ensure_finite()?))
}

fn theta_argument(spec: &SolutionSpec, tau: &Jet) -> Jet {
    Jet::affine(tau, spec.a * 0.5, spec.b * 0.5)
}

fn pole_check(theta1: &Jet) -> Result<()> {
    let m = theta1.value().norm();
    if m <= POLE_TOL {
        Err(Error::SolutionPole(m))
    } else {
        Ok(())
    }
}

/// `y = −(ϑ₄²/ϑ₃²)·θ₂²(w)/θ₁²(w)`.
pub fn picard_y(spec: &SolutionSpec, tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    if spec.family != Family::Picard {
        return Err(Error::UnsupportedFamily);
    }
    let w = theta_argument(spec, tau);
    let t1 = theta_eval(ThetaIndex::ONE, &w, tau, pol)?;
    pole_check(&t1)?;
    let t2 = theta_eval(ThetaIndex::TWO, &w, tau, pol)?;
    let n3 = theta_null(ThetaIndex::THREE, tau, pol)?;
    let n4 = theta_null(ThetaIndex::FOUR, tau, pol)?;
    let y = -(n4 * n4 * t2 * t2).checked_div(&(n3 * n3 * t1 * t1))?;
    y.ensure_finite()
}

/// `y = (ϑ₄²/ϑ₃²)·{π ϑ₂² θ₂θ₃θ₄ / (θ₁′ + 2πi·ẇ·θ₁) − θ₂²}/θ₁²` with
/// `ẇ = A/2`.
pub fn hitchin_y(spec: &SolutionSpec, tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    if spec.family != Family::Hitchin {
        return Err(Error::UnsupportedFamily);
    }
    let w = theta_argument(spec, tau);
    let t1 = theta_eval(ThetaIndex::ONE, &w, tau, pol)?;
    pole_check(&t1)?;
    let t2 = theta_eval(ThetaIndex::TWO, &w, tau, pol)?;
    let t3 = theta_eval(ThetaIndex::THREE, &w, tau, pol)?;
    let t4 = theta_eval(ThetaIndex::FOUR, &w, tau, pol)?;
    let t1p = theta1_prime(&w, tau, pol)?;
    let n2 = theta_null(ThetaIndex::TWO, tau, pol)?;
    let n3 = theta_null(ThetaIndex::THREE, tau, pol)?;
    let n4 = theta_null(ThetaIndex::FOUR, tau, pol)?;
    let denom = t1p + t1 * (Complex64::new(0.0, PI) * spec.a);
    let dm = denom.value().norm();
    if dm <= POLE_TOL {
        return Err(Error::SolutionPole(dm));
    }
    let brace = (n2 * n2 * t2 * t3 * t4 * PI).checked_div(&denom)? - t2 * t2;
    let y = (n4 * n4 * brace).checked_div(&(n3 * n3 * t1 * t1))?;
    y.ensure_finite()
}

/// `y(τ)` for either family.
pub fn solution_y(spec: &SolutionSpec, tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    match spec.family {
        Family::Picard => picard_y(spec, tau, pol),
        Family::Hitchin => hitchin_y(spec, tau, pol),
    }
}

/// P6 residual of `(x(τ), y(τ))` for `spec` tested against parameters `p`.
pub fn solution_residual(
    spec: &SolutionSpec,
    tau: &HalfPlanePoint,
    p: &P6Params,
    pol: &TruncationPolicy,
    tol: f64,
) -> Result<ResidualReport> {
    let t = tau.jet(2);
    let x = modular_x(&t, pol)?;
    let y = solution_y(spec, &t, pol)?;
    let convention = calibrated_substitution()?.name();
    Ok(p6_residual_parametric(&x, &y, p)?
        .at(tau.tau())
        .with_tol(tol)
        .with_context(format!("p6-{}", spec.family.name()), convention))
}

/// P6 residual of a Picard solution at `α = β = γ = δ = 0`.
pub fn picard_residual(
    spec: &SolutionSpec,
    tau: &HalfPlanePoint,
    pol: &TruncationPolicy,
    tol: f64,
) -> Result<ResidualReport> {
    if spec.family != Family::Picard {
        return Err(Error::UnsupportedFamily);
    }
    solution_residual(spec, tau, &P6Params::PICARD, pol, tol)
}

/// P6 residual of a Hitchin solution at `α = β = γ = δ = ⅛`.
pub fn hitchin_residual(
    spec: &SolutionSpec,
    tau: &HalfPlanePoint,
    pol: &TruncationPolicy,
    tol: f64,
) -> Result<ResidualReport> {
    if spec.family != Family::Hitchin {
        return Err(Error::UnsupportedFamily);
    }
    solution_residual(spec, tau, &P6Params::HITCHIN, pol, tol)
}

fn cross_identity_gap(variant: SubstitutionVariant, spec: &SolutionSpec, tau: Complex64, pol: &TruncationPolicy) -> Result<f64> {
    let t = Jet::variable(tau, 0);
    let z = Jet::affine(&t, spec.a, spec.b);
    let (_, ys) = substitution_xy(&variant.argument(&z), &t, variant.conv, pol)?;
    let yp = picard_y(spec, &t, pol)?;
    Ok((ys.value() - yp.value()).norm())
}

/// Scores every [`SubstitutionVariant`] on the Picard cross-identity and
/// selects the unique one that passes at all reference points.
pub fn calibrate_period_convention(pol: &TruncationPolicy) -> Result<PeriodCalibration> {
    let spec = SolutionSpec::algebraic(Family::Picard, 1, 1, 3)?;
    let scores: Vec<(SubstitutionVariant, f64)> = SubstitutionVariant::all()
        .into_iter()
        .map(|v| {
            let worst = PERIOD_REFERENCE_TAUS
                .iter()
                .map(|&t| cross_identity_gap(v, &spec, t, pol).unwrap_or(f64::INFINITY))
                .fold(0.0, f64::max);
            (v, worst)
        })
        .collect();
    let passing: Vec<_> = scores.iter().filter(|(_, s)| *s < CALIBRATION_TOL).collect();
    match passing.as_slice() {
        [(v, _)] => Ok(PeriodCalibration {
            selected: *v,
            scores: scores.clone(),
        }),
        [] => Err(Error::ConventionNotCalibrated("no period variant reproduces the Picard solution".into())),
        _ => Err(Error::ConventionNotCalibrated(format!(
            "{} period variants pass; the choice is ambiguous",
            passing.len()
        ))),
    }
}

/// The write-once calibrated substitution variant (default policy).
pub fn calibrated_substitution() -> Result<SubstitutionVariant> {
    static CAL: OnceLock<std::result::Result<SubstitutionVariant, Error>> = OnceLock::new();
    CAL.get_or_init(|| calibrate_period_convention(&TruncationPolicy::default()).map(|c| c.selected))
        .clone()
}

/// `|−(π²/4)·z̈ − α℘′(z) − β℘′(z−1) − γ℘′(z−τ) − δ℘′(z−1−τ)|` for the
/// linear Picard `z = Aτ + B`, where `z̈ = 0`.
pub fn wp_form_residual(
    spec: &SolutionSpec,
    tau: &HalfPlanePoint,
    p: &P6Params,
    conv: PeriodConvention,
    pol: &TruncationPolicy,
    tol: f64,
) -> Result<ResidualReport> {
    if spec.family != Family::Picard {
        return Err(Error::UnsupportedFamily);
    }
    let t = tau.tau();
    let z = spec.a * t + spec.b;
    let tj = Jet::constant(t, 0);
    let shifts = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), t, t + 1.0];
    let mut rhs = Complex64::new(0.0, 0.0);
    for (coef, s) in p.as_array().into_iter().zip(shifts) {
        let (_, dp) = wp_eval(&Jet::constant(z - s, 0), &tj, conv, pol)?;
        rhs += coef * dp.value();
    }
    let lhs = Complex64::new(0.0, 0.0);
    Ok(ResidualReport::new(t, (lhs - rhs).norm(), tol, "wp-form", conv.name()))
}
