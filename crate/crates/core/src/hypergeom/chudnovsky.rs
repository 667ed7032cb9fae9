//! The Abelian integral `u(τ) = k · (ϑ_a/ϑ_b) · ₂F₁(½, ¼; 5/4; (ϑ_a/ϑ_b)⁴)`
//! of the Chudnovsky orbifold and its identity `[u, τ] = −2℘(2u)` against
//! the lemniscatic `℘`.
//!
//! The prefactor `k` and the orientation of the theta ratios are selected
//! once by [`calibrate_chud_variant`], which scores every variant on
//! [`CHUD_REFERENCE_TAUS`].

use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{cut_distance, gauss_2f1, HypergeomParams};
use crate::elliptic::wp_lemniscatic;
use crate::error::{Error, Result};
use crate::jets::{schwarz_bracket, Jet};
use crate::report::ResidualReport;
use crate::theta::{theta_null, HalfPlanePoint, ThetaIndex, TruncationPolicy};

pub const CHUD_REFERENCE_TAUS: [Complex64; 3] = [
    Complex64::new(0.35, 1.05),
    Complex64::new(-0.4, 0.8),
    Complex64::new(0.1, 1.3),
];

const CALIBRATION_TOL: f64 = 1e-4;
const CUT_CLEARANCE: f64 = 1e-3;
const DEFAULT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaRatio {
    /// `ϑ₃/ϑ₂`
    ThreeOverTwo,
    /// `ϑ₂/ϑ₃`
    TwoOverThree,
}

impl ThetaRatio {
    fn label(self) -> &'static str {
        match self {
            ThetaRatio::ThreeOverTwo => "t3/t2",
            ThetaRatio::TwoOverThree => "t2/t3",
        }
    }

    fn eval(self, t2: &Jet, t3: &Jet) -> Result<Jet> {
        match self {
            ThetaRatio::ThreeOverTwo => t3.checked_div(t2),
            ThetaRatio::TwoOverThree => t2.checked_div(t3),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChudVariant {
    pub prefactor: f64,
    pub ratio: ThetaRatio,
    pub argument: ThetaRatio,
}

impl ChudVariant {
    /// The formula as displayed: `½ · ϑ₃/ϑ₂ · ₂F₁(…; ϑ₃⁴/ϑ₂⁴)`.
    pub const PRINTED: ChudVariant = ChudVariant {
        prefactor: 0.5,
        ratio: ThetaRatio::ThreeOverTwo,
        argument: ThetaRatio::ThreeOverTwo,
    };

    pub fn all() -> Vec<ChudVariant> {
        let ratios = [ThetaRatio::ThreeOverTwo, ThetaRatio::TwoOverThree];
        let mut out = Vec::with_capacity(8);
        for prefactor in [0.5, 1.0] {
            for ratio in ratios {
                for argument in ratios {
                    out.push(ChudVariant {
                        prefactor,
                        ratio,
                        argument,
                    });
                }
            }
        }
        out
    }

    /// Number of the three ingredients that differ from [`Self::PRINTED`].
    pub fn distance_from_printed(&self) -> usize {
        let p = Self::PRINTED;
        usize::from(self.prefactor != p.prefactor)
            + usize::from(self.ratio != p.ratio)
            + usize::from(self.argument != p.argument)
    }
}

impl fmt::Display for ChudVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u={}*{}*2F1(1/2,1/4;5/4;({})^4)",
            self.prefactor,
            self.ratio.label(),
            self.argument.label()
        )
    }
}

/// Outcome of scoring every variant at the reference points.
#[derive(Clone, Debug)]
pub struct ChudCalibration {
    pub selected: ChudVariant,
    /// Per-variant residuals at [`CHUD_REFERENCE_TAUS`]; failures are `∞`.
    pub scores: Vec<(ChudVariant, [f64; 3])>,
    pub passing: Vec<ChudVariant>,
}

/// Jet of `u(τ)` under an explicit formula variant.
pub fn chud_u_with(variant: ChudVariant, tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    pol.check_tau(tau.value())?;
    let t2 = theta_null(ThetaIndex::TWO, tau, pol)?;
    let t3 = theta_null(ThetaIndex::THREE, tau, pol)?;
    let pre = variant.ratio.eval(&t2, &t3)?;
    let arg = variant.argument.eval(&t2, &t3)?.powi(4);
    if cut_distance(arg.value()) < CUT_CLEARANCE {
        return Err(Error::BranchCut);
    }
    let p = HypergeomParams::real(0.5, 0.25, 1.25)?;
    let f = gauss_2f1(&p, &arg)?;
    (pre * f * variant.prefactor).ensure_finite()
}

/// Jet of `u(τ)` under the calibrated variant.
pub fn chud_u(tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    chud_u_with(calibrated_chud_variant()?, tau, pol)
}

/// `|[u, τ] + 2℘(2u)|` at `τ` for a given variant.
pub fn chud_residual_with(
    variant: ChudVariant,
    tau: &HalfPlanePoint,
    pol: &TruncationPolicy,
    tol: f64,
) -> Result<ResidualReport> {
    let u = chud_u_with(variant, &tau.jet(3), pol)?;
    let bracket = schwarz_bracket(&u)?;
    let (wp, _) = wp_lemniscatic(&Jet::constant(u.value() * 2.0, 0))?;
    let residual = (bracket + 2.0 * wp.value()).norm();
    Ok(ResidualReport::new(
        tau.tau(),
        residual,
        tol,
        "chudnovsky",
        variant.to_string(),
    ))
}

/// `|[u, τ] + 2℘(2u)|` under the calibrated variant, with tolerance `1e−6`.
pub fn chud_residual(tau: &HalfPlanePoint, pol: &TruncationPolicy) -> Result<ResidualReport> {
    chud_residual_with(calibrated_chud_variant()?, tau, pol, DEFAULT_TOL)
}

/// Scores all variants and picks the passing one closest to the print.
pub fn calibrate_chud_variant(pol: &TruncationPolicy) -> Result<ChudCalibration> {
    let mut scores = Vec::new();
    let mut passing = Vec::new();
    for v in ChudVariant::all() {
        let mut r = [f64::INFINITY; 3];
        for (slot, &tau) in r.iter_mut().zip(CHUD_REFERENCE_TAUS.iter()) {
            let hp = HalfPlanePoint::new(tau, pol)?;
            if let Ok(rep) = chud_residual_with(v, &hp, pol, CALIBRATION_TOL) {
                if rep.residual_abs.is_finite() {
                    *slot = rep.residual_abs;
                }
            }
        }
        if r.iter().all(|&x| x < CALIBRATION_TOL) {
            passing.push(v);
        }
        scores.push((v, r));
    }
    let selected = passing
        .iter()
        .copied()
        .min_by_key(ChudVariant::distance_from_printed)
        .ok_or_else(|| Error::ConventionNotCalibrated("no u(τ) variant passes at the reference points".into()))?;
    Ok(ChudCalibration {
        selected,
        scores,
        passing,
    })
}

/// The write-once calibrated variant (default truncation policy).
pub fn calibrated_chud_variant() -> Result<ChudVariant> {
    static CAL: OnceLock<std::result::Result<ChudVariant, Error>> = OnceLock::new();
    CAL.get_or_init(|| calibrate_chud_variant(&TruncationPolicy::default()).map(|c| c.selected))
        .clone()
}
