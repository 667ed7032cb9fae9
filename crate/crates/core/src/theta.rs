//! Jacobi theta functions over jets.
//!
//! Convention: nome `q = e^{iπτ}` and period 1 in `z`,
//!
//! ```text
//! θ₁(z|τ) = 2 Σ_{n≥0} (−1)ⁿ q^{(n+½)²} sin((2n+1)πz)
//! θ₂(z|τ) = 2 Σ_{n≥0}       q^{(n+½)²} cos((2n+1)πz)
//! θ₃(z|τ) = 1 + 2 Σ_{n≥1}       q^{n²} cos(2nπz)
//! θ₄(z|τ) = 1 + 2 Σ_{n≥1} (−1)ⁿ q^{n²} cos(2nπz)
//! ```
//!
//! Both `z` and `τ` are jets in a common parameter `t`, and every result is
//! the total `t`-jet. With this normalization `θ₂⁴/θ₃⁴ = 16q + O(q²)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::Jet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaIndex(u8);

impl ThetaIndex {
    pub const ONE: ThetaIndex = ThetaIndex(1);
    pub const TWO: ThetaIndex = ThetaIndex(2);
    pub const THREE: ThetaIndex = ThetaIndex(3);
    pub const FOUR: ThetaIndex = ThetaIndex(4);

    pub fn new(k: u8) -> Result<Self> {
        if (1..=4).contains(&k) {
            Ok(ThetaIndex(k))
        } else {
            Err(Error::InvalidThetaIndex(k))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

/// Truncation and guard parameters shared by every q-series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPolicy {
    /// A term counts as negligible when its size is at most `term_tol`
    /// times the running sum; two consecutive negligible terms stop the sum.
    pub term_tol: f64,
    pub max_terms: usize,
    pub min_im_tau: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            term_tol: 1e-17,
            max_terms: 64,
            min_im_tau: 0.05,
        }
    }
}

impl TruncationPolicy {
    pub fn new(term_tol: f64, max_terms: usize, min_im_tau: f64) -> Result<Self> {
        if !(term_tol > 0.0) {
            return Err(Error::InvalidPolicy(format!("term_tol must be positive, got {term_tol}")));
        }
        if max_terms < 4 {
            return Err(Error::InvalidPolicy(format!("max_terms must be at least 4, got {max_terms}")));
        }
        if !(min_im_tau > 0.0) {
            return Err(Error::InvalidPolicy(format!("min_im_tau must be positive, got {min_im_tau}")));
        }
        Ok(TruncationPolicy {
            term_tol,
            max_terms,
            min_im_tau,
        })
    }

    /// Same policy with twice the term budget.
    pub fn doubled(&self) -> Self {
        TruncationPolicy {
            max_terms: self.max_terms * 2,
            ..*self
        }
    }

    pub fn check_tau(&self, tau: Complex64) -> Result<()> {
        if tau.im >= self.min_im_tau {
            Ok(())
        } else {
            Err(Error::LowImaginaryTau {
                im: tau.im,
                min: self.min_im_tau,
            })
        }
    }
}

/// A point of the upper half-plane admissible under a policy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlanePoint(Complex64);

impl HalfPlanePoint {
    pub fn new(tau: Complex64, pol: &TruncationPolicy) -> Result<Self> {
        pol.check_tau(tau)?;
        Ok(HalfPlanePoint(tau))
    }

    pub fn tau(&self) -> Complex64 {
        self.0
    }

    /// The identity jet `t ↦ t` at this point.
    pub fn jet(&self, order: usize) -> Jet {
        Jet::variable(self.0, order)
    }
}

/// Running sum with the two-consecutive-small-terms stop rule.
pub(crate) struct SeriesSum {
    sum: Jet,
    quiet: usize,
    terms: usize,
    tol: f64,
    budget: usize,
}

impl SeriesSum {
    pub(crate) fn new(start: Jet, tol: f64, budget: usize) -> Self {
        SeriesSum {
            sum: start,
            quiet: 0,
            terms: 0,
            tol,
            budget,
        }
    }

    /// Adds a term; returns `true` once the sum has converged.
    pub(crate) fn push(&mut self, term: Jet) -> Result<bool> {
        self.sum = self.sum + term;
        self.terms += 1;
        if term.max_abs() <= self.tol * self.sum.max_abs() {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        if self.quiet >= 2 {
            return Ok(true);
        }
        if self.terms >= self.budget {
            return Err(Error::TruncationBudgetExceeded(self.budget));
        }
        Ok(false)
    }

    pub(crate) fn finish(self) -> Result<Jet> {
        self.sum.ensure_finite()
    }
}

/// Jet of `∂ᵐ_z θₖ(z|τ)` along the common parameter of `z` and `tau`.
pub fn theta_dz(k: ThetaIndex, m: u32, z: &Jet, tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    pol.check_tau(tau.value())?;
    let order = z.order().min(tau.order());
    let (z, tau) = (z.truncate(order), tau.truncate(order));
    let i_pi = Complex64::new(0.0, PI);
    let phase = m as f64 * FRAC_PI_2;
    let zero = Jet::constant(Complex64::new(0.0, 0.0), order);

    let (half_integer, alternating, use_sin) = match k.0 {
        1 => (true, true, true),
        2 => (true, false, false),
        3 => (false, false, false),
        _ => (false, true, false),
    };

    let start = if !half_integer && m == 0 {
        Jet::constant(Complex64::new(1.0, 0.0), order)
    } else {
        zero
    };
    let mut acc = SeriesSum::new(start, pol.term_tol, pol.max_terms);
    let first = if half_integer { 0 } else { 1 };
    for n in first.. {
        let (freq, expo) = if half_integer {
            let h = n as f64 + 0.5;
            (2.0 * h * PI, h * h)
        } else {
            let nf = n as f64;
            (2.0 * nf * PI, nf * nf)
        };
        let sign = if alternating && n % 2 == 1 { -2.0 } else { 2.0 };
        let qpow = (tau * (i_pi * expo)).exp()?;
        let arg = z * freq + phase;
        let trig = if use_sin { arg.sin() } else { arg.cos() };
        let term = qpow * trig * (sign * freq.powi(m as i32));
        if acc.push(term)? {
            break;
        }
    }
    acc.finish()
}

/// Jet of `θₖ(z|τ)`.
pub fn theta_eval(k: ThetaIndex, z: &Jet, tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    theta_dz(k, 0, z, tau, pol)
}

/// Theta constant `θₖ(0|τ)`, defined for `k ∈ {2, 3, 4}`.
pub fn theta_null(k: ThetaIndex, tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    if k == ThetaIndex::ONE {
        return Err(Error::ThetaNullUndefined);
    }
    let z = Jet::constant(Complex64::new(0.0, 0.0), tau.order());
    theta_eval(k, &z, tau, pol)
}

/// Jet of `∂θ₁/∂z` at `(z|τ)`.
pub fn theta1_prime(z: &Jet, tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    theta_dz(ThetaIndex::ONE, 1, z, tau, pol)
}

/// `x(τ) = θ₄⁴(0|τ)/θ₃⁴(0|τ)`.
pub fn modular_x(tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    let t3 = theta_null(ThetaIndex::THREE, tau, pol)?;
    let t4 = theta_null(ThetaIndex::FOUR, tau, pol)?;
    Ok(t4.checked_div(&t3)?.powi(4))
}

/// `1 − x(τ) = θ₂⁴/θ₃⁴`, computed without the cancellation in `1 − x`.
pub fn modular_lambda(tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    let t2 = theta_null(ThetaIndex::TWO, tau, pol)?;
    let t3 = theta_null(ThetaIndex::THREE, tau, pol)?;
    Ok(t2.checked_div(&t3)?.powi(4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn k(i: u8) -> ThetaIndex {
        ThetaIndex::new(i).unwrap()
    }

    fn at(tau: Complex64) -> Jet {
        Jet::variable(tau, 3)
    }

    fn cz(z: Complex64) -> Jet {
        Jet::constant(z, 3)
    }

    #[test]
    fn index_and_policy_validation() {
        assert_eq!(ThetaIndex::new(0), Err(Error::InvalidThetaIndex(0)));
        assert_eq!(ThetaIndex::new(5), Err(Error::InvalidThetaIndex(5)));
        assert!(TruncationPolicy::new(0.0, 64, 0.05).is_err());
        assert!(TruncationPolicy::new(1e-17, 3, 0.05).is_err());
        assert!(TruncationPolicy::new(1e-17, 64, 0.0).is_err());
        let pol = TruncationPolicy::default();
        assert!(matches!(HalfPlanePoint::new(c(0.5, 0.0), &pol), Err(Error::LowImaginaryTau { .. })));
        assert!(matches!(HalfPlanePoint::new(c(0.5, 0.01), &pol), Err(Error::LowImaginaryTau { .. })));
    }

    #[test]
    fn theta1_vanishes_at_origin() {
        let pol = TruncationPolicy::default();
        for tau in [c(0.0, 1.0), c(0.3, 0.7), c(-0.9, 0.1)] {
            let v = theta_eval(k(1), &cz(c(0.0, 0.0)), &at(tau), &pol).unwrap();
            assert_eq!(v.max_abs(), 0.0);
        }
    }

    #[test]
    fn theta3_tends_to_one() {
        let pol = TruncationPolicy::default();
        let v = theta_null(k(3), &at(c(0.0, 8.0)), &pol).unwrap();
        assert!((v.value() - 1.0).norm() < 1e-10);
    }

    #[test]
    fn theta2_over_theta3_at_8i_follows_leading_term() {
        // θ₂ ~ 2q^{1/4} = 2e^{-2π} at τ = 8i
        let pol = TruncationPolicy::default();
        let tau = at(c(0.0, 8.0));
        let r = theta_null(k(2), &tau, &pol).unwrap().value() / theta_null(k(3), &tau, &pol).unwrap().value();
        let lead = 2.0 * (-2.0 * PI).exp();
        assert!((r.norm() - lead).abs() / lead < 1e-9);
        assert!(r.norm() < 1e-2);
    }

    #[test]
    fn null_matches_eval_and_rejects_theta1() {
        let pol = TruncationPolicy::default();
        let tau = at(c(0.0, 1.0));
        let a = theta_null(k(3), &tau, &pol).unwrap();
        let b = theta_eval(k(3), &cz(c(0.0, 0.0)), &tau, &pol).unwrap();
        assert_eq!(a, b);
        assert_eq!(theta_null(k(1), &tau, &pol), Err(Error::ThetaNullUndefined));
    }

    #[test]
    fn self_dual_point() {
        let pol = TruncationPolicy::default();
        let tau = at(c(0.0, 1.0));
        let t2 = theta_null(k(2), &tau, &pol).unwrap().value();
        let t4 = theta_null(k(4), &tau, &pol).unwrap().value();
        assert!((t2 - t4).norm() < 1e-15);
    }

    #[test]
    fn jacobi_identity_and_truncation_doubling() {
        let pol = TruncationPolicy::default();
        let tau = at(c(0.0, 2.0));
        let v = |i, p: &TruncationPolicy| theta_null(k(i), &tau, p).unwrap().value().powi(4);
        let lhs = v(3, &pol);
        assert!((lhs - v(2, &pol) - v(4, &pol)).norm() < 1e-14);
        assert!((lhs - v(3, &pol.doubled())).norm() == 0.0);
    }

    #[test]
    fn theta1_prime_null_identity() {
        let pol = TruncationPolicy::default();
        for tau in [c(0.0, 1.2), c(0.3, 0.9)] {
            let t = at(tau);
            let lhs = theta1_prime(&cz(c(0.0, 0.0)), &t, &pol).unwrap().value();
            let rhs = PI
                * theta_null(k(2), &t, &pol).unwrap().value()
                * theta_null(k(3), &t, &pol).unwrap().value()
                * theta_null(k(4), &t, &pol).unwrap().value();
            assert!((lhs - rhs).norm() < 1e-12, "{tau}: {}", (lhs - rhs).norm());
        }
    }

    #[test]
    fn theta1_prime_vanishes_at_half() {
        let pol = TruncationPolicy::default();
        let v = theta1_prime(&cz(c(0.5, 0.0)), &at(c(0.2, 1.1)), &pol).unwrap();
        assert!(v.value().norm() < 1e-15);
    }

    #[test]
    fn theta1_prime_matches_finite_difference() {
        let pol = TruncationPolicy::default();
        let tau = Jet::constant(c(0.0, 1.5), 0);
        let h = 1e-5;
        let f = |z: f64| theta_eval(k(1), &Jet::constant(c(z, 0.0), 0), &tau, &pol).unwrap().value();
        let fd = (f(0.2 + h) - f(0.2 - h)) / (2.0 * h);
        let an = theta1_prime(&Jet::constant(c(0.2, 0.0), 0), &tau, &pol).unwrap().value();
        assert!((fd - an).norm() < 1e-8);
    }

    #[test]
    fn z_jet_derivatives_match_dz_series() {
        // the z-jet of θ₃ must carry ∂_z θ₃, ∂²_z θ₃, ∂³_z θ₃
        let pol = TruncationPolicy::default();
        let tau = Jet::constant(c(0.1, 0.8), 3);
        let z0 = c(0.13, 0.05);
        let jet = theta_eval(k(3), &Jet::variable(z0, 3), &tau, &pol).unwrap();
        for m in 1..=3u32 {
            let direct = theta_dz(k(3), m, &Jet::constant(z0, 3), &tau, &pol).unwrap().value();
            assert!((jet.d(m as usize) - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn modular_x_examples() {
        let pol = TruncationPolicy::default();
        let xi = modular_x(&at(c(0.0, 1.0)), &pol).unwrap().value();
        assert!((xi - 0.5).norm() < 1e-15);
        let t = c(0.3, 1.1);
        let a = modular_x(&at(t), &pol).unwrap().value();
        let b = modular_x(&at(t + 2.0), &pol).unwrap().value();
        assert!((a - b).norm() < 1e-13);
        let x8 = modular_x(&at(c(0.0, 8.0)), &pol).unwrap().value();
        let lead = -16.0 * (-8.0 * PI).exp();
        assert!(((x8 - 1.0) - lead).norm() / lead.abs() < 1e-4);
    }

    #[test]
    fn lambda_is_one_minus_x() {
        let pol = TruncationPolicy::default();
        let t = at(c(-0.2, 0.6));
        let x = modular_x(&t, &pol).unwrap();
        let l = modular_lambda(&t, &pol).unwrap();
        let sum = x + l;
        assert!((sum.value() - 1.0).norm() < 1e-13);
        for d in 1..=3 {
            assert!(sum.d(d).norm() < 1e-11);
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let pol = TruncationPolicy::new(1e-17, 4, 0.05).unwrap();
        let r = theta_null(k(3), &at(c(0.0, 0.06)), &pol);
        assert_eq!(r, Err(Error::TruncationBudgetExceeded(4)));
    }
}
