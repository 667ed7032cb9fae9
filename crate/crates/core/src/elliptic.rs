//! Weierstrass `℘` over jets.
//!
//! The primary route is the theta representation
//! `℘(w; 1, τ) = −∂²_w ln θ₁(w|τ) + c(τ)`, where the constant `c(τ)` is the
//! one that removes the `w⁰` term of the Laurent expansion at the origin.
//! Expanding `θ₁(w) = θ₁′(0)·w + θ₁‴(0)·w³/6 + …` gives
//! `c(τ) = θ₁‴(0|τ) / (3·θ₁′(0|τ))`, both read off the z-differentiated
//! theta series, so no classical constant is transcribed.
//!
//! The Laurent oracle ([`wp_laurent_oracle`]) shares no code with this
//! route: it uses Eisenstein q-expansions for `g₂, g₃` and the standard
//! coefficient recurrence.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::theta::{theta_dz, HalfPlanePoint, SeriesSum, ThetaIndex, TruncationPolicy};

/// Distance to the nearest lattice point below which `℘` refuses to evaluate.
pub const POLE_GUARD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PeriodConvention {
    /// Periods `1, τ`.
    Unit,
    /// Periods `2, 2τ`; half-periods `1, τ, 1 + τ`.
    Double,
}

impl PeriodConvention {
    pub fn name(self) -> &'static str {
        match self {
            PeriodConvention::Unit => "unit",
            PeriodConvention::Double => "double",
        }
    }

    /// Ratio of this convention's periods to `(1, τ)`.
    pub fn period_scale(self) -> f64 {
        match self {
            PeriodConvention::Unit => 1.0,
            PeriodConvention::Double => 2.0,
        }
    }

    /// Half-periods `ω₁, ω₃` at `τ`.
    pub fn half_periods(self, tau: Complex64) -> (Complex64, Complex64) {
        let s = 0.5 * self.period_scale();
        (Complex64::new(s, 0.0), tau * s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeInvariants {
    pub g2: Complex64,
    pub g3: Complex64,
}

impl LatticeInvariants {
    pub fn discriminant(&self) -> Complex64 {
        self.g2 * self.g2 * self.g2 - 27.0 * self.g3 * self.g3
    }

    pub fn is_degenerate(&self) -> bool {
        self.discriminant().norm() <= 1e-12
    }

    /// `4t³ − g₂t − g₃`.
    pub fn cubic(&self, t: Complex64) -> Complex64 {
        4.0 * t * t * t - self.g2 * t - self.g3
    }
}

/// Values of `℘` at the half-periods `ω₁`, `ω₁ + ω₃`, `ω₃`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EValues {
    pub e1: Complex64,
    pub e2: Complex64,
    pub e3: Complex64,
}

impl EValues {
    pub fn sum(&self) -> Complex64 {
        self.e1 + self.e2 + self.e3
    }

    pub fn as_array(&self) -> [Complex64; 3] {
        [self.e1, self.e2, self.e3]
    }
}

/// Shifts `w` by a lattice vector `m + nτ` so that it lies near the origin,
/// and checks the pole guard.
fn reduce_unit(w: &Jet, tau: &Jet) -> Result<Jet> {
    let (w0, t0) = (w.value(), tau.value());
    let n = (w0.im / t0.im).round();
    let m = (w0 - t0 * n).re.round();
    let reduced = *w - *tau * n - Complex64::new(m, 0.0);
    let r0 = reduced.value();
    let mut nearest = f64::INFINITY;
    for dm in -1..=1 {
        for dn in -1..=1 {
            let p = Complex64::new(dm as f64, 0.0) + t0 * dn as f64;
            nearest = nearest.min((r0 - p).norm());
        }
    }
    if nearest < POLE_GUARD {
        return Err(Error::LatticePole(nearest));
    }
    Ok(reduced)
}

/// `c(τ) = θ₁‴(0|τ) / (3θ₁′(0|τ))`, as a jet along the parameter of `tau`.
fn laurent_constant(tau: &Jet, pol: &TruncationPolicy) -> Result<Jet> {
    let zero = Jet::constant(Complex64::new(0.0, 0.0), tau.order());
    let d1 = theta_dz(ThetaIndex::ONE, 1, &zero, tau, pol)?;
    let d3 = theta_dz(ThetaIndex::ONE, 3, &zero, tau, pol)?;
    Ok(d3.checked_div(&d1)? * (1.0 / 3.0))
}

fn wp_unit(w: &Jet, tau: &Jet, pol: &TruncationPolicy) -> Result<(Jet, Jet)> {
    let order = w.order().min(tau.order());
    let (w, tau) = (w.truncate(order), tau.truncate(order));
    let w = reduce_unit(&w, &tau)?;
    let t: Vec<Jet> = (0..4)
        .map(|m| theta_dz(ThetaIndex::ONE, m, &w, &tau, pol))
        .collect::<Result<_>>()?;
    let inv = t[0].recip()?;
    let r1 = t[1] * inv;
    let r2 = t[2] * inv;
    let r3 = t[3] * inv;
    // −∂² ln θ₁ = r1² − r2,  −∂³ ln θ₁ = −(r3 − 3 r1 r2 + 2 r1³)
    let wp = r1 * r1 - r2 + laurent_constant(&tau, pol)?;
    let wp_prime = -(r3 - r1 * r2 * 3.0 + r1 * r1 * r1 * 2.0);
    Ok((wp.ensure_finite()?, wp_prime.ensure_finite()?))
}

/// Jets of `℘(z|τ)` and `∂_z℘(z|τ)` in the chosen period convention.
pub fn wp_eval(
    z: &Jet,
    tau: &Jet,
    conv: PeriodConvention,
    pol: &TruncationPolicy,
) -> Result<(Jet, Jet)> {
    match conv {
        PeriodConvention::Unit => wp_unit(z, tau, pol),
        PeriodConvention::Double => {
            // ℘(z; 2, 2τ) = ¼ ℘(z/2; 1, τ)
            let (p, dp) = wp_unit(&(*z * 0.5), tau, pol)?;
            Ok((p * 0.25, dp * 0.125))
        }
    }
}

/// Lambert series `Σ nᵏ qⁿ/(1 − qⁿ)` with `q = e^{2πiτ}`.
fn lambert_sum(tau: Complex64, power: i32, pol: &TruncationPolicy) -> Result<Complex64> {
    let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
    let mut acc = SeriesSum::new(Jet::constant(Complex64::new(0.0, 0.0), 0), pol.term_tol, pol.max_terms);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1.. {
        qn *= q;
        let term = (n as f64).powi(power) * qn / (1.0 - qn);
        if acc.push(Jet::constant(term, 0))? {
            break;
        }
    }
    Ok(acc.finish()?.value())
}

/// Lattice invariants from the Eisenstein series `E₄`, `E₆`.
pub fn invariants_g2g3(
    tau: &HalfPlanePoint,
    conv: PeriodConvention,
    pol: &TruncationPolicy,
) -> Result<LatticeInvariants> {
    let t = tau.tau();
    let e4 = 1.0 + 240.0 * lambert_sum(t, 3, pol)?;
    let e6 = 1.0 - 504.0 * lambert_sum(t, 5, pol)?;
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let g2 = e4 * (4.0 * pi4 / 3.0);
    let g3 = e6 * (8.0 * pi4 * pi2 / 27.0);
    let s = conv.period_scale();
    Ok(LatticeInvariants {
        g2: g2 / s.powi(4),
        g3: g3 / s.powi(6),
    })
}

/// Half-period values via the theta route.
pub fn e_values(tau: &HalfPlanePoint, conv: PeriodConvention, pol: &TruncationPolicy) -> Result<EValues> {
    let t = Jet::constant(tau.tau(), 0);
    let (w1, w3) = conv.half_periods(tau.tau());
    let at = |w: Complex64| -> Result<Complex64> { Ok(wp_eval(&Jet::constant(w, 0), &t, conv, pol)?.0.value()) };
    Ok(EValues {
        e1: at(w1)?,
        e2: at(w1 + w3)?,
        e3: at(w3)?,
    })
}

/// Independent `℘` oracle from the Laurent series at the origin.
pub fn wp_laurent_oracle(
    z: Complex64,
    tau: &HalfPlanePoint,
    conv: PeriodConvention,
    pol: &TruncationPolicy,
) -> Result<Complex64> {
    let (w1, w3) = conv.half_periods(tau.tau());
    let radius = 0.6 * w1.norm().min(w3.norm());
    if !(z.norm() < radius) {
        return Err(Error::RadiusExceeded { z: z.norm(), radius });
    }
    if z.norm() < POLE_GUARD {
        return Err(Error::LatticePole(z.norm()));
    }
    let inv = invariants_g2g3(tau, conv, pol)?;
    // ℘ = z⁻² + Σ_{n≥2} c_n z^{2n−2}
    const MAX_COEFFS: usize = 400;
    let mut c = vec![Complex64::new(0.0, 0.0); MAX_COEFFS + 1];
    c[2] = inv.g2 / 20.0;
    c[3] = inv.g3 / 28.0;
    let z2 = z * z;
    let mut sum = z2.inv();
    let mut zpow = z2;
    let mut quiet = 0;
    for n in 2..=MAX_COEFFS {
        if n >= 4 {
            let mut s = Complex64::new(0.0, 0.0);
            for m in 2..=n - 2 {
                s += c[m] * c[n - m];
            }
            c[n] = s * (3.0 / ((2 * n + 1) as f64 * (n - 3) as f64));
        }
        let term = c[n] * zpow;
        sum += term;
        zpow *= z2;
        if term.norm() <= 1e-17 * sum.norm() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::TruncationBudgetExceeded(MAX_COEFFS))
}

/// Scale `c` with `g₂(c·(1, i)) = 4`, i.e. `c⁴ = g₂(1, i)/4`.
pub fn lemniscatic_scale() -> Complex64 {
    static SCALE: OnceLock<Complex64> = OnceLock::new();
    *SCALE.get_or_init(|| {
        let pol = TruncationPolicy::default();
        let i = HalfPlanePoint::new(Complex64::new(0.0, 1.0), &pol).expect("τ = i is admissible");
        let g2 = invariants_g2g3(&i, PeriodConvention::Unit, &pol)
            .expect("Eisenstein series converge at τ = i")
            .g2;
        (g2 / 4.0).powf(0.25)
    })
}

/// `℘` and `℘′` on the lemniscatic torus `℘′² = 4℘³ − 4℘`.
pub fn wp_lemniscatic(w: &Jet) -> Result<(Jet, Jet)> {
    let c = lemniscatic_scale();
    let pol = TruncationPolicy::default();
    let tau = Jet::constant(Complex64::new(0.0, 1.0), w.order());
    let (p, dp) = wp_unit(&w.scale(c.inv()), &tau, &pol)?;
    Ok((p.scale(c.powi(-2)), dp.scale(c.powi(-3))))
}
