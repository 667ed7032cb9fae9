//! Gauss hypergeometric function `₂F₁(a, b; c; z)` on the principal sheet.
//!
//! The plane (minus the cut `[1, ∞)`) is split into four regions, checked in
//! priority order:
//!
//! | region     | condition        | route                                   |
//! |------------|------------------|-----------------------------------------|
//! | `Disc`     | `|z| ≤ 0.75`     | power series                            |
//! | `NearOne`  | `|1 − z| ≤ 0.75` | `z → 1 − z` connection formula          |
//! | `Outer`    | `|z| ≥ 1.25`     | `z → 1/z` connection formula            |
//! | `Pfaff`    | otherwise        | `z → z/(z − 1)` and reclassify          |
//!
//! The Pfaff map sends a neighbourhood of `e^{±iπ/3}` back into the Pfaff
//! region; there the function is continued along the ray from a disc point
//! by re-centred Taylor steps driven by the hypergeometric ODE.
//!
//! Connection formulas with an integral `c − a − b` (resp. `a − b`) need
//! logarithmic terms; those cases raise [`Error::GammaPole`].

mod chudnovsky;
mod gamma;
mod quadrature;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jets::Jet;

pub use chudnovsky::{
    calibrate_chud_variant, calibrated_chud_variant, chud_residual, chud_residual_with, chud_u, chud_u_with,
    ChudCalibration, ChudVariant, ThetaRatio, CHUD_REFERENCE_TAUS,
};
pub use gamma::{gamma, rgamma};
pub use quadrature::lemniscatic_integral_oracle;

const SERIES_TOL: f64 = 1e-17;
const SERIES_BUDGET: usize = 5000;
const CUT_GUARD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypergeomParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl HypergeomParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        for n in 0..=40 {
            if (c + n as f64).norm() <= 1e-10 {
                return Err(Error::InvalidParams(format!("c = {c} is a non-positive integer")));
            }
        }
        Ok(HypergeomParams { a, b, c })
    }

    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        let r = |v| Complex64::new(v, 0.0);
        Self::new(r(a), r(b), r(c))
    }

    /// Parameters of the `k`-th derivative, `(a+k, b+k; c+k)`.
    fn shifted(&self, k: usize) -> Self {
        let k = k as f64;
        HypergeomParams {
            a: self.a + k,
            b: self.b + k,
            c: self.c + k,
        }
    }

    /// `(a)_k (b)_k / (c)_k`.
    fn derivative_factor(&self, k: usize) -> Complex64 {
        (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| {
            let j = j as f64;
            acc * (self.a + j) * (self.b + j) / (self.c + j)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContinuationRegion {
    Disc,
    NearOne,
    Outer,
    Pfaff,
}

impl ContinuationRegion {
    pub fn classify(z: Complex64) -> Self {
        if z.norm() <= 0.75 {
            ContinuationRegion::Disc
        } else if (1.0 - z).norm() <= 0.75 {
            ContinuationRegion::NearOne
        } else if z.norm() >= 1.25 {
            ContinuationRegion::Outer
        } else {
            ContinuationRegion::Pfaff
        }
    }
}

/// Distance from `z` to the cut `[1, ∞)`.
pub fn cut_distance(z: Complex64) -> f64 {
    if z.re >= 1.0 {
        z.im.abs()
    } else {
        (z - 1.0).norm()
    }
}

fn series(a: Complex64, b: Complex64, c: Complex64, z: Complex64) -> Result<Complex64> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut quiet = 0;
    for n in 0..SERIES_BUDGET {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.norm() <= SERIES_TOL * sum.norm() {
            quiet += 1;
            if quiet >= 2 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::TruncationBudgetExceeded(SERIES_BUDGET))
}

fn integral_within(z: Complex64, tol: f64) -> bool {
    (z - z.re.round()).norm() <= tol
}

fn near_one(p: &HypergeomParams, z: Complex64) -> Result<Complex64> {
    let HypergeomParams { a, b, c } = *p;
    let s = c - a - b;
    if integral_within(s, 1e-10) {
        return Err(Error::GammaPole(format!("c - a - b = {s}")));
    }
    let w = 1.0 - z;
    let gc = gamma::gamma(c);
    let a1 = gc * gamma::gamma(s) * rgamma(c - a) * rgamma(c - b);
    let a2 = gc * gamma::gamma(-s) * rgamma(a) * rgamma(b);
    let f1 = series(a, b, 1.0 - s, w)?;
    let f2 = series(c - a, c - b, s + 1.0, w)?;
    Ok(a1 * f1 + a2 * w.powc(s) * f2)
}

fn outer(p: &HypergeomParams, z: Complex64) -> Result<Complex64> {
    let HypergeomParams { a, b, c } = *p;
    let d = a - b;
    if integral_within(d, 1e-10) {
        return Err(Error::GammaPole(format!("a - b = {d}")));
    }
    let w = z.inv();
    let mz = -z;
    let gc = gamma::gamma(c);
    let b1 = gc * gamma::gamma(-d) * rgamma(b) * rgamma(c - a);
    let b2 = gc * gamma::gamma(d) * rgamma(a) * rgamma(c - b);
    let f1 = series(a, a - c + 1.0, d + 1.0, w)?;
    let f2 = series(b, b - c + 1.0, 1.0 - d, w)?;
    Ok(b1 * mz.powc(-a) * f1 + b2 * mz.powc(-b) * f2)
}

/// Continues `F` from a disc point along the ray through `z` with Taylor
/// steps of the hypergeometric ODE
/// `z(1−z)F″ + [c − (a+b+1)z]F′ − abF = 0`.
fn ray_taylor(p: &HypergeomParams, z: Complex64) -> Result<Complex64> {
    let HypergeomParams { a, b, c } = *p;
    let dir = z / z.norm();
    let mut z0 = dir * 0.5;
    let mut f = series(a, b, c, z0)?;
    let mut df = p.derivative_factor(1) * series(a + 1.0, b + 1.0, c + 1.0, z0)?;
    loop {
        let radius = z0.norm().min((1.0 - z0).norm());
        let remaining = z - z0;
        let (target, last) = if remaining.norm() <= 0.5 * radius {
            (z, true)
        } else {
            (z0 + remaining / remaining.norm() * (0.5 * radius), false)
        };
        let t = target - z0;
        let p0 = z0 * (1.0 - z0);
        let p1 = 1.0 - 2.0 * z0;
        let q0 = c - (a + b + 1.0) * z0;
        let q1 = -(a + b + 1.0);
        let ab = a * b;
        let (mut fk, mut fk1) = (f, df);
        let mut val = fk + fk1 * t;
        let mut der = fk1;
        let mut tpow = t;
        let mut quiet = 0;
        let mut converged = false;
        for k in 0..SERIES_BUDGET {
            let kf = k as f64;
            let fk2 = -((p1 * (kf + 1.0) * kf + q0 * (kf + 1.0)) * fk1 + (q1 * kf - kf * (kf - 1.0) - ab) * fk)
                / (p0 * (kf + 2.0) * (kf + 1.0));
            // term for t^{k+2}
            let dterm = fk2 * (kf + 2.0) * tpow;
            tpow *= t;
            let term = fk2 * tpow;
            val += term;
            der += dterm;
            fk = fk1;
            fk1 = fk2;
            if term.norm() <= SERIES_TOL * val.norm() && dterm.norm() <= SERIES_TOL * der.norm() {
                quiet += 1;
                if quiet >= 2 {
                    converged = true;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        if !converged {
            return Err(Error::TruncationBudgetExceeded(SERIES_BUDGET));
        }
        f = val;
        df = der;
        z0 = target;
        if last {
            return Ok(f);
        }
    }
}

fn check_cut(z: Complex64) -> Result<()> {
    if cut_distance(z) < CUT_GUARD {
        Err(Error::BranchCut)
    } else {
        Ok(())
    }
}

fn scalar_in(p: &HypergeomParams, z: Complex64, region: ContinuationRegion) -> Result<Complex64> {
    match region {
        ContinuationRegion::Disc => series(p.a, p.b, p.c, z),
        ContinuationRegion::NearOne => near_one(p, z),
        ContinuationRegion::Outer => outer(p, z),
        ContinuationRegion::Pfaff => {
            let w = z / (z - 1.0);
            let inner = ContinuationRegion::classify(w);
            if inner == ContinuationRegion::Pfaff {
                return ray_taylor(p, z);
            }
            let q = HypergeomParams {
                a: p.a,
                b: p.c - p.b,
                c: p.c,
            };
            Ok((1.0 - z).powc(-p.a) * scalar_in(&q, w, inner)?)
        }
    }
}

/// Scalar `₂F₁(a, b; c; z)` on the principal branch.
pub fn hyp2f1(p: &HypergeomParams, z: Complex64) -> Result<Complex64> {
    check_cut(z)?;
    scalar_in(p, z, ContinuationRegion::classify(z))
}

/// Scalar `₂F₁` forced through a given route; used to cross-check regions
/// where more than one route converges.
pub fn hyp2f1_via(p: &HypergeomParams, z: Complex64, region: ContinuationRegion) -> Result<Complex64> {
    check_cut(z)?;
    scalar_in(p, z, region)
}

/// Jet of `₂F₁(a, b; c; z(t))`.
///
/// Derivatives come from `dᵏ/dzᵏ ₂F₁ = (a)ₖ(b)ₖ/(c)ₖ · ₂F₁(a+k, b+k; c+k; z)`.
pub fn gauss_2f1(p: &HypergeomParams, z: &Jet) -> Result<Jet> {
    let z0 = z.value();
    check_cut(z0)?;
    let region = ContinuationRegion::classify(z0);
    let mut g = [Complex64::new(0.0, 0.0); 4];
    for (k, gk) in g.iter_mut().enumerate().take(z.order() + 1) {
        *gk = p.derivative_factor(k) * scalar_in(&p.shifted(k), z0, region)?;
    }
    z.chain(g).ensure_finite()
}
