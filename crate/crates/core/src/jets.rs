//! Complex jets: a value together with its first three derivatives.
//!
//! A [`Jet`] stores derivative values `f(t0), f'(t0), f''(t0), f'''(t0)` of a
//! complex function at an implicit base point `t0`, not Taylor coefficients.
//! Arithmetic follows the Leibniz rule and composition follows Faà di Bruno,
//! so formulas that read derivatives (Schwarzian brackets, parametric ODE
//! residuals) read them straight off the entries.
//!
//! The infix operators (`+`, `-`, `*`) never fail; they may produce
//! non-finite entries on overflow, which [`Jet::ensure_finite`] (and the
//! fallible helpers [`jet_arith`], [`jet_elementary`]) turn into errors.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Highest derivative order a jet can carry.
pub const MAX_ORDER: usize = 3;

const ZERO_GUARD: f64 = 1e-300;
const CRITICAL_GUARD: f64 = 1e-12;
const MOBIUS_DET_GUARD: f64 = 1e-14;

const BINOM: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0],
    [1.0, 3.0, 3.0, 1.0],
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    order: usize,
    d: [Complex64; 4],
}

impl Jet {
    /// Builds a jet from derivative values `d[0..=order]`.
    pub fn new(derivs: &[Complex64]) -> Result<Self> {
        if derivs.is_empty() || derivs.len() > MAX_ORDER + 1 {
            return Err(Error::InvalidJet(format!(
                "expected 1..=4 derivative values, got {}",
                derivs.len()
            )));
        }
        let mut d = [Complex64::new(0.0, 0.0); 4];
        d[..derivs.len()].copy_from_slice(derivs);
        Jet {
            order: derivs.len() - 1,
            d,
        }
        .ensure_finite()
    }

    /// Jet of a constant function.
    pub fn constant(value: Complex64, order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut d = [Complex64::new(0.0, 0.0); 4];
        d[0] = value;
        Jet { order, d }
    }

    /// Jet of the identity function `t ↦ t` at `at`.
    pub fn variable(at: Complex64, order: usize) -> Self {
        let mut j = Self::constant(at, order);
        if order >= 1 {
            j.d[1] = Complex64::new(1.0, 0.0);
        }
        j
    }

    /// Jet of `t ↦ slope·t + intercept` evaluated on `param`.
    pub fn affine(param: &Jet, slope: Complex64, intercept: Complex64) -> Self {
        *param * slope + intercept
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> Complex64 {
        self.d[0]
    }

    /// Derivative value of order `k`; zero above the jet order.
    pub fn d(&self, k: usize) -> Complex64 {
        if k <= self.order {
            self.d[k]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn derivs(&self) -> &[Complex64] {
        &self.d[..=self.order]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut d = [Complex64::new(0.0, 0.0); 4];
        d[..=order].copy_from_slice(&self.d[..=order]);
        Jet { order, d }
    }

    pub fn is_finite(&self) -> bool {
        self.derivs().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn ensure_finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFiniteResult)
        }
    }

    /// Largest modulus over all entries.
    pub fn max_abs(&self) -> f64 {
        self.derivs().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Jet of `g ∘ self`, given the derivative values `g, g', g'', g'''`
    /// of the outer function at `self.value()`.
    pub fn chain(&self, g: [Complex64; 4]) -> Self {
        let x = &self.d;
        let mut out = [Complex64::new(0.0, 0.0); 4];
        out[0] = g[0];
        if self.order >= 1 {
            out[1] = g[1] * x[1];
        }
        if self.order >= 2 {
            out[2] = g[2] * x[1] * x[1] + g[1] * x[2];
        }
        if self.order >= 3 {
            out[3] = g[3] * x[1] * x[1] * x[1] + 3.0 * g[2] * x[1] * x[2] + g[1] * x[3];
        }
        Jet {
            order: self.order,
            d: out,
        }
    }

    /// Composition `outer ∘ inner`, where `outer` is a jet in a variable `s`
    /// expanded at `s0 = inner.value()`.
    pub fn compose(outer: &Jet, inner: &Jet) -> Self {
        let order = outer.order.min(inner.order);
        inner.truncate(order).chain(outer.d)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = *self;
        for v in out.d[..=self.order].iter_mut() {
            *v *= c;
        }
        out
    }

    pub fn recip(&self) -> Result<Self> {
        let v = self.d[0];
        if v.norm() <= ZERO_GUARD {
            return Err(Error::DivisionByZeroJet);
        }
        let r = v.inv();
        let r2 = r * r;
        self.chain([r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2]).ensure_finite()
    }

    pub fn checked_div(&self, rhs: &Jet) -> Result<Self> {
        (*self * rhs.recip()?).ensure_finite()
    }

    pub fn exp(&self) -> Result<Self> {
        let e = self.d[0].exp();
        self.chain([e, e, e, e]).ensure_finite()
    }

    /// Principal-branch logarithm.
    pub fn ln(&self) -> Result<Self> {
        let v = self.d[0];
        if v.norm() <= ZERO_GUARD {
            return Err(Error::BranchPoint);
        }
        let r = v.inv();
        self.chain([v.ln(), r, -r * r, 2.0 * r * r * r])
            .ensure_finite()
    }

    /// Principal-branch square root.
    pub fn sqrt(&self) -> Result<Self> {
        self.powc(Complex64::new(0.5, 0.0))
    }

    /// Principal-branch power `self^s`.
    pub fn powc(&self, s: Complex64) -> Result<Self> {
        let v = self.d[0];
        if v.norm() <= ZERO_GUARD {
            return Err(Error::BranchPoint);
        }
        let p = v.powc(s);
        let r = v.inv();
        let g1 = s * p * r;
        let g2 = s * (s - 1.0) * p * r * r;
        let g3 = s * (s - 1.0) * (s - 2.0) * p * r * r * r;
        self.chain([p, g1, g2, g3]).ensure_finite()
    }

    /// Integer power by repeated Leibniz products.
    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Jet::constant(Complex64::new(1.0, 0.0), self.order);
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    pub fn sin(&self) -> Self {
        let (s, c) = (self.d[0].sin(), self.d[0].cos());
        self.chain([s, c, -s, -c])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = (self.d[0].sin(), self.d[0].cos());
        self.chain([c, -s, -c, s])
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut d = [Complex64::new(0.0, 0.0); 4];
        for k in 0..=order {
            d[k] = self.d[k] + rhs.d[k];
        }
        Jet { order, d }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut d = [Complex64::new(0.0, 0.0); 4];
        for (k, dk) in d.iter_mut().enumerate().take(order + 1) {
            for j in 0..=k {
                *dk += BINOM[k][j] * self.d[j] * rhs.d[k - j];
            }
        }
        Jet { order, d }
    }
}

impl Mul<Complex64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: Complex64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Add<Complex64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Complex64) -> Jet {
        self.d[0] += rhs;
        self
    }
}

impl Sub<Complex64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Complex64) -> Jet {
        self.d[0] -= rhs;
        self
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.d[0] += rhs;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Fallible binary arithmetic on jets sharing a base point.
pub fn jet_arith(lhs: &Jet, rhs: &Jet, op: JetOp) -> Result<Jet> {
    match op {
        JetOp::Add => (*lhs + *rhs).ensure_finite(),
        JetOp::Sub => (*lhs - *rhs).ensure_finite(),
        JetOp::Mul => (*lhs * *rhs).ensure_finite(),
        JetOp::Div => lhs.checked_div(rhs),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Elementary {
    Exp,
    Log,
    Sqrt,
    Pow(Complex64),
}

pub fn jet_elementary(x: &Jet, f: Elementary) -> Result<Jet> {
    match f {
        Elementary::Exp => x.exp(),
        Elementary::Log => x.ln(),
        Elementary::Sqrt => x.sqrt(),
        Elementary::Pow(s) => x.powc(s),
    }
}

fn first_derivative_checked(y: &Jet) -> Result<Complex64> {
    let d1 = y.d(1);
    if y.order() < 1 || d1.norm() <= CRITICAL_GUARD {
        return Err(Error::CriticalPoint(d1.norm()));
    }
    Ok(d1)
}

/// Jet of the inverse function `τ(y)` at the value `y.value()`.
///
/// `base` is the point `τ0` at which `y` was expanded; it becomes the value
/// entry of the result.
pub fn jet_invert(y: &Jet, base: Complex64) -> Result<Jet> {
    let d1 = first_derivative_checked(y)?;
    let (d2, d3) = (y.d(2), y.d(3));
    let mut out = [base, d1.inv(), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
    if y.order() >= 2 {
        out[2] = -d2 / d1.powi(3);
    }
    if y.order() >= 3 {
        out[3] = (3.0 * d2 * d2 - d1 * d3) / d1.powi(5);
    }
    Jet::new(&out[..=y.order()])
}

/// The reversed Schwarz bracket `[y, τ] = y‴/ẏ³ − (3/2)·ÿ²/ẏ⁴ = −{τ, y}`.
pub fn schwarz_bracket(y: &Jet) -> Result<Complex64> {
    if y.order() < 3 {
        return Err(Error::InvalidJet("Schwarz bracket needs an order-3 jet".into()));
    }
    let d1 = first_derivative_checked(y)?;
    let (d2, d3) = (y.d(2), y.d(3));
    let d1sq = d1 * d1;
    Ok(d3 / (d1sq * d1) - 1.5 * d2 * d2 / (d1sq * d1sq))
}

/// Classical Schwarzian derivative `t‴/ṫ − (3/2)(ẗ/ṫ)²`.
pub fn standard_schwarzian(t: &Jet) -> Result<Complex64> {
    if t.order() < 3 {
        return Err(Error::InvalidJet("Schwarzian needs an order-3 jet".into()));
    }
    let d1 = first_derivative_checked(t)?;
    let r = t.d(2) / d1;
    Ok(t.d(3) / d1 - 1.5 * r * r)
}

/// First term `ÿ/ẏ = d/dτ ln ẏ` of the affine connection built from `y`.
pub fn log_derivative_connection(y: &Jet) -> Result<Complex64> {
    if y.order() < 2 {
        return Err(Error::InvalidJet("connection needs an order-2 jet".into()));
    }
    let d1 = first_derivative_checked(y)?;
    Ok(y.d(2) / d1)
}

/// Fractional-linear map `τ ↦ (aτ + b)/(cτ + d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = (a * d - b * c).norm();
        if !(det > MOBIUS_DET_GUARD) {
            return Err(Error::DegenerateMobius(det));
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        MobiusMap {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    /// Real-coefficient convenience constructor.
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let r = |v| Complex64::new(v, 0.0);
        Self::new(r(a), r(b), r(c), r(d))
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Value and first three derivatives of the map at `t`.
    pub fn derivatives_at(&self, t: Complex64) -> Result<[Complex64; 4]> {
        let den = self.c * t + self.d;
        if den.norm() <= CRITICAL_GUARD {
            return Err(Error::MobiusPole);
        }
        let det = self.determinant();
        let inv = den.inv();
        let inv2 = inv * inv;
        Ok([
            (self.a * t + self.b) * inv,
            det * inv2,
            -2.0 * self.c * det * inv2 * inv,
            6.0 * self.c * self.c * det * inv2 * inv2,
        ])
    }

    pub fn apply(&self, t: Complex64) -> Result<Complex64> {
        Ok(self.derivatives_at(t)?[0])
    }
}

/// Jet of `m ∘ tau`.
pub fn mobius_jet(m: &MobiusMap, tau: &Jet) -> Result<Jet> {
    let g = m.derivatives_at(tau.value())?;
    tau.chain(g).ensure_finite()
}
