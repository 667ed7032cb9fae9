//! Adaptive Gauss–Kronrod (7/15) quadrature of the lemniscatic integral
//! `∫₀^s dt / √(1 − t⁴)` along the straight segment `[0, s]`.

#![allow(clippy::excessive_precision)]

use num_complex::Complex64;

use crate::error::{Error, Result};

const ABS_TOL: f64 = 1e-12;
const SINGULAR_GUARD: f64 = 1e-3;
const MAX_INTERVALS: usize = 2000;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Distance from the segment `[0, s]` to the nearest root of `t⁴ = 1`.
fn segment_clearance(s: Complex64) -> f64 {
    let roots = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ];
    let len2 = s.norm_sqr();
    roots
        .iter()
        .map(|&r| {
            let x = if len2 == 0.0 {
                0.0
            } else {
                ((r * s.conj()).re / len2).clamp(0.0, 1.0)
            };
            (r - s * x).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// One G7-K15 panel on `[lo, hi] ⊂ [0, 1]` of `x ↦ f(s·x)·s`.
fn panel(f: &impl Fn(f64) -> Complex64, lo: f64, hi: f64) -> (Complex64, f64) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let pair = f(c - h * XGK[j]) + f(c + h * XGK[j]);
        k += pair * WGK[j];
        if j % 2 == 1 {
            g += pair * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// `∫₀^s (1 − t⁴)^{−1/2} dt` with the principal square root, to absolute
/// accuracy `1e−12`.
pub fn lemniscatic_integral_oracle(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(0.0, 0.0) {
        return Ok(s);
    }
    let clearance = segment_clearance(s);
    if clearance < SINGULAR_GUARD {
        return Err(Error::SingularPath(clearance));
    }
    let f = |x: f64| {
        let t = s * x;
        s / (1.0 - t.powi(4)).sqrt()
    };
    let mut stack = vec![(0.0, 1.0)];
    let mut total = Complex64::new(0.0, 0.0);
    let mut intervals = 0;
    let mut worst = 0.0_f64;
    while let Some((lo, hi)) = stack.pop() {
        intervals += 1;
        let (val, err) = panel(&f, lo, hi);
        let share = ABS_TOL * (hi - lo);
        if err <= share || intervals + stack.len() >= MAX_INTERVALS {
            if err > share {
                worst = worst.max(err);
            }
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
    }
    if worst > 0.0 {
        return Err(Error::ToleranceNotReached(worst));
    }
    Ok(total)
}
