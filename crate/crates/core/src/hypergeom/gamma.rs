//! Complex Gamma function (Lanczos, g = 7, nine coefficients).

use std::f64::consts::PI;

use num_complex::Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Distance to the nearest non-positive integer, if `z` is within `tol` of one.
pub(crate) fn near_nonpositive_integer(z: Complex64, tol: f64) -> bool {
    let n = z.re.round();
    n <= 0.0 && (z - n).norm() <= tol
}

pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection
        return PI / ((PI * z).sin() * gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

/// `1/Γ(z)`, which is entire: exactly zero at the poles of `Γ`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if near_nonpositive_integer(z, 1e-14) {
        Complex64::new(0.0, 0.0)
    } else {
        gamma(z).inv()
    }
}
