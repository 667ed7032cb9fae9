//! Complex literals of the form `a`, `bi`, `a+bi`, `a-bi`.
//!
//! Both parts are decimal floats (optional exponent); the imaginary part may
//! omit its magnitude (`i`, `-i`, `2+i`). No parentheses, no spaces.

use num_complex::Complex64;

fn parse_real(s: &str, whole: &str) -> Result<f64, String> {
    let ok = !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'))
        && s.chars().any(|c| c.is_ascii_digit());
    if !ok {
        return Err(format!("invalid complex literal {whole:?}"));
    }
    s.parse::<f64>()
        .map_err(|_| format!("invalid complex literal {whole:?}"))
}

fn parse_imag(s: &str, whole: &str) -> Result<f64, String> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_real(s, whole),
    }
}

/// Index of the sign separating real and imaginary parts, if any.
fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
}

pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(s, s)?, 0.0));
    };
    match split_point(body) {
        Some(k) => Ok(Complex64::new(parse_real(&body[..k], s)?, parse_imag(&body[k..], s)?)),
        None => Ok(Complex64::new(0.0, parse_imag(body, s)?)),
    }
}

/// Comma-separated list of complex literals.
pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',').map(parse_complex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_complex("0").unwrap(), c(0.0, 0.0));
        assert_eq!(parse_complex("-2.5").unwrap(), c(-2.5, 0.0));
        assert_eq!(parse_complex("1.2i").unwrap(), c(0.0, 1.2));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("0.3+1.2i").unwrap(), c(0.3, 1.2));
        assert_eq!(parse_complex("-0.4-0.8i").unwrap(), c(-0.4, -0.8));
        assert_eq!(parse_complex("2+i").unwrap(), c(2.0, 1.0));
        assert_eq!(parse_complex("1e-3+2.5E+1i").unwrap(), c(1e-3, 25.0));
        assert_eq!(parse_complex("1e-7").unwrap(), c(1e-7, 0.0));
        assert_eq!(parse_complex("-3e-2i").unwrap(), c(0.0, -3e-2));
    }

    #[test]
    fn rejected_forms() {
        for bad in ["", "(1+2i)", "1+2j", "inf", "nan", "1 + 2i", "abc", "1+2i3", "+-1", "e5", "1,2"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lists() {
        assert_eq!(
            parse_complex_list("0.125,0.125,0,1e-1").unwrap(),
            vec![c(0.125, 0.0), c(0.125, 0.0), c(0.0, 0.0), c(0.1, 0.0)]
        );
        assert!(parse_complex_list("1,,2").is_err());
    }
}
