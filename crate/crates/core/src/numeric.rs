//! Small log-space primitives shared by the distribution and estimation code.

/// `ln(1 + e^x)` without overflow.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 35.0 {
        x + (-x).exp()
    } else if x < -35.0 {
        x.exp()
    } else {
        x.exp().ln_1p()
    }
}

/// `ln(e^z - 1)` for `z > 0`, accurate for both tiny and huge `z`.
#[inline]
pub fn ln_expm1(z: f64) -> f64 {
    if z > 30.0 {
        z + (-(-z).exp()).ln_1p()
    } else {
        z.exp_m1().ln()
    }
}

/// `ln(e^a + e^b)`.
#[inline]
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Logistic function `1 / (1 + e^-s)`.
#[inline]
pub fn logistic(s: f64) -> f64 {
    if s >= 0.0 {
        1.0 / (1.0 + (-s).exp())
    } else {
        let e = s.exp();
        e / (1.0 + e)
    }
}

/// Compact summary statistics used in a few places.
pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample standard deviation; 0 for fewer than two values.
pub fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}

/// `x` with `digits` significant digits, trailing zeros trimmed. Magnitudes
/// outside `[1e-5, 1e15)` use scientific notation.
pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let exp = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&exp) {
        let s = format!("{:.*e}", digits - 1, x);
        let (mant, e) = s.split_once('e').expect("scientific format");
        return format!("{}e{}", trim_zeros(mant), e);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(0.5, 12), "0.5");
        assert_eq!(format_sig(2.0 / 3.0, 6), "0.666667");
        assert_eq!(format_sig(1006.81720001, 8), "1006.8172");
        assert_eq!(format_sig(-1.5e-7, 3), "-1.5e-7");
        assert_eq!(format_sig(f64::INFINITY, 3), "inf");
        assert_eq!(format_sig(0.0, 3), "0");
    }

    #[test]
    fn softplus_matches_naive_in_safe_range() {
        for &x in &[-20.0, -1.0, 0.0, 0.5, 10.0, 30.0] {
            let naive = (1.0 + f64::exp(x)).ln();
            assert!((softplus(x) - naive).abs() < 1e-12 * naive.max(1e-300) + 1e-15);
        }
        assert_eq!(softplus(800.0), 800.0);
        assert!(softplus(-800.0) >= 0.0);
    }

    #[test]
    fn ln_expm1_small_and_large() {
        let z = 1e-10;
        assert!((ln_expm1(z) - z.ln()).abs() < 1e-9);
        assert!((ln_expm1(700.0) - 700.0).abs() < 1e-12);
        assert!((ln_expm1(2.0) - (2f64.exp() - 1.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn logistic_symmetry() {
        for &s in &[-30.0, -2.0, 0.0, 3.0, 40.0] {
            assert!((logistic(s) + logistic(-s) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn log_add_exp_basic() {
        let v = log_add_exp(2f64.ln(), 3f64.ln());
        assert!((v - 5f64.ln()).abs() < 1e-15);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 1.0), 1.0);
    }
}
