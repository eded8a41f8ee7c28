//! Number formatting shared by the CSV, JSON and text writers.

use growthrate_core::exact::{BigRational, Cyclotomic};
use num_traits::{ToPrimitive, Zero};

/// Default number of significant digits for floats.
pub const DEFAULT_DIGITS: usize = 17;

/// `x` rounded to `digits` significant digits: positional when the decimal
/// exponent lies in `[-5, 16]`, scientific otherwise. Deterministic for a
/// given `f64`.
pub fn float(x: f64, digits: usize) -> String {
    let digits = digits.clamp(1, 40);
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (_, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..=16).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// An integer as itself, anything else as `num/den`.
pub fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `b/a` and `b − a`, or `None` where `a` vanishes.
pub fn ratio_and_variance(b: &BigRational, a: &BigRational) -> (Option<BigRational>, BigRational) {
    let ratio = (!a.is_zero()).then(|| b / a);
    (ratio, b - a)
}

/// A cyclotomic for humans: its canonical text form.
pub fn cyclotomic(x: &Cyclotomic) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(float(1.000980793, 9), "1.00098079");
        assert_eq!(float(0.25, 17), "0.25000000000000000");
        assert_eq!(float(1.0 / 3.0, 5), "0.33333");
        assert_eq!(float(123456.0, 3), "123456");
        assert_eq!(float(1e-7, 3), "1.00e-7");
        assert_eq!(float(2.0f64.powi(80), 4), "1.209e24");
        assert_eq!(float(-0.5, 2), "-0.50");
    }

    #[test]
    fn rationals() {
        assert_eq!(rational(&BigRational::new(683.into(), 1.into())), "683");
        assert_eq!(rational(&BigRational::new(2.into(), (-6).into())), "-1/3");
    }
}
