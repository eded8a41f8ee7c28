//! Certified floating-point embedding of cyclotomics into the complex plane.
//!
//! Values are computed as fixed-point big integers with an explicit error
//! radius in units of the last place, then rounded to `f64` with the rounding
//! folded into the radius.

use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::Cyclotomic;

/// Default working precision, in bits, for embeddings and modulus ranking.
pub const DEFAULT_PRECISION: u32 = 128;
const GUARD_BITS: u32 = 64;
const MIN_PRECISION: u32 = 32;

/// A complex number known to lie within `radius` of `(re, im)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl ComplexApprox {
    pub fn abs(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    /// Whether `(re, im)` lies in the closed disc.
    pub fn contains(&self, re: f64, im: f64) -> bool {
        libm::hypot(self.re - re, self.im - im) <= self.radius
    }

    /// Product with a conservative propagated radius.
    pub fn mul(&self, other: &ComplexApprox) -> ComplexApprox {
        let re = self.re * other.re - self.im * other.im;
        let im = self.re * other.im + self.im * other.re;
        let radius = self.abs() * other.radius
            + other.abs() * self.radius
            + self.radius * other.radius
            + 4.0 * f64::EPSILON * (self.abs() * other.abs() + libm::hypot(re, im));
        ComplexApprox { re, im, radius }
    }
}

/// `mid ± rad`, both scaled by `2^-w`.
#[derive(Clone, Debug)]
struct Fixed {
    mid: BigInt,
    rad: BigInt,
}

impl Fixed {
    fn exact(mid: BigInt) -> Self {
        Fixed {
            mid,
            rad: BigInt::zero(),
        }
    }

    fn neg(self) -> Self {
        Fixed {
            mid: -self.mid,
            rad: self.rad,
        }
    }

    fn add(&mut self, other: &Fixed) {
        self.mid += &other.mid;
        self.rad += &other.rad;
    }

    fn mul_rational(&self, c: &BigRational) -> Fixed {
        let num = c.numer();
        let den = c.denom();
        let mid = (&self.mid * num).div_floor(den);
        let rad = (&self.rad * num.abs()).div_ceil(den) + 1u32;
        Fixed { mid, rad }
    }

    /// The interval is bounded away from zero.
    fn sign(&self) -> Option<Ordering> {
        if self.mid.abs() > self.rad {
            Some(if self.mid.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            })
        } else if self.mid.is_zero() && self.rad.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

fn atan_inv(x: u64, w: u32) -> (BigInt, u64) {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << w) / x;
    let mut sum = BigInt::zero();
    let mut i = 0u64;
    loop {
        let term = &power / (2 * i + 1);
        if term.is_zero() {
            break;
        }
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        i += 1;
    }
    (sum, 3 * (i + 2))
}

/// π by Machin's formula.
fn pi_fixed(w: u32) -> Fixed {
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    Fixed {
        mid: a * 16 - b * 4,
        rad: BigInt::from(16 * ea + 4 * eb),
    }
}

/// Taylor series for `(cos x, sin x)` with `|x| ≤ π/2`.
fn cos_sin_small(x: &Fixed, w: u32) -> (Fixed, Fixed) {
    let one = BigInt::one() << w;
    let x2 = (&x.mid * &x.mid) >> w;
    let mut cos = one.clone();
    let mut sin = x.mid.clone();
    let mut ct = one;
    let mut st = x.mid.clone();
    let mut k = 1u64;
    let mut steps = 0u64;
    loop {
        ct = -((&ct * &x2) >> w) / ((2 * k - 1) * (2 * k));
        st = -((&st * &x2) >> w) / ((2 * k) * (2 * k + 1));
        if ct.is_zero() && st.is_zero() {
            break;
        }
        cos += &ct;
        sin += &st;
        k += 1;
        steps += 1;
    }
    let rad = &x.rad * 2u32 + BigInt::from(8 * (steps + 2));
    (
        Fixed {
            mid: cos,
            rad: rad.clone(),
        },
        Fixed { mid: sin, rad },
    )
}

/// `(cos, sin)` of `2πk/n` at `w` fractional bits.
fn root_fixed(k: u64, n: u64, w: u32, pi: &Fixed) -> (Fixed, Fixed) {
    let k = k % n;
    if k == 0 {
        return (Fixed::exact(BigInt::one() << w), Fixed::exact(BigInt::zero()));
    }
    if 2 * k > n {
        let (c, s) = root_fixed(n - k, n, w, pi);
        return (c, s.neg());
    }
    if 2 * k == n {
        return (Fixed::exact(-(BigInt::one() << w)), Fixed::exact(BigInt::zero()));
    }
    if 4 * k == n {
        return (Fixed::exact(BigInt::zero()), Fixed::exact(BigInt::one() << w));
    }
    // θ = x + π/2 with x = π(4k − n)/(2n) ∈ (−π/2, π/2).
    let shift = 4 * k as i64 - n as i64;
    let den = BigInt::from(2 * n);
    let mid = (&pi.mid * shift).div_floor(&den);
    let rad = (&pi.rad * shift.unsigned_abs()).div_ceil(&den) + 1u32;
    let (c, s) = cos_sin_small(&Fixed { mid, rad }, w);
    (s.neg(), c)
}

struct Embedded {
    re: Fixed,
    im: Fixed,
    w: u32,
}

fn embed_fixed(a: &Cyclotomic, w: u32) -> Embedded {
    let n = u64::from(a.conductor);
    let pi = pi_fixed(w);
    let mut re = Fixed::exact(BigInt::zero());
    let mut im = Fixed::exact(BigInt::zero());
    for (e, c) in &a.terms {
        let (cos, sin) = root_fixed(u64::from(*e), n, w, &pi);
        re.add(&cos.mul_rational(c));
        im.add(&sin.mul_rational(c));
    }
    Embedded { re, im, w }
}

/// Rounds `mid·2^-w` to `f64`, returning the value and an absolute error bound.
fn to_f64(mid: &BigInt, w: u32) -> (f64, f64) {
    let (scaled, shift_err) = if w > 64 {
        (mid >> (w - 64), 1.0)
    } else {
        (mid.clone(), 0.0)
    };
    let e = w.min(64) as i32;
    let v = scaled.to_f64().unwrap_or(if scaled.sign() == Sign::Minus {
        f64::MIN
    } else {
        f64::MAX
    });
    let value = libm::scalbn(v, -e);
    let err = libm::scalbn(shift_err, -e) + value.abs() * f64::EPSILON;
    (value, err)
}

fn rad_f64(rad: &BigInt, w: u32) -> f64 {
    let (v, err) = to_f64(rad, w);
    v + err
}

impl Cyclotomic {
    /// Embeds into `C` under `ζ_m ↦ exp(2πi/m)` with a certified radius.
    ///
    /// `precision` is clamped below at 32 bits.
    pub fn embed(&self, precision: u32) -> ComplexApprox {
        let w = precision.max(MIN_PRECISION) + GUARD_BITS;
        let emb = embed_fixed(self, w);
        let (re, re_err) = to_f64(&emb.re.mid, emb.w);
        let (im, im_err) = to_f64(&emb.im.mid, emb.w);
        let radius = rad_f64(&emb.re.rad, w) + rad_f64(&emb.im.rad, w) + re_err + im_err;
        ComplexApprox { re, im, radius }
    }

    /// Embedding at the default precision.
    pub fn to_complex(&self) -> ComplexApprox {
        self.embed(DEFAULT_PRECISION)
    }

    /// Sign of the real part, refined until certain. Exact zero is detected
    /// algebraically, so this always terminates.
    pub fn real_part_sign(&self) -> Ordering {
        let re = (self + &self.conj()).scale(&BigRational::new(1.into(), 2.into()));
        if re.is_zero() {
            return Ordering::Equal;
        }
        if let Some(r) = re.to_rational() {
            return r.cmp(&BigRational::zero());
        }
        let mut w = DEFAULT_PRECISION;
        loop {
            if let Some(s) = embed_fixed(&re, w).re.sign() {
                if s != Ordering::Equal {
                    return s;
                }
            }
            w *= 2;
        }
    }

    /// Compares `|self|` with `|other|`, exactly.
    pub fn abs_cmp(&self, other: &Cyclotomic) -> Ordering {
        let d = &self.norm_sq() - &other.norm_sq();
        d.real_part_sign()
    }

    /// `|self|` as a float.
    pub fn modulus_f64(&self) -> f64 {
        self.to_complex().abs()
    }

    /// `|self|`, compared against a rational.
    pub fn abs_cmp_rational(&self, r: &BigRational) -> Ordering {
        self.abs_cmp(&Cyclotomic::from_rational(r.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn z(m: u32, e: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(m, e)
    }

    #[test]
    fn embeds_minus_one() {
        let a = Cyclotomic::from_integer(-1).embed(64);
        assert_eq!(a.re, -1.0);
        assert_eq!(a.im, 0.0);
        assert!(a.radius < 1e-15);
    }

    #[test]
    fn embeds_cosines() {
        let a = (z(5, 1) + z(5, 4)).embed(128);
        let expect = 2.0 * libm::cos(2.0 * core::f64::consts::PI / 5.0);
        assert!((a.re - expect).abs() < 1e-14);
        assert!(a.im.abs() <= a.radius + 1e-300);
        assert!(a.contains(expect, 0.0) || (a.re - expect).abs() < 1e-15);
    }

    #[test]
    fn radius_shrinks_with_precision() {
        let x = z(7, 1).scale(&ratio(1, 3)) + z(9, 2);
        let lo = x.embed(32);
        let hi = x.embed(256);
        assert!(hi.radius <= lo.radius);
        assert!(lo.radius < 1e-9);
    }

    #[test]
    fn modulus_comparisons() {
        let a = z(5, 1) + z(5, 4);
        let b = z(5, 2) + z(5, 3);
        assert_eq!(a.abs_cmp(&b), Ordering::Less);
        assert_eq!(
            Cyclotomic::from_integer(-4).abs_cmp(&Cyclotomic::from_integer(4)),
            Ordering::Equal
        );
        assert_eq!(Cyclotomic::zero().abs_cmp(&Cyclotomic::one()), Ordering::Less);
        assert_eq!(z(12, 1).abs_cmp(&z(7, 3)), Ordering::Equal);
    }

    #[test]
    fn pi_is_accurate() {
        let w = 200;
        let pi = pi_fixed(w);
        let (v, _) = to_f64(&pi.mid, w);
        assert_eq!(v, core::f64::consts::PI);
    }
}
