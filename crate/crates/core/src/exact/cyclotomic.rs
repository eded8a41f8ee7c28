use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::arith::{factorize, gcd, lcm, mod_inverse};
use crate::{Error, Result};

/// An element of a cyclotomic field `Q(ζ_m)`, stored as `Σ c_e ζ_m^e`.
///
/// The representation is canonical: `m` is the smallest conductor whose field
/// contains the value, and the exponents with nonzero coefficient all belong
/// to the Zumbroich basis of `Q(ζ_m)`. Two values are equal exactly when
/// their representations are identical, so the derived `Eq`, `Ord` and `Hash`
/// are value semantics.
///
/// Basis convention. Write `m = Π q` over prime powers `q = p^k` and give an
/// exponent `e` the CRT coordinates `f_q(e) = e·(m/q)^{-1} mod q`, so that
/// `ζ_m^e = Π ζ_q^{f_q(e)}`. The basis keeps the exponents whose every
/// coordinate satisfies `f_q < q/2` when `p = 2` and `f_q ≥ q/p` when `p` is
/// odd. The relations `ζ_q^{f + q/2} = -ζ_q^f` and
/// `Σ_{j<p} ζ_q^{f + j·q/p} = 0` rewrite any exponent into that set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    pub(super) conductor: u32,
    pub(super) terms: Vec<(u32, BigRational)>,
}

struct PrimePart {
    p: u64,
    q: u64,
    cofactor_inv: u64,
}

impl PrimePart {
    fn coordinate(&self, e: u64) -> u64 {
        (e % self.q) * self.cofactor_inv % self.q
    }
}

fn prime_parts(n: u64) -> Vec<PrimePart> {
    factorize(n)
        .into_iter()
        .map(|(p, k)| {
            let q = p.pow(k);
            let cofactor = (n / q) % q;
            let cofactor_inv = if q == 1 {
                0
            } else {
                mod_inverse(cofactor as i64, q as i64).expect("cofactor is a unit") as u64
            };
            PrimePart { p, q, cofactor_inv }
        })
        .collect()
}

/// Rewrites a dense coefficient vector over `ζ_n^0..ζ_n^{n-1}` into the
/// Zumbroich basis of `Q(ζ_n)`, in place.
fn reduce_to_basis(n: u64, dense: &mut [BigInt]) {
    for part in prime_parts(n) {
        let step = n / part.p;
        for e in 0..n {
            if dense[e as usize].is_zero() {
                continue;
            }
            let f = part.coordinate(e);
            if part.p == 2 {
                if f >= part.q / 2 {
                    let c = core::mem::take(&mut dense[e as usize]);
                    let t = ((e + step) % n) as usize;
                    dense[t] -= c;
                }
            } else if f < part.q / part.p {
                let c = core::mem::take(&mut dense[e as usize]);
                for j in 1..part.p {
                    let t = ((e + j * step) % n) as usize;
                    dense[t] -= &c;
                }
            }
        }
    }
}

/// Descends a basis representation to the smallest conductor containing it.
fn minimize_conductor(mut n: u64, mut terms: Vec<(u64, BigRational)>) -> (u64, Vec<(u64, BigRational)>) {
    'outer: loop {
        if terms.is_empty() {
            return (1, terms);
        }
        if n == 1 {
            return (n, terms);
        }
        for (p, k) in factorize(n) {
            if p == 2 && k == 1 {
                // Q(ζ_{2r}) = Q(ζ_r) for odd r; basis exponents are even here.
                debug_assert!(terms.iter().all(|(e, _)| e % 2 == 0));
                for t in terms.iter_mut() {
                    t.0 /= 2;
                }
                n /= 2;
                continue 'outer;
            }
            if k >= 2 {
                if terms.iter().all(|(e, _)| e % p == 0) {
                    for t in terms.iter_mut() {
                        t.0 /= p;
                    }
                    n /= p;
                    continue 'outer;
                }
                continue;
            }
            // p exactly divides n and is odd: the subfield element ζ^{e0}
            // (coordinate 0) appears as the block -Σ_{j=1}^{p-1} ζ^{e0 + j·n/p}.
            let step = n / p;
            let inv = mod_inverse(((n / p) % p) as i64, p as i64).expect("unit") as u64;
            let mut blocks: BTreeMap<u64, Vec<&BigRational>> = BTreeMap::new();
            for (e, c) in &terms {
                let f = (e % p) * inv % p;
                let e0 = (e + n - (f * step) % n) % n;
                blocks.entry(e0).or_default().push(c);
            }
            let descends = blocks
                .values()
                .all(|cs| cs.len() as u64 == p - 1 && cs.iter().all(|c| *c == cs[0]));
            if descends {
                let reduced: Vec<(u64, BigRational)> =
                    blocks.into_iter().map(|(e0, cs)| (e0 / p, -cs[0].clone())).collect();
                terms = reduced;
                n /= p;
                continue 'outer;
            }
        }
        return (n, terms);
    }
}

fn canonicalize(n: u64, mut dense: Vec<BigInt>, den: BigInt) -> Cyclotomic {
    reduce_to_basis(n, &mut dense);
    let terms: Vec<(u64, BigRational)> = dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e as u64, BigRational::new(c, den.clone())))
        .collect();
    let (n, mut terms) = minimize_conductor(n, terms);
    terms.sort_by_key(|t| t.0);
    Cyclotomic {
        conductor: n as u32,
        terms: terms.into_iter().map(|(e, c)| (e as u32, c)).collect(),
    }
}

/// Collects sums and products of cyclotomics in an unreduced dense buffer
/// and canonicalises once at the end.
///
/// Coefficients are kept as integer numerators over one shared denominator,
/// so sums of algebraic integers never touch a gcd. Summing many products
/// through the accumulator is much cheaper than canonicalising after every
/// operation, which matters for inner products over large character tables.
#[derive(Clone, Debug)]
pub struct CycAccumulator {
    conductor: u64,
    den: BigInt,
    dense: Vec<BigInt>,
}

impl Default for CycAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

impl CycAccumulator {
    pub fn new() -> Self {
        Self::with_conductor(1)
    }

    pub fn with_conductor(n: u32) -> Self {
        let n = u64::from(n.max(1));
        CycAccumulator {
            conductor: n,
            den: BigInt::one(),
            dense: vec![BigInt::zero(); n as usize],
        }
    }

    fn grow(&mut self, m: u64) {
        if self.conductor % m == 0 {
            return;
        }
        let n = lcm(self.conductor, m);
        let scale = n / self.conductor;
        let mut dense = vec![BigInt::zero(); n as usize];
        for (e, c) in core::mem::take(&mut self.dense).into_iter().enumerate() {
            if !c.is_zero() {
                dense[e * scale as usize] = c;
            }
        }
        self.conductor = n;
        self.dense = dense;
    }

    /// Adds `num/den · ζ_n^e` for the accumulator's conductor `n`.
    fn push(&mut self, e: usize, num: BigInt, den: &BigInt) {
        if den.is_one() {
            if self.den.is_one() {
                self.dense[e] += num;
            } else {
                self.dense[e] += num * &self.den;
            }
            return;
        }
        if !(&self.den % den).is_zero() {
            let l = self.den.lcm(den);
            let f = &l / &self.den;
            for x in self.dense.iter_mut().filter(|x| !x.is_zero()) {
                *x *= &f;
            }
            self.den = l;
        }
        self.dense[e] += num * (&self.den / den);
    }

    pub fn add(&mut self, a: &Cyclotomic) {
        self.add_scaled(a, &BigRational::one());
    }

    pub fn add_scaled(&mut self, a: &Cyclotomic, s: &BigRational) {
        if s.is_zero() {
            return;
        }
        self.grow(u64::from(a.conductor));
        let scale = self.conductor / u64::from(a.conductor);
        for (e, c) in &a.terms {
            let idx = (u64::from(*e) * scale) as usize;
            if s.is_one() {
                self.push(idx, c.numer().clone(), c.denom());
            } else {
                self.push(idx, c.numer() * s.numer(), &(c.denom() * s.denom()));
            }
        }
    }

    pub fn add_rational(&mut self, r: &BigRational) {
        self.push(0, r.numer().clone(), r.denom());
    }

    /// Adds `s·a·b`.
    pub fn add_product_scaled(&mut self, a: &Cyclotomic, b: &Cyclotomic, s: &BigRational) {
        if a.terms.is_empty() || b.terms.is_empty() || s.is_zero() {
            return;
        }
        self.grow(u64::from(a.conductor));
        self.grow(u64::from(b.conductor));
        let n = self.conductor;
        let sa = n / u64::from(a.conductor);
        let sb = n / u64::from(b.conductor);
        for (ea, ca) in &a.terms {
            let na = ca.numer() * s.numer();
            let da = ca.denom() * s.denom();
            for (eb, cb) in &b.terms {
                let e = (u64::from(*ea) * sa + u64::from(*eb) * sb) % n;
                let num = &na * cb.numer();
                if da.is_one() && cb.denom().is_one() {
                    self.push(e as usize, num, &da);
                } else {
                    self.push(e as usize, num, &(&da * cb.denom()));
                }
            }
        }
    }

    pub fn add_product(&mut self, a: &Cyclotomic, b: &Cyclotomic) {
        self.add_product_scaled(a, b, &BigRational::one());
    }

    pub fn finish(self) -> Cyclotomic {
        canonicalize(self.conductor, self.dense, self.den)
    }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            terms: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: 1,
            terms: vec![(0, r)],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// `ζ_m^e`, with `e` taken modulo `m`. Panics if `m == 0`.
    pub fn root_of_unity(m: u32, e: i64) -> Self {
        assert!(m >= 1, "root of unity needs a positive order");
        let e = e.rem_euclid(i64::from(m)) as usize;
        let mut dense = vec![BigInt::zero(); m as usize];
        dense[e] = BigInt::one();
        canonicalize(u64::from(m), dense, BigInt::one())
    }

    /// `ζ_n^k + ζ_n^{-k} = 2cos(2πk/n)`.
    pub fn two_cos(n: u32, k: i64) -> Self {
        Self::root_of_unity(n, k) + Self::root_of_unity(n, -k)
    }

    /// Builds `Σ c·ζ_m^e` from arbitrary exponents and coefficients.
    pub fn from_terms<I>(m: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        assert!(m >= 1, "conductor must be positive");
        let mut acc = CycAccumulator::with_conductor(m);
        for (e, c) in terms {
            acc.push(e.rem_euclid(i64::from(m)) as usize, c.numer().clone(), c.denom());
        }
        acc.finish()
    }

    /// Accepts a representation only if it is already canonical; used when
    /// reading values back from files.
    pub fn from_canonical_terms(m: u32, terms: Vec<(u32, BigRational)>) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("conductor must be positive"));
        }
        if let Some((e, _)) = terms.iter().find(|(e, _)| *e >= m) {
            return Err(Error::invalid(alloc::format!(
                "exponent {e} out of range for conductor {m}"
            )));
        }
        let candidate = Cyclotomic { conductor: m, terms };
        let sorted = candidate.terms.windows(2).all(|w| w[0].0 < w[1].0);
        let nonzero = candidate.terms.iter().all(|(_, c)| !c.is_zero());
        let rebuilt = Self::from_terms(m, candidate.terms.iter().map(|(e, c)| (i64::from(*e), c.clone())));
        if sorted && nonzero && rebuilt == candidate {
            Ok(candidate)
        } else {
            Err(Error::invalid(alloc::format!(
                "cyclotomic is not in canonical form (canonical: {rebuilt})"
            )))
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical `(exponent, coefficient)` pairs, sorted by exponent.
    pub fn terms(&self) -> &[(u32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match (self.conductor, self.terms.as_slice()) {
            (1, []) => Some(BigRational::zero()),
            (1, [(0, c)]) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// True when every coefficient in the canonical basis is an integer;
    /// the basis spans the ring of integers, so this tests algebraic
    /// integrality.
    pub fn is_algebraic_integer(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    fn map_exponents(&self, f: impl Fn(u64) -> u64) -> Self {
        let n = u64::from(self.conductor);
        let mut acc = CycAccumulator::with_conductor(self.conductor);
        for (e, c) in &self.terms {
            acc.push((f(u64::from(*e)) % n) as usize, c.numer().clone(), c.denom());
        }
        acc.finish()
    }

    /// Complex conjugate, `ζ^e ↦ ζ^{-e}`.
    pub fn conj(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        let n = u64::from(self.conductor);
        self.map_exponents(|e| (n - e) % n)
    }

    /// The Galois automorphism `σ_l : ζ ↦ ζ^l`.
    pub fn galois(&self, l: i64) -> Result<Self> {
        let n = i64::from(self.conductor);
        let l = l.rem_euclid(n);
        if n > 1 && gcd(l as u64, n as u64) != 1 {
            return Err(Error::NotCoprime {
                exponent: l,
                conductor: self.conductor,
            });
        }
        if n == 1 {
            return Ok(self.clone());
        }
        Ok(self.map_exponents(|e| e * l as u64))
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// `|a|² = a·conj(a)`, a totally real element.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Division by a nonzero rational.
    pub fn div_rational(&self, s: &BigRational) -> Self {
        assert!(!s.is_zero(), "division by zero");
        self.scale(&s.recip())
    }

    /// Multiplication by `ζ_m^e`; division by a root of unity is
    /// multiplication by its inverse.
    pub fn mul_root(&self, m: u32, e: i64) -> Self {
        self * &Self::root_of_unity(m, e)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Sum of an iterator of references, canonicalised once.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Cyclotomic>) -> Self {
        let mut acc = CycAccumulator::new();
        for x in items {
            acc.add(x);
        }
        acc.finish()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_integer(n)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(r: BigRational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl From<BigInt> for Cyclotomic {
    fn from(n: BigInt) -> Self {
        Cyclotomic::from_bigint(n)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut acc = CycAccumulator::with_conductor(lcm(u64::from(self.conductor), u64::from(rhs.conductor)) as u32);
        acc.add(self);
        acc.add(rhs);
        acc.finish()
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero();
        }
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        let mut acc = CycAccumulator::with_conductor(lcm(u64::from(self.conductor), u64::from(rhs.conductor)) as u32);
        acc.add_product(self, rhs);
        acc.finish()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let root = self.conductor > 1 && !(*e == 0);
            if !root {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "z{}", self.conductor)?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}
