use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::exact::arith::lcm;
use crate::exact::{CycAccumulator, Cyclotomic};
use crate::{Error, Result};

/// `b(n) = Σ c·λ^n`, asserted for `n ≥ valid_from`.
///
/// Terms have pairwise distinct bases and nonzero coefficients. They are
/// ordered by decreasing `|λ|`, ties broken by the canonical order of `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthFormula {
    terms: Vec<(Cyclotomic, Cyclotomic)>,
    valid_from: u32,
}

impl GrowthFormula {
    /// Merges terms with equal bases and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (Cyclotomic, Cyclotomic)>, valid_from: u32) -> Self {
        let mut merged: BTreeMap<Cyclotomic, CycAccumulator> = BTreeMap::new();
        for (c, base) in terms {
            merged.entry(base).or_default().add(&c);
        }
        let mut terms: Vec<(Cyclotomic, Cyclotomic)> = merged
            .into_iter()
            .map(|(base, acc)| (acc.finish(), base))
            .filter(|(c, _)| !c.is_zero())
            .collect();
        sort_by_modulus_desc(&mut terms, |t| &t.1);
        GrowthFormula { terms, valid_from }
    }

    /// `(coefficient, base)` pairs.
    pub fn terms(&self) -> &[(Cyclotomic, Cyclotomic)] {
        &self.terms
    }

    pub fn valid_from(&self) -> u32 {
        self.valid_from
    }

    /// `Σ c·λ^n` as a cyclotomic, with `0^0 = 1`.
    pub fn eval(&self, n: u32) -> Cyclotomic {
        let mut acc = CycAccumulator::new();
        for (c, base) in &self.terms {
            acc.add_product(c, &base.pow(n));
        }
        acc.finish()
    }

    /// `b(n)` as an integer; fails if the value is not a nonnegative integer.
    pub fn eval_integer(&self, n: u32) -> Result<BigInt> {
        let v = self.eval(n);
        v.to_integer()
            .filter(|x| !x.is_negative())
            .ok_or_else(|| Error::integrity(format!("b({n}) = {v} is not a nonnegative integer")))
    }

    /// `b(n)` for `start ≤ n ≤ end`, powering each base incrementally.
    pub fn series(&self, start: u32, end: u32) -> Result<GrowthSeries> {
        let mut powers: Vec<Cyclotomic> = self.terms.iter().map(|(_, b)| b.pow(start)).collect();
        let mut values = Vec::new();
        for n in start..=end {
            let mut acc = CycAccumulator::new();
            for ((c, _), p) in self.terms.iter().zip(&powers) {
                acc.add_product(c, p);
            }
            let v = acc.finish();
            let b = v
                .to_integer()
                .filter(|x| !x.is_negative())
                .ok_or_else(|| Error::integrity(format!("b({n}) = {v} is not a nonnegative integer")))?;
            values.push(b);
            if n < end {
                for ((_, base), p) in self.terms.iter().zip(powers.iter_mut()) {
                    *p = &*p * base;
                }
            }
        }
        Ok(GrowthSeries {
            start,
            values,
            source: SeriesSource::Formula,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesSource {
    Formula,
    Oracle,
    Matrix,
}

/// Exact values `b(start), b(start+1), …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSeries {
    pub start: u32,
    pub values: Vec<BigInt>,
    pub source: SeriesSource,
}

impl GrowthSeries {
    /// `b(n)` if it lies in the computed window.
    pub fn get(&self, n: u32) -> Option<&BigInt> {
        n.checked_sub(self.start).and_then(|i| self.values.get(i as usize))
    }

    pub fn end(&self) -> u32 {
        self.start + self.values.len() as u32 - 1
    }
}

/// `a(n) = coeffs[n mod period]·dim^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticFormula {
    dim: u64,
    period: u32,
    coeffs: Vec<Cyclotomic>,
    as_terms: Vec<(Cyclotomic, Cyclotomic)>,
    /// Remarks such as a non-faithful input; empty in the ordinary case.
    pub notes: Vec<String>,
}

impl AsymptoticFormula {
    /// Builds the formula from `(coefficient, ω)` pairs meaning
    /// `a(n) = Σ c·(ω·dim)^n`; each `ω` must be a root of unity.
    pub fn from_roots(dim: u64, roots: impl IntoIterator<Item = (Cyclotomic, Cyclotomic)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        let merged = GrowthFormula::new(roots, 0);
        let mut period = 1u64;
        for (_, w) in merged.terms() {
            let o = root_order(w).ok_or_else(|| Error::integrity(format!("{w} is not a root of unity")))?;
            period = lcm(period, o);
        }
        let period = period as u32;
        let coeffs: Vec<Cyclotomic> = (0..period).map(|r| merged.eval(r)).collect();
        for (r, c) in coeffs.iter().enumerate() {
            match c.to_rational() {
                Some(q) if q.is_positive() => {}
                _ => {
                    return Err(Error::integrity(format!(
                        "asymptotic coefficient for n ≡ {r} (mod {period}) is {c}, not a positive rational"
                    )))
                }
            }
        }
        let d = Cyclotomic::from_integer(dim as i64);
        let as_terms = merged.terms().iter().map(|(c, w)| (c.clone(), w * &d)).collect();
        Ok(AsymptoticFormula {
            dim,
            period,
            coeffs,
            as_terms,
            notes: Vec::new(),
        })
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    /// `c_V(r)` for `0 ≤ r < period`; all are positive rationals.
    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn coeff_rational(&self, n: u32) -> BigRational {
        self.coeffs[(n % self.period) as usize]
            .to_rational()
            .expect("checked rational")
    }

    /// The same formula as `(coefficient, ω·dim)` terms.
    pub fn as_terms(&self) -> &[(Cyclotomic, Cyclotomic)] {
        &self.as_terms
    }

    pub fn eval(&self, n: u32) -> BigRational {
        self.coeff_rational(n) * BigRational::from_integer(BigInt::from(self.dim).pow(n))
    }

    /// Evaluates through `as_terms`; equals [`Self::eval`].
    pub fn eval_terms(&self, n: u32) -> Cyclotomic {
        let mut acc = CycAccumulator::new();
        for (c, base) in &self.as_terms {
            acc.add_product(c, &base.pow(n));
        }
        acc.finish()
    }
}

/// Sorts by decreasing `|key|`, ties broken by canonical order. Floats
/// decide clear cases; near-ties fall back to exact comparison of norms.
pub(crate) fn sort_by_modulus_desc<T>(items: &mut Vec<T>, key: impl Fn(&T) -> &Cyclotomic) {
    let mut keyed: Vec<(Cyclotomic, f64, T)> = items
        .drain(..)
        .map(|t| {
            let n = key(&t).norm_sq();
            let f = n.to_complex().re;
            (n, f, t)
        })
        .collect();
    keyed.sort_by(|a, b| {
        let by_modulus = if (a.1 - b.1).abs() > 1e-9 * (1.0 + a.1.abs().max(b.1.abs())) {
            b.1.partial_cmp(&a.1).expect("finite")
        } else {
            (&b.0 - &a.0).real_part_sign()
        };
        by_modulus.then_with(|| key(&a.2).cmp(key(&b.2)))
    });
    items.extend(keyed.into_iter().map(|(_, _, t)| t));
}

/// Multiplicative order of a root of unity, or `None` if `w` is not one.
pub fn root_order(w: &Cyclotomic) -> Option<u64> {
    if w.is_zero() {
        return None;
    }
    let bound = lcm(2, u64::from(w.conductor()));
    let mut divisors: Vec<u64> = (1..=bound).filter(|d| bound % d == 0).collect();
    divisors.sort_unstable();
    divisors.into_iter().find(|&d| w.pow(d as u32).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn merges_and_drops() {
        let two = Cyclotomic::from_integer(2);
        let f = GrowthFormula::new(
            [
                (Cyclotomic::from_rational(ratio(1, 2)), two.clone()),
                (Cyclotomic::from_rational(ratio(1, 2)), two.clone()),
                (Cyclotomic::from_integer(3), Cyclotomic::from_integer(-1)),
                (Cyclotomic::from_integer(-3), Cyclotomic::from_integer(-1)),
            ],
            0,
        );
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.eval_integer(5).unwrap(), BigInt::from(32));
    }

    #[test]
    fn root_orders() {
        assert_eq!(root_order(&Cyclotomic::from_integer(-1)), Some(2));
        assert_eq!(root_order(&Cyclotomic::root_of_unity(6, 1)), Some(6));
        assert_eq!(root_order(&Cyclotomic::root_of_unity(12, 4)), Some(3));
        assert_eq!(root_order(&Cyclotomic::from_integer(2)), None);
    }

    #[test]
    fn dihedral_eight_asymptotic() {
        let a = AsymptoticFormula::from_roots(
            2,
            [
                (Cyclotomic::from_rational(ratio(3, 4)), Cyclotomic::one()),
                (Cyclotomic::from_rational(ratio(1, 4)), Cyclotomic::from_integer(-1)),
            ],
        )
        .unwrap();
        assert_eq!(a.period(), 2);
        assert_eq!(a.coeff_rational(0), ratio(1, 1));
        assert_eq!(a.coeff_rational(1), ratio(1, 2));
        assert_eq!(a.eval(3), ratio(4, 1));
        assert_eq!(a.eval_terms(3), Cyclotomic::from_integer(4));
    }
}
