use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{CharacterTable, ConjClass};
use crate::exact::arith::{factorial, gcd, lcm};
use crate::exact::Cyclotomic;
use crate::{Error, Result};

pub const MAX_SYMMETRIC_DEGREE: u32 = 9;

/// Cycle type `(a_1, …, a_m)` of a permutation of `m` points: `a_l` cycles
/// of length `l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    a: Vec<u32>,
}

impl CycleType {
    /// `a[l-1] = a_l`; requires `Σ l·a_l ≥ 1`.
    pub fn new(a: Vec<u32>) -> Result<Self> {
        let mut a = a;
        while a.last() == Some(&0) {
            a.pop();
        }
        if a.is_empty() {
            return Err(Error::invalid("cycle type of the empty permutation"));
        }
        Ok(CycleType { a })
    }

    pub fn from_partition(parts: &[u32]) -> Result<Self> {
        let mut a = vec![0u32; parts.iter().copied().max().unwrap_or(0) as usize];
        for &l in parts {
            if l == 0 {
                return Err(Error::invalid("partition parts must be positive"));
            }
            a[l as usize - 1] += 1;
        }
        Self::new(a)
    }

    /// `a_l`, zero beyond the stored range.
    pub fn count(&self, l: u32) -> u32 {
        l.checked_sub(1)
            .and_then(|i| self.a.get(i as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn counts(&self) -> &[u32] {
        &self.a
    }

    /// `m = Σ l·a_l`.
    pub fn degree(&self) -> u32 {
        self.a.iter().enumerate().map(|(i, &n)| (i as u32 + 1) * n).sum()
    }

    /// Cycle lengths in descending order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &n) in self.a.iter().enumerate().rev() {
            out.extend(core::iter::repeat(i as u32 + 1).take(n as usize));
        }
        out
    }

    /// `Π l^{a_l} a_l!`, the centraliser order.
    pub fn centralizer_order(&self) -> BigInt {
        self.a
            .iter()
            .enumerate()
            .map(|(i, &n)| BigInt::from(i + 1).pow(n) * factorial(u64::from(n)))
            .product()
    }

    /// `m! / Π l^{a_l} a_l!`.
    pub fn class_size(&self) -> BigInt {
        factorial(u64::from(self.degree())) / self.centralizer_order()
    }

    pub fn element_order(&self) -> u64 {
        self.a
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .fold(1, |acc, (i, _)| lcm(acc, i as u64 + 1))
    }

    /// `+1` for even permutations.
    pub fn sign(&self) -> i64 {
        let odd: u32 = self
            .a
            .iter()
            .enumerate()
            .filter(|(i, _)| i % 2 == 1)
            .map(|(_, &n)| n)
            .sum();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Cycle notation with multiplicities, e.g. `2 1^3`.
    pub fn label(&self) -> String {
        let mut pieces = Vec::new();
        for (i, &n) in self.a.iter().enumerate().rev() {
            match n {
                0 => {}
                1 => pieces.push(format!("{}", i + 1)),
                _ => pieces.push(format!("{}^{}", i + 1, n)),
            }
        }
        pieces.join(" ")
    }
}

/// Partitions of `m` in reverse lexicographic order, starting with `(m)`.
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// `χ_λ` on a permutation with the given cycle lengths, by removing rim
/// hooks from the beta-set of `λ`.
fn mn_beta(beta: &mut Vec<u32>, cycles: &[u32]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let mut total = 0;
    for i in 0..beta.len() {
        let b = beta[i];
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        beta[i] = b - r;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beta(beta, rest);
        beta[i] = b;
    }
    total
}

fn mn(lambda: &[u32], cycles: &[u32]) -> i64 {
    let len = lambda.len() as u32;
    let mut beta: Vec<u32> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| l + len - 1 - i as u32)
        .collect();
    mn_beta(&mut beta, cycles)
}

/// `χ_λ(a)` by the Murnaghan–Nakayama rule.
pub fn murnaghan_nakayama(lambda: &[u32], a: &CycleType) -> Result<Cyclotomic> {
    let size: u32 = lambda.iter().sum();
    if size != a.degree() || lambda.windows(2).any(|w| w[0] < w[1]) || lambda.contains(&0) {
        return Err(Error::invalid(format!(
            "λ = {lambda:?} is not a partition of {}",
            a.degree()
        )));
    }
    Ok(Cyclotomic::from_integer(mn(lambda, &a.parts())))
}

/// Character table of `S_m`, `3 ≤ m ≤ 9`, rows indexed by
/// [`partitions`]`(m)` in that order.
pub fn build_symmetric(m: u32) -> Result<CharacterTable> {
    if !(3..=MAX_SYMMETRIC_DEGREE).contains(&m) {
        return Err(Error::invalid(format!(
            "symmetric groups are supported for 3 ≤ m ≤ {MAX_SYMMETRIC_DEGREE}, got {m}"
        )));
    }
    let parts = partitions(m);
    let types: Vec<CycleType> = parts
        .iter()
        .map(|p| CycleType::from_partition(p).expect("partition"))
        .collect();
    let exponent = (1..=u64::from(m)).fold(1, lcm) as u32;
    let coprime: Vec<u32> = (1..exponent.max(2))
        .filter(|&l| gcd(u64::from(l), u64::from(exponent)) == 1)
        .collect();
    let classes: Vec<ConjClass> = types
        .iter()
        .enumerate()
        .map(|(t, a)| ConjClass {
            name: a.label(),
            size: a.class_size().to_u64().expect("m ≤ 9"),
            rep_order: a.element_order() as u32,
            central: a.degree() == a.count(1),
            // Coprime powers keep the cycle type.
            power_map: Some(coprime.iter().map(|&l| (l, t)).collect()),
        })
        .collect();
    let chars = parts
        .iter()
        .map(|lambda| {
            parts
                .iter()
                .map(|mu| Cyclotomic::from_integer(mn(lambda, mu)))
                .collect()
        })
        .collect();
    let order = factorial(u64::from(m)).to_u64().expect("m ≤ 9");
    Ok(CharacterTable::assemble(
        format!("S{m}"),
        order,
        exponent,
        classes,
        chars,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::Zero;

    /// Dimension of `χ_λ` by the hook length formula.
    fn hook_length_dim(lambda: &[u32]) -> BigInt {
        let n: u32 = lambda.iter().sum();
        let mut hooks = BigInt::from(1);
        for (i, &row) in lambda.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = lambda[i + 1..].iter().filter(|&&r| r > j).count() as u32;
                hooks *= arm + leg + 1;
            }
        }
        let (q, r) = factorial(u64::from(n)).div_rem(&hooks);
        debug_assert!(r.is_zero());
        q
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=9).map(|m| partitions(m).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn cycle_type_data() {
        let five = CycleType::from_partition(&[5]).unwrap();
        assert_eq!(five.class_size(), BigInt::from(24));
        let id = CycleType::from_partition(&[1; 5]).unwrap();
        assert_eq!(id.class_size(), BigInt::from(1));
        assert_eq!(id.label(), "1^5");
        assert_eq!(CycleType::from_partition(&[2, 1, 1]).unwrap().label(), "2 1^2");
        assert_eq!(CycleType::from_partition(&[3, 2]).unwrap().element_order(), 6);
    }

    #[test]
    fn mn_small_values() {
        let id5 = CycleType::from_partition(&[1; 5]).unwrap();
        assert_eq!(murnaghan_nakayama(&[3, 2], &id5).unwrap(), Cyclotomic::from_integer(5));
        assert_eq!(hook_length_dim(&[3, 2]), BigInt::from(5));
        let t = CycleType::from_partition(&[2, 1, 1, 1]).unwrap();
        assert_eq!(murnaghan_nakayama(&[1; 5], &t).unwrap(), Cyclotomic::from_integer(-1));
        assert_eq!(murnaghan_nakayama(&[5], &t).unwrap(), Cyclotomic::one());
        assert!(murnaghan_nakayama(&[2, 3], &id5).is_err());
    }
}
