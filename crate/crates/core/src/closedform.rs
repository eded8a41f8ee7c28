//! Closed formulas for individual families, each one an independent route to
//! a number the generic engine also computes.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chartab::{partitions, CycleType, RepCharacter, MAX_SYMMETRIC_DEGREE};
use crate::exact::arith::{euler_phi, factorial, gcd, is_prime, pow_u64, prime_power};
use crate::exact::{int, ratio, Cyclotomic};
use crate::growth::GrowthFormula;
use crate::modular::golden_number;
use crate::{Error, Result};

fn cyc(r: BigRational) -> Cyclotomic {
    Cyclotomic::from_rational(r)
}

/// `b(n)` for the faithful two-dimensional characters of `D_{2m}`.
///
/// Bases are `2`, `−2` (when `4 | m`) and `2cos(θ) = ζ + ζ^{-1}`.
pub fn dihedral_b(m: u32) -> Result<GrowthFormula> {
    if m < 3 {
        return Err(Error::invalid(format!("dihedral closed form needs m ≥ 3, got {m}")));
    }
    let mi = i64::from(m);
    let mut terms = Vec::new();
    if m % 2 == 1 {
        terms.push((cyc(ratio(mi + 1, 2 * mi)), Cyclotomic::from_integer(2)));
        for k in 1..=(mi - 1) / 2 {
            terms.push((cyc(ratio(1, mi)), Cyclotomic::two_cos(m, k)));
        }
    } else {
        terms.push((cyc(ratio(mi + 2, 2 * mi)), Cyclotomic::from_integer(2)));
        if m % 4 == 0 {
            terms.push((cyc(ratio(1, mi)), Cyclotomic::from_integer(-2)));
        }
        // Empty when m = 4.
        for k in 1..=(mi - 2) / 4 {
            terms.push((cyc(ratio(2, mi)), Cyclotomic::two_cos(m, 2 * k)));
        }
    }
    Ok(GrowthFormula::new(terms, 0))
}

/// Second-largest character value of the faithful two-dimensional
/// characters of `D_{2m}`, with the ratio of convergence as a real
/// cyclotomic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralSecond {
    pub chi_sec: Cyclotomic,
    pub ratio: Cyclotomic,
}

pub fn dihedral_chi_sec(m: u32) -> Result<DihedralSecond> {
    if m < 3 {
        return Err(Error::invalid(format!("dihedral closed form needs m ≥ 3, got {m}")));
    }
    let mi = i64::from(m);
    let m_prime = if m % 2 == 1 { (mi + 1) / 2 } else { mi / 2 + 1 };
    let chi_sec = Cyclotomic::two_cos(m, m_prime);
    let half = ratio(1, 2);
    let ratio = if m % 2 == 1 {
        // |cos((m+1)π/m)| = cos(π/m).
        Cyclotomic::two_cos(2 * m, 1).scale(&half)
    } else if m == 4 {
        Cyclotomic::zero()
    } else {
        let c = Cyclotomic::two_cos(2 * m, 4 * ((mi - 2) / 4)).scale(&half);
        if c.real_part_sign().is_lt() {
            -c
        } else {
            c
        }
    };
    Ok(DihedralSecond { chi_sec, ratio })
}

/// `ε(l, a_l)`, the per-length factor of the square-root count.
pub fn epsilon(l: u32, a_l: u32) -> BigRational {
    let fact = |n: u32| BigRational::from_integer(factorial(u64::from(n)));
    let pow = |b: u32, e: u32| BigRational::from_integer(BigInt::from(b).pow(e));
    if l % 2 == 1 {
        (0..=a_l / 2)
            .map(|z| pow(l, z) / (fact(a_l - 2 * z) * fact(z) * pow(2, z)))
            .fold(BigRational::zero(), |acc, x| acc + x)
    } else if a_l % 2 == 1 {
        BigRational::zero()
    } else {
        let h = a_l / 2;
        pow(l, h) / (pow(2, h) * fact(h))
    }
}

/// Number of square roots in `S_m` of a permutation of the given cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareRootCount {
    pub m: u32,
    pub a: CycleType,
    pub r2: BigInt,
}

/// `r_2(a) = Π_{a_l ≠ 0} a_l!·ε(l, a_l)`.
pub fn r2(a: &CycleType) -> Result<SquareRootCount> {
    let mut prod = BigRational::one();
    for (i, &n) in a.counts().iter().enumerate() {
        if n != 0 {
            prod *= BigRational::from_integer(factorial(u64::from(n))) * epsilon(i as u32 + 1, n);
        }
    }
    if !prod.is_integer() {
        return Err(Error::integrity(format!(
            "r2({}) = {prod} is not an integer",
            a.label()
        )));
    }
    Ok(SquareRootCount {
        m: a.degree(),
        a: a.clone(),
        r2: prod.to_integer(),
    })
}

/// `Σ_z 1/((m−2z)! z! 2^z)`, the coefficient of `(dim V)^n` in `a(n)` for
/// faithful characters of `S_m`.
pub fn symmetric_asymptotic_coeff(m: u32) -> BigRational {
    epsilon(1, m)
}

/// `b(n) = Σ_a r_2(a)/(Π l^{a_l} a_l!)·χ(a)^n` over the cycle types of `S_m`.
///
/// Classes of `chi`'s table are looked up by cycle-type label (`2 1^3`).
pub fn symmetric_b(m: u32, chi: &RepCharacter<'_>) -> Result<GrowthFormula> {
    if !(3..=MAX_SYMMETRIC_DEGREE).contains(&m) {
        return Err(Error::invalid(format!(
            "symmetric closed form needs 3 ≤ m ≤ {MAX_SYMMETRIC_DEGREE}, got {m}"
        )));
    }
    let table = chi.table();
    let mut terms = Vec::new();
    for parts in partitions(m) {
        let a = CycleType::from_partition(&parts)?;
        let t = table
            .class_index(&a.label())
            .ok_or_else(|| Error::invalid(format!("{} has no class {}", table.group_name(), a.label())))?;
        let coeff = BigRational::new(r2(&a)?.r2, a.centralizer_order());
        terms.push((cyc(coeff), chi.value(t).clone()));
    }
    Ok(GrowthFormula::new(terms, 0))
}

/// `b(n)` for a character of `SL(2,q)`.
///
/// The table must name its classes `1`, `z`, `c`, `d`, `zc`, `zd`, `a^l`,
/// `b^m` (odd `q`) or `1`, `c`, `a^l`, `b^m` (even `q`), where `a` generates
/// the split torus of order `q − 1` and `b` the nonsplit torus of order
/// `q + 1`. For odd `q` the classes carrying a nonzero column sum are `1`,
/// `z`, `zc`, `zd`, the even powers of `a` and the odd powers of `b`.
pub fn sl2q_char0_b(q: u32, chi: &RepCharacter<'_>) -> Result<GrowthFormula> {
    if prime_power(u64::from(q)).is_none() {
        return Err(Error::invalid(format!("{q} is not a prime power")));
    }
    let table = chi.table();
    let qi = i64::from(q);
    let order = qi * qi * qi - qi;
    if table.order() != order as u64 {
        return Err(Error::invalid(format!(
            "{} has order {}, but SL(2,{q}) has order {order}",
            table.group_name(),
            table.order()
        )));
    }
    let value = |name: &str| -> Result<Cyclotomic> {
        table
            .class_index(name)
            .map(|t| chi.value(t).clone())
            .ok_or_else(|| Error::invalid(format!("{} has no class labelled {name}", table.group_name())))
    };
    let mut terms = Vec::new();
    if q % 2 == 1 {
        terms.push((cyc(ratio(qi * qi + qi, order)), value("1")?));
        if ((q - 1) / 2) % 2 == 0 {
            terms.push((cyc(ratio(2, order)), value("z")?));
            terms.push((cyc(ratio(1, qi)), value("zc")?));
            terms.push((cyc(ratio(1, qi)), value("zd")?));
        }
        for l in 1..=(qi - 3) / 4 {
            terms.push((cyc(ratio(2, qi - 1)), value(&format!("a^{}", 2 * l))?));
        }
        for m in 1..=(qi + 1) / 4 {
            terms.push((cyc(ratio(2, qi + 1)), value(&power_label("b", 2 * m - 1))?));
        }
    } else {
        terms.push((cyc(ratio(qi * qi, order)), value("1")?));
        for l in 1..=(qi - 2) / 2 {
            terms.push((cyc(ratio(1, qi - 1)), value(&power_label("a", l))?));
        }
        for m in 1..=qi / 2 {
            terms.push((cyc(ratio(1, qi + 1)), value(&power_label("b", m))?));
        }
    }
    Ok(GrowthFormula::new(terms, 0))
}

fn power_label(g: &str, k: i64) -> alloc::string::String {
    if k == 1 {
        g.into()
    } else {
        format!("{g}^{k}")
    }
}

/// `C_{p^s}(x)`, the sum of `x`-th powers of the primitive `p^s`-th roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RamanujanSum {
    pub modulus: u64,
    pub x: i64,
    pub value: i64,
}

pub fn ramanujan_pp(p: u32, s: u32, x: i64) -> Result<RamanujanSum> {
    if !is_prime(u64::from(p)) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let modulus = pow_u64(u64::from(p), s);
    let divides = |d: u64| x.unsigned_abs() % d == 0;
    let value = if divides(modulus) {
        euler_phi(modulus) as i64
    } else if divides(modulus / u64::from(p)) {
        -((modulus / u64::from(p)) as i64)
    } else {
        0
    };
    Ok(RamanujanSum { modulus, x, value })
}

/// `b(n) = a(n)` for faithful irreducibles of `G(p,k,j)`, with each
/// `[ω_i^n]` expanded into its primitive `p^i`-th roots.
pub fn semidirect_b(p: u32, k: u32, j: u32) -> Result<GrowthFormula> {
    if !is_prime(u64::from(p)) || j < 1 || k < 2 * j {
        return Err(Error::invalid(format!(
            "G(p,k,j) needs p prime and k − j ≥ j ≥ 1, got ({p},{k},{j})"
        )));
    }
    let pb = BigInt::from(p);
    let pk = pb.pow(k);
    let pk1 = pb.pow(k - 1);
    let den = pb.pow(k + j);
    let pj = pow_u64(u64::from(p), j);
    let dim = Cyclotomic::from_integer(pj as i64);
    let mut terms = Vec::new();
    let lead = BigInt::from(j + 1) * &pk - BigInt::from(j) * &pk1;
    terms.push((cyc(BigRational::new(lead, den.clone())), dim.clone()));
    for m in 0..j {
        let order = pow_u64(u64::from(p), j - m);
        let c = cyc(BigRational::new(BigInt::from(m + 1) * (&pk - &pk1), den.clone()));
        for e in (1..order).filter(|&e| gcd(e, order) == 1) {
            terms.push((c.clone(), dim.mul_root(order as u32, e as i64)));
        }
    }
    Ok(GrowthFormula::new(terms, 0))
}

/// `|λ^sec_l|` for the `l`-dimensional indecomposable over `C_p`: `1` for
/// `l = 1`, `0` for the projective `l = p`, else the golden number.
pub fn cyclic_lambda_sec(p: u32, l: u32) -> Result<Cyclotomic> {
    if p < 3 || !is_prime(u64::from(p)) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    if !(1..=p).contains(&l) {
        return Err(Error::invalid(format!("l = {l} is outside [1, {p}]")));
    }
    Ok(match l {
        1 => Cyclotomic::one(),
        l if l == p => Cyclotomic::zero(),
        l => golden_number((p - 1) / 2, l.min(p - l))?,
    })
}

/// `|λ^sec_l|/l`, the ratio of convergence for `V_l` over `C_p`.
pub fn cyclic_ratio(p: u32, l: u32) -> Result<Cyclotomic> {
    Ok(cyclic_lambda_sec(p, l)?.div_rational(&int(i64::from(l))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::{build_dihedral, build_semidirect, build_symmetric, RepCharacter};
    use crate::growth::{exact_b, spectral_report};

    #[test]
    fn dihedral_twelve_values() {
        let f = dihedral_b(6).unwrap();
        let s = f.series(1, 6).unwrap();
        assert_eq!(s.values, [1, 3, 5, 11, 21, 43].map(BigInt::from));
        assert_eq!(dihedral_b(4).unwrap().terms().len(), 2);
    }

    #[test]
    fn dihedral_matches_engine() {
        for m in 3..=16 {
            let t = build_dihedral(2 * m).unwrap();
            let f = dihedral_b(m).unwrap();
            let sec = dihedral_chi_sec(m).unwrap();
            for i in 0..t.num_chars() {
                let chi = RepCharacter::irreducible(&t, i).unwrap();
                if chi.dim() != 2 || !chi.is_faithful() {
                    continue;
                }
                assert_eq!(exact_b(&chi).unwrap(), f, "m = {m}");
                let r = spectral_report(&chi).unwrap();
                assert_eq!(r.ratio_sq, sec.ratio.norm_sq(), "m = {m}");
            }
        }
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon(2, 1), ratio(0, 1));
        assert_eq!(epsilon(1, 5), ratio(13, 60));
        assert_eq!(epsilon(2, 2), ratio(1, 1));
        let id = CycleType::from_partition(&[1; 5]).unwrap();
        assert_eq!(r2(&id).unwrap().r2, BigInt::from(26));
        let t = CycleType::from_partition(&[2]).unwrap();
        assert!(r2(&t).unwrap().r2.is_zero());
    }

    #[test]
    fn symmetric_matches_engine() {
        let t = build_symmetric(5).unwrap();
        for i in 0..t.num_chars() {
            let chi = RepCharacter::irreducible(&t, i).unwrap();
            assert_eq!(symmetric_b(5, &chi).unwrap(), exact_b(&chi).unwrap());
        }
        assert_eq!(symmetric_asymptotic_coeff(5), ratio(13, 60));
    }

    #[test]
    fn ramanujan_values() {
        assert_eq!(ramanujan_pp(3, 0, 7).unwrap().value, 1);
        assert_eq!(ramanujan_pp(5, 1, 10).unwrap().value, 4);
        assert_eq!(ramanujan_pp(5, 1, 3).unwrap().value, -1);
        assert_eq!(ramanujan_pp(3, 2, 3).unwrap().value, -3);
        assert_eq!(ramanujan_pp(3, 2, 1).unwrap().value, 0);
    }

    #[test]
    fn semidirect_examples() {
        let f = semidirect_b(2, 5, 2).unwrap();
        let coeffs: Vec<BigRational> = f.terms().iter().map(|(c, _)| c.to_rational().unwrap()).collect();
        let mut sorted = coeffs.clone();
        sorted.sort();
        assert_eq!(sorted, [ratio(1, 8), ratio(1, 8), ratio(1, 4), ratio(1, 2)]);
        let t = build_semidirect(2, 5, 2).unwrap();
        let chi = (0..t.num_chars())
            .map(|i| RepCharacter::irreducible(&t, i).unwrap())
            .find(|c| c.is_faithful())
            .unwrap();
        assert_eq!(exact_b(&chi).unwrap(), f);
        let g = semidirect_b(3, 4, 2).unwrap();
        let lead = g.terms().iter().find(|(_, b)| b.is_rational()).unwrap();
        assert_eq!(lead.0.to_rational().unwrap(), ratio(189, 729));
    }

    #[test]
    fn cyclic_ratio_five() {
        let r: Vec<f64> = (2..=5).map(|l| cyclic_ratio(5, l).unwrap().to_complex().re).collect();
        let want = [0.8090, 0.5393, 0.25, 0.0];
        for (x, w) in r.iter().zip(want) {
            assert!((x - w).abs() < 5e-5, "{x} vs {w}");
        }
        assert!(cyclic_lambda_sec(5, 1).unwrap().is_one());
        assert!(cyclic_lambda_sec(4, 1).is_err());
    }

    #[test]
    fn sign_of_ratio() {
        for m in 3..=20 {
            let r = dihedral_chi_sec(m).unwrap().ratio;
            assert!(!r.real_part_sign().is_lt());
            assert!(r.is_real());
        }
        assert!(dihedral_chi_sec(8).unwrap().ratio.is_zero());
    }
}
