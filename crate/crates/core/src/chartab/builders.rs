use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{CharacterTable, ConjClass};
use crate::exact::arith::{gcd, is_prime, lcm, pow_u64};
use crate::exact::Cyclotomic;
use crate::{Error, Result};

fn units(m: u32) -> impl Iterator<Item = u32> {
    (1..m.max(2)).filter(move |&l| gcd(u64::from(l), u64::from(m)) == 1)
}

fn power(name: &str, k: u64) -> String {
    match k {
        0 => "1".into(),
        1 => name.into(),
        _ => format!("{name}^{k}"),
    }
}

/// `C_d = ⟨g⟩` with `χ_i(g^j) = ζ_d^{ij}`.
pub fn build_cyclic(d: u32) -> Result<CharacterTable> {
    if d == 0 {
        return Err(Error::invalid("cyclic group order must be positive"));
    }
    let classes = (0..d)
        .map(|j| ConjClass {
            name: power("g", u64::from(j)),
            size: 1,
            rep_order: d / gcd(u64::from(j), u64::from(d)) as u32,
            central: true,
            power_map: Some(
                units(d)
                    .map(|l| (l, ((u64::from(j) * u64::from(l)) % u64::from(d)) as usize))
                    .collect(),
            ),
        })
        .collect();
    let chars = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| Cyclotomic::root_of_unity(d, i64::from(i) * i64::from(j)))
                .collect()
        })
        .collect();
    Ok(CharacterTable::assemble(
        format!("C{d}"),
        u64::from(d),
        d,
        classes,
        chars,
    ))
}

/// `D_{2m} = ⟨r, s | r^m = s² = 1, srs = r^{-1}⟩`, built from `2m`.
pub fn build_dihedral(two_m: u32) -> Result<CharacterTable> {
    if two_m % 2 != 0 || two_m < 6 {
        return Err(Error::invalid(format!(
            "dihedral order must be even and at least 6, got {two_m}"
        )));
    }
    let m = two_m / 2;
    let exponent = lcm(u64::from(m), 2) as u32;
    let even = m % 2 == 0;
    let mu = u64::from(m);

    // Rotation classes {r^k, r^-k} for 0 ≤ k ≤ m/2, then reflections.
    let half = m / 2;
    let rot_index = |k: u64| -> usize {
        let k = k % mu;
        k.min(mu - k) as usize
    };
    let mut classes: Vec<ConjClass> = (0..=half)
        .map(|k| {
            let k = u64::from(k);
            let self_inverse = 2 * k % mu == 0;
            ConjClass {
                name: power("r", k),
                size: if self_inverse { 1 } else { 2 },
                rep_order: (mu / gcd(k, mu)) as u32,
                central: self_inverse,
                power_map: Some(units(exponent).map(|l| (l, rot_index(k * u64::from(l)))).collect()),
            }
        })
        .collect();
    let first_reflection = classes.len();
    let reflection_names: &[&str] = if even { &["s", "sr"] } else { &["s"] };
    for (i, name) in reflection_names.iter().enumerate() {
        let index = first_reflection + i;
        classes.push(ConjClass {
            name: (*name).to_string(),
            size: if even { u64::from(m / 2) } else { u64::from(m) },
            rep_order: 2,
            central: false,
            // Coprime powers of a reflection are odd, so fix it.
            power_map: Some(units(exponent).map(|l| (l, index)).collect()),
        });
    }

    let one = Cyclotomic::one();
    let minus = Cyclotomic::from_integer(-1);
    let sign = |k: u64| if k % 2 == 0 { one.clone() } else { minus.clone() };
    let mut chars: Vec<Vec<Cyclotomic>> = Vec::new();
    // Linear characters as (value on r, value on s).
    let linear: Vec<(bool, bool)> = if even {
        vec![(false, false), (false, true), (true, false), (true, true)]
    } else {
        vec![(false, false), (false, true)]
    };
    for (alt_r, neg_s) in linear {
        let mut row: Vec<Cyclotomic> = (0..=half)
            .map(|k| if alt_r { sign(u64::from(k)) } else { one.clone() })
            .collect();
        for i in 0..reflection_names.len() {
            // sr^i maps to χ(s)·χ(r)^i.
            let mut v = if neg_s { minus.clone() } else { one.clone() };
            if alt_r && i == 1 {
                v = -v;
            }
            row.push(v);
        }
        chars.push(row);
    }
    let two_dim = if even { m / 2 - 1 } else { (m - 1) / 2 };
    for h in 1..=two_dim {
        let mut row: Vec<Cyclotomic> = (0..=half)
            .map(|k| Cyclotomic::two_cos(m, i64::from(h) * i64::from(k)))
            .collect();
        row.extend(reflection_names.iter().map(|_| Cyclotomic::zero()));
        chars.push(row);
    }
    Ok(CharacterTable::assemble(
        format!("D{two_m}"),
        u64::from(two_m),
        exponent,
        classes,
        chars,
    ))
}

/// Elements `a^x b^y` of `G(p,k,j)` as `(x mod p^k, y mod p^j)`.
struct Metacyclic {
    pk: u64,
    pj: u64,
    /// `r^y mod p^k` for `y < p^j`, where `b a b^{-1} = a^r`.
    rpow: Vec<u64>,
}

impl Metacyclic {
    fn mul(&self, (x, y): (u64, u64), (x2, y2): (u64, u64)) -> (u64, u64) {
        ((x + self.rpow[y as usize] * x2) % self.pk, (y + y2) % self.pj)
    }

    fn inv(&self, (x, y): (u64, u64)) -> (u64, u64) {
        let yi = (self.pj - y) % self.pj;
        ((self.pk - self.rpow[yi as usize] * x % self.pk) % self.pk, yi)
    }

    fn index(&self, (x, y): (u64, u64)) -> usize {
        (y * self.pk + x) as usize
    }

    fn order(&self, g: (u64, u64)) -> u64 {
        let mut h = g;
        let mut n = 1;
        while h != (0, 0) {
            h = self.mul(h, g);
            n += 1;
        }
        n
    }

    fn pow(&self, g: (u64, u64), mut l: u64) -> (u64, u64) {
        let mut acc = (0, 0);
        let mut base = g;
        while l > 0 {
            if l & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            l >>= 1;
        }
        acc
    }
}

/// `G(p,k,j) = ⟨a, b | a^{p^k} = b^{p^j} = 1, b a b^{-1} = a^{p^{k-j}+1}⟩`
/// for `k − j ≥ j ≥ 1`.
///
/// Classes are found by closing orbits under conjugation by `a` and `b`.
/// Irreducibles are the `p^k` linear characters and, for `1 ≤ m ≤ j`, the
/// characters induced from `⟨a, b^{p^m}⟩`:
/// `χ(a^x b^y) = p^m η^x δ^{y/p^m}` when `p^m` divides both `x` and `y`, and
/// `0` otherwise, with `η` a primitive `p^{k-j+m}`-th root and `δ` a
/// `p^{j-m}`-th root of unity.
pub fn build_semidirect(p: u32, k: u32, j: u32) -> Result<CharacterTable> {
    if !is_prime(u64::from(p)) || j < 1 || k < 2 * j {
        return Err(Error::invalid(format!(
            "G(p,k,j) needs p prime and k − j ≥ j ≥ 1, got ({p},{k},{j})"
        )));
    }
    let pu = u64::from(p);
    let pk = pow_u64(pu, k);
    let pj = pow_u64(pu, j);
    if pk * pj > 1 << 16 {
        return Err(Error::invalid(format!(
            "G({p},{k},{j}) has order {} (cap 65536)",
            pk * pj
        )));
    }
    let r = pow_u64(pu, k - j) + 1;
    let mut rpow = vec![1u64; pj as usize];
    for y in 1..pj as usize {
        rpow[y] = rpow[y - 1] * r % pk;
    }
    let g = Metacyclic { pk, pj, rpow };
    let size = (pk * pj) as usize;

    let gens = [(1, 0), (0, 1)];
    let mut class_of = vec![usize::MAX; size];
    let mut reps: Vec<((u64, u64), u64)> = Vec::new();
    for y in 0..pj {
        for x in 0..pk {
            if class_of[g.index((x, y))] != usize::MAX {
                continue;
            }
            let id = reps.len();
            let mut stack = vec![(x, y)];
            class_of[g.index((x, y))] = id;
            let mut count = 0;
            while let Some(e) = stack.pop() {
                count += 1;
                for h in gens {
                    let c = g.mul(g.mul(h, e), g.inv(h));
                    if class_of[g.index(c)] == usize::MAX {
                        class_of[g.index(c)] = id;
                        stack.push(c);
                    }
                }
            }
            // Scanning by y then x makes the first hit the smallest (y, x).
            reps.push(((x, y), count));
        }
    }
    let mut exponent = 1u64;
    for &(rep, _) in &reps {
        exponent = lcm(exponent, g.order(rep));
    }
    let exponent = exponent as u32;
    let classes: Vec<ConjClass> = reps
        .iter()
        .map(|&((x, y), sz)| {
            let name = match (x, y) {
                (0, 0) => "1".to_string(),
                (x, 0) => power("a", x),
                (0, y) => power("b", y),
                (x, y) => format!("{}{}", power("a", x), power("b", y)),
            };
            ConjClass {
                name,
                size: sz,
                rep_order: g.order((x, y)) as u32,
                central: sz == 1,
                power_map: Some(
                    units(exponent)
                        .map(|l| (l, class_of[g.index(g.pow((x, y), u64::from(l)))]))
                        .collect(),
                ),
            }
        })
        .collect();

    let pkj = pow_u64(pu, k - j);
    let mut chars: Vec<Vec<Cyclotomic>> = Vec::new();
    for i in 0..pkj {
        for l in 0..pj {
            chars.push(
                reps.iter()
                    .map(|&((x, y), _)| {
                        Cyclotomic::root_of_unity(pkj as u32, (i * x) as i64).mul_root(pj as u32, (l * y) as i64)
                    })
                    .collect(),
            );
        }
    }
    for m in 1..=j {
        let pm = pow_u64(pu, m);
        let eta_order = pow_u64(pu, k - j + m) as u32;
        let delta_order = pow_u64(pu, j - m) as u32;
        for u in (1..pkj).filter(|u| u % pu != 0) {
            for v in 0..u64::from(delta_order) {
                chars.push(
                    reps.iter()
                        .map(|&((x, y), _)| {
                            if x % pm != 0 || y % pm != 0 {
                                return Cyclotomic::zero();
                            }
                            Cyclotomic::root_of_unity(eta_order, (u * x) as i64)
                                .mul_root(delta_order, (v * (y / pm)) as i64)
                                .scale(&crate::exact::int(pm as i64))
                        })
                        .collect(),
                );
            }
        }
    }
    let table = CharacterTable::assemble(format!("G({p},{k},{j})"), pk * pj, exponent, classes, chars);
    Ok(table)
}
