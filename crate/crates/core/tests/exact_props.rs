use growthrate_core::exact::arith::gcd;
use growthrate_core::exact::{ratio, BigRational, Cyclotomic};
use proptest::prelude::*;

#[derive(Debug, Clone)]
struct Raw {
    m: u32,
    terms: Vec<(i64, i64, i64)>,
}

impl Raw {
    fn build(&self) -> Cyclotomic {
        Cyclotomic::from_terms(self.m, self.terms.iter().map(|&(e, n, d)| (e, ratio(n, d))))
    }

    /// Direct float evaluation of the unreduced sum.
    fn float(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for &(e, n, d) in &self.terms {
            let c = n as f64 / d as f64;
            let t = 2.0 * std::f64::consts::PI * e as f64 / self.m as f64;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }
}

fn raw() -> impl Strategy<Value = Raw> {
    (1u32..=36)
        .prop_flat_map(|m| {
            let term = (0i64..i64::from(m), -5i64..=5, 1i64..=4);
            (Just(m), prop::collection::vec(term, 0..5))
        })
        .prop_map(|(m, terms)| Raw { m, terms })
}

fn cyc() -> impl Strategy<Value = Cyclotomic> {
    raw().prop_map(|r| r.build())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn embedding_matches_unreduced_sum(r in raw()) {
        let (re, im) = r.float();
        let e = r.build().embed(128);
        prop_assert!((e.re - re).abs() < 1e-9 && (e.im - im).abs() < 1e-9, "{:?} vs ({re},{im})", e);
    }

    #[test]
    fn canonical_form_is_idempotent(a in cyc()) {
        let again = Cyclotomic::from_terms(
            a.conductor(),
            a.terms().iter().map(|(e, c)| (i64::from(*e), c.clone())),
        );
        prop_assert_eq!(&again, &a);
        let checked = Cyclotomic::from_canonical_terms(a.conductor(), a.terms().to_vec());
        prop_assert_eq!(checked.ok(), Some(a));
    }

    #[test]
    fn addition_is_associative_and_commutative(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_is_associative_and_distributive(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn norm_is_totally_real(a in cyc()) {
        let n = a.norm_sq();
        prop_assert_eq!(n.conj(), n);
    }

    #[test]
    fn embedding_is_multiplicative(a in cyc(), b in cyc()) {
        let ea = a.embed(96);
        let eb = b.embed(96);
        let eab = (&a * &b).embed(96);
        let prod = ea.mul(&eb);
        let gap = ((eab.re - prod.re).powi(2) + (eab.im - prod.im).powi(2)).sqrt();
        prop_assert!(gap <= eab.radius + prod.radius, "gap {gap} radii {} {}", eab.radius, prod.radius);
    }

    #[test]
    fn galois_composes(a in cyc(), l in 1i64..200, k in 1i64..200) {
        let m = i64::from(a.conductor());
        prop_assume!(gcd(l as u64, m as u64) == 1 && gcd(k as u64, m as u64) == 1);
        let lk = (l * k).rem_euclid(m.max(1));
        let composed = a.galois(k).unwrap().galois(l).unwrap();
        prop_assert_eq!(composed, a.galois(lk).unwrap());
        prop_assert_eq!(a.galois(m - 1).unwrap(), a.conj());
    }

    #[test]
    fn equality_agrees_with_embedding(a in cyc(), b in cyc()) {
        let same = a == b;
        let d = (&a - &b).embed(128);
        prop_assert_eq!(same, d.re.abs() < 1e-12 && d.im.abs() < 1e-12);
    }

    #[test]
    fn abs_cmp_agrees_with_floats(a in cyc(), b in cyc()) {
        let fa = a.modulus_f64();
        let fb = b.modulus_f64();
        let ord = a.abs_cmp(&b);
        if (fa - fb).abs() > 1e-9 {
            prop_assert_eq!(ord, fa.partial_cmp(&fb).unwrap());
        }
    }
}

#[test]
fn full_root_sums_vanish() {
    for m in 2..=24u32 {
        let s = Cyclotomic::sum(
            &(0..m)
                .map(|e| Cyclotomic::root_of_unity(m, e.into()))
                .collect::<Vec<_>>(),
        );
        assert!(s.is_zero(), "m = {m}: {s}");
    }
}

#[test]
fn rational_round_trip() {
    let r: BigRational = ratio(-7, 3);
    let c = Cyclotomic::from_rational(r.clone());
    assert_eq!(c.to_rational(), Some(r));
    assert!((c.embed(64).re + 7.0 / 3.0).abs() < 1e-15);
}
