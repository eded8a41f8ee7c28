use growthrate_core::closedform::{cyclic_lambda_sec, cyclic_ratio};
use growthrate_core::exact::{BigInt, BigRational, Cyclotomic};
use growthrate_core::modular::*;
use growthrate_core::Error;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

const PRIMES: [u32; 5] = [3, 5, 7, 11, 13];

fn v(p: u32, l: u32) -> IndecCyclic {
    IndecCyclic::new(p, l).unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn tensor_conserves_dimension_and_commutes() {
    for p in PRIMES {
        for r in 1..=p {
            for s in 1..=p {
                let rs = tensor_cyclic(v(p, r), v(p, s)).unwrap();
                assert_eq!(rs.iter().map(|x| x.l()).sum::<u32>(), r * s, "p={p} {r}⊗{s}");
                assert_eq!(rs, tensor_cyclic(v(p, s), v(p, r)).unwrap());
            }
        }
    }
    assert_eq!(tensor_cyclic(v(5, 1), v(5, 4)).unwrap(), vec![v(5, 4)]);
    assert_eq!(
        tensor_cyclic(v(5, 3), v(5, 3)).unwrap(),
        vec![v(5, 1), v(5, 3), v(5, 5)]
    );
    assert!(matches!(
        tensor_cyclic(v(5, 2), v(7, 2)),
        Err(Error::MismatchedPrime { left: 5, right: 7 })
    ));
    assert!(IndecCyclic::new(9, 2).is_err());
    assert!(IndecCyclic::new(5, 6).is_err());
}

#[test]
fn cyclic_matrix_v3_over_c5() {
    let m = action_matrix_cyclic(v(5, 3));
    let want: Vec<Vec<u64>> = vec![
        vec![0, 0, 1, 0, 0],
        vec![0, 1, 0, 1, 0],
        vec![1, 0, 1, 0, 0],
        vec![0, 1, 0, 0, 0],
        vec![0, 0, 1, 2, 3],
    ];
    assert_eq!(m.entries(), &want[..]);
    assert!(!m.truncated());
    let b = matrix_growth(&m, 2).unwrap();
    assert_eq!(b.values, ints(&[1, 1, 3]));

    let id = action_matrix_cyclic(v(7, 1));
    for (i, row) in id.entries().iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            assert_eq!(e, u64::from(i == j));
        }
    }
}

fn trace_power(m: &ActionMatrix, k: u32) -> BigInt {
    let n = m.size();
    let e = m.entries();
    let mut acc: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    for _ in 0..k {
        acc = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|t| &acc[i][t] * BigInt::from(e[t][j])).sum())
                    .collect()
            })
            .collect();
    }
    (0..n).map(|i| acc[i][i].clone()).sum()
}

/// Power sums of the reported spectrum equal `tr(M^k)`, an oracle
/// independent of the eigenvector construction.
#[test]
fn cyclic_spectrum_matches_traces() {
    for p in PRIMES {
        for l in 2..p {
            let m = action_matrix_cyclic(v(p, l));
            let spec = eigen_cyclic(v(p, l)).unwrap();
            assert_eq!(spec.iter().map(|(_, k)| k).sum::<u32>(), p);
            for k in 1..=4 {
                let s: Cyclotomic = spec
                    .iter()
                    .map(|(e, mult)| e.pow(k) * Cyclotomic::from_integer(i64::from(*mult)))
                    .fold(Cyclotomic::zero(), |a, b| a + b);
                assert_eq!(s, Cyclotomic::from_bigint(trace_power(&m, k)), "p={p} l={l} k={k}");
            }
        }
    }
}

#[test]
fn second_eigenvalue_is_golden() {
    for p in PRIMES.into_iter().filter(|&p| p >= 5) {
        let n = (p - 1) / 2;
        for l in 2..=p - 2 {
            let sec = second_eigenvalues(&eigen_cyclic(v(p, l)).unwrap());
            let mirror = second_eigenvalues(&eigen_cyclic(v(p, p - l)).unwrap());
            let g = golden_number(n, l.min(p - l)).unwrap();
            assert!(g.is_real());
            for e in sec.iter().chain(&mirror) {
                assert_eq!(e.norm_sq(), &g * &g, "p={p} l={l}");
            }
            assert_eq!(cyclic_lambda_sec(p, l).unwrap(), g);
        }
    }
    let phi = golden_number(2, 2).unwrap();
    assert!((phi.modulus_f64() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    assert_eq!(golden_number(4, 1).unwrap(), Cyclotomic::one());
}

/// The reference table of `|λ^sec_l|/l`, rows `l = 2..5`, columns
/// `p = 5, 7, 11, 13, 17, 19, 23, 29`.
const RATIO_TABLE: [[f64; 8]; 4] = [
    [0.8090, 0.9010, 0.9595, 0.9709, 0.9830, 0.9864, 0.9907, 0.9941],
    [0.5393, 0.7490, 0.8941, 0.9236, 0.9550, 0.9639, 0.9753, 0.9844],
    [0.25, 0.5617, 0.8072, 0.8597, 0.9166, 0.9329, 0.9539, 0.9709],
    [0.0, 0.3604, 0.7027, 0.7814, 0.8686, 0.8940, 0.9269, 0.9537],
];
const TABLE_PRIMES: [u32; 8] = [5, 7, 11, 13, 17, 19, 23, 29];
/// Printed to four decimals; one entry is truncated rather than rounded.
const TABLE_TOL: f64 = 1e-4;

#[test]
fn ratio_table_and_monotone_limit() {
    for (row, l) in RATIO_TABLE.iter().zip(2u32..) {
        let mut prev = -1.0;
        for (&want, &p) in row.iter().zip(&TABLE_PRIMES) {
            let got = cyclic_ratio(p, l).unwrap().modulus_f64();
            let float = if l == p {
                0.0
            } else {
                let k = f64::from(l.min(p - l));
                (k * std::f64::consts::PI / f64::from(p)).sin()
                    / (std::f64::consts::PI / f64::from(p)).sin()
                    / f64::from(l)
            };
            assert!((got - float).abs() < 1e-12);
            assert!((got - want).abs() <= TABLE_TOL, "p={p} l={l}: {got} vs {want}");
            assert!(got > prev && got < 1.0);
            prev = got;
        }
    }
}

#[test]
fn odd_dimensions_stay_odd() {
    for p in PRIMES {
        for l in (1..=p).step_by(2) {
            let m = action_matrix_cyclic(v(p, l));
            for i in reachable_from_trivial(&m) {
                assert_eq!(m.basis()[i].dim % 2, 1, "p={p} l={l}");
            }
        }
    }
    let g = fusion_graph(&action_matrix_cyclic(v(5, 3))).unwrap();
    assert_eq!(g.vertices.len(), 5);
    assert_eq!(g.projective_cell, vec![4]);
    assert_eq!(g.trivial_vertex, 0);
    assert!(!g.provisional);
}

#[test]
fn projective_cyclic_is_power_over_p() {
    let m = action_matrix_cyclic(v(5, 5));
    let b = matrix_growth(&m, 8).unwrap();
    for n in 1..=8u32 {
        assert_eq!(b.values[n as usize], BigInt::from(5u64.pow(n) / 5));
    }
}

fn klein_grid() -> Vec<KleinIndec> {
    let mut out = Vec::new();
    for l in 1..=3 {
        for m in 1..=3 {
            let k = KleinIndec::E { l, m };
            if k.validate().is_ok() {
                out.push(k);
            }
        }
    }
    for m in 2..=3 {
        out.push(KleinIndec::EZero { m });
        out.push(KleinIndec::EInf { m });
    }
    out.push(KleinIndec::Regular);
    out
}

#[test]
fn klein_closed_forms_match_matrices() {
    assert!(KleinIndec::E { l: 1, m: 1 }.validate().is_err());
    assert!(KleinIndec::EZero { m: 1 }.validate().is_err());
    for k in klein_grid() {
        let f = klein_closed_b(k).unwrap();
        assert_eq!(f.valid_from(), 1);
        let m = action_matrix_klein(k, None).unwrap();
        assert_eq!(m.dim(), k.dim());
        let want = matrix_growth(&m, 12).unwrap();
        let got = f.series(1, 12).unwrap();
        assert_eq!(got.values[..], want.values[1..], "{}", k.label());
        assert_eq!(got.values[0], BigInt::from(1));
    }
}

#[test]
fn klein_regular() {
    let m = action_matrix_klein(KleinIndec::Regular, None).unwrap();
    let b = matrix_growth(&m, 12).unwrap();
    for n in 1..=12u32 {
        assert_eq!(b.values[n as usize], BigInt::from(4u64.pow(n - 1)));
    }
    let g = fusion_graph(&m).unwrap();
    assert_eq!(g.vertices.len(), 2);
    assert_eq!(g.projective_cell, vec![m.index_of("kV_4").unwrap()]);
    assert!(klein_closed_b(KleinIndec::MOdd { m: 1 }).is_err());
}

#[test]
fn klein_truncation_self_consistent() {
    for m in 1..=3 {
        for module in [KleinIndec::MOdd { m }, KleinIndec::MOddDual { m }] {
            assert!(action_matrix_klein(module, None).is_err());
            assert!(action_matrix_klein(module, Some(2)).is_err());
            for k in 3..=12 {
                let small = action_matrix_klein(module, Some(k)).unwrap();
                let big = action_matrix_klein(module, Some(k + 5)).unwrap();
                let h = small.horizon().unwrap();
                assert_eq!(h, k - 2);
                let a = matrix_growth(&small, h).unwrap();
                let b = matrix_growth(&big, h).unwrap();
                assert_eq!(a.values, b.values);
                match matrix_growth(&small, h + 1) {
                    Err(Error::HorizonExceeded { required_cutoff, .. }) => assert_eq!(required_cutoff, h + 3),
                    other => panic!("expected a horizon error, got {other:?}"),
                }
            }
            let g = fusion_graph(&action_matrix_klein(module, Some(6)).unwrap()).unwrap();
            assert!(g.provisional);
        }
    }
}

const SL2_7_SERIES: [i64; 15] = [
    1, 4, 9, 35, 96, 442, 1286, 6502, 19309, 101178, 302544, 1604461, 4808389, 25598759, 76771067,
];

#[test]
fn sl2_7_series_and_ratio() {
    let m = bundled_matrix("sl2_7_mod7_dim4").unwrap();
    assert_eq!(m.size(), 13);
    // First column: a single 1, in the second row.
    let col0: Vec<u64> = m.entries().iter().map(|r| r[0]).collect();
    assert_eq!(col0.iter().sum::<u64>(), 1);
    assert_eq!(col0[1], 1);
    assert_eq!(m.dim(), 4);
    let b = matrix_growth(&m, 15).unwrap();
    assert_eq!(b.values[1..], ints(&SL2_7_SERIES)[..]);

    let a = modular_asymptotic_sl2(7, 7, 1, 4).unwrap();
    assert_eq!(
        a.coeff_rational(0) - a.coeff_rational(1),
        BigRational::new(2.into(), 84.into())
    );
    let r = BigRational::from_integer(b.values[15].clone()) / a.eval(15);
    assert_eq!(format!("{:.8}", r.to_f64().unwrap()), "1.00098079");

    let g = fusion_graph(&m).unwrap();
    assert_eq!(g.projective_cell, (6..=12).collect::<Vec<_>>());
    assert!(m
        .basis()
        .iter()
        .enumerate()
        .all(|(i, x)| x.projective == (6..=12).contains(&i)));
}

#[test]
fn sl2_asymptotic_coefficients() {
    let a = modular_asymptotic_sl2(7, 7, 1, 4).unwrap();
    let c = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    // 1/12 ± 1/84.
    assert_eq!(a.coeff_rational(0), c(1, 12) + c(1, 84));
    assert_eq!(a.coeff_rational(1), c(1, 12) - c(1, 84));
    let a8 = modular_asymptotic_sl2(8, 2, 3, 2).unwrap();
    assert_eq!(a8.period(), 1);
    assert_eq!(a8.coeff_rational(0), c(3, 56));
    assert!(modular_asymptotic_sl2(12, 2, 2, 2).is_err());
    assert!(modular_asymptotic_sl2(9, 3, 1, 2).is_err());
}

#[test]
fn bundled_series_converge() {
    // Expected ratios of convergence: about 0.56 for SL(2,7) and
    // |ω^5 − ω^2 − ω|/2 ≈ 0.94 with ω = ζ_18 for SL(2,8).
    let lam8 = Cyclotomic::root_of_unity(18, 5) - Cyclotomic::root_of_unity(18, 2) - Cyclotomic::root_of_unity(18, 1);
    let r8 = lam8.modulus_f64() / 2.0;
    assert!((r8 - 0.94).abs() < 0.005);
    for (name, q, p, r, rate) in [("sl2_7_mod7_dim4", 7, 7, 1, 0.56), ("sl2_8_mod2_dim2", 8, 2, 3, r8)] {
        let m = bundled_matrix(name).unwrap();
        let a = modular_asymptotic_sl2(q, p, r, m.dim()).unwrap();
        let b = matrix_growth(&m, 200).unwrap();
        let err = |n: usize| {
            let an = a.eval(n as u32);
            ((BigRational::from_integer(b.values[n].clone()) - &an) / an)
                .abs()
                .to_f64()
                .unwrap()
        };
        let window = |lo: usize| (lo..lo + 20).map(err).fold(0.0, f64::max);
        // Windows of 20 cover the period of the subleading terms.
        let (early, late) = (window(61), window(181));
        assert!(late <= early * (rate + 0.01_f64).powi(120), "{name}: {early} {late}");
        assert!(late >= early * (rate - 0.05_f64).powi(120), "{name}: {early} {late}");
    }
    let m8 = bundled_matrix("sl2_8_mod2_dim2").unwrap();
    assert_eq!(m8.size(), 15);
    assert_eq!(fusion_graph(&m8).unwrap().projective_cell, (7..=14).collect::<Vec<_>>());
    assert!(bundled_matrix("sl2_9").is_err());
}

proptest! {
    #[test]
    fn cyclic_matrices_conserve_dimension(pi in 0usize..5, l in 1u32..14, n in 0usize..6) {
        let p = PRIMES[pi];
        let l = 1 + (l - 1) % p;
        let m = action_matrix_cyclic(v(p, l));
        for j in 0..p as usize {
            let s: u64 = (0..p as usize).map(|i| m.entries()[i][j] * m.basis()[i].dim).sum();
            prop_assert_eq!(s, u64::from(l) * m.basis()[j].dim);
        }
        let b = matrix_growth(&m, n).unwrap();
        prop_assert!(b.values[n] >= BigInt::from(1));
    }
}
