//! The `verify` command: named checks grouped into suites.
//!
//! Every check compares exact values, except the reference four-decimal
//! ratio table and the reference eight-digit ratio, whose tolerances are
//! stated next to them.

use std::collections::HashMap;
use std::time::Instant;

use growthrate_core::chartab::{
    build_cyclic, build_dihedral, build_semidirect, build_symmetric, partitions, CharacterTable, CycleType,
    RepCharacter,
};
use growthrate_core::closedform::{
    cyclic_ratio, dihedral_b, dihedral_chi_sec, r2, ramanujan_pp, semidirect_b, sl2q_char0_b, symmetric_b,
};
use growthrate_core::exact::{BigInt, BigRational, Cyclotomic};
use growthrate_core::growth::{asymptotic_a, column_sums, exact_b, oracle_b, spectral_report, variance_check};
use growthrate_core::modular::{
    action_matrix_klein, eigen_cyclic, golden_number, klein_closed_b, matrix_growth, modular_asymptotic_sl2,
    second_eigenvalues, tensor_cyclic, IndecCyclic, KleinIndec,
};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::data;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Char0,
    Modular,
    Closedform,
}

impl Suite {
    /// `all` selects every suite.
    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        match s {
            "all" => Some(vec![Suite::Char0, Suite::Modular, Suite::Closedform]),
            "char0" => Some(vec![Suite::Char0]),
            "modular" => Some(vec![Suite::Modular]),
            "closedform" => Some(vec![Suite::Closedform]),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Char0 => "char0",
            Suite::Modular => "modular",
            Suite::Closedform => "closedform",
        }
    }
}

type Outcome = Result<String, String>;

pub struct Check {
    pub suite: Suite,
    pub name: &'static str,
    run: fn() -> Outcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

pub fn checks() -> Vec<Check> {
    let c = |suite, name, run| Check { suite, name, run };
    vec![
        c(Suite::Char0, "d12_golden_sequence", d12_golden_sequence),
        c(Suite::Char0, "oracle_cyclic", || oracle_family(&cyclic_tables())),
        c(Suite::Char0, "oracle_dihedral", || oracle_family(&dihedral_tables())),
        c(Suite::Char0, "oracle_symmetric", || oracle_family(&symmetric_tables())),
        c(
            Suite::Char0,
            "oracle_semidirect",
            || oracle_family(&semidirect_tables()),
        ),
        c(Suite::Char0, "oracle_sl2_bundled", || oracle_family(&sl2_tables())),
        c(Suite::Char0, "column_sum_identity", column_sum_identity),
        c(Suite::Char0, "b0_and_b1", b0_and_b1),
        c(Suite::Char0, "d12_difference_one_third", d12_difference),
        c(Suite::Char0, "d16_exact_match", d16_exact_match),
        c(Suite::Char0, "s5_ratios_by_dimension", s5_ratios),
        c(Suite::Modular, "sl2_7_mod7_series", sl2_7_series),
        c(Suite::Modular, "sl2_7_mod7_asymptotics", sl2_7_asymptotics),
        c(Suite::Modular, "sl2_brauer_tables_asymptotics", brauer_asymptotics),
        c(Suite::Modular, "cyclic_golden_spectra", cyclic_golden),
        c(Suite::Modular, "cyclic_ratio_table", cyclic_ratio_table),
        c(Suite::Modular, "tensor_cyclic_dimension", tensor_dimension),
        c(Suite::Modular, "klein_closed_forms", klein_closed),
        c(Suite::Modular, "klein_regular", klein_regular),
        c(Suite::Modular, "klein_truncation", klein_truncation),
        c(Suite::Closedform, "dihedral_closed_form", dihedral_closed),
        c(Suite::Closedform, "dihedral_second_value", dihedral_second),
        c(Suite::Closedform, "symmetric_closed_form", symmetric_closed),
        c(Suite::Closedform, "semidirect_grid", semidirect_grid),
        c(Suite::Closedform, "sl2_char0_closed_form", sl2_closed),
        c(Suite::Closedform, "r2_brute_force", r2_brute_force),
        c(Suite::Closedform, "ramanujan_brute_force", ramanujan_brute_force),
    ]
}

/// Runs the selected suites on `jobs` threads (0 = rayon's default);
/// results keep registry order.
pub fn run(suites: &[Suite], jobs: usize) -> Vec<CheckResult> {
    let selected: Vec<Check> = checks().into_iter().filter(|c| suites.contains(&c.suite)).collect();
    let exec = || {
        selected
            .par_iter()
            .map(|c| {
                let t = Instant::now();
                let (passed, detail) = match (c.run)() {
                    Ok(d) => (true, d),
                    Err(d) => (false, d),
                };
                CheckResult {
                    suite: c.suite,
                    name: c.name,
                    passed,
                    detail,
                    millis: t.elapsed().as_millis(),
                }
            })
            .collect()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(exec),
        Err(_) => exec(),
    }
}

pub fn render_text(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{tag} {}/{} ({} ms): {}\n",
            r.suite.name(),
            r.name,
            r.millis,
            r.detail
        ));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("{} checks, {failed} failed\n", results.len()));
    out
}

pub fn render_json(results: &[CheckResult]) -> String {
    let mut s = serde_json::to_string_pretty(results).expect("serializable");
    s.push('\n');
    s
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn faithful_of_dim(t: &CharacterTable, dim: u64) -> Vec<usize> {
    (0..t.num_chars())
        .filter(|&i| t.dim(i) == dim && RepCharacter::irreducible(t, i).is_ok_and(|c| c.is_faithful()))
        .collect()
}

pub const D12_GOLDEN: [i64; 10] = [1, 3, 5, 11, 21, 43, 85, 171, 341, 683];

fn d12_golden_sequence() -> Outcome {
    let t = build_dihedral(12).map_err(e)?;
    let idx = faithful_of_dim(&t, 2);
    ensure(idx.len() == 1, || {
        format!("expected one faithful 2-dim character, found {}", idx.len())
    })?;
    let chi = RepCharacter::irreducible(&t, idx[0]).map_err(e)?;
    let got = exact_b(&chi).map_err(e)?.series(1, 10).map_err(e)?.values;
    ensure(got == ints(&D12_GOLDEN), || format!("b(1..10) = {got:?}"))?;
    Ok("b(1..10) = 1, 3, 5, 11, 21, 43, 85, 171, 341, 683".into())
}

fn cyclic_tables() -> Vec<CharacterTable> {
    (1..=12).filter_map(|d| build_cyclic(d).ok()).collect()
}

fn dihedral_tables() -> Vec<CharacterTable> {
    (3..=16).filter_map(|m| build_dihedral(2 * m).ok()).collect()
}

fn symmetric_tables() -> Vec<CharacterTable> {
    (3..=7).filter_map(|m| build_symmetric(m).ok()).collect()
}

pub const SEMIDIRECT_GRID: [(u32, u32, u32); 4] = [(2, 4, 2), (2, 5, 2), (3, 3, 1), (3, 4, 2)];

fn semidirect_tables() -> Vec<CharacterTable> {
    SEMIDIRECT_GRID
        .iter()
        .filter_map(|&(p, k, j)| build_semidirect(p, k, j).ok())
        .collect()
}

fn sl2_tables() -> Vec<CharacterTable> {
    ["sl2_4", "sl2_5", "sl2_7", "sl2_8"]
        .iter()
        .filter_map(|n| data::bundled_table(n).ok())
        .collect()
}

fn oracle_family(tables: &[CharacterTable]) -> Outcome {
    ensure(!tables.is_empty(), || "no tables built".into())?;
    let mut count = 0;
    for t in tables {
        for i in 0..t.num_chars() {
            let chi = RepCharacter::irreducible(t, i).map_err(e)?;
            let exact = exact_b(&chi).map_err(e)?.series(0, 12).map_err(e)?;
            let oracle = oracle_b(&chi, 12).map_err(e)?;
            ensure(exact.values == oracle.values, || {
                format!("{} χ{i}: exact and oracle differ", t.group_name())
            })?;
            count += 1;
        }
    }
    Ok(format!("{} tables, {count} characters, n ≤ 12", tables.len()))
}

fn all_tables() -> Vec<CharacterTable> {
    let mut v = cyclic_tables();
    v.extend(dihedral_tables());
    v.extend(symmetric_tables());
    v.extend(semidirect_tables());
    v.extend(sl2_tables());
    v
}

fn column_sum_identity() -> Outcome {
    let tables = all_tables();
    for t in &tables {
        let sums = column_sums(t).map_err(e)?;
        let mut total = BigInt::from(0);
        for (s, c) in sums.iter().zip(t.classes()) {
            let s = s
                .to_integer()
                .ok_or_else(|| format!("{}: column sum {s} is not an integer", t.group_name()))?;
            total += s * BigInt::from(c.size);
        }
        ensure(total == BigInt::from(t.order()), || {
            format!("{}: Σ|C|S = {total}", t.group_name())
        })?;
    }
    Ok(format!("Σ|C_t|S_t = |G| with integral S_t on {} tables", tables.len()))
}

fn b0_and_b1() -> Outcome {
    let tables = all_tables();
    for t in &tables {
        let n = t.num_chars();
        // Every irreducible, then χ_0 + χ_last + χ_last.
        let mut mults: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        let mut sum = vec![0u64; n];
        sum[0] += 1;
        sum[n - 1] += 2;
        mults.push(sum);
        for mult in mults {
            let chi = RepCharacter::from_multiplicities(t, &mult).map_err(e)?;
            let b = exact_b(&chi).map_err(e)?.series(0, 1).map_err(e)?.values;
            let count: u64 = mult.iter().sum();
            ensure(b[0] == BigInt::from(1) && b[1] == BigInt::from(count), || {
                format!("{} {mult:?}: b(0), b(1) = {}, {}", t.group_name(), b[0], b[1])
            })?;
        }
    }
    Ok(format!(
        "b(0) = 1 and b(1) = number of constituents on {} tables",
        tables.len()
    ))
}

fn d12_difference() -> Outcome {
    let t = build_dihedral(12).map_err(e)?;
    let chi = RepCharacter::irreducible(&t, faithful_of_dim(&t, 2)[0]).map_err(e)?;
    let v = variance_check(&chi, 40).map_err(e)?;
    let third = BigRational::new(1.into(), 3.into());
    ensure(v.diffs.iter().all(|d| *d == third), || {
        "some |b(n) − a(n)| ≠ 1/3".into()
    })?;
    Ok("|b(n) − a(n)| = 1/3 for 1 ≤ n ≤ 40".into())
}

fn d16_exact_match() -> Outcome {
    let t = build_dihedral(16).map_err(e)?;
    let idx = faithful_of_dim(&t, 2);
    ensure(!idx.is_empty(), || "no faithful 2-dim character".into())?;
    for i in idx {
        let chi = RepCharacter::irreducible(&t, i).map_err(e)?;
        let v = variance_check(&chi, 40).map_err(e)?;
        ensure(v.exact_match, || format!("χ{i}: b(n) ≠ a(n)"))?;
        let r = spectral_report(&chi).map_err(e)?;
        ensure(r.ratio_sq.is_zero(), || format!("χ{i}: ratio² = {}", r.ratio_sq))?;
    }
    Ok("b(n) = a(n) for 1 ≤ n ≤ 40 and ratio 0".into())
}

fn s5_ratios() -> Outcome {
    let t = build_symmetric(5).map_err(e)?;
    let expect: HashMap<u64, i64> = [(6, 9), (4, 16), (5, 25)].into_iter().collect();
    let mut seen = 0;
    for i in 0..t.num_chars() {
        let Some(&den) = expect.get(&t.dim(i)) else { continue };
        let chi = RepCharacter::irreducible(&t, i).map_err(e)?;
        let r = spectral_report(&chi).map_err(e)?;
        let want = Cyclotomic::from_rational(BigRational::new(1.into(), den.into()));
        ensure(r.ratio_sq == want, || {
            format!("χ{i} (dim {}): ratio² = {}", t.dim(i), r.ratio_sq)
        })?;
        seen += 1;
    }
    ensure(seen == 5, || format!("checked {seen} characters, expected 5"))?;
    Ok("ratios 1/3, 1/4, 1/5 for dimensions 6, 4, 5".into())
}

/// `b(1), …, b(15)` for the 4-dimensional simple module of `SL(2,7)` in
/// characteristic 7.
pub const SL2_7_SERIES: [i64; 15] = [
    1, 4, 9, 35, 96, 442, 1286, 6502, 19309, 101178, 302544, 1604461, 4808389, 25598759, 76771067,
];
/// `b(15)/a(15)` reference value, to eight decimals.
pub const SL2_7_RATIO_15: f64 = 1.00098079;
pub const SL2_7_RATIO_TOL: f64 = 5e-9;

fn sl2_7_series() -> Outcome {
    let m = data::bundled_matrix("sl2_7_mod7_dim4").map_err(e)?;
    ensure(m.size() == 13, || format!("matrix is {}×{}", m.size(), m.size()))?;
    let b = matrix_growth(&m, 15).map_err(e)?.values;
    ensure(b[1..] == ints(&SL2_7_SERIES)[..], || {
        format!("b(1..15) = {:?}", &b[1..])
    })?;
    Ok("b(1..15) matches the 15 reference terms".into())
}

fn sl2_7_asymptotics() -> Outcome {
    let a = modular_asymptotic_sl2(7, 7, 1, 4).map_err(e)?;
    let c = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    ensure(
        a.coeff_rational(0) == c(1, 12) + c(1, 84) && a.coeff_rational(1) == c(1, 12) - c(1, 84),
        || format!("coefficients {} and {}", a.coeff_rational(0), a.coeff_rational(1)),
    )?;
    let m = data::bundled_matrix("sl2_7_mod7_dim4").map_err(e)?;
    let b = matrix_growth(&m, 15).map_err(e)?.values;
    let r = (BigRational::from_integer(b[15].clone()) / a.eval(15))
        .to_f64()
        .unwrap_or(f64::NAN);
    ensure((r - SL2_7_RATIO_15).abs() <= SL2_7_RATIO_TOL, || {
        format!("b(15)/a(15) = {r}")
    })?;
    Ok(format!("a(n) = (1/12 + (−1)^n/84)·4^n; b(15)/a(15) = {r:.8}"))
}

fn brauer_asymptotics() -> Outcome {
    let mut checked = 0;
    for bm in data::BUNDLED_MODULES {
        let t = data::bundled_table(bm.brauer_table).map_err(e)?;
        for i in 0..t.num_chars() {
            let chi = RepCharacter::irreducible(&t, i).map_err(e)?;
            if !chi.is_faithful() {
                continue;
            }
            let got = asymptotic_a(&chi).map_err(e)?;
            let want = modular_asymptotic_sl2(bm.q, bm.p, bm.r, chi.dim()).map_err(e)?;
            ensure(got.coeffs() == want.coeffs() && got.period() == want.period(), || {
                format!(
                    "{} row {i}: Brauer-table formula differs from the closed form",
                    bm.brauer_table
                )
            })?;
            checked += 1;
        }
        let m = data::bundled_matrix(bm.name).map_err(e)?;
        ensure(data::bundled_table(bm.brauer_table).is_ok() && m.dim() > 0, || {
            "missing data".into()
        })?;
    }
    ensure(checked > 0, || "no faithful Brauer characters".into())?;
    Ok(format!(
        "{checked} faithful Brauer characters agree with the closed form"
    ))
}

fn cyclic_golden() -> Outcome {
    for p in [5u32, 7, 11, 13] {
        for l in 2..=p - 2 {
            let spec = eigen_cyclic(IndecCyclic::new(p, l).map_err(e)?).map_err(e)?;
            let g = golden_number((p - 1) / 2, l.min(p - l)).map_err(e)?;
            let want = g.norm_sq();
            for x in second_eigenvalues(&spec) {
                ensure(x.norm_sq() == want, || format!("p={p} l={l}: second eigenvalue {x}"))?;
            }
        }
    }
    Ok("second-largest modulus is the golden number for p ∈ {5, 7, 11, 13}".into())
}

/// Reference ratios of convergence for `V_l` over `C_p`, rows `l = 2..5`.
pub const RATIO_TABLE: [[f64; 8]; 4] = [
    [0.8090, 0.9010, 0.9595, 0.9709, 0.9830, 0.9864, 0.9907, 0.9941],
    [0.5393, 0.7490, 0.8941, 0.9236, 0.9550, 0.9639, 0.9753, 0.9844],
    [0.25, 0.5617, 0.8072, 0.8597, 0.9166, 0.9329, 0.9539, 0.9709],
    [0.0, 0.3604, 0.7027, 0.7814, 0.8686, 0.8940, 0.9269, 0.9537],
];
pub const RATIO_PRIMES: [u32; 8] = [5, 7, 11, 13, 17, 19, 23, 29];
/// Four printed decimals; one entry is truncated rather than rounded.
pub const RATIO_TOL: f64 = 1e-4;

fn cyclic_ratio_table() -> Outcome {
    for (row, l) in RATIO_TABLE.iter().zip(2u32..) {
        for (&want, &p) in row.iter().zip(&RATIO_PRIMES) {
            let got = cyclic_ratio(p, l).map_err(e)?.modulus_f64();
            ensure((got - want).abs() <= RATIO_TOL, || {
                format!("p={p} l={l}: {got:.6} vs {want}")
            })?;
        }
    }
    Ok(format!("32 entries within {RATIO_TOL}"))
}

fn tensor_dimension() -> Outcome {
    for p in [3u32, 5, 7, 11, 13] {
        for a in 1..=p {
            for b in 1..=p {
                let parts =
                    tensor_cyclic(IndecCyclic::new(p, a).map_err(e)?, IndecCyclic::new(p, b).map_err(e)?).map_err(e)?;
                let dim: u32 = parts.iter().map(|v| v.l()).sum();
                ensure(dim == a * b, || format!("V_{a} ⊗ V_{b} over C_{p} has dimension {dim}"))?;
            }
        }
    }
    Ok("dim(V_a ⊗ V_b) = ab for odd p ≤ 13".into())
}

fn klein_grid() -> Vec<KleinIndec> {
    let mut out: Vec<KleinIndec> = (1..=3)
        .flat_map(|l| (1..=3).map(move |m| KleinIndec::E { l, m }))
        .filter(|k| k.validate().is_ok())
        .collect();
    for m in 2..=3 {
        out.push(KleinIndec::EZero { m });
        out.push(KleinIndec::EInf { m });
    }
    out
}

fn klein_closed() -> Outcome {
    let grid = klein_grid();
    for &k in &grid {
        let f = klein_closed_b(k).map_err(e)?.series(1, 12).map_err(e)?.values;
        let m = matrix_growth(&action_matrix_klein(k, None).map_err(e)?, 12)
            .map_err(e)?
            .values;
        ensure(f[..] == m[1..], || {
            format!("{}: closed form and matrix differ", k.label())
        })?;
    }
    Ok(format!("{} faithful modules agree for 1 ≤ n ≤ 12", grid.len()))
}

fn klein_regular() -> Outcome {
    let b = matrix_growth(&action_matrix_klein(KleinIndec::Regular, None).map_err(e)?, 12)
        .map_err(e)?
        .values;
    for n in 1..=12u32 {
        ensure(b[n as usize] == BigInt::from(4u64.pow(n - 1)), || {
            format!("b({n}) = {}", b[n as usize])
        })?;
    }
    Ok("b(n) = 4^(n−1) for 1 ≤ n ≤ 12".into())
}

fn klein_truncation() -> Outcome {
    for m in 1..=3 {
        for module in [KleinIndec::MOdd { m }, KleinIndec::MOddDual { m }] {
            for k in [4usize, 8, 12] {
                let small = action_matrix_klein(module, Some(k)).map_err(e)?;
                let large = action_matrix_klein(module, Some(k + 5)).map_err(e)?;
                let h = small.horizon().ok_or("truncated matrix without horizon")?;
                let a = matrix_growth(&small, h).map_err(e)?.values;
                let b = matrix_growth(&large, h).map_err(e)?.values;
                ensure(a == b, || {
                    format!("{} cutoff {k}: series differ within horizon {h}", module.label())
                })?;
                ensure(matrix_growth(&small, h + 1).is_err(), || "horizon not enforced".into())?;
            }
        }
    }
    Ok("cutoffs K and K+5 agree up to the horizon K−2".into())
}

fn dihedral_closed() -> Outcome {
    for m in 3..=16 {
        let closed = dihedral_b(m).map_err(e)?.series(0, 10).map_err(e)?.values;
        let t = build_dihedral(2 * m).map_err(e)?;
        for i in faithful_of_dim(&t, 2) {
            let chi = RepCharacter::irreducible(&t, i).map_err(e)?;
            let engine = exact_b(&chi).map_err(e)?.series(0, 10).map_err(e)?.values;
            ensure(engine == closed, || format!("D{} χ{i}", 2 * m))?;
        }
    }
    Ok("faithful 2-dim characters of D_2m, 3 ≤ m ≤ 16, n ≤ 10".into())
}

fn dihedral_second() -> Outcome {
    for m in 3..=16 {
        let ds = dihedral_chi_sec(m).map_err(e)?;
        let t = build_dihedral(2 * m).map_err(e)?;
        let chi = RepCharacter::irreducible(&t, faithful_of_dim(&t, 2)[0]).map_err(e)?;
        let r = spectral_report(&chi).map_err(e)?;
        ensure(&ds.ratio * &ds.ratio == r.ratio_sq, || {
            format!("m={m}: ratio {} vs ratio² {}", ds.ratio, r.ratio_sq)
        })?;
    }
    Ok("closed ratios match the spectral report for 3 ≤ m ≤ 16".into())
}

fn symmetric_closed() -> Outcome {
    let mut count = 0;
    for m in 3..=7 {
        let t = build_symmetric(m).map_err(e)?;
        for i in 0..t.num_chars() {
            let chi = RepCharacter::irreducible(&t, i).map_err(e)?;
            let closed = symmetric_b(m, &chi).map_err(e)?.series(0, 10).map_err(e)?.values;
            let engine = exact_b(&chi).map_err(e)?.series(0, 10).map_err(e)?.values;
            ensure(closed == engine, || format!("S{m} {:?}", partitions(m)[i]))?;
            count += 1;
        }
    }
    Ok(format!("{count} characters of S_3..S_7, n ≤ 10"))
}

fn semidirect_grid() -> Outcome {
    for (p, k, j) in SEMIDIRECT_GRID {
        let closed = semidirect_b(p, k, j).map_err(e)?.series(0, 10).map_err(e)?.values;
        let t = build_semidirect(p, k, j).map_err(e)?;
        let idx = faithful_of_dim(&t, u64::from(p).pow(j));
        ensure(!idx.is_empty(), || {
            format!("G({p},{k},{j}) has no faithful irreducible")
        })?;
        for i in idx {
            let engine = exact_b(&RepCharacter::irreducible(&t, i).map_err(e)?)
                .map_err(e)?
                .series(0, 10)
                .map_err(e)?;
            ensure(engine.values == closed, || format!("G({p},{k},{j}) χ{i}"))?;
        }
    }
    Ok("(2,4,2), (2,5,2), (3,3,1), (3,4,2), n ≤ 10".into())
}

fn sl2_closed() -> Outcome {
    let mut count = 0;
    for q in [4u32, 5, 7, 8] {
        let t = data::bundled_table(&format!("sl2_{q}")).map_err(e)?;
        for i in 0..t.num_chars() {
            let chi = RepCharacter::irreducible(&t, i).map_err(e)?;
            let closed = sl2q_char0_b(q, &chi).map_err(e)?.series(0, 10).map_err(e)?.values;
            let engine = exact_b(&chi).map_err(e)?.series(0, 10).map_err(e)?.values;
            ensure(closed == engine, || format!("SL(2,{q}) χ{i}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} characters of SL(2,q), q ∈ {{4, 5, 7, 8}}, n ≤ 10"))
}

/// Cycle lengths of a permutation, longest first.
fn cycle_type(p: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Heap's algorithm, calling `f` on every permutation of `0..m`.
fn for_each_perm(m: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..m).collect();
    let mut c = vec![0usize; m];
    f(&p);
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn r2_brute_force() -> Outcome {
    for m in 1..=7usize {
        let mut squares: HashMap<Vec<u32>, u64> = HashMap::new();
        let mut sizes: HashMap<Vec<u32>, u64> = HashMap::new();
        for_each_perm(m, |s| {
            let sq: Vec<usize> = (0..m).map(|i| s[s[i]]).collect();
            *squares.entry(cycle_type(&sq)).or_default() += 1;
            *sizes.entry(cycle_type(s)).or_default() += 1;
        });
        for parts in partitions(m as u32) {
            let a = CycleType::from_partition(&parts).map_err(e)?;
            let want = squares.get(&parts).copied().unwrap_or(0) / sizes[&parts];
            let got = r2(&a).map_err(e)?.r2;
            ensure(got == BigInt::from(want), || {
                format!("m={m} {}: r2 = {got}, brute force {want}", a.label())
            })?;
        }
    }
    Ok("square-root counts match enumeration of S_m for m ≤ 7".into())
}

fn ramanujan_brute_force() -> Outcome {
    let mut count = 0;
    for p in [2u32, 3, 5, 7] {
        let mut q = p;
        let mut s = 1;
        while q <= 81 {
            for x in -2 * i64::from(q)..=2 * i64::from(q) {
                let direct = Cyclotomic::sum(
                    &(1..=q)
                        .filter(|k| num_integer::gcd(*k, q) == 1)
                        .map(|k| Cyclotomic::root_of_unity(q, i64::from(k) * x))
                        .collect::<Vec<_>>(),
                );
                let r = ramanujan_pp(p, s, x).map_err(e)?;
                ensure(direct == Cyclotomic::from_integer(r.value), || {
                    format!("C_{q}({x}) = {}", r.value)
                })?;
                count += 1;
            }
            q *= p;
            s += 1;
        }
    }
    Ok(format!("{count} values of C_q(x), q = p^s ≤ 81"))
}
