//! The characteristic-zero growth engine and the asymptotic formula.
//!
//! For an ordinary character `χ`, `b(n) = (1/|G|) Σ_t |C_t| S_t χ(g_t)^n`
//! where `S_t` is the `t`-th column sum. The dominant part of that sum, over
//! classes acting by scalars, is `a(n)`. Brauer tables only support `a(n)`.

mod formula;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::chartab::{kernel_scaling_classes, CharacterTable, RepCharacter};
use crate::exact::{ComplexApprox, CycAccumulator, Cyclotomic, DEFAULT_PRECISION};
use crate::{Error, Result};

pub(crate) use formula::sort_by_modulus_desc;
pub use formula::{root_order, AsymptoticFormula, GrowthFormula, GrowthSeries, SeriesSource};

fn require_ordinary(table: &CharacterTable, what: &str) -> Result<()> {
    if table.is_ordinary() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{what} needs an ordinary character table")))
    }
}

fn rational(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Column sums `S_t = Σ_i χ_i(g_t)`; for ordinary tables each must be a
/// rational integer.
pub fn column_sums(table: &CharacterTable) -> Result<Vec<Cyclotomic>> {
    let sums = table.column_sums_unchecked();
    if table.is_ordinary() {
        for (t, s) in sums.iter().enumerate() {
            if s.to_integer().is_none() {
                return Err(Error::integrity(format!(
                    "column sum of class {} is {s}, not an integer",
                    table.classes()[t].name
                )));
            }
        }
    }
    Ok(sums)
}

/// `⟨φ, ψ⟩ = (1/|G|) Σ_t |C_t| φ(g_t)·conj(ψ(g_t))`.
pub fn inner_product(phi: &[Cyclotomic], psi: &[Cyclotomic], table: &CharacterTable) -> Cyclotomic {
    let mut acc = CycAccumulator::new();
    for (t, class) in table.classes().iter().enumerate() {
        acc.add_product_scaled(&phi[t], &psi[t].conj(), &rational(class.size));
    }
    acc.finish().div_rational(&rational(table.order()))
}

/// `|C_t|·conj(χ_j(g_t))` for every irreducible, the weights that turn inner
/// products into one accumulation per pair.
fn weighted_conjugates(table: &CharacterTable) -> Vec<Vec<(Cyclotomic, BigRational)>> {
    table
        .chars()
        .iter()
        .map(|row| {
            row.iter()
                .zip(table.classes())
                .map(|(v, c)| (v.conj(), rational(c.size)))
                .collect()
        })
        .collect()
}

fn nonnegative_integer(x: &Cyclotomic) -> Option<BigInt> {
    x.to_integer().filter(|v| !v.is_negative())
}

/// `b(n) = Σ_j ⟨χ^n, χ_j⟩` for `0 ≤ n ≤ n_max`, by powering `χ` pointwise.
///
/// Every inner product must be a nonnegative integer; anything else means
/// the table is wrong.
pub fn oracle_b(chi: &RepCharacter<'_>, n_max: u32) -> Result<GrowthSeries> {
    let table = chi.table();
    require_ordinary(table, "the inner-product oracle")?;
    let weights = weighted_conjugates(table);
    let order = rational(table.order());
    let mut power: Vec<Cyclotomic> = vec![Cyclotomic::one(); table.num_classes()];
    let mut values = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let mut total = BigInt::zero();
        for (j, w) in weights.iter().enumerate() {
            let mut acc = CycAccumulator::new();
            for (p, (c, size)) in power.iter().zip(w) {
                acc.add_product_scaled(p, c, size);
            }
            let m = acc.finish().div_rational(&order);
            total += nonnegative_integer(&m)
                .ok_or_else(|| Error::integrity(format!("⟨χ^{n}, χ_{j}⟩ = {m} is not a nonnegative integer")))?;
        }
        values.push(total);
        if n < n_max {
            for (p, v) in power.iter_mut().zip(chi.values()) {
                *p = &*p * v;
            }
        }
    }
    Ok(GrowthSeries {
        start: 0,
        values,
        source: SeriesSource::Oracle,
    })
}

/// The exact formula: terms `(|C_t| S_t/|G|, χ(g_t))`, merged over equal
/// bases. No faithfulness is needed.
pub fn exact_b(chi: &RepCharacter<'_>) -> Result<GrowthFormula> {
    let table = chi.table();
    require_ordinary(table, "the exact formula")?;
    let sums = column_sums(table)?;
    let order = rational(table.order());
    let terms = table.classes().iter().enumerate().map(|(t, c)| {
        let coeff = sums[t].scale(&(rational(c.size) / &order));
        (coeff, chi.value(t).clone())
    });
    Ok(GrowthFormula::new(terms, 0))
}

/// The asymptotic formula `a(n) = (1/|G|) Σ_{g_t ∈ Z_V} |C_t| S_t ω_V(g_t)^n (dim V)^n`.
///
/// For Brauer tables `S_t` is the column sum at `g_t^{-1}` and `χ` must be
/// faithful on the listed classes. For ordinary tables a non-faithful `χ`
/// is accepted with a note, and the result is always checked against the
/// maximal-modulus part of [`exact_b`].
pub fn asymptotic_a(chi: &RepCharacter<'_>) -> Result<AsymptoticFormula> {
    let table = chi.table();
    let faithful = chi.is_faithful();
    if !table.is_ordinary() && !faithful {
        return Err(Error::Unsupported(
            "asymptotic formula from a Brauer table needs a faithful module; pass to the acting quotient".into(),
        ));
    }
    let sums = column_sums(table)?;
    let order = rational(table.order());
    let mut roots = Vec::new();
    for (t, omega) in kernel_scaling_classes(chi) {
        let s = if table.is_ordinary() {
            &sums[t]
        } else {
            let inv = table.inverse_class(t).ok_or_else(|| {
                Error::invalid(format!(
                    "class {} has a non-real scalar but no power map to locate its inverse",
                    table.classes()[t].name
                ))
            })?;
            &sums[inv]
        };
        let coeff = s.scale(&(rational(table.classes()[t].size) / &order));
        roots.push((coeff, omega));
    }
    let mut a = AsymptoticFormula::from_roots(chi.dim(), roots)?;
    if !faithful {
        let kernel: Vec<String> = chi
            .kernel_classes()
            .iter()
            .map(|&t| table.classes()[t].name.clone())
            .collect();
        a.notes.push(format!(
            "character is not faithful (kernel classes: {}); scaling classes include the kernel",
            kernel.join(", ")
        ));
    }
    if table.is_ordinary() {
        let exact = exact_b(chi)?;
        let d2 = Cyclotomic::from_integer((chi.dim() * chi.dim()) as i64);
        let dominant: Vec<(Cyclotomic, Cyclotomic)> = exact
            .terms()
            .iter()
            .filter(|(_, b)| b.norm_sq() == d2)
            .cloned()
            .collect();
        let mut expected = a.as_terms().to_vec();
        expected.sort_by(|x, y| x.1.cmp(&y.1));
        let mut got = dominant;
        got.sort_by(|x, y| x.1.cmp(&y.1));
        if got != expected {
            return Err(Error::integrity(
                "asymptotic formula disagrees with the dominant exact terms",
            ));
        }
    }
    Ok(a)
}

/// `a(n) = (dim V)^n/|G|` for a faithful module of a `p`-group.
pub fn asymptotic_p_group(dim: u64, group_order: u64) -> Result<AsymptoticFormula> {
    if group_order == 0 {
        return Err(Error::invalid("group order must be positive"));
    }
    AsymptoticFormula::from_roots(
        dim,
        [(
            Cyclotomic::from_rational(BigRational::new(1.into(), group_order.into())),
            Cyclotomic::one(),
        )],
    )
}

/// Modulus data controlling how fast `b(n)/a(n) → 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    /// `dim V`, the largest modulus of a character value.
    pub max_modulus: BigRational,
    /// A value of largest modulus outside the scaling classes.
    pub chi_sec: Option<Cyclotomic>,
    /// Bases of largest modulus among the non-dominant exact terms (all of
    /// them, when tied). A zero base only affects `b(0)` and is skipped.
    pub subleading: Vec<Cyclotomic>,
    /// `|λ|²/dim²` for `λ` in `subleading`, exactly; zero if there is none.
    pub ratio_sq: Cyclotomic,
    /// `|λ|/dim` with a certified radius.
    pub ratio_of_convergence: ComplexApprox,
    /// `|λ|` as a float; zero when `b(n) = a(n)`.
    pub variance_base: f64,
}

impl SpectralReport {
    pub fn ratio(&self) -> f64 {
        self.ratio_of_convergence.re
    }
}

/// Second-largest character value and the ratio of convergence, which uses
/// only terms that survive merging.
pub fn spectral_report(chi: &RepCharacter<'_>) -> Result<SpectralReport> {
    let table = chi.table();
    require_ordinary(table, "the spectral report")?;
    let dim = chi.dim();
    let d2 = Cyclotomic::from_integer((dim * dim) as i64);
    let scaling: Vec<usize> = kernel_scaling_classes(chi).into_iter().map(|(t, _)| t).collect();
    let mut others: Vec<Cyclotomic> = (0..table.num_classes())
        .filter(|t| !scaling.contains(t))
        .map(|t| chi.value(t).clone())
        .collect();
    sort_by_modulus_desc(&mut others, |x| x);
    let chi_sec = others.first().cloned();

    let exact = exact_b(chi)?;
    let sub: Vec<&Cyclotomic> = exact
        .terms()
        .iter()
        .map(|(_, b)| b)
        .filter(|b| !b.is_zero() && b.norm_sq() != d2)
        .collect();
    let (subleading, ratio_sq) = match sub.first() {
        // Terms are sorted by decreasing modulus.
        Some(top) => {
            let top_norm = top.norm_sq();
            let tied: Vec<Cyclotomic> = sub
                .iter()
                .filter(|b| b.norm_sq() == top_norm)
                .map(|b| (*b).clone())
                .collect();
            (
                tied,
                top_norm.div_rational(&BigRational::from_integer(BigInt::from(dim * dim))),
            )
        }
        None => (Vec::new(), Cyclotomic::zero()),
    };
    let sq = ratio_sq.embed(DEFAULT_PRECISION);
    let ratio = libm::sqrt(sq.re.max(0.0));
    // d√x/dx = 1/(2√x); near zero use √radius.
    let radius = if ratio > 0.0 {
        sq.radius / (2.0 * ratio) * 2.0
    } else {
        libm::sqrt(sq.radius)
    } + ratio * f64::EPSILON;
    Ok(SpectralReport {
        max_modulus: rational(dim),
        chi_sec,
        subleading,
        ratio_sq,
        ratio_of_convergence: ComplexApprox {
            re: ratio,
            im: 0.0,
            radius,
        },
        variance_base: ratio * dim as f64,
    })
}

/// Integer action matrix `M_ij = ⟨χ·χ_j, χ_i⟩` on the irreducibles.
pub fn character_action_matrix(chi: &RepCharacter<'_>) -> Result<Vec<Vec<BigInt>>> {
    let table = chi.table();
    require_ordinary(table, "the character action matrix")?;
    let weights = weighted_conjugates(table);
    let order = rational(table.order());
    let n = table.num_chars();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for j in 0..n {
        let prod: Vec<Cyclotomic> = chi.values().iter().zip(&table.chars()[j]).map(|(a, b)| a * b).collect();
        for (i, w) in weights.iter().enumerate() {
            let mut acc = CycAccumulator::new();
            for (p, (c, size)) in prod.iter().zip(w) {
                acc.add_product_scaled(p, c, size);
            }
            let v = acc.finish().div_rational(&order);
            m[i][j] = nonnegative_integer(&v)
                .ok_or_else(|| Error::integrity(format!("M[{i}][{j}] = {v} is not a nonnegative integer")))?;
        }
    }
    Ok(m)
}

/// An eigenvalue of the character action matrix with its left and right
/// eigenvectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenPair {
    pub eigenvalue: Cyclotomic,
    /// `(χ_i(g_t))_i`.
    pub left: Vec<Cyclotomic>,
    /// `(conj χ_i(g_t))_i`.
    pub right: Vec<Cyclotomic>,
}

fn mat_vec(m: &[Vec<BigInt>], v: &[Cyclotomic], transpose: bool) -> Vec<Cyclotomic> {
    let n = v.len();
    (0..n)
        .map(|i| {
            let mut acc = CycAccumulator::new();
            for (j, vj) in v.iter().enumerate() {
                let e = if transpose { &m[j][i] } else { &m[i][j] };
                if !e.is_zero() {
                    acc.add_scaled(vj, &BigRational::from_integer(e.clone()));
                }
            }
            acc.finish()
        })
        .collect()
}

/// The eigenpair attached to class `t`, checked against the action matrix:
/// `M·right = λ·right`, `leftᵀ·M = λ·leftᵀ` and `leftᵀ·right = |G|/|C_t|`.
pub fn eigen_pair(chi: &RepCharacter<'_>, t: usize) -> Result<EigenPair> {
    let m = character_action_matrix(chi)?;
    eigen_pair_with(chi, &m, t)
}

/// [`eigen_pair`] with a precomputed action matrix.
pub fn eigen_pair_with(chi: &RepCharacter<'_>, m: &[Vec<BigInt>], t: usize) -> Result<EigenPair> {
    let table = chi.table();
    if t >= table.num_classes() {
        return Err(Error::invalid(format!("class index {t} out of range")));
    }
    let lambda = chi.value(t).clone();
    let left: Vec<Cyclotomic> = table.chars().iter().map(|row| row[t].clone()).collect();
    let right: Vec<Cyclotomic> = left.iter().map(Cyclotomic::conj).collect();
    let mr = mat_vec(m, &right, false);
    if mr.iter().zip(&right).any(|(a, b)| *a != &lambda * b) {
        return Err(Error::integrity(format!("right eigenvector check failed at class {t}")));
    }
    let lm = mat_vec(m, &left, true);
    if lm.iter().zip(&left).any(|(a, b)| *a != &lambda * b) {
        return Err(Error::integrity(format!("left eigenvector check failed at class {t}")));
    }
    let mut acc = CycAccumulator::new();
    for (a, b) in left.iter().zip(&right) {
        acc.add_product(a, b);
    }
    let norm = acc.finish();
    let expected = BigRational::new(table.order().into(), table.classes()[t].size.into());
    if norm != Cyclotomic::from_rational(expected) {
        return Err(Error::integrity(format!(
            "eigenvector normalisation failed at class {t}: {norm}"
        )));
    }
    Ok(EigenPair {
        eigenvalue: lambda,
        left,
        right,
    })
}

/// Outcome of comparing `b(n)` with `a(n)` over a window.
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceReport {
    /// `|b(n) − a(n)|` for `1 ≤ n ≤ n_max`.
    pub diffs: Vec<BigRational>,
    pub variance_base: f64,
    /// `sup_n |b(n) − a(n)| / max(base, ε)^n`.
    pub sup_normalized: f64,
    /// `b(n) = a(n)` throughout the window.
    pub exact_match: bool,
    /// Boundedness verdict; see [`variance_check`].
    pub bounded: bool,
}

const VARIANCE_EPS: f64 = 1e-12;

/// Checks `|b(n) − a(n)| ∈ O(|χ_sec|^n)` on `1 ≤ n ≤ n_max`.
///
/// With no subleading term this requires `b(n) = a(n)` exactly. Otherwise
/// the normalised differences over the last quarter of the window must not
/// exceed twice their maximum over the first quarter.
pub fn variance_check(chi: &RepCharacter<'_>, n_max: u32) -> Result<VarianceReport> {
    let exact = exact_b(chi)?;
    let asym = asymptotic_a(chi)?;
    let report = spectral_report(chi)?;
    let series = exact.series(1, n_max.max(1))?;
    let diffs: Vec<BigRational> = series
        .values
        .iter()
        .enumerate()
        .map(|(i, b)| (BigRational::from_integer(b.clone()) - asym.eval(i as u32 + 1)).abs())
        .collect();
    let exact_match = diffs.iter().all(Zero::is_zero);
    let base = report.variance_base.max(VARIANCE_EPS);
    let normalized: Vec<f64> = diffs
        .iter()
        .enumerate()
        .map(|(i, d)| d.to_f64().unwrap_or(f64::INFINITY) / libm::pow(base, f64::from(i as u32 + 1)))
        .collect();
    let sup = normalized.iter().copied().fold(0.0, f64::max);
    let bounded = if report.subleading.is_empty() {
        exact_match
    } else {
        let q = (normalized.len() / 4).max(1);
        let head = normalized[..q].iter().copied().fold(0.0, f64::max);
        let tail = normalized[normalized.len() - q..].iter().copied().fold(0.0, f64::max);
        tail <= 2.0 * head + VARIANCE_EPS
    };
    Ok(VarianceReport {
        diffs,
        variance_base: report.variance_base,
        sup_normalized: sup,
        exact_match,
        bounded,
    })
}
