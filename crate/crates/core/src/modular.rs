//! Nonsemisimple examples through their action matrices.
//!
//! `M[i][j]` is the multiplicity of `basis[i]` in `V ⊗ basis[j]`, so `b(n)`
//! is the sum of the trivial column of `M^n`. Matrices come from the
//! Renaud decomposition for cyclic `p`-groups, the Klein four family table
//! and two bundled `SL(2,q)` examples.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::arith::{gcd, is_prime, prime_power};
use crate::exact::{ratio, CycAccumulator, Cyclotomic};
use crate::growth::{sort_by_modulus_desc, AsymptoticFormula, GrowthFormula, GrowthSeries, SeriesSource};
use crate::{Error, Result};

/// An indecomposable module in the basis of an action matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisModule {
    pub label: String,
    pub dim: u64,
    pub projective: bool,
}

impl BasisModule {
    pub fn new(label: impl Into<String>, dim: u64, projective: bool) -> Self {
        BasisModule {
            label: label.into(),
            dim,
            projective,
        }
    }
}

/// Square nonnegative integer matrix with the trivial module at index 0.
///
/// A truncated matrix is the leading block of an infinite one; its last
/// columns may be missing entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionMatrix {
    basis: Vec<BasisModule>,
    entries: Vec<Vec<u64>>,
    truncated: bool,
    cutoff: Option<usize>,
    dim: u64,
}

impl ActionMatrix {
    /// Checks shape, a one-dimensional trivial module at index 0 and, unless
    /// truncated, `dim V·dim b_j = Σ_i M[i][j]·dim b_i` for every column.
    /// `dim V` is read off the trivial column.
    pub fn new(
        basis: Vec<BasisModule>,
        entries: Vec<Vec<u64>>,
        truncated: bool,
        cutoff: Option<usize>,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::invalid("action matrix needs a nonempty basis"));
        }
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::invalid(format!("action matrix must be {n}×{n}")));
        }
        if basis[0].dim != 1 {
            return Err(Error::invalid(format!(
                "basis[0] = {} must be the one-dimensional trivial module",
                basis[0].label
            )));
        }
        if basis.iter().any(|b| b.dim == 0) {
            return Err(Error::invalid("basis modules must have positive dimension"));
        }
        if truncated && cutoff.is_some_and(|k| k != n) {
            return Err(Error::invalid(format!(
                "cutoff {cutoff:?} disagrees with basis size {n}"
            )));
        }
        let col_dim = |j: usize| -> u64 { (0..n).map(|i| entries[i][j] * basis[i].dim).sum() };
        let dim = col_dim(0);
        if dim == 0 {
            return Err(Error::invalid("the trivial column is zero"));
        }
        if !truncated {
            for (j, b) in basis.iter().enumerate() {
                if col_dim(j) != dim * b.dim {
                    return Err(Error::integrity(format!(
                        "column {} has dimension {}, expected {dim}·{} = {}",
                        b.label,
                        col_dim(j),
                        b.dim,
                        dim * b.dim
                    )));
                }
            }
        }
        Ok(ActionMatrix {
            basis,
            entries,
            truncated,
            cutoff: if truncated { Some(n) } else { None },
            dim,
        })
    }

    pub fn basis(&self) -> &[BasisModule] {
        &self.basis
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn cutoff(&self) -> Option<usize> {
        self.cutoff
    }

    /// `dim V`, from the trivial column.
    pub fn dim(&self) -> u64 {
        self.dim
    }

    /// Largest `n` for which `matrix_growth` is exact: unbounded when not
    /// truncated, `K − 2` for a cutoff `K`.
    pub fn horizon(&self) -> Option<usize> {
        self.cutoff.map(|k| k.saturating_sub(2))
    }

    /// Index of the basis module with the given label.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(&m, x)| m != 0 && !x.is_zero())
                    .map(|(&m, x)| x * m)
                    .sum()
            })
            .collect()
    }
}

/// `b(n)` for `0 ≤ n ≤ n_max` as the trivial-column sums of `M^n`.
pub fn matrix_growth(m: &ActionMatrix, n_max: usize) -> Result<GrowthSeries> {
    if let (Some(horizon), Some(cutoff)) = (m.horizon(), m.cutoff()) {
        if n_max > horizon {
            return Err(Error::HorizonExceeded {
                requested: n_max,
                horizon,
                cutoff,
                required_cutoff: n_max + 2,
            });
        }
    }
    let mut v = vec![BigInt::zero(); m.size()];
    v[0] = BigInt::from(1);
    let mut values = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        values.push(v.iter().sum());
        if n < n_max {
            v = m.apply(&v);
        }
    }
    Ok(GrowthSeries {
        start: 0,
        values,
        source: SeriesSource::Matrix,
    })
}

/// The `l`-dimensional indecomposable module `V_l` of `C_p` in
/// characteristic `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndecCyclic {
    p: u32,
    l: u32,
}

impl IndecCyclic {
    pub fn new(p: u32, l: u32) -> Result<Self> {
        if p < 3 || !is_prime(u64::from(p)) {
            return Err(Error::invalid(format!("p = {p} must be an odd prime")));
        }
        if !(1..=p).contains(&l) {
            return Err(Error::invalid(format!("V_{l} does not exist over C_{p}")));
        }
        Ok(IndecCyclic { p, l })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The dimension `l`.
    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn is_projective(&self) -> bool {
        self.l == self.p
    }

    pub fn label(&self) -> String {
        format!("V_{}", self.l)
    }
}

/// `V_r ⊗ V_s = ⊕_{i=1}^{c} V_{s−r+2i−1} ⊕ V_p^{r−c}` for `r ≤ s`, with
/// `c = r` if `r + s ≤ p` and `c = p − s` otherwise. The result is sorted.
pub fn tensor_cyclic(a: IndecCyclic, b: IndecCyclic) -> Result<Vec<IndecCyclic>> {
    if a.p != b.p {
        return Err(Error::MismatchedPrime { left: a.p, right: b.p });
    }
    let p = a.p;
    let (r, s) = if a.l <= b.l { (a.l, b.l) } else { (b.l, a.l) };
    let c = if r + s <= p { r } else { p - s };
    let mut out: Vec<IndecCyclic> = (1..=c)
        .map(|i| IndecCyclic {
            p,
            l: s - r + 2 * i - 1,
        })
        .collect();
    out.extend(core::iter::repeat(IndecCyclic { p, l: p }).take((r - c) as usize));
    Ok(out)
}

/// Action matrix of `V_l` on the basis `V_1, …, V_p`.
pub fn action_matrix_cyclic(v: IndecCyclic) -> ActionMatrix {
    let p = v.p as usize;
    let mut entries = vec![vec![0u64; p]; p];
    for j in 0..p {
        let w = IndecCyclic {
            p: v.p,
            l: j as u32 + 1,
        };
        for summand in tensor_cyclic(v, w).expect("same prime") {
            entries[summand.l as usize - 1][j] += 1;
        }
    }
    let basis = (1..=v.p)
        .map(|l| BasisModule::new(format!("V_{l}"), u64::from(l), l == v.p))
        .collect();
    ActionMatrix::new(basis, entries, false, None).expect("Renaud matrices conserve dimension")
}

/// `φ_n(l) = Σ_{j=0}^{l−1} ζ_{2p}^{2j−(l−1)}` with `p = 2n + 1`: the modulus
/// of a sum of `l` consecutive `p`-th roots of unity, rotated onto the real
/// axis. Equals `sin(lπ/p)/sin(π/p)`.
pub fn golden_number(n: u32, l: u32) -> Result<Cyclotomic> {
    if n == 0 || l == 0 || l > 2 * n {
        return Err(Error::invalid(format!(
            "golden number φ_{n}({l}) needs n ≥ 1 and 1 ≤ l ≤ 2n"
        )));
    }
    let two_p = 2 * (2 * n + 1);
    let mut acc = CycAccumulator::new();
    for j in 0..l {
        acc.add(&Cyclotomic::root_of_unity(two_p, 2 * i64::from(j) - i64::from(l - 1)));
    }
    Ok(acc.finish())
}

/// `s_m(k) = Σ_{j=1}^{2k} ω^{m(p−2k+2j−1)/2}` with `ω = ζ_p`.
fn lemma_sum(p: u32, k: u32, m: u32) -> Cyclotomic {
    let mut acc = CycAccumulator::new();
    for j in 1..=2 * k {
        let e = i64::from(m) * i64::from(p - 2 * k + 2 * j - 1) / 2;
        acc.add(&Cyclotomic::root_of_unity(p, e));
    }
    acc.finish()
}

/// The left eigenvectors `x^m` (`series = 0`) or `y^m` (`series = 1`),
/// indexed by `dim − 1`.
fn lemma_vector(p: u32, m: u32, series: u8) -> Vec<Cyclotomic> {
    (1..=p)
        .map(|d| {
            if d % 2 == 0 {
                let s = lemma_sum(p, d / 2, m);
                if series == 0 {
                    s
                } else {
                    -s
                }
            } else {
                -lemma_sum(p, (p - d) / 2, m)
            }
        })
        .collect()
}

/// Exact spectrum of the action matrix of `V_l`, `2 ≤ l ≤ p − 1`, as
/// `(eigenvalue, multiplicity)`, dominant eigenvalue `l` first.
///
/// Each eigenvalue is checked against its left eigenvector `x^m` or `y^m`:
/// `vᵀ·M = λ·vᵀ` exactly.
pub fn eigen_cyclic(v: IndecCyclic) -> Result<Vec<(Cyclotomic, u32)>> {
    let (p, l) = (v.p, v.l);
    if !(2..p).contains(&l) {
        return Err(Error::invalid(format!("eigen_cyclic needs 2 ≤ l ≤ p − 1, got l = {l}")));
    }
    let m_l = action_matrix_cyclic(v);
    let mut out = vec![(Cyclotomic::from_integer(i64::from(l)), 1)];
    for m in 1..=(p - 1) / 2 {
        let mut found: Vec<Cyclotomic> = Vec::new();
        for series in [0u8, 1] {
            let x = lemma_vector(p, m, series);
            // The trivial column of M has its 1 in row l, so λ = x_l.
            let lambda = x[l as usize - 1].clone();
            check_left_eigenvector(&m_l, &x, &lambda)?;
            found.push(lambda);
        }
        if l % 2 == 0 {
            out.extend(found.into_iter().map(|e| (e, 1)));
        } else {
            if found[0] != found[1] {
                return Err(Error::integrity(format!(
                    "V_{l}: expected a double eigenvalue for m = {m}"
                )));
            }
            out.push((found.swap_remove(0), 2));
        }
    }
    Ok(out)
}

fn check_left_eigenvector(m: &ActionMatrix, x: &[Cyclotomic], lambda: &Cyclotomic) -> Result<()> {
    let n = m.size();
    for j in 0..n {
        let mut acc = CycAccumulator::new();
        for (i, xi) in x.iter().enumerate() {
            let e = m.entries[i][j];
            if e != 0 {
                acc.add_scaled(xi, &BigRational::from_integer(BigInt::from(e)));
            }
        }
        if acc.finish() != lambda * &x[j] {
            return Err(Error::integrity(format!(
                "left eigenvector check failed in column {j} for λ = {lambda}"
            )));
        }
    }
    Ok(())
}

/// Eigenvalues of largest modulus after the dominant one.
pub fn second_eigenvalues(spectrum: &[(Cyclotomic, u32)]) -> Vec<Cyclotomic> {
    let mut rest: Vec<Cyclotomic> = spectrum.iter().skip(1).map(|(e, _)| e.clone()).collect();
    sort_by_modulus_desc(&mut rest, |x| x);
    let Some(top) = rest.first().map(Cyclotomic::norm_sq) else {
        return Vec::new();
    };
    rest.into_iter().filter(|e| e.norm_sq() == top).collect()
}

/// Faithful indecomposable modules of the Klein four group in
/// characteristic 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KleinIndec {
    /// `M_{2m+1}`, dimension `2m + 1`.
    MOdd { m: u32 },
    /// The dual of `M_{2m+1}`.
    MOddDual { m: u32 },
    /// `E_{f,m}` for an irreducible `f` of degree `l`, dimension `2ml`.
    E { l: u32, m: u32 },
    /// `E_{0,m}`, dimension `2m`; behaves as `E` with `l = 1`.
    EZero { m: u32 },
    /// `E_{∞,m}`, dimension `2m`; behaves as `E` with `l = 1`.
    EInf { m: u32 },
    /// The regular module `kV_4`.
    Regular,
}

impl KleinIndec {
    pub fn dim(&self) -> u64 {
        match *self {
            KleinIndec::MOdd { m } | KleinIndec::MOddDual { m } => 2 * u64::from(m) + 1,
            KleinIndec::E { l, m } => 2 * u64::from(m) * u64::from(l),
            KleinIndec::EZero { m } | KleinIndec::EInf { m } => 2 * u64::from(m),
            KleinIndec::Regular => 4,
        }
    }

    /// `(l, m)` for the `E` families.
    fn e_params(&self) -> Option<(u32, u32)> {
        match *self {
            KleinIndec::E { l, m } => Some((l, m)),
            KleinIndec::EZero { m } | KleinIndec::EInf { m } => Some((1, m)),
            _ => None,
        }
    }

    /// Rejects zero parameters and the non-faithful members `E_{f,1}` with
    /// `l = 1`, `E_{0,1}` and `E_{∞,1}`.
    pub fn validate(&self) -> Result<()> {
        let bad = match *self {
            KleinIndec::MOdd { m } | KleinIndec::MOddDual { m } => m == 0,
            KleinIndec::E { l, m } => l == 0 || m == 0 || (l == 1 && m == 1),
            KleinIndec::EZero { m } | KleinIndec::EInf { m } => m <= 1,
            KleinIndec::Regular => false,
        };
        if bad {
            Err(Error::invalid(format!(
                "{} is not a faithful indecomposable kV_4-module",
                self.label()
            )))
        } else {
            Ok(())
        }
    }

    pub fn label(&self) -> String {
        match *self {
            KleinIndec::MOdd { m } => format!("M_{}", 2 * u64::from(m) + 1),
            KleinIndec::MOddDual { m } => format!("M_{}^*", 2 * u64::from(m) + 1),
            KleinIndec::E { l, m } => format!("E_{{f,{m}}} (deg f = {l})"),
            KleinIndec::EZero { m } => format!("E_{{0,{m}}}"),
            KleinIndec::EInf { m } => format!("E_{{inf,{m}}}"),
            KleinIndec::Regular => "kV_4".to_string(),
        }
    }
}

/// The family action matrix of a Klein four module. `cutoff` is the number
/// of basis modules kept for the infinite `M_{2m+1}` matrices (at least 3)
/// and is ignored for the finite ones.
///
/// The `M_{2m+1}` basis is `M_1, kV_4, M_{2m+1}, M_{4m+1}, …`.
pub fn action_matrix_klein(module: KleinIndec, cutoff: Option<usize>) -> Result<ActionMatrix> {
    module.validate()?;
    let b = |label: &str, dim: u64, projective: bool| BasisModule::new(label, dim, projective);
    match module {
        KleinIndec::MOdd { m } | KleinIndec::MOddDual { m } => {
            let k =
                cutoff.ok_or_else(|| Error::invalid("M_{2m+1} has an infinite action matrix; a cutoff is required"))?;
            if k < 3 {
                return Err(Error::invalid(format!("cutoff {k} is below the minimum of 3")));
            }
            let mu = u64::from(m);
            let star = if matches!(module, KleinIndec::MOddDual { .. }) {
                "^*"
            } else {
                ""
            };
            let mut basis = vec![b("M_1", 1, false), b("kV_4", 4, true)];
            for i in 2..k {
                let d = 2 * (i as u64 - 1) * mu + 1;
                basis.push(b(&format!("M_{d}{star}"), d, false));
            }
            let mut e = vec![vec![0u64; k]; k];
            e[2][0] = 1;
            e[1][1] = 2 * mu + 1;
            for i in 2..k {
                e[1][i] = (i as u64 - 1) * mu * mu;
                if i + 1 < k {
                    e[i + 1][i] = 1;
                }
            }
            ActionMatrix::new(basis, e, true, Some(k))
        }
        KleinIndec::Regular => ActionMatrix::new(
            vec![b("M_1", 1, false), b("kV_4", 4, true)],
            vec![vec![0, 0], vec![1, 4]],
            false,
            None,
        ),
        _ => {
            let (l, m) = module.e_params().expect("E family");
            let (l, m) = (u64::from(l), u64::from(m));
            let label = |mm: u64| match module {
                KleinIndec::EZero { .. } => format!("E_{{0,{mm}}}"),
                KleinIndec::EInf { .. } => format!("E_{{inf,{mm}}}"),
                _ => format!("E_{{f,{mm}}}"),
            };
            if m != 1 {
                let ml = m * l;
                ActionMatrix::new(
                    vec![b("M_1", 1, false), b(&label(m), 2 * ml, false), b("kV_4", 4, true)],
                    vec![vec![0, 0, 0], vec![1, 2, 0], vec![0, ml * (ml - 1), 2 * ml]],
                    false,
                    None,
                )
            } else {
                ActionMatrix::new(
                    vec![
                        b("M_1", 1, false),
                        b("kV_4", 4, true),
                        b(&label(1), 2 * l, false),
                        b(&label(2), 4 * l, false),
                    ],
                    vec![
                        vec![0, 0, 0, 0],
                        vec![0, 2 * l, l * (l - 1), l * (2 * l - 1)],
                        vec![1, 0, 0, 2],
                        vec![0, 0, 1, 0],
                    ],
                    false,
                    None,
                )
            }
        }
    }
}

/// Closed `b(n)` for the finite Klein four matrices, valid for `n ≥ 1`.
pub fn klein_closed_b(module: KleinIndec) -> Result<GrowthFormula> {
    module.validate()?;
    let c = |r: BigRational| Cyclotomic::from_rational(r);
    let int = |n: u64| Cyclotomic::from_integer(n as i64);
    let terms = match module {
        KleinIndec::MOdd { .. } | KleinIndec::MOddDual { .. } => {
            return Err(Error::Unsupported(format!(
                "{} has no closed form for b(n)",
                module.label()
            )))
        }
        KleinIndec::Regular => vec![(c(ratio(1, 4)), int(4))],
        _ => {
            let (l, m) = module.e_params().expect("E family");
            let (l, m) = (i64::from(l), i64::from(m));
            if m != 1 {
                vec![
                    (c(ratio(1, 4)), int((2 * m * l) as u64)),
                    (c(ratio(2 - m * l, 4)), int(2)),
                ]
            } else {
                let sqrt2 = Cyclotomic::root_of_unity(8, 1) + Cyclotomic::root_of_unity(8, 7);
                let li = Cyclotomic::from_integer(l);
                let two = Cyclotomic::from_integer(2);
                let eighth = ratio(1, 8);
                // (l(√2−2) − 2√2 + 2)/8 and (l(−2−√2) + 2 + 2√2)/8.
                let neg = (&li * &(&sqrt2 - &two) - &two * &sqrt2 + two.clone()).scale(&eighth);
                let pos = (&li * &(-&two - sqrt2.clone()) + two.clone() + &two * &sqrt2).scale(&eighth);
                vec![(c(ratio(1, 4)), int(2 * l as u64)), (neg, -sqrt2.clone()), (pos, sqrt2)]
            }
        }
    };
    Ok(GrowthFormula::new(terms, 1))
}

/// `a(n)` for a faithful irreducible module of `SL(2,q)` or `GL(2,q)` in
/// characteristic `p`, `q = p^r`: coefficient
/// `c = (p+1)^r/(2^r(q+1)(q−1))`, times `1 + (−1)^n/q` when `q` is odd.
pub fn modular_asymptotic_sl2(q: u64, p: u64, r: u32, dim: u64) -> Result<AsymptoticFormula> {
    if prime_power(q) != Some((p, r)) {
        return Err(Error::invalid(format!("{q} ≠ {p}^{r} or is not a prime power")));
    }
    let big = |n: u64| BigInt::from(n);
    let c = BigRational::new(big(p + 1).pow(r), big(2).pow(r) * big(q + 1) * big(q - 1));
    let mut roots = vec![(Cyclotomic::from_rational(c.clone()), Cyclotomic::one())];
    if q % 2 == 1 {
        roots.push((
            Cyclotomic::from_rational(c / BigRational::from_integer(big(q))),
            Cyclotomic::from_integer(-1),
        ));
    }
    AsymptoticFormula::from_roots(dim, roots)
}

const SL2_7_DIMS: [u64; 13] = [1, 4, 3, 5, 6, 2, 7, 14, 14, 14, 14, 7, 14];
const SL2_7_ROWS: [[u64; 13]; 13] = [
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 1, 0, 0, 2, 3, 0, 0, 0, 2],
    [0, 0, 0, 1, 0, 0, 1, 0, 0, 2, 2, 1, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0],
    [0, 0, 0, 0, 1, 0, 0, 2, 1, 0, 0, 0, 2],
    [0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0],
];

const SL2_8_DIMS: [u64; 15] = [1, 2, 4, 4, 8, 8, 16, 8, 16, 16, 32, 16, 32, 32, 56];
const SL2_8_ROWS: [[u64; 15]; 15] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 2, 0, 2, 0, 0, 1, 2],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 0, 2],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
];

/// Names accepted by [`bundled_matrix`].
pub const BUNDLED_MATRICES: [&str; 2] = ["sl2_7_mod7_dim4", "sl2_8_mod2_dim2"];

/// The two `SL(2,q)` action matrices shipped with the crate, in the basis
/// order used by the data files. Dimensions are the Perron left
/// eigenvector; projective flags mark the absorbing strongly connected
/// component.
pub fn bundled_matrix(name: &str) -> Result<ActionMatrix> {
    let (dims, rows): (&[u64], Vec<Vec<u64>>) = match name {
        "sl2_7_mod7_dim4" => (&SL2_7_DIMS, SL2_7_ROWS.iter().map(|r| r.to_vec()).collect()),
        "sl2_8_mod2_dim2" => (&SL2_8_DIMS, SL2_8_ROWS.iter().map(|r| r.to_vec()).collect()),
        _ => {
            return Err(Error::invalid(format!(
                "unknown bundled matrix {name}; known: {}",
                BUNDLED_MATRICES.join(", ")
            )))
        }
    };
    let basis: Vec<BasisModule> = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| BasisModule::new(format!("X{i}"), d, false))
        .collect();
    let m = ActionMatrix::new(basis, rows, false, None)?;
    let cell: BTreeSet<usize> = fusion_graph(&m)?.projective_cell.into_iter().collect();
    let basis = m
        .basis
        .iter()
        .enumerate()
        .map(|(i, b)| BasisModule::new(b.label.clone(), b.dim, cell.contains(&i)))
        .collect();
    ActionMatrix::new(basis, m.entries, false, None)
}

/// Weighted directed graph of an action matrix: an edge `j → i` of weight
/// `M[i][j]` for every summand `basis[i]` of `V ⊗ basis[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionGraph {
    pub vertices: Vec<BasisModule>,
    /// `(from, to, weight)`, weights positive.
    pub edges: Vec<(usize, usize, u64)>,
    /// The absorbing strongly connected component, sorted.
    pub projective_cell: Vec<usize>,
    pub trivial_vertex: usize,
    /// Set for truncated matrices, whose absorption check is skipped.
    pub provisional: bool,
    /// Period `h` of the projective cell.
    pub period: u32,
}

/// Strongly connected components in reverse topological order (Tarjan).
fn tarjan(n: usize, succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        succ: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    fn visit(s: &mut State<'_>, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for &w in s.succ[v].iter() {
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                _ => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = s.stack.pop().expect("nonempty stack");
                s.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            s.out.push(comp);
        }
    }
    let mut s = State {
        succ,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.out
}

/// `gcd` of cycle lengths inside `cell`, from BFS levels.
fn period_of(cell: &[usize], succ: &[Vec<usize>]) -> u32 {
    let inside: BTreeSet<usize> = cell.iter().copied().collect();
    let mut level = vec![usize::MAX; succ.len()];
    let mut queue = alloc::collections::VecDeque::new();
    level[cell[0]] = 0;
    queue.push_back(cell[0]);
    let mut h = 0u64;
    while let Some(v) = queue.pop_front() {
        for &w in &succ[v] {
            if !inside.contains(&w) {
                continue;
            }
            if level[w] == usize::MAX {
                level[w] = level[v] + 1;
                queue.push_back(w);
            } else {
                h = gcd(h, (level[v] + 1).abs_diff(level[w]) as u64);
            }
        }
    }
    h as u32
}

/// Builds the fusion graph and locates the projective cell, the unique
/// strongly connected component with a cycle and no outgoing edge.
pub fn fusion_graph(m: &ActionMatrix) -> Result<FusionGraph> {
    let n = m.size();
    let mut edges = Vec::new();
    let mut succ = vec![Vec::new(); n];
    for j in 0..n {
        for i in 0..n {
            let w = m.entries[i][j];
            if w > 0 {
                edges.push((j, i, w));
                succ[j].push(i);
            }
        }
    }
    let comps = tarjan(n, &succ);
    let mut comp_of = vec![0usize; n];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let cyclic = |comp: &Vec<usize>| comp.len() > 1 || succ[comp[0]].contains(&comp[0]);
    let absorbing: Vec<&Vec<usize>> = comps
        .iter()
        .enumerate()
        .filter(|(c, comp)| cyclic(comp) && comp.iter().all(|&v| succ[v].iter().all(|&w| comp_of[w] == *c)))
        .map(|(_, comp)| comp)
        .collect();
    let (projective_cell, provisional) = if m.truncated() {
        // Missing entries in the last columns can fake or hide absorption, so
        // prefer the flagged projectives.
        let flagged: Vec<usize> = (0..n).filter(|&i| m.basis[i].projective).collect();
        if !flagged.is_empty() {
            (flagged, true)
        } else if let Some(c) = absorbing.first() {
            ((*c).clone(), true)
        } else {
            return Err(Error::integrity("truncated matrix has no candidate projective cell"));
        }
    } else {
        match absorbing.as_slice() {
            [c] => ((*c).clone(), false),
            _ => {
                return Err(Error::integrity(format!(
                    "expected one absorbing strongly connected component, found {}",
                    absorbing.len()
                )))
            }
        }
    };
    let period = period_of(&projective_cell, &succ).max(1);
    Ok(FusionGraph {
        vertices: m.basis.clone(),
        edges,
        projective_cell,
        trivial_vertex: 0,
        provisional,
        period,
    })
}

/// Basis indices reachable from the trivial module.
pub fn reachable_from_trivial(m: &ActionMatrix) -> Vec<usize> {
    let n = m.size();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(j) = stack.pop() {
        for i in 0..n {
            if m.entries[i][j] > 0 && !seen[i] {
                seen[i] = true;
                stack.push(i);
            }
        }
    }
    (0..n).filter(|&i| seen[i]).collect()
}
