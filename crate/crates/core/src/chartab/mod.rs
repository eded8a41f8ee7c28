//! Character tables and characters of representations.
//!
//! Built-in constructors cover cyclic, dihedral, symmetric and the metacyclic
//! groups `C_{p^k} ⋊ C_{p^j}`. Other tables (including Brauer tables) enter
//! through [`CharacterTable::new`] followed by [`CharacterTable::validate`].

mod builders;
mod symmetric;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::exact::{CycAccumulator, Cyclotomic};
use crate::{Error, Result};

pub use builders::{build_cyclic, build_dihedral, build_semidirect};
pub use symmetric::{build_symmetric, murnaghan_nakayama, partitions, CycleType, MAX_SYMMETRIC_DEGREE};

/// A conjugacy class `C_t` with representative `g_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub name: String,
    pub size: u64,
    pub rep_order: u32,
    pub central: bool,
    /// `l ↦` index of the class of `g_t^l`, for `l` coprime to the exponent.
    pub power_map: Option<BTreeMap<u32, usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableKind {
    Ordinary,
    /// Brauer characters in characteristic `p`, on `p`-regular classes.
    Brauer(u32),
}

/// Irreducible (ordinary or Brauer) characters of a finite group.
///
/// Rows are characters, columns follow `classes`, and column 0 is the
/// identity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    group_name: String,
    order: u64,
    exponent: u32,
    classes: Vec<ConjClass>,
    chars: Vec<Vec<Cyclotomic>>,
    kind: TableKind,
    metadata: BTreeMap<String, String>,
}

impl CharacterTable {
    /// Assembles a table and checks its shape; see [`Self::validate`] for the
    /// arithmetic checks.
    pub fn new(
        group_name: impl Into<String>,
        order: u64,
        exponent: u32,
        classes: Vec<ConjClass>,
        chars: Vec<Vec<Cyclotomic>>,
        kind: TableKind,
    ) -> Result<Self> {
        let table = CharacterTable {
            group_name: group_name.into(),
            order,
            exponent,
            classes,
            chars,
            kind,
            metadata: BTreeMap::new(),
        };
        table.check_structure()?;
        Ok(table)
    }

    /// Sorts classes into the canonical order (identity, then by
    /// representative order, size and name), permuting columns and power
    /// maps to match.
    pub(crate) fn assemble(
        group_name: String,
        order: u64,
        exponent: u32,
        classes: Vec<ConjClass>,
        chars: Vec<Vec<Cyclotomic>>,
    ) -> Self {
        let mut idx: Vec<usize> = (0..classes.len()).collect();
        idx.sort_by(|&a, &b| class_key(&classes[a]).cmp(&class_key(&classes[b])));
        let mut new_index = alloc::vec![0usize; idx.len()];
        for (new, &old) in idx.iter().enumerate() {
            new_index[old] = new;
        }
        let classes = idx
            .iter()
            .map(|&old| {
                let mut c = classes[old].clone();
                if let Some(pm) = c.power_map.as_mut() {
                    for v in pm.values_mut() {
                        *v = new_index[*v];
                    }
                }
                c
            })
            .collect();
        let chars = chars
            .into_iter()
            .map(|row| idx.iter().map(|&old| row[old].clone()).collect())
            .collect();
        CharacterTable {
            group_name,
            order,
            exponent,
            classes,
            chars,
            kind: TableKind::Ordinary,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, metadata: BTreeMap<String, String>) -> Self {
        self.metadata = metadata;
        self
    }

    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    /// Character values, one row per irreducible.
    pub fn chars(&self) -> &[Vec<Cyclotomic>] {
        &self.chars
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_chars(&self) -> usize {
        self.chars.len()
    }

    pub fn is_ordinary(&self) -> bool {
        self.kind == TableKind::Ordinary
    }

    /// Dimension `χ_i(1)`.
    pub fn dim(&self, i: usize) -> u64 {
        self.chars[i][0]
            .to_integer()
            .and_then(|d| d.to_u64())
            .expect("validated dimension")
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// Index of the class of `g_t^{-1}`: column `t` itself when it is real,
    /// otherwise looked up through the power map.
    pub fn inverse_class(&self, t: usize) -> Option<usize> {
        if self.chars.iter().all(|row| row[t].is_real()) {
            return Some(t);
        }
        let l = self.exponent.checked_sub(1).filter(|&l| l > 0)?;
        self.classes[t].power_map.as_ref()?.get(&l).copied()
    }

    fn check_structure(&self) -> Result<()> {
        let n = self.classes.len();
        if n == 0 {
            return Err(Error::invalid("table has no classes"));
        }
        if self.order == 0 || self.exponent == 0 {
            return Err(Error::invalid("group order and exponent must be positive"));
        }
        if self.kind == TableKind::Ordinary && self.chars.len() != n {
            return Err(Error::invalid(format!(
                "{} characters for {} classes",
                self.chars.len(),
                n
            )));
        }
        if self.chars.is_empty() {
            return Err(Error::invalid("table has no characters"));
        }
        for (i, row) in self.chars.iter().enumerate() {
            if row.len() != n {
                return Err(Error::invalid(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            match row[0].to_integer() {
                Some(d) if d.is_positive() && d.to_u64().is_some() => {}
                _ => {
                    return Err(Error::invalid(format!(
                        "dimension of character {i} is {} (not a positive integer)",
                        row[0]
                    )))
                }
            }
        }
        let id = &self.classes[0];
        if id.size != 1 || id.rep_order != 1 {
            return Err(Error::invalid("class 0 must be the identity class"));
        }
        let mut total: u64 = 0;
        for (t, c) in self.classes.iter().enumerate() {
            if c.size == 0 || c.rep_order == 0 {
                return Err(Error::invalid(format!("class {} has zero size or order", c.name)));
            }
            if c.central && c.size != 1 {
                return Err(Error::invalid(format!("central class {} has size {}", c.name, c.size)));
            }
            if self.order % c.size != 0 || u64::from(self.exponent) % u64::from(c.rep_order) != 0 {
                return Err(Error::invalid(format!(
                    "class {} is inconsistent with the group order or exponent",
                    c.name
                )));
            }
            if let TableKind::Brauer(p) = self.kind {
                if c.rep_order % p == 0 {
                    return Err(Error::invalid(format!(
                        "class {} of a Brauer table is {p}-singular",
                        c.name
                    )));
                }
            }
            if let Some(pm) = &c.power_map {
                for (&l, &target) in pm {
                    if target >= n {
                        return Err(Error::invalid(format!(
                            "power map of class {t} points outside the table"
                        )));
                    }
                    if crate::exact::arith::gcd(u64::from(l), u64::from(self.exponent)) != 1 {
                        return Err(Error::invalid(format!(
                            "power map exponent {l} is not coprime to the exponent"
                        )));
                    }
                }
            }
            total = total.saturating_add(c.size);
        }
        match self.kind {
            TableKind::Ordinary if total != self.order => Err(Error::invalid(format!(
                "class sizes sum to {total}, group order is {}",
                self.order
            ))),
            TableKind::Brauer(_) if total > self.order => Err(Error::invalid("class sizes exceed the group order")),
            _ => Ok(()),
        }
    }

    /// Arithmetic checks of an ordinary table: row orthogonality,
    /// `Σ dim² = |G|`, and integral column sums. Brauer tables pass after the
    /// structural checks done at construction.
    pub fn validate(&self) -> Result<()> {
        self.check_structure()?;
        if !self.is_ordinary() {
            return Ok(());
        }
        let dim_sq: u128 = (0..self.num_chars()).map(|i| u128::from(self.dim(i)).pow(2)).sum();
        if dim_sq != u128::from(self.order) {
            return Err(Error::integrity(format!(
                "squared dimensions sum to {dim_sq}, group order is {}",
                self.order
            )));
        }
        let conj: Vec<Vec<Cyclotomic>> = self
            .chars
            .iter()
            .map(|r| r.iter().map(Cyclotomic::conj).collect())
            .collect();
        let order = Cyclotomic::from_integer(self.order as i64);
        for i in 0..self.num_chars() {
            for j in i..self.num_chars() {
                let mut acc = CycAccumulator::new();
                for (t, c) in self.classes.iter().enumerate() {
                    acc.add_product_scaled(
                        &self.chars[i][t],
                        &conj[j][t],
                        &BigRational::from_integer(c.size.into()),
                    );
                }
                let got = acc.finish();
                let ok = if i == j { got == order } else { got.is_zero() };
                if !ok {
                    return Err(Error::integrity(format!(
                        "rows {i} and {j} are not orthogonal: Σ|C|χψ̄ = {got}"
                    )));
                }
            }
        }
        for (t, s) in self.column_sums_unchecked().iter().enumerate() {
            if s.to_integer().is_none() {
                return Err(Error::integrity(format!(
                    "column sum of class {} is {s}, not an integer",
                    self.classes[t].name
                )));
            }
        }
        Ok(())
    }

    /// `S_t = Σ_i χ_i(g_t)` for every class, without integrality checks.
    pub fn column_sums_unchecked(&self) -> Vec<Cyclotomic> {
        (0..self.num_classes())
            .map(|t| Cyclotomic::sum(self.chars.iter().map(|row| &row[t])))
            .collect()
    }

    /// Power maps recovered from the Galois action on columns: the column of
    /// `g^l` is `σ_l` applied to the column of `g`. Returns `None` if some
    /// image column is missing, which cannot happen for a genuine table.
    pub fn galois_power_map(&self, l: u32) -> Option<Vec<usize>> {
        let index: BTreeMap<Vec<Cyclotomic>, usize> = (0..self.num_classes()).map(|t| (self.column(t), t)).collect();
        (0..self.num_classes())
            .map(|t| {
                let image: Option<Vec<Cyclotomic>> =
                    self.column(t).iter().map(|x| x.galois(i64::from(l)).ok()).collect();
                index.get(&image?).copied()
            })
            .collect()
    }

    pub fn column(&self, t: usize) -> Vec<Cyclotomic> {
        self.chars.iter().map(|row| row[t].clone()).collect()
    }
}

fn class_key(c: &ConjClass) -> (bool, u32, u64, &str) {
    (c.rep_order != 1, c.rep_order, c.size, c.name.as_str())
}

/// The character `χ_V` of a representation, as values on the classes of a
/// table.
#[derive(Debug, Clone)]
pub struct RepCharacter<'a> {
    table: &'a CharacterTable,
    values: Vec<Cyclotomic>,
    dim: u64,
}

impl<'a> RepCharacter<'a> {
    pub fn irreducible(table: &'a CharacterTable, i: usize) -> Result<Self> {
        let row = table
            .chars
            .get(i)
            .ok_or_else(|| Error::invalid(format!("character index {i} out of range ({})", table.num_chars())))?;
        Self::from_values(table, row.clone())
    }

    pub fn from_values(table: &'a CharacterTable, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != table.num_classes() {
            return Err(Error::invalid(format!(
                "{} values for {} classes",
                values.len(),
                table.num_classes()
            )));
        }
        let dim = values[0]
            .to_integer()
            .filter(|d| d.is_positive())
            .and_then(|d| d.to_u64())
            .ok_or_else(|| Error::invalid(format!("χ(1) = {} is not a positive integer", values[0])))?;
        Ok(RepCharacter { table, values, dim })
    }

    /// `Σ_i m_i χ_i`.
    pub fn from_multiplicities(table: &'a CharacterTable, mult: &[u64]) -> Result<Self> {
        if mult.len() != table.num_chars() {
            return Err(Error::invalid("one multiplicity per irreducible is required"));
        }
        let values = (0..table.num_classes())
            .map(|t| {
                let mut acc = CycAccumulator::new();
                for (row, &m) in table.chars.iter().zip(mult) {
                    if m > 0 {
                        acc.add_scaled(&row[t], &BigRational::from_integer(m.into()));
                    }
                }
                acc.finish()
            })
            .collect();
        Self::from_values(table, values)
    }

    pub fn table(&self) -> &'a CharacterTable {
        self.table
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, t: usize) -> &Cyclotomic {
        &self.values[t]
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    /// Classes on which `χ(g) = dim`, i.e. the kernel of the representation
    /// (restricted to the listed classes for Brauer tables).
    pub fn kernel_classes(&self) -> Vec<usize> {
        let d = Cyclotomic::from_integer(self.dim as i64);
        (0..self.values.len()).filter(|&t| self.values[t] == d).collect()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel_classes() == [0]
    }

    /// Multiplicities of the irreducibles in `χ` (ordinary tables).
    pub fn constituents(&self) -> Result<Vec<BigInt>> {
        if !self.table.is_ordinary() {
            return Err(Error::Unsupported("constituents need an ordinary table".into()));
        }
        (0..self.table.num_chars())
            .map(|j| {
                let ip = crate::growth::inner_product(&self.values, &self.table.chars[j], self.table);
                ip.to_integer()
                    .filter(|m| !m.is_negative())
                    .ok_or_else(|| Error::integrity(format!("⟨χ, χ_{j}⟩ = {ip} is not a nonnegative integer")))
            })
            .collect()
    }
}

/// Classes of `Z_V(G)`, where `g` acts on `V` as the scalar `ω_V(g)`, with
/// that scalar. A class qualifies exactly when `χ(g)·conj(χ(g)) = dim²`.
pub fn kernel_scaling_classes(chi: &RepCharacter<'_>) -> Vec<(usize, Cyclotomic)> {
    let d = BigRational::from_integer(chi.dim.into());
    let d2 = Cyclotomic::from_rational(&d * &d);
    chi.values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm_sq() == d2)
        .map(|(t, v)| (t, v.div_rational(&d)))
        .collect()
}
