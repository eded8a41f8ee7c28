//! JSON forms of cyclotomics, character tables, growth formulas and action
//! matrices.
//!
//! A cyclotomic is `{"m": conductor, "c": {"exponent": "num/den", ...}}` in
//! the canonical basis of its conductor; readers reject anything that is
//! not already canonical, so equal numbers always have equal files.

use std::collections::BTreeMap;
use std::path::Path;

use growthrate_core::chartab::{CharacterTable, ConjClass, TableKind};
use growthrate_core::exact::{BigInt, BigRational, Cyclotomic};
use growthrate_core::growth::{AsymptoticFormula, GrowthFormula};
use growthrate_core::modular::{ActionMatrix, BasisModule};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// `"num/den"` with `den > 0`, always written with the denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` (reduced, positive denominator) or a bare integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::schema(format!("{s:?} is not a rational of the form \"num/den\""));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(bad());
    }
    let r = BigRational::new(num.clone(), den.clone());
    if *r.numer() != num || *r.denom() != den {
        return Err(Error::schema(format!("{s:?} is not in lowest terms")));
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclotomicJson {
    pub m: u32,
    pub c: BTreeMap<u32, String>,
}

impl From<&Cyclotomic> for CyclotomicJson {
    fn from(x: &Cyclotomic) -> Self {
        CyclotomicJson {
            m: x.conductor(),
            c: x.terms().iter().map(|(e, r)| (*e, format_rational(r))).collect(),
        }
    }
}

impl CyclotomicJson {
    pub fn decode(&self) -> Result<Cyclotomic> {
        let terms = self
            .c
            .iter()
            .map(|(e, r)| Ok((*e, parse_rational(r)?)))
            .collect::<Result<Vec<_>>>()?;
        Cyclotomic::from_canonical_terms(self.m, terms).map_err(|e| Error::schema(e.to_string()))
    }
}

pub fn cyclotomic_to_json(x: &Cyclotomic) -> String {
    serde_json::to_string(&CyclotomicJson::from(x)).expect("serializable")
}

pub fn cyclotomic_from_json(s: &str) -> Result<Cyclotomic> {
    serde_json::from_str::<CyclotomicJson>(s)?.decode()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum KindJson {
    Named(String),
    Brauer { brauer: u32 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassJson {
    name: String,
    size: u64,
    rep_order: u32,
    central: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    power_map: Option<BTreeMap<u32, usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    group: String,
    order: u64,
    exponent: u32,
    kind: KindJson,
    classes: Vec<ClassJson>,
    chars: Vec<Vec<CyclotomicJson>>,
    /// Free-form notes, e.g. how class names map to a standard labelling.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    metadata: BTreeMap<String, String>,
}

pub fn table_to_json(t: &CharacterTable) -> String {
    let doc = TableJson {
        group: t.group_name().to_string(),
        order: t.order(),
        exponent: t.exponent(),
        kind: match t.kind() {
            TableKind::Ordinary => KindJson::Named("ordinary".into()),
            TableKind::Brauer(p) => KindJson::Brauer { brauer: p },
        },
        classes: t
            .classes()
            .iter()
            .map(|c| ClassJson {
                name: c.name.clone(),
                size: c.size,
                rep_order: c.rep_order,
                central: c.central,
                power_map: c.power_map.clone(),
            })
            .collect(),
        chars: t
            .chars()
            .iter()
            .map(|row| row.iter().map(CyclotomicJson::from).collect())
            .collect(),
        metadata: t.metadata().clone(),
    };
    // One class and one character per line.
    let mut out = format!(
        "{{\n  \"group\": {},\n  \"order\": {},\n  \"exponent\": {},\n  \"kind\": {},\n  \"classes\": [\n",
        compact(&doc.group),
        doc.order,
        doc.exponent,
        compact(&doc.kind)
    );
    let classes: Vec<String> = doc.classes.iter().map(|c| format!("    {}", compact(c))).collect();
    out.push_str(&classes.join(",\n"));
    out.push_str("\n  ],\n  \"chars\": [\n");
    let rows: Vec<String> = doc.chars.iter().map(|r| format!("    {}", compact(r))).collect();
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  ]");
    if !doc.metadata.is_empty() {
        let meta = serde_json::to_string_pretty(&doc.metadata)
            .expect("serializable")
            .replace('\n', "\n  ");
        out.push_str(&format!(",\n  \"metadata\": {meta}"));
    }
    out.push_str("\n}\n");
    out
}

/// Parses and validates a table: structure always, and for ordinary tables
/// orthogonality, `Σ dim² = |G|` and integral column sums.
pub fn table_from_json(s: &str) -> Result<CharacterTable> {
    let doc: TableJson = serde_json::from_str(s)?;
    let kind = match doc.kind {
        KindJson::Named(ref k) if k == "ordinary" => TableKind::Ordinary,
        KindJson::Named(k) => return Err(Error::schema(format!("unknown table kind {k:?}"))),
        KindJson::Brauer { brauer } => TableKind::Brauer(brauer),
    };
    let classes = doc
        .classes
        .into_iter()
        .map(|c| ConjClass {
            name: c.name,
            size: c.size,
            rep_order: c.rep_order,
            central: c.central,
            power_map: c.power_map,
        })
        .collect();
    let chars = doc
        .chars
        .iter()
        .map(|row| row.iter().map(CyclotomicJson::decode).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let table = CharacterTable::new(doc.group, doc.order, doc.exponent, classes, chars, kind)
        .map_err(|e| Error::schema(e.to_string()))?
        .with_metadata(doc.metadata);
    table.validate().map_err(|e| match e {
        growthrate_core::Error::InvalidParameter(m) => Error::Schema(m),
        other => Error::Core(other),
    })?;
    Ok(table)
}

pub fn load_table(path: &Path) -> Result<CharacterTable> {
    table_from_json(&read(path)?)
}

pub(crate) fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: CyclotomicJson,
    pub base: CyclotomicJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthFormulaJson {
    pub terms: Vec<TermJson>,
    pub valid_from: u32,
}

impl From<&GrowthFormula> for GrowthFormulaJson {
    fn from(f: &GrowthFormula) -> Self {
        GrowthFormulaJson {
            terms: f
                .terms()
                .iter()
                .map(|(c, b)| TermJson {
                    coeff: c.into(),
                    base: b.into(),
                })
                .collect(),
            valid_from: f.valid_from(),
        }
    }
}

impl GrowthFormulaJson {
    /// Rejects repeated bases and zero coefficients.
    pub fn decode(&self) -> Result<GrowthFormula> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.coeff.decode()?, t.base.decode()?)))
            .collect::<Result<Vec<_>>>()?;
        if terms.iter().any(|(c, _)| c.is_zero()) {
            return Err(Error::schema("growth formula has a zero coefficient"));
        }
        let n = terms.len();
        let f = GrowthFormula::new(terms, self.valid_from);
        if f.terms().len() != n {
            return Err(Error::schema("growth formula repeats a base"));
        }
        Ok(f)
    }
}

pub fn growth_formula_to_json(f: &GrowthFormula) -> String {
    pretty(&GrowthFormulaJson::from(f))
}

pub fn growth_formula_from_json(s: &str) -> Result<GrowthFormula> {
    serde_json::from_str::<GrowthFormulaJson>(s)?.decode()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsymptoticJson {
    pub dim: u64,
    pub period: u32,
    pub coeffs: Vec<CyclotomicJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl From<&AsymptoticFormula> for AsymptoticJson {
    fn from(a: &AsymptoticFormula) -> Self {
        AsymptoticJson {
            dim: a.dim(),
            period: a.period(),
            coeffs: a.coeffs().iter().map(CyclotomicJson::from).collect(),
            notes: a.notes.clone(),
        }
    }
}

impl AsymptoticJson {
    /// Recovers the root form by a discrete Fourier transform over the
    /// period, `c_k = (1/h) Σ_r coeffs[r]·ζ_h^{−kr}`, and checks that it
    /// reproduces the coefficients with the same (minimal) period.
    pub fn decode(&self) -> Result<AsymptoticFormula> {
        let h = self.period;
        if h == 0 || self.coeffs.len() != h as usize {
            return Err(Error::schema(format!(
                "{} coefficients for period {h}",
                self.coeffs.len()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(CyclotomicJson::decode)
            .collect::<Result<Vec<_>>>()?;
        let inv_h = BigRational::new(1.into(), h.into());
        let roots = (0..h).map(|k| {
            let mut c = Cyclotomic::zero();
            for (r, x) in coeffs.iter().enumerate() {
                c = c + x.mul_root(h, -(i64::from(k) * r as i64));
            }
            (c.scale(&inv_h), Cyclotomic::root_of_unity(h, i64::from(k)))
        });
        let mut a = AsymptoticFormula::from_roots(self.dim, roots).map_err(|e| Error::schema(e.to_string()))?;
        if a.period() != h || a.coeffs() != coeffs.as_slice() {
            return Err(Error::schema(format!(
                "period {h} is not the minimal period of the coefficients"
            )));
        }
        a.notes = self.notes.clone();
        Ok(a)
    }
}

pub fn asymptotic_to_json(a: &AsymptoticFormula) -> String {
    pretty(&AsymptoticJson::from(a))
}

pub fn asymptotic_from_json(s: &str) -> Result<AsymptoticFormula> {
    serde_json::from_str::<AsymptoticJson>(s)?.decode()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisJson {
    label: String,
    dim: u64,
    projective: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    basis: Vec<BasisJson>,
    rows: Vec<Vec<u64>>,
    truncated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cutoff: Option<usize>,
}

pub fn matrix_to_json(m: &ActionMatrix) -> String {
    let doc = MatrixJson {
        basis: m
            .basis()
            .iter()
            .map(|b| BasisJson {
                label: b.label.clone(),
                dim: b.dim,
                projective: b.projective,
            })
            .collect(),
        rows: m.entries().to_vec(),
        truncated: m.truncated(),
        cutoff: m.cutoff(),
    };
    // One matrix row per line keeps the files reviewable.
    let mut out = String::from("{\n  \"basis\": [\n");
    let basis: Vec<String> = doc.basis.iter().map(|b| format!("    {}", compact(b))).collect();
    out.push_str(&basis.join(",\n"));
    out.push_str("\n  ],\n  \"rows\": [\n");
    let rows: Vec<String> = doc.rows.iter().map(|r| format!("    {}", compact(r))).collect();
    out.push_str(&rows.join(",\n"));
    out.push_str(&format!("\n  ],\n  \"truncated\": {}", doc.truncated));
    if let Some(k) = doc.cutoff {
        out.push_str(&format!(",\n  \"cutoff\": {k}"));
    }
    out.push_str("\n}\n");
    out
}

pub fn matrix_from_json(s: &str) -> Result<ActionMatrix> {
    let doc: MatrixJson = serde_json::from_str(s)?;
    if !doc.truncated && doc.cutoff.is_some() {
        return Err(Error::schema("cutoff given for a matrix that is not truncated"));
    }
    let basis = doc
        .basis
        .into_iter()
        .map(|b| BasisModule::new(b.label, b.dim, b.projective))
        .collect();
    ActionMatrix::new(basis, doc.rows, doc.truncated, doc.cutoff).map_err(|e| match e {
        growthrate_core::Error::InvalidParameter(m) => Error::Schema(m),
        other => Error::Core(other),
    })
}

pub fn load_matrix(path: &Path) -> Result<ActionMatrix> {
    matrix_from_json(&read(path)?)
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}
