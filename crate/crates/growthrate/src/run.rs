//! The `table`, `growth` and `fusion` commands as library calls.

use std::fmt::Write as _;
use std::path::PathBuf;

use growthrate_core::chartab::{CharacterTable, RepCharacter};
use growthrate_core::closedform::cyclic_ratio;
use growthrate_core::exact::{BigInt, BigRational, Cyclotomic};
use growthrate_core::growth::{
    asymptotic_a, asymptotic_p_group, character_action_matrix, exact_b, spectral_report, AsymptoticFormula,
    GrowthFormula, SpectralReport,
};
use growthrate_core::modular::{
    fusion_graph, klein_closed_b, matrix_growth, modular_asymptotic_sl2, ActionMatrix, BasisModule, FusionGraph,
    KleinIndec,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::format::{self, float, rational, rational_to_f64};
use crate::json::{table_to_json, AsymptoticJson, CyclotomicJson, GrowthFormulaJson};
use crate::spec::{GroupSpec, ModuleKind, RepSpec};
use crate::{Error, Result};

pub const MAX_N: u32 = 10_000;
pub const MIN_PRECISION: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Table,
    Growth,
    Fusion,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Dot,
    Text,
}

/// Everything a command needs besides the parsed selectors.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub group_spec: Option<String>,
    pub rep_spec: Vec<String>,
    pub n_max: u32,
    pub format: Format,
    pub output_path: Option<PathBuf>,
    /// Bits used when embedding exact values as certified floats.
    pub precision_bits: u32,
    /// Significant digits of printed floats.
    pub digits: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            group_spec: None,
            rep_spec: Vec::new(),
            n_max: 20,
            format: Format::default(),
            output_path: None,
            precision_bits: 128,
            digits: format::DEFAULT_DIGITS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max > MAX_N {
            return Err(Error::usage(format!(
                "--nmax must lie in [0, {MAX_N}], got {}",
                self.n_max
            )));
        }
        if self.precision_bits < MIN_PRECISION {
            return Err(Error::usage(format!(
                "--precision must be at least {MIN_PRECISION} bits, got {}",
                self.precision_bits
            )));
        }
        if self.digits == 0 || self.digits > 40 {
            return Err(Error::usage("--digits must lie in [1, 40]"));
        }
        let allowed: &[Format] = match self.command {
            Command::Table => &[Format::Json, Format::Text],
            Command::Growth => &[Format::Csv, Format::Json, Format::Text],
            Command::Fusion => &[Format::Dot, Format::Json],
            Command::Verify => &[Format::Text, Format::Json],
        };
        if !allowed.contains(&self.format) {
            return Err(Error::usage(format!(
                "format {:?} is not available for this command",
                self.format
            )));
        }
        Ok(())
    }
}

/// One row of a growth series; either side may be unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n: u32,
    pub b: Option<BigInt>,
    pub a: Option<BigRational>,
}

impl Row {
    pub fn ratio(&self) -> Option<BigRational> {
        let (b, a) = (self.b.as_ref()?, self.a.as_ref()?);
        format::ratio_and_variance(&BigRational::from_integer(b.clone()), a).0
    }

    pub fn variance(&self) -> Option<BigRational> {
        let (b, a) = (self.b.as_ref()?, self.a.as_ref()?);
        Some(format::ratio_and_variance(&BigRational::from_integer(b.clone()), a).1)
    }
}

/// Result of `growth` for one representation.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub group: Option<String>,
    pub rep: String,
    pub dim: u64,
    pub rows: Vec<Row>,
    pub growth_formula: Option<GrowthFormula>,
    pub asymptotic: Option<AsymptoticFormula>,
    pub spectral: Option<SpectralReport>,
    /// Exact ratio of convergence for cyclic `p`-group modules.
    pub modular_ratio: Option<Cyclotomic>,
    pub notes: Vec<String>,
}

fn rows(n_max: u32, b: Option<&[BigInt]>, a: Option<&AsymptoticFormula>) -> Vec<Row> {
    (0..=n_max)
        .map(|n| Row {
            n,
            b: b.map(|v| v[n as usize].clone()),
            a: a.map(|f| f.eval(n)),
        })
        .collect()
}

/// Runs `growth` for one representation.
pub fn growth(group: Option<&GroupSpec>, rep: &RepSpec, n_max: u32) -> Result<GrowthReport> {
    match rep {
        RepSpec::Character { values, label } => {
            let table = group
                .and_then(GroupSpec::table)
                .ok_or_else(|| Error::usage("a character needs a table"))?;
            let chi = RepCharacter::from_values(table, values.clone())?;
            character_growth(table, &chi, label, n_max)
        }
        RepSpec::Module(kind) => module_growth(group, kind, rep.label(), n_max),
    }
}

fn character_growth(table: &CharacterTable, chi: &RepCharacter<'_>, label: &str, n_max: u32) -> Result<GrowthReport> {
    let mut report = GrowthReport {
        group: Some(table.group_name().to_string()),
        rep: label.to_string(),
        dim: chi.dim(),
        rows: Vec::new(),
        growth_formula: None,
        asymptotic: None,
        spectral: None,
        modular_ratio: None,
        notes: Vec::new(),
    };
    if !table.is_ordinary() {
        let a = asymptotic_a(chi)?;
        report
            .notes
            .push("Brauer table: only a(n) is available; b(n) needs an action matrix (see bundled: modules)".into());
        report.rows = rows(n_max, None, Some(&a));
        report.asymptotic = Some(a);
        return Ok(report);
    }
    let exact = exact_b(chi)?;
    let b = exact.series(0, n_max)?.values;
    let a = asymptotic_a(chi)?;
    report.notes.extend(a.notes.iter().cloned());
    report.rows = rows(n_max, Some(&b), Some(&a));
    report.spectral = Some(spectral_report(chi)?);
    report.growth_formula = Some(exact);
    report.asymptotic = Some(a);
    Ok(report)
}

fn module_growth(group: Option<&GroupSpec>, kind: &ModuleKind, label: String, n_max: u32) -> Result<GrowthReport> {
    // Keeps M_{2m+1} exact up to n_max by default.
    let m = kind.matrix((n_max as usize + 2).max(3))?;
    let b = matrix_growth(&m, n_max as usize)?.values;
    let dim = m.dim();
    let mut notes = Vec::new();
    let mut growth_formula = None;
    let mut modular_ratio = None;
    let asymptotic = match kind {
        ModuleKind::Cyclic(v) => {
            modular_ratio = Some(cyclic_ratio(v.p(), v.l())?);
            if v.l() == 1 {
                notes.push("V_1 is the trivial module: b(n) = 1 and it is not faithful".into());
                None
            } else {
                Some(asymptotic_p_group(dim, u64::from(v.p()))?)
            }
        }
        ModuleKind::Klein { module, .. } => {
            if !matches!(module, KleinIndec::MOdd { .. } | KleinIndec::MOddDual { .. }) {
                growth_formula = Some(klein_closed_b(*module)?);
            } else if let Some(k) = m.cutoff() {
                notes.push(format!(
                    "infinite action matrix truncated to {k} basis modules; exact for n ≤ {}",
                    k - 2
                ));
            }
            Some(asymptotic_p_group(dim, 4)?)
        }
        ModuleKind::Bundled(bm) => Some(modular_asymptotic_sl2(bm.q, bm.p, bm.r, dim)?),
        ModuleKind::File(_) => {
            notes.push("no asymptotic formula for a matrix read from a file".into());
            None
        }
    };
    Ok(GrowthReport {
        group: group.map(GroupSpec::name),
        rep: label,
        dim,
        rows: rows(n_max, Some(&b), asymptotic.as_ref()),
        growth_formula,
        asymptotic,
        spectral: None,
        modular_ratio,
        notes,
    })
}

fn opt_float(x: Option<BigRational>, digits: usize) -> String {
    x.map(|r| float(rational_to_f64(&r), digits)).unwrap_or_default()
}

/// `n,b_n,a_n,ratio,variance`, with a leading `rep` column when several
/// reports are merged.
pub fn growth_csv(reports: &[GrowthReport], digits: usize) -> Result<String> {
    let multi = reports.len() > 1;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n", "b_n", "a_n", "ratio", "variance"];
    if multi {
        header.insert(0, "rep");
    }
    w.write_record(&header).map_err(csv_err)?;
    for r in reports {
        for row in &r.rows {
            let mut rec = vec![
                row.n.to_string(),
                row.b.as_ref().map(ToString::to_string).unwrap_or_default(),
                row.a.as_ref().map(rational).unwrap_or_default(),
                opt_float(row.ratio(), digits),
                opt_float(row.variance(), digits),
            ];
            if multi {
                rec.insert(0, r.rep.clone());
            }
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::schema(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::schema(e.to_string())
}

fn cyc_json(x: &Cyclotomic) -> Value {
    serde_json::to_value(CyclotomicJson::from(x)).expect("serializable")
}

fn spectral_json(s: &SpectralReport, precision: u32, digits: usize) -> Value {
    let ratio_sq = s.ratio_sq.embed(precision);
    json!({
        "max_modulus": rational(&s.max_modulus),
        "chi_sec": s.chi_sec.as_ref().map(cyc_json),
        "subleading": s.subleading.iter().map(cyc_json).collect::<Vec<_>>(),
        "ratio_sq": cyc_json(&s.ratio_sq),
        "ratio_sq_float": float(ratio_sq.re, digits),
        "ratio_of_convergence": float(s.ratio(), digits),
        "ratio_radius": s.ratio_of_convergence.radius,
        "variance_base": float(s.variance_base, digits),
    })
}

pub fn growth_json_value(r: &GrowthReport, precision: u32, digits: usize) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "b": row.b.as_ref().map(ToString::to_string),
                "a": row.a.as_ref().map(crate::json::format_rational),
                "ratio": row.ratio().map(|x| crate::json::format_rational(&x)),
                "ratio_float": row.ratio().map(|x| float(rational_to_f64(&x), digits)),
                "variance": row.variance().map(|x| crate::json::format_rational(&x)),
            })
        })
        .collect();
    json!({
        "group": r.group,
        "rep": r.rep,
        "dim": r.dim,
        "rows": rows,
        "growth_formula": r.growth_formula.as_ref().map(GrowthFormulaJson::from),
        "asymptotic_formula": r.asymptotic.as_ref().map(AsymptoticJson::from),
        "spectral_report": r.spectral.as_ref().map(|s| spectral_json(s, precision, digits)),
        "modular_ratio_of_convergence": r.modular_ratio.as_ref().map(|x| json!({
            "exact": cyc_json(x),
            "float": float(x.embed(precision).re, digits),
        })),
        "notes": r.notes,
    })
}

pub fn growth_json(reports: &[GrowthReport], precision: u32, digits: usize) -> String {
    let v = match reports {
        [one] => growth_json_value(one, precision, digits),
        many => Value::Array(many.iter().map(|r| growth_json_value(r, precision, digits)).collect()),
    };
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn growth_text(reports: &[GrowthReport], precision: u32, digits: usize) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "group: {}", r.group.as_deref().unwrap_or("-"));
        let _ = writeln!(out, "rep:   {} (dim {})", r.rep, r.dim);
        if let Some(f) = &r.growth_formula {
            let _ = writeln!(out, "b(n) = sum of coeff * base^n, valid for n >= {}:", f.valid_from());
            for (c, b) in f.terms() {
                let _ = writeln!(out, "  {c}  *  ({b})^n");
            }
        }
        if let Some(a) = &r.asymptotic {
            let _ = writeln!(out, "a(n) = c(n mod {}) * {}^n with c =", a.period(), a.dim());
            for (k, c) in a.coeffs().iter().enumerate() {
                let _ = writeln!(out, "  c({k}) = {c}");
            }
        }
        if let Some(s) = &r.spectral {
            let _ = writeln!(
                out,
                "ratio of convergence: {} (|lambda|^2/dim^2 = {})",
                float(s.ratio(), digits),
                s.ratio_sq
            );
        }
        if let Some(x) = &r.modular_ratio {
            let _ = writeln!(
                out,
                "ratio of convergence: {} = {}",
                float(x.embed(precision).re, digits),
                x
            );
        }
        for note in &r.notes {
            let _ = writeln!(out, "note: {note}");
        }
        let _ = writeln!(
            out,
            "{:>5}  {:>24}  {:>24}  {:>22}  {:>22}",
            "n", "b(n)", "a(n)", "ratio", "variance"
        );
        for row in &r.rows {
            let _ = writeln!(
                out,
                "{:>5}  {:>24}  {:>24}  {:>22}  {:>22}",
                row.n,
                row.b.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into()),
                row.a.as_ref().map(rational).unwrap_or_else(|| "-".into()),
                opt_float(row.ratio(), digits),
                opt_float(row.variance(), digits),
            );
        }
        out.push('\n');
    }
    out
}

pub fn table_text(t: &CharacterTable) -> String {
    let mut out = format!(
        "{} (order {}, exponent {}, {:?})\n",
        t.group_name(),
        t.order(),
        t.exponent(),
        t.kind()
    );
    let names: Vec<&str> = t.classes().iter().map(|c| c.name.as_str()).collect();
    let _ = writeln!(out, "classes: {}", names.join(" | "));
    let sizes: Vec<String> = t.classes().iter().map(|c| c.size.to_string()).collect();
    let _ = writeln!(out, "sizes:   {}", sizes.join(" | "));
    for (i, row) in t.chars().iter().enumerate() {
        let vals: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "χ{i}: {}", vals.join(" | "));
    }
    out
}

pub fn table(t: &CharacterTable, format: Format) -> String {
    match format {
        Format::Text => table_text(t),
        _ => table_to_json(t),
    }
}

/// The fusion graph of a module, or of an ordinary character acting on all
/// irreducibles. In characteristic 0 every module is projective.
pub fn fusion(group: Option<&GroupSpec>, rep: &RepSpec, n_hint: u32) -> Result<FusionGraph> {
    match rep {
        RepSpec::Module(kind) => fusion_graph(&kind.matrix((n_hint as usize + 2).max(3))?).map_err(Error::from),
        RepSpec::Character { values, .. } => {
            let table = group
                .and_then(GroupSpec::table)
                .ok_or_else(|| Error::usage("a character needs a table"))?;
            if !table.is_ordinary() {
                return Err(Error::Core(growthrate_core::Error::Unsupported(
                    "fusion graphs of Brauer characters need an action matrix".into(),
                )));
            }
            let chi = RepCharacter::from_values(table, values.clone())?;
            ordinary_fusion(table, &chi)
        }
    }
}

fn ordinary_fusion(table: &CharacterTable, chi: &RepCharacter<'_>) -> Result<FusionGraph> {
    let one = Cyclotomic::one();
    let trivial = (0..table.num_chars())
        .find(|&i| table.chars()[i].iter().all(|x| *x == one))
        .ok_or_else(|| Error::schema("table has no trivial character"))?;
    // Trivial character first, the rest in table order.
    let order: Vec<usize> = std::iter::once(trivial)
        .chain((0..table.num_chars()).filter(|&i| i != trivial))
        .collect();
    let m = character_action_matrix(chi)?;
    let entries: Vec<Vec<u64>> = order
        .iter()
        .map(|&i| order.iter().map(|&j| m[i][j].to_u64().expect("multiplicity")).collect())
        .collect();
    let basis: Vec<BasisModule> = order
        .iter()
        .map(|&i| BasisModule::new(format!("χ{i}"), table.dim(i), true))
        .collect();
    let am = ActionMatrix::new(basis, entries, false, None)?;
    match fusion_graph(&am) {
        Ok(mut g) => {
            g.projective_cell = (0..am.size()).collect();
            Ok(g)
        }
        // A non-faithful character splits the graph; there is no single cell.
        Err(_) => {
            let edges = (0..am.size())
                .flat_map(|j| (0..am.size()).map(move |i| (j, i)))
                .filter(|&(j, i)| am.entries()[i][j] > 0)
                .map(|(j, i)| (j, i, am.entries()[i][j]))
                .collect();
            Ok(FusionGraph {
                vertices: am.basis().to_vec(),
                edges,
                projective_cell: (0..am.size()).collect(),
                trivial_vertex: 0,
                provisional: false,
                period: 0,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeStyle {
    /// One DOT edge per unit of multiplicity.
    #[default]
    Multi,
    /// One edge labelled by its multiplicity.
    Weighted,
}

/// DOT with a red trivial vertex and a cyan projective cell.
pub fn fusion_dot(g: &FusionGraph, style: EdgeStyle) -> String {
    let mut out = String::from("digraph fusion {\n");
    if g.period > 0 {
        let _ = writeln!(out, "  // period of the projective cell: {}", g.period);
    } else {
        out.push_str("  // no single absorbing cell: the character is not faithful\n");
    }
    if g.provisional {
        out.push_str("  // truncated matrix: the projective cell is provisional\n");
    }
    out.push_str("  node [shape=circle];\n");
    for (i, v) in g.vertices.iter().enumerate() {
        let mut attrs = vec![format!("label=\"{}\\n{}\"", v.label.replace('"', "\\\""), v.dim)];
        if g.projective_cell.contains(&i) {
            attrs.push("style=filled".into());
            attrs.push("fillcolor=cyan".into());
        }
        if i == g.trivial_vertex {
            attrs.push("color=red".into());
            attrs.push("penwidth=2".into());
        }
        let _ = writeln!(out, "  v{i} [{}];", attrs.join(", "));
    }
    for &(from, to, w) in &g.edges {
        match style {
            EdgeStyle::Multi => {
                for _ in 0..w {
                    let _ = writeln!(out, "  v{from} -> v{to};");
                }
            }
            EdgeStyle::Weighted => {
                let _ = writeln!(out, "  v{from} -> v{to} [label=\"{w}\"];");
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn fusion_json(g: &FusionGraph) -> String {
    let v = json!({
        "vertices": g.vertices.iter().map(|b| json!({"label": b.label, "dim": b.dim, "projective": b.projective})).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|&(f, t, w)| json!([f, t, w])).collect::<Vec<_>>(),
        "trivial_vertex": g.trivial_vertex,
        "projective_cell": g.projective_cell,
        "period": g.period,
        "provisional": g.provisional,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}
