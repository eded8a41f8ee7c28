//! Group and representation selectors.
//!
//! A group selector is `family:args`; a representation selector is a comma
//! list of `key=value` pairs and bare flags. Modular modules carry their own
//! prefix and need no group.

use std::fmt;
use std::path::PathBuf;

use growthrate_core::chartab::{
    build_cyclic, build_dihedral, build_semidirect, build_symmetric, partitions, CharacterTable, RepCharacter,
};
use growthrate_core::exact::Cyclotomic;
use growthrate_core::modular::{action_matrix_cyclic, action_matrix_klein, ActionMatrix, IndecCyclic, KleinIndec};

use crate::data::{self, BundledModule};
use crate::json::load_table;
use crate::{Error, Result};

/// Where a table came from; closed forms and selectors key off this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Cyclic(u32),
    /// `D_{2m}`, holding `m`.
    Dihedral(u32),
    Symmetric(u32),
    Semidirect(u32, u32, u32),
    Sl2(u32),
    Bundled(String),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub enum GroupSpec {
    Table {
        family: Family,
        table: CharacterTable,
    },
    /// `C_p` in characteristic `p`.
    CyclicMod {
        p: u32,
    },
    /// `V_4 = C_2 × C_2` in characteristic 2.
    Klein,
}

impl GroupSpec {
    pub fn table(&self) -> Option<&CharacterTable> {
        match self {
            GroupSpec::Table { table, .. } => Some(table),
            _ => None,
        }
    }

    pub fn name(&self) -> String {
        match self {
            GroupSpec::Table { table, .. } => table.group_name().to_string(),
            GroupSpec::CyclicMod { p } => format!("C{p} (char {p})"),
            GroupSpec::Klein => "V4 (char 2)".to_string(),
        }
    }
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::usage(format!("{what}: {s:?} is not a valid number")))
}

/// Splits `k=v,flag,...` into pairs; a flag has an empty value.
fn pairs(s: &str) -> Vec<(String, String)> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.split_once('=') {
            Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
            None => (t.to_string(), String::new()),
        })
        .collect()
}

fn core(e: growthrate_core::Error) -> Error {
    match e {
        growthrate_core::Error::InvalidParameter(m) => Error::Usage(m),
        other => Error::Core(other),
    }
}

/// Parses `cyclic:d`, `dihedral:2m`, `sym:m`, `semidirect:p,k,j`, `sl2:q`,
/// `table:NAME`, `file:PATH`, `cyclicmod:p=P` (or `cyclicmod:P`) and `klein`.
pub fn parse_group(s: &str) -> Result<GroupSpec> {
    let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
    let table =
        |family: Family, t: Result<CharacterTable>| -> Result<GroupSpec> { Ok(GroupSpec::Table { family, table: t? }) };
    match kind.trim() {
        "cyclic" => {
            let d = number(arg, "cyclic order")?;
            table(Family::Cyclic(d), build_cyclic(d).map_err(core))
        }
        "dihedral" => {
            let two_m: u32 = number(arg, "dihedral order")?;
            table(Family::Dihedral(two_m / 2), build_dihedral(two_m).map_err(core))
        }
        "sym" => {
            let m = number(arg, "symmetric degree")?;
            table(Family::Symmetric(m), build_symmetric(m).map_err(core))
        }
        "semidirect" => {
            let v: Vec<u32> = arg.split(',').map(|x| number(x, "semidirect parameter")).collect::<Result<_>>()?;
            let [p, k, j] = v[..] else {
                return Err(Error::usage("semidirect needs three parameters p,k,j"));
            };
            table(Family::Semidirect(p, k, j), build_semidirect(p, k, j).map_err(core))
        }
        "sl2" => {
            let q: u32 = number(arg, "sl2 field size")?;
            table(Family::Sl2(q), data::bundled_table(&format!("sl2_{q}")))
        }
        "table" => table(Family::Bundled(arg.to_string()), data::bundled_table(arg)),
        "file" => {
            let path = PathBuf::from(arg);
            let t = load_table(&path);
            table(Family::File(path), t)
        }
        "cyclicmod" => {
            let p = match pairs(arg).as_slice() {
                [(k, v)] if k == "p" => number(v, "cyclicmod prime")?,
                [(k, v)] if v.is_empty() => number(k, "cyclicmod prime")?,
                _ => return Err(Error::usage(format!("expected cyclicmod:p=P, got {s:?}"))),
            };
            IndecCyclic::new(p, 1).map_err(core)?;
            Ok(GroupSpec::CyclicMod { p })
        }
        "klein" if arg.is_empty() => Ok(GroupSpec::Klein),
        _ => Err(Error::usage(format!(
            "unknown group {s:?}; expected cyclic:, dihedral:, sym:, semidirect:, sl2:, table:, file:, cyclicmod: or klein"
        ))),
    }
}

/// A module of a modular example, with its action matrix.
#[derive(Debug, Clone)]
pub enum ModuleKind {
    Cyclic(IndecCyclic),
    /// `cutoff` is `None` until the caller picks one for `M_{2m+1}`.
    Klein {
        module: KleinIndec,
        cutoff: Option<usize>,
    },
    Bundled(BundledModule),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub enum RepSpec {
    /// Values of a character of the selected table.
    Character {
        values: Vec<Cyclotomic>,
        label: String,
    },
    Module(ModuleKind),
}

impl RepSpec {
    pub fn label(&self) -> String {
        match self {
            RepSpec::Character { label, .. } => label.clone(),
            RepSpec::Module(ModuleKind::Cyclic(v)) => v.label(),
            RepSpec::Module(ModuleKind::Klein { module, .. }) => module.label(),
            RepSpec::Module(ModuleKind::Bundled(b)) => b.name.to_string(),
            RepSpec::Module(ModuleKind::File(p)) => p.display().to_string(),
        }
    }
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl ModuleKind {
    /// The action matrix; `M_{2m+1}` without a cutoff gets `default_cutoff`.
    pub fn matrix(&self, default_cutoff: usize) -> Result<ActionMatrix> {
        match self {
            ModuleKind::Cyclic(v) => Ok(action_matrix_cyclic(*v)),
            ModuleKind::Klein { module, cutoff } => {
                let k = match module {
                    KleinIndec::MOdd { .. } | KleinIndec::MOddDual { .. } => Some(cutoff.unwrap_or(default_cutoff)),
                    _ => None,
                };
                action_matrix_klein(*module, k).map_err(core)
            }
            ModuleKind::Bundled(b) => data::bundled_matrix(b.name),
            ModuleKind::File(p) => crate::json::load_matrix(p),
        }
    }
}

fn parse_cyclic_module(args: &str, group_p: Option<u32>) -> Result<ModuleKind> {
    let mut p = group_p;
    let mut l = None;
    for (k, v) in pairs(args) {
        match k.as_str() {
            "p" => {
                let q: u32 = number(&v, "p")?;
                if group_p.is_some_and(|g| g != q) {
                    return Err(Error::usage(format!(
                        "module over C{q} does not match the group C{}",
                        group_p.unwrap()
                    )));
                }
                p = Some(q);
            }
            "l" => l = Some(number(&v, "l")?),
            _ => return Err(Error::usage(format!("unknown cyclic module key {k:?}"))),
        }
    }
    let (Some(p), Some(l)) = (p, l) else {
        return Err(Error::usage("a cyclic module needs p=P and l=L"));
    };
    Ok(ModuleKind::Cyclic(IndecCyclic::new(p, l).map_err(core)?))
}

fn parse_klein_module(args: &str) -> Result<ModuleKind> {
    let mut it = pairs(args).into_iter();
    let Some((kind, empty)) = it.next().filter(|(_, v)| v.is_empty()) else {
        return Err(Error::usage(
            "a Klein module starts with E, E0, Einf, M, Mdual or Regular",
        ));
    };
    debug_assert!(empty.is_empty());
    let (mut l, mut m, mut cutoff) = (None, None, None);
    for (k, v) in it {
        match k.as_str() {
            "l" => l = Some(number(&v, "l")?),
            "m" => m = Some(number(&v, "m")?),
            "cutoff" => cutoff = Some(number(&v, "cutoff")?),
            _ => return Err(Error::usage(format!("unknown Klein module key {k:?}"))),
        }
    }
    let need_m = || m.ok_or_else(|| Error::usage(format!("Klein module {kind} needs m=")));
    let module = match kind.as_str() {
        "E" => KleinIndec::E {
            l: l.ok_or_else(|| Error::usage("Klein module E needs l="))?,
            m: need_m()?,
        },
        "E0" => KleinIndec::EZero { m: need_m()? },
        "Einf" => KleinIndec::EInf { m: need_m()? },
        "M" => KleinIndec::MOdd { m: need_m()? },
        "Mdual" => KleinIndec::MOddDual { m: need_m()? },
        "Regular" => KleinIndec::Regular,
        _ => return Err(Error::usage(format!("unknown Klein module {kind:?}"))),
    };
    module.validate().map_err(core)?;
    Ok(ModuleKind::Klein { module, cutoff })
}

/// Resolves a representation selector against an optional group.
///
/// Characters: an index (`3` or `index=3`), a sum of indices (`sum=1+1+4`),
/// or filters `dim=D`, `faithful`, `partition=3+1+1` (symmetric groups)
/// with `nth=K` picking the `K`-th match (from 0). Modules:
/// `cyclicmod:p=P,l=L`, `klein:KIND,l=L,m=M,cutoff=K`, `bundled:NAME`,
/// `matrix:PATH`; under `cyclicmod` and `klein` groups the prefix may be
/// dropped.
pub fn parse_rep(s: &str, group: Option<&GroupSpec>) -> Result<RepSpec> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("cyclicmod:") {
        let group_p = match group {
            Some(GroupSpec::CyclicMod { p }) => Some(*p),
            _ => None,
        };
        return Ok(RepSpec::Module(parse_cyclic_module(rest, group_p)?));
    }
    if let Some(rest) = s.strip_prefix("klein:") {
        return Ok(RepSpec::Module(parse_klein_module(rest)?));
    }
    if let Some(name) = s.strip_prefix("bundled:") {
        let b = data::bundled_module(name).ok_or_else(|| {
            let known: Vec<&str> = data::BUNDLED_MODULES.iter().map(|b| b.name).collect();
            Error::usage(format!("unknown bundled module {name:?}; known: {}", known.join(", ")))
        })?;
        return Ok(RepSpec::Module(ModuleKind::Bundled(b)));
    }
    if let Some(path) = s.strip_prefix("matrix:") {
        return Ok(RepSpec::Module(ModuleKind::File(PathBuf::from(path))));
    }
    match group {
        None => Err(Error::usage(format!("representation {s:?} needs --group"))),
        Some(GroupSpec::CyclicMod { p }) => Ok(RepSpec::Module(parse_cyclic_module(s, Some(*p))?)),
        Some(GroupSpec::Klein) => Ok(RepSpec::Module(parse_klein_module(s)?)),
        Some(GroupSpec::Table { family, table }) => select_character(s, family, table),
    }
}

fn select_character(s: &str, family: &Family, table: &CharacterTable) -> Result<RepSpec> {
    let n = table.num_chars();
    let mut index = None;
    let mut sum = None;
    let mut dim = None;
    let mut faithful = false;
    let mut partition: Option<Vec<u32>> = None;
    let mut nth = 0usize;
    for (k, v) in pairs(s) {
        match k.as_str() {
            "index" => index = Some(number::<usize>(&v, "index")?),
            _ if v.is_empty() && k.chars().all(|c| c.is_ascii_digit()) => index = Some(number(&k, "index")?),
            "sum" => {
                sum = Some(
                    v.split('+')
                        .map(|x| number::<usize>(x, "sum"))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            "dim" => dim = Some(number::<u64>(&v, "dim")?),
            "faithful" if v.is_empty() => faithful = true,
            "partition" => {
                let mut parts = v
                    .split('+')
                    .map(|x| number::<u32>(x, "partition"))
                    .collect::<Result<Vec<_>>>()?;
                parts.sort_unstable_by(|a, b| b.cmp(a));
                partition = Some(parts);
            }
            "nth" => nth = number(&v, "nth")?,
            _ => return Err(Error::usage(format!("unknown character selector {k:?}"))),
        }
    }
    let filtered = dim.is_some() || faithful || partition.is_some();
    if index.is_some() as u8 + sum.is_some() as u8 + filtered as u8 > 1 {
        return Err(Error::usage(
            "use one of an index, sum=, or filters (dim=, faithful, partition=)",
        ));
    }
    let row = |i: usize| -> Result<&Vec<growthrate_core::exact::Cyclotomic>> {
        table.chars().get(i).ok_or_else(|| {
            Error::usage(format!(
                "character index {i} out of range; {} has {n}",
                table.group_name()
            ))
        })
    };
    if let Some(ix) = sum {
        let mut mult = vec![0u64; n];
        for i in ix {
            row(i)?;
            mult[i] += 1;
        }
        let chi = RepCharacter::from_multiplicities(table, &mult).map_err(core)?;
        let label = mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| if m == 1 { format!("χ{i}") } else { format!("{m}χ{i}") })
            .collect::<Vec<_>>()
            .join("+");
        return Ok(RepSpec::Character {
            values: chi.values().to_vec(),
            label,
        });
    }
    let i = match index {
        Some(i) => i,
        None => {
            let parts_of = match (&partition, family) {
                (Some(_), Family::Symmetric(m)) => Some(partitions(*m)),
                (Some(_), _) => return Err(Error::usage("partition= applies to symmetric groups only")),
                _ => None,
            };
            let matches: Vec<usize> = (0..n)
                .filter(|&i| dim.map_or(true, |d| table.dim(i) == d))
                .filter(|&i| !faithful || RepCharacter::irreducible(table, i).is_ok_and(|c| c.is_faithful()))
                .filter(|&i| match (&partition, &parts_of) {
                    (Some(want), Some(all)) => &all[i] == want,
                    _ => true,
                })
                .collect();
            *matches.get(nth).ok_or_else(|| {
                Error::usage(format!(
                    "selector {s:?} matches {} characters of {}; nth={nth} is out of range",
                    matches.len(),
                    table.group_name()
                ))
            })?
        }
    };
    let values = row(i)?.clone();
    let label = match (family, &partition) {
        (Family::Symmetric(_), Some(p)) => {
            format!("χ{i} [{}]", p.iter().map(u32::to_string).collect::<Vec<_>>().join("+"))
        }
        _ => format!("χ{i}"),
    };
    Ok(RepSpec::Character { values, label })
}
