//! Tables and matrices shipped with the crate.
//!
//! Every file is compiled in. If `GROWTH_DATA_DIR` is set, a file at
//! `$GROWTH_DATA_DIR/tables/NAME.json` (or `matrices/NAME.json`) takes
//! precedence over the embedded copy, and names that exist only in the
//! directory are accepted too.

use std::path::PathBuf;

use growthrate_core::chartab::CharacterTable;
use growthrate_core::modular::ActionMatrix;

use crate::json::{matrix_from_json, read, table_from_json};
use crate::{Error, Result};

pub const DATA_DIR_VAR: &str = "GROWTH_DATA_DIR";

const TABLES: [(&str, &str); 6] = [
    ("sl2_4", include_str!("../data/tables/sl2_4.json")),
    ("sl2_5", include_str!("../data/tables/sl2_5.json")),
    ("sl2_7", include_str!("../data/tables/sl2_7.json")),
    ("sl2_8", include_str!("../data/tables/sl2_8.json")),
    ("sl2_7_mod7", include_str!("../data/tables/sl2_7_mod7.json")),
    ("sl2_8_mod2", include_str!("../data/tables/sl2_8_mod2.json")),
];

const MATRICES: [(&str, &str); 2] = [
    ("sl2_7_mod7_dim4", include_str!("../data/matrices/sl2_7_mod7_dim4.json")),
    ("sl2_8_mod2_dim2", include_str!("../data/matrices/sl2_8_mod2_dim2.json")),
];

/// A bundled action matrix of a faithful simple module of `SL(2,q)`,
/// `q = p^r`, with the Brauer table it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundledModule {
    pub name: &'static str,
    pub q: u64,
    pub p: u64,
    pub r: u32,
    pub brauer_table: &'static str,
}

pub const BUNDLED_MODULES: [BundledModule; 2] = [
    BundledModule {
        name: "sl2_7_mod7_dim4",
        q: 7,
        p: 7,
        r: 1,
        brauer_table: "sl2_7_mod7",
    },
    BundledModule {
        name: "sl2_8_mod2_dim2",
        q: 8,
        p: 2,
        r: 3,
        brauer_table: "sl2_8_mod2",
    },
];

pub fn table_names() -> impl Iterator<Item = &'static str> {
    TABLES.iter().map(|(n, _)| *n)
}

pub fn matrix_names() -> impl Iterator<Item = &'static str> {
    MATRICES.iter().map(|(n, _)| *n)
}

pub fn bundled_module(name: &str) -> Option<BundledModule> {
    BUNDLED_MODULES.iter().copied().find(|m| m.name == name)
}

fn override_path(kind: &str, name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(DATA_DIR_VAR)?;
    let path = PathBuf::from(dir).join(kind).join(format!("{name}.json"));
    path.is_file().then_some(path)
}

fn source(kind: &str, name: &str, embedded: &[(&str, &'static str)]) -> Result<String> {
    if name.is_empty() || name.contains(['/', '\\']) || name.starts_with('.') {
        return Err(Error::usage(format!("{name:?} is not a data file name")));
    }
    if let Some(path) = override_path(kind, name) {
        return read(&path);
    }
    embedded
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s.to_string())
        .ok_or_else(|| {
            let known: Vec<&str> = embedded.iter().map(|(n, _)| *n).collect();
            Error::usage(format!("no bundled {kind} entry {name:?}; known: {}", known.join(", ")))
        })
}

pub fn bundled_table(name: &str) -> Result<CharacterTable> {
    table_from_json(&source("tables", name, &TABLES)?)
}

pub fn bundled_matrix(name: &str) -> Result<ActionMatrix> {
    matrix_from_json(&source("matrices", name, &MATRICES)?)
}
