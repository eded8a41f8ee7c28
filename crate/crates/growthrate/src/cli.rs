//! Argument parsing and command dispatch for the `growthrate` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::run::{self, Command, EdgeStyle, Format, RunConfig};
use crate::spec::{parse_group, parse_rep, GroupSpec, RepSpec};
use crate::verify::{self, Suite};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "growthrate",
    version,
    about = "Growth of tensor powers of finite group representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Print a character table.
    Table(TableArgs),
    /// Series b(n), a(n), b(n)/a(n) and b(n) − a(n) for 0 ≤ n ≤ nmax.
    Growth(GrowthArgs),
    /// Fusion graph of a module or an ordinary character.
    Fusion(FusionArgs),
    /// Run the built-in checks; exits with 1 if any fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Dot,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Dot => Format::Dot,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeArg {
    Multi,
    Weighted,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Write the result here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Significant digits of printed floats.
    #[arg(long, default_value_t = crate::format::DEFAULT_DIGITS)]
    pub digits: usize,
    /// Bits of precision when exact values are embedded as floats (at least 32).
    #[arg(long, default_value_t = 128)]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// cyclic:d, dihedral:2m, sym:m, semidirect:p,k,j, sl2:q, table:NAME or file:PATH.
    #[arg(long)]
    pub group: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    /// Group selector; modules given as cyclicmod:, klein:, bundled: or matrix: need none.
    #[arg(long)]
    pub group: Option<String>,
    /// Representation selector; repeat for several jobs.
    #[arg(long, required = true)]
    pub rep: Vec<String>,
    #[arg(long, default_value_t = 20)]
    pub nmax: u32,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,
    /// Worker threads for several --rep jobs (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct FusionArgs {
    #[arg(long)]
    pub group: Option<String>,
    /// Defaults to the first faithful irreducible of an ordinary table.
    #[arg(long)]
    pub rep: Option<String>,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: FormatArg,
    #[arg(long, value_enum, default_value = "multi")]
    pub edges: EdgeArg,
    /// Basis modules kept for infinite matrices is this plus 2.
    #[arg(long, default_value_t = 20)]
    pub nmax: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// all, char0, modular or closedform.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[command(flatten)]
    pub common: Common,
}

/// Rendered output and the exit status it calls for.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub output: Option<PathBuf>,
    pub exit_code: i32,
}

fn config(command: Command, format: FormatArg, common: &Common) -> RunConfig {
    RunConfig {
        format: format.into(),
        output_path: common.output.clone(),
        precision_bits: common.precision,
        digits: common.digits,
        ..RunConfig::new(command)
    }
}

fn group(spec: Option<&str>) -> Result<Option<GroupSpec>> {
    spec.map(parse_group).transpose()
}

pub fn execute(cli: Cli) -> Result<Outcome> {
    let ok = |text: String, cfg: &RunConfig| Outcome {
        text,
        output: cfg.output_path.clone(),
        exit_code: 0,
    };
    match cli.command {
        Cmd::Table(a) => {
            let cfg = RunConfig {
                group_spec: Some(a.group.clone()),
                ..config(Command::Table, a.format, &a.common)
            };
            cfg.validate()?;
            let g = parse_group(&a.group)?;
            let t = g.table().ok_or_else(|| {
                Error::usage(format!(
                    "{} is a modular group with no bundled table; try table:NAME",
                    g.name()
                ))
            })?;
            Ok(ok(run::table(t, cfg.format), &cfg))
        }
        Cmd::Growth(a) => {
            let cfg = RunConfig {
                group_spec: a.group.clone(),
                rep_spec: a.rep.clone(),
                n_max: a.nmax,
                ..config(Command::Growth, a.format, &a.common)
            };
            cfg.validate()?;
            let g = group(a.group.as_deref())?;
            let reps: Vec<RepSpec> = a.rep.iter().map(|r| parse_rep(r, g.as_ref())).collect::<Result<_>>()?;
            let work = || {
                reps.par_iter()
                    .map(|r| run::growth(g.as_ref(), r, cfg.n_max))
                    .collect::<Result<Vec<_>>>()
            };
            let reports = rayon::ThreadPoolBuilder::new()
                .num_threads(a.jobs)
                .build()
                .map_err(|e| Error::usage(e.to_string()))?
                .install(work)?;
            let text = match cfg.format {
                Format::Json => run::growth_json(&reports, cfg.precision_bits, cfg.digits),
                Format::Text => run::growth_text(&reports, cfg.precision_bits, cfg.digits),
                _ => run::growth_csv(&reports, cfg.digits)?,
            };
            Ok(ok(text, &cfg))
        }
        Cmd::Fusion(a) => {
            let cfg = RunConfig {
                group_spec: a.group.clone(),
                rep_spec: a.rep.iter().cloned().collect(),
                n_max: a.nmax,
                ..config(Command::Fusion, a.format, &a.common)
            };
            cfg.validate()?;
            let g = group(a.group.as_deref())?;
            let rep = match (&a.rep, &g) {
                (Some(r), _) => parse_rep(r, g.as_ref())?,
                (None, Some(GroupSpec::Table { .. })) => parse_rep("faithful", g.as_ref())?,
                (None, _) => {
                    return Err(Error::usage(
                        "fusion needs --rep unless --group names a character table",
                    ))
                }
            };
            let graph = run::fusion(g.as_ref(), &rep, cfg.n_max)?;
            let style = match a.edges {
                EdgeArg::Multi => EdgeStyle::Multi,
                EdgeArg::Weighted => EdgeStyle::Weighted,
            };
            let text = match cfg.format {
                Format::Json => run::fusion_json(&graph),
                _ => run::fusion_dot(&graph, style),
            };
            Ok(ok(text, &cfg))
        }
        Cmd::Verify(a) => {
            let cfg = config(Command::Verify, a.format, &a.common);
            cfg.validate()?;
            let suites: Vec<Suite> = Suite::parse(&a.suite).ok_or_else(|| {
                Error::usage(format!(
                    "unknown suite {:?}; expected all, char0, modular or closedform",
                    a.suite
                ))
            })?;
            let results = verify::run(&suites, a.jobs);
            let text = match cfg.format {
                Format::Json => verify::render_json(&results),
                _ => verify::render_text(&results),
            };
            let failed = results.iter().any(|r| !r.passed);
            Ok(Outcome {
                exit_code: i32::from(failed),
                ..ok(text, &cfg)
            })
        }
    }
}
