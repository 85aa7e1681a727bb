//! JSON files for algebras and modules, and the JSON shapes of CLI results.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraSpec};
use crate::config::Config;
use crate::corpus;
use crate::decompose::{composition_factors, Summand};
use crate::error::{Error, Result};
use crate::ext::ExtProfile;
use crate::matrix::MatrixFp;
use crate::module::AModule;
use crate::series::{LoewySeries, SeriesKind};

/// Where a module file finds its algebra: a corpus name, a path relative to
/// the module file, or an inline presentation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Named(String),
    Inline(AlgebraSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: AlgebraRef,
    pub dim: usize,
    /// Generator index → row-major matrix with entries mod p.
    pub action: BTreeMap<usize, Vec<Vec<i64>>>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("{what}: {e}")))
}

pub fn parse_algebra(text: &str, cfg: &Config) -> Result<Arc<Algebra>> {
    Algebra::build(&parse::<AlgebraSpec>(text, "algebra file")?, cfg)
}

pub fn load_algebra(path: &Path, cfg: &Config) -> Result<Arc<Algebra>> {
    let spec: AlgebraSpec = parse(&read(path)?, &format!("algebra file {}", path.display()))?;
    Algebra::build_named(&spec, cfg, &path.display().to_string())
}

fn resolve(r: &AlgebraRef, base: Option<&Path>, cfg: &Config) -> Result<Arc<Algebra>> {
    match r {
        AlgebraRef::Inline(spec) => Algebra::build(spec, cfg),
        AlgebraRef::Named(name) => {
            if corpus::algebra_specs().iter().any(|(n, _)| n == name) {
                return corpus::algebra(name);
            }
            let path: PathBuf = base.map_or_else(|| PathBuf::from(name), |b| b.join(name));
            load_algebra(&path, cfg)
        }
    }
}

pub fn module_from_file(file: &ModuleFile, base: Option<&Path>, cfg: &Config) -> Result<AModule> {
    let alg = resolve(&file.algebra, base, cfg)?;
    if file.dim > cfg.max_dim {
        return Err(Error::DimCapExceeded { dim: file.dim, cap: cfg.max_dim });
    }
    let f = alg.field();
    let mut action = Vec::new();
    for g in 0..alg.num_gens() {
        let rows = file
            .action
            .get(&g)
            .ok_or_else(|| Error::Invalid(format!("module file: no matrix for generator {g}")))?;
        if rows.len() != file.dim || rows.iter().any(|r| r.len() != file.dim) {
            return Err(Error::Invalid(format!("module file: generator {g} is not {0}×{0}", file.dim)));
        }
        action.push(MatrixFp::from_rows(f, rows, file.dim));
    }
    if let Some(extra) = file.action.keys().find(|&&g| g >= alg.num_gens()) {
        return Err(Error::Invalid(format!("module file: algebra has no generator {extra}")));
    }
    if file.dim == 0 {
        return Ok(AModule::zero(&alg));
    }
    AModule::new(alg, action)
}

pub fn parse_module(text: &str, cfg: &Config) -> Result<AModule> {
    module_from_file(&parse(text, "module file")?, None, cfg)
}

pub fn load_module(path: &Path, cfg: &Config) -> Result<AModule> {
    let file: ModuleFile = parse(&read(path)?, &format!("module file {}", path.display()))?;
    module_from_file(&file, path.parent(), cfg)
}

/// The file form of `m`, pointing at `algebra`.
pub fn module_file(m: &AModule, algebra: AlgebraRef) -> ModuleFile {
    let action = m
        .actions()
        .iter()
        .enumerate()
        .map(|(g, a)| (g, a.to_nested().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect()))
        .collect();
    ModuleFile { algebra, dim: m.dim(), action }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummandOut {
    pub dim: usize,
    pub composition_factors: Vec<usize>,
    pub basis: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChopOut {
    pub dim: usize,
    pub composition_factors: Vec<usize>,
    pub summands: Vec<SummandOut>,
}

pub fn chop_out(m: &AModule, summands: &[Summand]) -> ChopOut {
    ChopOut {
        dim: m.dim(),
        composition_factors: composition_factors(m),
        summands: summands
            .iter()
            .map(|s| SummandOut {
                dim: s.module.dim(),
                composition_factors: composition_factors(&s.module),
                basis: s.space.vectors(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlotOut {
    pub layer: usize,
    pub slot: usize,
    pub iso_class: usize,
    pub basis: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesOut {
    pub kind: SeriesKind,
    pub length: usize,
    pub term_dims: Vec<usize>,
    pub layer_dims: Vec<usize>,
    pub layers: Vec<Vec<SlotOut>>,
}

pub fn series_out(s: &LoewySeries) -> SeriesOut {
    SeriesOut {
        kind: s.kind,
        length: s.length(),
        term_dims: s.terms.iter().map(|t| t.dim()).collect(),
        layer_dims: s.layer_dims(),
        layers: s
            .layers
            .iter()
            .map(|l| {
                l.iter()
                    .map(|v| SlotOut { layer: v.layer, slot: v.slot, iso_class: v.iso_class, basis: v.basis.vectors() })
                    .collect()
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtEntry {
    pub top: usize,
    pub target: usize,
    pub r: usize,
    /// Representatives of each witness slot inside the principal indecomposable of `top`.
    pub witnesses: Vec<Vec<Vec<u32>>>,
}

pub fn ext_entry(p: &ExtProfile) -> ExtEntry {
    ExtEntry {
        top: p.top,
        target: p.target,
        r: p.r,
        witnesses: p.witnesses.iter().map(|w| w.basis.vectors()).collect(),
    }
}
