//! Persistent library of solved fraction plans.
//!
//! Entries are keyed by a SHA-256 digest of the canonical minimal cutset
//! matrix, so the same system entered as a truth table or as a cutset list
//! shares one entry. One file per (structure, solver):
//! `<hash>-<solver>.json`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use cutplan::rational::{parse_fraction, to_fraction_string};
use cutplan::{CutsetMatrix, FractionPlan};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_FORMAT_VERSION: u32 = 1;
pub const ENV_CACHE_DIR: &str = "CUTPLAN_CACHE_DIR";

/// Hex SHA-256 of the matrix's canonical text.
pub fn structure_hash(cutsets: &CutsetMatrix) -> String {
    hex::encode(Sha256::digest(cutsets.canonical_text().as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub format_version: u32,
    pub structure_hash: String,
    pub components: usize,
    pub cutsets: Vec<Vec<usize>>,
    pub fractions: Vec<String>,
    pub cutset_fraction: String,
    pub n_zero: u64,
    pub alternative_optima: bool,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub solver: String,
    pub tool_version: String,
}

impl CacheEntry {
    pub fn new(cutsets: &CutsetMatrix, plan: &FractionPlan, solver: &str) -> Self {
        Self {
            format_version: CACHE_FORMAT_VERSION,
            structure_hash: structure_hash(cutsets),
            components: cutsets.num_components(),
            cutsets: cutsets.rows().to_vec(),
            fractions: plan.fractions.iter().map(to_fraction_string).collect(),
            cutset_fraction: to_fraction_string(&plan.cutset_fraction),
            n_zero: plan.n_zero,
            alternative_optima: plan.alternative_optima,
            provenance: Provenance {
                solver: solver.to_string(),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            },
        }
    }

    /// Rebuilds the plan, rejecting entries that do not belong to `cutsets`
    /// or violate a plan invariant.
    pub fn to_plan(&self, cutsets: &CutsetMatrix, solver: &str) -> Result<FractionPlan, String> {
        if self.format_version != CACHE_FORMAT_VERSION {
            return Err(format!("unsupported format_version {}", self.format_version));
        }
        if self.structure_hash != structure_hash(cutsets)
            || self.components != cutsets.num_components()
            || self.cutsets != cutsets.rows()
        {
            return Err("entry belongs to a different structure".into());
        }
        if self.provenance.solver != solver {
            return Err(format!("entry was produced by solver `{}`", self.provenance.solver));
        }
        let fractions = self
            .fractions
            .iter()
            .map(|f| parse_fraction(f).ok_or_else(|| format!("bad fraction `{f}`")))
            .collect::<Result<Vec<_>, _>>()?;
        let cutset_fraction = parse_fraction(&self.cutset_fraction)
            .ok_or_else(|| format!("bad fraction `{}`", self.cutset_fraction))?;
        let plan = FractionPlan {
            fractions,
            cutset_fraction,
            n_zero: self.n_zero,
            alternative_optima: self.alternative_optima,
        };
        plan.validate(cutsets)?;
        Ok(plan)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lookup {
    Hit(FractionPlan),
    Miss,
    /// Present but unusable; the reason is reported and the entry recomputed.
    Corrupt(String),
}

#[derive(Debug, Clone)]
pub struct FractionCache {
    dir: PathBuf,
}

impl FractionCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// `$XDG_CACHE_HOME/cutplan`, else `$HOME/.cache/cutplan`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
            return Some(PathBuf::from(xdg).join("cutplan"));
        }
        std::env::var_os("HOME")
            .filter(|v| !v.is_empty())
            .map(|home| PathBuf::from(home).join(".cache").join("cutplan"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, hash: &str, solver: &str) -> PathBuf {
        self.dir.join(format!("{hash}-{solver}.json"))
    }

    pub fn lookup(&self, cutsets: &CutsetMatrix, solver: &str) -> Lookup {
        let path = self.entry_path(&structure_hash(cutsets), solver);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(entry) => entry,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        match entry.to_plan(cutsets, solver) {
            Ok(plan) => Lookup::Hit(plan),
            Err(e) => Lookup::Corrupt(format!("{}: {e}", path.display())),
        }
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn store(&self, cutsets: &CutsetMatrix, plan: &FractionPlan, solver: &str) -> io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry::new(cutsets, plan, solver);
        let path = self.entry_path(&entry.structure_hash, solver);
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        let text = serde_json::to_string_pretty(&entry).map_err(io::Error::other)?;
        fs::write(&tmp, text + "\n")?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}
