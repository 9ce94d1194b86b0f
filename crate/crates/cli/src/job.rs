//! Job config files.
//!
//! ```json
//! { "quiver": "a4.json", "anchor_shift": 10, "window": [0, 8],
//!   "dim": {"4[0]": 1, "1[1]": 1, "4[1]": 1},
//!   "outputs": {"bijection-table": "a4_table.tsv"} }
//! ```
//!
//! `quiver` is either a path (relative to the config file) or an inline
//! quiver spec.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use repknit_core::ar_knit::{default_margin, window_for_degrees, window_options, ARWindow};
use repknit_core::config::{from_json_str, QuiverSpec};
use repknit_core::gamma_hat::{LevelRange, Slot};
use repknit_core::module_class::ModuleClass;
use repknit_core::quiver::{DynkinQuiver, HeightFunction};
use repknit_core::repetitive::{DimVector, RepVertex};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum QuiverRef {
    Path(String),
    Inline(QuiverSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub quiver: QuiverRef,
    #[serde(default)]
    pub anchor_shift: i64,
    /// Levels of `Γ̂` the AR window must cover.
    pub window: Option<(i64, i64)>,
    /// Degrees of the repetitive presentation (`describe`, `selfcheck`).
    pub degrees: Option<(i64, i64)>,
    pub margin: Option<i64>,
    /// Dimension vector, keyed by `name[degree]`.
    #[serde(default)]
    pub dim: BTreeMap<String, i64>,
    /// Module class as multiplicities at slots `(name,level)`.
    #[serde(default)]
    pub class: BTreeMap<String, i64>,
    #[serde(default)]
    pub sigma: Vec<String>,
    pub monomial: Option<String>,
    pub seed: Option<u64>,
    /// Artifact file names, keyed by subcommand or artifact name.
    #[serde(default)]
    pub outputs: BTreeMap<String, String>,
}

/// A config with its quiver resolved.
pub struct Job {
    pub config: JobConfig,
    pub q: DynkinQuiver,
    pub xi: HeightFunction,
}

impl Job {
    pub fn load(path: &Path) -> Result<Job> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let config: JobConfig = from_json_str(&text)?;
        let spec = match &config.quiver {
            QuiverRef::Inline(spec) => spec.clone(),
            QuiverRef::Path(p) => {
                let full: PathBuf = path.parent().unwrap_or(Path::new(".")).join(p);
                let text = std::fs::read_to_string(&full).with_context(|| format!("reading quiver spec {}", full.display()))?;
                QuiverSpec::from_json(&text).with_context(|| format!("in quiver spec {}", full.display()))?
            }
        };
        let (q, xi) = spec.build()?;
        Ok(Job { config, q, xi })
    }

    pub fn margin(&self) -> i64 {
        self.config.margin.unwrap_or_else(|| default_margin(&self.q))
    }

    pub fn degrees(&self) -> (i64, i64) {
        self.config.degrees.unwrap_or((-1, 2))
    }

    pub fn dim(&self) -> Result<DimVector> {
        let mut d = DimVector::zero();
        for (k, &v) in &self.config.dim {
            d.add_at(RepVertex::parse(&self.q, k)?, v);
        }
        Ok(d)
    }

    pub fn class(&self) -> Result<ModuleClass> {
        let mut items = Vec::new();
        for (k, &v) in &self.config.class {
            if v < 0 {
                bail!("config: field `class.{k}`: negative multiplicity {v}");
            }
            items.push((Slot::parse(&self.q, k)?, v));
        }
        Ok(ModuleClass::from_summands(items))
    }

    pub fn sigma(&self) -> Result<Vec<Slot>> {
        Ok(self.config.sigma.iter().map(|s| Slot::parse(&self.q, s)).collect::<repknit_core::Result<_>>()?)
    }

    /// The AR window: the requested levels if any, else the degrees of `dim`
    /// with one degree of slack on each side, else degrees 0 and 1.
    pub fn ar_window(&self) -> Result<ARWindow> {
        let (q, xi, shift, margin) = (&self.q, &self.xi, self.config.anchor_shift, self.margin());
        let w = match self.config.window {
            Some((lo, hi)) => ARWindow::knit(q, xi, window_options(q, xi, shift, LevelRange::new(lo, hi), margin))?,
            None => {
                let (lo, hi) = self.dim()?.degree_range().unwrap_or((0, 1));
                window_for_degrees(q, xi, shift, lo - 1, hi + 1, margin)?
            }
        };
        for (s, _) in self.class()?.summands() {
            if w.at(s).is_none() {
                bail!("config: field `class`: slot {} is outside the window {:?}", w.slot_label(s), w.range());
            }
        }
        Ok(w)
    }
}
