//! JSON form of a solution: `{"n", "sigma", "tau", "meta"?}` with
//! `sigma[x][y] = σ_x(y)` and `tau[x][y] = τ_y(x)`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use cocyclic::solution::{Family, KParams, SolutionTable};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub family: String,
    pub t: u64,
    pub a: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub n: usize,
    pub sigma: Vec<Vec<u32>>,
    pub tau: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl SolutionDocument {
    pub fn from_table(s: &SolutionTable, meta: Option<Meta>) -> Self {
        SolutionDocument {
            n: s.size(),
            sigma: s.sigma_rows(),
            tau: s.tau_rows(),
            meta,
        }
    }

    pub fn from_params(p: &KParams, s: &SolutionTable) -> Self {
        let meta = Meta {
            family: p.family().name().to_string(),
            t: p.t(),
            a: p.a(),
            level: Some(p.predicted_level()),
        };
        Self::from_table(s, Some(meta))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = if path.as_os_str() == "-" {
            std::io::read_to_string(std::io::stdin()).context("reading standard input")?
        } else {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        };
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// The validated table; shape and range errors surface as library errors.
    pub fn table(&self) -> Result<SolutionTable> {
        if self.sigma.len() != self.n {
            bail!(
                "\"n\" is {} but sigma has {} rows",
                self.n,
                self.sigma.len()
            );
        }
        Ok(SolutionTable::from_tables(&self.sigma, &self.tau)?)
    }

    /// Constructor parameters recorded in `meta`.
    pub fn params(&self) -> Result<KParams> {
        let Some(meta) = &self.meta else {
            bail!("document has no \"meta\" block with family, t and a");
        };
        let family: Family = meta.family.parse()?;
        Ok(KParams::new(family, self.n as u64, meta.t, meta.a)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }
}
