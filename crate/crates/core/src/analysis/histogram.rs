use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lcd::LcdGraph;
use crate::processes::Variant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeMode {
    InDegree,
    TotalDegree,
}

impl DegreeMode {
    pub fn name(self) -> &'static str {
        match self {
            DegreeMode::InDegree => "in_degree",
            DegreeMode::TotalDegree => "total_degree",
        }
    }
}

impl std::str::FromStr for DegreeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "in" | "in_degree" => Ok(DegreeMode::InDegree),
            "total" | "total_degree" => Ok(DegreeMode::TotalDegree),
            other => Err(Error::Parse(format!("unknown degree mode '{other}'"))),
        }
    }
}

/// Where a histogram's graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub variant: Variant,
    pub master_seed: u64,
    pub replicate: u64,
}

/// Vertex counts per degree. Zero counts are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHistogram {
    pub mode: DegreeMode,
    pub counts: BTreeMap<u64, u64>,
    pub n: usize,
    pub m: usize,
    pub provenance: Option<Provenance>,
}

impl DegreeHistogram {
    pub fn from_counts(mode: DegreeMode, counts: BTreeMap<u64, u64>, m: usize) -> Self {
        let counts: BTreeMap<u64, u64> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        let n = counts.values().sum::<u64>() as usize;
        Self {
            mode,
            counts,
            n,
            m,
            provenance: None,
        }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    pub fn count(&self, d: u64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    pub fn fraction(&self, d: u64) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        self.count(d) as f64 / self.n as f64
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `Σ d * count(d)`.
    pub fn degree_sum(&self) -> u64 {
        self.counts.iter().map(|(&d, &c)| d * c).sum()
    }

    /// Nonzero bins with `lo <= d <= hi`.
    pub fn window(&self, lo: u64, hi: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.range(lo..=hi).map(|(&d, &c)| (d, c))
    }
}

pub fn degree_histogram(g: &LcdGraph, m: usize, mode: DegreeMode) -> DegreeHistogram {
    let mut counts = BTreeMap::new();
    for v in 0..g.n_vertices() {
        let d = match mode {
            DegreeMode::InDegree => g.in_degree(v),
            DegreeMode::TotalDegree => g.total_degree(v),
        };
        *counts.entry(d as u64).or_insert(0) += 1;
    }
    DegreeHistogram {
        mode,
        counts,
        n: g.n_vertices(),
        m,
        provenance: None,
    }
}
