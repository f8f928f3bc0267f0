use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::histogram::{degree_histogram, DegreeHistogram, DegreeMode, Provenance};
use super::report::mean_std;
use crate::error::{domain, Result};
use crate::processes::{generate, ProcessParams};

/// Degree histograms of replicates `0..replicates`, in replicate order.
pub fn replicate_histograms(
    params: &ProcessParams,
    mode: DegreeMode,
    replicates: usize,
) -> Result<Vec<DegreeHistogram>> {
    (0..replicates as u64)
        .into_par_iter()
        .map(|i| {
            let g = generate(params, i)?;
            Ok(degree_histogram(&g, params.m, mode).with_provenance(Provenance {
                variant: params.variant,
                master_seed: params.master_seed,
                replicate: i,
            }))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FractionEstimate {
    pub degree: u64,
    pub mode: DegreeMode,
    pub per_replicate: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

impl FractionEstimate {
    pub fn from_histograms(hists: &[DegreeHistogram], degree: u64) -> Self {
        let per_replicate: Vec<f64> = hists.iter().map(|h| h.fraction(degree)).collect();
        let (mean, std) = mean_std(&per_replicate);
        Self {
            degree,
            mode: hists.first().map_or(DegreeMode::InDegree, |h| h.mode),
            per_replicate,
            mean,
            std,
        }
    }
}

/// `N(n, m, d) / n` over independent replicates, with `d` read in `mode`.
pub fn empirical_fraction(
    params: &ProcessParams,
    d: u64,
    mode: DegreeMode,
    replicates: usize,
) -> Result<FractionEstimate> {
    if replicates < 2 {
        return Err(domain("empirical_fraction needs at least 2 replicates"));
    }
    let hists = replicate_histograms(params, mode, replicates)?;
    Ok(FractionEstimate::from_histograms(&hists, d))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationResult {
    /// `N(n, m, d)` per replicate, in-degree convention.
    pub counts: Vec<u64>,
    pub mean: f64,
    /// `sqrt(n ln n)`.
    pub threshold: f64,
    pub exceedances: usize,
    pub rate: f64,
    /// `n^(-1/8)`.
    pub bound: f64,
}

/// Fraction of replicates whose in-degree-`d` count deviates from the
/// replicate grand mean by at least `sqrt(n ln n)`. A zero deviation never
/// counts as an exceedance.
pub fn concentration_experiment(
    params: &ProcessParams,
    d: u64,
    replicates: usize,
) -> Result<ConcentrationResult> {
    if replicates < 100 {
        return Err(domain("concentration_experiment needs at least 100 replicates"));
    }
    let counts: Vec<u64> = replicate_histograms(params, DegreeMode::InDegree, replicates)?
        .iter()
        .map(|h| h.count(d))
        .collect();
    let values: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let (mean, _) = mean_std(&values);
    let n = params.n as f64;
    let threshold = (n * n.ln()).sqrt();
    let exceedances = values
        .iter()
        .filter(|&&c| {
            let dev = (c - mean).abs();
            dev > 0.0 && dev >= threshold
        })
        .count();
    Ok(ConcentrationResult {
        counts,
        mean,
        threshold,
        exceedances,
        rate: exceedances as f64 / replicates as f64,
        bound: n.powf(-0.125),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryPoint {
    pub n: usize,
    pub d: u64,
    pub fraction: FractionEstimate,
    /// `sqrt(ln n / n)`.
    pub fluctuation_scale: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorollaryResult {
    pub points: Vec<CorollaryPoint>,
    pub strictly_decreasing: bool,
}

/// For each `n`, the mean in-degree-`d` fraction at `d = ceil(n^e)`.
pub fn corollary_experiment(
    base: &ProcessParams,
    n_grid: &[usize],
    e: f64,
    replicates: usize,
) -> Result<CorollaryResult> {
    if !(e > 1.0 / 6.0 && e < 1.0 / 3.0) {
        return Err(domain(format!("exponent {e} outside (1/6, 1/3)")));
    }
    if replicates < 2 {
        return Err(domain("corollary_experiment needs at least 2 replicates"));
    }
    let mut points = Vec::with_capacity(n_grid.len());
    for &n in n_grid {
        if n < 1000 {
            return Err(domain(format!("grid point n = {n} is below 1000")));
        }
        let params = ProcessParams::new(n, base.m, base.variant, base.master_seed)?;
        let d = (n as f64).powf(e).ceil() as u64;
        let fraction = empirical_fraction(&params, d, DegreeMode::InDegree, replicates)?;
        points.push(CorollaryPoint {
            n,
            d,
            fraction,
            fluctuation_scale: ((n as f64).ln() / n as f64).sqrt(),
        });
    }
    let strictly_decreasing = points
        .windows(2)
        .all(|w| w[1].fraction.mean < w[0].fraction.mean);
    Ok(CorollaryResult {
        points,
        strictly_decreasing,
    })
}
