use serde::{Deserialize, Serialize};

use super::histogram::DegreeHistogram;
use crate::error::{domain, Error, Result};

/// Fewest nonzero bins accepted by the log-log fit.
pub const MIN_FIT_BINS: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub gamma: f64,
    pub std_error: f64,
    pub intercept: f64,
    pub bins: usize,
    pub d_lo: u64,
    pub d_hi: u64,
    /// Regressor is `ln(d + offset)`.
    pub offset: f64,
}

/// Negated least-squares slope of `ln count` on `ln d` over nonzero bins
/// in `[d_lo, d_hi]`.
pub fn power_law_exponent(h: &DegreeHistogram, d_lo: u64, d_hi: u64) -> Result<PowerLawFit> {
    power_law_exponent_offset(h, d_lo, d_hi, 0.0)
}

/// As [`power_law_exponent`], regressing on `ln(d + offset)`.
pub fn power_law_exponent_offset(
    h: &DegreeHistogram,
    d_lo: u64,
    d_hi: u64,
    offset: f64,
) -> Result<PowerLawFit> {
    if d_lo > d_hi {
        return Err(domain(format!("empty window [{d_lo}, {d_hi}]")));
    }
    let points: Vec<(f64, f64)> = h
        .window(d_lo, d_hi)
        .filter(|&(d, _)| d as f64 + offset > 0.0)
        .map(|(d, c)| ((d as f64 + offset).ln(), (c as f64).ln()))
        .collect();
    if points.len() < MIN_FIT_BINS {
        return Err(Error::InsufficientData(format!(
            "{} nonzero bins in [{d_lo}, {d_hi}], need {MIN_FIT_BINS}",
            points.len()
        )));
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let std_error = (sse / (k - 2.0) / sxx).sqrt();
    Ok(PowerLawFit {
        gamma: -slope,
        std_error,
        intercept,
        bins: points.len(),
        d_lo,
        d_hi,
        offset,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HillEstimate {
    pub gamma: f64,
    pub std_error: f64,
    pub d_min: u64,
    pub tail_size: u64,
}

/// Discrete Hill estimator `1 + N / Σ ln(d_i / (d_min - 1/2))` over
/// vertices with `d_i >= d_min`.
pub fn hill_exponent(h: &DegreeHistogram, d_min: u64) -> Result<HillEstimate> {
    if d_min == 0 {
        return Err(domain("d_min must be at least 1"));
    }
    let base = d_min as f64 - 0.5;
    let (mut tail, mut log_sum) = (0u64, 0.0f64);
    for (&d, &c) in h.counts.range(d_min..) {
        tail += c;
        log_sum += c as f64 * (d as f64 / base).ln();
    }
    if tail < 2 || log_sum <= 0.0 {
        return Err(Error::InsufficientData(format!(
            "{tail} vertices at degree >= {d_min}"
        )));
    }
    let gamma = 1.0 + tail as f64 / log_sum;
    Ok(HillEstimate {
        gamma,
        std_error: (gamma - 1.0) / (tail as f64).sqrt(),
        d_min,
        tail_size: tail,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::analysis::histogram::DegreeMode;

    fn synthetic(c: f64, gamma: f64, lo: u64, hi: u64) -> DegreeHistogram {
        let counts: BTreeMap<u64, u64> = (lo..=hi)
            .map(|d| (d, (c * (d as f64).powf(-gamma)).floor() as u64))
            .collect();
        DegreeHistogram::from_counts(DegreeMode::InDegree, counts, 1)
    }

    #[test]
    fn recovers_cubic_law() {
        let fit = power_law_exponent(&synthetic(1e9, 3.0, 5, 50), 5, 50).unwrap();
        assert!((fit.gamma - 3.0).abs() <= 0.05);
        assert_eq!(fit.bins, 46);
    }

    #[test]
    fn too_few_bins() {
        let h = DegreeHistogram::from_counts(DegreeMode::InDegree, BTreeMap::from([(7, 10)]), 1);
        assert!(matches!(power_law_exponent(&h, 5, 50), Err(Error::InsufficientData(_))));
        let h = synthetic(1e6, 3.0, 5, 8);
        assert!(power_law_exponent(&h, 5, 50).is_err());
        assert!(power_law_exponent(&h, 9, 5).is_err());
    }

    #[test]
    fn zero_bins_are_skipped() {
        let mut h = synthetic(1e9, 2.0, 1, 40);
        h.counts.retain(|d, _| d % 3 != 0);
        let fit = power_law_exponent(&h, 1, 40).unwrap();
        assert!((fit.gamma - 2.0).abs() < 1e-3);
    }

    #[test]
    fn offset_shifts_regressor() {
        // counts ∝ (d + 2)^-3 are exactly cubic in d + 2.
        let counts: BTreeMap<u64, u64> = (5..=50u64)
            .map(|d| (d, (1e12 * ((d + 2) as f64).powi(-3)).round() as u64))
            .collect();
        let h = DegreeHistogram::from_counts(DegreeMode::InDegree, counts, 1);
        let plain = power_law_exponent(&h, 5, 50).unwrap();
        let shifted = power_law_exponent_offset(&h, 5, 50, 2.0).unwrap();
        assert!((shifted.gamma - 3.0).abs() < 1e-6);
        assert!(plain.gamma < 2.8);
    }

    #[test]
    fn hill_on_continuous_like_tail() {
        let h = synthetic(1e12, 3.0, 1, 100_000);
        let est = hill_exponent(&h, 10).unwrap();
        assert!((est.gamma - 3.0).abs() < 0.1, "{}", est.gamma);
        assert!(hill_exponent(&h, 0).is_err());
    }
}
