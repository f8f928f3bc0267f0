use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// `M = n^beta / ln n`.
pub fn threshold_m(n: u64, beta: f64) -> f64 {
    let n = n as f64;
    n.powf(beta) / n.ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum S1Case {
    /// `beta <= 1 - 2 alpha`.
    Case1,
    /// `beta > 1 - 2 alpha` and `d < n^((1 - beta) / 2)`.
    Case2,
    /// `n^((1 - beta) / 2) <= d <= n^alpha`.
    Case3,
    /// None of the above, `d > n^alpha`.
    Outside,
}

impl S1Case {
    pub fn classify(n: u64, d: u64, alpha: f64, beta: f64) -> Self {
        let nf = n as f64;
        let lower = nf.powf((1.0 - beta) / 2.0);
        if beta <= 1.0 - 2.0 * alpha {
            S1Case::Case1
        } else if (d as f64) < lower {
            S1Case::Case2
        } else if (d as f64) <= nf.powf(alpha) {
            S1Case::Case3
        } else {
            S1Case::Outside
        }
    }
}

/// The order the case claims for `Z(n, alpha, beta)`:
/// `n^(3 beta / 2 - 1/2) / ln^(3/2) n` in the first two cases and `n / d^3`
/// in the third.
pub fn claimed_order(case: S1Case, n: u64, d: u64, beta: f64) -> Option<f64> {
    let nf = n as f64;
    match case {
        S1Case::Case1 | S1Case::Case2 => Some(nf.powf(1.5 * beta - 0.5) / nf.ln().powf(1.5)),
        S1Case::Case3 if d > 0 => Some(nf / (d as f64).powi(3)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct S1Result {
    pub n: u64,
    pub d: u64,
    pub alpha: f64,
    pub beta: f64,
    pub k_lo: u64,
    pub k_hi: u64,
    pub m_upper: f64,
    pub value: f64,
    pub case: S1Case,
    pub claimed: Option<f64>,
    /// `value / claimed`.
    pub ratio: Option<f64>,
}

/// `Z(n, alpha, beta) = Σ_{k = ln²n}^{M} sqrt(k/n) (1 - sqrt(k/n))^d`, summed
/// directly, with its case and claimed order.
pub fn sum_s1(n: u64, d: u64, alpha: f64, beta: f64) -> Result<S1Result> {
    if n < 3 {
        return Err(domain(format!("n = {n} is too small")));
    }
    if !(0.0..=1.0).contains(&alpha) || !(beta > 0.0 && beta <= 1.0) {
        return Err(domain(format!("need alpha in [0, 1] and beta in (0, 1], got {alpha}, {beta}")));
    }
    let nf = n as f64;
    let m_upper = threshold_m(n, beta);
    let log2 = nf.ln().powi(2);
    if m_upper <= log2 {
        return Err(domain(format!("M = {m_upper} does not exceed ln^2 n = {log2}")));
    }
    if m_upper > nf {
        return Err(domain(format!("M = {m_upper} exceeds n = {n}")));
    }
    let k_lo = log2.ceil() as u64;
    let k_hi = m_upper.floor() as u64;
    let value: f64 = (k_lo..=k_hi)
        .map(|k| {
            let x = (k as f64 / nf).sqrt();
            x * (d as f64 * (-x).ln_1p()).exp()
        })
        .sum();
    let case = S1Case::classify(n, d, alpha, beta);
    let claimed = claimed_order(case, n, d, beta);
    Ok(S1Result {
        n,
        d,
        alpha,
        beta,
        k_lo,
        k_hi,
        m_upper,
        value,
        case,
        claimed,
        ratio: claimed.map(|c| value / c),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct S2Bound {
    pub m_upper: f64,
    /// `M^(d+1) / (2^d n^d)`, or 0 when `d > M`.
    pub bound: f64,
    /// `2n / d^3`.
    pub coarse: f64,
    pub holds: bool,
}

/// The bound chain for the late-vertex sum `S_2`.
pub fn sum_s2_bound(n: u64, d: u64, beta: f64) -> Result<S2Bound> {
    if d == 0 {
        return Err(domain("sum_s2_bound needs d >= 1"));
    }
    if n < 2 {
        return Err(domain(format!("n = {n} is too small")));
    }
    let nf = n as f64;
    let m_upper = threshold_m(n, beta);
    let df = d as f64;
    let bound = if df > m_upper {
        0.0
    } else {
        ((df + 1.0) * m_upper.ln() - df * std::f64::consts::LN_2 - df * nf.ln()).exp()
    };
    let coarse = 2.0 * nf / df.powi(3);
    Ok(S2Bound {
        m_upper,
        bound,
        coarse,
        holds: bound <= coarse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_power_sum() {
        for n in [1_000_000u64, 10_000_000] {
            let r = sum_s1(n, 0, 0.1, 0.8).unwrap();
            let approx = 2.0 / 3.0 * r.m_upper.powf(1.5) / (n as f64).sqrt();
            assert!((r.value / approx - 1.0).abs() < 0.01, "{} vs {approx}", r.value);
        }
    }

    #[test]
    fn infeasible_threshold() {
        assert!(sum_s1(1_000_000, 3, 0.1, 0.5).is_err());
        assert!(sum_s1(1_000_000, 3, 0.1, 0.0).is_err());
    }

    #[test]
    fn classification() {
        let n = 1_000_000;
        assert_eq!(S1Case::classify(n, 3, 0.1, 0.75), S1Case::Case1);
        assert_eq!(S1Case::classify(n, 1, 0.1, 0.9), S1Case::Case2);
        assert_eq!(S1Case::classify(n, 63, 0.3, 0.9), S1Case::Case3);
        assert_eq!(S1Case::classify(n, 1000, 0.3, 0.9), S1Case::Outside);
    }

    #[test]
    fn s2_examples() {
        let b = sum_s2_bound(1_000_000, 10, 0.875).unwrap();
        assert!(b.holds && b.bound > 0.0);
        let b = sum_s2_bound(1_000_000, 1, 0.5).unwrap();
        assert!((b.bound - b.m_upper.powi(2) / 2e6).abs() < 1e-9 * b.bound);
        assert!(b.bound <= 2e6);
        let b = sum_s2_bound(1000, 10_000, 0.5).unwrap();
        assert_eq!(b.bound, 0.0);
        assert!(sum_s2_bound(1000, 0, 0.5).is_err());
    }
}
