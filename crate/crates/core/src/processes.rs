//! Generators for the multiple-connection preferential-attachment graph
//! `G_m^(n)`.
//!
//! Three constructions are provided and agree in distribution:
//!
//! * [`Variant::Sequential`]: the one-edge attachment process run on `mn`
//!   primed vertices, collapsed in blocks of `m`. Targets are drawn from a
//!   flat endpoint list, so every edge costs O(1).
//! * [`Variant::Urn`]: the stick-breaking (Pólya urn) form of the same
//!   process. Primed vertex `j` gets a stick fraction
//!   `alpha_j ~ Beta(1, 2j - 2)` and sends its edge to `kappa(U * l_j)`,
//!   itself included.
//! * [`Variant::Pairing`]: a uniform `(mn)`-pairing mapped through Ψ and
//!   collapsed.
//!
//! [`Variant::UrnLiteral`] keeps the block-level urn with
//! `alpha_k ~ Beta(m, (2k - 3)m)` and targets `kappa(U * l_{k-1})`. It never
//! produces a loop at `v_k` for `k >= 2`, so it does not reproduce the
//! attachment process at small `n`; it is retained for comparison.

use rand::Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lcd::{pairing_to_graph, sample_pairing, LcdGraph};
use crate::rng::{stream, StreamRng};

/// Default cap on the number of points materialised by the pairing generator.
pub const PAIRING_POINT_CAP: usize = 1 << 27;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Sequential,
    Urn,
    UrnLiteral,
    Pairing,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Sequential,
        Variant::Urn,
        Variant::UrnLiteral,
        Variant::Pairing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Sequential => "sequential",
            Variant::Urn => "urn",
            Variant::UrnLiteral => "urn_literal",
            Variant::Pairing => "pairing",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "sequential" => Ok(Variant::Sequential),
            "urn" => Ok(Variant::Urn),
            "urn_literal" => Ok(Variant::UrnLiteral),
            "pairing" => Ok(Variant::Pairing),
            other => Err(Error::Parse(format!("unknown variant '{other}'"))),
        }
    }
}

/// One generation run: `n` vertices, `m` edges per vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessParams {
    pub n: usize,
    pub m: usize,
    pub variant: Variant,
    pub master_seed: u64,
}

impl ProcessParams {
    pub fn new(n: usize, m: usize, variant: Variant, master_seed: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(domain(format!("need n >= 1 and m >= 1, got n = {n}, m = {m}")));
        }
        n.checked_mul(m)
            .filter(|&e| e < u32::MAX as usize)
            .ok_or(Error::Capacity {
                what: "edges",
                value: (n as u64).saturating_mul(m as u64),
                cap: u32::MAX as u64 - 1,
            })?;
        Ok(Self {
            n,
            m,
            variant,
            master_seed,
        })
    }

    /// The random stream of replicate `index`.
    pub fn rng(&self, index: u64) -> StreamRng {
        stream(self.master_seed, index)
    }
}

/// Generates replicate `index` of `params`.
pub fn generate(params: &ProcessParams, index: u64) -> Result<LcdGraph> {
    let mut rng = params.rng(index);
    generate_with(params.n, params.m, params.variant, &mut rng)
}

pub fn generate_with<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    variant: Variant,
    rng: &mut R,
) -> Result<LcdGraph> {
    match variant {
        Variant::Sequential => generate_multi(n, m, rng),
        Variant::Urn => generate_urn(n, m, rng),
        Variant::UrnLiteral => generate_urn_literal(n, m, rng),
        Variant::Pairing => generate_via_pairing(n, m, PAIRING_POINT_CAP, rng),
    }
}

fn check_size(n: usize, m: usize) -> Result<usize> {
    ProcessParams::new(n, m, Variant::Sequential, 0).map(|p| p.n * p.m)
}

/// `G_1^(n)`: start from one vertex with a loop; vertex `t` then attaches to
/// `v_s` with probability `deg(v_s) / (2t - 1)` or to itself with
/// probability `1 / (2t - 1)`.
pub fn generate_one_connection<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<LcdGraph> {
    generate_multi(n, 1, rng)
}

/// `G_m^(n)`: the one-edge process on `mn` primed vertices, with primed
/// vertices `(k-1)m+1 ..= km` identified into `v_k`.
pub fn generate_multi<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<LcdGraph> {
    let total = check_size(n, m)?;
    let m32 = m as u32;
    // Both endpoints of every primed edge so far; a uniform entry is a
    // degree-proportional choice of primed vertex.
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * total);
    let mut edges = Vec::with_capacity(total);
    for t in 0..total as u32 {
        // One extra slot stands for the new vertex's own pending endpoint.
        let pick = rng.random_range(0..endpoints.len() as u64 + 1) as usize;
        let target = endpoints.get(pick).copied().unwrap_or(t);
        endpoints.push(t);
        endpoints.push(target);
        edges.push((t / m32, target / m32));
    }
    LcdGraph::from_edges(n, edges)
}

/// Stick-breaking weights `alpha_k`, `Phi_k = alpha_k * prod_{j>k} (1 - alpha_j)`
/// and the running sums `l_k = Phi_1 + ... + Phi_k`. Since `alpha_1 = 1`,
/// `l_k = prod_{j>k} (1 - alpha_j)` and `l_n = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct UrnWeights {
    alpha: Vec<f64>,
    phi: Vec<f64>,
    l: Vec<f64>,
}

impl UrnWeights {
    pub fn from_alpha(alpha: Vec<f64>) -> Result<Self> {
        let complement = alpha.iter().map(|a| 1.0 - a).collect();
        Self::from_parts(alpha, complement)
    }

    // `complement[k]` is `1 - alpha[k]`, passed separately so it can be
    // computed without cancellation when alpha is close to 1.
    fn from_parts(alpha: Vec<f64>, complement: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(domain("urn weights need at least one vertex"));
        }
        if alpha[0] != 1.0 {
            return Err(domain("alpha_1 must be 1"));
        }
        if let Some(a) = alpha.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(domain(format!("alpha = {a} outside [0, 1]")));
        }
        let n = alpha.len();
        // Backward log-product keeps small prefixes away from underflow.
        let mut l = vec![0.0; n];
        let mut log_tail = 0.0f64;
        for k in (0..n).rev() {
            l[k] = log_tail.exp();
            log_tail += complement[k].ln();
        }
        let phi = alpha.iter().zip(&l).map(|(a, lk)| a * lk).collect();
        Ok(Self { alpha, phi, l })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn l(&self) -> &[f64] {
        &self.l
    }

    /// `l_k` for `0 <= k <= n`, with `l_0 = 0`.
    pub fn l_at(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.l[k - 1]
        }
    }
}

fn beta_via_gammas<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> (f64, f64) {
    let x = Gamma::new(a, 1.0).expect("positive shape").sample(rng);
    let y = Gamma::new(b, 1.0).expect("positive shape").sample(rng);
    let s = x + y;
    (x / s, y / s)
}

fn weights_from_shapes<R: Rng + ?Sized>(
    n: usize,
    shapes: impl Fn(usize) -> (f64, f64),
    rng: &mut R,
) -> Result<UrnWeights> {
    let mut alpha = Vec::with_capacity(n);
    let mut complement = Vec::with_capacity(n);
    alpha.push(1.0);
    complement.push(0.0);
    for k in 2..=n {
        let (a, b) = shapes(k);
        let (x, y) = beta_via_gammas(a, b, rng);
        alpha.push(x);
        complement.push(y);
    }
    UrnWeights::from_parts(alpha, complement)
}

/// Block-level urn weights: `alpha_1 = 1`, `alpha_k ~ Beta(m, (2k - 3)m)`.
pub fn build_urn_weights<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<UrnWeights> {
    check_size(n, m)?;
    let m = m as f64;
    weights_from_shapes(n, |k| (m, (2 * k - 3) as f64 * m), rng)
}

/// Weights that reproduce the one-edge attachment process exactly:
/// `alpha_1 = 1`, `alpha_j ~ Beta(1, 2j - 2)`. These are the gaps between the
/// sorted maxima of `points` independent pairs of uniforms.
pub fn build_lcd_urn_weights<R: Rng + ?Sized>(points: usize, rng: &mut R) -> Result<UrnWeights> {
    check_size(points, 1)?;
    weights_from_shapes(points, |j| (1.0, (2 * j - 2) as f64), rng)
}

/// `kappa(a) = min { k : l_k >= a }`, 1-based.
pub fn kappa(w: &UrnWeights, a: f64) -> Result<usize> {
    let top = *w.l.last().expect("non-empty");
    if !(0.0..=top).contains(&a) {
        return Err(domain(format!("a = {a} outside [0, {top}]")));
    }
    Ok(w.l.partition_point(|&lk| lk < a) + 1)
}

/// Pólya-urn construction of `G_m^(n)`, exact in distribution.
pub fn generate_urn<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<LcdGraph> {
    let total = check_size(n, m)?;
    let w = build_lcd_urn_weights(total, rng)?;
    let m32 = m as u32;
    let mut edges = Vec::with_capacity(total);
    for j in 1..=total {
        let u: f64 = rng.random();
        let target = kappa(&w, u * w.l_at(j))? as u32 - 1;
        edges.push(((j as u32 - 1) / m32, target / m32));
    }
    LcdGraph::from_edges(n, edges)
}

/// Block-level urn with `alpha_k ~ Beta(m, (2k - 3)m)`: each of the `m` edges
/// of `v_k` goes to `kappa(U * l_{k-1})`, so `v_1` carries `m` loops and later
/// vertices never attach to themselves.
pub fn generate_urn_literal<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<LcdGraph> {
    let total = check_size(n, m)?;
    let w = build_urn_weights(n, m, rng)?;
    let mut edges = Vec::with_capacity(total);
    for k in 1..=n {
        for _ in 0..m {
            let u: f64 = rng.random();
            let target = kappa(&w, u * w.l_at(k - 1))? as u32 - 1;
            edges.push((k as u32 - 1, target));
        }
    }
    LcdGraph::from_edges(n, edges)
}

/// Uniform `(mn)`-pairing through Ψ, collapsed in blocks of `m`.
pub fn generate_via_pairing<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    point_cap: usize,
    rng: &mut R,
) -> Result<LcdGraph> {
    let total = check_size(n, m)?;
    if 2 * total > point_cap {
        return Err(Error::Capacity {
            what: "pairing points",
            value: 2 * total as u64,
            cap: point_cap as u64,
        });
    }
    let p = sample_pairing(total, rng)?;
    let g = pairing_to_graph(&p);
    if m == 1 {
        Ok(g)
    } else {
        g.collapse(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_is_a_loop_for_every_variant() {
        for variant in Variant::ALL {
            let g = generate(&ProcessParams::new(1, 1, variant, 3).unwrap(), 0).unwrap();
            assert_eq!(g.edges(), &[(0, 0)], "{variant}");
        }
    }

    #[test]
    fn two_edge_single_vertex_is_two_loops() {
        for variant in Variant::ALL {
            for seed in 0..20 {
                let g = generate(&ProcessParams::new(1, 2, variant, seed).unwrap(), 0).unwrap();
                assert_eq!(g.edges(), &[(0, 0), (0, 0)]);
                assert_eq!(g.total_degree(0), 4);
            }
        }
    }

    #[test]
    fn multi_with_m1_matches_one_connection_seed_for_seed() {
        for seed in 0..10 {
            let a = generate_one_connection(200, &mut stream(seed, 0)).unwrap();
            let b = generate_multi(200, 1, &mut stream(seed, 0)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn handshake_and_out_degrees() {
        for variant in Variant::ALL {
            let p = ProcessParams::new(1000, 3, variant, 11).unwrap();
            let g = generate(&p, 0).unwrap();
            assert_eq!(g.edge_count(), 3000);
            let total: u64 = g.total_degrees().iter().map(|&d| d as u64).sum();
            assert_eq!(total, 6000);
            assert!(g.out_degrees().iter().all(|&d| d == 3), "{variant}");
        }
    }

    #[test]
    fn large_multi_handshake() {
        let g = generate_multi(100_000, 2, &mut stream(5, 0)).unwrap();
        let total: u64 = g.total_degrees().iter().map(|&d| d as u64).sum();
        assert_eq!(total, 400_000);
    }

    #[test]
    fn generation_is_deterministic() {
        for variant in Variant::ALL {
            let p = ProcessParams::new(500, 2, variant, 99).unwrap();
            assert_eq!(generate(&p, 4).unwrap(), generate(&p, 4).unwrap());
            assert_ne!(generate(&p, 4).unwrap(), generate(&p, 5).unwrap());
        }
    }

    #[test]
    fn invalid_params() {
        assert!(ProcessParams::new(0, 1, Variant::Urn, 0).is_err());
        assert!(ProcessParams::new(1, 0, Variant::Urn, 0).is_err());
        assert!(matches!(
            generate_via_pairing(100, 2, 300, &mut stream(0, 0)),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn single_vertex_weights() {
        let w = build_urn_weights(1, 3, &mut stream(0, 0)).unwrap();
        assert_eq!(w.alpha(), &[1.0]);
        assert_eq!(w.phi(), &[1.0]);
        assert_eq!(w.l(), &[1.0]);
    }

    #[test]
    fn weight_invariants() {
        let mut rng = stream(8, 0);
        for (n, m) in [(50, 1), (2000, 3)] {
            let w = build_urn_weights(n, m, &mut rng).unwrap();
            assert_eq!(w.alpha()[0], 1.0);
            assert!(w.l().windows(2).all(|p| p[0] <= p[1]));
            let sum: f64 = w.phi().iter().sum();
            assert!((sum - w.l()[n - 1]).abs() < 1e-9);
            // Phi_k against a direct product for a few k.
            for k in [0, n / 3, n - 1] {
                let prod: f64 = w.alpha()[k + 1..].iter().map(|a| 1.0 - a).product();
                assert!((w.phi()[k] - w.alpha()[k] * prod).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn second_stick_fraction_has_beta_mean() {
        for m in [1usize, 2, 4] {
            let mut rng = stream(21, m as u64);
            let draws = 100_000;
            let mean = (0..draws)
                .map(|_| build_urn_weights(2, m, &mut rng).unwrap().alpha()[1])
                .sum::<f64>()
                / draws as f64;
            assert!((mean - 0.5).abs() < 0.01, "m = {m}: mean {mean}");
        }
    }

    #[test]
    fn kappa_is_min_index() {
        let w = UrnWeights {
            alpha: vec![1.0, 0.6, 0.5],
            phi: vec![0.2, 0.3, 0.5],
            l: vec![0.2, 0.5, 1.0],
        };
        assert_eq!(kappa(&w, 0.0).unwrap(), 1);
        assert_eq!(kappa(&w, 0.2).unwrap(), 1);
        assert_eq!(kappa(&w, 0.4).unwrap(), 2);
        assert_eq!(kappa(&w, 1.0).unwrap(), 3);
        assert!(kappa(&w, 1.5).is_err());
        assert!(kappa(&w, -0.1).is_err());

        let built = UrnWeights::from_alpha(vec![1.0, 0.6, 0.5]).unwrap();
        for (a, b) in built.l().iter().zip([0.2, 0.5, 1.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn literal_urn_never_loops_after_first_vertex() {
        let g = generate_urn_literal(300, 2, &mut stream(4, 0)).unwrap();
        for &(s, t) in g.edges() {
            assert!(s == 0 || t < s, "edge ({s}, {t})");
        }
    }
}
