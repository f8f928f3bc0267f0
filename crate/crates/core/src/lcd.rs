//! Linearized chord diagrams.
//!
//! An n-pairing partitions the points `1..=2n` into `n` chords. Scanning the
//! points left to right and closing a vertex at every right endpoint turns a
//! pairing into a directed multigraph on `n` vertices: each chord becomes an
//! edge from the vertex holding its right endpoint to the vertex holding its
//! left endpoint. A uniformly random pairing yields exactly the one-edge
//! preferential-attachment graph.
//!
//! Points are numbered from 1 in the public API. Vertices are stored
//! 0-based, so vertex index `i` is `v_{i+1}`.

use rand::Rng;

use crate::error::{domain, Error, Result};

/// Largest `n` accepted by [`enumerate_pairings`]; `15!! = 2_027_025` pairings.
pub const ENUMERATION_CAP: usize = 8;

const UNPAIRED: u32 = u32::MAX;

/// A perfect matching of the points `1..=2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    // 0-based: partner[x] is the point matched with x.
    partner: Vec<u32>,
}

impl Pairing {
    /// Builds a pairing from 1-indexed chords.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(domain("a pairing needs at least one chord"));
        }
        let points = 2 * pairs.len();
        let mut partner = vec![UNPAIRED; points];
        for &(a, b) in pairs {
            for p in [a, b] {
                if p == 0 || p as usize > points {
                    return Err(domain(format!("point {p} outside 1..={points}")));
                }
            }
            let (a, b) = (a as usize - 1, b as usize - 1);
            if a == b || partner[a] != UNPAIRED || partner[b] != UNPAIRED {
                return Err(domain(format!("points {} and {} cannot be paired", a + 1, b + 1)));
            }
            partner[a] = b as u32;
            partner[b] = a as u32;
        }
        Self::from_partner(partner)
    }

    /// Builds a pairing from a 0-based partner table, checking that it is a
    /// fixed-point-free involution.
    pub fn from_partner(partner: Vec<u32>) -> Result<Self> {
        if partner.is_empty() || !partner.len().is_multiple_of(2) {
            return Err(domain("a pairing needs a positive, even number of points"));
        }
        for (x, &y) in partner.iter().enumerate() {
            let y = y as usize;
            if y >= partner.len() || y == x || partner[y] as usize != x {
                return Err(domain(format!("point {} is not properly paired", x + 1)));
            }
        }
        Ok(Self { partner })
    }

    /// Number of chords.
    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    /// Partner of a 1-indexed point.
    pub fn partner(&self, point: u32) -> u32 {
        self.partner[point as usize - 1] + 1
    }

    /// Whether the 1-indexed point closes its chord.
    pub fn is_right_endpoint(&self, point: u32) -> bool {
        self.partner(point) < point
    }

    /// Chords as `(left, right)`, 1-indexed, ordered by left endpoint.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(x, &y)| (x as u32) < y)
            .map(|(x, &y)| (x as u32 + 1, y + 1))
            .collect()
    }

    pub(crate) fn partner_table(&self) -> &[u32] {
        &self.partner
    }
}

/// A directed multigraph with loops and per-vertex degree records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcdGraph {
    n_vertices: usize,
    // (source, target), 0-based, in creation order.
    edges: Vec<(u32, u32)>,
    in_degree: Vec<u32>,
    out_degree: Vec<u32>,
}

impl LcdGraph {
    pub fn from_edges(n_vertices: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(domain("a graph needs at least one vertex"));
        }
        if n_vertices > u32::MAX as usize {
            return Err(Error::Capacity {
                what: "vertices",
                value: n_vertices as u64,
                cap: u32::MAX as u64,
            });
        }
        let mut in_degree = vec![0u32; n_vertices];
        let mut out_degree = vec![0u32; n_vertices];
        for &(s, t) in &edges {
            if s as usize >= n_vertices || t as usize >= n_vertices {
                return Err(domain(format!("edge ({s}, {t}) leaves the vertex range")));
            }
            out_degree[s as usize] += 1;
            in_degree[t as usize] += 1;
        }
        Ok(Self {
            n_vertices,
            edges,
            in_degree,
            out_degree,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 0-based `(source, target)` pairs, in creation order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn in_degree(&self, v: usize) -> u32 {
        self.in_degree[v]
    }

    pub fn out_degree(&self, v: usize) -> u32 {
        self.out_degree[v]
    }

    /// In-degree plus out-degree; a loop counts once in each.
    pub fn total_degree(&self, v: usize) -> u32 {
        self.in_degree[v] + self.out_degree[v]
    }

    pub fn in_degrees(&self) -> &[u32] {
        &self.in_degree
    }

    pub fn out_degrees(&self) -> &[u32] {
        &self.out_degree
    }

    pub fn total_degrees(&self) -> Vec<u32> {
        self.in_degree
            .iter()
            .zip(&self.out_degree)
            .map(|(i, o)| i + o)
            .collect()
    }

    /// Edge multiset in canonical (sorted) order.
    pub fn sorted_edges(&self) -> Vec<(u32, u32)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Identifies consecutive blocks of `m` vertices into single vertices.
    pub fn collapse(&self, m: usize) -> Result<Self> {
        if m == 0 || !self.n_vertices.is_multiple_of(m) {
            return Err(domain(format!(
                "cannot collapse {} vertices into blocks of {m}",
                self.n_vertices
            )));
        }
        let m32 = m as u32;
        let edges = self.edges.iter().map(|&(s, t)| (s / m32, t / m32)).collect();
        Self::from_edges(self.n_vertices / m, edges)
    }
}

/// All n-pairings, each exactly once, ordered lexicographically by the
/// partner of the smallest unpaired point.
pub fn enumerate_pairings(n: usize) -> Result<Vec<Pairing>> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    if n > ENUMERATION_CAP {
        return Err(Error::Capacity {
            what: "enumeration n",
            value: n as u64,
            cap: ENUMERATION_CAP as u64,
        });
    }
    let mut out = Vec::with_capacity(double_factorial_odd(n));
    let mut partner = vec![UNPAIRED; 2 * n];
    extend_pairings(&mut partner, 0, &mut out);
    Ok(out)
}

fn extend_pairings(partner: &mut [u32], from: usize, out: &mut Vec<Pairing>) {
    let Some(x) = (from..partner.len()).find(|&p| partner[p] == UNPAIRED) else {
        out.push(Pairing {
            partner: partner.to_vec(),
        });
        return;
    };
    for y in x + 1..partner.len() {
        if partner[y] != UNPAIRED {
            continue;
        }
        partner[x] = y as u32;
        partner[y] = x as u32;
        extend_pairings(partner, x + 1, out);
        partner[x] = UNPAIRED;
        partner[y] = UNPAIRED;
    }
}

fn double_factorial_odd(n: usize) -> usize {
    (1..=n).map(|i| 2 * i - 1).product()
}

/// Draws a uniform n-pairing: the smallest unpaired point is matched with a
/// uniform choice among the other unpaired points, then the rest recurses.
pub fn sample_pairing<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Pairing> {
    if n == 0 {
        return Err(domain("n must be positive"));
    }
    let points = 2 * n;
    if points > u32::MAX as usize {
        return Err(Error::Capacity {
            what: "points",
            value: points as u64,
            cap: u32::MAX as u64,
        });
    }
    // pool holds the unpaired points; pos[x] is x's slot in pool.
    let mut pool: Vec<u32> = (0..points as u32).collect();
    let mut pos: Vec<u32> = (0..points as u32).collect();
    let mut partner = vec![UNPAIRED; points];

    let remove = |pool: &mut Vec<u32>, pos: &mut Vec<u32>, x: u32| {
        let slot = pos[x as usize] as usize;
        let last = *pool.last().expect("pool is non-empty");
        pool.swap_remove(slot);
        if last != x {
            pos[last as usize] = slot as u32;
        }
    };

    for x in 0..points as u32 {
        if partner[x as usize] != UNPAIRED {
            continue;
        }
        remove(&mut pool, &mut pos, x);
        let j = rng.random_range(0..pool.len() as u64) as usize;
        let y = pool[j];
        remove(&mut pool, &mut pos, y);
        partner[x as usize] = y;
        partner[y as usize] = x;
    }
    Ok(Pairing { partner })
}

/// The graph Ψ(P): vertices close at right endpoints, chords point from
/// right endpoint to left endpoint. Edges are listed by right endpoint, so
/// edge `i` is the out-edge created by vertex `i`.
pub fn pairing_to_graph(p: &Pairing) -> LcdGraph {
    let partner = p.partner_table();
    let mut vertex_of = vec![0u32; partner.len()];
    let mut edges = Vec::with_capacity(p.n());
    let mut current = 0u32;
    for (x, &y) in partner.iter().enumerate() {
        vertex_of[x] = current;
        if (y as usize) < x {
            edges.push((current, vertex_of[y as usize]));
            current += 1;
        }
    }
    // Every left endpoint has its partner further right, so the last point
    // always closes a vertex and no points are left over.
    assert_eq!(current as usize, p.n(), "trailing left endpoints in pairing");
    LcdGraph::from_edges(p.n(), edges).expect("vertex ids are in range")
}

/// `D_k`: the total degree of the first `k` vertices (`1 <= k <= n`).
pub fn degree_prefix_sum(g: &LcdGraph, k: usize) -> Result<u64> {
    if k == 0 || k > g.n_vertices() {
        return Err(domain(format!("k = {k} outside 1..={}", g.n_vertices())));
    }
    Ok((0..k).map(|v| g.total_degree(v) as u64).sum())
}
