//! Exhaustive ground truth for small graphs: exact `(k, l)`-colorability,
//! the least feasible palette, labeled enumeration of connected graphs, and
//! an outerplanarity test by forbidden minors.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::Graph;
use crate::incidence::{enumerate_incidences, Incidence, IncidenceColoring};

/// Default limit on the number of incidences the backtracking search accepts.
pub const DEFAULT_INCIDENCE_CAP: usize = 40;
/// Largest vertex count accepted by [`is_outerplanar_exact`].
pub const MAX_MINOR_TEST_VERTICES: usize = 10;
pub const MIN_ENUMERATION_N: usize = 2;
pub const MAX_ENUMERATION_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {incidences} incidences, above the cap of {cap}")]
    TooLarge { incidences: usize, cap: usize },
    #[error("graph has no edges")]
    NoEdges,
    #[error("enumeration supports {MIN_ENUMERATION_N} <= n <= {MAX_ENUMERATION_N}, got {0}")]
    EnumerationRange(usize),
    #[error("minor test supports at most {MAX_MINOR_TEST_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("k and l must be at least 1")]
    BadParameters,
}

/// Searches for a total, valid `(k, l)`-incidence coloring of `g`.
pub fn exists_kl_coloring(
    g: &Graph,
    k: usize,
    l: usize,
) -> Result<Option<IncidenceColoring>, OracleError> {
    exists_kl_coloring_with_cap(g, k, l, DEFAULT_INCIDENCE_CAP)
}

pub fn exists_kl_coloring_with_cap(
    g: &Graph,
    k: usize,
    l: usize,
    cap: usize,
) -> Result<Option<IncidenceColoring>, OracleError> {
    if k == 0 || l == 0 {
        return Err(OracleError::BadParameters);
    }
    let mut order = enumerate_incidences(g);
    if order.len() > cap {
        return Err(OracleError::TooLarge {
            incidences: order.len(),
            cap,
        });
    }
    // fail-first: most constrained incidences go first
    order.sort_by_key(|&a| (std::cmp::Reverse(order_degree(g, a)), a));

    let mut c = IncidenceColoring::new(k, l);
    if backtrack(g, &order, &mut c, 0) {
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

/// Number of incidences of `g` adjacent to `a`.
fn order_degree(g: &Graph, a: Incidence) -> usize {
    // same tail: deg(t) - 1; into tail: deg(t); out of head except (h, t): deg(h) - 1
    g.degree(a.tail) * 2 - 1 + g.degree(a.head) - 1
}

// Colors are interchangeable, so a fresh color is only ever the next unused
// one.
fn backtrack(g: &Graph, order: &[Incidence], c: &mut IncidenceColoring, used: usize) -> bool {
    let Some((&inc, rest)) = order.split_first() else {
        return true;
    };
    for color in c.feasible_colors(g, inc) {
        if color > used {
            break;
        }
        c.assign(inc, color);
        if backtrack(g, rest, c, used.max(color + 1)) {
            return true;
        }
    }
    c.unassign(inc);
    false
}

/// Least `k` admitting a `(k, l)`-incidence coloring. The search starts at
/// `Δ + 1`: a vertex of maximum degree has `Δ` outgoing incidences and one
/// incoming incidence that are pairwise adjacent.
pub fn min_incidence_k(g: &Graph, l: usize) -> Result<usize, OracleError> {
    min_incidence_k_with_cap(g, l, DEFAULT_INCIDENCE_CAP)
}

pub fn min_incidence_k_with_cap(g: &Graph, l: usize, cap: usize) -> Result<usize, OracleError> {
    if g.edge_count() == 0 {
        return Err(OracleError::NoEdges);
    }
    let mut k = g.max_degree() + 1;
    // With one private color per head vertex every graph is colorable.
    let ceiling = k.max(g.vertex_count());
    while k <= ceiling {
        if exists_kl_coloring_with_cap(g, k, l, cap)?.is_some() {
            return Ok(k);
        }
        k += 1;
    }
    unreachable!("{ceiling} colors always suffice")
}

// ---------------------------------------------------------------------------
// Enumeration

/// All connected simple graphs on the labeled vertex set `0..n`, each once,
/// in increasing order of their edge bitmask.
#[derive(Debug, Clone)]
pub struct EnumerationStream {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
    end: u64,
}

impl EnumerationStream {
    pub fn n(&self) -> usize {
        self.n
    }

    fn connected(&self, mask: u64) -> bool {
        let mut rows = [0u32; MAX_ENUMERATION_N];
        for (i, &(a, b)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rows[a] |= 1 << b;
                rows[b] |= 1 << a;
            }
        }
        let all = (1u32 << self.n) - 1;
        let mut reached = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = rows[v] & !reached;
            reached |= fresh;
            frontier |= fresh;
        }
        reached == all
    }
}

impl Iterator for EnumerationStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next_mask < self.end {
            let mask = self.next_mask;
            self.next_mask += 1;
            if self.connected(mask) {
                let edges = self
                    .pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e);
                return Some(Graph::build(0..self.n, edges).expect("valid labels"));
            }
        }
        None
    }
}

pub fn enumerate_connected_graphs(n: usize) -> Result<EnumerationStream, OracleError> {
    if !(MIN_ENUMERATION_N..=MAX_ENUMERATION_N).contains(&n) {
        return Err(OracleError::EnumerationRange(n));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    Ok(EnumerationStream {
        n,
        end: 1 << pairs.len(),
        pairs,
        next_mask: 0,
    })
}

// ---------------------------------------------------------------------------
// Outerplanarity

/// Bit rows of a graph on at most `MAX_MINOR_TEST_VERTICES` vertices.
type Rows = [u16; MAX_MINOR_TEST_VERTICES];

/// Decides outerplanarity as the absence of `K4` and `K2,3` minors.
///
/// A graph has a minor `H` exactly when some contraction of connected vertex
/// sets contains `H` as a subgraph, so the search contracts edges one at a
/// time and memoizes every graph it has already classified. The memo is kept
/// across calls, which makes bulk classification of small graphs cheap.
#[derive(Debug, Default)]
pub struct OuterplanarityOracle {
    memo: HashMap<(u8, u64), bool>,
}

impl OuterplanarityOracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_outerplanar(&mut self, g: &Graph) -> Result<bool, OracleError> {
        let n = g.vertex_count();
        if n > MAX_MINOR_TEST_VERTICES {
            return Err(OracleError::TooManyVertices(n));
        }
        let ids: Vec<_> = g.vertices().collect();
        let mut rows: Rows = [0; MAX_MINOR_TEST_VERTICES];
        for (i, &v) in ids.iter().enumerate() {
            for &w in g.neighbors(v) {
                let j = ids.binary_search(&w).expect("neighbor is a vertex");
                rows[i] |= 1 << j;
            }
        }
        Ok(!self.has_obstruction(rows, n))
    }

    fn has_obstruction(&mut self, rows: Rows, n: usize) -> bool {
        let (rows, n) = prune_low_degree(rows, n);
        if n < 4 {
            return false;
        }
        let key = (n as u8, pack(&rows, n));
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        let mut found = contains_obstruction_subgraph(&rows, n);
        'edges: for a in 0..n {
            if found {
                break;
            }
            for b in a + 1..n {
                if rows[a] >> b & 1 == 1 {
                    let (r, m) = contract(rows, n, a, b);
                    if self.has_obstruction(r, m) {
                        found = true;
                        break 'edges;
                    }
                }
            }
        }
        self.memo.insert(key, found);
        found
    }
}

/// `true` iff `g` has neither a `K4` nor a `K2,3` minor.
pub fn is_outerplanar_exact(g: &Graph) -> Result<bool, OracleError> {
    OuterplanarityOracle::new().is_outerplanar(g)
}

fn pack(rows: &Rows, n: usize) -> u64 {
    let mut key = 0u64;
    let mut bit = 0;
    for (a, row) in rows.iter().enumerate().take(n) {
        for b in a + 1..n {
            key |= u64::from(row >> b & 1) << bit;
            bit += 1;
        }
    }
    key
}

// Vertices of degree at most 1 never belong to a K4 or K2,3 minor model in an
// essential way, so they are dropped and the rest relabeled.
fn prune_low_degree(mut rows: Rows, mut n: usize) -> (Rows, usize) {
    while let Some(v) = (0..n).find(|&v| rows[v].count_ones() <= 1) {
        (rows, n) = delete_vertex(rows, n, v);
    }
    (rows, n)
}

fn delete_vertex(rows: Rows, n: usize, v: usize) -> (Rows, usize) {
    let mut out: Rows = [0; MAX_MINOR_TEST_VERTICES];
    let low = (1u16 << v) - 1;
    let mut j = 0;
    for (i, &row) in rows.iter().enumerate().take(n) {
        if i == v {
            continue;
        }
        out[j] = (row & low) | ((row >> 1) & !low);
        j += 1;
    }
    (out, n - 1)
}

/// Merges `b` into `a` and deletes `b`.
fn contract(mut rows: Rows, n: usize, a: usize, b: usize) -> (Rows, usize) {
    let merged = (rows[a] | rows[b]) & !(1 << a) & !(1 << b);
    for (i, row) in rows.iter_mut().enumerate().take(n) {
        if merged >> i & 1 == 1 {
            *row |= 1 << a;
        }
    }
    rows[a] = merged;
    delete_vertex(rows, n, b)
}

fn contains_obstruction_subgraph(rows: &Rows, n: usize) -> bool {
    for a in 0..n {
        for b in a + 1..n {
            let common = rows[a] & rows[b];
            if common.count_ones() >= 3 {
                return true; // K2,3 on {a, b} and three common neighbors
            }
            if rows[a] >> b & 1 == 1 {
                let mut rest = common;
                while rest != 0 {
                    let c = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if rows[c] & common != 0 {
                        return true; // K4
                    }
                }
            }
        }
    }
    false
}
