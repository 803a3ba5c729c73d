//! Reducible configurations of connected outerplanar graphs.
//!
//! Every connected outerplanar graph on at least two vertices contains one of
//! four local structures:
//!
//! 1. a vertex of degree 1,
//! 2. two adjacent vertices of degree 2,
//! 3. a degree-2 vertex whose two neighbors are adjacent,
//! 4. a degree-2 cut vertex.
//!
//! [`find_configuration`] searches for them directly. When none is present
//! the graph cannot be outerplanar.

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Configuration {
    /// `u` has degree 1 and neighbor `v`.
    Pendant { u: VertexId, v: VertexId },
    /// `u`, `v` adjacent of degree 2; `w` is `u`'s other neighbor and `x` is
    /// `v`'s other neighbor, `w != x`.
    AdjacentPair {
        u: VertexId,
        v: VertexId,
        w: VertexId,
        x: VertexId,
    },
    /// `u` has degree 2 with neighbors `v < w`, and `vw` is an edge.
    Triangle {
        u: VertexId,
        v: VertexId,
        w: VertexId,
    },
    /// `u` is a degree-2 cut vertex with neighbors `v < w`.
    CutVertex {
        u: VertexId,
        v: VertexId,
        w: VertexId,
    },
}

impl Configuration {
    /// The vertex removed by the reduction.
    pub fn removed(&self) -> VertexId {
        match *self {
            Configuration::Pendant { u, .. }
            | Configuration::AdjacentPair { u, .. }
            | Configuration::Triangle { u, .. }
            | Configuration::CutVertex { u, .. } => u,
        }
    }

    /// Lemma case number, 1 through 4.
    pub fn case_number(&self) -> u8 {
        match self {
            Configuration::Pendant { .. } => 1,
            Configuration::AdjacentPair { .. } => 2,
            Configuration::Triangle { .. } => 3,
            Configuration::CutVertex { .. } => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("configuration search needs a connected graph")]
    Disconnected,
}

/// Searches Case 1, Case 3, Case 2, then Case 4, taking the smallest `u` in
/// the first case that applies. `Ok(None)` means no configuration exists.
pub fn find_configuration(g: &Graph) -> Result<Option<Configuration>, ReductionError> {
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let block: Vec<VertexId> = g.vertices().collect();
    Ok(find_in_component(g, &block))
}

/// [`find_configuration`] restricted to `block`, which must be the full
/// (ascending) vertex set of one connected component of `g`.
pub(crate) fn find_in_component(g: &Graph, block: &[VertexId]) -> Option<Configuration> {
    if let Some(&u) = block.iter().find(|&&u| g.degree(u) == 1) {
        return Some(Configuration::Pendant {
            u,
            v: g.neighbors(u)[0],
        });
    }

    let deg2 = || block.iter().copied().filter(|&u| g.degree(u) == 2);

    for u in deg2() {
        let [v, w] = pair(g, u);
        if g.has_edge(v, w) {
            return Some(Configuration::Triangle { u, v, w });
        }
    }

    for u in deg2() {
        if let Some(&v) = g.neighbors(u).iter().find(|&&v| g.degree(v) == 2) {
            let w = other_neighbor(g, u, v);
            let x = other_neighbor(g, v, u);
            return Some(Configuration::AdjacentPair { u, v, w, x });
        }
    }

    if deg2().next().is_some() {
        let cuts = g.cut_vertices_of_component(block[0]);
        if let Some(u) = deg2().find(|u| cuts.contains(u)) {
            let [v, w] = pair(g, u);
            return Some(Configuration::CutVertex { u, v, w });
        }
    }
    None
}

fn pair(g: &Graph, u: VertexId) -> [VertexId; 2] {
    let n = g.neighbors(u);
    [n[0], n[1]]
}

fn other_neighbor(g: &Graph, a: VertexId, not: VertexId) -> VertexId {
    let [p, q] = pair(g, a);
    if p == not {
        q
    } else {
        p
    }
}

/// Necessary edge bound for outerplanarity: a connected graph on `n >= 2`
/// vertices fails when it has more than `2n - 3` edges. Passing proves
/// nothing.
pub fn outerplanar_screen(g: &Graph) -> bool {
    edge_bound_holds(g.vertex_count(), g.edge_count()) || !g.is_connected()
}

pub(crate) fn edge_bound_holds(n: usize, m: usize) -> bool {
    n < 2 || m + 3 <= 2 * n
}
