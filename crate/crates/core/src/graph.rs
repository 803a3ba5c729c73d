//! Simple undirected graphs with stable vertex ids.
//!
//! Vertex ids are dense nonnegative integers. Removing a vertex leaves a hole
//! instead of renumbering, so ids stay valid across a whole reduction
//! sequence. Neighbor lists are kept sorted, which makes every traversal in
//! this crate run in ascending id order.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type VertexId = usize;

/// Largest vertex id accepted by [`Graph`]. Storage is indexed by id.
pub const MAX_VERTEX_ID: VertexId = (1 << 26) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {0} not found")]
    VertexNotFound(VertexId),
    #[error("vertex id {0} exceeds the maximum of {MAX_VERTEX_ID}")]
    VertexIdTooLarge(VertexId),
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct Graph {
    // adj[v] is None when v is not a vertex. No trailing None entries.
    adj: Vec<Option<Vec<VertexId>>>,
    vertex_count: usize,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices().collect::<Vec<_>>())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn with_vertices(n: usize) -> Self {
        Graph {
            adj: vec![Some(Vec::new()); n],
            vertex_count: n,
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges<I>(edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Self::build(std::iter::empty(), edges)
    }

    /// Builds a graph from explicit (possibly isolated) vertices plus edges.
    pub fn build<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Adds `v` if absent. Returns whether it was newly inserted.
    pub fn add_vertex(&mut self, v: VertexId) -> Result<bool, GraphError> {
        if v > MAX_VERTEX_ID {
            return Err(GraphError::VertexIdTooLarge(v));
        }
        if v >= self.adj.len() {
            self.adj.resize(v + 1, None);
        }
        if self.adj[v].is_some() {
            return Ok(false);
        }
        self.adj[v] = Some(Vec::new());
        self.vertex_count += 1;
        Ok(true)
    }

    /// Adds the edge `ab`, inserting missing endpoints. Returns whether the
    /// edge was new.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<bool, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        self.add_vertex(a)?;
        self.add_vertex(b)?;
        let na = self.adj[a].as_mut().expect("vertex just added");
        match na.binary_search(&b) {
            Ok(_) => return Ok(false),
            Err(pos) => na.insert(pos, b),
        }
        let nb = self.adj[b].as_mut().expect("vertex just added");
        let pos = nb.binary_search(&a).unwrap_err();
        nb.insert(pos, a);
        self.edge_count += 1;
        Ok(true)
    }

    /// Removes the edge `ab` if present. Returns whether it was there.
    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) -> bool {
        if !self.has_edge(a, b) {
            return false;
        }
        for (x, y) in [(a, b), (b, a)] {
            let nx = self.adj[x].as_mut().expect("edge endpoint");
            let pos = nx.binary_search(&y).expect("symmetric adjacency");
            nx.remove(pos);
        }
        self.edge_count -= 1;
        true
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        matches!(self.adj.get(v), Some(Some(_)))
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.neighbors_opt(a)
            .is_some_and(|n| n.binary_search(&b).is_ok())
    }

    fn neighbors_opt(&self, v: VertexId) -> Option<&[VertexId]> {
        self.adj.get(v).and_then(|n| n.as_deref())
    }

    /// Sorted neighbors of `v`; empty when `v` is not a vertex.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.neighbors_opt(v).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// One past the largest vertex id; the size of id-indexed side tables.
    pub fn id_bound(&self) -> usize {
        self.adj.len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().flatten().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj
            .iter()
            .enumerate()
            .filter_map(|(v, n)| n.as_ref().map(|_| v))
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |a| {
            self.neighbors(a)
                .iter()
                .copied()
                .filter(move |&b| a < b)
                .map(move |b| (a, b))
        })
    }

    /// `G - u` as a new graph; `self` is left untouched.
    pub fn remove_vertex(&self, u: VertexId) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.detach_vertex(u)?;
        Ok(g)
    }

    /// Removes `u` in place and returns its former neighbors.
    pub(crate) fn detach_vertex(&mut self, u: VertexId) -> Result<Vec<VertexId>, GraphError> {
        let nbrs = self
            .adj
            .get_mut(u)
            .and_then(Option::take)
            .ok_or(GraphError::VertexNotFound(u))?;
        for &w in &nbrs {
            let nw = self.adj[w].as_mut().expect("symmetric adjacency");
            let pos = nw.binary_search(&u).expect("symmetric adjacency");
            nw.remove(pos);
        }
        self.vertex_count -= 1;
        self.edge_count -= nbrs.len();
        while matches!(self.adj.last(), Some(None)) {
            self.adj.pop();
        }
        Ok(nbrs)
    }

    /// Inverse of [`Graph::detach_vertex`].
    pub(crate) fn reattach_vertex(
        &mut self,
        u: VertexId,
        nbrs: &[VertexId],
    ) -> Result<(), GraphError> {
        self.add_vertex(u)?;
        for &w in nbrs {
            self.add_edge(u, w)?;
        }
        Ok(())
    }

    /// Subgraph induced by `keep`. Ids are preserved.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Graph {
        let mut inside = vec![false; self.id_bound()];
        let mut g = Graph::new();
        for &v in keep {
            if self.contains_vertex(v) {
                inside[v] = true;
                g.add_vertex(v).expect("id already valid");
            }
        }
        for &v in keep {
            if !inside[v] {
                continue;
            }
            for &w in self.neighbors(v) {
                if v < w && inside[w] {
                    g.add_edge(v, w).expect("id already valid");
                }
            }
        }
        g
    }

    /// Vertices reachable from `start`, ascending. `start` must be a vertex.
    pub(crate) fn reachable_from(&self, start: VertexId, seen: &mut [bool]) -> Vec<VertexId> {
        let mut block = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < block.len() {
            let v = block[head];
            head += 1;
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    block.push(w);
                }
            }
        }
        block.sort_unstable();
        block
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(v) => {
                let mut seen = vec![false; self.id_bound()];
                self.reachable_from(v, &mut seen).len() == self.vertex_count
            }
        }
    }

    pub fn connected_components(&self) -> ComponentPartition {
        let mut seen = vec![false; self.id_bound()];
        let mut blocks = Vec::new();
        for v in self.vertices() {
            if !seen[v] {
                blocks.push(self.reachable_from(v, &mut seen));
            }
        }
        ComponentPartition { blocks }
    }

    /// Articulation points via lowpoints of an iterative DFS.
    pub fn cut_vertices(&self) -> BTreeSet<VertexId> {
        let mut state = LowpointState::new(self.id_bound());
        let mut cuts = BTreeSet::new();
        for root in self.vertices() {
            if state.disc[root] == UNVISITED {
                state.run(self, root, &mut cuts);
            }
        }
        cuts
    }

    /// Articulation points of the component containing `root`.
    pub(crate) fn cut_vertices_of_component(&self, root: VertexId) -> BTreeSet<VertexId> {
        let mut state = LowpointState::new(self.id_bound());
        let mut cuts = BTreeSet::new();
        state.run(self, root, &mut cuts);
        cuts
    }
}

const UNVISITED: usize = usize::MAX;

struct LowpointState {
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
}

impl LowpointState {
    fn new(bound: usize) -> Self {
        LowpointState {
            disc: vec![UNVISITED; bound],
            low: vec![0; bound],
            time: 0,
        }
    }

    fn run(&mut self, g: &Graph, root: VertexId, cuts: &mut BTreeSet<VertexId>) {
        // (vertex, parent, index of next neighbor to scan)
        let mut stack: Vec<(VertexId, VertexId, usize)> = vec![(root, UNVISITED, 0)];
        self.disc[root] = self.time;
        self.low[root] = self.time;
        self.time += 1;
        let mut root_children = 0;

        while let Some(frame) = stack.last_mut() {
            let (v, parent, next) = *frame;
            let nbrs = g.neighbors(v);
            if next < nbrs.len() {
                frame.2 += 1;
                let w = nbrs[next];
                if self.disc[w] == UNVISITED {
                    self.disc[w] = self.time;
                    self.low[w] = self.time;
                    self.time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    self.low[v] = self.low[v].min(self.disc[w]);
                }
            } else {
                stack.pop();
                if parent != UNVISITED {
                    self.low[parent] = self.low[parent].min(self.low[v]);
                    if parent != root && self.low[v] >= self.disc[parent] {
                        cuts.insert(parent);
                    }
                }
            }
        }
        if root_children >= 2 {
            cuts.insert(root);
        }
    }
}

/// Connected components, each sorted ascending, blocks ordered by their
/// smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<VertexId>>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: VertexId) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }
}
