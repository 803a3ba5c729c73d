//! Constructive `(Δ+2, 2)`-incidence coloring of outerplanar graphs.
//!
//! [`solve`] peels one vertex at a time off each component using
//! [`find_configuration`](crate::reduction::find_configuration), colors what
//! is left, and then puts the vertex back with the extension procedure for
//! its configuration. Components of maximum degree at most 2 are paths or
//! cycles and are colored directly by [`color_base_component`].
//!
//! The palette size `k = max(Δ, 1) + 2` is fixed once for the input graph
//! and shared by every subproblem. Whenever an extension has a choice it
//! takes the smallest admissible color.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::incidence::{verify_coloring, Color, Incidence, IncidenceColoring};
use crate::reduction::{edge_bound_holds, find_in_component, Configuration};

/// The base pattern and the cycle patch only ever use colors below this.
const BASE_COLORS: usize = 4;
const MAX_PATCH_WINDOW: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub k: usize,
    pub l: usize,
}

impl SolverConfig {
    /// `k = max(Δ, 1) + 2`, `l = 2`.
    pub fn for_graph(g: &Graph) -> Self {
        SolverConfig {
            k: g.max_degree().max(1) + 2,
            l: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(
        "not outerplanar: component with {vertices} vertices has {edges} edges, more than 2n-3"
    )]
    NotOuterplanar {
        component: Vec<VertexId>,
        vertices: usize,
        edges: usize,
    },
    #[error("not outerplanar: component of {} vertices has no reducible configuration", component.len())]
    NotReducible { component: Vec<VertexId> },
    #[error("precondition violated: {0}")]
    Contract(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl SolveError {
    pub fn is_not_outerplanar(&self) -> bool {
        matches!(
            self,
            SolveError::NotOuterplanar { .. } | SolveError::NotReducible { .. }
        )
    }
}

fn contract(msg: impl Into<String>) -> SolveError {
    SolveError::Contract(msg.into())
}

fn invariant(msg: impl Into<String>) -> SolveError {
    SolveError::Invariant(msg.into())
}

/// Smallest feasible color for `inc`.
fn first_feasible(g: &Graph, c: &IncidenceColoring, inc: Incidence) -> Result<Color, SolveError> {
    c.feasible_colors(g, inc)
        .first()
        .copied()
        .ok_or_else(|| invariant(format!("no feasible color for {inc}")))
}

/// Smallest color already incoming at `inc.head` that `inc` may take. Such a
/// color leaves the head's incoming set unchanged.
fn first_incoming(
    g: &Graph,
    c: &IncidenceColoring,
    inc: Incidence,
) -> Result<Option<Color>, SolveError> {
    let incoming = c.incoming_colors(g, inc.head);
    if incoming.is_empty() {
        return Ok(None);
    }
    let feasible = c.feasible_colors(g, inc);
    incoming
        .into_iter()
        .find(|x| feasible.contains(x))
        .map(Some)
        .ok_or_else(|| invariant(format!("no incoming color of {} fits {inc}", inc.head)))
}

fn assign_checked(
    g: &Graph,
    c: &mut IncidenceColoring,
    inc: Incidence,
    color: Color,
) -> Result<(), SolveError> {
    if !c.feasible_colors(g, inc).contains(&color) {
        return Err(invariant(format!(
            "color {color} is not feasible for {inc}"
        )));
    }
    c.assign(inc, color);
    Ok(())
}

fn expect_neighbors(g: &Graph, u: VertexId, expected: &[VertexId]) -> Result<(), SolveError> {
    let mut want = expected.to_vec();
    want.sort_unstable();
    if g.neighbors(u) != want.as_slice() {
        return Err(contract(format!(
            "vertex {u} has neighbors {:?}, expected {want:?}",
            g.neighbors(u)
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Base case

/// Colors a connected graph of maximum degree at most 2.
///
/// Along a path `v0 v1 ...`, `(v_i, v_{i+1})` gets `i mod 3` and
/// `(v_{i+1}, v_i)` gets `(i + 2) mod 3`. Every vertex then sees a single
/// incoming color. Cycles whose length is a multiple of 3 use the same
/// pattern all the way round; other cycles leave a short trailing window of
/// edges to an exhaustive search over four colors.
pub fn color_base_component(
    g: &Graph,
    cfg: &SolverConfig,
) -> Result<IncidenceColoring, SolveError> {
    if !g.is_connected() {
        return Err(contract("base colorer needs a connected graph"));
    }
    let block: Vec<VertexId> = g.vertices().collect();
    let mut c = IncidenceColoring::new(cfg.k, cfg.l);
    color_base_block(g, &block, &mut c)?;
    Ok(c)
}

fn color_base_block(
    g: &Graph,
    block: &[VertexId],
    c: &mut IncidenceColoring,
) -> Result<(), SolveError> {
    if block.len() <= 1 {
        return Ok(());
    }
    if let Some(&v) = block.iter().find(|&&v| g.degree(v) > 2) {
        return Err(contract(format!("vertex {v} has degree above 2")));
    }
    let endpoint = block.iter().copied().find(|&v| g.degree(v) == 1);
    let order = walk(g, endpoint.unwrap_or(block[0]));
    let pattern = |i: usize| (i % 3, (i + 2) % 3);

    if endpoint.is_some() {
        if c.k() < 3 {
            return Err(contract("paths need k >= 3"));
        }
        for (i, e) in order.windows(2).enumerate() {
            let (f, b) = pattern(i);
            c.assign(Incidence::new(e[0], e[1]), f);
            c.assign(Incidence::new(e[1], e[0]), b);
        }
        return Ok(());
    }

    let n = order.len();
    if c.k() < BASE_COLORS {
        return Err(contract("cycles need k >= 4"));
    }
    let edge = |i: usize| (order[i], order[(i + 1) % n]);
    let window_sizes = if n.is_multiple_of(3) {
        0..=0
    } else {
        1..=MAX_PATCH_WINDOW.min(n)
    };
    for window in window_sizes {
        for i in 0..n - window {
            let (a, b) = edge(i);
            let (f, r) = pattern(i);
            c.assign(Incidence::new(a, b), f);
            c.assign(Incidence::new(b, a), r);
        }
        let free: Vec<Incidence> = (n - window..n)
            .flat_map(|i| {
                let (a, b) = edge(i);
                [Incidence::new(a, b), Incidence::new(b, a)]
            })
            .collect();
        for &inc in &free {
            c.unassign(inc);
        }
        if fill_window(g, c, &free) {
            return Ok(());
        }
    }
    Err(invariant(format!(
        "cycle of length {n} could not be patched"
    )))
}

/// Vertex order of the path or cycle through `start`. On a cycle the walk
/// first steps to the smaller neighbor.
fn walk(g: &Graph, start: VertexId) -> Vec<VertexId> {
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.neighbors(start)[0];
    while cur != start {
        order.push(cur);
        match g.neighbors(cur).iter().find(|&&y| y != prev) {
            Some(&next) => {
                prev = cur;
                cur = next;
            }
            None => break,
        }
    }
    order
}

fn fill_window(g: &Graph, c: &mut IncidenceColoring, free: &[Incidence]) -> bool {
    let Some((&first, rest)) = free.split_first() else {
        return true;
    };
    for color in c.feasible_colors(g, first) {
        if color >= BASE_COLORS {
            break;
        }
        c.assign(first, color);
        if fill_window(g, c, rest) {
            return true;
        }
    }
    c.unassign(first);
    false
}

// ---------------------------------------------------------------------------
// Extensions

/// Case 1: `u` is a leaf hanging off `v`, and `c` colors `g - u`.
///
/// `(v, u)` takes any feasible color: at most `Δ - 1` outgoing and 2
/// incoming colors at `v` are blocked. `(u, v)` reuses a color already
/// incoming at `v`.
pub fn extend_case1(
    g: &Graph,
    mut c: IncidenceColoring,
    u: VertexId,
    v: VertexId,
) -> Result<IncidenceColoring, SolveError> {
    expect_neighbors(g, u, &[v])?;
    if g.degree(v) < 2 {
        return Err(contract(format!("{v} has no other neighbor besides {u}")));
    }
    let out = Incidence::new(v, u);
    c.assign(out, first_feasible(g, &c, out)?);
    let back = Incidence::new(u, v);
    let color = first_incoming(g, &c, back)?
        .ok_or_else(|| invariant(format!("nothing incoming at {v}")))?;
    c.assign(back, color);
    Ok(c)
}

/// Case 2: `u`, `v` adjacent of degree 2, `w` the other neighbor of `u`, `x`
/// the other neighbor of `v`; `c` colors `g - u`. Needs `k >= 5`.
///
/// `(u, v)` first tries the color of `(x, v)`, which keeps `v`'s incoming
/// set a singleton and leaves `(v, u)` at most three blocked colors.
pub fn extend_case2(
    g: &Graph,
    mut c: IncidenceColoring,
    u: VertexId,
    v: VertexId,
    w: VertexId,
    x: VertexId,
) -> Result<IncidenceColoring, SolveError> {
    expect_neighbors(g, u, &[v, w])?;
    expect_neighbors(g, v, &[u, x])?;
    if w == x {
        return Err(contract("w and x must differ"));
    }
    if c.k() < 5 {
        return Err(contract("adjacent degree-2 extension needs k >= 5"));
    }

    let wu = Incidence::new(w, u);
    c.assign(wu, first_feasible(g, &c, wu)?);

    let uw = Incidence::new(u, w);
    let color =
        first_incoming(g, &c, uw)?.ok_or_else(|| invariant(format!("nothing incoming at {w}")))?;
    c.assign(uw, color);

    let uv = Incidence::new(u, v);
    let preferred = c
        .get(Incidence::new(x, v))
        .filter(|col| c.feasible_colors(g, uv).contains(col));
    let color = match preferred {
        Some(col) => col,
        None => first_feasible(g, &c, uv)?,
    };
    c.assign(uv, color);

    let vu = Incidence::new(v, u);
    c.assign(vu, first_feasible(g, &c, vu)?);
    Ok(c)
}

/// Case 3: `u` has degree 2 with adjacent neighbors `v`, `w`; `c` colors
/// `g - u`.
///
/// With `α = c(v, w)` and `β = c(w, v)`, `(u, w)` takes `α` and `(u, v)`
/// takes `β`. Both are already incoming at their heads. `(v, u)` and
/// `(w, u)` then take feasible colors, possibly equal to each other.
pub fn extend_case3(
    g: &Graph,
    mut c: IncidenceColoring,
    u: VertexId,
    v: VertexId,
    w: VertexId,
) -> Result<IncidenceColoring, SolveError> {
    expect_neighbors(g, u, &[v, w])?;
    if !g.has_edge(v, w) {
        return Err(contract(format!("{v} and {w} are not adjacent")));
    }
    let alpha = c
        .get(Incidence::new(v, w))
        .ok_or_else(|| contract(format!("({v},{w}) is uncolored")))?;
    let beta = c
        .get(Incidence::new(w, v))
        .ok_or_else(|| contract(format!("({w},{v}) is uncolored")))?;
    assign_checked(g, &mut c, Incidence::new(u, w), alpha)?;
    assign_checked(g, &mut c, Incidence::new(u, v), beta)?;
    let vu = Incidence::new(v, u);
    c.assign(vu, first_feasible(g, &c, vu)?);
    let wu = Incidence::new(w, u);
    c.assign(wu, first_feasible(g, &c, wu)?);
    Ok(c)
}

/// A bijection on the palette `[0, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorPermutation {
    mapping: Vec<Color>,
}

impl ColorPermutation {
    pub fn identity(k: usize) -> Self {
        ColorPermutation {
            mapping: (0..k).collect(),
        }
    }

    /// `mapping[x]` is the image of `x`. Fails unless it is a bijection.
    pub fn new(mapping: Vec<Color>) -> Result<Self, SolveError> {
        let mut hit = vec![false; mapping.len()];
        for &y in &mapping {
            if y >= mapping.len() || std::mem::replace(&mut hit[y], true) {
                return Err(contract(format!("{mapping:?} is not a permutation")));
            }
        }
        Ok(ColorPermutation { mapping })
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply(&self, x: Color) -> Color {
        self.mapping[x]
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.mapping
    }
}

impl fmt::Display for ColorPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.mapping)
    }
}

/// A permutation of `[0, k)` moving `beta` and `delta` off `{alpha, gamma}`.
///
/// Returns the identity when nothing needs to move. Otherwise `beta` and
/// `delta` go to the smallest colors outside `{alpha, gamma}` and the
/// remaining colors fill the remaining images in ascending order.
pub fn avoiding_permutation(
    alpha: Color,
    gamma: Color,
    beta: Color,
    delta: Color,
    k: usize,
) -> Result<ColorPermutation, SolveError> {
    if k < 4 {
        return Err(contract("avoiding permutation needs k >= 4"));
    }
    if [alpha, gamma, beta, delta].iter().any(|&x| x >= k) {
        return Err(contract("colors must lie in [0, k)"));
    }
    let forbidden = |x: Color| x == alpha || x == gamma;
    if !forbidden(beta) && !forbidden(delta) {
        return Ok(ColorPermutation::identity(k));
    }
    let mut targets = (0..k).filter(|&x| !forbidden(x));
    let mut mapping = vec![usize::MAX; k];
    let mut used = vec![false; k];
    for src in [beta, delta] {
        if mapping[src] == usize::MAX {
            let dst = targets.next().expect("k >= 4 leaves two free colors");
            mapping[src] = dst;
            used[dst] = true;
        }
    }
    let mut free = (0..k).filter(|&y| !used[y]);
    for slot in mapping.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = free.next().expect("counts match");
    }
    ColorPermutation::new(mapping)
}

/// Relabels every assigned color through `p`.
pub fn apply_color_permutation(
    mut c: IncidenceColoring,
    p: &ColorPermutation,
) -> Result<IncidenceColoring, SolveError> {
    if let Some((inc, x)) = c.iter().find(|&(_, x)| x >= p.len()) {
        return Err(contract(format!(
            "color {x} of {inc} is outside the permutation"
        )));
    }
    c.recolor_with(|x| p.apply(x));
    Ok(c)
}

/// Case 4: `u` has degree 2 and `g - u` splits into a component holding `v`
/// (colored by `c_v`) and one holding `w` (colored by `c_w`).
///
/// Each side independently colors its incidences at `u`: `(v, u) = α`,
/// `(u, v) = γ`, `(w, u) = β`, `(u, w) = δ`. The `w` side is then relabeled
/// so that `β` and `δ` avoid `α` and `γ`, and the two sides are merged.
pub fn extend_case4(
    g: &Graph,
    c_v: IncidenceColoring,
    c_w: IncidenceColoring,
    u: VertexId,
    v: VertexId,
    w: VertexId,
) -> Result<IncidenceColoring, SolveError> {
    extend_case4_traced(g, c_v, c_w, u, v, w).map(|(c, _)| c)
}

fn extend_case4_traced(
    g: &Graph,
    mut c_v: IncidenceColoring,
    mut c_w: IncidenceColoring,
    u: VertexId,
    v: VertexId,
    w: VertexId,
) -> Result<(IncidenceColoring, Vec<Incidence>), SolveError> {
    expect_neighbors(g, u, &[v, w])?;
    if c_v.k() != c_w.k() {
        return Err(contract("both sides must share a palette"));
    }
    let mut fallbacks = Vec::new();
    let mut side =
        |c: &mut IncidenceColoring, near: VertexId| -> Result<(Color, Color), SolveError> {
            let out = Incidence::new(near, u);
            let a = first_feasible(g, c, out)?;
            c.assign(out, a);
            let back = Incidence::new(u, near);
            let b = match first_incoming(g, c, back)? {
                Some(x) => x,
                None => {
                    fallbacks.push(back);
                    first_feasible(g, c, back)?
                }
            };
            c.assign(back, b);
            Ok((a, b))
        };
    let (alpha, gamma) = side(&mut c_v, v)?;
    let (beta, delta) = side(&mut c_w, w)?;

    let pi = avoiding_permutation(alpha, gamma, beta, delta, c_v.k())?;
    let c_w = apply_color_permutation(c_w, &pi)?;
    c_v.merge(c_w);
    let u_incidences = [
        Incidence::new(u, v),
        Incidence::new(u, w),
        Incidence::new(v, u),
        Incidence::new(w, u),
    ];
    for inc in u_incidences {
        let color = c_v.unassign(inc).expect("assigned above");
        assign_checked(g, &mut c_v, inc, color)?;
    }
    Ok((c_v, fallbacks))
}

// ---------------------------------------------------------------------------
// Driver

/// One event of a [`solve`] run, in the order it happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// A component of maximum degree at most 2 colored directly.
    Base { component: Vec<VertexId> },
    /// A configuration found and its vertex removed.
    Reduce(Configuration),
    /// In a Case 4 extension, `(u, x)` had no incoming color at `x` to reuse
    /// and took a feasible color instead.
    IncomingFallback(Incidence),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub k: usize,
    pub coloring: IncidenceColoring,
    pub trace: Vec<Step>,
}

enum Task {
    Reduce(Vec<VertexId>),
    Extend {
        config: Configuration,
        neighbors: Vec<VertexId>,
    },
}

/// Computes a total `(k, 2)`-incidence coloring with `k = max(Δ, 1) + 2`.
///
/// Inputs that are not outerplanar are rejected, either by the `2n - 3`
/// edge bound or because some component has no reducible configuration.
/// The work stack holds at most one pending extension per removed vertex, so
/// deep reductions do not grow the call stack.
pub fn solve(g: &Graph) -> Result<Solution, SolveError> {
    let cfg = SolverConfig::for_graph(g);
    let bound = g.id_bound();
    let mut work = g.clone();
    let mut coloring = IncidenceColoring::new(cfg.k, cfg.l);
    let mut trace = Vec::new();
    let mut tasks: Vec<Task> = g
        .connected_components()
        .blocks
        .into_iter()
        .rev()
        .map(Task::Reduce)
        .collect();

    while let Some(task) = tasks.pop() {
        match task {
            Task::Reduce(block) => {
                let degree_sum: usize = block.iter().map(|&v| work.degree(v)).sum();
                let delta = block.iter().map(|&v| work.degree(v)).max().unwrap_or(0);
                if delta <= 2 {
                    color_base_block(&work, &block, &mut coloring)?;
                    trace.push(Step::Base { component: block });
                    continue;
                }
                if !edge_bound_holds(block.len(), degree_sum / 2) {
                    return Err(SolveError::NotOuterplanar {
                        vertices: block.len(),
                        edges: degree_sum / 2,
                        component: block,
                    });
                }
                let Some(config) = find_in_component(&work, &block) else {
                    return Err(SolveError::NotReducible { component: block });
                };
                trace.push(Step::Reduce(config));
                let neighbors = work.detach_vertex(config.removed())?;
                let mut seen = vec![false; bound];
                let mut parts: Vec<Vec<VertexId>> = Vec::new();
                for &y in &neighbors {
                    if !seen[y] {
                        parts.push(work.reachable_from(y, &mut seen));
                    }
                }
                parts.sort_unstable_by_key(|p| p[0]);
                tasks.push(Task::Extend { config, neighbors });
                tasks.extend(parts.into_iter().rev().map(Task::Reduce));
            }
            Task::Extend { config, neighbors } => {
                let c = std::mem::replace(&mut coloring, IncidenceColoring::new(cfg.k, cfg.l));
                let u = config.removed();
                coloring = match config {
                    Configuration::Pendant { u, v } => {
                        work.reattach_vertex(u, &neighbors)?;
                        extend_case1(&work, c, u, v)?
                    }
                    Configuration::AdjacentPair { u, v, w, x } => {
                        work.reattach_vertex(u, &neighbors)?;
                        extend_case2(&work, c, u, v, w, x)?
                    }
                    Configuration::Triangle { u, v, w } => {
                        work.reattach_vertex(u, &neighbors)?;
                        extend_case3(&work, c, u, v, w)?
                    }
                    Configuration::CutVertex { u, v, w } => {
                        let mut seen = vec![false; bound];
                        work.reachable_from(w, &mut seen);
                        if seen[v] {
                            return Err(invariant(format!("{u} does not separate {v} and {w}")));
                        }
                        let mut c_v = c;
                        let c_w = c_v.split_off_by_tail(|t| seen[t]);
                        work.reattach_vertex(u, &neighbors)?;
                        let (merged, fallbacks) = extend_case4_traced(&work, c_v, c_w, u, v, w)?;
                        trace.extend(fallbacks.into_iter().map(Step::IncomingFallback));
                        merged
                    }
                };
                debug_assert!(work.contains_vertex(u));
            }
        }
    }

    let report = verify_coloring(g, &coloring);
    if let Some(first) = report.violations.first() {
        return Err(invariant(format!("final coloring is invalid: {first}")));
    }
    Ok(Solution {
        k: cfg.k,
        coloring,
        trace,
    })
}
