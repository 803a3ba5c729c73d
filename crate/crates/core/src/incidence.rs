//! Incidences, their adjacency relation, partial colorings and the
//! `(k, l)` verifier.
//!
//! An incidence `(v, vw)` is stored as the ordered pair `tail = v`,
//! `head = w`. It is *outgoing* at its tail and *incoming* at its head; the
//! `l` bound limits the number of distinct colors incoming at each vertex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{Graph, VertexId};

pub type Color = usize;

/// Incoming bound meaning "no limit".
pub const UNBOUNDED: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Incidence {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Incidence {
    pub const fn new(tail: VertexId, head: VertexId) -> Self {
        Incidence { tail, head }
    }

    /// The same edge seen from the other endpoint.
    pub const fn reversed(self) -> Self {
        Incidence::new(self.head, self.tail)
    }
}

impl fmt::Display for Incidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.tail, self.head)
    }
}

/// Both orientations of every edge, ordered by `(tail, head)`.
pub fn enumerate_incidences(g: &Graph) -> Vec<Incidence> {
    g.vertices()
        .flat_map(|t| g.neighbors(t).iter().map(move |&h| Incidence::new(t, h)))
        .collect()
}

/// Two incidences conflict when they share a tail, or the head of one is the
/// tail of the other. Equal heads alone do not make them adjacent.
pub fn incidences_adjacent(a: Incidence, b: Incidence) -> bool {
    a.tail == b.tail || a.head == b.tail || a.tail == b.head
}

/// Assigned incidences of `g` that are adjacent to `inc`, excluding `inc`.
/// `inc` itself need not be assigned.
fn adjacent_in(g: &Graph, inc: Incidence) -> impl Iterator<Item = Incidence> + '_ {
    let Incidence { tail, head } = inc;
    let same_tail = g
        .neighbors(tail)
        .iter()
        .filter(move |&&y| y != head)
        .map(move |&y| Incidence::new(tail, y));
    let into_tail = g
        .neighbors(tail)
        .iter()
        .map(move |&y| Incidence::new(y, tail));
    // (head, tail) was already produced by into_tail.
    let out_of_head = g
        .neighbors(head)
        .iter()
        .filter(move |&&y| y != tail)
        .map(move |&y| Incidence::new(head, y));
    same_tail.chain(into_tail).chain(out_of_head)
}

/// A partial assignment of colors to incidences, with palette size `k` and
/// incoming bound `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceColoring {
    k: usize,
    l: usize,
    assignment: BTreeMap<Incidence, Color>,
}

impl IncidenceColoring {
    pub fn new(k: usize, l: usize) -> Self {
        IncidenceColoring {
            k,
            l,
            assignment: BTreeMap::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn get(&self, inc: Incidence) -> Option<Color> {
        self.assignment.get(&inc).copied()
    }

    /// Assigns `color` to `inc`, returning the previous color. Out-of-palette
    /// colors are stored as given and reported by the verifier.
    pub fn assign(&mut self, inc: Incidence, color: Color) -> Option<Color> {
        self.assignment.insert(inc, color)
    }

    pub fn unassign(&mut self, inc: Incidence) -> Option<Color> {
        self.assignment.remove(&inc)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Assigned incidences in `(tail, head)` order.
    pub fn iter(&self) -> impl Iterator<Item = (Incidence, Color)> + '_ {
        self.assignment.iter().map(|(&i, &c)| (i, c))
    }

    /// Distinct colors in use.
    pub fn colors_used(&self) -> BTreeSet<Color> {
        self.assignment.values().copied().collect()
    }

    /// Moves every assignment whose tail satisfies `pred` into a new coloring
    /// with the same palette.
    pub fn split_off_by_tail<F>(&mut self, mut pred: F) -> IncidenceColoring
    where
        F: FnMut(VertexId) -> bool,
    {
        let mut taken = IncidenceColoring::new(self.k, self.l);
        self.assignment.retain(|inc, &mut c| {
            if pred(inc.tail) {
                taken.assignment.insert(*inc, c);
                false
            } else {
                true
            }
        });
        taken
    }

    /// Adds all of `other`'s assignments, overwriting on overlap.
    pub fn merge(&mut self, other: IncidenceColoring) {
        self.assignment.extend(other.assignment);
    }

    /// Replaces every assigned color `x` by `f(x)`.
    pub fn recolor_with<F: Fn(Color) -> Color>(&mut self, f: F) {
        for c in self.assignment.values_mut() {
            *c = f(*c);
        }
    }

    /// Colors of assigned incidences of `g` whose head is `v`.
    pub fn incoming_colors(&self, g: &Graph, v: VertexId) -> BTreeSet<Color> {
        g.neighbors(v)
            .iter()
            .filter_map(|&w| self.get(Incidence::new(w, v)))
            .collect()
    }

    /// Colors outgoing from `v`, i.e. on assigned incidences with tail `v`.
    pub fn outgoing_colors(&self, g: &Graph, v: VertexId) -> BTreeSet<Color> {
        g.neighbors(v)
            .iter()
            .filter_map(|&w| self.get(Incidence::new(v, w)))
            .collect()
    }

    /// Every color in `[0, k)` that `inc` could take without creating a
    /// violation among assigned incidences, ascending. The `l` bound is
    /// checked at the head of `inc` only.
    pub fn feasible_colors(&self, g: &Graph, inc: Incidence) -> Vec<Color> {
        let mut blocked = vec![false; self.k];
        for other in adjacent_in(g, inc) {
            if let Some(c) = self.get(other) {
                if c < self.k {
                    blocked[c] = true;
                }
            }
        }
        let incoming: BTreeSet<Color> = g
            .neighbors(inc.head)
            .iter()
            .filter(|&&y| y != inc.tail)
            .filter_map(|&y| self.get(Incidence::new(y, inc.head)))
            .collect();
        let saturated = incoming.len() >= self.l;
        (0..self.k)
            .filter(|&c| !blocked[c])
            .filter(|c| !saturated || incoming.contains(c))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    AdjacencyConflict {
        first: Incidence,
        second: Incidence,
        color: Color,
    },
    PaletteOverflow {
        incidence: Incidence,
        color: Color,
    },
    IncomingOverflow {
        vertex: VertexId,
        colors: BTreeSet<Color>,
    },
    Uncolored(Incidence),
    /// The assignment names a pair that is not an edge of the graph.
    NotAnIncidence(Incidence),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AdjacencyConflict {
                first,
                second,
                color,
            } => write!(
                f,
                "adjacent incidences {first} and {second} share color {color}"
            ),
            Violation::PaletteOverflow { incidence, color } => {
                write!(
                    f,
                    "incidence {incidence} has color {color} outside the palette"
                )
            }
            Violation::IncomingOverflow { vertex, colors } => {
                write!(f, "vertex {vertex} has incoming colors {colors:?}")
            }
            Violation::Uncolored(inc) => write!(f, "incidence {inc} is uncolored"),
            Violation::NotAnIncidence(inc) => write!(f, "{inc} is not an incidence of the graph"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `c` is a total, proper `(k, l)`-incidence coloring of `g`.
pub fn verify_coloring(g: &Graph, c: &IncidenceColoring) -> VerificationReport {
    verify(g, c, true)
}

/// Like [`verify_coloring`] but unassigned incidences are allowed.
pub fn verify_partial_coloring(g: &Graph, c: &IncidenceColoring) -> VerificationReport {
    verify(g, c, false)
}

fn verify(g: &Graph, c: &IncidenceColoring, require_total: bool) -> VerificationReport {
    let mut violations = Vec::new();
    for (inc, color) in c.iter() {
        if !g.has_edge(inc.tail, inc.head) {
            violations.push(Violation::NotAnIncidence(inc));
            continue;
        }
        if color >= c.k() {
            violations.push(Violation::PaletteOverflow {
                incidence: inc,
                color,
            });
        }
        let mut seen = BTreeSet::new();
        for other in adjacent_in(g, inc) {
            if other > inc && seen.insert(other) && c.get(other) == Some(color) {
                violations.push(Violation::AdjacencyConflict {
                    first: inc,
                    second: other,
                    color,
                });
            }
        }
    }
    for v in g.vertices() {
        let colors = c.incoming_colors(g, v);
        if colors.len() > c.l() {
            violations.push(Violation::IncomingOverflow { vertex: v, colors });
        }
    }
    if require_total {
        for inc in enumerate_incidences(g) {
            if c.get(inc).is_none() {
                violations.push(Violation::Uncolored(inc));
            }
        }
    }
    violations.sort();
    VerificationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inc(t: VertexId, h: VertexId) -> Incidence {
        Incidence::new(t, h)
    }

    fn k2() -> Graph {
        Graph::from_edges([(0, 1)]).unwrap()
    }

    fn c3() -> Graph {
        Graph::from_edges([(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    /// forward (v_i, v_{i+1}) -> i mod 3, backward (v_{i+1}, v_i) -> (i+2) mod 3
    fn c3_scheme() -> IncidenceColoring {
        let mut c = IncidenceColoring::new(3, 2);
        for i in 0..3 {
            let j = (i + 1) % 3;
            c.assign(inc(i, j), i % 3);
            c.assign(inc(j, i), (i + 2) % 3);
        }
        c
    }

    // Every pair of assigned incidences checked against the definition.
    fn naive_valid(g: &Graph, c: &IncidenceColoring) -> bool {
        let assigned: Vec<_> = c.iter().collect();
        for (i, &(a, ca)) in assigned.iter().enumerate() {
            if !g.has_edge(a.tail, a.head) || ca >= c.k() {
                return false;
            }
            for &(b, cb) in &assigned[i + 1..] {
                if incidences_adjacent(a, b) && ca == cb {
                    return false;
                }
            }
        }
        g.vertices().all(|v| {
            let inc: BTreeSet<_> = assigned
                .iter()
                .filter(|(i, _)| i.head == v)
                .map(|&(_, c)| c)
                .collect();
            inc.len() <= c.l()
        })
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_incidences(&k2()), [inc(0, 1), inc(1, 0)]);
        assert_eq!(enumerate_incidences(&c3()).len(), 6);
        assert!(enumerate_incidences(&Graph::with_vertices(4)).is_empty());
    }

    #[test]
    fn adjacency_clauses() {
        assert!(incidences_adjacent(inc(0, 1), inc(1, 0)));
        assert!(incidences_adjacent(inc(0, 1), inc(0, 2)));
        assert!(!incidences_adjacent(inc(0, 1), inc(2, 1)));
        assert!(incidences_adjacent(inc(2, 0), inc(0, 1)));
        assert!(!incidences_adjacent(inc(0, 1), inc(2, 3)));
    }

    #[test]
    fn adjacency_is_symmetric_on_small_vertex_sets() {
        let all: Vec<_> = (0..6)
            .flat_map(|t| (0..6).filter(move |&h| h != t).map(move |h| inc(t, h)))
            .collect();
        for &a in &all {
            for &b in &all {
                if a != b {
                    assert_eq!(incidences_adjacent(a, b), incidences_adjacent(b, a));
                }
            }
        }
    }

    #[test]
    fn adjacent_in_matches_definition() {
        let g = Graph::from_edges([(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let all = enumerate_incidences(&g);
        for &a in &all {
            let fast: BTreeSet<_> = adjacent_in(&g, a).collect();
            let slow: BTreeSet<_> = all
                .iter()
                .copied()
                .filter(|&b| b != a && incidences_adjacent(a, b))
                .collect();
            assert_eq!(fast, slow, "{a}");
        }
    }

    #[test]
    fn verify_k2() {
        let mut c = IncidenceColoring::new(3, 2);
        c.assign(inc(0, 1), 0);
        c.assign(inc(1, 0), 1);
        assert!(verify_coloring(&k2(), &c).is_valid());

        c.assign(inc(1, 0), 0);
        assert_eq!(
            verify_coloring(&k2(), &c).violations,
            [Violation::AdjacencyConflict {
                first: inc(0, 1),
                second: inc(1, 0),
                color: 0
            }]
        );
    }

    #[test]
    fn verify_c3_scheme() {
        let c = c3_scheme();
        assert!(naive_valid(&c3(), &c));
        assert!(verify_coloring(&c3(), &c).is_valid());
    }

    #[test]
    fn verify_reports_each_kind() {
        let g = k2();
        let mut c = IncidenceColoring::new(2, 2);
        c.assign(inc(0, 1), 5);
        c.assign(inc(1, 2), 0);
        let r = verify_coloring(&g, &c);
        assert!(r.violations.contains(&Violation::PaletteOverflow {
            incidence: inc(0, 1),
            color: 5
        }));
        assert!(r.violations.contains(&Violation::NotAnIncidence(inc(1, 2))));
        assert!(r.violations.contains(&Violation::Uncolored(inc(1, 0))));
        assert!(!verify_partial_coloring(&g, &c)
            .violations
            .contains(&Violation::Uncolored(inc(1, 0))));

        // Three leaves pointing three colors into the center.
        let star = Graph::from_edges([(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut c = IncidenceColoring::new(5, 2);
        for leaf in 1..=3 {
            c.assign(inc(leaf, 0), leaf);
        }
        assert_eq!(
            verify_partial_coloring(&star, &c).violations,
            [Violation::IncomingOverflow {
                vertex: 0,
                colors: BTreeSet::from([1, 2, 3])
            }]
        );
    }

    #[test]
    fn incoming_examples() {
        let mut c = IncidenceColoring::new(3, 2);
        c.assign(inc(0, 1), 0);
        c.assign(inc(1, 0), 1);
        assert_eq!(c.incoming_colors(&k2(), 1), BTreeSet::from([0]));
        assert!(IncidenceColoring::new(3, 2)
            .incoming_colors(&c3(), 0)
            .is_empty());
        assert_eq!(c3_scheme().incoming_colors(&c3(), 1), BTreeSet::from([0]));
    }

    #[test]
    fn feasible_examples() {
        let empty = IncidenceColoring::new(5, 2);
        assert_eq!(empty.feasible_colors(&c3(), inc(0, 1)), [0, 1, 2, 3, 4]);

        let mut c = IncidenceColoring::new(3, 2);
        c.assign(inc(0, 1), 0);
        assert_eq!(c.feasible_colors(&k2(), inc(1, 0)), [1, 2]);
    }

    #[test]
    fn feasible_respects_saturated_head() {
        let star = Graph::from_edges([(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut c = IncidenceColoring::new(5, 2);
        c.assign(inc(1, 0), 1);
        c.assign(inc(2, 0), 2);
        assert_eq!(c.feasible_colors(&star, inc(3, 0)), [1, 2]);
        let c = IncidenceColoring::new(5, UNBOUNDED);
        assert_eq!(c.feasible_colors(&star, inc(3, 0)).len(), 5);
    }

    #[test]
    fn feasible_is_sound_and_complete_on_c3_prefixes() {
        let g = c3();
        let full = c3_scheme();
        let incs = enumerate_incidences(&g);
        for mask in 0u32..1 << incs.len() {
            let mut c = IncidenceColoring::new(4, 2);
            for (i, &x) in incs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    c.assign(x, full.get(x).unwrap());
                }
            }
            for &x in incs.iter().filter(|&&x| c.get(x).is_none()) {
                let feasible = c.feasible_colors(&g, x);
                for color in 0..4 {
                    let mut trial = c.clone();
                    trial.assign(x, color);
                    assert_eq!(feasible.contains(&color), naive_valid(&g, &trial));
                    assert_eq!(
                        feasible.contains(&color),
                        verify_partial_coloring(&g, &trial).is_valid()
                    );
                }
            }
        }
    }

    #[test]
    fn split_and_merge() {
        let mut c = c3_scheme();
        let original = c.clone();
        let taken = c.split_off_by_tail(|t| t == 1);
        assert_eq!(taken.len(), 2);
        assert_eq!(c.len(), 4);
        c.merge(taken);
        assert_eq!(c, original);
    }
}
