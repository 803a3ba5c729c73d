//! Seeded outerplanar instance generators and named graph families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexId};

/// Identifies the random source and sampling scheme in output metadata.
pub const GENERATOR_ID: &str = "chacha8/dyck-cycle-lemma";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenerateError {
    #[error("polygon generators need n >= 3, got {0}")]
    TooFewVertices(usize),
    #[error("probability {name} = {value} is outside [0, 1]")]
    Probability { name: &'static str, value: f64 },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {family} does not accept n = {n}")]
    BadSize { family: Family, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorParams {
    pub n: usize,
    pub chord_keep_probability: f64,
    pub hull_delete_probability: f64,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn validate(&self) -> Result<(), GenerateError> {
        if self.n < 3 {
            return Err(GenerateError::TooFewVertices(self.n));
        }
        for (name, value) in [
            ("chord_keep_probability", self.chord_keep_probability),
            ("hull_delete_probability", self.hull_delete_probability),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(GenerateError::Probability { name, value });
            }
        }
        Ok(())
    }
}

/// Random triangulation of the polygon `0, 1, ..., n-1`.
///
/// Returns the chords only. A uniformly random Dyck word with `n - 2` up
/// steps is drawn with the cycle lemma, read as a binary tree, and the tree
/// is laid out as triangles hanging off the root edge `(0, n-1)`.
fn random_chords(n: usize, rng: &mut ChaCha8Rng) -> Vec<(VertexId, VertexId)> {
    let internal = n - 2;
    // +1 for an up step, -1 for a down step; one extra down step.
    let mut steps: Vec<i8> = std::iter::repeat_n(1, internal)
        .chain(std::iter::repeat_n(-1, internal + 1))
        .collect();
    steps.shuffle(rng);
    // Exactly one rotation starts right after the first minimum of the
    // prefix sums and keeps every proper prefix nonnegative.
    let mut height = 0i64;
    let mut lowest = 0i64;
    let mut cut = 0;
    for (i, &s) in steps.iter().enumerate() {
        height += i64::from(s);
        if height < lowest {
            lowest = height;
            cut = i + 1;
        }
    }
    let len = steps.len();
    steps.rotate_left(cut % len);
    steps.pop();

    // Dyck word `( A ) B` is a node with left subtree A and right subtree B.
    let len = steps.len();
    let mut matching = vec![0; len];
    let mut open = Vec::new();
    for (i, &s) in steps.iter().enumerate() {
        if s == 1 {
            open.push(i);
        } else {
            matching[open.pop().expect("balanced")] = i;
        }
    }

    let mut chords = Vec::with_capacity(n.saturating_sub(3));
    // (polygon side i..j, word slice start..end)
    let mut stack = vec![(0, n - 1, 0, len)];
    while let Some((i, j, start, end)) = stack.pop() {
        if start == end {
            debug_assert_eq!(j, i + 1);
            continue;
        }
        let close = matching[start];
        let left_nodes = (close - start - 1) / 2;
        let apex = i + left_nodes + 1;
        if apex != i + 1 {
            chords.push((i, apex));
        }
        if apex != j - 1 {
            chords.push((apex, j));
        }
        stack.push((apex, j, close + 1, end));
        stack.push((i, apex, start + 1, close));
    }
    chords.sort_unstable();
    chords
}

fn hull(n: usize) -> impl Iterator<Item = (VertexId, VertexId)> {
    (0..n).map(move |i| (i.min((i + 1) % n), i.max((i + 1) % n)))
}

/// The `n`-cycle plus a random triangulation: `2n - 3` edges.
pub fn gen_maximal_outerplanar(n: usize, seed: u64) -> Result<Graph, GenerateError> {
    if n < 3 {
        return Err(GenerateError::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chords = random_chords(n, &mut rng);
    Ok(Graph::from_edges(hull(n).chain(chords)).expect("valid polygon"))
}

/// A connected outerplanar graph: a random triangulation thinned by keeping
/// each chord with `chord_keep_probability` and then deleting each hull edge
/// with `hull_delete_probability` when that keeps the graph connected.
pub fn gen_outerplanar(p: &GeneratorParams) -> Result<Graph, GenerateError> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let chords = random_chords(p.n, &mut rng);
    let mut g = Graph::from_edges(hull(p.n)).expect("valid polygon");
    for (a, b) in chords {
        if rng.gen_bool(p.chord_keep_probability) {
            g.add_edge(a, b).expect("valid chord");
        }
    }
    for (a, b) in hull(p.n) {
        if rng.gen_bool(p.hull_delete_probability) {
            remove_edge_if_not_bridge(&mut g, a, b);
        }
    }
    Ok(g)
}

fn remove_edge_if_not_bridge(g: &mut Graph, a: VertexId, b: VertexId) {
    if !g.remove_edge(a, b) {
        return;
    }
    let mut seen = vec![false; g.id_bound()];
    if g.reachable_from(a, &mut seen).binary_search(&b).is_err() {
        g.add_edge(a, b).expect("edge was present");
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Fan,
    Complete4,
    K23,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Path,
        Family::Cycle,
        Family::Star,
        Family::Fan,
        Family::Complete4,
        Family::K23,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::Fan => "fan",
            Family::Complete4 => "complete4",
            Family::K23 => "k23",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenerateError::UnknownFamily(s.to_string()))
    }
}

/// Named fixtures. `n` counts vertices; `star` has `n - 1` leaves around
/// vertex 0; `fan` is the path `1..n-1` plus hub 0. `complete4` and `k23`
/// ignore `n`.
pub fn family(name: Family, n: usize) -> Result<Graph, GenerateError> {
    let bad = || GenerateError::BadSize { family: name, n };
    let edges: Vec<(VertexId, VertexId)> = match name {
        Family::Path => {
            if n == 0 {
                return Err(bad());
            }
            return Ok(Graph::build(0..n, (1..n).map(|i| (i - 1, i))).expect("valid"));
        }
        Family::Cycle if n >= 3 => hull(n).collect(),
        Family::Star if n >= 2 => (1..n).map(|i| (0, i)).collect(),
        Family::Fan if n >= 3 => (2..n)
            .map(|i| (i - 1, i))
            .chain((1..n).map(|i| (0, i)))
            .collect(),
        Family::Complete4 => vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        Family::K23 => vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        _ => return Err(bad()),
    };
    Ok(Graph::from_edges(edges).expect("valid"))
}
