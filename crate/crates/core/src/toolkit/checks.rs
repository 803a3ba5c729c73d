//! Exhaustive and sampled checks shared by the CLI's `enumerate` and
//! `selftest` subcommands.

use std::collections::BTreeSet;

use crate::extension::{color_base_component, solve, SolverConfig};
use crate::graph::Graph;
use crate::incidence::{
    enumerate_incidences, incidences_adjacent, verify_coloring, IncidenceColoring,
};
use crate::oracle::{
    enumerate_connected_graphs, min_incidence_k, OracleError, OuterplanarityOracle,
};
use crate::reduction::find_configuration;
use crate::toolkit::format::emit_coloring;
use crate::toolkit::generate::{family, gen_outerplanar, Family, GeneratorParams};

/// Counterexamples kept per summary.
const MAX_REPORTED: usize = 10;

#[derive(Debug, Clone, Default)]
pub struct CheckSummary {
    pub n: usize,
    /// Connected labeled graphs visited.
    pub graphs: usize,
    /// Graphs the property applied to.
    pub checked: usize,
    pub failures: usize,
    pub examples: Vec<Graph>,
}

impl CheckSummary {
    fn fail(&mut self, g: Graph) {
        self.failures += 1;
        if self.examples.len() < MAX_REPORTED {
            self.examples.push(g);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Every connected outerplanar graph on `n` labeled vertices with
/// `Δ >= 3` has a reducible configuration.
pub fn check_lemma(
    n: usize,
    oracle: &mut OuterplanarityOracle,
) -> Result<CheckSummary, OracleError> {
    let mut s = CheckSummary {
        n,
        ..Default::default()
    };
    for g in enumerate_connected_graphs(n)? {
        s.graphs += 1;
        if g.max_degree() < 3 || !oracle.is_outerplanar(&g)? {
            continue;
        }
        s.checked += 1;
        if find_configuration(&g).ok().flatten().is_none() {
            s.fail(g);
        }
    }
    Ok(s)
}

/// Every connected outerplanar graph on `n` labeled vertices has
/// `min_incidence_k(g, 2) <= Δ + 2`, and [`solve`] colors it validly.
pub fn check_theorem(
    n: usize,
    oracle: &mut OuterplanarityOracle,
) -> Result<CheckSummary, OracleError> {
    let mut s = CheckSummary {
        n,
        ..Default::default()
    };
    for g in enumerate_connected_graphs(n)? {
        s.graphs += 1;
        if !oracle.is_outerplanar(&g)? {
            continue;
        }
        s.checked += 1;
        let bound_holds = min_incidence_k(&g, 2)? <= g.max_degree() + 2;
        let solved = solve(&g).is_ok_and(|sol| verify_coloring(&g, &sol.coloring).is_valid());
        if !(bound_holds && solved) {
            s.fail(g);
        }
    }
    Ok(s)
}

/// Violation check straight from the definitions: all pairs of assigned
/// incidences, then incoming color counts.
pub fn violates_definition(g: &Graph, c: &IncidenceColoring) -> bool {
    let assigned: Vec<_> = c.iter().collect();
    for (i, &(a, ca)) in assigned.iter().enumerate() {
        if !g.has_edge(a.tail, a.head) || ca >= c.k() {
            return true;
        }
        if assigned[i + 1..]
            .iter()
            .any(|&(b, cb)| ca == cb && incidences_adjacent(a, b))
        {
            return true;
        }
    }
    g.vertices().any(|v| {
        let colors: BTreeSet<_> = assigned
            .iter()
            .filter(|(inc, _)| inc.head == v)
            .map(|&(_, x)| x)
            .collect();
        colors.len() > c.l()
    }) || assigned.len() != enumerate_incidences(g).len()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MutationTally {
    pub mutations: usize,
    pub violating: usize,
    pub detected: usize,
    pub false_alarms: usize,
}

impl MutationTally {
    pub fn perfect(&self) -> bool {
        self.detected == self.violating && self.false_alarms == 0
    }

    pub fn add(&mut self, other: MutationTally) {
        self.mutations += other.mutations;
        self.violating += other.violating;
        self.detected += other.detected;
        self.false_alarms += other.false_alarms;
    }
}

/// Recolors each incidence of a valid coloring to every other palette color
/// in turn and compares the verifier with [`violates_definition`].
pub fn mutation_sweep(g: &Graph, c: &IncidenceColoring) -> MutationTally {
    let mut t = MutationTally::default();
    for (inc, original) in c.iter() {
        for color in (0..c.k()).filter(|&x| x != original) {
            let mut m = c.clone();
            m.assign(inc, color);
            let bad = violates_definition(g, &m);
            let report = verify_coloring(g, &m);
            t.mutations += 1;
            if bad {
                t.violating += 1;
                if !report.is_valid() {
                    t.detected += 1;
                }
            } else if !report.is_valid() {
                t.false_alarms += 1;
            }
        }
    }
    t
}

/// One named pass/fail line of [`selftest`].
#[derive(Debug, Clone)]
pub struct SelftestLine {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The acceptance properties at a scale that finishes in a few seconds.
pub fn selftest() -> Vec<SelftestLine> {
    let mut lines = Vec::new();
    let mut line = |name, passed, detail: String| {
        lines.push(SelftestLine {
            name,
            passed,
            detail,
        })
    };
    let grid = [
        (0.0, 0.0),
        (0.0, 0.2),
        (0.5, 0.0),
        (0.5, 0.2),
        (1.0, 0.0),
        (1.0, 0.2),
    ];
    let params = |i: usize, n: usize| {
        let (keep, del) = grid[i % grid.len()];
        GeneratorParams {
            n,
            chord_keep_probability: keep,
            hull_delete_probability: del,
            seed: i as u64,
        }
    };

    let mut bad = 0;
    let mut mutations = MutationTally::default();
    for i in 0..60 {
        let n = 3 + (i * 37) % 198;
        let g = gen_outerplanar(&params(i, n)).expect("valid params");
        match solve(&g) {
            Ok(sol)
                if sol.k == g.max_degree() + 2 && verify_coloring(&g, &sol.coloring).is_valid() =>
            {
                if i < 10 && n <= 50 {
                    mutations.add(mutation_sweep(&g, &sol.coloring));
                }
            }
            _ => bad += 1,
        }
    }
    line(
        "theorem on generated graphs",
        bad == 0,
        format!("60 instances, {bad} failures"),
    );

    let mut oracle = OuterplanarityOracle::new();
    let lemma: Vec<_> = (2..=5)
        .map(|n| check_lemma(n, &mut oracle).expect("n in range"))
        .collect();
    line(
        "lemma exhaustive (n <= 5)",
        lemma.iter().all(CheckSummary::passed),
        format!(
            "{} graphs checked",
            lemma.iter().map(|s| s.checked).sum::<usize>()
        ),
    );
    let theorem: Vec<_> = (2..=5)
        .map(|n| check_theorem(n, &mut oracle).expect("n in range"))
        .collect();
    line(
        "theorem exhaustive (n <= 5)",
        theorem.iter().all(CheckSummary::passed),
        format!(
            "{} graphs checked",
            theorem.iter().map(|s| s.checked).sum::<usize>()
        ),
    );

    let fixed = [
        (Family::Star, 4, 4),
        (Family::Cycle, 3, 3),
        (Family::Cycle, 5, 4),
        (Family::Path, 2, 2),
    ];
    let got: Vec<_> = fixed
        .iter()
        .map(|&(f, n, _)| min_incidence_k(&family(f, n).expect("valid"), 2))
        .collect();
    let ok = fixed
        .iter()
        .zip(&got)
        .all(|(&(_, _, want), g)| *g == Ok(want));
    line("fixed minimum palettes", ok, format!("{got:?}"));

    let k4 = solve(&family(Family::Complete4, 4).expect("valid"));
    let k23 = solve(&family(Family::K23, 5).expect("valid"));
    line(
        "obstructions rejected",
        k4.as_ref().is_err_and(|e| e.is_not_outerplanar())
            && k23.as_ref().is_err_and(|e| e.is_not_outerplanar()),
        "K4 and K2,3".into(),
    );

    line(
        "verifier mutation sweep",
        mutations.perfect() && mutations.violating > 0,
        format!("{mutations:?}"),
    );

    let cfg = SolverConfig { k: 4, l: 2 };
    let base_ok = (2..=100).all(|n| {
        let p = family(Family::Path, n).expect("valid");
        let path_ok =
            color_base_component(&p, &cfg).is_ok_and(|c| verify_coloring(&p, &c).is_valid());
        let cycle_ok = n < 3 || {
            let c = family(Family::Cycle, n).expect("valid");
            color_base_component(&c, &cfg).is_ok_and(|col| verify_coloring(&c, &col).is_valid())
        };
        path_ok && cycle_ok
    });
    line(
        "base colorer on paths and cycles (n <= 100)",
        base_ok,
        String::new(),
    );

    let g = gen_outerplanar(&params(7, 150)).expect("valid params");
    let emit = || solve(&g).map(|s| emit_coloring(&g, s.k, &s.coloring)).ok();
    let first = emit();
    line(
        "deterministic output",
        first.is_some() && first == emit(),
        String::new(),
    );
    lines
}
