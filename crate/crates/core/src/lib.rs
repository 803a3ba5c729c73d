//! Incidence coloring of outerplanar graphs with `Δ + 2` colors and at most
//! two colors incoming at every vertex.
//!
//! [`solve`] repeatedly removes a vertex found by [`find_configuration`],
//! colors the smaller graph and extends the coloring back. The [`oracle`]
//! module holds exhaustive reference procedures for small graphs.

pub mod extension;
pub mod graph;
pub mod incidence;
pub mod oracle;
pub mod reduction;
pub mod toolkit;

pub use extension::{solve, Solution, SolveError, SolverConfig, Step};
pub use graph::{Graph, GraphError, VertexId};
pub use incidence::{
    verify_coloring, Color, Incidence, IncidenceColoring, VerificationReport, Violation, UNBOUNDED,
};
pub use reduction::{find_configuration, outerplanar_screen, Configuration};
