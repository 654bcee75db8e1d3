//! Lower bounds on graph energy: adjacency spectra, exact small-scale
//! combinatorial parameters, theta-function SDPs and the bounds built on them.

pub mod bounds;
pub mod eigen;
pub mod enumerate;
pub mod error;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod lp;
pub mod sdp;

pub use bounds::{
    bound_nikiforov, bound_scaled_complement, bound_sdp_adjacency, bound_simple, clique_cover_number,
    decomposition_bound, fractional_clique_cover, fractional_cover_bound, hoffman_ratio, independence_number,
    johnson_conjecture_check, maximal_cliques, report, report_with, BoundReport, Decomposition, FractionalCover,
    ReportOptions, ScaledComplementSolution, Tally,
};
pub use eigen::{eigenvalues, energy, positive_energy, spread_endpoints, Spectrum, SymMatrix};
pub use enumerate::{enumerate_nonisomorphic, is_isomorphic};
pub use error::{Error, Result};
pub use generators::{generate, GraphSpec};
pub use graph::{Graph, GraphMetadata};
pub use graph6::{parse_graph6, write_graph6};
pub use lp::{solve_lp, LinearProgram, LpSolution, LpStatus, Relation, Sense};
pub use sdp::{
    lovasz_theta, positive_energy_sdp, solve_sdp, theta_minus, theta_plus, SdpProblem, SdpSolution, SdpStatus,
};
