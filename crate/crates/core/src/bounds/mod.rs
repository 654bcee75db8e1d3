//! Lower bounds on energy and the exact parameters they are compared with.

pub mod combinatorial;
pub mod decomposition;
pub mod report;
pub mod spectral;

pub use combinatorial::{
    clique_cover_number, fractional_clique_cover, independence_number, maximal_cliques, maximum_independent_set,
};
pub use decomposition::{decomposition_bound, fractional_cover_bound, Block, Decomposition, FractionalCover};
pub use spectral::{
    bound_nikiforov, bound_scaled_complement, bound_sdp_adjacency, bound_simple, hoffman_ratio,
    johnson_conjecture_check, johnson_spectrum, max_a_for_b, scaled_complement_lp, JohnsonMethod, JohnsonVerdict,
    ScaledComplementSolution,
};
pub use report::{
    report, report_with, Absence, BoundReport, Outcome, Ratios, ReportOptions, Tally, Verdict,
};
