//! Optimal parallel testers, their primal feasibility checks, the dual
//! certificate at four qubit devices, and SDP export for external solvers.

mod dual;
mod formula;
mod primal;
mod sdpa;
mod testers;
pub mod tolerance;

pub use dual::{
    dual_certificate, dual_certificate_from, dual_gap_report, verify_dual, DualAnsatz, DualCertificate, DualRow,
    DUAL_INSTANCE,
};
pub use formula::{catalan_closed_form, rational_string, rational_to_f64, success_probability_formula};
pub use primal::{
    certify_primal, certify_primal_dense, certify_primal_factorized, n_independence_check, NIndependenceRow,
    PrimalReport, Representation,
};
pub use sdpa::{export_sdp, real_embedding, ExportSummary, SdpaInstance};
pub use testers::{
    completeness_residual, gershgorin_lower_bound, layout_min_eigenvalue, local_phi_basis, min_tester_eigenvalue,
    optimal_testers, rotate_devices, success_probability_born, success_probability_born_complex, zero_error_residual,
    EigenMethod, Hypotheses, TesterSet,
};
