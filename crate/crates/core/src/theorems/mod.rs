//! Verification harness: checks hypotheses of the freeness and torsion
//! statements on concrete instances and asserts their conclusions.

pub mod report;
pub mod verifiers;

pub use report::{Check, ConclusionStatus, Outcome, Statement, VerificationReport};
pub use verifiers::{
    finite_hilbert_function, smallest_admissible_exponent, verify_double_line_example, verify_four_term_sequence,
    verify_frobenius_ext_pd_bound, verify_frobenius_mcm_freeness, verify_multiplicity_bounds_drs,
    verify_node_tensor_example, verify_pushforward_infinite_pd, verify_pushforward_tensor_torsion,
    verify_torsion_thresholds, verify_transpose_ext_vanishing, VerifyOptions, SEQUENCE_DEGREE_BOUND,
};
