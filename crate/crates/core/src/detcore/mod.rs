//! Matrix families, certified ball determinants and exact cyclotomic determinants.

pub mod cyclo;
pub mod det_ball;
pub mod det_exact;
pub mod lemmas;
pub mod matrix;

pub use cyclo::{
    cyclotomic_poly, euler_phi, gauss_sum, sqrt_p, subfield_project, CycloElement, CycloField, QuadProjection,
};
pub use det_ball::{det_ball, det_ball_matrix, evaluate_entries, DetBall};
pub use det_exact::{det_exact, det_exact_with_budget, entry_exact, exact_to_ball, ExactBudget};
pub use lemmas::{bareiss_det, border_split, cauchy_det, det_rational, det_shifted, Scalar};
pub use matrix::{build, CanonicalEntry, MatrixSpec, ResidueMatrix, TrigFunc};
