//! Closed-form predictions and certified decisions about computed determinants.

pub mod form;
pub mod rational;
pub mod verdict;
pub mod zero;

pub use form::{predict, ClosedForm, Sign};
pub use rational::{
    recognize_integer, recognize_integer_quotient, recognize_integer_quotient_form, recognize_rational,
    recognize_rational_refined,
};
pub use verdict::{
    match_ball, match_exact, match_with_escalation, observed_sign, observed_sign_exact, PrecisionLadder, Verdict,
    MATCH_TOLERANCE_BITS,
};
pub use zero::{structural_zero, ZeroCertificate, ZeroKind};
