//! Theorem suites, conjecture scans, sequences and product identities.
//!
//! Every entry point returns serializable records; parallel runs keep the
//! order of their parameters.

pub mod conjectures;
pub mod engine;
pub mod oeis;
pub mod products;
pub mod record;
pub mod theorems;

pub use conjectures::{
    a_pm_rows, compute_a_pm, cot_jk_divisor, scan_conjecture, sequence_from_rows, sequence_s, tan_jk_divisor,
    ConjectureId,
};
pub use engine::{evaluate_claim, par_map, quotient_row, Divisor, HarnessOptions};
pub use oeis::{compare_oeis, expected_sign, parse_bfile, OeisComparison, OeisRow};
pub use products::{partner_b, verify_products};
pub use record::{
    exact_repr, Divisibility, Enclosure, Engine, ScanRow, SequenceRecord, Source, Subject, VerificationRecord,
};
pub use theorems::{
    anomaly_report, coprime_pairs, cot_jk_bound, cot_jk_record, invariants, sample_pairs, verify_theorem, SweepParams,
    TheoremId,
};
