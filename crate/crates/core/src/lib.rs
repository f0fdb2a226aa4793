//! Exact sign-change counting over the rationals.
//!
//! - [`scalar`]: exact rationals and the sign alphabet
//! - [`poly`]: dense polynomials with the `(c - x)` transforms
//! - [`signs`]: sign-change counts, literal and scanned
//! - [`lemma`]: the case table and the induction that proves the rule of signs
//! - [`isolation`]: positive root isolation and counting with multiplicity
//! - [`fuzz`]: seeded generators and randomized verification

pub mod error;
pub mod fuzz;
pub mod isolation;
pub mod lemma;
pub mod poly;
pub mod scalar;
pub mod signs;

pub use error::{Error, Result};
pub use isolation::{
    isolate_positive, pz, squarefree_part, transform_count, IsolatedRoot, Isolation, Isolator,
    RootInterval, RootKind,
};
pub use lemma::{
    alpha_beta, classify_case, exhaustive_table_check, verify_lemma, verify_lemma_step,
    verify_theorem, CaseContext, CaseId, CasePattern, CaseRow, Constraint, Counterexample,
    InductionTrace, TableReport, TABLE,
};
pub use poly::{gcd, partial_sum_transform, Polynomial};
pub use scalar::{Scalar, Sign};
pub use signs::{sc_literal, sc_poly, sc_scan, SignSequence};
