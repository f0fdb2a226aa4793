//! Counting sign changes in a coefficient list.
//!
//! [`sc_literal`] enumerates index pairs exactly as the definition reads;
//! [`sc_scan`] is the linear-time count everything else uses. The two are
//! kept independent so each can check the other.

use crate::poly::Polynomial;
use crate::scalar::{Scalar, Sign};

/// Signs of a coefficient sequence, position for position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignSequence(Vec<Sign>);

impl SignSequence {
    pub fn of(values: &[Scalar]) -> Self {
        SignSequence(values.iter().map(Scalar::sign).collect())
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Adjacent flips after dropping zeros.
    pub fn changes(&self) -> usize {
        let mut last = Sign::Zero;
        let mut count = 0;
        for &s in &self.0 {
            if s.is_zero() {
                continue;
            }
            if !last.is_zero() && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Sign of the first and last nonzero entries, if any.
    pub fn end_signs(&self) -> Option<(Sign, Sign)> {
        let mut nonzero = self.0.iter().copied().filter(|s| !s.is_zero());
        let first = nonzero.next()?;
        Some((first, nonzero.next_back().unwrap_or(first)))
    }
}

impl std::fmt::Display for SignSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{s}"))
    }
}

/// Number of pairs `p < q` with `a_p a_q < 0` and `a_i = 0` for all `p < i < q`.
pub fn sc_literal(a: &[Scalar]) -> usize {
    let mut count = 0;
    for p in 0..a.len() {
        for q in p + 1..a.len() {
            let opposite = (&a[p] * &a[q]).is_negative();
            let zeros_between = a[p + 1..q].iter().all(Scalar::is_zero);
            if opposite && zeros_between {
                count += 1;
            }
        }
    }
    count
}

/// Sign changes with zeros skipped, in one pass.
pub fn sc_scan(a: &[Scalar]) -> usize {
    SignSequence::of(a).changes()
}

pub fn sc_poly(f: &Polynomial) -> usize {
    sc_scan(f.coeffs())
}
