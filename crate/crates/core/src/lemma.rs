//! Executable form of the sign-change lemma behind Descartes' rule.
//!
//! If `f = (1 - x) g` then `SC(f) - SC(g)` is positive and odd. Writing
//! `f = a_0 + ... + a_n x^n` and `g = b_0 + ... + b_{n-1} x^{n-1}`, the
//! `b_k` are the prefix sums of the `a_i`, and the claim follows by
//! induction on `n`: merging the head `a_0, a_1` into `a_0 + a_1` and
//! dropping `b_0` leaves a system of the same shape one size smaller. The
//! change in sign changes on each side of that step (`alpha` for the `a`
//! list, `beta` for the `b` list) depends only on the signs of `a_0`, `a_1`,
//! `b_1 = a_0 + a_1` and the next nonzero `a_p`, which gives the eight-row
//! [`TABLE`]. In every row `alpha - beta` is 0 or 2.
//!
//! Scaling coefficient `i` by `c^i` with `c > 0` does not change any sign,
//! so multiplication by `(c - x)` reduces to the `c = 1` case, and repeated
//! factors reduce to repeated single steps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{partial_sum_transform, Polynomial};
use crate::scalar::{Scalar, Sign};
use crate::signs::sc_scan;

/// Row label (i) through (viii).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseId {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
    #[serde(rename = "iii")]
    III,
    #[serde(rename = "iv")]
    IV,
    #[serde(rename = "v")]
    V,
    #[serde(rename = "vi")]
    VI,
    #[serde(rename = "vii")]
    VII,
    #[serde(rename = "viii")]
    VIII,
}

impl CaseId {
    pub const ALL: [CaseId; 8] = [
        CaseId::I,
        CaseId::II,
        CaseId::III,
        CaseId::IV,
        CaseId::V,
        CaseId::VI,
        CaseId::VII,
        CaseId::VIII,
    ];

    pub fn roman(self) -> &'static str {
        match self {
            CaseId::I => "i",
            CaseId::II => "ii",
            CaseId::III => "iii",
            CaseId::IV => "iv",
            CaseId::V => "v",
            CaseId::VI => "vi",
            CaseId::VII => "vii",
            CaseId::VIII => "viii",
        }
    }

    pub fn row(self) -> &'static CaseRow {
        &TABLE[self as usize]
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.roman())
    }
}

/// Condition on one sign in a table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Constraint {
    Pos,
    Zero,
    Neg,
    Any,
    /// Positive, and implied by the other columns.
    ForcedPos,
}

impl Constraint {
    pub fn admits(self, s: Sign) -> bool {
        match self {
            Constraint::Pos | Constraint::ForcedPos => s == Sign::Pos,
            Constraint::Zero => s == Sign::Zero,
            Constraint::Neg => s == Sign::Neg,
            Constraint::Any => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CasePattern {
    pub a0: Constraint,
    pub a1: Constraint,
    pub b1: Constraint,
    pub ap: Constraint,
}

impl CasePattern {
    pub fn admits(&self, s: CaseSigns) -> bool {
        self.a0.admits(s.a0) && self.a1.admits(s.a1) && self.b1.admits(s.b1) && self.ap.admits(s.ap)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub id: CaseId,
    pub pattern: CasePattern,
    pub alpha: i64,
    pub beta: i64,
}

const fn row(id: CaseId, [a0, a1, b1, ap]: [Constraint; 4], alpha: i64, beta: i64) -> CaseRow {
    CaseRow {
        id,
        pattern: CasePattern { a0, a1, b1, ap },
        alpha,
        beta,
    }
}

use Constraint as C;

/// The case table, indexed by [`CaseId`]. Row (ii) lists `a_0` as `Pos`
/// because `a_0 = 0` already belongs to row (i); with that, every
/// normalized sign assignment matches exactly one row.
pub const TABLE: [CaseRow; 8] = [
    row(CaseId::I, [C::Zero, C::Any, C::Any, C::Any], 0, 0),
    row(CaseId::II, [C::Pos, C::Zero, C::Any, C::Any], 0, 0),
    row(CaseId::III, [C::Pos, C::Pos, C::ForcedPos, C::Any], 0, 0),
    row(CaseId::IV, [C::Pos, C::Neg, C::Zero, C::Pos], 2, 0),
    row(CaseId::V, [C::Pos, C::Neg, C::Zero, C::Neg], 1, 1),
    row(CaseId::VI, [C::Pos, C::Neg, C::Pos, C::Pos], 2, 0),
    row(CaseId::VII, [C::Pos, C::Neg, C::Pos, C::Neg], 0, 0),
    row(CaseId::VIII, [C::Pos, C::Neg, C::Neg, C::Any], 1, 1),
];

/// Signs of `a_0`, `a_1`, `b_1 = a_0 + a_1` and `a_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CaseSigns {
    pub a0: Sign,
    pub a1: Sign,
    pub b1: Sign,
    pub ap: Sign,
}

/// `p` is the least index above 1 with `a_p != 0`; `q` the least index above
/// 1 with `b_q != 0`, when the `b` list is that long and has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseContext {
    pub p: usize,
    pub q: Option<usize>,
}

/// Finds the row for a normalized sign assignment (`a0` not negative,
/// `ap` nonzero). A `b1` that cannot equal the sign of `a0 + a1` is
/// reported as [`Error::NoMatchingRow`].
pub fn classify_case(a0: Sign, a1: Sign, b1: Sign, ap: Sign) -> Result<&'static CaseRow> {
    if ap.is_zero() {
        return Err(Error::Precondition("a_p must be nonzero".into()));
    }
    if a0 == Sign::Neg {
        return Err(Error::Precondition(
            "a_0 must be normalized to be non-negative".into(),
        ));
    }
    let consistent = match (a0, a1) {
        (Sign::Zero, _) => b1 == a1,
        (_, Sign::Zero) => b1 == a0,
        (Sign::Pos, Sign::Pos) => b1 == Sign::Pos,
        _ => true,
    };
    let signs = CaseSigns { a0, a1, b1, ap };
    let mut hits = TABLE.iter().filter(|r| r.pattern.admits(signs));
    match (consistent, hits.next(), hits.next()) {
        (true, Some(row), None) => Ok(row),
        _ => Err(Error::NoMatchingRow { a0, a1, b1, ap }),
    }
}

fn check_system(a: &[Scalar], min_len: usize) -> Result<Vec<Scalar>> {
    if a.len() < min_len {
        return Err(Error::Precondition(format!(
            "need at least {min_len} coefficients, got {}",
            a.len()
        )));
    }
    partial_sum_transform(a)
}

/// Multiplies the whole `a`/`b` system by -1 when `a_0 < 0`.
fn normalize(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    if a[0].is_negative() {
        (
            a.iter().map(|x| -x).collect(),
            b.iter().map(|x| -x).collect(),
        )
    } else {
        (a.to_vec(), b.to_vec())
    }
}

/// Case signs and indices for a system with `n >= 2`, after normalization.
pub fn case_signs(a: &[Scalar]) -> Result<(CaseSigns, CaseContext)> {
    let b = check_system(a, 3)?;
    let (a, b) = normalize(a, &b);
    let p = (2..a.len())
        .find(|&i| !a[i].is_zero())
        .expect("last coefficient is nonzero");
    let q = (2..b.len()).find(|&i| !b[i].is_zero());
    let signs = CaseSigns {
        a0: a[0].sign(),
        a1: a[1].sign(),
        b1: b[1].sign(),
        ap: a[p].sign(),
    };
    Ok((signs, CaseContext { p, q }))
}

/// `a` with its first two entries merged: `a_0 + a_1, a_2, ..., a_n`.
fn merge_head(a: &[Scalar]) -> Vec<Scalar> {
    std::iter::once(&a[0] + &a[1])
        .chain(a[2..].iter().cloned())
        .collect()
}

/// `alpha = SC(a_0..a_n) - SC(a_0+a_1, a_2..a_n)` and
/// `beta = SC(b_0..b_{n-1}) - SC(b_1..b_{n-1})`, computed on the normalized
/// system. Requires `n >= 2`, `a_n != 0` and `sum a_i = 0`.
pub fn alpha_beta(a: &[Scalar]) -> Result<(i64, i64)> {
    let b = check_system(a, 3)?;
    let (a, b) = normalize(a, &b);
    let alpha = sc_scan(&a) as i64 - sc_scan(&merge_head(&a)) as i64;
    let beta = sc_scan(&b) as i64 - sc_scan(&b[1..]) as i64;
    Ok((alpha, beta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    /// An inductive step matched against a table row.
    Row(CaseId),
    /// `n = 1`: `b_0 = a_0 = -a_1`.
    Base,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Row(id) => write!(f, "{id}"),
            StepKind::Base => f.write_str("base"),
        }
    }
}

/// One level of the induction. For a row step `alpha`/`beta` are the
/// quantities above; for the base step they are `SC(a_0, a_1)` and
/// `SC(b_0)`, so `alpha - beta` summed over a trace is the total delta.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
    pub case: StepKind,
    pub alpha: i64,
    pub beta: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InductionTrace {
    pub steps: Vec<TraceStep>,
}

impl InductionTrace {
    pub fn total(&self) -> i64 {
        self.steps.iter().map(|s| s.alpha - s.beta).sum()
    }
}

fn list(v: &[Scalar]) -> String {
    let items: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("[{}]", items.join(", "))
}

impl fmt::Display for InductionTrace {
    /// One step per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(
                f,
                "a={} b={} row={} alpha={} beta={}",
                list(&s.a),
                list(&s.b),
                s.case,
                s.alpha,
                s.beta
            )?;
        }
        Ok(())
    }
}

/// A replayable witness that some checked property failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub property: String,
    pub input: String,
    pub detail: String,
    pub trace: Option<InductionTrace>,
}

impl Counterexample {
    fn error(
        property: &str,
        input: impl fmt::Display,
        detail: String,
        trace: Option<InductionTrace>,
    ) -> Error {
        Error::Violation(Box::new(Counterexample {
            property: property.to_string(),
            input: input.to_string(),
            detail,
            trace,
        }))
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "property: {}", self.property)?;
        writeln!(f, "input: {}", self.input)?;
        write!(f, "detail: {}", self.detail)?;
        if let Some(trace) = &self.trace {
            write!(f, "\n{}", trace.to_string().trim_end())?;
        }
        Ok(())
    }
}

fn is_even_nonneg(x: i64) -> bool {
    x >= 0 && x % 2 == 0
}

fn is_odd_positive(x: i64) -> bool {
    x >= 1 && x % 2 == 1
}

/// Replays the induction for `f = (1 - x) g` given `f`'s coefficients and
/// returns `SC(f) - SC(g)` along with every step. Each step's `(alpha,
/// beta)` must match its table row and the total must be positive and odd;
/// otherwise the result is [`Error::Violation`] carrying the trace so far.
pub fn verify_lemma_step(a: &[Scalar]) -> Result<(i64, InductionTrace)> {
    let b = check_system(a, 2)?;
    let delta = sc_scan(a) as i64 - sc_scan(&b) as i64;
    let mut trace = InductionTrace::default();
    let fail = |trace: &InductionTrace, detail: String| {
        Counterexample::error(
            "SC(f) - SC(g) is positive and odd",
            list(a),
            detail,
            Some(trace.clone()),
        )
    };

    let mut current = a.to_vec();
    while current.len() > 2 {
        let b_now = partial_sum_transform(&current)?;
        let (signs, _) = case_signs(&current)?;
        let (alpha, beta) = alpha_beta(&current)?;
        let row = match classify_case(signs.a0, signs.a1, signs.b1, signs.ap) {
            Ok(row) => row,
            Err(e) => return Err(fail(&trace, e.to_string())),
        };
        trace.steps.push(TraceStep {
            a: current.clone(),
            b: b_now,
            case: StepKind::Row(row.id),
            alpha,
            beta,
        });
        if (alpha, beta) != (row.alpha, row.beta) {
            return Err(fail(
                &trace,
                format!(
                    "row {} predicts alpha={} beta={}, computed alpha={alpha} beta={beta}",
                    row.id, row.alpha, row.beta
                ),
            ));
        }
        if !is_even_nonneg(alpha - beta) {
            return Err(fail(&trace, format!("alpha - beta = {}", alpha - beta)));
        }
        current = merge_head(&current);
    }

    let b_now = partial_sum_transform(&current)?;
    let (alpha, beta) = (sc_scan(&current) as i64, sc_scan(&b_now) as i64);
    trace.steps.push(TraceStep {
        a: current,
        b: b_now,
        case: StepKind::Base,
        alpha,
        beta,
    });
    if alpha - beta != 1 {
        return Err(fail(&trace, format!("base case gives {}", alpha - beta)));
    }
    if trace.total() != delta {
        return Err(fail(
            &trace,
            format!("steps sum to {} but SC(f) - SC(g) = {delta}", trace.total()),
        ));
    }
    if !is_odd_positive(delta) {
        return Err(fail(&trace, format!("SC(f) - SC(g) = {delta}")));
    }
    Ok((delta, trace))
}

/// Outcome of checking `f = (c - x)^m g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub f: Polynomial,
    pub sc_f: usize,
    pub sc_g: usize,
    pub m: u32,
    /// `SC(f) - SC(g) - m`.
    pub delta: i64,
    /// One induction trace per factor of `(1 - x)`, after rescaling to `c = 1`.
    pub traces: Vec<InductionTrace>,
}

/// Builds `f = (c - x)^m g` and checks that `SC(f) - SC(g) - m` is even
/// and non-negative, returning that value.
pub fn verify_lemma(g: &Polynomial, c: &Scalar, m: u32) -> Result<i64> {
    verify_lemma_traced(g, c, m).map(|r| r.delta)
}

pub fn verify_lemma_traced(g: &Polynomial, c: &Scalar, m: u32) -> Result<LemmaReport> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial("the lemma"));
    }
    if !c.is_positive() {
        return Err(Error::NotPositive {
            what: "c",
            value: Box::new(c.clone()),
        });
    }
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let input = format!("g=[{g}] c={c} m={m}");
    let property = "SC(f) - SC(g) - m is even and non-negative";

    let mut f = g.clone();
    for _ in 0..m {
        f = f.mul_linear(c)?;
    }
    let (sc_f, sc_g) = (sc_scan(f.coeffs()), sc_scan(g.coeffs()));
    let delta = sc_f as i64 - sc_g as i64 - m as i64;

    // Rescale to c = 1, then peel one factor of (1 - x) at a time.
    let g1 = g.scale_argument(c)?;
    let mut h = g1.clone();
    let mut traces = Vec::with_capacity(m as usize);
    let mut steps_total = 0;
    for _ in 0..m {
        h = h.mul_linear(&Scalar::one())?;
        let (d, trace) = verify_lemma_step(h.coeffs())?;
        steps_total += d;
        traces.push(trace);
    }
    // f(cx) = c^m (1 - x)^m g(cx)
    if h.scale(&c.pow(m)) != f.scale_argument(c)? {
        return Err(Counterexample::error(
            property,
            &input,
            "rescaled product disagrees with c^m (1 - x)^m g(cx)".into(),
            None,
        ));
    }
    if sc_scan(h.coeffs()) != sc_f || sc_scan(g1.coeffs()) != sc_g {
        return Err(Counterexample::error(
            property,
            &input,
            "rescaling by c^i changed a sign-change count".into(),
            None,
        ));
    }
    if steps_total - m as i64 != delta || !is_even_nonneg(delta) {
        return Err(Counterexample::error(
            property,
            &input,
            format!("SC(f)={sc_f} SC(g)={sc_g} delta={delta} steps={steps_total}"),
            traces.last().cloned(),
        ));
    }
    Ok(LemmaReport {
        f,
        sc_f,
        sc_g,
        m,
        delta,
        traces,
    })
}

/// `SC(f) - known_pz`, which must be even and non-negative when `known_pz`
/// is the true number of positive roots counted with multiplicity.
pub fn verify_theorem(f: &Polynomial, known_pz: usize) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("the rule of signs"));
    }
    let defect = sc_scan(f.coeffs()) as i64 - known_pz as i64;
    if !is_even_nonneg(defect) {
        return Err(Counterexample::error(
            "SC(f) - PZ(f) is even and non-negative",
            format!("f=[{f}] pz={known_pz}"),
            format!("SC(f) - PZ(f) = {defect}"),
            None,
        ));
    }
    Ok(defect)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub witness: Vec<Scalar>,
    pub signs: Option<CaseSigns>,
    pub row: Option<CaseId>,
    pub alpha: i64,
    pub beta: i64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub witnesses: usize,
    /// Witnesses classified into each row.
    pub row_hits: BTreeMap<CaseId, usize>,
    /// Every `(alpha, beta)` computed for witnesses of each row.
    pub observed: BTreeMap<CaseId, BTreeSet<(i64, i64)>>,
    pub mismatches: Vec<TableMismatch>,
}

impl TableReport {
    pub fn rows_covered(&self) -> usize {
        self.row_hits.len()
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.rows_covered() == TABLE.len()
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} rows, {} mismatches",
            self.rows_covered(),
            self.mismatches.len()
        )
    }
}

const WITNESS_VALUES: [i64; 5] = [-2, -1, 0, 1, 2];
const NONZERO_VALUES: [i64; 4] = [-2, -1, 1, 2];

/// Concrete systems covering every sign combination of `a_0`, `a_1`, `a_p`
/// with `p` in 2..=4. Each is `a_0, a_1, 0.., a_p`, an optional extra term,
/// and a closing term that makes the sum zero when needed.
pub fn table_witnesses() -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for a0 in WITNESS_VALUES {
        for a1 in WITNESS_VALUES {
            for ap in NONZERO_VALUES {
                for p in 2..=4usize {
                    let tails = std::iter::once(None).chain(NONZERO_VALUES.map(Some));
                    for tail in tails {
                        let mut seq = vec![a0, a1];
                        seq.resize(p, 0);
                        seq.push(ap);
                        seq.extend(tail);
                        let sum: i64 = seq.iter().sum();
                        if sum != 0 {
                            seq.push(-sum);
                        }
                        out.push(seq.into_iter().map(Scalar::from).collect());
                    }
                }
            }
        }
    }
    out
}

/// Computes `(alpha, beta)` directly for every witness from
/// [`table_witnesses`], classifies it, and records any disagreement with
/// the table or any `alpha - beta` outside `{0, 2}`.
pub fn exhaustive_table_check() -> TableReport {
    let mut report = TableReport::default();
    for w in table_witnesses() {
        report.witnesses += 1;
        let mismatch = |signs, row, alpha, beta, reason: String| TableMismatch {
            witness: w.clone(),
            signs,
            row,
            alpha,
            beta,
            reason,
        };
        let (signs, (alpha, beta)) = match (case_signs(&w), alpha_beta(&w)) {
            (Ok((s, _)), Ok(ab)) => (s, ab),
            (Err(e), _) | (_, Err(e)) => {
                report
                    .mismatches
                    .push(mismatch(None, None, 0, 0, e.to_string()));
                continue;
            }
        };
        // global negation must not move either count
        let negated: Vec<Scalar> = w.iter().map(|x| -x).collect();
        let raw_b = partial_sum_transform(&w).expect("witness is a valid system");
        let raw_alpha = sc_scan(&w) as i64 - sc_scan(&merge_head(&w)) as i64;
        let raw_beta = sc_scan(&raw_b) as i64 - sc_scan(&raw_b[1..]) as i64;
        if alpha_beta(&negated).ok() != Some((alpha, beta))
            || (raw_alpha, raw_beta) != (alpha, beta)
        {
            report.mismatches.push(mismatch(
                Some(signs),
                None,
                alpha,
                beta,
                "negating the system changed alpha or beta".into(),
            ));
        }
        let row = match classify_case(signs.a0, signs.a1, signs.b1, signs.ap) {
            Ok(row) => row,
            Err(e) => {
                report
                    .mismatches
                    .push(mismatch(Some(signs), None, alpha, beta, e.to_string()));
                continue;
            }
        };
        *report.row_hits.entry(row.id).or_default() += 1;
        report
            .observed
            .entry(row.id)
            .or_default()
            .insert((alpha, beta));
        if (alpha, beta) != (row.alpha, row.beta) {
            report.mismatches.push(mismatch(
                Some(signs),
                Some(row.id),
                alpha,
                beta,
                format!("row predicts ({}, {})", row.alpha, row.beta),
            ));
        } else if !is_even_nonneg(alpha - beta) || alpha - beta > 2 {
            report.mismatches.push(mismatch(
                Some(signs),
                Some(row.id),
                alpha,
                beta,
                "alpha - beta is not 0 or 2".into(),
            ));
        }
    }
    report
}
