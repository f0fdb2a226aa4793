//! Positive real-root isolation driven by sign-change counts.
//!
//! The substitution `x = (lo + hi t) / (1 + t)` maps `t in (0, inf)` onto
//! `x in (lo, hi)`. Clearing denominators gives a polynomial whose positive
//! roots correspond to the roots of `f` inside the interval, so its sign
//! changes bound that root count with the same parity. A count of 0 rules
//! the interval out and a count of 1 certifies exactly one root; anything
//! larger is bisected.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{gcd, Polynomial};
use crate::scalar::Scalar;
use crate::signs::sc_poly;

/// Bisection depth used by [`isolate_positive`].
pub const DEFAULT_MAX_DEPTH: u32 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    /// `lo == hi` is the root itself.
    Exact,
    /// The root lies strictly between `lo` and `hi`.
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    pub lo: Scalar,
    pub hi: Scalar,
    pub kind: RootKind,
}

impl RootInterval {
    pub fn exact(root: Scalar) -> Self {
        RootInterval {
            lo: root.clone(),
            hi: root,
            kind: RootKind::Exact,
        }
    }

    pub fn open(lo: Scalar, hi: Scalar) -> Self {
        RootInterval {
            lo,
            hi,
            kind: RootKind::Open,
        }
    }

    /// Whether `x` lies in the interval (the point itself for exact roots).
    pub fn contains(&self, x: &Scalar) -> bool {
        match self.kind {
            RootKind::Exact => x == &self.lo,
            RootKind::Open => &self.lo < x && x < &self.hi,
        }
    }
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RootKind::Exact => write!(f, "exact {}", self.lo),
            RootKind::Open => write!(f, "open ({}, {})", self.lo, self.hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedRoot {
    #[serde(flatten)]
    pub interval: RootInterval,
    pub multiplicity: u32,
}

/// Disjoint intervals in ascending order, one per distinct positive root.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isolation {
    pub roots: Vec<IsolatedRoot>,
}

impl Isolation {
    pub fn intervals(&self) -> impl Iterator<Item = &RootInterval> {
        self.roots.iter().map(|r| &r.interval)
    }

    pub fn multiplicities(&self) -> impl Iterator<Item = u32> + '_ {
        self.roots.iter().map(|r| r.multiplicity)
    }

    /// Positive roots counted with multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.multiplicities().map(|m| m as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Re-checks every claim the isolation makes about `f`: exact roots
    /// vanish with the stated multiplicity, open intervals have a
    /// sign-change count of 1 and opposite endpoint signs on the squarefree
    /// part, and intervals are ascending and disjoint.
    pub fn certify(&self, f: &Polynomial) -> Result<()> {
        let bad = |msg: String| Err(Error::Precondition(msg));
        if self.is_empty() {
            return Ok(());
        }
        let stripped = f.strip_zero_roots();
        let sqf = squarefree_part(&stripped)?;
        let layers = multiplicity_layers(&stripped);
        let mut prev: Option<&RootInterval> = None;
        for root in &self.roots {
            let iv = &root.interval;
            let on_axis = match iv.kind {
                RootKind::Exact => iv.lo.is_positive() && iv.lo == iv.hi,
                RootKind::Open => !iv.lo.is_negative(),
            };
            if !on_axis {
                return bad(format!("{iv} is not on the positive axis"));
            }
            let overlaps = prev.is_some_and(|p| {
                p.hi > iv.lo
                    || (p.hi == iv.lo && p.kind == RootKind::Exact && iv.kind == RootKind::Exact)
            });
            if overlaps {
                return bad(format!("{iv} overlaps its predecessor"));
            }
            prev = Some(iv);
            let m = match iv.kind {
                RootKind::Exact => exact_multiplicity(&stripped, &iv.lo),
                RootKind::Open => {
                    if iv.lo >= iv.hi {
                        return bad(format!("{iv} is empty"));
                    }
                    if transform_count(&sqf, &iv.lo, &iv.hi)? != 1 {
                        return bad(format!("{iv} does not have sign-change count 1"));
                    }
                    if !(sqf.evaluate(&iv.lo) * sqf.evaluate(&iv.hi)).is_negative() {
                        return bad(format!("{iv} endpoints do not bracket a sign change"));
                    }
                    open_multiplicity(&layers, &iv.lo, &iv.hi)
                }
            };
            if m != root.multiplicity {
                return bad(format!(
                    "{iv} claims multiplicity {} but has {m}",
                    root.multiplicity
                ));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Isolation {
    /// One root per line: `exact 2 mult 1` or `open (1, 2) mult 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.roots {
            writeln!(f, "{} mult {}", r.interval, r.multiplicity)?;
        }
        Ok(())
    }
}

/// `(1 + t)^d f((lo + hi t) / (1 + t))` where `d = deg f`.
pub fn interval_transform(f: &Polynomial, lo: &Scalar, hi: &Scalar) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("the interval transform"));
    }
    if lo.is_negative() || lo >= hi {
        return Err(Error::Precondition(format!(
            "need 0 <= lo < hi, got ({lo}, {hi})"
        )));
    }
    let d = f.degree().expect("nonzero");
    let numer = Polynomial::new(vec![lo.clone(), hi.clone()]);
    let denom = Polynomial::from_ints(&[1, 1]);
    let mut numer_pows = Vec::with_capacity(d + 1);
    numer_pows.push(Polynomial::constant(Scalar::one()));
    for i in 1..=d {
        numer_pows.push(&numer_pows[i - 1] * &numer);
    }
    let mut denom_pow = Polynomial::constant(Scalar::one());
    let mut acc = Polynomial::zero();
    // walk i from d down so (1 + t)^(d - i) grows alongside
    for i in (0..=d).rev() {
        let a = f.coeff(i);
        if !a.is_zero() {
            acc = &acc + &(&numer_pows[i] * &denom_pow).scale(&a);
        }
        denom_pow = &denom_pow * &denom;
    }
    Ok(acc)
}

/// Sign changes of [`interval_transform`]: an upper bound, with matching
/// parity, on the number of roots of `f` in the open interval `(lo, hi)`.
pub fn transform_count(f: &Polynomial, lo: &Scalar, hi: &Scalar) -> Result<usize> {
    Ok(sc_poly(&interval_transform(f, lo, hi)?))
}

/// `f / gcd(f, f')`, made monic.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial> {
    match f.degree() {
        None => return Err(Error::ZeroPolynomial("the squarefree part")),
        Some(0) => return Err(Error::ConstantPolynomial("the squarefree part")),
        Some(_) => {}
    }
    let g = gcd(f, &f.derivative())?;
    Ok(f.exact_div(&g)?.monic())
}

/// `H_1, H_2, ...` where `H_k` is the monic product of `(x - r)` over the
/// distinct roots `r` of `f` with multiplicity at least `k`. Built from the
/// chain `G_0 = f`, `G_k = gcd(G_{k-1}, G_{k-1}')`, `H_k = G_{k-1} / G_k`.
pub fn multiplicity_layers(f: &Polynomial) -> Vec<Polynomial> {
    let mut layers = Vec::new();
    let mut prev = f.monic();
    while prev.degree().is_some_and(|d| d >= 1) {
        let next = gcd(&prev, &prev.derivative()).expect("prev is nonzero");
        layers.push(prev.exact_div(&next).expect("gcd divides").monic());
        prev = next;
    }
    layers
}

/// Largest `m` with `(c - x)^m` dividing `f`.
pub fn exact_multiplicity(f: &Polynomial, c: &Scalar) -> u32 {
    let mut m = 0;
    let mut cur = f.clone();
    while !cur.is_zero() {
        let (q, r) = cur.div_linear(c).expect("nonzero");
        if !r.is_zero() {
            break;
        }
        m += 1;
        cur = q;
    }
    m
}

/// Multiplicity of the single root in `(lo, hi)`: the number of layers that
/// change sign across the interval. Endpoints must not be roots.
fn open_multiplicity(layers: &[Polynomial], lo: &Scalar, hi: &Scalar) -> u32 {
    layers
        .iter()
        .take_while(|h| (h.evaluate(lo) * h.evaluate(hi)).is_negative())
        .count() as u32
}

/// The root of squarefree `sqf` in `(lo, hi)`, if that root is rational.
/// Endpoints must bracket a sign change of `sqf`.
///
/// With `sqf` primitive over the integers and `lc` its leading coefficient,
/// a rational root `p/q` in lowest terms has `q | lc`, so `lc * root` is an
/// integer. Halving the interval until it holds at most one multiple of
/// `1/lc` leaves a single candidate to test.
fn rational_root_in(sqf: &Polynomial, lo: &Scalar, hi: &Scalar) -> Option<Scalar> {
    let sqf = sqf.primitive();
    let lc = sqf.leading().expect("nonzero").clone();
    let lo_sign = sqf.evaluate(lo).sign();
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    loop {
        // integers strictly inside (lc * lo, lc * hi)
        let first = (&lc * &lo).floor() + 1;
        let last = (&lc * &hi).ceil() - 1;
        if first > last {
            return None;
        }
        if first == last {
            let candidate = Scalar::from(first) / &lc;
            return sqf.evaluate(&candidate).is_zero().then_some(candidate);
        }
        let mid = lo.midpoint(&hi);
        let v = sqf.evaluate(&mid);
        if v.is_zero() {
            return Some(mid);
        }
        if v.sign() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Bisection isolator with a configurable depth limit.
#[derive(Debug, Clone, Copy)]
pub struct Isolator {
    pub max_depth: u32,
}

impl Default for Isolator {
    fn default() -> Self {
        Isolator {
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }
}

struct Search<'a> {
    /// Squarefree part of the input, used for endpoint checks.
    sqf: &'a Polynomial,
    max_depth: u32,
    found: Vec<RootInterval>,
}

impl Search<'_> {
    /// `node` is the squarefree part with every root found so far at a
    /// bisection point divided out; none of its roots sit on `lo` or `hi`.
    fn run(&mut self, node: &Polynomial, lo: Scalar, hi: Scalar, depth: u32) -> Result<()> {
        if node.degree().unwrap_or(0) == 0 {
            return Ok(());
        }
        let count = transform_count(node, &lo, &hi)?;
        if count == 0 {
            return Ok(());
        }
        // An endpoint may be an exact root peeled off earlier; keep bisecting
        // until the open interval's endpoints bracket a sign change.
        if count == 1 && !self.sqf.evaluate(&lo).is_zero() && !self.sqf.evaluate(&hi).is_zero() {
            self.found.push(RootInterval::open(lo, hi));
            return Ok(());
        }
        if depth >= self.max_depth {
            return Err(Error::UnresolvedInterval {
                lo: Box::new(lo),
                hi: Box::new(hi),
                depth: self.max_depth,
            });
        }
        let mid = lo.midpoint(&hi);
        if node.evaluate(&mid).is_zero() {
            let (rest, _) = node.div_linear(&mid)?;
            self.run(&rest, lo, mid.clone(), depth + 1)?;
            self.found.push(RootInterval::exact(mid.clone()));
            self.run(&rest, mid, hi, depth + 1)
        } else {
            self.run(node, lo, mid.clone(), depth + 1)?;
            self.run(node, mid, hi, depth + 1)
        }
    }
}

impl Isolator {
    pub fn isolate(&self, f: &Polynomial) -> Result<Isolation> {
        match f.degree() {
            None => return Err(Error::ZeroPolynomial("root isolation")),
            Some(0) => return Err(Error::ConstantPolynomial("root isolation")),
            Some(_) => {}
        }
        // roots at 0 are not positive
        let stripped = f.strip_zero_roots();
        if stripped.degree() == Some(0) {
            return Ok(Isolation::default());
        }
        let sqf = squarefree_part(&stripped)?;
        if sc_poly(&sqf) == 0 {
            return Ok(Isolation::default());
        }
        let bound = sqf.cauchy_bound()?;
        let mut search = Search {
            sqf: &sqf,
            max_depth: self.max_depth,
            found: Vec::new(),
        };
        search.run(&sqf, Scalar::zero(), bound, 0)?;

        let layers = multiplicity_layers(&stripped);
        let roots = search
            .found
            .into_iter()
            .map(|interval| match interval.kind {
                RootKind::Open => match rational_root_in(&sqf, &interval.lo, &interval.hi) {
                    Some(root) => RootInterval::exact(root),
                    None => interval,
                },
                RootKind::Exact => interval,
            })
            .map(|interval| {
                let multiplicity = match interval.kind {
                    RootKind::Exact => exact_multiplicity(&stripped, &interval.lo),
                    RootKind::Open => open_multiplicity(&layers, &interval.lo, &interval.hi),
                };
                IsolatedRoot {
                    interval,
                    multiplicity,
                }
            })
            .collect();
        Ok(Isolation { roots })
    }
}

/// Isolates the distinct positive roots of `f` with their multiplicities.
pub fn isolate_positive(f: &Polynomial) -> Result<Isolation> {
    Isolator::default().isolate(f)
}

/// Positive roots of `f` counted with multiplicity.
pub fn pz(f: &Polynomial) -> Result<usize> {
    match f.degree() {
        None => Err(Error::ZeroPolynomial("counting positive roots")),
        Some(0) => Ok(0),
        Some(_) => Ok(isolate_positive(f)?.total_multiplicity()),
    }
}
