//! Seeded random inputs and the randomized verification loop behind the
//! `fuzz` command.
//!
//! Every trial gets its own ChaCha stream derived from the run seed and the
//! trial index, so a failing trial can be replayed on its own.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isolation::{isolate_positive, pz};
use crate::lemma::{verify_lemma, verify_lemma_step, verify_theorem, Counterexample};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::signs::sc_poly;

pub const DEFAULT_COEFF_BOUND: i64 = 10;

/// Polynomial with known positive roots: `prod (c_j - x)^{m_j} * q` where
/// `q` has strictly positive coefficients and so no positive roots.
#[derive(Debug, Clone)]
pub struct RootedPolynomial {
    pub f: Polynomial,
    pub roots: Vec<(Scalar, u32)>,
    pub cofactor: Polynomial,
}

impl RootedPolynomial {
    pub fn positive_root_count(&self) -> usize {
        self.roots.iter().map(|(_, m)| *m as usize).sum()
    }
}

/// Random rationals and polynomials with numerators and denominators
/// bounded by `coeff_bound`.
#[derive(Debug, Clone)]
pub struct Generator {
    rng: ChaCha8Rng,
    coeff_bound: i64,
}

impl Generator {
    pub fn new(seed: u64, coeff_bound: i64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            coeff_bound: coeff_bound.max(1),
        }
    }

    /// Independent stream for trial `trial` of a run seeded with `seed`.
    pub fn for_trial(seed: u64, trial: u64, coeff_bound: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Generator {
            rng,
            coeff_bound: coeff_bound.max(1),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn scalar(&mut self) -> Scalar {
        let b = self.coeff_bound;
        let num = self.rng.gen_range(-b..=b);
        let den = self.rng.gen_range(1..=b);
        Scalar::new(num, den).expect("den >= 1")
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let x = self.scalar();
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Zero about a quarter of the time, to exercise runs of zeros.
    pub fn sparse_scalar(&mut self) -> Scalar {
        if self.rng.gen_ratio(1, 4) {
            Scalar::zero()
        } else {
            self.nonzero_scalar()
        }
    }

    /// Uniform-ish rational in `(0, max]`.
    pub fn positive_scalar(&mut self, max: i64) -> Scalar {
        let den = self.rng.gen_range(1..=self.coeff_bound);
        let num = self.rng.gen_range(1..=max * den);
        Scalar::new(num, den).expect("den >= 1")
    }

    pub fn sequence(&mut self, len: usize) -> Vec<Scalar> {
        (0..len).map(|_| self.sparse_scalar()).collect()
    }

    /// Nonzero polynomial of degree at most `max_degree`.
    pub fn polynomial(&mut self, max_degree: usize) -> Polynomial {
        let d = self.rng.gen_range(0..=max_degree);
        let mut c = self.sequence(d);
        c.push(self.nonzero_scalar());
        Polynomial::new(c)
    }

    /// Polynomial with strictly positive coefficients.
    pub fn positive_polynomial(&mut self, max_degree: usize) -> Polynomial {
        let d = self.rng.gen_range(0..=max_degree);
        let b = self.coeff_bound;
        Polynomial::new((0..=d).map(|_| self.positive_scalar(b)).collect())
    }

    /// `a_0, ..., a_n` with `1 <= n <= max_n`, `a_n != 0` and zero sum.
    pub fn zero_sum_sequence(&mut self, max_n: usize) -> Vec<Scalar> {
        loop {
            let n = self.rng.gen_range(1..=max_n.max(1));
            let mut a = self.sequence(n);
            let last = -a.iter().sum::<Scalar>();
            if !last.is_zero() {
                a.push(last);
                return a;
            }
        }
    }

    /// Nonzero polynomial of degree at most `max_degree` (at least 1) with
    /// an odd number of sign changes.
    pub fn odd_sc_polynomial(&mut self, max_degree: usize) -> Polynomial {
        loop {
            let f = self.polynomial(max_degree.max(1));
            if sc_poly(&f) % 2 == 1 {
                return f;
            }
            // flipping the leading sign toggles the parity whenever there
            // are at least two nonzero coefficients
            let mut c = f.into_coeffs();
            if let Some(lead) = c.last_mut() {
                *lead = -lead.clone();
            }
            let g = Polynomial::new(c);
            if sc_poly(&g) % 2 == 1 {
                return g;
            }
        }
    }

    /// Up to `max_multiplicity` positive roots counted with multiplicity, at
    /// distinct rationals in `(0, 10]`, times a positive cofactor of degree
    /// at most `max_cofactor_degree`.
    pub fn rooted_polynomial(
        &mut self,
        max_multiplicity: u32,
        max_cofactor_degree: usize,
    ) -> RootedPolynomial {
        let total = self.rng.gen_range(0..=max_multiplicity);
        let mut roots: Vec<(Scalar, u32)> = Vec::new();
        let mut left = total;
        while left > 0 {
            let m = self.rng.gen_range(1..=left);
            let c = self.positive_scalar(10);
            match roots.iter_mut().find(|(r, _)| *r == c) {
                Some((_, k)) => *k += m,
                None => roots.push((c, m)),
            }
            left -= m;
        }
        let cofactor = self.positive_polynomial(max_cofactor_degree);
        let mut f = cofactor.clone();
        for (c, m) in &roots {
            for _ in 0..*m {
                f = f.mul_linear(c).expect("cofactor is nonzero");
            }
        }
        roots.sort();
        RootedPolynomial { f, roots, cofactor }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub trials: u64,
    pub seed: u64,
    pub max_degree: usize,
    pub coeff_bound: i64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 1000,
            seed: 0,
            max_degree: 8,
            coeff_bound: DEFAULT_COEFF_BOUND,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub trials: u64,
    pub checks: u64,
    pub violations: Vec<FuzzViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzViolation {
    pub trial: u64,
    pub counterexample: Counterexample,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

fn as_violation(property: &str, input: String, err: Error) -> Counterexample {
    match err {
        Error::Violation(ce) => *ce,
        other => Counterexample {
            property: property.to_string(),
            input,
            detail: format!("unexpected error: {other}"),
            trace: None,
        },
    }
}

/// Runs the four checks of one trial, returning every failure.
pub fn run_trial(config: &FuzzConfig, trial: u64) -> Vec<Counterexample> {
    let mut gen = Generator::for_trial(config.seed, trial, config.coeff_bound);
    let mut failures = Vec::new();
    let max_degree = config.max_degree;

    // (c - x)^m g
    let g = gen.polynomial(max_degree);
    let c = gen.positive_scalar(10);
    let m = gen.rng().gen_range(1..=4);
    if let Err(e) = verify_lemma(&g, &c, m) {
        failures.push(as_violation("lemma", format!("g=[{g}] c={c} m={m}"), e));
    }

    // single factor of (1 - x)
    let a = gen.zero_sum_sequence(max_degree + 1);
    if let Err(e) = verify_lemma_step(&a) {
        let shown = Polynomial::new(a.clone());
        failures.push(as_violation("lemma step", format!("a=[{shown}]"), e));
    }

    // rule of signs against a known root count
    let rooted = gen.rooted_polynomial(6, max_degree.min(3));
    if let Err(ce) = check_rooted(&rooted) {
        failures.push(ce);
    }

    // odd count forces a positive root
    let f = gen.odd_sc_polynomial(max_degree);
    match isolate_positive(&f) {
        Ok(iso) if iso.is_empty() => failures.push(Counterexample {
            property: "odd SC(f) implies a positive root".into(),
            input: format!("f=[{f}]"),
            detail: format!("SC(f) = {} but no root was isolated", sc_poly(&f)),
            trace: None,
        }),
        Ok(_) => {}
        Err(e) => failures.push(as_violation("isolation", format!("f=[{f}]"), e)),
    }
    failures
}

/// `pz(f)` equals the constructed root count and the rule of signs holds.
pub fn check_rooted(rooted: &RootedPolynomial) -> std::result::Result<usize, Counterexample> {
    let f = &rooted.f;
    let input = format!("f=[{f}] roots={:?}", rooted.roots);
    let expected = rooted.positive_root_count();
    let found = pz(f).map_err(|e| as_violation("pz", input.clone(), e))?;
    if found != expected {
        return Err(Counterexample {
            property: "pz(f) counts positive roots with multiplicity".into(),
            input,
            detail: format!("pz(f) = {found}, constructed with {expected}"),
            trace: None,
        });
    }
    verify_theorem(f, found).map_err(|e| as_violation("rule of signs", input, e))?;
    Ok(found)
}

pub fn run_fuzz(config: &FuzzConfig) -> Result<FuzzReport> {
    if config.max_degree == 0 {
        return Err(Error::Precondition("max degree must be at least 1".into()));
    }
    if config.coeff_bound < 1 {
        return Err(Error::Precondition(
            "coefficient bound must be at least 1".into(),
        ));
    }
    let mut report = FuzzReport {
        trials: config.trials,
        ..FuzzReport::default()
    };
    for trial in 0..config.trials {
        report.checks += 4;
        report
            .violations
            .extend(
                run_trial(config, trial)
                    .into_iter()
                    .map(|counterexample| FuzzViolation {
                        trial,
                        counterexample,
                    }),
            );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_respect_their_contracts() {
        let mut gen = Generator::new(7, 10);
        for _ in 0..200 {
            let a = gen.zero_sum_sequence(9);
            assert!(a.len() >= 2 && a.len() <= 10);
            assert!(!a.last().unwrap().is_zero());
            assert!(a.iter().sum::<Scalar>().is_zero());

            let c = gen.positive_scalar(10);
            assert!(c.is_positive() && c <= Scalar::from(10));

            let q = gen.positive_polynomial(3);
            assert!(q.coeffs().iter().all(Scalar::is_positive));

            let f = gen.odd_sc_polynomial(8);
            assert_eq!(sc_poly(&f) % 2, 1);

            let r = gen.rooted_polynomial(6, 3);
            assert!(r.positive_root_count() <= 6);
            for (c, _) in &r.roots {
                assert!(r.f.evaluate(c).is_zero());
            }
        }
    }

    #[test]
    fn trials_are_reproducible() {
        let a = Generator::for_trial(3, 11, 10).polynomial(8);
        let b = Generator::for_trial(3, 11, 10).polynomial(8);
        let c = Generator::for_trial(3, 12, 10).polynomial(8);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn small_run_is_clean() {
        let config = FuzzConfig {
            trials: 50,
            seed: 1,
            ..FuzzConfig::default()
        };
        let report = run_fuzz(&config).unwrap();
        assert!(report.is_clean(), "{:#?}", report.violations);
        assert_eq!(report.checks, 200);
        assert_eq!(report, run_fuzz(&config).unwrap());
    }
}
