use proptest::prelude::*;

use signrule::isolation::{interval_transform, RootKind};
use signrule::lemma::{case_signs, StepKind};
use signrule::signs::SignSequence;
use signrule::{
    alpha_beta, classify_case, isolate_positive, partial_sum_transform, pz, sc_literal, sc_poly,
    sc_scan, transform_count, verify_lemma, verify_lemma_step, verify_theorem, Polynomial, Scalar,
};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn sparse_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![1 => Just(Scalar::zero()), 3 => scalar()]
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |x| !x.is_zero())
}

fn positive_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=100, 1i64..=10).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    (
        prop::collection::vec(sparse_scalar(), 0..=max_degree),
        nonzero_scalar(),
    )
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            Polynomial::new(c)
        })
}

/// `a_0..a_n` with `a_n != 0` and zero sum.
fn zero_sum_sequence(max_n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(sparse_scalar(), 1..=max_n).prop_filter_map("a_n = 0", |mut a| {
        let last = -a.iter().sum::<Scalar>();
        (!last.is_zero()).then(|| {
            a.push(last);
            a
        })
    })
}

proptest! {
    #[test]
    fn sc_implementations_agree(a in prop::collection::vec(sparse_scalar(), 0..=13)) {
        prop_assert_eq!(sc_literal(&a), sc_scan(&a));
    }

    #[test]
    fn sc_ignores_negation(a in prop::collection::vec(sparse_scalar(), 0..=13)) {
        let neg: Vec<Scalar> = a.iter().map(|x| -x).collect();
        prop_assert_eq!(sc_scan(&neg), sc_scan(&a));
    }

    #[test]
    fn sc_ignores_positive_rescaling(f in polynomial(10), c in positive_scalar()) {
        prop_assert_eq!(sc_poly(&f.scale_argument(&c).unwrap()), sc_poly(&f));
    }

    #[test]
    fn sc_parity_matches_end_signs(a in prop::collection::vec(sparse_scalar(), 0..=13)) {
        let odd = sc_scan(&a) % 2 == 1;
        let opposite = SignSequence::of(&a)
            .end_signs()
            .is_some_and(|(first, last)| first != last);
        prop_assert_eq!(odd, opposite);
    }

    #[test]
    fn div_linear_inverts_mul_linear(g in polynomial(8), c in scalar()) {
        let f = g.mul_linear(&c).unwrap();
        prop_assert_eq!(f.degree(), g.degree().map(|d| d + 1));
        prop_assert!(f.evaluate(&c).is_zero());
        prop_assert_eq!(f.div_linear(&c).unwrap(), (g, Scalar::zero()));
    }

    #[test]
    fn div_linear_remainder_is_value(f in polynomial(8), c in scalar()) {
        let (q, r) = f.div_linear(&c).unwrap();
        prop_assert_eq!(&r, &f.evaluate(&c));
        let back = if q.is_zero() {
            Polynomial::constant(r)
        } else {
            &q.mul_linear(&c).unwrap() + &Polynomial::constant(r)
        };
        prop_assert_eq!(back, f);
    }

    #[test]
    fn partial_sums_undo_mul_linear(a in zero_sum_sequence(12)) {
        let b = partial_sum_transform(&a).unwrap();
        let back = Polynomial::new(b).mul_linear(&Scalar::one()).unwrap();
        prop_assert_eq!(back.coeffs(), &a[..]);
    }

    #[test]
    fn scale_argument_is_composition(f in polynomial(8), c in positive_scalar(), x in scalar()) {
        prop_assert_eq!(f.scale_argument(&c).unwrap().evaluate(&x), f.evaluate(&(&c * &x)));
    }

    #[test]
    fn no_roots_beyond_cauchy_bound(f in polynomial(8).prop_filter("deg >= 1", |f| f.degree() >= Some(1))) {
        let b = f.cauchy_bound().unwrap();
        for k in 0..8i64 {
            let step = Scalar::new(k * k, 3).unwrap();
            let x = &b + &step;
            prop_assert!(!f.evaluate(&x).is_zero());
            prop_assert!(!f.evaluate(&-&x).is_zero());
        }
    }

    #[test]
    fn lemma_holds(g in polynomial(8), c in positive_scalar(), m in 1u32..=4) {
        let delta = verify_lemma(&g, &c, m).unwrap();
        prop_assert!(delta >= 0 && delta % 2 == 0);
    }

    #[test]
    fn lemma_step_is_odd_and_traced(a in zero_sum_sequence(12)) {
        let (delta, trace) = verify_lemma_step(&a).unwrap();
        prop_assert!(delta >= 1 && delta % 2 == 1);
        prop_assert_eq!(trace.total(), delta);
        prop_assert_eq!(trace.steps.len(), a.len() - 1);
        prop_assert_eq!(trace.steps.last().unwrap().case, StepKind::Base);
        for pair in trace.steps.windows(2) {
            prop_assert_eq!(pair[1].a.len() + 1, pair[0].a.len());
            prop_assert_eq!(&pair[1].a[0], &(&pair[0].a[0] + &pair[0].a[1]));
        }
    }

    #[test]
    fn alpha_beta_matches_its_row(a in zero_sum_sequence(12).prop_filter("n >= 2", |a| a.len() >= 3)) {
        let (alpha, beta) = alpha_beta(&a).unwrap();
        prop_assert!(alpha - beta == 0 || alpha - beta == 2);
        let (s, ctx) = case_signs(&a).unwrap();
        prop_assert!(!a[ctx.p].is_zero());
        if s.b1.is_zero() {
            prop_assert_eq!(ctx.q, Some(ctx.p).filter(|&p| p < a.len() - 1));
        }
        let row = classify_case(s.a0, s.a1, s.b1, s.ap).unwrap();
        prop_assert_eq!((row.alpha, row.beta), (alpha, beta));
    }

    #[test]
    fn base_case(t in nonzero_scalar()) {
        let (delta, trace) = verify_lemma_step(&[t.clone(), -t]).unwrap();
        prop_assert_eq!(delta, 1);
        prop_assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn one_signed_polynomials_have_no_positive_roots(
        c in prop::collection::vec(positive_scalar(), 1..=8),
        negate in any::<bool>(),
    ) {
        let f = Polynomial::new(c);
        let f = if negate { -&f } else { f };
        prop_assert_eq!(sc_poly(&f), 0);
        prop_assert_eq!(pz(&f).unwrap(), 0);
        prop_assert_eq!(verify_theorem(&f, 0).unwrap(), 0);
    }

    #[test]
    fn isolation_is_certified(f in polynomial(7).prop_filter("deg >= 1", |f| f.degree() >= Some(1))) {
        let iso = isolate_positive(&f).unwrap();
        iso.certify(&f).unwrap();
        let found = iso.total_multiplicity();
        prop_assert!(verify_theorem(&f, found).is_ok());
        if sc_poly(&f) % 2 == 1 {
            prop_assert!(!iso.is_empty());
        }
    }

    #[test]
    fn bisecting_an_open_interval_splits_the_count(f in polynomial(7).prop_filter("deg >= 1", |f| f.degree() >= Some(1))) {
        let iso = isolate_positive(&f).unwrap();
        let sqf = signrule::squarefree_part(&f.strip_zero_roots());
        for iv in iso.intervals().filter(|iv| iv.kind == RootKind::Open) {
            let sqf = sqf.as_ref().unwrap();
            let mid = iv.lo.midpoint(&iv.hi);
            let left = transform_count(sqf, &iv.lo, &mid).unwrap();
            let right = transform_count(sqf, &mid, &iv.hi).unwrap();
            prop_assert_eq!(left + right, 1);
        }
    }

    #[test]
    fn transform_maps_interval_roots(c in positive_scalar(), lo in 0i64..5, width in 1i64..5) {
        // (c - x) has a root in (lo, hi) exactly when the transform has a sign change
        let (lo, hi) = (Scalar::from(lo), Scalar::from(lo + width));
        let f = Polynomial::constant(Scalar::one()).mul_linear(&c).unwrap();
        let t = interval_transform(&f, &lo, &hi).unwrap();
        prop_assert_eq!(sc_poly(&t) == 1, lo < c && c < hi);
    }
}
