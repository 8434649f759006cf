use arithderiv::dirichlet::{self, SeriesTerm};
use arithderiv::identities::{self, Status};
use arithderiv::{arithfn, factorint, ArithFnId, QValue};
use proptest::prelude::*;

use ArithFnId::*;

fn catalog() -> impl Strategy<Value = ArithFnId> {
    prop::sample::select(ArithFnId::ALL.to_vec())
}

fn multiplicative() -> impl Strategy<Value = ArithFnId> {
    prop::sample::select(ArithFnId::multiplicative().collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn leibniz_large_arguments(a in 1u64..5_000_000, b in 1u64..5_000_000) {
        let lhs = arithfn::delta(a * b).unwrap();
        let rhs = QValue::from(a) * arithfn::delta(b).unwrap() + QValue::from(b) * arithfn::delta(a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn convolution_commutes(f in catalog(), g in catalog(), n in 1u64..1_000_000) {
        prop_assert_eq!(dirichlet::convolve_at(f, g, n).unwrap(), dirichlet::convolve_at(g, f, n).unwrap());
    }

    #[test]
    fn multiplicative_route_matches_oracle(f in multiplicative(), g in multiplicative(), n in 1u64..10_000_000) {
        prop_assert_eq!(
            dirichlet::convolve_multiplicative_at(f, g, n).unwrap(),
            dirichlet::convolve_at(f, g, n).unwrap()
        );
    }

    #[test]
    fn convolution_of_multiplicative_is_multiplicative(
        f in multiplicative(), g in multiplicative(), n in 1u64..3000, m in 1u64..3000
    ) {
        prop_assume!(factorint::coprime(n, m).unwrap());
        let h = |k| dirichlet::convolve_at(f, g, k).unwrap();
        prop_assert_eq!(h(n * m), h(n) * h(m));
    }

    #[test]
    fn derivative_route_matches_oracle(f in multiplicative(), n in 1u64..10_000_000) {
        prop_assert_eq!(
            dirichlet::f_star_delta_at(f, n).unwrap(),
            dirichlet::convolve_at(f, Delta, n).unwrap()
        );
    }

    #[test]
    fn product_rule_far_out(f in multiplicative(), n in 2u64..5000, m in 2u64..5000) {
        prop_assume!(factorint::coprime(n, m).unwrap());
        let (lhs, rhs) = identities::theorem1_instance(f, n, m).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn id_star_delta_halves_tau_delta(n in 1u64..100_000_000) {
        let lhs = dirichlet::convolve_at(Id, Delta, n).unwrap();
        let rhs = arithfn::eval(Tau, n).unwrap() * arithfn::delta(n).unwrap() / QValue::from(2);
        prop_assert!(rhs.is_integer());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn longer_series_stays_within_tail(terms in 10u64..3000, extra in 1u64..3000, s in 2.05f64..6.0) {
        for term in [SeriesTerm::Fn(Delta), SeriesTerm::Pointwise(Delta, Tau), SeriesTerm::Convolution(Id, Delta)] {
            let a = dirichlet::series_partial_sum(term, s, terms).unwrap();
            let b = dirichlet::series_partial_sum(term, s, terms + extra).unwrap();
            prop_assert!((b.value - a.value).abs() <= a.tail_bound, "{} s={}", term, s);
        }
    }
}

#[test]
fn associativity_on_tables() {
    let fns = [One, Id, Mu, Delta, Phi, Sigma];
    let n = 600;
    let tables: Vec<Vec<QValue>> = fns.iter().map(|&f| arithfn::sieve_range(f, n).unwrap()).collect();
    for a in &tables {
        for b in &tables {
            for c in &tables {
                let left = dirichlet::convolve_tables(&dirichlet::convolve_tables(a, b), c);
                let right = dirichlet::convolve_tables(a, &dirichlet::convolve_tables(b, c));
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn derivative_route_for_six_functions_to_1e4() {
    for f in [One, Id, Mu, Phi, Tau, Sigma] {
        let oracle = dirichlet::convolve_range(f, Delta, 10_000).unwrap();
        for n in 1..=10_000u64 {
            assert_eq!(dirichlet::f_star_delta_at(f, n).unwrap(), oracle[n as usize - 1], "{f} at {n}");
        }
    }
}

#[test]
fn counterexamples_reverify() {
    let report = identities::check_conjecture_eq11(2000).unwrap();
    assert_ne!(report.status, Status::Holds);
    assert_eq!(report.status == Status::Holds, report.counterexamples.is_empty());
    for c in &report.counterexamples {
        let n = c.input[0];
        let lhs = dirichlet::convolve_at(Mu, Delta, n).unwrap();
        assert_eq!(lhs, c.lhs);
        assert_ne!(c.lhs, c.rhs);
    }
}

#[test]
fn theorem1_holds_for_every_multiplicative_entry() {
    for f in ArithFnId::multiplicative() {
        let r = identities::check_theorem1(f, 120).unwrap();
        assert_eq!(r.status, Status::Holds, "{f}");
    }
}

#[test]
fn lemma2_zero_denominators_none_in_catalog() {
    for f in ArithFnId::multiplicative() {
        let r = identities::check_lemma2(f, 3000).unwrap();
        assert_eq!(r.status, Status::Holds, "{f}");
        assert_eq!(r.extra["zero_denominators"], 0, "{f}");
    }
}
