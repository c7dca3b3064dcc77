use std::sync::Arc;

use proptest::prelude::*;

use superq_core::scalar::{GaussianRational as G, Scalar, TruncatedSeries};
use superq_core::superlinalg::{graded_kron, supertrace, GradedMatrix, GradedSpace, Label, Parity};

fn gaussian() -> impl Strategy<Value = G> {
    (-40i64..40, 1i64..12, -40i64..40, 1i64..12).prop_map(|(a, b, c, d)| G::from_parts(a, b, c, d))
}

fn space(parities: &[bool]) -> Arc<GradedSpace> {
    let basis = parities
        .iter()
        .enumerate()
        .map(|(i, odd)| (Label::Level(i as i64), if *odd { Parity::Odd } else { Parity::Even }, i as i64))
        .collect();
    Arc::new(GradedSpace::new(basis).unwrap())
}

/// An even operator with the given entries, dropping those that would be odd.
fn even(sp: &Arc<GradedSpace>, values: &[G]) -> GradedMatrix<G> {
    let n = sp.dim();
    let entries = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| sp.parity(r) == sp.parity(c))
        .map(|(r, c)| (r, c, values[r * n + c].clone()));
    GradedMatrix::from_entries(sp.clone(), sp.clone(), Parity::Even, entries).unwrap()
}

fn graded_case() -> impl Strategy<Value = (Vec<bool>, Vec<G>, Vec<G>)> {
    prop::collection::vec(any::<bool>(), 1..5).prop_flat_map(|p| {
        let n = p.len() * p.len();
        (
            Just(p),
            prop::collection::vec(gaussian(), n),
            prop::collection::vec(gaussian(), n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() + (b.clone() + c.clone()), (a.clone() + b.clone()) + c.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn scalar_strings_round_trip(a in gaussian()) {
        prop_assert_eq!(G::parse_scalar(&a.to_scalar_string()).unwrap(), a);
    }

    #[test]
    fn powers_add(a in gaussian(), m in -4i64..5, n in -4i64..5) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.powi(m).unwrap() * a.powi(n).unwrap(), a.powi(m + n).unwrap());
    }

    #[test]
    fn series_log_inverts_exp(coeffs in prop::collection::vec(gaussian(), 1..6)) {
        let order = coeffs.len() as i64;
        let mut c = vec![G::zero()];
        c.extend(coeffs);
        let s = TruncatedSeries::from_coeffs("x", order, c);
        let back = s.exp().unwrap().log().unwrap();
        for d in 0..=order {
            prop_assert_eq!(back.coeff(d), s.coeff(d));
        }
        let u = s.add(&TruncatedSeries::from_coeffs("x", order, vec![G::one()])).unwrap();
        let again = u.log().unwrap().exp().unwrap();
        for d in 0..=order {
            prop_assert_eq!(again.coeff(d), u.coeff(d));
        }
    }

    #[test]
    fn supertrace_is_cyclic_and_multiplicative((p, x, y) in graded_case()) {
        let sp = space(&p);
        let (a, b) = (even(&sp, &x), even(&sp, &y));
        let ab = supertrace(&a.compose(&b).unwrap()).unwrap();
        let ba = supertrace(&b.compose(&a).unwrap()).unwrap();
        prop_assert_eq!(ab, ba);
        let kron = supertrace(&graded_kron(&a, &b)).unwrap();
        prop_assert_eq!(kron, supertrace(&a).unwrap() * supertrace(&b).unwrap());
    }
}
