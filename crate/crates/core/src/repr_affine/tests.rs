use num_complex::Complex64 as C;

use super::*;
use crate::check::{all_zero, max_norm};
use crate::scalar::{Constraint, GaussianRational as G, SamplePoint, Sampler};
use crate::superlinalg::{embed_12, embed_13, embed_23};

fn sampler() -> Sampler {
    let mut s = Sampler::with_lambdas(2);
    for e in -12..=12 {
        s = s.constraint(Constraint::new(format!("λ₂² ≠ λ₁² q_*^{e}"), move |pt: &SamplePoint| {
            let qe = pt.qs.powi(e).unwrap();
            pt.lambdas[1].clone() * pt.lambdas[1].clone() - pt.lambdas[0].clone() * pt.lambdas[0].clone() * qe
        }));
    }
    s
}

fn point(seed: u64) -> (QParams<G>, G, G) {
    let pt = sampler().sample(seed).unwrap();
    (QParams::new(pt.qs.clone()).unwrap(), pt.lambdas[0].clone(), pt.lambdas[1].clone())
}

fn numeric_params() -> QParams<C> {
    QParams::new(C::new(1.3, 0.4)).unwrap()
}

#[test]
fn eval_relations_hold_exactly() {
    for seed in 0..3 {
        let (p, l1, _) = point(seed);
        for s in 0..=3 {
            for sign in [Sign::Plus, Sign::Minus] {
                let m = build_eval(s, sign, &l1, &p).unwrap();
                assert!(all_zero(&m.relation_residuals().unwrap()), "s={s} {sign:?}");
                assert!(all_zero(&serre_check(&m).unwrap()), "Serre s={s} {sign:?}");
            }
        }
    }
}

#[test]
fn serre_fails_with_wrong_constant() {
    let (p, l1, _) = point(7);
    let m = build_eval(3, Sign::Plus, &l1, &p).unwrap();
    let wrong = curly(3, &p).unwrap() + G::one();
    let r = serre_combination(&m.e1, &m.e0, &wrong).unwrap();
    assert!(!r.is_zero());
}

#[test]
fn zero_spectral_parameter_is_rejected() {
    let (p, _, _) = point(1);
    assert!(matches!(
        build_eval(1, Sign::Plus, &G::zero(), &p),
        Err(Error::SingularParameter(_))
    ));
}

#[test]
fn root_vectors_match_closed_forms() {
    let (p, l1, _) = point(3);
    for s in 1..=3 {
        for sign in [Sign::Plus, Sign::Minus] {
            let m = build_eval(s, sign, &l1, &p).unwrap();
            let rv = build_root_vectors(&m, 4).unwrap();
            let mut kinds = vec![RootKind::EDelta, RootKind::FDelta];
            for n in 0..=4 {
                kinds.extend([RootKind::EPlus(n), RootKind::EMinus(n), RootKind::FPlus(n), RootKind::FMinus(n)]);
            }
            for n in 1..=4 {
                kinds.extend([RootKind::EPrime(n), RootKind::FPrime(n), RootKind::EImag(n), RootKind::FImag(n)]);
            }
            for k in kinds {
                let closed = root_vector_closed_matrix(s, sign, k, &l1, &p).unwrap();
                assert_eq!(rv.get(k).unwrap(), &closed, "s={s} {sign:?} {k:?}");
            }
        }
    }
}

#[test]
fn n_forms_agree() {
    let x = G::from_parts(5, 3, 1, 2);
    for tl in 0..5 {
        for j in 0..=tl {
            for n in 1..5 {
                let tm = tl - 2 * j;
                assert_eq!(n_bracket_form(tl, tm, n, &x).unwrap(), n_power_form(tl, tm, n, &x).unwrap());
            }
        }
    }
}

#[test]
fn partition_formula_with_corrected_constants() {
    let (p, l1, _) = point(5);
    for s in 1..=3 {
        let m = build_eval(s, Sign::Plus, &l1, &p).unwrap();
        let rv = build_root_vectors(&m, 5).unwrap();
        let c = p.q_plus_qinv();
        for n in 1..=5 {
            assert_eq!(partition_formula(&rv.e_prime, n, &c, false).unwrap(), rv.e_imag[n], "E n={n}");
            assert_eq!(partition_formula(&rv.f_prime, n, &-c.clone(), true).unwrap(), rv.f_imag[n], "F n={n}");
        }
    }
}

#[test]
fn partition_formula_with_difference_constant_fails_at_two() {
    let (p, l1, _) = point(5);
    let m = build_eval(2, Sign::Plus, &l1, &p).unwrap();
    let rv = build_root_vectors(&m, 2).unwrap();
    let c = p.q_minus_qinv();
    assert_eq!(partition_formula(&rv.e_prime, 1, &c, false).unwrap(), rv.e_imag[1]);
    assert_ne!(partition_formula(&rv.e_prime, 2, &c, false).unwrap(), rv.e_imag[2]);
}

#[test]
fn gold_r_spin_one() {
    for seed in 0..5 {
        let (p, l1, l2) = point(seed);
        let r = build_r_closed_form(2, Sign::Plus, &l1, 2, Sign::Plus, &l2, FqMode::Omitted, &p).unwrap();
        assert_eq!(r.product().unwrap(), crate::gold::affine_one(&p, &l1, &l2).unwrap(), "seed {seed}");
    }
}

#[test]
fn gold_r_spin_half() {
    for seed in 0..5 {
        let (p, l1, l2) = point(seed);
        let r = build_r_closed_form(1, Sign::Plus, &l1, 1, Sign::Plus, &l2, FqMode::Omitted, &p).unwrap();
        assert!(r.qs_half_extracted);
        let gold = crate::gold::affine_half(&p, &l1, &l2).unwrap();
        assert_eq!(r.product().unwrap(), gold, "seed {seed}");
        assert_eq!(r.normalization().as_deref(), Some("q_*^(1/2)"));
    }
}

#[test]
fn s1_matrix_proportional_to_closed_form() {
    for seed in 0..3 {
        let (p, l1, l2) = point(seed);
        for e1 in [Sign::Plus, Sign::Minus] {
            for e2 in [Sign::Plus, Sign::Minus] {
                let r = build_r_closed_form(1, e1, &l1, 1, e2, &l2, FqMode::Omitted, &p).unwrap();
                let s1 = build_r_s1(&l1, e1, &l2, e2, &p).unwrap();
                assert!(r.product().unwrap().proportional_to(&s1).unwrap().is_some(), "{e1:?} {e2:?}");
            }
        }
    }
}

fn intertwines(s1: i64, e1: Sign, s2: i64, e2: Sign, seed: u64) -> bool {
    let (p, l1, l2) = point(seed);
    let a = build_eval(s1, e1, &l1, &p).unwrap();
    let b = build_eval(s2, e2, &l2, &p).unwrap();
    let r = build_r_closed_form(s1, e1, &l1, s2, e2, &l2, FqMode::Omitted, &p).unwrap();
    all_zero(&intertwining_residuals(&a, &b, &r.product().unwrap(), &AffGen::ALL).unwrap())
}

#[test]
fn closed_form_intertwines() {
    let mut seed = 0;
    for (s1, s2) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 3), (3, 2)] {
        for e1 in [Sign::Plus, Sign::Minus] {
            for e2 in [Sign::Plus, Sign::Minus] {
                seed += 1;
                assert!(intertwines(s1, e1, s2, e2, seed), "({s1},{e1:?})⊗({s2},{e2:?})");
            }
        }
    }
}

#[test]
fn dropping_a_factor_breaks_intertwining() {
    let (p, l1, l2) = point(2);
    let a = build_eval(2, Sign::Plus, &l1, &p).unwrap();
    let b = build_eval(2, Sign::Plus, &l2, &p).unwrap();
    let r = build_r_closed_form(2, Sign::Plus, &l1, 2, Sign::Plus, &l2, FqMode::Omitted, &p).unwrap();
    let broken = r.q_part.compose(&r.r0).unwrap().compose(&r.r_lt0).unwrap();
    assert!(!all_zero(&intertwining_residuals(&a, &b, &broken, &AffGen::ALL).unwrap()));
}

#[test]
fn spectral_yang_baxter() {
    for (s, seed) in [(1, 11), (2, 12)] {
        let pt = Sampler::with_lambdas(3).sample(seed).unwrap();
        let p = QParams::new(pt.qs.clone()).unwrap();
        let l = &pt.lambdas;
        let r = |i: usize, j: usize| {
            build_r_closed_form(s, Sign::Plus, &l[i], s, Sign::Plus, &l[j], FqMode::Omitted, &p)
                .unwrap()
                .product()
                .unwrap()
        };
        let v = spin_space(s, Sign::Plus).unwrap();
        let r12 = embed_12(&r(0, 1), &v);
        let r13 = embed_13(&r(0, 2), &v, &v, &v).unwrap();
        let r23 = embed_23(&v, &r(1, 2));
        let lhs = r12.compose(&r13).unwrap().compose(&r23).unwrap();
        let rhs = r23.compose(&r13).unwrap().compose(&r12).unwrap();
        assert_eq!(lhs, rhs, "s={s}");
    }
}

#[test]
fn pole_is_reported() {
    let p = QParams::new(G::real(3, 2)).unwrap();
    let l1 = G::one();
    let l2 = p.qs().clone();
    // λ₂² = λ₁² q_*² hits a denominator of R_0
    let err = build_r_closed_form(1, Sign::Plus, &l1, 1, Sign::Plus, &l2, FqMode::Omitted, &p);
    assert!(matches!(err, Err(Error::SingularParameter(_))));
}

#[test]
fn fq_series_is_exact_on_rationals() {
    let (p, l1, l2) = point(4);
    let f = fq_value(1, 1, &l1, &l2, &p, 6).unwrap();
    let g = fq_value(1, 1, &l1, &l2, &p, 6).unwrap();
    assert_eq!(f, g);
    let s = fq_series(1, 2, &p, 4).unwrap();
    assert_eq!(s.coeff(0), G::one());
}

#[test]
fn product_form_matches_closed_form_numerically() {
    let p = numeric_params();
    let l1 = C::new(0.3, 0.0);
    let l2 = C::new(1.1, 0.2);
    for (s1, e1, s2, e2) in [
        (1, Sign::Plus, 1, Sign::Plus),
        (2, Sign::Plus, 2, Sign::Plus),
        (2, Sign::Plus, 1, Sign::Minus),
        (3, Sign::Minus, 2, Sign::Plus),
    ] {
        let a = build_eval(s1, e1, &l1, &p).unwrap();
        let b = build_eval(s2, e2, &l2, &p).unwrap();
        let prod = build_r_product_truncated(&a, &b, 20).unwrap();
        let closed = build_r_closed_form(s1, e1, &l1, s2, e2, &l2, FqMode::Series(60), &p).unwrap();
        let closed = closed.restored(&p).unwrap();
        let diff = prod.product().unwrap().max_abs_diff(&closed).unwrap();
        assert!(diff < 1e-9, "({s1},{e1:?})⊗({s2},{e2:?}): {diff}");
        let res = intertwining_residuals(&a, &b, &prod.product().unwrap(), &AffGen::ALL).unwrap();
        assert!(max_norm(&res) < 1e-9);
    }
}

#[test]
fn product_convergence_ratio() {
    let p = QParams::new(C::new(0.6, 0.8)).unwrap();
    let l1 = C::new(0.3, 0.0);
    let l2 = C::new(0.9, 0.1);
    let a = build_eval(2, Sign::Plus, &l1, &p).unwrap();
    let b = build_eval(2, Sign::Plus, &l2, &p).unwrap();
    let reference = build_r_closed_form(2, Sign::Plus, &l1, 2, Sign::Plus, &l2, FqMode::Omitted, &p)
        .unwrap()
        .product()
        .unwrap();
    let trace = product_convergence(&a, &b, &reference, &[2, 3, 4, 5, 6, 7]).unwrap();
    let bound = (l1 / l2).norm_sqr() + 0.05;
    assert!(trace.worst_ratio().unwrap() <= bound, "{trace:?}");
}

#[test]
fn product_diverges_outside_unit_ratio() {
    let p = numeric_params();
    let a = build_eval(1, Sign::Plus, &C::new(2.0, 0.0), &p).unwrap();
    let b = build_eval(1, Sign::Plus, &C::new(1.0, 0.0), &p).unwrap();
    assert!(matches!(build_r_product_truncated(&a, &b, 4), Err(Error::Divergent(_))));
}
