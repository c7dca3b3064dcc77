use super::*;
use crate::check::all_zero;
use crate::scalar::{GaussianRational as G, Sampler};
use crate::superlinalg::{embed_12, embed_13, embed_23};

fn params(seed: u64) -> QParams<G> {
    QParams::new(Sampler::default().sample(seed).unwrap().qs).unwrap()
}

fn fixed() -> QParams<G> {
    QParams::new(G::from_parts(3, 2, 1, 3)).unwrap()
}

#[test]
fn sl2_examples() {
    let p = fixed();
    let r0 = build_sl2_rep(0, &p).unwrap();
    assert!(r0.e.is_zero() && r0.f.is_zero());
    assert_eq!(r0.k.get(0, 0), G::one());
    let r1 = build_sl2_rep(1, &p).unwrap();
    assert_eq!(r1.e.get(0, 1), G::one());
    assert_eq!(r1.e.nnz(), 1);
    let r2 = build_sl2_rep(2, &p).unwrap();
    assert_eq!(r2.f.get(1, 0), qint(2, p.qs()).unwrap());
}

#[test]
fn w1_plus_matches_reference_example() {
    let p = fixed();
    let w = build_w(1, Sign::Plus, &p).unwrap();
    let i = G::imag_unit();
    assert_eq!(w.k.get(0, 0), -i.clone() * p.q().clone());
    assert_eq!(w.k.get(1, 1), -i.clone() * p.q_inv().clone());
    assert_eq!(w.f.get(1, 0), -i);
    assert_eq!(w.f.nnz(), 1);
}

#[test]
fn w2_plus_raising_matches_reference_example() {
    let p = fixed();
    let w = build_w(2, Sign::Plus, &p).unwrap();
    assert_eq!(w.e.get(0, 1), G::one());
    assert_eq!(w.e.get(1, 2), G::imag_unit() * (p.q_inv().clone() - p.q().clone()));
    assert_eq!(w.e.nnz(), 2);
}

#[test]
fn w0_is_one_dimensional() {
    let p = fixed();
    for sign in [Sign::Plus, Sign::Minus] {
        let w = build_w(0, sign, &p).unwrap();
        assert!(w.e.is_zero() && w.f.is_zero());
        assert_eq!(w.k.get(0, 0), G::from_i64(sign.value()));
    }
}

#[test]
fn defining_relations_hold() {
    for seed in 0..3 {
        let p = params(seed);
        for s in 0..=6 {
            for sign in [Sign::Plus, Sign::Minus] {
                let w = build_w(s, sign, &p).unwrap();
                assert!(all_zero(&w.relation_residuals().unwrap()), "s={s} {sign:?}");
            }
        }
    }
}

#[test]
fn coproduct_is_an_algebra_map() {
    let p = fixed();
    let a = build_w(1, Sign::Plus, &p).unwrap();
    let b = build_w(2, Sign::Plus, &p).unwrap();
    let e = coproduct(&a, &b, Generator::E);
    let f = coproduct(&a, &b, Generator::F);
    let k = coproduct(&a, &b, Generator::K);
    let ki = coproduct(&a, &b, Generator::KInv);
    let lhs = e.supercommutator(&f).unwrap();
    let rhs = k.sub(&ki).unwrap().scale(&p.q_plus_qinv().inv().unwrap());
    assert_eq!(lhs, rhs);
    assert!(k.is_diagonal());
    assert_eq!(coproduct_op(&a, &b, Generator::K).unwrap(), k);
}

#[test]
fn a_coefficients_agree() {
    for seed in 0..3 {
        let p = params(seed);
        let closed = a_coefficients(6, &p).unwrap();
        assert_eq!(closed, a_coefficients_recursive(6, &p).unwrap());
        assert_eq!(closed[0], G::one());
        assert_eq!(closed[1], -p.q_plus_qinv());
    }
}

#[test]
fn r_on_w1_w1_matches_reference_matrix() {
    let p = fixed();
    let w = build_w(1, Sign::Plus, &p).unwrap();
    let r = build_r_osp(&w, &w).unwrap();
    assert!(r.qs_half_extracted);
    assert_eq!(r.matrix, crate::gold::osp_w1w1(&p).unwrap());
}

#[test]
fn r_on_w2_w2_matches_reference_matrix() {
    let p = fixed();
    let w = build_w(2, Sign::Plus, &p).unwrap();
    let r = build_r_osp(&w, &w).unwrap();
    assert!(!r.qs_half_extracted);
    assert_eq!(r.matrix, crate::gold::osp_w2w2(&p).unwrap());
}

#[test]
fn r_with_trivial_first_factor_is_identity() {
    let p = fixed();
    let a = build_w(0, Sign::Plus, &p).unwrap();
    for s in 0..4 {
        let b = build_w(s, Sign::Minus, &p).unwrap();
        let r = build_r_osp(&a, &b).unwrap();
        assert_eq!(r.matrix, GradedMatrix::identity(r.matrix.domain().clone()));
    }
}

#[test]
fn closed_form_coefficients_match_matrix() {
    let p = params(4);
    for (s1, e1, s2, e2) in [(2, Sign::Plus, 2, Sign::Plus), (3, Sign::Minus, 2, Sign::Plus), (3, Sign::Plus, 3, Sign::Minus)] {
        let a = build_w(s1, e1, &p).unwrap();
        let b = build_w(s2, e2, &p).unwrap();
        let r = build_r_osp(&a, &b).unwrap();
        let nb = b.space.dim();
        for i in 0..a.space.dim() {
            for j in 0..nb {
                for ip in 0..a.space.dim() {
                    for jp in 0..nb {
                        let idx = RIndex {
                            twice_l1: s1,
                            twice_l2: s2,
                            twice_m1: a.space.weight(i),
                            twice_m2: b.space.weight(j),
                            twice_m1p: a.space.weight(ip),
                            twice_m2p: b.space.weight(jp),
                            parity1: a.space.parity(i),
                            parity2: b.space.parity(j),
                        };
                        let c = r_coefficient_closed_form(idx, &p).unwrap();
                        assert_eq!(c, r.matrix.get(ip * nb + jp, i * nb + j));
                    }
                }
            }
        }
    }
}

#[test]
fn closed_form_zero_case_and_range() {
    let p = fixed();
    let idx = RIndex {
        twice_l1: 2,
        twice_l2: 4,
        twice_m1: -2,
        twice_m2: 4,
        twice_m1p: 0,
        twice_m2p: 0,
        parity1: Parity::Even,
        parity2: Parity::Even,
    };
    assert_eq!(r_coefficient_closed_form(idx, &p).unwrap(), G::zero());
    let bad = RIndex { twice_m1: 4, ..idx };
    assert!(r_coefficient_closed_form(bad, &p).is_err());
}

fn intertwines(a: &OspRep<G>, b: &OspRep<G>) -> bool {
    let r = build_r_osp(a, b).unwrap().matrix;
    [Generator::E, Generator::F, Generator::K].iter().all(|&g| {
        let lhs = coproduct_op(a, b, g).unwrap().compose(&r).unwrap();
        let rhs = r.compose(&coproduct(a, b, g)).unwrap();
        lhs == rhs
    })
}

#[test]
fn r_intertwines_coproducts() {
    let p = params(2);
    for s1 in 0..=4 {
        for s2 in 0..=4 {
            for (e1, e2) in [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Plus), (Sign::Plus, Sign::Minus)] {
                let a = build_w(s1, e1, &p).unwrap();
                let b = build_w(s2, e2, &p).unwrap();
                assert!(intertwines(&a, &b), "s1={s1} s2={s2}");
            }
        }
    }
}

#[test]
fn graded_yang_baxter() {
    let p = params(5);
    for (s1, s2, s3) in [(1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 2)] {
        let v1 = build_w(s1, Sign::Plus, &p).unwrap();
        let v2 = build_w(s2, Sign::Minus, &p).unwrap();
        let v3 = build_w(s3, Sign::Plus, &p).unwrap();
        let r12 = embed_12(&build_r_osp(&v1, &v2).unwrap().matrix, &v3.space);
        let r23 = embed_23(&v1.space, &build_r_osp(&v2, &v3).unwrap().matrix);
        let r13 = embed_13(&build_r_osp(&v1, &v3).unwrap().matrix, &v1.space, &v2.space, &v3.space).unwrap();
        let lhs = r12.compose(&r13).unwrap().compose(&r23).unwrap();
        let rhs = r23.compose(&r13).unwrap().compose(&r12).unwrap();
        assert_eq!(lhs, rhs, "({s1},{s2},{s3})");
    }
}

#[test]
fn casimir_supercommutes_and_splits_by_sign() {
    let p = params(6);
    for s in 0..=4 {
        let plus = build_w(s, Sign::Plus, &p).unwrap();
        let minus = build_w(s, Sign::Minus, &p).unwrap();
        let (sq_p, c_p) = casimir(&plus).unwrap();
        let (sq_m, c_m) = casimir(&minus).unwrap();
        for rep in [&plus, &minus] {
            let (sq, _) = casimir(rep).unwrap();
            assert!(sq.compose(&rep.e).unwrap().add(&rep.e.compose(&sq).unwrap()).unwrap().is_zero());
            assert!(sq.compose(&rep.f).unwrap().add(&rep.f.compose(&sq).unwrap()).unwrap().is_zero());
        }
        let vp = graded_scalar_value(&sq_p).expect("graded scalar on W+");
        let vm = graded_scalar_value(&sq_m).expect("graded scalar on W-");
        assert_eq!(vp, -vm);
        assert_eq!(scalar_value(&c_p).unwrap(), scalar_value(&c_m).unwrap());
    }
}

#[test]
fn cartan_clifford_equivalence() {
    let p = fixed();
    for s1 in 0..=3 {
        for s2 in 0..=3 {
            for (e1, e2) in [(Sign::Plus, Sign::Plus), (Sign::Minus, Sign::Plus), (Sign::Minus, Sign::Minus)] {
                let a = build_w(s1, e1, &p).unwrap();
                let b = build_w(s2, e2, &p).unwrap();
                let r = build_r_osp(&a, &b).unwrap();
                assert!(cartan_clifford_check(&r, &a, &b).unwrap());
            }
        }
    }
}
