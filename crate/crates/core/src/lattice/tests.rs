use num_complex::Complex64 as C;

use super::*;
use crate::prefund::build_prefundamental;
use crate::repr_affine::{build_eval, build_r_s1};
use crate::scalar::qnum::qint;
use crate::scalar::{Constraint, GaussianRational as G, SamplePoint, Sampler};

/// `(params with q_* = r², r, λ, ν)`, with every closed form used below pole-free.
fn square_point(seed: u64) -> (QParams<G>, G, G, G) {
    let mut s = Sampler::with_lambdas(2);
    for e in -30..=30 {
        s = s.constraint(Constraint::new(format!("ν² ≠ λ² r^{e}"), move |pt: &SamplePoint| {
            let l = &pt.lambdas;
            l[1].clone() * l[1].clone() - l[0].clone() * l[0].clone() * pt.qs.powi(e).unwrap()
        }));
    }
    let pt = s.sample(seed).unwrap();
    let r = pt.qs.clone();
    (QParams::new(r.clone() * r.clone()).unwrap(), r, pt.lambdas[0].clone(), pt.lambdas[1].clone())
}

/// `|q_*| = 1`, away from roots of unity.
fn unit_params() -> QParams<C> {
    QParams::new(C::new(0.6, 0.8)).unwrap()
}

/// `λ/ν` is pinned small against `q_*^{±3}` so that the `f_q` series used for the numeric
/// confirmation converges.
fn exact_chain(n: usize, seed: u64) -> (Chain<G>, G) {
    let (p, _, _, nu) = square_point(seed);
    let e = if p.qs().abs() > 1.0 { -3 } else { 3 };
    let lam = nu.clone() * G::from_parts(1, 5, 1, 9) * p.qs_pow(e);
    let spec = ChainSpec::uniform(n, nu, G::from_parts(1, 2, 1, 3)).with_normalization(Normalization::FqOmitted);
    (Chain::new(spec, &p).unwrap(), lam)
}

fn numeric_chain(n: usize, fock: usize, nmax: usize) -> Chain<C> {
    let spec = ChainSpec::uniform(n, C::new(1.0, 0.0), C::new(0.5, 0.0)).with_truncation(fock, nmax, 40);
    Chain::new(spec, &unit_params()).unwrap()
}

fn lam6() -> C {
    C::new(1.0 / 6.0, 0.0)
}

#[test]
fn trivial_aux_gives_identity() {
    let (chain, lam) = exact_chain(2, 0);
    let t0 = chain.transfer(Aux::Eval { s: 0 }, &lam).unwrap();
    assert!(t0.operator.equals(&chain.identity()));
    let chain = numeric_chain(2, 8, 4);
    let t0 = chain.transfer(Aux::Eval { s: 0 }, &lam6()).unwrap();
    assert!(t0.operator.max_abs_diff(&chain.identity()).unwrap() < 1e-12);
}

#[test]
fn empty_chain_gives_characters() {
    let (p, _, lam, _) = square_point(1);
    let t = G::from_parts(2, 3, 0, 1);
    let chain = Chain::new(ChainSpec::uniform(0, G::one(), t.clone()), &p).unwrap();
    let t1 = chain.transfer(Aux::Eval { s: 1 }, &lam).unwrap().operator;
    assert_eq!(t1.get(0, 0), t.inv().unwrap() - t.clone());
    let q = chain.transfer(Aux::Prefundamental { sign: Sign::Plus }, &lam).unwrap().operator;
    assert_eq!(q.get(0, 0), (G::one() + t.clone() * t).inv().unwrap());
}

#[test]
fn spin_one_half_l_matches_four_by_four() {
    for seed in 0..3 {
        let (p, _, lam, nu) = square_point(seed);
        let l = build_l_finite(1, &lam, 1, &nu, Normalization::FqOmitted, 0, &p).unwrap();
        let r = build_r_s1(&lam, Sign::Plus, &nu, Sign::Plus, &p).unwrap();
        assert!(l.proportional_to(&r).unwrap().is_some(), "seed {seed}");
    }
}

#[test]
fn verma_top_block_is_finite_l() {
    let p = unit_params();
    let (lam, nu) = (C::new(0.2, 0.05), C::new(1.0, 0.0));
    let site = build_eval(1, Sign::Plus, &nu, &p).unwrap();
    for s in 0..=3i64 {
        let verma = crate::prefund::build_verma(s, Sign::Plus, &lam, 10, &p).unwrap();
        let lv = build_l_borel(&verma, &site, 10).unwrap();
        let lf = build_l_finite(s, &lam, 1, &nu, Normalization::Universal, 40, &p).unwrap();
        // |k⟩ ↦ c_k e_k with c_k = [s]!/[s-k]!.
        let mut c = vec![C::new(1.0, 0.0)];
        for k in 1..=s {
            c.push(c[k as usize - 1] * qint(s - k + 1, p.qs()).unwrap());
        }
        let top = 2 * (s as usize + 1);
        let mut worst = 0.0f64;
        for r in 0..top {
            for col in 0..top {
                let v = lv.get(r, col) * c[r / 2] / c[col / 2];
                worst = worst.max((v - lf.get(r, col)).norm());
            }
        }
        assert!(worst < 1e-10, "s={s}: {worst}");
        // The sub-module of levels > s is invariant.
        let leak = lv.max_abs_where(|r, col| r < top && col >= top);
        assert!(leak < 1e-12, "s={s}: {leak}");
    }
}

#[test]
fn prefundamental_l_intertwines_and_is_normalised() {
    let p = unit_params();
    let nu = C::new(1.0, 0.0);
    for sign in [Sign::Plus, Sign::Minus] {
        let l = build_l_prefundamental(sign, &C::new(0.2, 0.0), &nu, 14, 8, &p).unwrap();
        assert!((l.get(0, 0) - 1.0).norm() < 1e-14);
        let aux = build_prefundamental(sign, &C::new(0.2, 0.0), 14, &p).unwrap();
        let site = build_eval(1, Sign::Plus, &nu, &p).unwrap();
        let res = intertwining_residual(&aux, &site, &l, 10).unwrap();
        assert!(res < 1e-9, "{sign:?}: {res}");
    }
}

#[test]
fn vacuum_block_is_triangular() {
    let p = unit_params();
    let l = build_l_prefundamental(Sign::Plus, &C::new(0.2, 0.0), &C::new(1.0, 0.0), 10, 6, &p).unwrap();
    assert_eq!(l.get(0, 1), C::new(0.0, 0.0));
    assert!(l.get(1, 1).norm() > 1e-6);
}

#[test]
fn l_convergence_certificate() {
    let p = unit_params();
    let cert = l_convergence(Sign::Plus, &C::new(0.2, 0.0), &C::new(1.0, 0.0), 16, 8, &p).unwrap();
    assert!(cert.stable(1e-9), "{cert:?}");
}

#[test]
fn intertwining_solver_agrees_with_product() {
    let p = unit_params();
    let (lam, nu) = (C::new(0.2, 0.0), C::new(1.0, 0.0));
    for sign in [Sign::Plus, Sign::Minus] {
        let sol = solve_l_by_intertwining(sign, &lam, &nu, 12, true, 1e-10, &p).unwrap();
        assert_eq!(sol.nullity, 1);
        assert!(sol.block_dims.iter().all(|(_, d)| *d == 1));
        let l = build_l_prefundamental(sign, &lam, &nu, 12, 10, &p).unwrap();
        let t = 2 * sol.trusted_levels;
        let diff = (0..t)
            .flat_map(|r| (0..t).map(move |c| (r, c)))
            .map(|(r, c)| (sol.l.get(r, c) - l.get(r, c)).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-8, "{sign:?}: {diff}");
    }
}

#[test]
fn weight_conservation_follows_from_cartan_intertwining() {
    let p = unit_params();
    let (lam, nu) = (C::new(0.2, 0.0), C::new(1.0, 0.0));
    let free = solve_l_by_intertwining(Sign::Plus, &lam, &nu, 5, false, 1e-10, &p).unwrap();
    let ansatz = solve_l_by_intertwining(Sign::Plus, &lam, &nu, 5, true, 1e-10, &p).unwrap();
    assert!(free.unknowns > ansatz.unknowns);
    let sp = free.l.domain().clone();
    assert!(free.l.entries().all(|(r, c, _)| sp.weight(r) == sp.weight(c)));
    assert!(free.l.max_abs_diff(&ansatz.l).unwrap() < 1e-10);
}

#[test]
fn transfer_matrices_commute_exactly() {
    let (chain, lam) = exact_chain(2, 3);
    let lam2 = lam.clone() * G::from_parts(3, 2, 1, 2);
    for (s1, s2) in [(1, 1), (1, 2)] {
        let a = chain.transfer(Aux::Eval { s: s1 }, &lam).unwrap().operator;
        let b = chain.transfer(Aux::Eval { s: s2 }, &lam2).unwrap().operator;
        assert!(a.commutator(&b).unwrap().is_zero(), "s = {s1}, {s2}");
        assert!(!a.is_diagonal());
    }
}

#[test]
fn q_operators_commute_with_transfer() {
    let chain = numeric_chain(2, 16, 8);
    let t1 = chain.transfer(Aux::Eval { s: 1 }, &C::new(0.3, 0.1)).unwrap().operator;
    for sign in [Sign::Plus, Sign::Minus] {
        let q = chain.transfer(Aux::Prefundamental { sign }, &lam6()).unwrap().operator;
        let c = t1.commutator(&q).unwrap().max_abs();
        assert!(c < 1e-9, "{sign:?}: {c}");
    }
}

#[test]
fn mixed_normalisations_are_refused() {
    let (chain, lam) = exact_chain(1, 2);
    let a = chain.transfer(Aux::Eval { s: 1 }, &lam).unwrap();
    let mut b = a.clone();
    b.normalization = Normalization::Universal;
    assert!(a.check_compatible(&b).is_err());
    assert!(chain.transfer(Aux::Prefundamental { sign: Sign::Plus }, &lam).is_err());
    let numeric = numeric_chain(1, 8, 4).spec.with_normalization(Normalization::FqOmitted);
    let chain = Chain::new(numeric, &unit_params()).unwrap();
    assert!(verify_functional_relations(&chain, &lam6(), &[RelationFamily::T2], 1e-6).is_err());
}

#[test]
fn structural_fusion_is_a_multiple_of_sigma_power() {
    let (chain, lam) = exact_chain(1, 4);
    for s in 1..=2 {
        let f = structural_fusion(&chain, s, &lam).unwrap();
        assert!(f.holds(1e-8), "{f:?}");
    }
}

#[test]
fn structural_fusion_on_two_sites() {
    let (chain, lam) = exact_chain(2, 5);
    let f = structural_fusion(&chain, 1, &lam).unwrap();
    assert!(f.holds(1e-8), "{f:?}");
}

#[test]
fn relations_on_one_site() {
    let chain = numeric_chain(1, 20, 8);
    let report = verify_functional_relations(&chain, &lam6(), &RelationFamily::all(), 1e-8).unwrap();
    for r in &report.residuals {
        assert!(r.passed, "{r:?}");
    }
    assert!(report.verdict, "{:?}", report.certificates);
}

#[test]
fn tq_on_two_sites() {
    let chain = numeric_chain(2, 16, 8);
    let fams = [RelationFamily::Tq(Sign::Plus), RelationFamily::Tq(Sign::Minus), RelationFamily::Wronskian];
    let report = verify_functional_relations(&chain, &lam6(), &fams, 1e-8).unwrap();
    assert!(report.verdict, "{report:?}");
}

#[test]
fn t2_with_unit_constant_fails() {
    // `T₂(hλ) = T₁(q_*λ)T₁(λ) + 1`; the constant must be `-σ`.
    let chain = numeric_chain(1, 12, 6);
    let h = chain.params.qs_half_pow(1).unwrap();
    let t = |s: i64, l: C| chain.transfer(Aux::Eval { s }, &l).unwrap().operator;
    let lhs = t(2, h * lam6());
    let rhs = t(1, h * h * lam6()).compose(&t(1, lam6())).unwrap().add(&chain.identity()).unwrap();
    assert!(lhs.max_abs_diff(&rhs).unwrap() > 1e-3);
}
