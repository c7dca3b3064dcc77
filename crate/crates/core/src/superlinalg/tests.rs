use std::sync::Arc;

use num_complex::Complex64;

use super::*;
use crate::scalar::{GaussianRational as G, Scalar};

fn spin_space(s: i64) -> Arc<GradedSpace> {
    let basis = (0..=s)
        .map(|j| {
            let plus = j % 2 == 0;
            let p = if plus { Parity::Even } else { Parity::Odd };
            (Label::Spin { twice_l: s, twice_m: s - 2 * j, plus }, p, s - 2 * j)
        })
        .collect();
    Arc::new(GradedSpace::new(basis).unwrap())
}

fn raising(v: &Arc<GradedSpace>) -> GradedMatrix<G> {
    let n = v.dim();
    GradedMatrix::from_entries(v.clone(), v.clone(), Parity::Odd, (1..n).map(|j| (j - 1, j, G::from_i64(j as i64 + 1))))
        .unwrap()
}

fn lowering(v: &Arc<GradedSpace>) -> GradedMatrix<G> {
    let n = v.dim();
    GradedMatrix::from_entries(v.clone(), v.clone(), Parity::Odd, (1..n).map(|j| (j, j - 1, G::real(1, j as i64 + 2))))
        .unwrap()
}

#[test]
fn odd_operators_anticommute_through_kron() {
    let v = spin_space(2);
    let a = raising(&v);
    let b = lowering(&v);
    let id = GradedMatrix::identity(v.clone());
    let lhs = graded_kron(&id, &b).compose(&graded_kron(&a, &id)).unwrap();
    assert_eq!(lhs, graded_kron(&a, &b).neg());
}

#[test]
fn even_kron_is_ungraded() {
    let v = spin_space(1);
    let d = GradedMatrix::diagonal(v.clone(), vec![G::from_i64(2), G::from_i64(3)]).unwrap();
    let k = graded_kron(&d, &d);
    assert_eq!(k.diagonal_entries(), vec![4, 6, 6, 9].into_iter().map(G::from_i64).collect::<Vec<_>>());
}

#[test]
fn kron_sign_on_odd_first_vector() {
    // (1⊗E) on e_{-1/2,-}⊗v picks up -1, (E⊗K) does not.
    let v = spin_space(1);
    let e = raising(&v);
    let k = GradedMatrix::diagonal(v.clone(), vec![G::from_i64(5), G::from_i64(7)]).unwrap();
    let id = GradedMatrix::identity(v.clone());
    let one_e = graded_kron(&id, &e);
    assert_eq!(one_e.get(2, 3), -G::from_i64(2));
    let e_k = graded_kron(&e, &k);
    assert_eq!(e_k.get(0, 2), G::from_i64(2 * 5));
}

#[test]
fn permutation_signs_and_square() {
    let v = spin_space(1);
    let p: GradedMatrix<G> = graded_permutation(&v, &v);
    assert_eq!(p.get(3, 3), -G::one());
    assert_eq!(p.get(2, 1), G::one());
    assert_eq!(p.compose(&p).unwrap(), GradedMatrix::identity(Arc::new(v.tensor(&v))));
}

#[test]
fn permutation_inverse_on_mixed_spaces() {
    let v = spin_space(1);
    let w = spin_space(2);
    let p: GradedMatrix<G> = graded_permutation(&v, &w);
    let pb: GradedMatrix<G> = graded_permutation(&w, &v);
    assert_eq!(pb.compose(&p).unwrap(), GradedMatrix::identity(Arc::new(v.tensor(&w))));
}

#[test]
fn supertrace_of_identities() {
    assert_eq!(supertrace(&GradedMatrix::<G>::identity(spin_space(1))).unwrap(), G::zero());
    assert_eq!(supertrace(&GradedMatrix::<G>::identity(spin_space(2))).unwrap(), G::one());
}

#[test]
fn twisted_supertrace_of_cartan_at_unit_twist() {
    let qs = G::real(3, 2);
    let k = GradedMatrix::diagonal(spin_space(1), vec![qs.clone(), -qs.inv().unwrap()]).unwrap();
    let tr = twisted_supertrace(&k, &G::one()).unwrap();
    assert_eq!(tr, qs.clone() + qs.inv().unwrap());
}

#[test]
fn compose_with_identity_and_cancellation() {
    let v = spin_space(3);
    let a = raising(&v);
    assert_eq!(GradedMatrix::identity(v.clone()).compose(&a).unwrap(), a);
    assert!(a.add(&a.scale(&-G::one())).unwrap().is_zero());
}

#[test]
fn tolerance_equality() {
    let v = spin_space(1);
    let a = GradedMatrix::diagonal(v.clone(), vec![Complex64::new(1.0, 0.0); 2]).unwrap();
    let b = GradedMatrix::diagonal(v, vec![Complex64::new(1.0 + 1e-15, 0.0); 2]).unwrap();
    assert!(a.approx_eq(&b, 1e-12).unwrap());
    assert!(!a.equals(&b));
}

#[test]
fn super_cyclicity() {
    let v = spin_space(3);
    let a = raising(&v).compose(&raising(&v)).unwrap().add(&lowering(&v)).err();
    assert!(a.is_some(), "mixed-parity sums are rejected");
    let odd1 = raising(&v).add(&lowering(&v)).unwrap();
    let odd2 = lowering(&v).scale(&G::from_parts(1, 2, 3, 1)).add(&raising(&v).pow(3).unwrap()).unwrap();
    let ab = supertrace(&odd1.compose(&odd2).unwrap()).unwrap();
    let ba = supertrace(&odd2.compose(&odd1).unwrap()).unwrap();
    assert_eq!(ab, -ba);
    let even = odd1.compose(&odd1).unwrap();
    let ab = supertrace(&even.compose(&odd1.compose(&odd2).unwrap()).unwrap()).unwrap();
    let ba = supertrace(&odd1.compose(&odd2).unwrap().compose(&even).unwrap()).unwrap();
    assert_eq!(ab, ba);
}

#[test]
fn partial_supertrace_of_product() {
    let v = spin_space(2);
    let w = spin_space(1);
    let t = G::real(1, 3);
    let a = raising(&v).compose(&lowering(&v)).unwrap();
    for b in [raising(&w), GradedMatrix::diagonal(w.clone(), vec![G::from_i64(2), G::from_i64(5)]).unwrap()] {
        let ab = graded_kron(&a, &b);
        let p = partial_supertrace_first(&ab, &v, &w, &t).unwrap();
        assert_eq!(p, b.scale(&twisted_supertrace(&a, &t).unwrap()));
    }
    let odd = graded_kron(&raising(&v), &raising(&w));
    assert!(partial_supertrace_first(&odd, &v, &w, &t).unwrap().is_zero());
}

#[test]
fn embed_13_matches_direct_kron_on_separable_operators() {
    let v = spin_space(1);
    let a = raising(&v);
    let b = lowering(&v);
    let ab = graded_kron(&a, &b);
    let e13 = embed_13(&ab, &v, &v, &v).unwrap();
    let id = GradedMatrix::identity(v.clone());
    let direct = graded_kron(&a, &graded_kron(&id, &b));
    assert_eq!(e13, direct);
}

#[test]
fn dump_round_trip() {
    let v = spin_space(2);
    let a = raising(&v);
    let d = MatrixDump::from_matrix(&a);
    let back = MatrixDump::from_json(&d.to_json()).unwrap();
    assert_eq!(back, d);
    assert_eq!(back.parsed_entries::<G>().unwrap().len(), a.nnz());
}
