use std::collections::BTreeMap;
use std::sync::Arc;

use super::{GradedMatrix, GradedSpace};
use crate::error::Result;
use crate::scalar::Scalar;

/// Koszul tensor product: `(A⊗B)(v⊗w) = (-1)^{|B||v|} Av ⊗ Bw`.
pub fn graded_kron<S: Scalar>(a: &GradedMatrix<S>, b: &GradedMatrix<S>) -> GradedMatrix<S> {
    let dom = Arc::new(a.domain().tensor(b.domain()));
    let cod = Arc::new(a.codomain().tensor(b.codomain()));
    let (bd, bc) = (b.domain().dim(), b.codomain().dim());
    let b_odd = b.parity().is_odd();
    let mut entries = BTreeMap::new();
    for (i, k, x) in a.entries() {
        let flip = b_odd && a.domain().parity(k).is_odd();
        for (j, l, y) in b.entries() {
            let v = x.clone() * y.clone();
            entries.insert((i * bc + j, k * bd + l), if flip { -v } else { v });
        }
    }
    GradedMatrix::from_entries(dom, cod, a.parity() + b.parity(), entries.into_iter().map(|((r, c), v)| (r, c, v)))
        .expect("Koszul product of homogeneous operators is homogeneous")
}

/// `P(v⊗w) = (-1)^{|v||w|} w⊗v` from `V⊗W` to `W⊗V`.
pub fn graded_permutation<S: Scalar>(v: &GradedSpace, w: &GradedSpace) -> GradedMatrix<S> {
    let dom = Arc::new(v.tensor(w));
    let cod = Arc::new(w.tensor(v));
    let (nv, nw) = (v.dim(), w.dim());
    let mut entries = Vec::with_capacity(nv * nw);
    for i in 0..nv {
        for j in 0..nw {
            let sign = v.parity(i).koszul(w.parity(j));
            entries.push((j * nv + i, i * nw + j, S::from_i64(sign)));
        }
    }
    GradedMatrix::from_entries(dom, cod, super::Parity::Even, entries).expect("permutation is even")
}

/// `X ↦ X ⊗ 1_{V3}` on `V1⊗V2⊗V3`.
pub fn embed_12<S: Scalar>(x: &GradedMatrix<S>, v3: &Arc<GradedSpace>) -> GradedMatrix<S> {
    graded_kron(x, &GradedMatrix::identity(v3.clone()))
}

/// `X ↦ 1_{V1} ⊗ X` on `V1⊗V2⊗V3`.
pub fn embed_23<S: Scalar>(v1: &Arc<GradedSpace>, x: &GradedMatrix<S>) -> GradedMatrix<S> {
    graded_kron(&GradedMatrix::identity(v1.clone()), x)
}

/// `X` on `V1⊗V3` acting on the first and third factors of `V1⊗V2⊗V3`.
pub fn embed_13<S: Scalar>(
    x: &GradedMatrix<S>,
    v1: &Arc<GradedSpace>,
    v2: &Arc<GradedSpace>,
    v3: &Arc<GradedSpace>,
) -> Result<GradedMatrix<S>> {
    let id1 = GradedMatrix::identity(v1.clone());
    let swap_in = graded_kron(&id1, &graded_permutation(v2, v3));
    let swap_out = graded_kron(&id1, &graded_permutation(v3, v2));
    let mid = embed_12(x, v2);
    swap_out.compose(&mid)?.compose(&swap_in)
}
