use std::sync::Arc;

use super::{GradedMatrix, GradedSpace, Parity};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn require_square<S: Scalar>(a: &GradedMatrix<S>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::ShapeMismatch("supertrace of a non-square operator".into()))
    }
}

/// `str(A) = Σ_v (-1)^{|v|} A_vv`.
pub fn supertrace<S: Scalar>(a: &GradedMatrix<S>) -> Result<S> {
    weighted_supertrace(a, |_| S::one())
}

/// `Σ_v (-1)^{|v|} t^{J(v)} A_vv`.
pub fn twisted_supertrace<S: Scalar>(a: &GradedMatrix<S>, t: &S) -> Result<S> {
    let space = a.domain().clone();
    let powers = weight_powers(&space, t)?;
    weighted_supertrace(a, |i| powers[i].clone())
}

fn weight_powers<S: Scalar>(space: &GradedSpace, t: &S) -> Result<Vec<S>> {
    (0..space.dim()).map(|i| t.powi(space.weight(i))).collect()
}

fn weighted_supertrace<S: Scalar>(a: &GradedMatrix<S>, w: impl Fn(usize) -> S) -> Result<S> {
    require_square(a)?;
    let space = a.domain();
    let mut acc = S::zero();
    for (r, c, v) in a.entries() {
        if r == c {
            let term = v.clone() * w(r);
            acc = if space.parity(r).is_odd() { acc - term } else { acc + term };
        }
    }
    Ok(acc)
}

/// Supertrace over the first factor of `A` on `V⊗W`, weighting each `v` by
/// `weight(v)`. The Koszul sign `(-1)^{|v|(|w|+|w'|)}` keeps
/// `str_1(X⊗Y) = str(X)·Y` for odd `Y`.
pub fn partial_supertrace_first_with<S: Scalar>(
    a: &GradedMatrix<S>,
    v: &GradedSpace,
    w: &Arc<GradedSpace>,
    weight: impl Fn(usize) -> S,
) -> Result<GradedMatrix<S>> {
    require_square(a)?;
    if a.domain().as_ref() != &v.tensor(w) {
        return Err(Error::ShapeMismatch("operator does not act on V⊗W".into()));
    }
    let nw = w.dim();
    let mut out = GradedMatrix::zero(w.clone(), w.clone(), a.parity());
    let weights: Vec<S> = (0..v.dim()).map(&weight).collect();
    for (r, c, x) in a.entries() {
        let (i, j) = (r / nw, r % nw);
        let (k, l) = (c / nw, c % nw);
        if i != k {
            continue;
        }
        let exp = v.parity(i).bit() * (1 + w.parity(j).bit() + w.parity(l).bit());
        let term = x.clone() * weights[i].clone();
        out.add_entry(j, l, if Parity::from_bit(exp).is_odd() { -term } else { term })?;
    }
    Ok(out)
}

/// `str_1` with the twist `t^{J(v)}` on the first factor.
pub fn partial_supertrace_first<S: Scalar>(
    a: &GradedMatrix<S>,
    v: &GradedSpace,
    w: &Arc<GradedSpace>,
    t: &S,
) -> Result<GradedMatrix<S>> {
    let powers = weight_powers(v, t)?;
    partial_supertrace_first_with(a, v, w, |i| powers[i].clone())
}
