//! The universal R-matrix evaluated on a pair of modules as a truncated
//! ordered product of q-exponentials of root vectors.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{build_root_vectors, AffineModule};
use crate::error::{Error, Result};
use crate::repr_osp::cartan_part;
use crate::scalar::qnum::ceil_factorial;
use crate::scalar::Scalar;
use crate::superlinalg::{graded_kron, GradedMatrix};

/// `exp_x(X) = Σ_k X^k / ⌈k⌉_x!`; `X` must be nilpotent.
pub fn q_exp<S: Scalar>(x_mat: &GradedMatrix<S>, x: &S) -> Result<GradedMatrix<S>> {
    let space = x_mat.domain().clone();
    let mut acc = GradedMatrix::identity(space.clone());
    let mut power = acc.clone();
    for k in 1..=space.dim() + 1 {
        power = power.compose(x_mat)?;
        if power.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&power.scale(&ceil_factorial(k as i64, x)?.inv()?))?;
    }
    Err(Error::NonConvergence("q-exponential of a non-nilpotent operator".into()))
}

/// The four factors of the truncated product; `r0` contains `f_q`.
#[derive(Clone, Debug)]
pub struct RProduct<S: Scalar> {
    pub nmax: usize,
    pub q_part: GradedMatrix<S>,
    pub r_gt0: GradedMatrix<S>,
    pub r0: GradedMatrix<S>,
    pub r_lt0: GradedMatrix<S>,
}

impl<S: Scalar> RProduct<S> {
    pub fn product(&self) -> Result<GradedMatrix<S>> {
        self.q_part.compose(&self.r_gt0)?.compose(&self.r0)?.compose(&self.r_lt0)
    }
}

fn diag_exp<S: Scalar>(m: &GradedMatrix<S>) -> Result<GradedMatrix<S>> {
    if !m.is_diagonal() {
        return Err(Error::Unsupported {
            backend: S::BACKEND,
            op: "exponential of a non-diagonal Cartan-commuting factor".into(),
        });
    }
    let diag = m
        .diagonal_entries()
        .iter()
        .map(|v| {
            v.exp().ok_or_else(|| Error::Unsupported {
                backend: S::BACKEND,
                op: "exp".into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GradedMatrix::diagonal(m.domain().clone(), diag)
}

/// `(π_a ⊗ π_b)(ℛ)` truncated at root-vector index `nmax`. Only raising
/// operators of `a` and lowering operators of `b` enter, so `a` may be a
/// Borel module. The series in each factor converges geometrically in
/// `|λ_a/λ_b|²`.
pub fn build_r_product_truncated<S: Scalar>(
    a: &AffineModule<S>,
    b: &AffineModule<S>,
    nmax: usize,
) -> Result<RProduct<S>> {
    if !b.has_lowering() {
        return Err(Error::InvalidArgument("second factor needs lowering operators".into()));
    }
    if let (Some(la), Some(lb)) = (&a.lambda, &b.lambda) {
        let r = la.to_complex().norm() / lb.to_complex().norm();
        if r >= 1.0 {
            return Err(Error::Divergent(format!("|λ₁/λ₂| = {r} ≥ 1")));
        }
    }
    let p = &a.params;
    let ra = build_root_vectors(a, nmax)?;
    let rb = build_root_vectors(b, nmax)?;
    let space = Arc::new(a.space.tensor(&b.space));
    let x = -p.q_pow(-2);
    let qq = p.q_plus_qinv();
    let factor = |n: usize, ea: &GradedMatrix<S>, fb: &GradedMatrix<S>| {
        let c = qq.scale_i64(if n % 2 == 0 { -1 } else { 1 });
        q_exp(&graded_kron(ea, fb).scale(&c), &x)
    };
    let mut r_gt0 = GradedMatrix::identity(space.clone());
    for n in 0..=nmax {
        r_gt0 = r_gt0.compose(&factor(n, &ra.e_plus[n], &rb.f_plus[n])?)?;
    }
    let mut r_lt0 = GradedMatrix::identity(space.clone());
    for n in (0..=nmax).rev() {
        r_lt0 = r_lt0.compose(&factor(n, &ra.e_minus[n], &rb.f_minus[n])?)?;
    }
    let mut log_r0 = GradedMatrix::zero(space.clone(), space.clone(), crate::superlinalg::Parity::Even);
    let qq2 = qq.clone() * qq;
    for n in 1..=nmax {
        let ni = n as i64;
        let c = (qq2.clone() * S::from_i64(ni)).div(&(p.q_pow(2 * ni) - p.q_pow(-2 * ni)))?;
        log_r0 = log_r0.add(&graded_kron(&ra.e_imag[n], &rb.f_imag[n]).scale(&c))?;
    }
    Ok(RProduct {
        nmax,
        q_part: cartan_part(&a.space, &b.space, false, p)?,
        r_gt0,
        r0: diag_exp(&log_r0)?,
        r_lt0,
    })
}

/// Distance of the truncated product from a reference, both scaled to make
/// the `(0,0)` entry one, for a list of truncation orders.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    pub nmax: Vec<usize>,
    pub errors: Vec<f64>,
    /// `errors[k+1] / errors[k]`.
    pub ratios: Vec<f64>,
}

impl ConvergenceTrace {
    pub fn worst_ratio(&self) -> Option<f64> {
        self.ratios.iter().copied().reduce(f64::max)
    }
}

fn normalized<S: Scalar>(m: &GradedMatrix<S>) -> Result<GradedMatrix<S>> {
    Ok(m.scale(&m.get(0, 0).inv()?))
}

pub fn product_convergence<S: Scalar>(
    a: &AffineModule<S>,
    b: &AffineModule<S>,
    reference: &GradedMatrix<S>,
    orders: &[usize],
) -> Result<ConvergenceTrace> {
    let target = normalized(reference)?;
    let mut errors = Vec::new();
    for &n in orders {
        let r = normalized(&build_r_product_truncated(a, b, n)?.product()?)?;
        errors.push(r.max_abs_diff(&target)?);
    }
    let ratios = errors.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(ConvergenceTrace {
        nmax: orders.to_vec(),
        errors,
        ratios,
    })
}
