//! Spectral R-matrix on `W_{s₁}^{ε₁}(λ₁) ⊗ W_{s₂}^{ε₂}(λ₂)` from the closed-form
//! coefficients of its factors `Q · R_{>0} · R_0 · R_{<0}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repr_osp::{both_odd, cartan_part, spin_space};
use crate::scalar::qnum::{floor_factorial, nonzero, qint_falling};
use crate::scalar::series::TruncatedSeries;
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{GradedMatrix, GradedSpace, Parity, Sign};

/// How the scalar prefactor `f_q` of the Cartan-commuting factor is treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FqMode {
    /// Dropped; the result is then the R-matrix up to a scalar.
    Omitted,
    /// Exponential of the defining series truncated at this order in `(λ₁/λ₂)²`.
    Series(usize),
}

#[derive(Clone, Debug)]
pub struct RFactorization<S: Scalar> {
    pub q_part: GradedMatrix<S>,
    pub r_gt0: GradedMatrix<S>,
    /// Diagonal, without `f_q`.
    pub r0: GradedMatrix<S>,
    pub r_lt0: GradedMatrix<S>,
    pub fq_mode: FqMode,
    pub fq: Option<S>,
    /// When both spins are odd the Cartan factor is stored divided by `q_*^{1/2}`.
    pub qs_half_extracted: bool,
}

impl<S: Scalar> RFactorization<S> {
    /// `Q · R_{>0} · (f_q R_0) · R_{<0}`.
    pub fn product(&self) -> Result<GradedMatrix<S>> {
        let r0 = match &self.fq {
            Some(f) => self.r0.scale(f),
            None => self.r0.clone(),
        };
        self.q_part.compose(&self.r_gt0)?.compose(&r0)?.compose(&self.r_lt0)
    }

    pub fn normalization(&self) -> Option<String> {
        self.qs_half_extracted.then(|| "q_*^(1/2)".to_string())
    }

    /// The product with the extracted `q_*^{1/2}` multiplied back in.
    pub fn restored(&self, p: &QParams<S>) -> Result<GradedMatrix<S>> {
        let r = self.product()?;
        if self.qs_half_extracted {
            Ok(r.scale(&p.qs_half_pow(1)?))
        } else {
            Ok(r)
        }
    }
}

/// `log f_q = Σ_n (1/n) x^n (q_*^{s₁n} - q_*^{-s₁n})(q_*^{s₂n} - q_*^{-s₂n}) / (q_*^{2n} - q_*^{-2n})`
/// with `x = (λ₁/λ₂)²`, returned exponentiated as a series in `x`.
pub fn fq_series<S: Scalar>(s1: i64, s2: i64, p: &QParams<S>, order: usize) -> Result<TruncatedSeries<S>> {
    let mut coeffs = vec![S::zero()];
    for n in 1..=order as i64 {
        let a = p.qs_pow(s1 * n) - p.qs_pow(-s1 * n);
        let b = p.qs_pow(s2 * n) - p.qs_pow(-s2 * n);
        let d = nonzero(p.qs_pow(2 * n) - p.qs_pow(-2 * n), "q_*^{2n} - q_*^{-2n}")?;
        coeffs.push((a * b).div(&d)? * S::from_ratio(1, n));
    }
    TruncatedSeries::from_coeffs("x", order as i64, coeffs).exp()
}

pub fn fq_value<S: Scalar>(s1: i64, s2: i64, lambda1: &S, lambda2: &S, p: &QParams<S>, order: usize) -> Result<S> {
    let x = lambda1.div(lambda2)?.powi(2)?;
    fq_series(s1, s2, p, order)?.evaluate(&x)
}

fn pole<S: Scalar>(value: S, what: String) -> Result<S> {
    nonzero(value, what)
}

/// All three non-Cartan factors of the R-matrix from their closed forms.
#[allow(clippy::too_many_arguments)]
pub fn build_r_closed_form<S: Scalar>(
    s1: i64,
    eps1: Sign,
    lambda1: &S,
    s2: i64,
    eps2: Sign,
    lambda2: &S,
    fq_mode: FqMode,
    p: &QParams<S>,
) -> Result<RFactorization<S>> {
    if lambda1.is_zero() || lambda2.is_zero() {
        return Err(Error::SingularParameter("spectral parameter zero".into()));
    }
    let v = spin_space(s1, eps1)?;
    let w = spin_space(s2, eps2)?;
    let space: Arc<GradedSpace> = Arc::new(v.tensor(&w));
    let d2 = w.dim();
    let col = |i: i64, j: i64| (i as usize) * d2 + j as usize;
    let l1sq = lambda1.powi(2)?;
    let l2sq = lambda2.powi(2)?;
    let l12 = lambda1.clone() * lambda2.clone();
    let qsd = p.qs_minus_qsinv();
    let qs = p.qs();
    let factor = |e: i64| l2sq.clone() - l1sq.clone() * p.qs_pow(e);
    let (mut gt, mut lt, mut diag) = (Vec::new(), Vec::new(), Vec::new());
    for i in 0..=s1 {
        for j in 0..=s2 {
            let tm1 = s1 - 2 * i;
            let tm2 = s2 - 2 * j;
            let dm = tm2 - tm1;
            let eps = (v.parity(i as usize).bit() + w.parity(j as usize).bit()) as i64;
            let mut r0 = S::one();
            for k in 1..=(s1 - i) {
                let num = factor(s1 + s2 - 2 * k + 2);
                let den = pole(factor(dm + 2 * k), format!("λ₂² - λ₁² q_*^{}", dm + 2 * k))?;
                r0 = r0 * num.div(&den)?;
            }
            for k in 1..=(s2 - j) {
                let num = factor(dm - 2 * k);
                let den = pole(factor(-s1 - s2 + 2 * k - 2), format!("λ₂² - λ₁² q_*^{}", -s1 - s2 + 2 * k - 2))?;
                r0 = r0 * num.div(&den)?;
            }
            diag.push(r0);
            for n in 1..=s1.min(s2) {
                let common = S::sign_pow(n * (eps - 1)) * qsd.powi(n)? * l12.powi(n)?;
                let fl = floor_factorial(n, p)?;
                if i - n >= 0 && j + n <= s2 {
                    let mut den = fl.clone();
                    for k in 1..=n {
                        den = den * pole(factor(dm - 2 * k), format!("λ₂² - λ₁² q_*^{}", dm - 2 * k))?;
                    }
                    let num = common.clone() * qint_falling(i, n, qs)? * qint_falling(s2 - j, n, qs)?;
                    gt.push((col(i - n, j + n), col(i, j), num.div(&den)?));
                }
                if i + n <= s1 && j - n >= 0 {
                    let mut den = fl;
                    for k in 1..=n {
                        let e = dm + 2 * (k + n - 1);
                        den = den * pole(factor(e), format!("λ₂² - λ₁² q_*^{e}"))?;
                    }
                    let num = common * qint_falling(s1 - i, n, qs)? * qint_falling(j, n, qs)?;
                    lt.push((col(i + n, j - n), col(i, j), num.div(&den)?));
                }
            }
        }
    }
    let id = GradedMatrix::identity(space.clone());
    let r_gt0 = id.add(&GradedMatrix::from_entries(space.clone(), space.clone(), Parity::Even, gt)?)?;
    let r_lt0 = id.add(&GradedMatrix::from_entries(space.clone(), space.clone(), Parity::Even, lt)?)?;
    let extract = both_odd(s1, s2);
    let fq = match fq_mode {
        FqMode::Omitted => None,
        FqMode::Series(order) => Some(fq_value(s1, s2, lambda1, lambda2, p, order)?),
    };
    Ok(RFactorization {
        q_part: cartan_part(&v, &w, extract, p)?,
        r_gt0,
        r0: GradedMatrix::diagonal(space, diag)?,
        r_lt0,
        fq_mode,
        fq,
        qs_half_extracted: extract,
    })
}

/// The 4×4 R-matrix on `W₁^{ε₁}(λ₁) ⊗ W₁^{ε₂}(λ₂)` written in `z = λ₂/λ₁`.
pub fn build_r_s1<S: Scalar>(lambda1: &S, eps1: Sign, lambda2: &S, eps2: Sign, p: &QParams<S>) -> Result<GradedMatrix<S>> {
    let space = Arc::new(spin_space(1, eps1)?.tensor(&*spin_space(1, eps2)?));
    let z2 = lambda2.div(lambda1)?.powi(2)?;
    let z = lambda2.div(lambda1)?;
    let qs = p.qs();
    let one = S::one();
    let e1 = eps1.value();
    let e2 = eps2.value();
    let a = one.clone() - z2.clone() * p.qs_pow(2);
    let b = (one.clone() - z2) * qs.clone();
    let c = z * (one - p.qs_pow(2));
    let entries = vec![
        (0, 0, a.clone()),
        (1, 1, b.scale_i64(e1)),
        (1, 2, c.scale_i64(e2)),
        (2, 1, c.scale_i64(e1)),
        (2, 2, b.scale_i64(e2)),
        (3, 3, a.scale_i64(-e1 * e2)),
    ];
    GradedMatrix::from_entries(space.clone(), space, Parity::Even, entries)
}
