//! Coefficient arithmetic.
//!
//! Two backends share the [`Scalar`] contract: [`GaussianRational`] gives exact
//! verdicts in ℚ(i), [`ComplexFloat`] is used where infinite series force a
//! truncation (Fock-space supertraces, the `f_q` prefactor).

mod complex;
mod gaussian;
pub mod qnum;
pub mod sample;
pub mod series;
mod tracked;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub use complex::ComplexFloat;
pub use gaussian::GaussianRational;
pub use sample::{Constraint, SamplePoint, Sampler};
pub use series::TruncatedSeries;
pub use tracked::Tracked;

use crate::error::{Error, Result};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Short backend name used in error messages and reports.
    const BACKEND: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn imag_unit() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self>;
    /// Principal square root, when the backend can represent it.
    fn sqrt(&self) -> Option<Self>;
    fn exp(&self) -> Option<Self>;
    fn to_complex(&self) -> Complex64;
    fn to_scalar_string(&self) -> String;
    fn parse_scalar(s: &str) -> Result<Self>;

    fn is_one(&self) -> bool {
        self.is_zero_diff(&Self::one())
    }

    fn is_zero_diff(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }

    fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `i^k` for any integer `k`.
    fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::imag_unit(),
            2 => -Self::one(),
            _ => -Self::imag_unit(),
        }
    }

    fn sign_pow(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }

    fn scale_i64(&self, n: i64) -> Self {
        self.clone() * Self::from_i64(n)
    }
}

/// Deformation parameters. Only `q_*` is independent; `q = i q_*`.
#[derive(Clone, Debug, PartialEq)]
pub struct QParams<S: Scalar> {
    qs: S,
    q: S,
    qs_inv: S,
    q_inv: S,
    /// A fixed `q_*^{1/2}`, when the parameters were built from it.
    root: Option<S>,
}

impl<S: Scalar> QParams<S> {
    pub fn new(qs: S) -> Result<Self> {
        if qs.is_zero() {
            return Err(Error::SingularParameter("q_*".into()));
        }
        let q = S::imag_unit() * qs.clone();
        let qs_inv = qs.inv()?;
        let q_inv = q.inv()?;
        Ok(Self {
            qs,
            q,
            qs_inv,
            q_inv,
            root: None,
        })
    }

    /// `q_* = r²`, with `q_*^{1/2} = r` available on every backend.
    pub fn from_root(r: S) -> Result<Self> {
        let mut p = Self::new(r.clone() * r.clone())?;
        p.root = Some(r);
        Ok(p)
    }

    pub fn root(&self) -> Option<&S> {
        self.root.as_ref()
    }

    pub fn qs(&self) -> &S {
        &self.qs
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn qs_inv(&self) -> &S {
        &self.qs_inv
    }

    pub fn q_inv(&self) -> &S {
        &self.q_inv
    }

    pub fn qs_pow(&self, n: i64) -> S {
        if n >= 0 {
            self.qs.powi(n).expect("non-negative power")
        } else {
            self.qs_inv.powi(-n).expect("non-negative power")
        }
    }

    pub fn q_pow(&self, n: i64) -> S {
        if n >= 0 {
            self.q.powi(n).expect("non-negative power")
        } else {
            self.q_inv.powi(-n).expect("non-negative power")
        }
    }

    /// `q_*^{e/2}`. Odd `e` needs a backend with square roots.
    pub fn qs_half_pow(&self, e: i64) -> Result<S> {
        if e.rem_euclid(2) == 0 {
            return Ok(self.qs_pow(e / 2));
        }
        let r = self.root.clone().or_else(|| self.qs.sqrt()).ok_or_else(|| Error::Unsupported {
            backend: S::BACKEND,
            op: "q_*^(1/2)".into(),
        })?;
        let r_inv = r.inv()?;
        Ok(if e >= 0 { r.powi(e)? } else { r_inv.powi(-e)? })
    }

    /// `q + q^{-1}`, the ubiquitous normalisation of the superalgebra.
    pub fn q_plus_qinv(&self) -> S {
        self.q.clone() + self.q_inv.clone()
    }

    pub fn q_minus_qinv(&self) -> S {
        self.q.clone() - self.q_inv.clone()
    }

    pub fn qs_minus_qsinv(&self) -> S {
        self.qs.clone() - self.qs_inv.clone()
    }
}
