//! Fock modules of the q-oscillator algebra and the Borel modules built from
//! them: prefundamental `ρ_±(λ)`, Verma `𝒲_s^±(λ)` and one-dimensional `U_p^±`,
//! together with the decomposition of `ρ₊ ⊗ ρ₋` and supercharacters.

mod character;
mod decompose;


use std::sync::Arc;

pub use character::{character, grothendieck_verify, truncated_character, Character, GrothendieckIdentity, LaurentPoly, Verdict};
pub use decompose::{decompose_tensor, BlockReport, Decomposition};

use crate::check::Residual;
use crate::error::{Error, Result};
use crate::repr_affine::{AffineModule, ModuleKind};
use crate::scalar::qnum::qint;
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{GradedMatrix, GradedSpace, Label, Parity, Sign};

/// Truncated Fock module `Π_±` on levels `0..n`. The vacuum is killed by
/// `α_±`; `α_∓` creates, normalised to one, and `α_±|k⟩ = c_k|k-1⟩` with
/// `c_k` fixed by `qα₊α₋ + q⁻¹α₋α₊ = -1/(q+q⁻¹)`.
#[derive(Clone, Debug)]
pub struct FockModule<S: Scalar> {
    pub sign: Sign,
    pub params: QParams<S>,
    pub space: Arc<GradedSpace>,
    pub creation: GradedMatrix<S>,
    pub annihilation: GradedMatrix<S>,
    pub h: GradedMatrix<S>,
    /// `c_k`, `k = 0..n`, with `c_0 = 0`.
    pub coeffs: Vec<S>,
}

fn level_space(n: usize, parity: impl Fn(usize) -> Parity, weight: impl Fn(usize) -> i64) -> Result<Arc<GradedSpace>> {
    Ok(Arc::new(GradedSpace::new(
        (0..n).map(|k| (Label::Level(k as i64), parity(k), weight(k))).collect(),
    )?))
}

pub fn build_fock<S: Scalar>(sign: Sign, n: usize, p: &QParams<S>) -> Result<FockModule<S>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Fock truncation {n} < 2")));
    }
    let space = level_space(n, |k| Parity::from_bit(k as i64), |k| -2 * k as i64)?;
    let rhs = -p.q_plus_qinv().inv()?;
    let (q, q_inv) = (p.q().clone(), p.q_inv().clone());
    let mut coeffs = vec![S::zero()];
    for k in 0..n - 1 {
        let c = coeffs[k].clone();
        coeffs.push(match sign {
            // q c_{k+1} + q⁻¹ c_k = rhs
            Sign::Plus => (rhs.clone() - c * q_inv.clone()) * q_inv.clone(),
            // q c_k + q⁻¹ c_{k+1} = rhs
            Sign::Minus => (rhs.clone() - c * q.clone()) * q.clone(),
        });
    }
    let creation = GradedMatrix::from_entries(
        space.clone(),
        space.clone(),
        Parity::Odd,
        (0..n - 1).map(|k| (k + 1, k, S::one())).collect::<Vec<_>>(),
    )?;
    let annihilation = GradedMatrix::from_entries(
        space.clone(),
        space.clone(),
        Parity::Odd,
        (0..n - 1).map(|k| (k, k + 1, coeffs[k + 1].clone())).collect::<Vec<_>>(),
    )?;
    let h_sign = if sign.is_plus() { -2 } else { 2 };
    let h = GradedMatrix::diagonal(space.clone(), (0..n as i64).map(|k| S::from_i64(h_sign * k)).collect())?;
    Ok(FockModule {
        sign,
        params: p.clone(),
        space,
        creation,
        annihilation,
        h,
        coeffs,
    })
}

impl<S: Scalar> FockModule<S> {
    pub fn levels(&self) -> usize {
        self.space.dim()
    }

    pub fn alpha_plus(&self) -> &GradedMatrix<S> {
        if self.sign.is_plus() {
            &self.annihilation
        } else {
            &self.creation
        }
    }

    pub fn alpha_minus(&self) -> &GradedMatrix<S> {
        if self.sign.is_plus() {
            &self.creation
        } else {
            &self.annihilation
        }
    }

    /// Residuals of the oscillator relations restricted to levels `< n-1`,
    /// where truncation cannot interfere.
    pub fn relation_residuals(&self) -> Result<Vec<Residual<S>>> {
        let p = &self.params;
        let (ap, am) = (self.alpha_plus(), self.alpha_minus());
        let id = GradedMatrix::identity(self.space.clone());
        let lhs = ap.compose(am)?.scale(p.q()).add(&am.compose(ap)?.scale(p.q_inv()))?;
        let rhs = id.scale(&-p.q_plus_qinv().inv()?);
        let keep = self.levels() - 1;
        let trusted = |m: GradedMatrix<S>| restrict(&m, keep);
        Ok(vec![
            Residual::new("q a+ a- + q^-1 a- a+ = -1/(q+q^-1)", trusted(lhs.sub(&rhs)?)),
            Residual::new(
                "[H, a+] = 2 a+",
                trusted(self.h.commutator(ap)?.sub(&ap.scale(&S::from_i64(2)))?),
            ),
            Residual::new(
                "[H, a-] = -2 a-",
                trusted(self.h.commutator(am)?.add(&am.scale(&S::from_i64(2)))?),
            ),
        ])
    }
}

/// Keeps the entries with both indices below `keep`.
pub(crate) fn restrict<S: Scalar>(m: &GradedMatrix<S>, keep: usize) -> GradedMatrix<S> {
    let entries = m
        .entries()
        .filter(|(r, c, _)| *r < keep && *c < keep)
        .map(|(r, c, v)| (r, c, v.clone()))
        .collect::<Vec<_>>();
    GradedMatrix::from_entries(m.domain().clone(), m.codomain().clone(), m.parity(), entries)
        .expect("restriction keeps parity")
}

fn borel<S: Scalar>(
    kind: ModuleKind,
    p: &QParams<S>,
    lambda: Option<S>,
    space: Arc<GradedSpace>,
    e1: GradedMatrix<S>,
    e0: GradedMatrix<S>,
) -> Result<AffineModule<S>> {
    let k1: Vec<S> = (0..space.dim())
        .map(|i| p.qs_pow(space.weight(i)).scale_i64(space.parity(i).sign()))
        .collect();
    let k1 = GradedMatrix::diagonal(space.clone(), k1)?;
    Ok(AffineModule {
        kind,
        params: p.clone(),
        lambda,
        k0: k1.inverse_diagonal()?,
        k1,
        e1,
        e0,
        f1: None,
        f0: None,
        space,
    })
}

/// `ρ_±(λ)`: `ℰ₁ = λα_±`, `ℰ₀ = λα_∓`, `𝒦₁ = q^{±ℋ}`, on `n` levels.
pub fn build_prefundamental<S: Scalar>(sign: Sign, lambda: &S, n: usize, p: &QParams<S>) -> Result<AffineModule<S>> {
    if lambda.is_zero() {
        return Err(Error::SingularParameter("lambda".into()));
    }
    let fock = build_fock(sign, n, p)?;
    borel(
        ModuleKind::Prefundamental { sign, levels: n },
        p,
        Some(lambda.clone()),
        fock.space.clone(),
        fock.alpha_plus_or_minus(sign).scale(lambda),
        fock.alpha_plus_or_minus(sign.flip()).scale(lambda),
    )
}

impl<S: Scalar> FockModule<S> {
    fn alpha_plus_or_minus(&self, which: Sign) -> &GradedMatrix<S> {
        if which.is_plus() {
            self.alpha_plus()
        } else {
            self.alpha_minus()
        }
    }
}

/// `𝒲_s^±(λ)` on `n` levels: `ℰ₀|k⟩ = λ|k+1⟩`, `ℰ₁|k⟩ = λ[k][s-k+1]|k-1⟩`,
/// `𝒦₁|k⟩ = ±(-1)^k q_*^{s-2k}|k⟩`. `s` may be negative.
pub fn build_verma<S: Scalar>(s: i64, sign: Sign, lambda: &S, n: usize, p: &QParams<S>) -> Result<AffineModule<S>> {
    if n < 1 {
        return Err(Error::InvalidArgument("Verma truncation must be positive".into()));
    }
    if lambda.is_zero() {
        return Err(Error::SingularParameter("lambda".into()));
    }
    let space = level_space(n, |k| sign.times_power(k as i64).parity(), |k| s - 2 * k as i64)?;
    let qs = p.qs();
    let e0 = GradedMatrix::from_entries(
        space.clone(),
        space.clone(),
        Parity::Odd,
        (0..n - 1).map(|k| (k + 1, k, lambda.clone())).collect::<Vec<_>>(),
    )?;
    let mut e1 = Vec::new();
    for k in 1..n {
        let kk = k as i64;
        let c = lambda.clone() * qint(kk, qs)? * qint(s - kk + 1, qs)?;
        if !c.is_zero() {
            e1.push((k - 1, k, c));
        }
    }
    let e1 = GradedMatrix::from_entries(space.clone(), space.clone(), Parity::Odd, e1)?;
    borel(
        ModuleKind::Verma { s, sign, levels: n },
        p,
        Some(lambda.clone()),
        space,
        e1,
        e0,
    )
}

/// `U_p^±`: one vector, even for `+`, with `𝒦₁ = ±q_*^p` and `ℰᵢ = 0`.
pub fn build_onedim<S: Scalar>(p_weight: i64, sign: Sign, p: &QParams<S>) -> Result<AffineModule<S>> {
    let space = Arc::new(GradedSpace::new(vec![(Label::Point, sign.parity(), p_weight)])?);
    let zero = GradedMatrix::zero(space.clone(), space.clone(), Parity::Odd);
    borel(ModuleKind::OneDim { p: p_weight, sign }, p, None, space, zero.clone(), zero)
}

/// The parity module `U_0^-`.
pub fn build_sigma<S: Scalar>(p: &QParams<S>) -> Result<AffineModule<S>> {
    build_onedim(0, Sign::Minus, p)
}

#[cfg(test)]
mod tests;
