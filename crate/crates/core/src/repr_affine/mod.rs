//! U_q(C⁽²⁾(2)): evaluation modules, Serre relations, root vectors and the
//! spectral R-matrix, both from the closed-form coefficients and from the
//! truncated universal product.

mod closed;
mod product;
mod roots;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use closed::{build_r_closed_form, build_r_s1, fq_series, fq_value, FqMode, RFactorization};
pub use product::{build_r_product_truncated, product_convergence, q_exp, ConvergenceTrace, RProduct};
pub use roots::{
    build_root_vectors, matrix_log_series, partition_formula, root_vector_closed_matrix, root_vector_coefficient,
    n_bracket_form, n_power_form, RootKind, RootVectorSet,
};

use crate::check::Residual;
use crate::error::{Error, Result};
use crate::repr_osp::spin_space;
use crate::scalar::qnum::{curly, qint};
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{graded_kron, graded_permutation, GradedMatrix, GradedSpace, Label, Parity, Sign};

/// What a module is, for reports and dispatch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleKind {
    /// `W_s^±(λ)`.
    Eval { s: i64, sign: Sign },
    /// `ρ_±(λ)` on the Fock space truncated to `levels` vectors.
    Prefundamental { sign: Sign, levels: usize },
    /// `𝒲_s^±(λ)` truncated to `levels` vectors.
    Verma { s: i64, sign: Sign, levels: usize },
    /// `U_p^±`.
    OneDim { p: i64, sign: Sign },
}

/// A module of the upper Borel subalgebra, optionally extended to the full
/// algebra (`f1`, `f0` present). Weights in the space are the `𝒦₁` exponents
/// `J` with `𝒦₁ = (-1)^{|v|} q_*^J`.
#[derive(Clone, Debug)]
pub struct AffineModule<S: Scalar> {
    pub kind: ModuleKind,
    pub params: QParams<S>,
    pub lambda: Option<S>,
    pub space: Arc<GradedSpace>,
    pub e1: GradedMatrix<S>,
    pub e0: GradedMatrix<S>,
    pub f1: Option<GradedMatrix<S>>,
    pub f0: Option<GradedMatrix<S>>,
    pub k1: GradedMatrix<S>,
    pub k0: GradedMatrix<S>,
}

/// Evaluation modules carry the full set of generators.
pub type AffineEvalRep<S> = AffineModule<S>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AffGen {
    E0,
    E1,
    F0,
    F1,
    K0,
    K1,
}

impl AffGen {
    pub const ALL: [AffGen; 6] = [AffGen::E0, AffGen::E1, AffGen::F0, AffGen::F1, AffGen::K0, AffGen::K1];
    pub const BOREL: [AffGen; 3] = [AffGen::E0, AffGen::E1, AffGen::K1];

    pub fn name(self) -> &'static str {
        match self {
            AffGen::E0 => "E0",
            AffGen::E1 => "E1",
            AffGen::F0 => "F0",
            AffGen::F1 => "F1",
            AffGen::K0 => "K0",
            AffGen::K1 => "K1",
        }
    }
}

fn label_sign(space: &GradedSpace, j: usize) -> Sign {
    match space.label(j) {
        Label::Spin { plus: false, .. } => Sign::Minus,
        _ => Sign::Plus,
    }
}

/// `W_s^±(λ)`: `ℰ₁ e_m = λ[l-m] e_{m+1}`, `ℰ₀ e_m = λ[l+m] e_{m-1}`,
/// `ℱ₁ e_{m,±} = ∓iλ⁻¹[l+m] e_{m-1}`, `ℱ₀ e_{m,±} = ∓iλ⁻¹[l-m] e_{m+1}`,
/// `𝒦₁ = ±q_*^{2m}`, `𝒦₀ = ±q_*^{-2m}`.
pub fn build_eval<S: Scalar>(s: i64, sign: Sign, lambda: &S, p: &QParams<S>) -> Result<AffineModule<S>> {
    if lambda.is_zero() {
        return Err(Error::SingularParameter("lambda".into()));
    }
    let space = spin_space(s, sign)?;
    let n = (s + 1) as usize;
    let qs = p.qs();
    let lam_inv = lambda.inv()?;
    let i = S::imag_unit();
    let (mut e1, mut e0, mut f1, mut f0, mut k1, mut k0) = (vec![], vec![], vec![], vec![], vec![], vec![]);
    for j in 0..n {
        let jj = j as i64;
        let ls = label_sign(&space, j);
        let mi = if ls.is_plus() { -i.clone() } else { i.clone() } * lam_inv.clone();
        if j > 0 {
            let c = qint(jj, qs)?;
            e1.push((j - 1, j, lambda.clone() * c.clone()));
            f0.push((j - 1, j, mi.clone() * c));
        }
        if j + 1 < n {
            let c = qint(s - jj, qs)?;
            e0.push((j + 1, j, lambda.clone() * c.clone()));
            f1.push((j + 1, j, mi.clone() * c));
        }
        k1.push(p.qs_pow(s - 2 * jj).scale_i64(ls.value()));
        k0.push(p.qs_pow(2 * jj - s).scale_i64(ls.value()));
    }
    let odd = |v| GradedMatrix::from_entries(space.clone(), space.clone(), Parity::Odd, v);
    Ok(AffineModule {
        kind: ModuleKind::Eval { s, sign },
        params: p.clone(),
        lambda: Some(lambda.clone()),
        e1: odd(e1)?,
        e0: odd(e0)?,
        f1: Some(odd(f1)?),
        f0: Some(odd(f0)?),
        k1: GradedMatrix::diagonal(space.clone(), k1)?,
        k0: GradedMatrix::diagonal(space.clone(), k0)?,
        space,
    })
}

impl<S: Scalar> AffineModule<S> {
    pub fn identity(&self) -> GradedMatrix<S> {
        GradedMatrix::identity(self.space.clone())
    }

    pub fn has_lowering(&self) -> bool {
        self.f1.is_some() && self.f0.is_some()
    }

    pub fn generator(&self, g: AffGen) -> Result<&GradedMatrix<S>> {
        let missing = || Error::InvalidArgument(format!("{} is not defined on a Borel module", g.name()));
        Ok(match g {
            AffGen::E0 => &self.e0,
            AffGen::E1 => &self.e1,
            AffGen::F0 => self.f0.as_ref().ok_or_else(missing)?,
            AffGen::F1 => self.f1.as_ref().ok_or_else(missing)?,
            AffGen::K0 => &self.k0,
            AffGen::K1 => &self.k1,
        })
    }

    pub fn k_delta(&self) -> Result<GradedMatrix<S>> {
        self.k0.compose(&self.k1)
    }

    /// Cartan relations `𝒦ᵢℰⱼ = q^{aᵢⱼ}ℰⱼ𝒦ᵢ` (and `ℱ` with inverse powers),
    /// `{ℰᵢ,ℱⱼ} = δᵢⱼ(𝒦ᵢ - 𝒦ᵢ⁻¹)/(q+q⁻¹)` when lowering operators exist, and
    /// `𝒦_δ = 1`.
    pub fn relation_residuals(&self) -> Result<Vec<Residual<S>>> {
        let p = &self.params;
        let mut out = Vec::new();
        let ks = [(&self.k0, "K0"), (&self.k1, "K1")];
        let es = [(&self.e0, "E0"), (&self.e1, "E1")];
        for (a, (k, kn)) in ks.iter().enumerate() {
            for (b, (e, en)) in es.iter().enumerate() {
                let aij = if a == b { 2 } else { -2 };
                out.push(Residual::from_sides(
                    format!("{kn}{en} = q^{aij} {en}{kn}"),
                    &k.compose(e)?,
                    &e.compose(k)?.scale(&p.q_pow(aij)),
                )?);
            }
        }
        out.push(Residual::from_sides("K0 K1 = 1", &self.k_delta()?, &self.identity())?);
        if let (Some(f0), Some(f1)) = (&self.f0, &self.f1) {
            let fs = [(f0, "F0"), (f1, "F1")];
            let qq = p.q_plus_qinv().inv()?;
            for (a, (k, kn)) in ks.iter().enumerate() {
                for (b, (f, fname)) in fs.iter().enumerate() {
                    let aij = if a == b { 2 } else { -2 };
                    out.push(Residual::from_sides(
                        format!("{kn}{fname} = q^-{aij} {fname}{kn}"),
                        &k.compose(f)?,
                        &f.compose(k)?.scale(&p.q_pow(-aij)),
                    )?);
                }
            }
            for (a, (e, en)) in es.iter().enumerate() {
                for (b, (f, fname)) in fs.iter().enumerate() {
                    let lhs = e.supercommutator(f)?;
                    let rhs = if a == b {
                        let k = ks[a].0;
                        k.sub(&k.inverse_diagonal()?)?.scale(&qq)
                    } else {
                        GradedMatrix::zero(self.space.clone(), self.space.clone(), Parity::Even)
                    };
                    out.push(Residual::from_sides(format!("{{{en},{fname}}}"), &lhs, &rhs)?);
                }
            }
        }
        Ok(out)
    }
}

/// `(Xᵢ³Xⱼ + {3}_q Xᵢ²XⱼXᵢ, {3}_q XᵢXⱼXᵢ² + XⱼXᵢ³)`.
fn serre_sides<S: Scalar>(xi: &GradedMatrix<S>, xj: &GradedMatrix<S>, c3: &S) -> Result<(GradedMatrix<S>, GradedMatrix<S>)> {
    let xi2 = xi.compose(xi)?;
    let xi3 = xi2.compose(xi)?;
    let t1 = xi3.compose(xj)?;
    let t2 = xi2.compose(xj)?.compose(xi)?.scale(c3);
    let t3 = xi.compose(xj)?.compose(&xi2)?.scale(c3);
    let t4 = xj.compose(&xi3)?;
    Ok((t1.add(&t2)?, t3.add(&t4)?))
}

#[cfg(test)]
pub(crate) fn serre_combination<S: Scalar>(xi: &GradedMatrix<S>, xj: &GradedMatrix<S>, c3: &S) -> Result<GradedMatrix<S>> {
    let (lhs, rhs) = serre_sides(xi, xj, c3)?;
    lhs.sub(&rhs)
}

/// `Xᵢ³Xⱼ + {3}_q Xᵢ²XⱼXᵢ - {3}_q XᵢXⱼXᵢ² - XⱼXᵢ³` for `X ∈ {ℰ, ℱ}`, `i ≠ j`.
pub fn serre_check<S: Scalar>(m: &AffineModule<S>) -> Result<Vec<Residual<S>>> {
    let c3 = curly(3, &m.params)?;
    let serre = |name: &str, xi: &GradedMatrix<S>, xj: &GradedMatrix<S>| -> Result<Residual<S>> {
        let (lhs, rhs) = serre_sides(xi, xj, &c3)?;
        Residual::from_sides(name, &lhs, &rhs)
    };
    let mut out = vec![serre("Serre E1^3 E0", &m.e1, &m.e0)?, serre("Serre E0^3 E1", &m.e0, &m.e1)?];
    if let (Some(f0), Some(f1)) = (&m.f0, &m.f1) {
        out.push(serre("Serre F1^3 F0", f1, f0)?);
        out.push(serre("Serre F0^3 F1", f0, f1)?);
    }
    Ok(out)
}

/// `Δ(ℰᵢ) = ℰᵢ⊗𝒦ᵢ + 1⊗ℰᵢ`, `Δ(ℱᵢ) = ℱᵢ⊗1 + 𝒦ᵢ⁻¹⊗ℱᵢ`, `Δ(𝒦ᵢ) = 𝒦ᵢ⊗𝒦ᵢ`.
pub fn affine_coproduct<S: Scalar>(a: &AffineModule<S>, b: &AffineModule<S>, g: AffGen) -> Result<GradedMatrix<S>> {
    let (ka, kb) = match g {
        AffGen::E0 | AffGen::F0 | AffGen::K0 => (&a.k0, &b.k0),
        _ => (&a.k1, &b.k1),
    };
    match g {
        AffGen::E0 | AffGen::E1 => graded_kron(a.generator(g)?, kb).add(&graded_kron(&a.identity(), b.generator(g)?)),
        AffGen::F0 | AffGen::F1 => {
            graded_kron(a.generator(g)?, &b.identity()).add(&graded_kron(&ka.inverse_diagonal()?, b.generator(g)?))
        }
        AffGen::K0 | AffGen::K1 => Ok(graded_kron(ka, kb)),
    }
}

/// `Δ^op(x) = P Δ_{W⊗V}(x) P` on `V⊗W`.
pub fn affine_coproduct_op<S: Scalar>(
    a: &AffineModule<S>,
    b: &AffineModule<S>,
    g: AffGen,
) -> Result<GradedMatrix<S>> {
    let p_vw = graded_permutation(&a.space, &b.space);
    let p_wv = graded_permutation(&b.space, &a.space);
    p_wv.compose(&affine_coproduct(b, a, g)?)?.compose(&p_vw)
}

/// `Δ^op(x) R - R Δ(x)` for each generator in `gens`.
pub fn intertwining_residuals<S: Scalar>(
    a: &AffineModule<S>,
    b: &AffineModule<S>,
    r: &GradedMatrix<S>,
    gens: &[AffGen],
) -> Result<Vec<Residual<S>>> {
    gens.iter()
        .map(|&g| {
            let lhs = affine_coproduct_op(a, b, g)?.compose(r)?;
            let rhs = r.compose(&affine_coproduct(a, b, g)?)?;
            Residual::from_sides(format!("intertwining {}", g.name()), &lhs, &rhs)
        })
        .collect()
}

#[cfg(test)]
mod tests;
