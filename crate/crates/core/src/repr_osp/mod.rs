//! U_q(osp(2|1)): the modules `W_s^±`, their coproducts, the R-matrix on
//! finite modules and the Casimir.

mod rmatrix;

use std::sync::Arc;

pub use rmatrix::{
    a_coefficients, a_coefficients_recursive, build_r_osp, cartan_clifford_check, r_coefficient_closed_form, RIndex,
    RMatrixFinite,
};
pub(crate) use rmatrix::{both_odd, cartan_part};

use crate::check::Residual;
use crate::error::{Error, Result};
use crate::scalar::qnum::qint;
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{graded_kron, graded_permutation, GradedMatrix, GradedSpace, Label, Parity, Sign};

/// Basis `e^l_{l-j, sign·(-1)^j}`, `j = 0..=s`, highest weight first. The
/// parity of a vector is odd exactly when its label sign is `-`; its weight
/// is `2m`.
pub fn spin_space(s: i64, sign: Sign) -> Result<Arc<GradedSpace>> {
    if s < 0 {
        return Err(Error::InvalidArgument(format!("s = {s} < 0")));
    }
    let basis = (0..=s)
        .map(|j| {
            let ls = sign.times_power(j);
            let twice_m = s - 2 * j;
            (
                Label::Spin {
                    twice_l: s,
                    twice_m,
                    plus: ls.is_plus(),
                },
                ls.parity(),
                twice_m,
            )
        })
        .collect();
    Ok(Arc::new(GradedSpace::new(basis)?))
}

fn label_sign(space: &GradedSpace, j: usize) -> Sign {
    match space.label(j) {
        Label::Spin { plus: true, .. } => Sign::Plus,
        _ => Sign::Minus,
    }
}

/// Generators of the `(s+1)`-dimensional U_{q_*}(sl(2)) module (all even).
#[derive(Clone, Debug)]
pub struct Sl2Rep<S: Scalar> {
    pub space: Arc<GradedSpace>,
    pub e: GradedMatrix<S>,
    pub f: GradedMatrix<S>,
    pub k: GradedMatrix<S>,
    pub h: GradedMatrix<S>,
}

pub fn build_sl2_rep<S: Scalar>(s: i64, p: &QParams<S>) -> Result<Sl2Rep<S>> {
    if s < 0 {
        return Err(Error::InvalidArgument(format!("2l = {s} < 0")));
    }
    let basis = (0..=s)
        .map(|j| {
            let twice_m = s - 2 * j;
            (Label::Spin { twice_l: s, twice_m, plus: true }, Parity::Even, twice_m)
        })
        .collect();
    let space = Arc::new(GradedSpace::new(basis)?);
    let n = (s + 1) as usize;
    let qs = p.qs();
    let mut e = Vec::new();
    let mut f = Vec::new();
    for j in 0..n {
        if j > 0 {
            e.push((j - 1, j, qint(j as i64, qs)?));
        }
        if j + 1 < n {
            f.push((j + 1, j, qint(s - j as i64, qs)?));
        }
    }
    let k = (0..=s).map(|j| p.qs_pow(s - 2 * j)).collect();
    let h = (0..=s).map(|j| S::from_i64(s - 2 * j)).collect();
    Ok(Sl2Rep {
        e: GradedMatrix::from_entries(space.clone(), space.clone(), Parity::Even, e)?,
        f: GradedMatrix::from_entries(space.clone(), space.clone(), Parity::Even, f)?,
        k: GradedMatrix::diagonal(space.clone(), k)?,
        h: GradedMatrix::diagonal(space.clone(), h)?,
        space,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E,
    F,
    K,
    KInv,
}

impl std::str::FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" | "e" => Ok(Generator::E),
            "F" | "f" => Ok(Generator::F),
            "K" | "k" => Ok(Generator::K),
            "Kinv" | "kinv" => Ok(Generator::KInv),
            other => Err(Error::InvalidArgument(format!("unknown generator {other:?}"))),
        }
    }
}

/// The module `W_s^±` of U_q(osp(2|1)).
#[derive(Clone, Debug)]
pub struct OspRep<S: Scalar> {
    pub s: i64,
    pub sign: Sign,
    pub params: QParams<S>,
    pub space: Arc<GradedSpace>,
    pub e: GradedMatrix<S>,
    pub f: GradedMatrix<S>,
    pub k: GradedMatrix<S>,
    pub k_inv: GradedMatrix<S>,
    pub h: GradedMatrix<S>,
}

/// `E e_{m,±} = [l-m] e_{m+1,∓}`, `F e_{m,±} = ∓i[l+m] e_{m-1,∓}`,
/// `K e_{m,±} = ±q_*^{2m} e_{m,±}`.
pub fn build_w<S: Scalar>(s: i64, sign: Sign, p: &QParams<S>) -> Result<OspRep<S>> {
    let space = spin_space(s, sign)?;
    let n = (s + 1) as usize;
    let qs = p.qs();
    let i = S::imag_unit();
    let mut e = Vec::new();
    let mut f = Vec::new();
    let mut k = Vec::new();
    for j in 0..n {
        let ls = label_sign(&space, j);
        if j > 0 {
            e.push((j - 1, j, qint(j as i64, qs)?));
        }
        if j + 1 < n {
            let c = qint(s - j as i64, qs)? * i.clone();
            f.push((j + 1, j, if ls.is_plus() { -c } else { c }));
        }
        k.push(p.qs_pow(s - 2 * j as i64).scale_i64(ls.value()));
    }
    let k = GradedMatrix::diagonal(space.clone(), k)?;
    Ok(OspRep {
        s,
        sign,
        params: p.clone(),
        e: GradedMatrix::from_entries(space.clone(), space.clone(), Parity::Odd, e)?,
        f: GradedMatrix::from_entries(space.clone(), space.clone(), Parity::Odd, f)?,
        k_inv: k.inverse_diagonal()?,
        k,
        h: GradedMatrix::diagonal(space.clone(), (0..=s).map(|j| S::from_i64(s - 2 * j)).collect())?,
        space,
    })
}

impl<S: Scalar> OspRep<S> {
    pub fn generator(&self, g: Generator) -> &GradedMatrix<S> {
        match g {
            Generator::E => &self.e,
            Generator::F => &self.f,
            Generator::K => &self.k,
            Generator::KInv => &self.k_inv,
        }
    }

    pub fn identity(&self) -> GradedMatrix<S> {
        GradedMatrix::identity(self.space.clone())
    }

    /// `{E,F} - (K-K^{-1})/(q+q^{-1})`, `KE - q²EK`, `KF - q^{-2}FK`, `KK^{-1} - 1`.
    pub fn relation_residuals(&self) -> Result<Vec<Residual<S>>> {
        let p = &self.params;
        let qq = p.q_plus_qinv().inv()?;
        let anti = self.e.supercommutator(&self.f)?;
        let cartan = self.k.sub(&self.k_inv)?.scale(&qq);
        Ok(vec![
            Residual::from_sides("{E,F} = (K-K^-1)/(q+q^-1)", &anti, &cartan)?,
            Residual::from_sides(
                "KE = q^2 EK",
                &self.k.compose(&self.e)?,
                &self.e.compose(&self.k)?.scale(&p.q_pow(2)),
            )?,
            Residual::from_sides(
                "KF = q^-2 FK",
                &self.k.compose(&self.f)?,
                &self.f.compose(&self.k)?.scale(&p.q_pow(-2)),
            )?,
            Residual::from_sides("K K^-1 = 1", &self.k.compose(&self.k_inv)?, &self.identity())?,
        ])
    }
}

/// `Δ(E) = E⊗K + 1⊗E`, `Δ(F) = F⊗1 + K^{-1}⊗F`, `Δ(K^{±1}) = K^{±1}⊗K^{±1}`.
pub fn coproduct<S: Scalar>(a: &OspRep<S>, b: &OspRep<S>, g: Generator) -> GradedMatrix<S> {
    match g {
        Generator::E => graded_kron(&a.e, &b.k)
            .add(&graded_kron(&a.identity(), &b.e))
            .expect("same shape"),
        Generator::F => graded_kron(&a.f, &b.identity())
            .add(&graded_kron(&a.k_inv, &b.f))
            .expect("same shape"),
        Generator::K => graded_kron(&a.k, &b.k),
        Generator::KInv => graded_kron(&a.k_inv, &b.k_inv),
    }
}

/// `Δ^op(x) = P_{W,V} Δ_{W⊗V}(x) P_{V,W}` on `V⊗W`.
pub fn coproduct_op<S: Scalar>(a: &OspRep<S>, b: &OspRep<S>, g: Generator) -> Result<GradedMatrix<S>> {
    let p_vw = graded_permutation(&a.space, &b.space);
    let p_wv = graded_permutation(&b.space, &a.space);
    p_wv.compose(&coproduct(b, a, g))?.compose(&p_vw)
}

/// `(√C, C)` with `√C = FE - (qK - q^{-1}K^{-1})/(q+q^{-1})²` and `C = -√C²`.
pub fn casimir<S: Scalar>(rep: &OspRep<S>) -> Result<(GradedMatrix<S>, GradedMatrix<S>)> {
    let p = &rep.params;
    let qq = p.q_plus_qinv();
    let cartan = rep
        .k
        .scale(p.q())
        .sub(&rep.k_inv.scale(p.q_inv()))?
        .scale(&(qq.clone() * qq).inv()?);
    let sqrt_c = rep.f.compose(&rep.e)?.sub(&cartan)?;
    let c = sqrt_c.compose(&sqrt_c)?.neg();
    Ok((sqrt_c, c))
}

/// `c` such that `m = c · diag((-1)^j)` in the highest-weight-first basis.
/// `√C` anticommutes with the odd generators, so it has this form with `c`
/// its eigenvalue on the highest-weight vector.
pub fn graded_scalar_value<S: Scalar>(m: &GradedMatrix<S>) -> Option<S> {
    let first = m.diagonal_entries().first()?.clone();
    let n = m.domain().dim();
    let diag = (0..n).map(|j| first.clone() * S::sign_pow(j as i64)).collect();
    let expect = GradedMatrix::diagonal(m.domain().clone(), diag).ok()?;
    m.equals(&expect).then_some(first)
}

/// The single eigenvalue of an operator that is a multiple of the identity.
pub fn scalar_value<S: Scalar>(m: &GradedMatrix<S>) -> Option<S> {
    let d = m.diagonal_entries();
    let first = d.first()?.clone();
    let id = GradedMatrix::identity(m.domain().clone()).scale(&first);
    if m.equals(&id) {
        Some(first)
    } else {
        None
    }
}

#[cfg(test)]
mod tests;
