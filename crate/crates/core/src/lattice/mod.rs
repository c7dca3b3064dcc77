//! Transfer operators on finite chains of evaluation modules.
//!
//! The chain space is `W_{s₁}(ν₁) ⊗ … ⊗ W_{s_n}(ν_n)`. For an auxiliary module
//! `A` the monodromy `L_{A,1} ⋯ L_{A,n}` is traced over `A` with weight
//! `(-1)^{|v|} t^{-J(v)}`, so Fock and Verma traces converge for `|t| < 1`.

mod lop;
mod relations;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use lop::{
    build_l_borel, build_l_finite, build_l_prefundamental, intertwining_residual, l_convergence, solve_l_by_intertwining,
    LConvergence, LSolution,
};
pub use relations::{
    structural_fusion, verify_functional_relations, FusionStructure, RelationFamily, RelationReport, RelationResidual,
};

use crate::error::{Error, Result};
use crate::prefund::{build_onedim, build_prefundamental, build_verma, character};
use crate::repr_affine::{build_eval, AffineModule, ModuleKind};
use crate::repr_osp::spin_space;
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{embed_12, embed_13, partial_supertrace_first_with, GradedMatrix, GradedSpace, Label, Parity, Sign};

/// Auxiliary module of a transfer operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Aux {
    /// `W_s^+(λ)`; `s = 0` is the trivial module.
    Eval { s: i64 },
    /// `𝒲_s^±(λ)`, truncated to the chain's Fock size.
    Verma { s: i64, sign: Sign },
    /// `ρ_±(λ)`, truncated to the chain's Fock size.
    Prefundamental { sign: Sign },
    /// `U_p^±`; `λ` is ignored.
    OneDim { p: i64, sign: Sign },
}

impl Aux {
    pub fn is_finite(self) -> bool {
        matches!(self, Aux::Eval { .. } | Aux::OneDim { .. })
    }

    pub fn module_kind(self, levels: usize) -> ModuleKind {
        match self {
            Aux::Eval { s } => ModuleKind::Eval { s, sign: Sign::Plus },
            Aux::Verma { s, sign } => ModuleKind::Verma { s, sign, levels },
            Aux::Prefundamental { sign } => ModuleKind::Prefundamental { sign, levels },
            Aux::OneDim { p, sign } => ModuleKind::OneDim { p, sign },
        }
    }
}

/// Scale convention of the L-operators behind a transfer operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// Image of the universal R-matrix: `f_q` included (series for finite
    /// auxiliaries, built into the product form otherwise), `q_*^{1/2}` restored.
    Universal,
    /// Closed form with `f_q` dropped and `q_*^{1/2}` restored. Exact, finite
    /// auxiliaries only.
    FqOmitted,
}

#[derive(Clone, Debug)]
pub struct ChainSpec<S: Scalar> {
    /// `(s, ν)` per site.
    pub sites: Vec<(i64, S)>,
    pub twist: S,
    /// Levels kept in Fock and Verma auxiliaries.
    pub fock_levels: usize,
    /// Root-vector truncation of product-form L-operators.
    pub nmax: usize,
    /// Series order of `f_q` for finite auxiliaries.
    pub fq_order: usize,
    pub normalization: Normalization,
}

impl<S: Scalar> ChainSpec<S> {
    /// `n` spin-1 sites at the same `ν`, with `N = 28`, `nmax = 12`, `M = 40`.
    pub fn uniform(n: usize, nu: S, twist: S) -> Self {
        Self {
            sites: vec![(1, nu); n],
            twist,
            fock_levels: 28,
            nmax: 12,
            fq_order: 40,
            normalization: Normalization::Universal,
        }
    }

    pub fn with_truncation(mut self, fock_levels: usize, nmax: usize, fq_order: usize) -> Self {
        self.fock_levels = fock_levels;
        self.nmax = nmax;
        self.fq_order = fq_order;
        self
    }

    pub fn with_normalization(mut self, n: Normalization) -> Self {
        self.normalization = n;
        self
    }
}

#[derive(Clone, Debug)]
pub struct TransferOperator<S: Scalar> {
    pub operator: GradedMatrix<S>,
    pub aux: Aux,
    pub lambda: Option<S>,
    pub normalization: Normalization,
    /// `(N, nmax)` for truncated auxiliaries.
    pub truncation: Option<(usize, usize)>,
}

impl<S: Scalar> TransferOperator<S> {
    /// Refuses to mix operators built under different scale conventions.
    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.normalization != other.normalization {
            return Err(Error::InvalidArgument(format!(
                "normalization mismatch: {:?} for {:?} vs {:?} for {:?}",
                self.normalization, self.aux, other.normalization, other.aux
            )));
        }
        Ok(())
    }
}

/// Built sites and chain space, reused across transfer operators.
#[derive(Clone, Debug)]
pub struct Chain<S: Scalar> {
    pub spec: ChainSpec<S>,
    pub params: QParams<S>,
    pub sites: Vec<AffineModule<S>>,
    pub space: Arc<GradedSpace>,
}

impl<S: Scalar> Chain<S> {
    pub fn new(spec: ChainSpec<S>, p: &QParams<S>) -> Result<Self> {
        if spec.twist.is_zero() {
            return Err(Error::SingularParameter("twist".into()));
        }
        let sites = spec
            .sites
            .iter()
            .map(|(s, nu)| build_eval(*s, Sign::Plus, nu, p))
            .collect::<Result<Vec<_>>>()?;
        let space = match sites.split_first() {
            None => Arc::new(GradedSpace::new(vec![(Label::Point, Parity::Even, 0)])?),
            Some((first, rest)) => Arc::new(rest.iter().fold((*first.space).clone(), |acc, m| acc.tensor(&m.space))),
        };
        Ok(Self {
            spec,
            params: p.clone(),
            sites,
            space,
        })
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// The Borel module used for product-form L-operators.
    pub fn aux_module(&self, aux: Aux, lambda: &S) -> Result<AffineModule<S>> {
        let (n, p) = (self.spec.fock_levels, &self.params);
        match aux {
            Aux::Eval { s } => build_eval(s, Sign::Plus, lambda, p),
            Aux::Verma { s, sign } => build_verma(s, sign, lambda, n, p),
            Aux::Prefundamental { sign } => build_prefundamental(sign, lambda, n, p),
            Aux::OneDim { p: w, sign } => build_onedim(w, sign, p),
        }
    }

    /// `L` on `aux ⊗ site_k`.
    pub fn l_operator(&self, aux: Aux, lambda: &S, k: usize) -> Result<GradedMatrix<S>> {
        let site = self.sites.get(k).ok_or_else(|| Error::InvalidArgument(format!("no site {k}")))?;
        let (s_site, nu) = &self.spec.sites[k];
        match (aux, self.spec.normalization) {
            (Aux::Eval { s }, norm) => build_l_finite(s, lambda, *s_site, nu, norm, self.spec.fq_order, &self.params),
            (Aux::OneDim { .. }, _) | (_, Normalization::Universal) => {
                build_l_borel(&self.aux_module(aux, lambda)?, site, self.spec.nmax)
            }
            (_, Normalization::FqOmitted) => Err(Error::Unsupported {
                backend: S::BACKEND,
                op: format!("{aux:?} auxiliary without f_q"),
            }),
        }
    }

    pub fn aux_space(&self, aux: Aux, lambda: &S) -> Result<Arc<GradedSpace>> {
        match aux {
            Aux::Eval { s } => spin_space(s, Sign::Plus),
            _ => Ok(self.aux_module(aux, lambda)?.space),
        }
    }

    /// `L_{A,1} ⋯ L_{A,n}` on `A ⊗ chain`.
    pub fn monodromy(&self, aux: Aux, lambda: &S) -> Result<(Arc<GradedSpace>, GradedMatrix<S>)> {
        let n = self.len();
        let mut acc: Option<GradedMatrix<S>> = None;
        let a = self.aux_space(aux, lambda)?;
        for k in 0..n {
            let l = self.l_operator(aux, lambda, k)?;
            let left = product_space(&self.sites[..k]);
            let right = product_space(&self.sites[k + 1..]);
            let mut x = match &left {
                None => l,
                Some(left) => embed_13(&l, &a, left, &self.sites[k].space)?,
            };
            if let Some(right) = &right {
                x = embed_12(&x, right);
            }
            acc = Some(match acc {
                None => x,
                Some(m) => m.compose(&x)?,
            });
        }
        let m = acc.ok_or_else(|| Error::InvalidArgument("monodromy of an empty chain".into()))?;
        Ok((a, m))
    }

    /// `str_A (t^{-J} L_{A,1} ⋯ L_{A,n})`; an empty chain gives the character.
    pub fn transfer(&self, aux: Aux, lambda: &S) -> Result<TransferOperator<S>> {
        let operator = if self.is_empty() {
            let chi = character(aux.module_kind(self.spec.fock_levels)).evaluate_in(&self.spec.twist)?;
            GradedMatrix::diagonal(self.space.clone(), vec![chi])?
        } else {
            let (a, m) = self.monodromy(aux, lambda)?;
            let weights = (0..a.dim()).map(|i| self.spec.twist.powi(-a.weight(i))).collect::<Result<Vec<_>>>()?;
            partial_supertrace_first_with(&m, &a, &self.space, |i| weights[i].clone())?
        };
        Ok(TransferOperator {
            operator,
            aux,
            lambda: (!matches!(aux, Aux::OneDim { .. })).then(|| lambda.clone()),
            normalization: self.spec.normalization,
            truncation: (!aux.is_finite()).then_some((self.spec.fock_levels, self.spec.nmax)),
        })
    }

    /// `U_p = T_{U_p^+}`.
    pub fn u(&self, p: i64) -> Result<GradedMatrix<S>> {
        Ok(self.transfer(Aux::OneDim { p, sign: Sign::Plus }, &S::one())?.operator)
    }

    /// `σ = T_{U_0^-}`, the transfer image of the parity module.
    pub fn sigma(&self) -> Result<GradedMatrix<S>> {
        Ok(self.transfer(Aux::OneDim { p: 0, sign: Sign::Minus }, &S::one())?.operator)
    }

    pub fn identity(&self) -> GradedMatrix<S> {
        GradedMatrix::identity(self.space.clone())
    }
}

fn product_space<S: Scalar>(sites: &[AffineModule<S>]) -> Option<Arc<GradedSpace>> {
    let (first, rest) = sites.split_first()?;
    Some(Arc::new(rest.iter().fold((*first.space).clone(), |acc, m| acc.tensor(&m.space))))
}

/// Transfer operator over a freshly built chain.
pub fn transfer<S: Scalar>(aux: Aux, lambda: &S, spec: &ChainSpec<S>, p: &QParams<S>) -> Result<TransferOperator<S>> {
    Chain::new(spec.clone(), p)?.transfer(aux, lambda)
}

#[cfg(test)]
mod tests;
