//! L-operators `aux ⊗ site` and the linear-system oracle for the
//! prefundamental one.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Normalization;
use crate::error::{Error, Result};
use crate::prefund::build_prefundamental;
use crate::repr_affine::{
    affine_coproduct, affine_coproduct_op, build_eval, build_r_closed_form, build_r_product_truncated, AffGen,
    AffineModule, FqMode,
};
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{DenseMatrix, GradedMatrix, Sign};

/// `L` on `W_s^+(λ) ⊗ W_{s'}^+(ν)` from the closed-form R-matrix.
pub fn build_l_finite<S: Scalar>(
    s: i64,
    lambda: &S,
    s_site: i64,
    nu: &S,
    norm: Normalization,
    fq_order: usize,
    p: &QParams<S>,
) -> Result<GradedMatrix<S>> {
    let mode = match norm {
        Normalization::Universal => FqMode::Series(fq_order),
        Normalization::FqOmitted => FqMode::Omitted,
    };
    build_r_closed_form(s, Sign::Plus, lambda, s_site, Sign::Plus, nu, mode, p)?.restored(p)
}

/// `L` on `aux ⊗ site` from the truncated universal product; `aux` may be a
/// Borel module.
pub fn build_l_borel<S: Scalar>(aux: &AffineModule<S>, site: &AffineModule<S>, nmax: usize) -> Result<GradedMatrix<S>> {
    build_r_product_truncated(aux, site, nmax)?.product()
}

/// `L` on `ρ_±(λ) ⊗ W₁^+(ν)` on `n` Fock levels, scaled so that the
/// `(|0⟩⊗e_high, |0⟩⊗e_high)` entry is one.
pub fn build_l_prefundamental<S: Scalar>(
    sign: Sign,
    lambda: &S,
    nu: &S,
    n: usize,
    nmax: usize,
    p: &QParams<S>,
) -> Result<GradedMatrix<S>> {
    let aux = build_prefundamental(sign, lambda, n, p)?;
    let site = build_eval(1, Sign::Plus, nu, p)?;
    let l = build_l_borel(&aux, &site, nmax)?;
    Ok(l.scale(&l.get(0, 0).inv()?))
}

fn level(index: usize, site_dim: usize) -> usize {
    index / site_dim
}

/// Levels `< n - 4` are free of truncation effects.
fn trusted(n: usize) -> usize {
    n.saturating_sub(4)
}

/// `max_x ‖Δ^op(x)L - LΔ(x)‖` over `x ∈ {ℰ₀, ℰ₁, 𝒦₁}` on rows and columns
/// with aux level below `levels`.
pub fn intertwining_residual<S: Scalar>(
    aux: &AffineModule<S>,
    site: &AffineModule<S>,
    l: &GradedMatrix<S>,
    levels: usize,
) -> Result<f64> {
    let d = site.space.dim();
    let mut worst = 0.0f64;
    for g in [AffGen::E0, AffGen::E1, AffGen::K1] {
        let r = affine_coproduct_op(aux, site, g)?
            .compose(l)?
            .sub(&l.compose(&affine_coproduct(aux, site, g)?)?)?;
        worst = worst.max(r.max_abs_where(|a, b| level(a, d) < levels && level(b, d) < levels));
    }
    Ok(worst)
}

/// Stability of the normalised prefundamental L under `nmax → nmax+2` and
/// `N → N+4`, on the trusted range of the smaller truncation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LConvergence {
    pub fock_levels: usize,
    pub nmax: usize,
    pub trusted_levels: usize,
    pub nmax_step: f64,
    pub fock_step: f64,
    /// Entry `(row, col)` realising the larger of the two steps.
    pub worst_entry: (usize, usize),
    pub intertwining: f64,
}

impl LConvergence {
    pub fn stable(&self, tol: f64) -> bool {
        self.nmax_step.max(self.fock_step).max(self.intertwining) <= tol
    }
}

fn diff_on_range<S: Scalar>(a: &GradedMatrix<S>, b: &GradedMatrix<S>, dim: usize) -> (f64, (usize, usize)) {
    let mut worst = (0.0, (0, 0));
    for r in 0..dim {
        for c in 0..dim {
            let e = (a.get(r, c) - b.get(r, c)).abs();
            if e > worst.0 {
                worst = (e, (r, c));
            }
        }
    }
    worst
}

pub fn l_convergence<S: Scalar>(
    sign: Sign,
    lambda: &S,
    nu: &S,
    n: usize,
    nmax: usize,
    p: &QParams<S>,
) -> Result<LConvergence> {
    let base = build_l_prefundamental(sign, lambda, nu, n, nmax, p)?;
    let more_roots = build_l_prefundamental(sign, lambda, nu, n, nmax + 2, p)?;
    let more_levels = build_l_prefundamental(sign, lambda, nu, n + 4, nmax, p)?;
    let t = trusted(n);
    let dim = 2 * t;
    let (nmax_step, e1) = diff_on_range(&base, &more_roots, dim);
    let (fock_step, e2) = diff_on_range(&base, &more_levels, dim);
    let aux = build_prefundamental(sign, lambda, n, p)?;
    let site = build_eval(1, Sign::Plus, nu, p)?;
    Ok(LConvergence {
        fock_levels: n,
        nmax,
        trusted_levels: t,
        nmax_step,
        fock_step,
        worst_entry: if nmax_step >= fock_step { e1 } else { e2 },
        intertwining: intertwining_residual(&aux, &site, &base, t)?,
    })
}

/// Solution of `Δ^op(x) L = L Δ(x)` on the trusted range.
#[derive(Clone, Debug)]
pub struct LSolution<S: Scalar> {
    /// Normalised like [`build_l_prefundamental`]; entries outside the
    /// solved range are zero.
    pub l: GradedMatrix<S>,
    pub unknowns: usize,
    pub equations: usize,
    pub nullity: usize,
    /// `(total weight, dimension of the solution space restricted to the block)`.
    pub block_dims: Vec<(i64, usize)>,
    /// Largest level whose rows and columns are fully determined.
    pub trusted_levels: usize,
}

/// Solves the intertwining equations for `L` on `ρ_±(λ) ⊗ W₁^+(ν)` with `n`
/// Fock levels. With `weight_ansatz` only entries allowed by `𝒦₁`-weight
/// conservation are unknowns; otherwise every entry is, and the `𝒦₁`
/// equations are imposed too.
pub fn solve_l_by_intertwining<S: Scalar>(
    sign: Sign,
    lambda: &S,
    nu: &S,
    n: usize,
    weight_ansatz: bool,
    tol: f64,
    p: &QParams<S>,
) -> Result<LSolution<S>> {
    if n < 3 {
        return Err(Error::InvalidArgument("need at least three Fock levels".into()));
    }
    let aux = build_prefundamental(sign, lambda, n, p)?;
    let site = build_eval(1, Sign::Plus, nu, p)?;
    let space = aux.space.tensor(&site.space);
    let d = site.space.dim();
    let dim = space.dim();
    let top = n - 1;
    // Entries (r, c) with both aux levels at the top never enter an equation.
    let mut index = BTreeMap::new();
    for r in 0..dim {
        for c in 0..dim {
            if level(r, d) == top && level(c, d) == top {
                continue;
            }
            if weight_ansatz && (space.weight(r) != space.weight(c) || space.parity(r) != space.parity(c)) {
                continue;
            }
            let k = index.len();
            index.insert((r, c), k);
        }
    }
    let mut gens = vec![AffGen::E0, AffGen::E1];
    if !weight_ansatz {
        gens.push(AffGen::K1);
    }
    let mut rows: Vec<Vec<(usize, S)>> = Vec::new();
    for g in gens {
        let dop = affine_coproduct_op(&aux, &site, g)?;
        let dd = affine_coproduct(&aux, &site, g)?;
        let mut by_row: BTreeMap<usize, Vec<(usize, S)>> = BTreeMap::new();
        for (r, m, v) in dop.entries() {
            by_row.entry(r).or_default().push((m, v.clone()));
        }
        let mut by_col: BTreeMap<usize, Vec<(usize, S)>> = BTreeMap::new();
        for (m, c, v) in dd.entries() {
            by_col.entry(c).or_default().push((m, v.clone()));
        }
        for r in (0..dim).filter(|&r| level(r, d) < top) {
            for c in (0..dim).filter(|&c| level(c, d) < top) {
                let mut eq: BTreeMap<usize, S> = BTreeMap::new();
                for (m, v) in by_row.get(&r).into_iter().flatten() {
                    if let Some(&k) = index.get(&(*m, c)) {
                        let e = eq.entry(k).or_insert_with(S::zero);
                        *e = e.clone() + v.clone();
                    }
                }
                for (m, v) in by_col.get(&c).into_iter().flatten() {
                    if let Some(&k) = index.get(&(r, *m)) {
                        let e = eq.entry(k).or_insert_with(S::zero);
                        *e = e.clone() - v.clone();
                    }
                }
                let eq: Vec<_> = eq.into_iter().filter(|(_, v)| v.abs() > tol).collect();
                if !eq.is_empty() {
                    rows.push(eq);
                }
            }
        }
    }
    let unknowns = index.len();
    let mut a = DenseMatrix::zeros(rows.len(), unknowns);
    for (i, eq) in rows.iter().enumerate() {
        for (k, v) in eq {
            a.set(i, *k, v.clone());
        }
    }
    let null = a.nullspace(tol);
    if null.len() != 1 {
        return Err(Error::Ambiguous(format!(
            "intertwining solution space has dimension {} (expected 1)",
            null.len()
        )));
    }
    let v = &null[0];
    let k00 = *index.get(&(0, 0)).expect("vacuum entry is an unknown");
    let scale = v[k00].inv()?;
    let mut entries = Vec::new();
    let mut blocks: BTreeMap<i64, bool> = BTreeMap::new();
    for (&(r, c), &k) in &index {
        let x = v[k].clone() * scale.clone();
        let nonzero = x.abs() > tol;
        let b = blocks.entry(space.weight(c)).or_insert(false);
        *b |= nonzero;
        if nonzero {
            entries.push((r, c, x));
        }
    }
    let sp = std::sync::Arc::new(space);
    let l = GradedMatrix::from_entries(sp.clone(), sp, crate::superlinalg::Parity::Even, entries)?;
    Ok(LSolution {
        l,
        unknowns,
        equations: rows.len(),
        nullity: null.len(),
        block_dims: blocks.into_iter().map(|(w, nz)| (w, usize::from(nz))).collect(),
        trusted_levels: trusted(n),
    })
}
