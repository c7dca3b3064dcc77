//! `ρ₊(λμ) ⊗ ρ₋(λμ⁻¹)` with `μ² = q_*^{s+1}` in the basis
//! `|ρ_k^{(m)}⟩ = (a₊+b₊)^k (a₊-γb₊)^m |0⟩₊⊗|0⟩₋`.

use serde::Serialize;

use super::{build_fock, build_prefundamental};
use crate::check::Residual;
use crate::error::{Error, Result};
use crate::repr_affine::{affine_coproduct, AffGen};
use crate::scalar::qnum::qint;
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{graded_kron, DenseMatrix, GradedMatrix, Sign};

/// Per-block data that must not depend on `γ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockReport {
    pub s: i64,
    pub max_level: usize,
    /// `(k, m, eigenvalue of 𝒦₁ on |ρ_k^{(m)}⟩)`.
    pub k1_eigenvalues: Vec<(usize, usize, String)>,
    /// `(k, m, coefficient of |ρ_{k-1}^{(m)}⟩ in ℰ₁|ρ_k^{(m)}⟩)`.
    pub diagonal_e1: Vec<(usize, usize, String)>,
}

#[derive(Clone, Debug)]
pub struct Decomposition<S: Scalar> {
    pub report: BlockReport,
    /// Oscillator relations of `a_±`, `b_±` on the trusted range.
    pub relations: Vec<Residual<S>>,
    pub independent: bool,
    pub k1_diagonal: bool,
    pub e0_shifts_k: bool,
    /// `ℰ₁` has no component in blocks `m' > m`.
    pub e1_lower_triangular: bool,
    /// Diagonal-block coefficient equals `λ[k][s-k+1]`.
    pub e1_diagonal_matches: bool,
}

impl<S: Scalar> Decomposition<S> {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(Residual::is_zero)
            && self.independent
            && self.k1_diagonal
            && self.e0_shifts_k
            && self.e1_lower_triangular
            && self.e1_diagonal_matches
    }
}

fn restrict_pairs<S: Scalar>(m: &GradedMatrix<S>, n: usize, keep: usize) -> GradedMatrix<S> {
    let ok = |idx: usize| idx / n < keep && idx % n < keep;
    let entries = m
        .entries()
        .filter(|(r, c, _)| ok(*r) && ok(*c))
        .map(|(r, c, v)| (r, c, v.clone()))
        .collect::<Vec<_>>();
    GradedMatrix::from_entries(m.domain().clone(), m.codomain().clone(), m.parity(), entries)
        .expect("restriction keeps parity")
}

/// Builds the block data for levels `k + m ≤ n - 2`; `mu` must satisfy
/// `μ² = q_*^{s+1}` and `γ ≠ -q_*^{2j}` for `|j| ≤ n`.
pub fn decompose_tensor<S: Scalar>(
    s: i64,
    lambda: &S,
    mu: &S,
    gamma: &S,
    n: usize,
    p: &QParams<S>,
) -> Result<Decomposition<S>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("truncation {n} too small for a decomposition")));
    }
    if !(mu.clone() * mu.clone() - p.qs_pow(s + 1)).is_zero() {
        return Err(Error::InvalidArgument("μ² must equal q_*^{s+1}".into()));
    }
    for j in -(n as i64)..=(n as i64) {
        if (gamma.clone() + p.qs_pow(2 * j)).is_zero() {
            return Err(Error::SingularParameter(format!("γ = -q_*^{}", 2 * j)));
        }
    }
    let mu_inv = mu.inv()?;
    let fp = build_fock(Sign::Plus, n, p)?;
    let fm = build_fock(Sign::Minus, n, p)?;
    let rp = build_prefundamental(Sign::Plus, &(lambda.clone() * mu.clone()), n, p)?;
    let rm = build_prefundamental(Sign::Minus, &(lambda.clone() * mu_inv.clone()), n, p)?;
    let id_p = GradedMatrix::identity(fp.space.clone());
    let a_plus = graded_kron(&fp.creation, &rm.k0).scale(mu);
    let a_minus = graded_kron(&fp.annihilation, &rm.k1).scale(mu);
    let b_plus = graded_kron(&id_p, &fm.creation).scale(&mu_inv);
    let b_minus = graded_kron(&id_p, &fm.annihilation).scale(&mu_inv);
    let e0 = affine_coproduct(&rp, &rm, AffGen::E0)?;
    let e1 = affine_coproduct(&rp, &rm, AffGen::E1)?;
    let k1 = affine_coproduct(&rp, &rm, AffGen::K1)?;

    let keep = n - 1;
    let qs = p.qs().clone();
    let qs_inv = p.qs_inv().clone();
    let dq = p.qs_minus_qsinv().inv()?;
    let id = GradedMatrix::identity(e0.domain().clone());
    let twisted = |x: &GradedMatrix<S>, y: &GradedMatrix<S>| -> Result<GradedMatrix<S>> {
        x.compose(y)?.scale(&qs).sub(&y.compose(x)?.scale(&qs_inv))
    };
    let mut relations = vec![
        Residual::new("E0 = λ(a+ + b+)", e0.sub(&a_plus.add(&b_plus)?.scale(lambda))?),
        Residual::new("E1 = λ(a- + b-)", e1.sub(&a_minus.add(&b_minus)?.scale(lambda))?),
        Residual::new(
            "q_* a- a+ - q_*^-1 a+ a- = μ²/(q_*-q_*^-1)",
            restrict_pairs(&twisted(&a_minus, &a_plus)?.sub(&id.scale(&(mu.clone() * mu.clone() * dq.clone())))?, n, keep),
        ),
        Residual::new(
            "q_* b+ b- - q_*^-1 b- b+ = μ⁻²/(q_*-q_*^-1)",
            restrict_pairs(&twisted(&b_plus, &b_minus)?.sub(&id.scale(&(mu_inv.clone() * mu_inv.clone() * dq)))?, n, keep),
        ),
    ];
    for (da, a) in [(1, &a_plus), (-1, &a_minus)] {
        for (db, b) in [(1, &b_plus), (-1, &b_minus)] {
            let lhs = a.compose(b)?;
            let rhs = b.compose(a)?.scale(&p.qs_pow(2 * da * db));
            relations.push(Residual::new(
                format!("a{da:+} b{db:+} = q_*^{} b a", 2 * da * db),
                restrict_pairs(&lhs.sub(&rhs)?, n, keep),
            ));
        }
    }

    // |ρ_k^{(m)}⟩ for k + m ≤ max_level
    let max_level = n - 2;
    let dim = e0.domain().dim();
    let mut vac = vec![S::zero(); dim];
    vac[0] = S::one();
    let x_k = a_plus.add(&b_plus)?;
    let x_m = a_plus.sub(&b_plus.scale(gamma))?;
    let mut vecs = vec![vec![Vec::new(); max_level + 1]; max_level + 1];
    let mut seed = vac;
    for m in 0..=max_level {
        let mut v = seed.clone();
        for k in 0..=max_level - m {
            vecs[k][m] = v.clone();
            v = x_k.apply(&v)?;
        }
        seed = x_m.apply(&seed)?;
    }
    // coordinates of level-L vectors live on |i⟩⊗|L-i⟩
    let level_basis = |l: usize| -> Vec<usize> { (0..=l).map(|i| i * n + (l - i)).collect() };
    let level_matrix = |l: usize| -> Result<DenseMatrix<S>> {
        let idx = level_basis(l);
        let cols: Vec<Vec<S>> = (0..=l).map(|k| idx.iter().map(|&i| vecs[k][l - k][i].clone()).collect()).collect();
        DenseMatrix::from_columns(l + 1, &cols)
    };
    let mut independent = true;
    let mut mats = Vec::new();
    for l in 0..=max_level {
        let m = level_matrix(l)?;
        independent &= m.rank(0.0) == l + 1;
        mats.push(m);
    }

    let mut k1_diagonal = true;
    let mut e0_shifts_k = true;
    let mut e1_lower_triangular = true;
    let mut e1_diagonal_matches = true;
    let mut report = BlockReport {
        s,
        max_level,
        k1_eigenvalues: Vec::new(),
        diagonal_e1: Vec::new(),
    };
    for l in 0..=max_level {
        for k in 0..=l {
            let m = l - k;
            let v = &vecs[k][m];
            let ev = p.qs_pow(-2 * l as i64).scale_i64(if l % 2 == 0 { 1 } else { -1 });
            let kv = k1.apply(v)?;
            k1_diagonal &= kv.iter().zip(v).all(|(a, b)| (a.clone() - ev.clone() * b.clone()).is_zero());
            report.k1_eigenvalues.push((k, m, ev.to_scalar_string()));
            if l < max_level {
                let ev0 = e0.apply(v)?;
                e0_shifts_k &= ev0
                    .iter()
                    .zip(&vecs[k + 1][m])
                    .all(|(a, b)| (a.clone() - lambda.clone() * b.clone()).is_zero());
            }
            if l == 0 {
                continue;
            }
            let image = e1.apply(v)?;
            let rhs: Vec<S> = level_basis(l - 1).iter().map(|&i| image[i].clone()).collect();
            let coords = mats[l - 1].solve(&rhs, 0.0)?;
            // coordinate index k' is |ρ_{k'}^{(l-1-k')}⟩, so block m' = l-1-k'
            for (kp, c) in coords.iter().enumerate() {
                let mp = l - 1 - kp;
                if mp > m && !c.is_zero() {
                    e1_lower_triangular = false;
                }
            }
            if k >= 1 {
                let c = coords[k - 1].clone();
                let expected = lambda.clone() * qint(k as i64, &qs)? * qint(s - k as i64 + 1, &qs)?;
                e1_diagonal_matches &= (c.clone() - expected).is_zero();
                report.diagonal_e1.push((k, m, c.to_scalar_string()));
            }
        }
    }
    Ok(Decomposition {
        report,
        relations,
        independent,
        k1_diagonal,
        e0_shifts_k,
        e1_lower_triangular,
        e1_diagonal_matches,
    })
}
