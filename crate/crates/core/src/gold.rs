//! Reference R-matrices transcribed entry by entry, and the comparison used
//! to match a computed matrix against them.
//!
//! Basis order is the tensor order of [`spin_space`]: index `3i + j` (or
//! `2i + j`) is `e_i ⊗ e_j`. Odd-spin matrices are given with `q_*^{1/2}`
//! extracted.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repr_osp::spin_space;
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{GradedMatrix, MatrixDump, Parity, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoldMatrix {
    /// `R` on `W₁⁺ ⊗ W₁⁺`.
    OspW1W1,
    /// `R` on `W₂⁺ ⊗ W₂⁺`.
    OspW2W2,
    /// Spin-½ spectral `R(λ₁, λ₂)` on `W₁⁺ ⊗ W₁⁺`.
    AffineHalf,
    /// Spin-1 spectral `R(λ₁, λ₂)` on `W₂⁺ ⊗ W₂⁺`, from the hyperbolic form.
    AffineOne,
}

impl GoldMatrix {
    pub const ALL: [GoldMatrix; 4] = [Self::OspW1W1, Self::OspW2W2, Self::AffineHalf, Self::AffineOne];

    pub fn name(self) -> &'static str {
        match self {
            Self::OspW1W1 => "osp-w1w1",
            Self::OspW2W2 => "osp-w2w2",
            Self::AffineHalf => "affine-half",
            Self::AffineOne => "affine-one",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown gold matrix `{s}`")))
    }

    /// Doubled spins of the two factors.
    pub fn spins(self) -> (i64, i64) {
        match self {
            Self::OspW1W1 | Self::AffineHalf => (1, 1),
            Self::OspW2W2 | Self::AffineOne => (2, 2),
        }
    }

    pub fn is_spectral(self) -> bool {
        matches!(self, Self::AffineHalf | Self::AffineOne)
    }

    /// `λ₁, λ₂` are ignored for the osp matrices.
    pub fn build<S: Scalar>(self, p: &QParams<S>, l1: &S, l2: &S) -> Result<GradedMatrix<S>> {
        match self {
            Self::OspW1W1 => osp_w1w1(p),
            Self::OspW2W2 => osp_w2w2(p),
            Self::AffineHalf => affine_half(p, l1, l2),
            Self::AffineOne => affine_one(p, l1, l2),
        }
    }
}

fn square_space(s: i64) -> Result<Arc<crate::superlinalg::GradedSpace>> {
    let v = spin_space(s, Sign::Plus)?;
    Ok(Arc::new(v.tensor(&v)))
}

fn matrix<S: Scalar>(s: i64, entries: Vec<(usize, usize, S)>) -> Result<GradedMatrix<S>> {
    let space = square_space(s)?;
    GradedMatrix::from_entries(space.clone(), space, Parity::Even, entries)
}

pub fn osp_w1w1<S: Scalar>(p: &QParams<S>) -> Result<GradedMatrix<S>> {
    let qi = p.qs_inv().clone();
    matrix(
        1,
        vec![
            (0, 0, S::one()),
            (1, 1, qi.clone()),
            (1, 2, S::one() - qi.clone() * qi.clone()),
            (2, 2, qi),
            (3, 3, -S::one()),
        ],
    )
}

pub fn osp_w2w2<S: Scalar>(p: &QParams<S>) -> Result<GradedMatrix<S>> {
    let x = p.qs().clone();
    let xi = p.qs_inv().clone();
    let x2 = p.qs_pow(2);
    let xi2 = p.qs_pow(-2);
    let one = S::one();
    let d = x2.clone() - xi2.clone();
    matrix(
        2,
        vec![
            (0, 0, x2.clone()),
            (1, 1, one.clone()),
            (1, 3, d.clone()),
            (2, 2, xi2.clone()),
            (2, 4, xi2.clone() * (xi.clone() - x.clone())),
            (2, 6, d.clone() * (one.clone() - xi2.clone())),
            (3, 3, one.clone()),
            (4, 4, -one.clone()),
            (4, 6, d.clone() * (x + xi)),
            (5, 5, one.clone()),
            (5, 7, d),
            (6, 6, xi2),
            (7, 7, one),
            (8, 8, x2),
        ],
    )
}

pub fn affine_half<S: Scalar>(p: &QParams<S>, l1: &S, l2: &S) -> Result<GradedMatrix<S>> {
    let qs = p.qs().clone();
    let (a2, b2) = (l1.clone() * l1.clone(), l2.clone() * l2.clone());
    let den = a2.div(&qs)? - b2.clone() * qs.clone();
    let diag = (a2 - b2).div(&den)?;
    let off = (l1.clone() * l2.clone() * (p.qs_inv().clone() - qs)).div(&den)?;
    matrix(
        1,
        vec![
            (0, 0, S::one()),
            (1, 1, diag.clone()),
            (2, 2, diag),
            (1, 2, off.clone()),
            (2, 1, off),
            (3, 3, -S::one()),
        ],
    )
}

fn sh<S: Scalar>(r: &S) -> Result<S> {
    Ok((r.clone() - r.inv()?) * S::from_ratio(1, 2))
}

fn ch<S: Scalar>(r: &S) -> Result<S> {
    Ok((r.clone() + r.inv()?) * S::from_ratio(1, 2))
}

/// Entries `a…h` in `sinh`/`cosh` form of `z = λ₁/λ₂` and `q_*`, scaled by `q_*²/a`.
pub fn affine_one<S: Scalar>(p: &QParams<S>, l1: &S, l2: &S) -> Result<GradedMatrix<S>> {
    let qs = p.qs().clone();
    let q2 = p.qs_pow(2);
    let z = l1.div(l2)?;
    let n = |k: i64| S::from_i64(k);
    let a = n(4) * sh(&z.div(&qs)?)? * sh(&z.div(&q2)?)?;
    let b = n(4) * sh(&z)? * sh(&z.div(&qs)?)?;
    let c = n(4) * sh(&z)? * sh(&(z.clone() * qs.clone()))?;
    let d = -n(4) * sh(&z.div(&qs)?)? * sh(&q2)?;
    let e = n(2) * ch(&(z.clone() * z.clone()).div(&qs)?)? - n(4) * ch(&qs)? + n(2) * ch(&p.qs_pow(3))?;
    let f = n(4) * p.qs_inv().clone() * sh(&z)? * sh(&qs)?;
    let g = n(4) * sh(&qs)? * sh(&q2)?;
    let h = n(8) * qs.clone() * sh(&z)? * ch(&qs)? * sh(&q2)?;
    let scale = q2.div(&a)?;
    let entries = vec![
        (0, 0, a.clone()),
        (8, 8, a),
        (1, 1, b.clone()),
        (3, 3, b.clone()),
        (5, 5, b.clone()),
        (7, 7, b),
        (1, 3, d.clone()),
        (3, 1, d.clone()),
        (5, 7, d.clone()),
        (7, 5, d),
        (2, 2, c.clone()),
        (6, 6, c),
        (2, 4, f.clone()),
        (6, 4, f),
        (2, 6, g.clone()),
        (6, 2, g),
        (4, 2, -h.clone()),
        (4, 6, -h),
        (4, 4, -e),
    ];
    Ok(matrix(2, entries)?.scale(&scale))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "tolerance")]
pub enum CompareMode {
    Exact,
    Tolerance(f64),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldComparison {
    pub matches: bool,
    pub mode: CompareMode,
    /// `(row, col)` labels of the entry used to fix the relative scale.
    pub reference: (String, String),
    /// `dump / gold` at the reference entry.
    pub scale: String,
    /// Entries compared (union of both supports).
    pub compared: usize,
    /// Largest `|dump - scale·gold|` over all entries.
    pub max_deviation: f64,
    /// Labels of entries that differ.
    pub mismatches: Vec<(String, String)>,
}

/// Compares two dumps entrywise after rescaling `gold` so that the entries
/// at `reference` agree; the first nonzero gold entry is used when
/// `reference` is `None`.
pub fn compare_dumps<S: Scalar>(
    dump: &MatrixDump,
    gold: &MatrixDump,
    mode: CompareMode,
    reference: Option<(String, String)>,
) -> Result<GoldComparison> {
    let d: BTreeMap<(String, String), S> = dump.parsed_entries()?;
    let g: BTreeMap<(String, String), S> = gold.parsed_entries()?;
    let reference = match reference {
        Some(r) => r,
        None => g
            .keys()
            .next()
            .cloned()
            .ok_or_else(|| Error::InvalidArgument("gold matrix has no nonzero entry".into()))?,
    };
    let gref = g
        .get(&reference)
        .ok_or_else(|| Error::InvalidArgument(format!("reference entry {reference:?} missing from gold")))?;
    let dref = d
        .get(&reference)
        .ok_or_else(|| Error::InvalidArgument(format!("reference entry {reference:?} missing from dump")))?;
    let scale = dref.div(gref)?;
    let mut keys: Vec<_> = d.keys().chain(g.keys()).cloned().collect();
    keys.sort();
    keys.dedup();
    let mut max_deviation = 0.0f64;
    let mut mismatches = Vec::new();
    for k in &keys {
        let a = d.get(k).cloned().unwrap_or_else(S::zero);
        let b = g.get(k).cloned().unwrap_or_else(S::zero) * scale.clone();
        let diff = a - b;
        let dev = diff.abs();
        max_deviation = max_deviation.max(dev);
        let bad = match mode {
            CompareMode::Exact => !diff.is_zero(),
            CompareMode::Tolerance(t) => dev > t,
        };
        if bad {
            mismatches.push(k.clone());
        }
    }
    Ok(GoldComparison {
        matches: mismatches.is_empty(),
        mode,
        reference,
        scale: scale.to_scalar_string(),
        compared: keys.len(),
        max_deviation,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr_affine::{build_r_closed_form, FqMode};
    use crate::repr_osp::{build_r_osp, build_w};
    use crate::scalar::GaussianRational as G;

    #[test]
    fn affine_half_is_unitary_at_equal_parameters() {
        let p = QParams::new(G::real(3, 2)).unwrap();
        let l = G::from_parts(1, 3, 1, 2);
        let r = affine_half(&p, &l, &l).unwrap();
        assert!(r.get(1, 1).is_zero());
        assert_eq!(r.get(1, 2), G::one());
    }

    #[test]
    fn self_comparison_is_exact() {
        let p = QParams::new(G::from_parts(5, 3, 1, 7)).unwrap();
        let m = osp_w2w2(&p).unwrap();
        let d = MatrixDump::from_matrix(&m);
        let c = compare_dumps::<G>(&d, &d, CompareMode::Exact, None).unwrap();
        assert!(c.matches && c.scale == "1+0*i", "{c:?}");
    }

    #[test]
    fn rescaled_dump_matches_and_perturbed_does_not() {
        let p = QParams::new(G::from_parts(5, 3, 1, 7)).unwrap();
        let w = build_w(1, Sign::Plus, &p).unwrap();
        let r = build_r_osp(&w, &w).unwrap().matrix.scale(&G::from_i64(3));
        let gold = MatrixDump::from_matrix(&osp_w1w1(&p).unwrap());
        let c = compare_dumps::<G>(&MatrixDump::from_matrix(&r), &gold, CompareMode::Exact, None).unwrap();
        assert!(c.matches, "{c:?}");
        assert_eq!(c.scale, "3+0*i");
        let l = G::from_parts(1, 3, 1, 2);
        let affine = build_r_closed_form(1, Sign::Plus, &l, 1, Sign::Plus, &G::real(2, 1), FqMode::Omitted, &p)
            .unwrap()
            .product()
            .unwrap();
        let c = compare_dumps::<G>(&MatrixDump::from_matrix(&affine), &gold, CompareMode::Exact, None).unwrap();
        assert!(!c.matches);
    }

    #[test]
    fn missing_reference_is_an_error() {
        let p = QParams::new(G::real(3, 2)).unwrap();
        let d = MatrixDump::from_matrix(&osp_w1w1(&p).unwrap());
        let r = Some(("nope".to_string(), "nope".to_string()));
        assert!(compare_dumps::<G>(&d, &d, CompareMode::Exact, r).is_err());
    }
}
