//! Functional relations between transfer and Q-operators on a chain.
//!
//! The twist enters only through the trace, so the scalar cofactors of the
//! character identities become transfer operators of one-dimensional
//! auxiliaries: `U_p = T_{U_p^+}` and `σ = T_{U_0^-}`. With `h = q_*^{1/2}`
//! and `F_s⁻¹ = U_s - σU_{s-2}` the relations checked are
//!
//! * `T₁(λ)Q₊(λ) = U₁Q₊(q_*λ) + σU₋₁Q₊(q_*⁻¹λ)`, and the same for `Q₋` with `q_* ↔ q_*⁻¹`;
//! * `F₀⁻¹Q₊(hλ)Q₋(h⁻¹λ) - σF₋₂⁻¹Q₊(h⁻¹λ)Q₋(hλ) = 1`;
//! * `T_s(hλ)T_s(h⁻¹λ) - T_{s+1}(λ)T_{s-1}(λ) = σ^s`;
//! * `T₂(hλ) = T₁(q_*λ)T₁(λ) - σ`;
//! * `T_s(λ) = Q₊(h^{s+1}λ)Q₊(h^{-s-1}λ) Σ_j σ^j U_{-2k} [Q₊(h^{2k+1}λ)Q₊(h^{2k-1}λ)]⁻¹`,
//!   `k = j - s/2`, and the `Q₋` form with `σ^{s-j}U_{2k}`;
//! * `T⁺_s = T_s + σ^{s+1}T⁺_{-s-2}` with `T⁺` the Verma trace;
//! * `Q₊(h^{s+1}λ)Q₋(h^{-s-1}λ)F_s⁻¹ = T⁺_s`.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Aux, Chain, Normalization};
use crate::error::{Error, Result};
use crate::repr_affine::fq_value;
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{DenseMatrix, GradedMatrix, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationFamily {
    Tq(Sign),
    Wronskian,
    Fusion(i64),
    T2,
    TsSum(i64, Sign),
    Filtration(i64),
    Decomposition(i64),
}

impl RelationFamily {
    /// Families by command-line name: `tq`, `wronskian`, `fusion`, `t2`,
    /// `ts-sum`, `filtration`, `decomposition`.
    pub fn parse(name: &str) -> Result<Vec<Self>> {
        use RelationFamily::*;
        let pm = [Sign::Plus, Sign::Minus];
        Ok(match name {
            "tq" => pm.iter().map(|&s| Tq(s)).collect(),
            "wronskian" => vec![Wronskian],
            "fusion" => vec![Fusion(1), Fusion(2)],
            "t2" => vec![T2],
            "ts-sum" => (1..=3).flat_map(|s| pm.iter().map(move |&g| TsSum(s, g))).collect(),
            "filtration" => (0..=3).map(Filtration).collect(),
            "decomposition" => (0..=3).map(Decomposition).collect(),
            _ => return Err(Error::Parse(format!("unknown relation family `{name}`"))),
        })
    }

    pub fn all() -> Vec<Self> {
        ["tq", "wronskian", "fusion", "t2", "ts-sum", "filtration", "decomposition"]
            .iter()
            .flat_map(|n| Self::parse(n).expect("known family"))
            .collect()
    }

    fn uses_q(self) -> bool {
        !matches!(self, RelationFamily::Fusion(_) | RelationFamily::T2 | RelationFamily::Filtration(_))
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RelationFamily::*;
        match self {
            Tq(s) => write!(f, "tq{}", s.symbol()),
            Wronskian => write!(f, "wronskian"),
            Fusion(s) => write!(f, "fusion(s={s})"),
            T2 => write!(f, "t2"),
            TsSum(s, g) => write!(f, "ts-sum{}(s={s})", g.symbol()),
            Filtration(s) => write!(f, "filtration(s={s})"),
            Decomposition(s) => write!(f, "decomposition(s={s})"),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationResidual {
    pub relation: String,
    /// Largest entry of `LHS - RHS`.
    pub residual: f64,
    /// Largest entry of the left-hand side, for scale.
    pub magnitude: f64,
    pub passed: bool,
}

/// Truncation stability of one Q-operator: steps `nmax → nmax+2`,
/// `N → N+4`, and the successive ratios `‖Q_{N+k+1} - Q_{N+k}‖ / ‖Q_{N+k} - Q_{N+k-1}‖`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QCertificate {
    pub operator: String,
    pub nmax_step: f64,
    pub fock_step: f64,
    pub fock_ratios: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationReport {
    pub sites: usize,
    pub fock_levels: usize,
    pub nmax: usize,
    pub fq_order: usize,
    pub twist: String,
    pub lambda: String,
    pub tolerance: f64,
    pub residuals: Vec<RelationResidual>,
    pub certificates: Vec<QCertificate>,
    pub verdict: bool,
}

/// Dense inverse of a square operator.
fn inverse<S: Scalar>(m: &GradedMatrix<S>) -> Result<GradedMatrix<S>> {
    let d = m.domain().dim();
    let cols: Vec<Vec<S>> = (0..d).map(|c| (0..d).map(|r| m.get(r, c)).collect()).collect();
    let a = DenseMatrix::from_columns(d, &cols)?;
    let mut entries = Vec::new();
    for c in 0..d {
        let mut e = vec![S::zero(); d];
        e[c] = S::one();
        for (r, v) in a.solve(&e, 0.0)?.into_iter().enumerate() {
            entries.push((r, c, v));
        }
    }
    GradedMatrix::from_entries(m.domain().clone(), m.codomain().clone(), m.parity(), entries)
}

/// Memoised transfer operators of one chain.
struct Ops<'a, S: Scalar> {
    chain: &'a Chain<S>,
    cache: HashMap<String, GradedMatrix<S>>,
}

impl<'a, S: Scalar> Ops<'a, S> {
    fn new(chain: &'a Chain<S>) -> Self {
        Self {
            chain,
            cache: HashMap::new(),
        }
    }

    fn t(&mut self, aux: Aux, lambda: &S) -> Result<GradedMatrix<S>> {
        if let Aux::Eval { s } = aux {
            if s < 0 {
                return Ok(GradedMatrix::zero(
                    self.chain.space.clone(),
                    self.chain.space.clone(),
                    crate::superlinalg::Parity::Even,
                ));
            }
        }
        let key = format!("{aux:?}@{}", lambda.to_scalar_string());
        if let Some(m) = self.cache.get(&key) {
            return Ok(m.clone());
        }
        let m = self.chain.transfer(aux, lambda)?.operator;
        self.cache.insert(key, m.clone());
        Ok(m)
    }

    fn ts(&mut self, s: i64, lambda: &S) -> Result<GradedMatrix<S>> {
        self.t(Aux::Eval { s }, lambda)
    }

    fn q(&mut self, sign: Sign, lambda: &S) -> Result<GradedMatrix<S>> {
        self.t(Aux::Prefundamental { sign }, lambda)
    }

    fn verma(&mut self, s: i64, lambda: &S) -> Result<GradedMatrix<S>> {
        self.t(Aux::Verma { s, sign: Sign::Plus }, lambda)
    }

    fn u(&mut self, p: i64) -> Result<GradedMatrix<S>> {
        self.t(Aux::OneDim { p, sign: Sign::Plus }, &S::one())
    }

    fn sigma_pow(&mut self, k: i64) -> Result<GradedMatrix<S>> {
        let s = self.t(Aux::OneDim { p: 0, sign: Sign::Minus }, &S::one())?;
        s.pow(k.rem_euclid(2) as u32)
    }

    /// `F_s⁻¹ = U_s - σU_{s-2}`.
    fn f_inv(&mut self, s: i64) -> Result<GradedMatrix<S>> {
        let su = self.sigma_pow(1)?.compose(&self.u(s - 2)?)?;
        self.u(s)?.sub(&su)
    }
}

fn prod<S: Scalar>(ms: &[&GradedMatrix<S>]) -> Result<GradedMatrix<S>> {
    let (first, rest) = ms.split_first().expect("non-empty product");
    rest.iter().try_fold((*first).clone(), |acc, m| acc.compose(m))
}

/// `(LHS, RHS)` of one relation at `λ`.
fn sides<S: Scalar>(ops: &mut Ops<'_, S>, fam: RelationFamily, lambda: &S) -> Result<(GradedMatrix<S>, GradedMatrix<S>)> {
    let p = ops.chain.params.clone();
    let h = |e: i64| -> Result<S> { Ok(p.qs_half_pow(e)? * lambda.clone()) };
    use RelationFamily::*;
    match fam {
        Tq(sign) => {
            let (up, down) = if sign.is_plus() { (h(2)?, h(-2)?) } else { (h(-2)?, h(2)?) };
            let lhs = ops.ts(1, lambda)?.compose(&ops.q(sign, lambda)?)?;
            let a = ops.u(1)?.compose(&ops.q(sign, &up)?)?;
            let b = prod(&[&ops.sigma_pow(1)?, &ops.u(-1)?, &ops.q(sign, &down)?])?;
            Ok((lhs, a.add(&b)?))
        }
        Wronskian => {
            let a = prod(&[&ops.f_inv(0)?, &ops.q(Sign::Plus, &h(1)?)?, &ops.q(Sign::Minus, &h(-1)?)?])?;
            let b = prod(&[
                &ops.sigma_pow(1)?,
                &ops.f_inv(-2)?,
                &ops.q(Sign::Plus, &h(-1)?)?,
                &ops.q(Sign::Minus, &h(1)?)?,
            ])?;
            Ok((a.sub(&b)?, ops.chain.identity()))
        }
        Fusion(s) => {
            let lhs = ops.ts(s, &h(1)?)?.compose(&ops.ts(s, &h(-1)?)?)?;
            let rhs = ops.ts(s + 1, lambda)?.compose(&ops.ts(s - 1, lambda)?)?;
            Ok((lhs, rhs.add(&ops.sigma_pow(s)?)?))
        }
        T2 => {
            let lhs = ops.ts(2, &h(1)?)?;
            let rhs = ops.ts(1, &h(2)?)?.compose(&ops.ts(1, lambda)?)?;
            Ok((lhs, rhs.sub(&ops.sigma_pow(1)?)?))
        }
        TsSum(s, sign) => {
            let outer = ops.q(sign, &h(s + 1)?)?.compose(&ops.q(sign, &h(-s - 1)?)?)?;
            let mut acc: Option<GradedMatrix<S>> = None;
            for j in 0..=s {
                let two_k = 2 * j - s;
                let (sig, u) = if sign.is_plus() { (j, -two_k) } else { (s - j, two_k) };
                let inner = ops.q(sign, &h(two_k + 1)?)?.compose(&ops.q(sign, &h(two_k - 1)?)?)?;
                let term = prod(&[&ops.sigma_pow(sig)?, &ops.u(u)?, &inverse(&inner)?])?;
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term)?,
                });
            }
            Ok((ops.ts(s, lambda)?, outer.compose(&acc.expect("s ≥ 0"))?))
        }
        Filtration(s) => {
            let rhs = ops.ts(s, lambda)?.add(&ops.sigma_pow(s + 1)?.compose(&ops.verma(-s - 2, lambda)?)?)?;
            Ok((ops.verma(s, lambda)?, rhs))
        }
        Decomposition(s) => {
            let lhs = prod(&[&ops.q(Sign::Plus, &h(s + 1)?)?, &ops.q(Sign::Minus, &h(-s - 1)?)?, &ops.f_inv(s)?])?;
            Ok((lhs, ops.verma(s, lambda)?))
        }
    }
}

fn q_certificate(chain: &Chain<Complex64>, sign: Sign, lambda: &Complex64) -> Result<QCertificate> {
    let spec = &chain.spec;
    let at = |n: usize, nmax: usize| -> Result<GradedMatrix<Complex64>> {
        let c = Chain::new(spec.clone().with_truncation(n, nmax, spec.fq_order), &chain.params)?;
        Ok(c.transfer(Aux::Prefundamental { sign }, lambda)?.operator)
    };
    let (n, k) = (spec.fock_levels, spec.nmax);
    let base = at(n, k)?;
    let nmax_step = base.max_abs_diff(&at(n, k + 2)?)?;
    let fock_step = base.max_abs_diff(&at(n + 4, k)?)?;
    let seq = (0..4).map(|d| at(n - 3 + d, k)).collect::<Result<Vec<_>>>()?;
    let diffs = seq
        .windows(2)
        .map(|w| w[1].max_abs_diff(&w[0]))
        .collect::<Result<Vec<_>>>()?;
    let fock_ratios = diffs.windows(2).map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 }).collect();
    Ok(QCertificate {
        operator: format!("Q{}(λ)", sign.symbol()),
        nmax_step,
        fock_step,
        fock_ratios,
    })
}

/// Checks each family at `λ` on a chain with universal normalisation.
/// Residuals are absolute; a relation passes when its residual is at most `tol`.
pub fn verify_functional_relations(
    chain: &Chain<Complex64>,
    lambda: &Complex64,
    families: &[RelationFamily],
    tol: f64,
) -> Result<RelationReport> {
    if chain.spec.normalization != Normalization::Universal {
        return Err(Error::InvalidArgument(
            "functional relations with Q-operators need the universal normalisation".into(),
        ));
    }
    let mut ops = Ops::new(chain);
    let mut residuals = Vec::new();
    for &fam in families {
        let (lhs, rhs) = sides(&mut ops, fam, lambda)?;
        let residual = lhs.max_abs_diff(&rhs)?;
        residuals.push(RelationResidual {
            relation: fam.to_string(),
            residual,
            magnitude: lhs.max_abs(),
            passed: residual <= tol,
        });
    }
    let mut certificates = Vec::new();
    if families.iter().any(|f| f.uses_q()) && !chain.is_empty() {
        for sign in [Sign::Plus, Sign::Minus] {
            certificates.push(q_certificate(chain, sign, lambda)?);
        }
    }
    let certified = certificates.iter().all(|c| c.nmax_step.max(c.fock_step) <= tol);
    Ok(RelationReport {
        sites: chain.len(),
        fock_levels: chain.spec.fock_levels,
        nmax: chain.spec.nmax,
        fq_order: chain.spec.fq_order,
        twist: chain.spec.twist.to_scalar_string(),
        lambda: lambda.to_scalar_string(),
        tolerance: tol,
        verdict: certified && residuals.iter().all(|r| r.passed),
        residuals,
        certificates,
    })
}

/// Exact fusion structure with `f_q` dropped:
/// `T_s(hλ)T_s(h⁻¹λ) - T_{s+1}(λ)T_{s-1}(λ) = c·σ^s`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FusionStructure {
    pub s: i64,
    /// `c` when the difference is proportional to `σ^s`.
    pub c: Option<String>,
    /// `c` evaluated numerically.
    pub c_value: Option<(f64, f64)>,
    /// `1/Π f_q` over the sites, from the `f_q` series.
    pub c_expected: (f64, f64),
    pub deviation: f64,
}

impl FusionStructure {
    pub fn holds(&self, tol: f64) -> bool {
        self.c.is_some() && self.deviation <= tol
    }
}

pub fn structural_fusion<S: Scalar>(chain: &Chain<S>, s: i64, lambda: &S) -> Result<FusionStructure> {
    if chain.spec.normalization != Normalization::FqOmitted {
        return Err(Error::InvalidArgument("structural fusion needs f_q omitted".into()));
    }
    let mut ops = Ops::new(chain);
    let (lhs, rhs) = sides(&mut ops, RelationFamily::Fusion(s), lambda)?;
    let sig = ops.sigma_pow(s)?;
    // rhs carries + σ^s; undo it to get the bare difference.
    let diff = lhs.sub(&rhs.sub(&sig)?)?;
    let c = diff.proportional_to(&sig)?;
    let pc = QParams::new(chain.params.qs().to_complex())?;
    let lam = lambda.to_complex();
    let h = pc.qs_half_pow(1)?;
    let mut f = Complex64::new(1.0, 0.0);
    for (s_site, nu) in &chain.spec.sites {
        let nu = nu.to_complex();
        f *= fq_value(s, *s_site, &(h * lam), &nu, &pc, chain.spec.fq_order)?;
        f *= fq_value(s, *s_site, &(lam / h), &nu, &pc, chain.spec.fq_order)?;
    }
    let expected = 1.0 / f;
    let value = c.as_ref().map(|c| c.to_complex());
    Ok(FusionStructure {
        s,
        c: c.as_ref().map(|c| c.to_scalar_string()),
        c_value: value.map(|v| (v.re, v.im)),
        c_expected: (expected.re, expected.im),
        deviation: value.map_or(f64::INFINITY, |v| (v - expected).norm()),
    })
}
