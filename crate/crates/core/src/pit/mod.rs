//! Degree-bounded identity testing.
//!
//! An [`Identity`] states equations between rational functions of the
//! sample variables `(r, λ₁, …, t)` with `q_* = r²`. One run on the
//! [`Tracked`] backend bounds the total numerator degree `D` of every
//! `lhs - rhs`; exact evaluation at `D + 1` admissible points of a random
//! line `P(τ) = P₀ + τ(P₁ - P₀)` then decides vanishing on that line.

mod families;

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use families::{
    AffineIntertwining, AffineRelations, AffineSerre, AffineYbe, GoldAgreement, OspCasimir, OspIntertwining, OspRelations, OspYbe,
    RootVectorAgreement,
};

use crate::check::Residual;
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational as G, QParams, SamplePoint, Sampler, Scalar, Tracked};
use crate::superlinalg::GradedMatrix;

/// Parameters at one point, in the backend `S`.
#[derive(Clone, Debug)]
pub struct Point<S: Scalar> {
    pub params: QParams<S>,
    pub lambdas: Vec<S>,
    pub twist: S,
}

impl Point<G> {
    /// `SamplePoint::qs` is read as the root `r`.
    pub fn exact(pt: &SamplePoint) -> Result<Self> {
        Ok(Self {
            params: QParams::from_root(pt.qs.clone())?,
            lambdas: pt.lambdas.clone(),
            twist: pt.twist.clone(),
        })
    }
}

impl Point<Tracked> {
    pub fn tracked(pt: &SamplePoint) -> Result<Self> {
        Ok(Self {
            params: QParams::from_root(Tracked::var(pt.qs.clone()))?,
            lambdas: pt.lambdas.iter().cloned().map(Tracked::var).collect(),
            twist: Tracked::var(pt.twist.clone()),
        })
    }
}

#[derive(Clone, Debug)]
pub enum Side<S: Scalar> {
    Matrix(GradedMatrix<S>),
    Scalar(S),
}

/// One stated equation `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Comparison<S: Scalar> {
    pub name: String,
    pub lhs: Side<S>,
    pub rhs: Side<S>,
}

impl<S: Scalar> Comparison<S> {
    pub fn matrices(name: impl Into<String>, lhs: GradedMatrix<S>, rhs: GradedMatrix<S>) -> Self {
        Self {
            name: name.into(),
            lhs: Side::Matrix(lhs),
            rhs: Side::Matrix(rhs),
        }
    }

    pub fn scalars(name: impl Into<String>, lhs: S, rhs: S) -> Self {
        Self {
            name: name.into(),
            lhs: Side::Scalar(lhs),
            rhs: Side::Scalar(rhs),
        }
    }

    /// Needs a residual built from both sides.
    pub fn from_residual(r: Residual<S>) -> Result<Self> {
        let (lhs, rhs) = r
            .sides
            .ok_or_else(|| Error::InvalidArgument(format!("`{}` was not stated as an equation", r.name)))?;
        Ok(Self::matrices(r.name, lhs, rhs))
    }

    pub fn from_residuals(rs: Vec<Residual<S>>) -> Result<Vec<Self>> {
        rs.into_iter().map(Self::from_residual).collect()
    }

    /// `(lhs entry, rhs entry)` at every position where either side is nonzero.
    fn entry_pairs(&self) -> Result<Vec<(S, S)>> {
        match (&self.lhs, &self.rhs) {
            (Side::Scalar(a), Side::Scalar(b)) => Ok(vec![(a.clone(), b.clone())]),
            (Side::Matrix(a), Side::Matrix(b)) => {
                if a.domain().dim() != b.domain().dim() || a.codomain().dim() != b.codomain().dim() {
                    return Err(Error::ShapeMismatch(format!("sides of `{}`", self.name)));
                }
                let pos: BTreeSet<(usize, usize)> =
                    a.entries().chain(b.entries()).map(|(r, c, _)| (r, c)).collect();
                Ok(pos.into_iter().map(|(r, c)| (a.get(r, c), b.get(r, c))).collect())
            }
            _ => Err(Error::ShapeMismatch(format!("sides of `{}`", self.name))),
        }
    }

    /// Largest `|lhs - rhs|` entry, zero when the sides agree.
    fn deviation(&self) -> Result<f64> {
        Ok(self
            .entry_pairs()?
            .into_iter()
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    fn holds(&self) -> Result<bool> {
        Ok(self.entry_pairs()?.into_iter().all(|(a, b)| (a - b).is_zero()))
    }
}

/// A family of equations between rational functions of the sample variables.
pub trait Identity: Sync {
    /// Draws base points; its constraints also screen the points of the line.
    fn sampler(&self) -> Sampler;

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ProvedExact,
    PassedNumeric,
    Failed,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ProvedExact => "proved-exact",
            Verdict::PassedNumeric => "passed-numeric",
            Verdict::Failed => "failed",
            Verdict::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PitOutcome {
    pub verdict: Verdict,
    pub comparisons: usize,
    /// Bound on the numerator degree of every `lhs - rhs`.
    pub degree_bound: u32,
    /// Line points where the sides were compared.
    pub points: usize,
    /// Line points skipped as poles or excluded values.
    pub rejected: usize,
    /// First failing equation, with its point and largest deviation.
    pub witness: Option<String>,
    pub note: Option<String>,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct PitConfig {
    pub seed: u64,
    /// Numerator and denominator bound of the tracking point's coordinates.
    pub tracking_bound: i64,
    /// Extra line points tried beyond `D + 1` before giving up.
    pub spare_points: usize,
    /// Points compared per parallel batch.
    pub batch: usize,
}

impl Default for PitConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            tracking_bound: 10_007,
            spare_points: 64,
            batch: 8,
        }
    }
}

fn line_point(a: &SamplePoint, b: &SamplePoint, tau: i64) -> SamplePoint {
    let t = G::from_i64(tau);
    let at = |x: &G, y: &G| x.clone() + t.clone() * (y.clone() - x.clone());
    SamplePoint {
        qs: at(&a.qs, &b.qs),
        lambdas: a.lambdas.iter().zip(&b.lambdas).map(|(x, y)| at(x, y)).collect(),
        twist: at(&a.twist, &b.twist),
        seed: a.seed,
    }
}

/// The degree bound from one run on the tracking backend.
pub fn degree_bound<I: Identity>(id: &I, cfg: &PitConfig) -> Result<(u32, usize)> {
    let sampler = Sampler {
        bound: cfg.tracking_bound,
        ..id.sampler()
    };
    let pt = sampler.sample(cfg.seed.wrapping_add(0x5eed))?;
    let comps = id.sides(&Point::tracked(&pt)?)?;
    let mut d = 0;
    for c in &comps {
        for (a, b) in c.entry_pairs()? {
            d = d.max(Tracked::difference_degree(&a, &b));
        }
    }
    Ok((d, comps.len()))
}

enum PointResult {
    Rejected,
    Holds,
    Fails(String),
}

fn compare_at<I: Identity>(id: &I, sampler: &Sampler, pt: &SamplePoint, tau: i64) -> PointResult {
    if sampler.rejection(pt).is_some() {
        return PointResult::Rejected;
    }
    let comps = match Point::exact(pt).and_then(|p| id.sides(&p)) {
        Ok(c) => c,
        Err(_) => return PointResult::Rejected,
    };
    for c in &comps {
        match c.holds() {
            Ok(true) => {}
            Ok(false) => {
                let dev = c.deviation().unwrap_or(f64::NAN);
                return PointResult::Fails(format!("`{}` at τ={tau} ({pt}): max |lhs-rhs| = {dev:.3e}", c.name));
            }
            Err(e) => return PointResult::Fails(format!("`{}`: {e}", c.name)),
        }
    }
    PointResult::Holds
}

/// Runs the test; errors on the tracking backend yield `Skipped`.
pub fn prove<I: Identity>(id: &I, cfg: &PitConfig) -> PitOutcome {
    let start = Instant::now();
    let mut out = PitOutcome {
        verdict: Verdict::Skipped,
        comparisons: 0,
        degree_bound: 0,
        points: 0,
        rejected: 0,
        witness: None,
        note: None,
        seconds: 0.0,
    };
    let finish = |mut o: PitOutcome| {
        o.seconds = start.elapsed().as_secs_f64();
        o
    };
    let (d, n) = match degree_bound(id, cfg) {
        Ok(x) => x,
        Err(e) => {
            out.note = Some(format!("degree tracking failed: {e}"));
            return finish(out);
        }
    };
    out.degree_bound = d;
    out.comparisons = n;
    let sampler = id.sampler();
    let (base, dir) = match (sampler.sample(cfg.seed), sampler.sample(cfg.seed.wrapping_add(0x1ae))) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            out.note = Some(format!("no base point: {e}"));
            return finish(out);
        }
    };
    let need = d as usize + 1;
    let limit = (need + cfg.spare_points) as i64;
    let mut tau = 0i64;
    while out.points < need && tau < limit {
        let hi = (tau + cfg.batch.max(1) as i64).min(limit);
        let results: Vec<(i64, PointResult)> = (tau..hi)
            .into_par_iter()
            .map(|t| (t, compare_at(id, &sampler, &line_point(&base, &dir, t), t)))
            .collect();
        for (_, r) in results {
            match r {
                PointResult::Rejected => out.rejected += 1,
                PointResult::Holds => out.points += 1,
                PointResult::Fails(w) => {
                    out.verdict = Verdict::Failed;
                    out.witness = Some(w);
                    return finish(out);
                }
            }
        }
        tau = hi;
    }
    if out.points >= need {
        out.verdict = Verdict::ProvedExact;
    } else {
        out.note = Some(format!("only {} of {need} line points admissible", out.points));
    }
    finish(out)
}
