//! Generic-point sampling for identity testing over ℚ(i).

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GaussianRational, Scalar};
use crate::error::{Error, Result};

type G = GaussianRational;

/// A random point in parameter space: `q_*`, spectral parameters and twist.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub qs: G,
    pub lambdas: Vec<G>,
    pub twist: G,
    pub seed: u64,
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "seed={} q*={}", self.seed, self.qs)?;
        for (i, l) in self.lambdas.iter().enumerate() {
            write!(f, " lambda{}={}", i + 1, l)?;
        }
        write!(f, " t={}", self.twist)
    }
}

/// A named expression that must not vanish at an accepted sample point.
#[derive(Clone)]
pub struct Constraint {
    pub name: String,
    eval: Arc<dyn Fn(&SamplePoint) -> G + Send + Sync>,
}

impl Constraint {
    pub fn new(name: impl Into<String>, eval: impl Fn(&SamplePoint) -> G + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, p: &SamplePoint) -> G {
        (self.eval)(p)
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Constraint({})", self.name)
    }
}

/// Deterministic sampler. Numerators and denominators are drawn from
/// `1..=bound`; points failing a constraint are redrawn up to `max_attempts`.
#[derive(Clone, Debug)]
pub struct Sampler {
    pub n_lambdas: usize,
    pub bound: i64,
    pub max_attempts: usize,
    /// `q_*` must avoid roots of unity of order up to this value.
    pub root_order: u32,
    pub constraints: Vec<Constraint>,
}

impl Default for Sampler {
    fn default() -> Self {
        Self {
            n_lambdas: 2,
            bound: 9,
            max_attempts: 64,
            root_order: 24,
            constraints: Vec::new(),
        }
    }
}

impl Sampler {
    pub fn with_lambdas(n: usize) -> Self {
        Self {
            n_lambdas: n,
            ..Self::default()
        }
    }

    pub fn constraint(mut self, c: Constraint) -> Self {
        self.constraints.push(c);
        self
    }

    fn draw_rational(&self, rng: &mut ChaCha8Rng) -> (i64, i64) {
        let num = rng.gen_range(1..=self.bound) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den = rng.gen_range(1..=self.bound);
        (num, den)
    }

    fn draw_gaussian(&self, rng: &mut ChaCha8Rng) -> G {
        let (a, b) = self.draw_rational(rng);
        if rng.gen_bool(0.5) {
            let (c, d) = self.draw_rational(rng);
            G::from_parts(a, b, c, d)
        } else {
            G::real(a, b)
        }
    }

    /// The reason `p` is rejected, if any.
    pub fn rejection(&self, p: &SamplePoint) -> Option<String> {
        if p.qs.norm_sqr() == G::one().re {
            return Some("|q_*| = 1".into());
        }
        let mut power = G::one();
        for k in 1..=self.root_order {
            power = power * p.qs.clone();
            if power.is_one() {
                return Some(format!("q_* is a root of unity of order {k}"));
            }
        }
        if p.lambdas.iter().any(|l| l.is_zero()) || p.twist.is_zero() {
            return Some("zero parameter".into());
        }
        self.constraints
            .iter()
            .find(|c| c.eval(p).is_zero())
            .map(|c| c.name.clone())
    }

    /// Draws the first admissible point of the stream seeded by `seed`.
    pub fn sample(&self, seed: u64) -> Result<SamplePoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut last = String::new();
        for _ in 0..self.max_attempts {
            let qs = self.draw_gaussian(&mut rng);
            let lambdas = (0..self.n_lambdas).map(|_| self.draw_gaussian(&mut rng)).collect();
            let twist = self.draw_gaussian(&mut rng);
            let p = SamplePoint {
                qs,
                lambdas,
                twist,
                seed,
            };
            match self.rejection(&p) {
                None => return Ok(p),
                Some(reason) => last = reason,
            }
        }
        Err(Error::Sampling {
            attempts: self.max_attempts,
            reason: last,
        })
    }

    /// `count` points from consecutive seeds starting at `seed`.
    pub fn sample_many(&self, seed: u64, count: usize) -> Result<Vec<SamplePoint>> {
        (0..count as u64).map(|k| self.sample(seed.wrapping_add(k))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_point_is_off_unit_circle() {
        let p = Sampler::default().sample(1).unwrap();
        assert_ne!(p.qs.norm_sqr(), G::one().re);
    }

    #[test]
    fn deterministic_in_seed() {
        let s = Sampler::default();
        assert_eq!(s.sample(7).unwrap(), s.sample(7).unwrap());
    }

    #[test]
    fn pole_constraint_is_avoided() {
        let s = Sampler::default().constraint(Constraint::new("l2^2 - q*^2 l1^2", |p: &SamplePoint| {
            let (l1, l2) = (p.lambdas[0].clone(), p.lambdas[1].clone());
            l2.clone() * l2 - p.qs.clone() * p.qs.clone() * l1.clone() * l1
        }));
        for seed in 0..20 {
            let p = s.sample(seed).unwrap();
            let (l1, l2) = (&p.lambdas[0], &p.lambdas[1]);
            let v = l2.clone() * l2.clone() - p.qs.clone() * p.qs.clone() * l1.clone() * l1.clone();
            assert!(!v.is_zero());
        }
    }

    #[test]
    fn degenerate_constraint_exhausts_retries() {
        let s = Sampler::default().constraint(Constraint::new("zero", |_: &SamplePoint| G::zero()));
        assert!(matches!(s.sample(3), Err(Error::Sampling { .. })));
    }
}
