//! Degree-tracking backend for polynomial identity testing.
//!
//! A [`Tracked`] value is a rational function `N/D` of the sampled variables,
//! known through its exact value at one generic point together with an upper
//! bound on the total degree of `N` and a factorisation of `D` into factors
//! keyed by their value at that point. Running a generic construction on
//! leaves of degree one yields the degree bound used by the identity tester.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{GaussianRational as G, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
struct Factor {
    key: G,
    deg: u32,
    mult: u32,
}

fn degree(fs: &[Factor]) -> u32 {
    fs.iter().map(|f| f.deg * f.mult).sum()
}

fn merge_sum(a: &[Factor], b: &[Factor]) -> Vec<Factor> {
    let mut out = a.to_vec();
    for f in b {
        match out.iter_mut().find(|g| g.key == f.key) {
            Some(g) => g.mult += f.mult,
            None => out.push(f.clone()),
        }
    }
    out
}

fn lcm(a: &[Factor], b: &[Factor]) -> Vec<Factor> {
    let mut out = a.to_vec();
    for f in b {
        match out.iter_mut().find(|g| g.key == f.key) {
            Some(g) => g.mult = g.mult.max(f.mult),
            None => out.push(f.clone()),
        }
    }
    out
}

/// Degree of `big / small` for `small` dividing `big`.
fn quotient_degree(big: &[Factor], small: &[Factor]) -> u32 {
    degree(big) - degree(small)
}

#[derive(Clone)]
pub struct Tracked {
    value: G,
    num_deg: u32,
    /// The numerator as a product of factors, while that is known.
    num_factors: Option<Vec<Factor>>,
    den: Vec<Factor>,
}

impl Tracked {
    fn constant(value: G) -> Self {
        Self {
            value,
            num_deg: 0,
            num_factors: Some(Vec::new()),
            den: Vec::new(),
        }
    }

    /// An independent variable with the given value at the tracking point.
    pub fn var(value: G) -> Self {
        Self {
            num_deg: 1,
            num_factors: Some(vec![Factor {
                key: value.clone(),
                deg: 1,
                mult: 1,
            }]),
            den: Vec::new(),
            value,
        }
    }

    pub fn value(&self) -> &G {
        &self.value
    }

    /// Upper bound on the total degree of the numerator.
    pub fn numerator_degree(&self) -> u32 {
        self.num_deg
    }

    pub fn denominator_degree(&self) -> u32 {
        degree(&self.den)
    }

    /// Numerator degree bound of `a - b` over the common denominator, valid
    /// even when the difference vanishes.
    pub fn difference_degree(a: &Self, b: &Self) -> u32 {
        if a.value.is_zero() && b.value.is_zero() {
            return 0;
        }
        if b.value.is_zero() {
            return a.num_deg;
        }
        if a.value.is_zero() {
            return b.num_deg;
        }
        let l = lcm(&a.den, &b.den);
        (a.num_deg + quotient_degree(&l, &a.den)).max(b.num_deg + quotient_degree(&l, &b.den))
    }

    fn cancel(mut self) -> Self {
        if let Some(nf) = &mut self.num_factors {
            for f in nf.iter_mut() {
                if let Some(g) = self.den.iter_mut().find(|g| g.key == f.key) {
                    let k = f.mult.min(g.mult);
                    f.mult -= k;
                    g.mult -= k;
                }
            }
            nf.retain(|f| f.mult > 0);
            self.num_deg = degree(nf);
            self.den.retain(|f| f.mult > 0);
        }
        self
    }
}

impl fmt::Debug for Tracked {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [deg ≤ {}/{}]", self.value, self.num_deg, degree(&self.den))
    }
}

impl PartialEq for Tracked {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Add for Tracked {
    type Output = Tracked;
    fn add(self, o: Tracked) -> Tracked {
        if o.value.is_zero() {
            return self;
        }
        if self.value.is_zero() {
            return o;
        }
        let value = self.value.clone() + o.value.clone();
        if value.is_zero() {
            return Tracked::constant(value);
        }
        let same_shape = self.den == o.den
            && matches!((&self.num_factors, &o.num_factors), (Some(a), Some(b)) if a == b);
        if same_shape {
            return Tracked { value, ..self };
        }
        let l = lcm(&self.den, &o.den);
        let num_deg = (self.num_deg + quotient_degree(&l, &self.den)).max(o.num_deg + quotient_degree(&l, &o.den));
        Tracked {
            value,
            num_deg,
            num_factors: None,
            den: l,
        }
    }
}

impl Neg for Tracked {
    type Output = Tracked;
    fn neg(self) -> Tracked {
        Tracked {
            value: -self.value.clone(),
            ..self
        }
    }
}

impl Sub for Tracked {
    type Output = Tracked;
    fn sub(self, o: Tracked) -> Tracked {
        self + (-o)
    }
}

impl Mul for Tracked {
    type Output = Tracked;
    fn mul(self, o: Tracked) -> Tracked {
        let value = self.value.clone() * o.value.clone();
        if value.is_zero() {
            return Tracked::constant(value);
        }
        let num_factors = match (&self.num_factors, &o.num_factors) {
            (Some(a), Some(b)) => Some(merge_sum(a, b)),
            _ => None,
        };
        Tracked {
            value,
            num_deg: self.num_deg + o.num_deg,
            num_factors,
            den: merge_sum(&self.den, &o.den),
        }
        .cancel()
    }
}

impl Scalar for Tracked {
    const BACKEND: &'static str = "degree-tracking";

    fn zero() -> Self {
        Tracked::constant(G::zero())
    }

    fn one() -> Self {
        Tracked::constant(G::one())
    }

    fn from_i64(n: i64) -> Self {
        Tracked::constant(G::from_i64(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Tracked::constant(G::from_ratio(num, den))
    }

    fn imag_unit() -> Self {
        Tracked::constant(G::imag_unit())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn inv(&self) -> Result<Self> {
        let value = self.value.inv()?;
        let den_as_num = self.den.clone();
        let (num_factors, den) = match &self.num_factors {
            Some(nf) => (Some(den_as_num), nf.clone()),
            None => {
                // Value of the opaque numerator at the tracking point.
                let mut key = self.value.clone();
                for f in &self.den {
                    key = key * f.key.powi(f.mult as i64)?;
                }
                let den = vec![Factor {
                    key,
                    deg: self.num_deg,
                    mult: 1,
                }];
                (Some(den_as_num), den)
            }
        };
        let num_deg = num_factors.as_deref().map_or(0, degree);
        Ok(Tracked {
            value,
            num_deg,
            num_factors,
            den: den.into_iter().filter(|f| f.deg > 0).collect(),
        })
    }

    fn sqrt(&self) -> Option<Self> {
        None
    }

    fn exp(&self) -> Option<Self> {
        self.value.is_zero().then(Self::one)
    }

    fn to_complex(&self) -> Complex64 {
        self.value.to_complex()
    }

    fn to_scalar_string(&self) -> String {
        self.value.to_scalar_string()
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        G::parse_scalar(s).map(Tracked::constant).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Tracked {
        Tracked::var(G::from_parts(3, 7, 1, 5))
    }

    fn y() -> Tracked {
        Tracked::var(G::from_parts(-2, 9, 4, 3))
    }

    #[test]
    fn monomials_cancel() {
        let a = x() * x() * y();
        let b = a.inv().unwrap() * x();
        assert_eq!(b.numerator_degree(), 0);
        assert_eq!(b.denominator_degree(), 2);
    }

    #[test]
    fn sums_over_common_denominators() {
        // 1/x + 1/y = (x + y)/(xy).
        let s = x().inv().unwrap() + y().inv().unwrap();
        assert_eq!(s.numerator_degree(), 1);
        assert_eq!(s.denominator_degree(), 2);
        // (x + y)² has degree two; its inverse has an opaque denominator.
        let t = (x() + y()) * (x() + y());
        assert_eq!(t.numerator_degree(), 2);
        assert_eq!(t.inv().unwrap().denominator_degree(), 2);
    }

    #[test]
    fn difference_degree_survives_cancellation() {
        let a = (x() + y()) * (x() - y());
        let b = x() * x() - y() * y();
        assert!((a.clone() - b.clone()).is_zero());
        assert_eq!(Tracked::difference_degree(&a, &b), 2);
    }
}
