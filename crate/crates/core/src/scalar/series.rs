use super::Scalar;
use crate::error::{Error, Result};

/// Truncated Laurent series `Σ_{k=min}^{order} c_k x^k`, closed under
/// `+`, `×`, `exp`, `log` at the fixed truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<S: Scalar> {
    var: String,
    min_degree: i64,
    order: i64,
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn zero(var: impl Into<String>, order: i64) -> Self {
        Self {
            var: var.into(),
            min_degree: 0,
            order,
            coeffs: Vec::new(),
        }
    }

    /// Coefficients of `x^0, x^1, …` truncated at `order`.
    pub fn from_coeffs(var: impl Into<String>, order: i64, coeffs: Vec<S>) -> Self {
        Self::laurent(var, 0, order, coeffs)
    }

    pub fn laurent(var: impl Into<String>, min_degree: i64, order: i64, mut coeffs: Vec<S>) -> Self {
        let keep = (order - min_degree + 1).max(0) as usize;
        coeffs.truncate(keep);
        Self {
            var: var.into(),
            min_degree,
            order,
            coeffs,
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn coeff(&self, degree: i64) -> S {
        let k = degree - self.min_degree;
        if k < 0 {
            return S::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_else(S::zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.var != other.var || self.order != other.order {
            return Err(Error::ShapeMismatch(format!(
                "series in {}^{} vs {}^{}",
                self.var, self.order, other.var, other.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let lo = self.min_degree.min(other.min_degree);
        let coeffs = (lo..=self.order)
            .map(|d| self.coeff(d) + other.coeff(d))
            .collect();
        Ok(Self::laurent(self.var.clone(), lo, self.order, coeffs))
    }

    pub fn scale(&self, c: &S) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.clone() * c.clone()).collect();
        Self::laurent(self.var.clone(), self.min_degree, self.order, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let lo = self.min_degree + other.min_degree;
        let len = (self.order - lo + 1).max(0) as usize;
        let mut out = vec![S::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                out[k] = out[k].clone() + a.clone() * b.clone();
            }
        }
        Ok(Self::laurent(self.var.clone(), lo, self.order, out))
    }

    fn dense_from_zero(&self) -> Result<Vec<S>> {
        if self.min_degree < 0 && (self.min_degree..0).any(|d| !self.coeff(d).is_zero()) {
            return Err(Error::InvalidArgument(
                "exp/log need a series without negative powers".into(),
            ));
        }
        Ok((0..=self.order).map(|d| self.coeff(d)).collect())
    }

    /// `exp(S)` for `S` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        let s = self.dense_from_zero()?;
        if !s[0].is_zero() {
            return Err(Error::InvalidArgument("exp needs a zero constant term".into()));
        }
        let m = s.len();
        let mut e = vec![S::zero(); m];
        e[0] = S::one();
        for n in 1..m {
            let mut acc = S::zero();
            for k in 1..=n {
                acc = acc + s[k].scale_i64(k as i64) * e[n - k].clone();
            }
            e[n] = acc * S::from_ratio(1, n as i64);
        }
        Ok(Self::from_coeffs(self.var.clone(), self.order, e))
    }

    /// `log(S)` for `S` with unit constant term.
    pub fn log(&self) -> Result<Self> {
        let f = self.dense_from_zero()?;
        if !f[0].is_one() {
            return Err(Error::InvalidArgument("log needs a unit constant term".into()));
        }
        let m = f.len();
        let mut l = vec![S::zero(); m];
        for n in 1..m {
            let mut acc = S::zero();
            for k in 1..n {
                acc = acc + l[k].scale_i64(k as i64) * f[n - k].clone();
            }
            l[n] = f[n].clone() - acc * S::from_ratio(1, n as i64);
        }
        Ok(Self::from_coeffs(self.var.clone(), self.order, l))
    }

    /// Horner evaluation at a point.
    pub fn evaluate(&self, x: &S) -> Result<S> {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        Ok(acc * x.powi(self.min_degree)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    #[test]
    fn exp_of_x_is_exponential_series() {
        let x = TruncatedSeries::from_coeffs("x", 6, vec![G::zero(), G::one()]);
        let e = x.exp().unwrap();
        let mut fact = 1;
        for n in 0..=6 {
            if n > 0 {
                fact *= n;
            }
            assert_eq!(e.coeff(n), G::real(1, fact));
        }
    }

    #[test]
    fn log_of_one_plus_x() {
        let f = TruncatedSeries::from_coeffs("x", 5, vec![G::one(), G::one()]);
        let l = f.log().unwrap();
        for n in 1..=5 {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(l.coeff(n), G::real(sign, n));
        }
    }

    #[test]
    fn exp_rejects_constant_term() {
        let f = TruncatedSeries::from_coeffs("x", 3, vec![G::one()]);
        assert!(f.exp().is_err());
    }

    #[test]
    fn product_truncates() {
        let a = TruncatedSeries::from_coeffs("x", 2, vec![G::one(), G::one(), G::one()]);
        let p = a.mul(&a).unwrap();
        assert_eq!(p.coeff(2), G::from_i64(3));
        assert_eq!(p.coeff(3), G::zero());
    }
}
