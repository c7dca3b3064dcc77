use num_complex::Complex64;

use super::Scalar;
use crate::error::{Error, Result};

/// Double-precision complex numbers. Comparisons go through explicit tolerances.
pub type ComplexFloat = Complex64;

impl Scalar for Complex64 {
    const BACKEND: &'static str = "numeric";

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = 1.0 / self;
        if r.is_finite() {
            Ok(r)
        } else {
            Err(Error::DivisionByZero)
        }
    }

    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }

    fn exp(&self) -> Option<Self> {
        Some(Complex64::exp(*self))
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn to_scalar_string(&self) -> String {
        format!("{:?},{:?}", self.re, self.im)
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad complex float `{s}`"));
        let (re, im) = s.trim().split_once(',').ok_or_else(bad)?;
        let re: f64 = re.trim().parse().map_err(|_| bad())?;
        let im: f64 = im.trim().parse().map_err(|_| bad())?;
        Ok(Complex64::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_string_round_trip() {
        let z = Complex64::new(0.1, -2.5e-17);
        assert_eq!(Complex64::parse_scalar(&z.to_scalar_string()).unwrap(), z);
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(Scalar::inv(&Complex64::new(0.0, 0.0)).is_err());
    }
}
