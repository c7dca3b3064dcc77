use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{CheckedSqrt, Sign};
use malachite_base::num::basic::traits::{One, Two, Zero};
use malachite_base::num::conversion::traits::RoundingFrom;
use malachite_base::rounding_modes::RoundingMode;
use malachite_q::Rational;
use num_complex::Complex64;

use super::Scalar;
use crate::error::{Error, Result};

/// An element `re + i·im` of ℚ(i) with arbitrary-precision parts.
///
/// Both parts are kept in lowest terms, so derived equality is exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self {
            re: Rational::from_signeds(re_num, re_den),
            im: Rational::from_signeds(im_num, im_den),
        }
    }

    pub fn real(num: i64, den: i64) -> Self {
        Self::from_parts(num, den, 0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `(re_num, re_den, im_num, im_den)` when every part fits in an `i64`.
    pub fn to_i64_parts(&self) -> Option<(i64, i64, i64, i64)> {
        let part = |r: &Rational| -> Option<(i64, i64)> {
            let n = i64::try_from(r.numerator_ref()).ok()?;
            let d = i64::try_from(r.denominator_ref()).ok()?;
            Some((if is_negative(r) { -n } else { n }, d))
        };
        let (a, b) = part(&self.re)?;
        let (c, d) = part(&self.im)?;
        Some((a, b, c, d))
    }
}

fn is_negative(r: &Rational) -> bool {
    r.sign() == Ordering::Less
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    Rational::from_str(s).map_err(|_| bad())
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_scalar_string())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_scalar_string())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.im == Rational::ZERO && o.im == Rational::ZERO {
            return Self::new(self.re * o.re, Rational::ZERO);
        }
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Self::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Scalar for GaussianRational {
    const BACKEND: &'static str = "exact";

    fn zero() -> Self {
        Self::new(Rational::ZERO, Rational::ZERO)
    }

    fn one() -> Self {
        Self::new(Rational::ONE, Rational::ZERO)
    }

    fn from_i64(n: i64) -> Self {
        Self::real(n, 1)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(num, den)
    }

    fn imag_unit() -> Self {
        Self::new(Rational::ZERO, Rational::ONE)
    }

    fn is_zero(&self) -> bool {
        self.re == Rational::ZERO && self.im == Rational::ZERO
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == Rational::ZERO {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }

    /// Exact square roots are only returned for perfect squares of rationals.
    /// Principal square root when it lies in ℚ(i).
    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let m = (&self.norm_sqr()).checked_sqrt()?;
        let x = ((&self.re + m) / Rational::TWO).checked_sqrt()?;
        if x == Rational::ZERO {
            return Some(Self::new(Rational::ZERO, (-&self.re).checked_sqrt()?));
        }
        let y = &self.im / (Rational::TWO * &x);
        Some(Self::new(x, y))
    }

    fn exp(&self) -> Option<Self> {
        self.is_zero().then(Self::one)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(
            f64::rounding_from(&self.re, RoundingMode::Nearest).0,
            f64::rounding_from(&self.im, RoundingMode::Nearest).0,
        )
    }

    fn to_scalar_string(&self) -> String {
        if is_negative(&self.im) {
            format!("{}-{}*i", self.re, -&self.im)
        } else {
            format!("{}+{}*i", self.re, self.im)
        }
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(body) = s.strip_suffix("*i") else {
            return Ok(Self::new(parse_rational(s)?, Rational::ZERO));
        };
        // split at the sign that separates the real and imaginary parts
        let cut = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last()
            .ok_or_else(|| Error::Parse(format!("bad gaussian rational `{s}`")))?;
        let (re, im) = body.split_at(cut);
        let im = im.strip_prefix('+').unwrap_or(im);
        Ok(Self::new(parse_rational(re)?, parse_rational(im)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussianRational {
        GaussianRational::from_parts(a, b, c, d)
    }

    #[test]
    fn square_roots_in_gaussian_rationals() {
        for z in [g(3, 2, -1, 5), g(0, 1, 2, 7), g(-4, 9, 0, 1), g(5, 3, 0, 1)] {
            let r = (z.clone() * z.clone()).sqrt().unwrap();
            assert!(r == z || r == -z.clone());
        }
        assert!(g(2, 1, 0, 1).sqrt().is_none());
        assert!(g(0, 1, 1, 1).sqrt().is_none());
    }

    #[test]
    fn norm_of_one_plus_i() {
        assert_eq!(g(1, 1, 1, 1) * g(1, 1, -1, 1), GaussianRational::from_i64(2));
    }

    #[test]
    fn i_to_the_fourth() {
        let i = GaussianRational::imag_unit();
        assert_eq!(i.powi(4).unwrap(), GaussianRational::one());
        assert_eq!(GaussianRational::i_pow(-3), i);
    }

    #[test]
    fn additive_inverse() {
        assert!((g(3, 2, 1, 2) + g(-3, 2, -1, 2)).is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            g(1, 1, 0, 1).div(&GaussianRational::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn string_round_trip() {
        for x in [g(3, 2, -1, 7), g(0, 1, 0, 1), g(-5, 1, 2, 3), g(1, 9, 0, 1)] {
            let s = x.to_scalar_string();
            assert_eq!(GaussianRational::parse_scalar(&s).unwrap(), x, "{s}");
        }
        assert_eq!(g(-3, 2, -1, 2).to_scalar_string(), "-3/2-1/2*i");
        assert_eq!(GaussianRational::parse_scalar("7").unwrap(), g(7, 1, 0, 1));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(g(9, 4, 0, 1).sqrt(), Some(g(3, 2, 0, 1)));
        assert_eq!(g(2, 1, 0, 1).sqrt(), None);
    }
}
