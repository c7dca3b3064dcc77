//! Quantum integers and factorials in the three normalisations used for the
//! superalgebra: the symmetric `[n]_x`, the super `{n}_q`, and the one-sided
//! `⌈n⌉_x` (with `⌊n⌋_{q_*} = ⌈n⌉_{q_*^{-2}}`).

use super::{QParams, Scalar};
use crate::error::{Error, Result};

/// `[n]_x = (x^n - x^{-n}) / (x - x^{-1})`, evaluated as the finite sum
/// `x^{n-1} + x^{n-3} + … + x^{1-n}` so it stays defined at `x = ±1`.
pub fn qint<S: Scalar>(n: i64, x: &S) -> Result<S> {
    if n < 0 {
        return Ok(-qint(-n, x)?);
    }
    let x_inv = x.inv()?;
    let x2 = x.clone() * x.clone();
    let mut term = if n == 0 {
        return Ok(S::zero());
    } else {
        x_inv.powi(n - 1)?
    };
    let mut acc = S::zero();
    for _ in 0..n {
        acc = acc + term.clone();
        term = term * x2.clone();
    }
    Ok(acc)
}

pub fn qint_factorial<S: Scalar>(n: i64, x: &S) -> Result<S> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("factorial of {n}")));
    }
    (1..=n).try_fold(S::one(), |acc, k| Ok(acc * qint(k, x)?))
}

/// `[n]_x! / [n-k]_x!` without dividing.
pub fn qint_falling<S: Scalar>(n: i64, k: i64, x: &S) -> Result<S> {
    if k < 0 || k > n {
        return Err(Error::InvalidArgument(format!("falling factorial {n}!/{}!", n - k)));
    }
    ((n - k + 1)..=n).try_fold(S::one(), |acc, j| Ok(acc * qint(j, x)?))
}

/// `{n}_q = (q^{-n} - (-1)^n q^n) / (q + q^{-1})`.
pub fn curly<S: Scalar>(n: i64, p: &QParams<S>) -> Result<S> {
    let num = p.q_pow(-n) - S::sign_pow(n) * p.q_pow(n);
    let den = p.q_plus_qinv();
    if den.is_zero() {
        return Err(Error::SingularParameter("q + q^-1".into()));
    }
    num.div(&den)
}

pub fn curly_factorial<S: Scalar>(n: i64, p: &QParams<S>) -> Result<S> {
    (1..=n).try_fold(S::one(), |acc, k| Ok(acc * curly(k, p)?))
}

/// `⌈n⌉_x = (1 - x^n)/(1 - x) = 1 + x + … + x^{n-1}`.
pub fn ceil_int<S: Scalar>(n: i64, x: &S) -> Result<S> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("⌈{n}⌉ with negative n")));
    }
    let mut acc = S::zero();
    let mut term = S::one();
    for _ in 0..n {
        acc = acc + term.clone();
        term = term * x.clone();
    }
    Ok(acc)
}

pub fn ceil_factorial<S: Scalar>(n: i64, x: &S) -> Result<S> {
    (1..=n).try_fold(S::one(), |acc, k| Ok(acc * ceil_int(k, x)?))
}

/// `⌊n⌋_{q_*} = (1 - q_*^{-2n}) / (1 - q_*^{-2})`.
pub fn floor_int<S: Scalar>(n: i64, p: &QParams<S>) -> Result<S> {
    ceil_int(n, &p.qs_pow(-2))
}

pub fn floor_factorial<S: Scalar>(n: i64, p: &QParams<S>) -> Result<S> {
    ceil_factorial(n, &p.qs_pow(-2))
}

/// Fails with a singular-parameter error when `value` vanishes.
pub fn nonzero<S: Scalar>(value: S, what: impl Into<String>) -> Result<S> {
    if value.is_zero() {
        Err(Error::SingularParameter(what.into()))
    } else {
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    fn params(a: i64, b: i64) -> QParams<G> {
        QParams::new(G::real(a, b)).unwrap()
    }

    #[test]
    fn bracket_one_is_one() {
        assert_eq!(qint(1, &G::real(7, 3)).unwrap(), G::one());
    }

    #[test]
    fn curly_one_is_one() {
        assert_eq!(curly(1, &params(5, 3)).unwrap(), G::one());
    }

    #[test]
    fn bracket_two_at_two() {
        assert_eq!(qint(2, &G::from_i64(2)).unwrap(), G::real(5, 2));
    }

    #[test]
    fn bracket_vs_curly() {
        let p = params(7, 5);
        for n in 0..9 {
            let lhs = qint(n, p.qs()).unwrap();
            let rhs = G::i_pow(n - 1) * curly(n, &p).unwrap();
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn ceil_at_q_star_inverse_square() {
        // ⌈n⌉_{q_*^{-2}} = (-q)^{1-n} {n}_q
        let p = params(3, 2);
        let x = p.qs_pow(-2);
        for n in 1..8 {
            let lhs = ceil_int(n, &x).unwrap();
            let rhs = (-p.q().clone()).powi(1 - n).unwrap() * curly(n, &p).unwrap();
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn curly_singular_at_q_plus_qinv_zero() {
        // q = i  <=>  q_* = 1
        let p = QParams::new(G::one()).unwrap();
        assert!(matches!(curly(2, &p), Err(Error::SingularParameter(_))));
    }

    #[test]
    fn falling_factorial_matches_ratio() {
        let x = G::real(5, 4);
        let lhs = qint_falling(6, 2, &x).unwrap();
        let rhs = qint_factorial(6, &x)
            .unwrap()
            .div(&qint_factorial(4, &x).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
