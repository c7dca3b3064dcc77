//! Root vectors of the upper and lower Borel subalgebras in a module, from the
//! q-commutator recursion, the generating-function logarithm, and the closed
//! forms on evaluation modules.

use serde::{Deserialize, Serialize};

use super::AffineModule;
use crate::error::{Error, Result};
use crate::repr_osp::spin_space;
use crate::scalar::qnum::qint;
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{GradedMatrix, Parity, Sign};

/// Root vectors `X_{nδ+α}`, `X_{(n+1)δ-α}`, `X'_{nδ}`, `X_{nδ}` for `X ∈ {ℰ, ℱ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootKind {
    EDelta,
    FDelta,
    EPlus(usize),
    EMinus(usize),
    FPlus(usize),
    FMinus(usize),
    EPrime(usize),
    FPrime(usize),
    EImag(usize),
    FImag(usize),
}

/// Index `n` of every vector is its position; `e_prime[0]` and `e_imag[0]`
/// are unused zeros.
#[derive(Clone, Debug)]
pub struct RootVectorSet<S: Scalar> {
    pub nmax: usize,
    pub e_delta: GradedMatrix<S>,
    pub e_plus: Vec<GradedMatrix<S>>,
    pub e_minus: Vec<GradedMatrix<S>>,
    pub e_prime: Vec<GradedMatrix<S>>,
    pub e_imag: Vec<GradedMatrix<S>>,
    pub f_delta: Option<GradedMatrix<S>>,
    pub f_plus: Vec<GradedMatrix<S>>,
    pub f_minus: Vec<GradedMatrix<S>>,
    pub f_prime: Vec<GradedMatrix<S>>,
    pub f_imag: Vec<GradedMatrix<S>>,
}

fn pick<S: Scalar>(v: &[GradedMatrix<S>], n: usize) -> Result<&GradedMatrix<S>> {
    v.get(n)
        .ok_or_else(|| Error::InvalidArgument(format!("root vector index {n} not computed")))
}

impl<S: Scalar> RootVectorSet<S> {
    pub fn get(&self, kind: RootKind) -> Result<&GradedMatrix<S>> {
        match kind {
            RootKind::EDelta => Ok(&self.e_delta),
            RootKind::FDelta => self
                .f_delta
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("no lowering operators".into())),
            RootKind::EPlus(n) => pick(&self.e_plus, n),
            RootKind::EMinus(n) => pick(&self.e_minus, n),
            RootKind::EPrime(n) => pick(&self.e_prime, n),
            RootKind::EImag(n) => pick(&self.e_imag, n),
            RootKind::FPlus(n) => pick(&self.f_plus, n),
            RootKind::FMinus(n) => pick(&self.f_minus, n),
            RootKind::FPrime(n) => pick(&self.f_prime, n),
            RootKind::FImag(n) => pick(&self.f_imag, n),
        }
    }
}

/// Coefficients `L_n` of `log(1 + Σ_{n≥1} X_n u^{-n})` up to `u^{-N}`, with
/// `xs[0]` ignored. The `X_n` are assumed to commute.
pub fn matrix_log_series<S: Scalar>(xs: &[GradedMatrix<S>]) -> Result<Vec<GradedMatrix<S>>> {
    let n = xs.len().saturating_sub(1);
    let Some(first) = xs.first() else {
        return Ok(Vec::new());
    };
    let zero = GradedMatrix::zero(first.domain().clone(), first.codomain().clone(), Parity::Even);
    let mut result: Vec<GradedMatrix<S>> = xs.to_vec();
    result[0] = zero.clone();
    let mut power: Vec<GradedMatrix<S>> = result.clone();
    for k in 2..=n {
        let mut next = vec![zero.clone(); n + 1];
        for (a, pa) in power.iter().enumerate().skip(k - 1) {
            if pa.is_zero() {
                continue;
            }
            for (b, xb) in xs.iter().enumerate().skip(1) {
                if a + b > n {
                    break;
                }
                next[a + b] = next[a + b].add(&pa.compose(xb)?)?;
            }
        }
        let c = S::from_ratio(if k % 2 == 0 { -1 } else { 1 }, k as i64);
        for (r, t) in result.iter_mut().zip(&next) {
            *r = r.add(&t.scale(&c))?;
        }
        power = next;
    }
    Ok(result)
}

fn imaginary_from_primed<S: Scalar>(primed: &[GradedMatrix<S>], pref: &S) -> Result<Vec<GradedMatrix<S>>> {
    let xs: Vec<_> = primed.iter().map(|m| m.scale(pref)).collect();
    let inv = pref.inv()?;
    Ok(matrix_log_series(&xs)?.iter().map(|m| m.scale(&inv)).collect())
}

/// Root vectors up to `nmax`. The lowering family is filled only when the
/// module has `ℱ₀, ℱ₁`.
pub fn build_root_vectors<S: Scalar>(m: &AffineModule<S>, nmax: usize) -> Result<RootVectorSet<S>> {
    let p = &m.params;
    let c = p.q_minus_qinv().inv()?;
    let qm2 = p.q_pow(-2);
    let q2 = p.q_pow(2);
    let e_delta = m.e1.twisted_product(&m.e0, &qm2)?;
    let mut e_plus = vec![m.e1.clone()];
    let mut e_minus = vec![m.e0.clone()];
    for n in 1..=nmax {
        e_plus.push(e_plus[n - 1].commutator(&e_delta)?.scale(&c));
        e_minus.push(e_delta.commutator(&e_minus[n - 1])?.scale(&c));
    }
    let zero = GradedMatrix::zero(m.space.clone(), m.space.clone(), Parity::Even);
    let mut e_prime = vec![zero.clone()];
    for n in 1..=nmax {
        e_prime.push(m.e1.twisted_product(&e_minus[n - 1], &qm2)?);
    }
    let e_imag = imaginary_from_primed(&e_prime, &-p.q_plus_qinv())?;
    let mut set = RootVectorSet {
        nmax,
        e_delta,
        e_plus,
        e_minus,
        e_prime,
        e_imag,
        f_delta: None,
        f_plus: Vec::new(),
        f_minus: Vec::new(),
        f_prime: Vec::new(),
        f_imag: Vec::new(),
    };
    if let (Some(f0), Some(f1)) = (&m.f0, &m.f1) {
        let f_delta = f0.twisted_product(f1, &q2)?;
        let mut f_plus = vec![f1.clone()];
        let mut f_minus = vec![f0.clone()];
        for n in 1..=nmax {
            f_plus.push(f_delta.commutator(&f_plus[n - 1])?.scale(&c));
            f_minus.push(f_minus[n - 1].commutator(&f_delta)?.scale(&c));
        }
        let mut f_prime = vec![zero];
        for n in 1..=nmax {
            f_prime.push(f_minus[n - 1].twisted_product(f1, &q2)?);
        }
        set.f_imag = imaginary_from_primed(&f_prime, &p.q_plus_qinv())?;
        set.f_delta = Some(f_delta);
        set.f_plus = f_plus;
        set.f_minus = f_minus;
        set.f_prime = f_prime;
    }
    Ok(set)
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, rem: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if rem == 0 {
                let mut p = acc.clone();
                p.reverse();
                out.push(p);
            }
            return;
        }
        for pk in 0..=rem / k {
            acc.push(pk);
            rec(k - 1, rem - pk * k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `Σ_p c^{k-1}(k-1)!/Πpᵢ! · X'_1^{p_1}⋯X'_n^{p_n}` over partitions
/// `Σ i pᵢ = n` with `k = Σ pᵢ`; `reversed` multiplies from `X'_n` down.
pub fn partition_formula<S: Scalar>(
    primed: &[GradedMatrix<S>],
    n: usize,
    c: &S,
    reversed: bool,
) -> Result<GradedMatrix<S>> {
    if n == 0 || primed.len() <= n {
        return Err(Error::InvalidArgument(format!("partition formula needs primed vectors 1..={n}")));
    }
    let space = primed[1].domain().clone();
    let mut acc = GradedMatrix::zero(space.clone(), space.clone(), Parity::Even);
    for p in partitions(n) {
        let k: usize = p.iter().sum();
        let den: i64 = p.iter().map(|&x| factorial(x)).product();
        let coef = c.powi(k as i64 - 1)? * S::from_ratio(factorial(k - 1), den);
        let mut term = GradedMatrix::identity(space.clone());
        let order: Vec<usize> = if reversed { (1..=n).rev().collect() } else { (1..=n).collect() };
        for i in order {
            term = term.compose(&primed[i].pow(p[i - 1] as u32)?)?;
        }
        acc = acc.add(&term.scale(&coef))?;
    }
    Ok(acc)
}

/// `N(l,m,n,x) = x^{-n(m+1)}(x^{n(l+1)}[n(l+m)]_x - x^{-n(l+1)}[n(l-m)]_x)`,
/// with `l, m` given doubled.
pub fn n_bracket_form<S: Scalar>(twice_l: i64, twice_m: i64, n: i64, x: &S) -> Result<S> {
    // x^{-n(m+1)} x^{±n(l+1)} combine to integer powers
    let a = x.powi(n * (twice_l - twice_m) / 2)? * qint(n * (twice_l + twice_m) / 2, x)?;
    let b = x.powi(-n * (twice_l + twice_m + 4) / 2)? * qint(n * (twice_l - twice_m) / 2, x)?;
    Ok(a - b)
}

/// `(x^{2nl} + x^{-2n(l+1)} - x^{-2nm} - x^{-2n(m+1)}) / (x - x^{-1})`.
pub fn n_power_form<S: Scalar>(twice_l: i64, twice_m: i64, n: i64, x: &S) -> Result<S> {
    let num = x.powi(n * twice_l)? + x.powi(-n * (twice_l + 2))? - x.powi(-n * twice_m)? - x.powi(-n * (twice_m + 2))?;
    num.div(&(x.clone() - x.inv()?))
}

/// Closed-form matrix element of a root vector on `W_s^±(λ)`: the
/// coefficient of the image of `e_{m}` (label `label`). Returns the target
/// shift in `m` alongside the coefficient.
pub fn root_vector_coefficient<S: Scalar>(
    kind: RootKind,
    twice_l: i64,
    twice_m: i64,
    label: Sign,
    lambda: &S,
    p: &QParams<S>,
) -> Result<(i64, S)> {
    let qs = p.qs();
    let j = (twice_l - twice_m) / 2; // l - m
    let s = twice_l;
    let br = |k: i64| qint(k, qs);
    let i_pow = |k: i64| S::i_pow(k);
    let lam = |k: i64| lambda.powi(k);
    let pm = S::from_i64(label.value());
    Ok(match kind {
        RootKind::EDelta => (
            0,
            lam(2)? * (p.qs_pow(j - 1) * br(s - j + 1)? - p.qs_pow(j - s - 1) * br(j + 1)?),
        ),
        // overall sign chosen so that ℱ_δ = ℱ'_δ
        RootKind::FDelta => (
            0,
            lam(-2)? * (p.qs_pow(1 - j) * br(s - j + 1)? - p.qs_pow(s - j + 1) * br(j + 1)?),
        ),
        RootKind::EPlus(n) => {
            let n = n as i64;
            (1, i_pow(n) * lam(2 * n + 1)? * p.qs_pow(-n * (twice_m + 2)) * br(j)?)
        }
        RootKind::EMinus(n) => {
            let n = n as i64;
            (-1, i_pow(n) * lam(2 * n + 1)? * p.qs_pow(-n * twice_m) * br(s - j)?)
        }
        RootKind::FPlus(n) => {
            let n = n as i64;
            (-1, pm * i_pow(n - 1) * lam(-2 * n - 1)? * p.qs_pow(n * twice_m) * br(s - j)?)
        }
        RootKind::FMinus(n) => {
            let n = n as i64;
            (1, pm * i_pow(n - 1) * lam(-2 * n - 1)? * p.qs_pow(n * (twice_m + 2)) * br(j)?)
        }
        RootKind::EPrime(n) => {
            let n = n as i64;
            let inner = br(s - j)? * br(j + 1)? - p.qs_pow(-2 * n) * br(j)? * br(s - j + 1)?;
            (0, i_pow(n - 1) * lam(2 * n)? * p.qs_pow(-(n - 1) * twice_m) * inner)
        }
        RootKind::FPrime(n) => {
            let n = n as i64;
            let inner = br(s - j)? * br(j + 1)? - p.qs_pow(2 * n) * br(j)? * br(s - j + 1)?;
            (0, i_pow(n - 1) * lam(-2 * n)? * p.qs_pow((n - 1) * twice_m) * inner)
        }
        RootKind::EImag(n) => {
            let n = n as i64;
            let nn = n_power_form(twice_l, twice_m, n, qs)?;
            (0, i_pow(n - 1) * lam(2 * n)? * nn * S::from_ratio(1, n))
        }
        RootKind::FImag(n) => {
            let n = n as i64;
            let nn = n_power_form(twice_l, twice_m, n, p.qs_inv())?;
            (0, i_pow(n - 1) * lam(-2 * n)? * nn * S::from_ratio(1, n))
        }
    })
}

/// The closed-form root vector on `W_s^±(λ)` assembled as a matrix.
pub fn root_vector_closed_matrix<S: Scalar>(
    s: i64,
    sign: Sign,
    kind: RootKind,
    lambda: &S,
    p: &QParams<S>,
) -> Result<GradedMatrix<S>> {
    let space = spin_space(s, sign)?;
    let mut entries = Vec::new();
    let mut parity = Parity::Even;
    for j in 0..=s {
        let label = sign.times_power(j);
        let (shift, c) = root_vector_coefficient(kind, s, s - 2 * j, label, lambda, p)?;
        if shift != 0 {
            parity = Parity::Odd;
        }
        // m increases by `shift`, so the index j decreases by it
        let target = j - shift;
        if (0..=s).contains(&target) && !c.is_zero() {
            entries.push((target as usize, j as usize, c));
        }
    }
    if matches!(kind, RootKind::EPlus(_) | RootKind::EMinus(_) | RootKind::FPlus(_) | RootKind::FMinus(_)) {
        parity = Parity::Odd;
    }
    GradedMatrix::from_entries(space.clone(), space, parity, entries)
}
