use super::OspRep;
use crate::error::{Error, Result};
use crate::scalar::qnum::{curly, curly_factorial, qint_factorial, qint_falling};
use crate::scalar::{QParams, Scalar};
use crate::superlinalg::{graded_kron, GradedMatrix, Parity};

/// `a_n = (-1)^n q^{n(n-1)/2} (q+q^{-1})^n / {n}_q!` for `n = 0..=nmax`.
pub fn a_coefficients<S: Scalar>(nmax: usize, p: &QParams<S>) -> Result<Vec<S>> {
    let qq = p.q_plus_qinv();
    (0..=nmax as i64)
        .map(|n| {
            let num = S::sign_pow(n) * p.q_pow(n * (n - 1) / 2) * qq.powi(n)?;
            num.div(&curly_factorial(n, p)?)
                .map_err(|_| Error::SingularParameter(format!("{{k}}_q! for k <= {n}")))
        })
        .collect()
}

/// The same coefficients from `a_n / a_{n-1} = -q^n (1+q^{-2}) / {n}_q`.
pub fn a_coefficients_recursive<S: Scalar>(nmax: usize, p: &QParams<S>) -> Result<Vec<S>> {
    let mut out = vec![S::one()];
    let factor = S::one() + p.q_pow(-2);
    for n in 1..=nmax as i64 {
        let c = curly(n, p)?;
        let ratio = (-(p.q_pow(n) * factor.clone()))
            .div(&c)
            .map_err(|_| Error::SingularParameter(format!("{{{n}}}_q")))?;
        let prev = out.last().expect("nonempty").clone();
        out.push(prev * ratio);
    }
    Ok(out)
}

/// R-matrix on `W_{s1}^{ε1} ⊗ W_{s2}^{ε2}`: `R = Q Σ_n a_n E^n ⊗ F^n`.
///
/// When both `s_i` are odd the Cartan factor has half-integer exponents; the
/// common factor `q_*^{1/2}` is then pulled out (`qs_half_extracted`).
#[derive(Clone, Debug)]
pub struct RMatrixFinite<S: Scalar> {
    pub matrix: GradedMatrix<S>,
    pub q_part: GradedMatrix<S>,
    pub nilpotent: GradedMatrix<S>,
    pub qs_half_extracted: bool,
}

impl<S: Scalar> RMatrixFinite<S> {
    pub fn normalization(&self) -> Option<String> {
        self.qs_half_extracted.then(|| "q_*^(1/2)".to_string())
    }

    /// The matrix with the extracted factor restored (needs square roots).
    pub fn restored(&self, p: &QParams<S>) -> Result<GradedMatrix<S>> {
        if self.qs_half_extracted {
            Ok(self.matrix.scale(&p.qs_half_pow(1)?))
        } else {
            Ok(self.matrix.clone())
        }
    }
}

pub(crate) fn both_odd(s1: i64, s2: i64) -> bool {
    s1 % 2 != 0 && s2 % 2 != 0
}

/// `(-1)^{|v||w|} q_*^{J_v J_w / 2}` on the product basis, divided by
/// `q_*^{1/2}` when every exponent is a half-integer.
pub(crate) fn cartan_part<S: Scalar>(
    a: &crate::superlinalg::GradedSpace,
    b: &crate::superlinalg::GradedSpace,
    extract_half: bool,
    p: &QParams<S>,
) -> Result<GradedMatrix<S>> {
    let space = std::sync::Arc::new(a.tensor(b));
    let mut diag = Vec::with_capacity(space.dim());
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            let jj = a.weight(i) * b.weight(j) - i64::from(extract_half);
            let factor = if jj % 2 == 0 {
                p.qs_pow(jj / 2)
            } else {
                p.qs_half_pow(jj).map_err(|_| Error::Unsupported {
                    backend: S::BACKEND,
                    op: "half-integer power of q_* in the Cartan factor".into(),
                })?
            };
            let sign = a.parity(i).koszul(b.parity(j));
            diag.push(factor.scale_i64(sign));
        }
    }
    GradedMatrix::diagonal(space, diag)
}

pub fn build_r_osp<S: Scalar>(a: &OspRep<S>, b: &OspRep<S>) -> Result<RMatrixFinite<S>> {
    let p = &a.params;
    let nmax = a.s.min(b.s) as usize;
    let coeffs = a_coefficients(nmax, p)?;
    let mut en = a.identity();
    let mut fn_ = b.identity();
    let mut sum = GradedMatrix::zero(
        std::sync::Arc::new(a.space.tensor(&b.space)),
        std::sync::Arc::new(a.space.tensor(&b.space)),
        Parity::Even,
    );
    for c in coeffs.iter() {
        sum = sum.add(&graded_kron(&en, &fn_).scale(c))?;
        en = en.compose(&a.e)?;
        fn_ = fn_.compose(&b.f)?;
    }
    let extract = both_odd(a.s, b.s);
    let q_part = cartan_part(&a.space, &b.space, extract, p)?;
    Ok(RMatrixFinite {
        matrix: q_part.compose(&sum)?,
        q_part,
        nilpotent: sum,
        qs_half_extracted: extract,
    })
}

/// Indices of a matrix coefficient `⟨e_{m1'}⊗e_{m2'}| R |e_{m1}⊗e_{m2}⟩`, all
/// stored doubled; parities are those of the source vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RIndex {
    pub twice_l1: i64,
    pub twice_l2: i64,
    pub twice_m1: i64,
    pub twice_m2: i64,
    pub twice_m1p: i64,
    pub twice_m2p: i64,
    pub parity1: Parity,
    pub parity2: Parity,
}

fn in_range(twice_l: i64, twice_m: i64) -> bool {
    twice_m.abs() <= twice_l && (twice_l - twice_m) % 2 == 0
}

/// Closed form of the R-matrix coefficient in `q_*`:
/// `q_*^{n(n-1)/2 + 2m1'm2'} (-1)^{ε1ε2} (q_*-q_*^{-1})^n / [n]! ·
/// [l1-m1]!/[l1-m1-n]! · [l2+m2]!/[l2+m2-n]!` with `n = m1'-m1 = m2-m2' ≥ 0`,
/// zero otherwise. Shares the `q_*^{1/2}` extraction of [`build_r_osp`].
pub fn r_coefficient_closed_form<S: Scalar>(idx: RIndex, p: &QParams<S>) -> Result<S> {
    let RIndex {
        twice_l1,
        twice_l2,
        twice_m1,
        twice_m2,
        twice_m1p,
        twice_m2p,
        parity1,
        parity2,
    } = idx;
    for (l, m) in [(twice_l1, twice_m1), (twice_l2, twice_m2), (twice_l1, twice_m1p), (twice_l2, twice_m2p)] {
        if !in_range(l, m) {
            return Err(Error::InvalidArgument(format!("m = {m}/2 outside l = {l}/2")));
        }
    }
    let d1 = twice_m1p - twice_m1;
    let d2 = twice_m2 - twice_m2p;
    if d1 != d2 || d1 < 0 {
        return Ok(S::zero());
    }
    let n = d1 / 2;
    let l1_minus_m1 = (twice_l1 - twice_m1) / 2;
    let l2_plus_m2 = (twice_l2 + twice_m2) / 2;
    if n > l1_minus_m1 || n > l2_plus_m2 {
        return Ok(S::zero());
    }
    let extract = both_odd(twice_l1, twice_l2);
    let jj = twice_m1p * twice_m2p - i64::from(extract);
    let power = n * (n - 1) + jj;
    debug_assert!(power % 2 == 0);
    let qs = p.qs();
    let sign = parity1.koszul(parity2);
    let val = p.qs_pow(power / 2).scale_i64(sign) * p.qs_minus_qsinv().powi(n)?
        * qint_falling(l1_minus_m1, n, qs)?
        * qint_falling(l2_plus_m2, n, qs)?;
    val.div(&qint_factorial(n, qs)?)
        .map_err(|_| Error::SingularParameter(format!("[{n}]_q*!")))
}

/// Checks that the Cartan factor built from `C` and `q_*^{H⊗H/2}` equals
/// `q^{H'⊗H'/2}` up to a global constant, where `H' = H - L·πi/ln q` with
/// `L = l` on `W^+` and `L = l+1` on `W^-`. Per basis vector this reduces to
/// the sign of the diagonal entry being `(-1)^{(L1-m1)(L2-m2)}`.
pub fn cartan_clifford_check<S: Scalar>(r: &RMatrixFinite<S>, a: &OspRep<S>, b: &OspRep<S>) -> Result<bool> {
    let p = &a.params;
    let extract = i64::from(r.qs_half_extracted);
    let twice_big_l = |rep: &OspRep<S>| rep.s + if rep.sign.is_plus() { 0 } else { 2 };
    let (t1, t2) = (twice_big_l(a), twice_big_l(b));
    let nb = b.space.dim();
    for i in 0..a.space.dim() {
        for j in 0..nb {
            let (j1, j2) = (a.space.weight(i), b.space.weight(j));
            let entry = r.q_part.get(i * nb + j, i * nb + j);
            let sign = entry.div(&p.qs_pow((j1 * j2 - extract) / 2))?;
            let x4 = (t1 - j1) * (t2 - j2);
            if x4 % 4 != 0 {
                return Ok(false);
            }
            if sign != S::sign_pow(x4 / 4) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
