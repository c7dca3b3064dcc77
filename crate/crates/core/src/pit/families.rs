//! Identity families of the exact suite.

use serde::{Deserialize, Serialize};

use super::{Comparison, Identity, Point};
use crate::error::{Error, Result};
use crate::gold::GoldMatrix;
use crate::repr_affine::{
    build_eval, build_r_closed_form, build_root_vectors, intertwining_residuals, n_bracket_form, n_power_form,
    partition_formula, root_vector_closed_matrix, serre_check, AffGen, FqMode, RootKind,
};
use crate::repr_osp::{build_r_osp, build_w, casimir, coproduct, coproduct_op, spin_space, Generator};
use crate::scalar::{Constraint, SamplePoint, Sampler, Scalar};
use crate::superlinalg::{embed_12, embed_13, embed_23, GradedMatrix, Sign};

/// Spectral parameters avoid `λⱼ² = λᵢ² q_*^e` for `|e| ≤ 16`.
fn spectral_sampler(n: usize) -> Sampler {
    let mut s = Sampler::with_lambdas(n);
    for i in 0..n {
        for j in i + 1..n {
            for e in -16..=16 {
                s = s.constraint(Constraint::new(format!("λ{j}² ≠ λ{i}² q_*^{e}"), move |pt: &SamplePoint| {
                    let l = &pt.lambdas;
                    // `pt.qs` is the root, so q_*^e = r^{2e}
                    l[j].clone() * l[j].clone() - l[i].clone() * l[i].clone() * pt.qs.powi(2 * e).unwrap()
                }));
            }
        }
    }
    s
}

fn lambda<S: Scalar>(pt: &Point<S>, i: usize) -> Result<&S> {
    pt.lambdas
        .get(i)
        .ok_or_else(|| Error::InvalidArgument(format!("point has no λ{}", i + 1)))
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OspRelations {
    pub s: i64,
    pub sign: Sign,
}

impl Identity for OspRelations {
    fn sampler(&self) -> Sampler {
        Sampler::with_lambdas(0)
    }

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>> {
        Comparison::from_residuals(build_w(self.s, self.sign, &pt.params)?.relation_residuals()?)
    }
}

/// `√C` anticommutes with `E, F`, acts as `±c·diag((-1)^j)` on `W_s^±`, and
/// `C = -√C²` is the same scalar on both.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OspCasimir {
    pub s: i64,
}

impl Identity for OspCasimir {
    fn sampler(&self) -> Sampler {
        Sampler::with_lambdas(0)
    }

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>> {
        let plus = build_w(self.s, Sign::Plus, &pt.params)?;
        let minus = build_w(self.s, Sign::Minus, &pt.params)?;
        let (sq_p, c_p) = casimir(&plus)?;
        let (sq_m, c_m) = casimir(&minus)?;
        let mut out = Vec::new();
        for (rep, sq, tag) in [(&plus, &sq_p, "+"), (&minus, &sq_m, "-")] {
            out.push(Comparison::matrices(format!("√C E = -E √C on W{tag}"), sq.compose(&rep.e)?, rep.e.compose(sq)?.neg()));
            out.push(Comparison::matrices(format!("√C F = -F √C on W{tag}"), sq.compose(&rep.f)?, rep.f.compose(sq)?.neg()));
        }
        let v = sq_p.get(0, 0);
        let n = plus.space.dim();
        let graded = |m: &GradedMatrix<S>, c: S| {
            GradedMatrix::diagonal(m.domain().clone(), (0..n).map(|j| c.clone() * S::sign_pow(j as i64)).collect())
        };
        out.push(Comparison::matrices("√C = c Γ on W+", sq_p.clone(), graded(&sq_p, v.clone())?));
        out.push(Comparison::matrices("√C = -c Γ on W-", sq_m.clone(), graded(&sq_m, -v.clone())?));
        let c = -(v.clone() * v);
        out.push(Comparison::matrices("C = -c² on W+", c_p, plus.identity().scale(&c)));
        out.push(Comparison::matrices("C = -c² on W-", c_m, minus.identity().scale(&c)));
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OspIntertwining {
    pub s1: i64,
    pub e1: Sign,
    pub s2: i64,
    pub e2: Sign,
}

impl Identity for OspIntertwining {
    fn sampler(&self) -> Sampler {
        Sampler::with_lambdas(0)
    }

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>> {
        let a = build_w(self.s1, self.e1, &pt.params)?;
        let b = build_w(self.s2, self.e2, &pt.params)?;
        let r = build_r_osp(&a, &b)?.matrix;
        [Generator::E, Generator::F, Generator::K]
            .iter()
            .map(|&g| {
                Ok(Comparison::matrices(
                    format!("Δ^op({g:?}) R = R Δ({g:?})"),
                    coproduct_op(&a, &b, g)?.compose(&r)?,
                    r.compose(&coproduct(&a, &b, g))?,
                ))
            })
            .collect()
    }
}

fn ybe<S: Scalar>(
    r12: &GradedMatrix<S>,
    r13: &GradedMatrix<S>,
    r23: &GradedMatrix<S>,
    spaces: [&std::sync::Arc<crate::superlinalg::GradedSpace>; 3],
) -> Result<Comparison<S>> {
    let [v1, v2, v3] = spaces;
    let r12 = embed_12(r12, v3);
    let r13 = embed_13(r13, v1, v2, v3)?;
    let r23 = embed_23(v1, r23);
    Ok(Comparison::matrices(
        "R12 R13 R23 = R23 R13 R12",
        r12.compose(&r13)?.compose(&r23)?,
        r23.compose(&r13)?.compose(&r12)?,
    ))
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct OspYbe {
    pub s: [i64; 3],
    pub signs: [Sign; 3],
}

impl Identity for OspYbe {
    fn sampler(&self) -> Sampler {
        Sampler::with_lambdas(0)
    }

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>> {
        let v: Vec<_> = (0..3)
            .map(|i| build_w(self.s[i], self.signs[i], &pt.params))
            .collect::<Result<_>>()?;
        let r = |i: usize, j: usize| build_r_osp(&v[i], &v[j]).map(|r| r.matrix);
        Ok(vec![ybe(&r(0, 1)?, &r(0, 2)?, &r(1, 2)?, [&v[0].space, &v[1].space, &v[2].space])?])
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AffineRelations {
    pub s: i64,
    pub sign: Sign,
}

impl Identity for AffineRelations {
    fn sampler(&self) -> Sampler {
        spectral_sampler(1)
    }

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>> {
        Comparison::from_residuals(build_eval(self.s, self.sign, lambda(pt, 0)?, &pt.params)?.relation_residuals()?)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AffineSerre {
    pub s: i64,
    pub sign: Sign,
}

impl Identity for AffineSerre {
    fn sampler(&self) -> Sampler {
        spectral_sampler(1)
    }

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>> {
        Comparison::from_residuals(serre_check(&build_eval(self.s, self.sign, lambda(pt, 0)?, &pt.params)?)?)
    }
}

/// The closed-form R-matrix (without `f_q`) intertwines all six generators.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AffineIntertwining {
    pub s1: i64,
    pub e1: Sign,
    pub s2: i64,
    pub e2: Sign,
}

impl Identity for AffineIntertwining {
    fn sampler(&self) -> Sampler {
        spectral_sampler(2)
    }

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>> {
        let (l1, l2) = (lambda(pt, 0)?, lambda(pt, 1)?);
        let a = build_eval(self.s1, self.e1, l1, &pt.params)?;
        let b = build_eval(self.s2, self.e2, l2, &pt.params)?;
        let r = build_r_closed_form(self.s1, self.e1, l1, self.s2, self.e2, l2, FqMode::Omitted, &pt.params)?.product()?;
        Comparison::from_residuals(intertwining_residuals(&a, &b, &r, &AffGen::ALL)?)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AffineYbe {
    pub s: [i64; 3],
    pub signs: [Sign; 3],
}

impl Identity for AffineYbe {
    fn sampler(&self) -> Sampler {
        spectral_sampler(3)
    }

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>> {
        let r = |i: usize, j: usize| -> Result<GradedMatrix<S>> {
            build_r_closed_form(
                self.s[i],
                self.signs[i],
                lambda(pt, i)?,
                self.s[j],
                self.signs[j],
                lambda(pt, j)?,
                FqMode::Omitted,
                &pt.params,
            )?
            .product()
        };
        let v: Vec<_> = (0..3).map(|i| spin_space(self.s[i], self.signs[i])).collect::<Result<_>>()?;
        Ok(vec![ybe(&r(0, 1)?, &r(0, 2)?, &r(1, 2)?, [&v[0], &v[1], &v[2]])?])
    }
}

/// Bracket recursion (with the logarithm for imaginary vectors), the
/// partition formula and the closed forms agree on `W_s^±(λ)` up to `nmax`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RootVectorAgreement {
    pub s: i64,
    pub sign: Sign,
    pub nmax: usize,
}

impl Identity for RootVectorAgreement {
    fn sampler(&self) -> Sampler {
        spectral_sampler(1)
    }

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>> {
        let (p, l) = (&pt.params, lambda(pt, 0)?);
        let m = build_eval(self.s, self.sign, l, p)?;
        let rv = build_root_vectors(&m, self.nmax)?;
        let mut kinds = vec![RootKind::EDelta, RootKind::FDelta];
        for n in 0..=self.nmax {
            kinds.extend([RootKind::EPlus(n), RootKind::EMinus(n), RootKind::FPlus(n), RootKind::FMinus(n)]);
        }
        for n in 1..=self.nmax {
            kinds.extend([RootKind::EPrime(n), RootKind::FPrime(n), RootKind::EImag(n), RootKind::FImag(n)]);
        }
        let mut out = Vec::new();
        for k in kinds {
            let closed = root_vector_closed_matrix(self.s, self.sign, k, l, p)?;
            out.push(Comparison::matrices(format!("{k:?} recursion = closed form"), rv.get(k)?.clone(), closed));
        }
        let c = p.q_plus_qinv();
        for n in 1..=self.nmax {
            out.push(Comparison::matrices(
                format!("EImag({n}) partition formula"),
                partition_formula(&rv.e_prime, n, &c, false)?,
                rv.e_imag[n].clone(),
            ));
            out.push(Comparison::matrices(
                format!("FImag({n}) partition formula"),
                partition_formula(&rv.f_prime, n, &-c.clone(), true)?,
                rv.f_imag[n].clone(),
            ));
            for j in 0..=self.s {
                let tm = self.s - 2 * j;
                out.push(Comparison::scalars(
                    format!("N({},{},{n}) bracket = power form", self.s, tm),
                    n_bracket_form(self.s, tm, n as i64, p.qs())?,
                    n_power_form(self.s, tm, n as i64, p.qs())?,
                ));
            }
        }
        Ok(out)
    }
}

/// The constructed R-matrix equals a transcribed gold matrix.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GoldAgreement {
    pub gold: GoldMatrix,
}

impl Identity for GoldAgreement {
    fn sampler(&self) -> Sampler {
        if self.gold.is_spectral() {
            spectral_sampler(2)
        } else {
            Sampler::with_lambdas(0)
        }
    }

    fn sides<S: Scalar>(&self, pt: &Point<S>) -> Result<Vec<Comparison<S>>> {
        let p = &pt.params;
        let (s1, s2) = self.gold.spins();
        let (built, gold) = if self.gold.is_spectral() {
            let (l1, l2) = (lambda(pt, 0)?, lambda(pt, 1)?);
            let r = build_r_closed_form(s1, Sign::Plus, l1, s2, Sign::Plus, l2, FqMode::Omitted, p)?.product()?;
            (r, self.gold.build(p, l1, l2)?)
        } else {
            let (a, b) = (build_w(s1, Sign::Plus, p)?, build_w(s2, Sign::Plus, p)?);
            let one = S::one();
            (build_r_osp(&a, &b)?.matrix, self.gold.build(p, &one, &one)?)
        };
        Ok(vec![Comparison::matrices(self.gold.name(), built, gold)])
    }
}
