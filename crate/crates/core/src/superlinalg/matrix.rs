use std::collections::BTreeMap;
use std::sync::Arc;

use super::{GradedSpace, Parity};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse homogeneous operator between graded spaces. Entries are keyed by
/// `(row, col)` basis positions; labels live in the spaces. No explicit zeros
/// are stored.
#[derive(Clone, Debug)]
pub struct GradedMatrix<S: Scalar> {
    dom: Arc<GradedSpace>,
    cod: Arc<GradedSpace>,
    parity: Parity,
    entries: BTreeMap<(usize, usize), S>,
}

fn same_space(a: &Arc<GradedSpace>, b: &Arc<GradedSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<S: Scalar> GradedMatrix<S> {
    pub fn zero(dom: Arc<GradedSpace>, cod: Arc<GradedSpace>, parity: Parity) -> Self {
        Self {
            dom,
            cod,
            parity,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(space: Arc<GradedSpace>) -> Self {
        let diag = vec![S::one(); space.dim()];
        Self::diagonal(space, diag).expect("identity is even")
    }

    pub fn diagonal(space: Arc<GradedSpace>, diag: Vec<S>) -> Result<Self> {
        if diag.len() != space.dim() {
            return Err(Error::ShapeMismatch(format!(
                "diagonal of length {} on a space of dimension {}",
                diag.len(),
                space.dim()
            )));
        }
        Self::from_entries(
            space.clone(),
            space,
            Parity::Even,
            diag.into_iter().enumerate().map(|(i, v)| (i, i, v)),
        )
    }

    /// Builds a matrix, rejecting entries that break homogeneity.
    pub fn from_entries(
        dom: Arc<GradedSpace>,
        cod: Arc<GradedSpace>,
        parity: Parity,
        entries: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self> {
        let mut m = Self::zero(dom, cod, parity);
        for (r, c, v) in entries {
            m.add_entry(r, c, v)?;
        }
        Ok(m)
    }

    /// Accumulates `v` into entry `(r, c)`.
    pub fn add_entry(&mut self, r: usize, c: usize, v: S) -> Result<()> {
        if r >= self.cod.dim() || c >= self.dom.dim() {
            return Err(Error::ShapeMismatch(format!(
                "entry ({r},{c}) outside {}x{}",
                self.cod.dim(),
                self.dom.dim()
            )));
        }
        if v.is_zero() {
            return Ok(());
        }
        if self.cod.parity(r) != self.dom.parity(c) + self.parity {
            return Err(Error::InvalidArgument(format!(
                "entry {} <- {} breaks {:?} homogeneity",
                self.cod.label(r),
                self.dom.label(c),
                self.parity
            )));
        }
        let slot = self.entries.entry((r, c)).or_insert_with(S::zero);
        *slot = slot.clone() + v;
        if slot.is_zero() {
            self.entries.remove(&(r, c));
        }
        Ok(())
    }

    pub fn domain(&self) -> &Arc<GradedSpace> {
        &self.dom
    }

    pub fn codomain(&self) -> &Arc<GradedSpace> {
        &self.cod
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(S::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_square(&self) -> bool {
        same_space(&self.dom, &self.cod)
    }

    fn check_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("operator is not square".into()))
        }
    }

    /// `self · v` for a dense coordinate vector on the domain.
    pub fn apply(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.dom.dim() {
            return Err(Error::ShapeMismatch(format!("vector of length {} on {}-dim domain", v.len(), self.dom.dim())));
        }
        let mut out = vec![S::zero(); self.cod.dim()];
        for (&(r, c), x) in &self.entries {
            if !v[c].is_zero() {
                out[r] = out[r].clone() + x.clone() * v[c].clone();
            }
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if !same_space(&self.dom, &other.cod) {
            return Err(Error::ShapeMismatch(format!(
                "compose {}-dim domain with {}-dim codomain",
                self.dom.dim(),
                other.cod.dim()
            )));
        }
        let ncol = other.dom.dim();
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); other.cod.dim()];
        for (&(r, c), v) in &other.entries {
            rows[r].push((c, v.clone()));
        }
        let mut out = BTreeMap::new();
        let mut acc: Vec<Option<S>> = vec![None; ncol];
        let mut touched = Vec::new();
        let mut a_rows: BTreeMap<usize, Vec<(usize, &S)>> = BTreeMap::new();
        for (&(r, k), a) in &self.entries {
            a_rows.entry(r).or_default().push((k, a));
        }
        for (row, terms) in a_rows {
            for (k, a) in terms {
                for (c, b) in &rows[k] {
                    let term = a.clone() * b.clone();
                    match &mut acc[*c] {
                        Some(x) => *x = x.clone() + term,
                        slot @ None => {
                            *slot = Some(term);
                            touched.push(*c);
                        }
                    }
                }
            }
            touched.sort_unstable();
            for &c in &touched {
                if let Some(v) = acc[c].take() {
                    if !v.is_zero() {
                        out.insert((row, c), v);
                    }
                }
            }
            touched.clear();
        }
        Ok(Self {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            parity: self.parity + other.parity,
            entries: out,
        })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if !same_space(&self.dom, &other.dom) || !same_space(&self.cod, &other.cod) {
            return Err(Error::ShapeMismatch("operands act between different spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.parity != other.parity {
            return Err(Error::InvalidArgument("sum of even and odd operators".into()));
        }
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_entry(r, c, v.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (*k, v.clone() * c.clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Self {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            parity: self.parity,
            entries,
        }
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        self.check_square()?;
        let mut acc = Self::identity(self.cod.clone());
        for _ in 0..n {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Graded commutator `[A, B] = AB - (-1)^{|A||B|} BA`.
    pub fn supercommutator(&self, other: &Self) -> Result<Self> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        if self.parity.koszul(other.parity) < 0 {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    /// Plain commutator `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// `AB + c BA`.
    pub fn twisted_product(&self, other: &Self, c: &S) -> Result<Self> {
        self.compose(other)?.add(&other.compose(self)?.scale(c))
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(r, c)| r == c)
    }

    pub fn diagonal_entries(&self) -> Vec<S> {
        (0..self.cod.dim().min(self.dom.dim())).map(|i| self.get(i, i)).collect()
    }

    /// Inverse of a diagonal operator.
    pub fn inverse_diagonal(&self) -> Result<Self> {
        self.check_square()?;
        if !self.is_diagonal() {
            return Err(Error::InvalidArgument("inverse_diagonal of a non-diagonal operator".into()));
        }
        let d = self
            .diagonal_entries()
            .iter()
            .map(|v| v.inv())
            .collect::<Result<Vec<_>>>()?;
        Self::diagonal(self.cod.clone(), d)
    }

    /// Entrywise map into another backend.
    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GradedMatrix<T> {
        let mut entries = BTreeMap::new();
        for (&k, v) in &self.entries {
            let t = f(v);
            if !t.is_zero() {
                entries.insert(k, t);
            }
        }
        GradedMatrix {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            parity: self.parity,
            entries,
        }
    }

    /// Exact equality (parity of zero operators is ignored).
    pub fn equals(&self, other: &Self) -> bool {
        same_space(&self.dom, &other.dom)
            && same_space(&self.cod, &other.cod)
            && self.entries == other.entries
            && (self.is_zero() || self.parity == other.parity)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        let mut worst = 0.0f64;
        for (k, v) in &self.entries {
            let w = other.entries.get(k).cloned().unwrap_or_else(S::zero);
            worst = worst.max((v.clone() - w).abs());
        }
        for (k, w) in &other.entries {
            if !self.entries.contains_key(k) {
                worst = worst.max(w.abs());
            }
        }
        Ok(worst)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(self.max_abs_diff(other)? <= tol)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Largest modulus among entries whose row and column satisfy `keep`.
    pub fn max_abs_where(&self, keep: impl Fn(usize, usize) -> bool) -> f64 {
        self.entries
            .iter()
            .filter(|((r, c), _)| keep(*r, *c))
            .map(|(_, v)| v.abs())
            .fold(0.0, f64::max)
    }

    /// Drops entries with modulus below `tol` (numeric backend clean-up).
    pub fn chop(&self, tol: f64) -> Self {
        let mut out = self.clone();
        out.entries.retain(|_, v| v.abs() > tol);
        out
    }

    /// `true` when `self = c · other` for a single scalar `c`; returns `c`.
    pub fn proportional_to(&self, other: &Self) -> Result<Option<S>> {
        self.check_same_shape(other)?;
        let Some((k, v)) = other.entries.iter().next() else {
            return Ok(if self.is_zero() { Some(S::zero()) } else { None });
        };
        let c = self.entries.get(k).cloned().unwrap_or_else(S::zero).div(v)?;
        Ok(if self.equals(&other.scale(&c)) { Some(c) } else { None })
    }
}

impl<S: Scalar> PartialEq for GradedMatrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}
