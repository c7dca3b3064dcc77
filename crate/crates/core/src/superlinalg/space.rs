use std::collections::HashSet;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: i64) -> Self {
        if b.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{|a|}`.
    pub fn sign(self) -> i64 {
        1 - 2 * self.bit()
    }

    /// `(-1)^{|a||b|}` as `±1`.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

/// The `±` attached to modules and basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `self · (-1)^k`.
    pub fn times_power(self, k: i64) -> Sign {
        if k.rem_euclid(2) == 0 {
            self
        } else {
            self.flip()
        }
    }

    /// Even exactly for `+`.
    pub fn parity(self) -> Parity {
        match self {
            Sign::Plus => Parity::Even,
            Sign::Minus => Parity::Odd,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }

    pub fn symbol(self) -> char {
        if self.is_plus() {
            '+'
        } else {
            '-'
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "1" | "+1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("sign {other:?}"))),
        }
    }
}

/// Structured basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// `e^l_{m,ε}` stored as `(2l, 2m, ε = +)`.
    Spin { twice_l: i64, twice_m: i64, plus: bool },
    /// Ladder level `|k⟩` of a Fock or Verma module.
    Level(i64),
    /// The single vector of a one-dimensional module.
    Point,
    /// Product basis vector; nested products are flattened.
    Tuple(Vec<Label>),
}

fn half(twice: i64) -> String {
    if twice % 2 == 0 {
        format!("{}", twice / 2)
    } else {
        format!("{twice}/2")
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Spin { twice_l, twice_m, plus } => {
                write!(f, "e[{};{},{}]", half(*twice_l), half(*twice_m), if *plus { '+' } else { '-' })
            }
            Label::Level(k) => write!(f, "|{k}>"),
            Label::Point => write!(f, "1"),
            Label::Tuple(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join("x"))
            }
        }
    }
}

impl Label {
    fn factors(&self) -> Vec<Label> {
        match self {
            Label::Tuple(parts) => parts.clone(),
            other => vec![other.clone()],
        }
    }

    pub fn tensor(&self, other: &Label) -> Label {
        let mut parts = self.factors();
        parts.extend(other.factors());
        Label::Tuple(parts)
    }
}

/// A ℤ₂-graded basis with an integer weight `J` per vector (the exponent
/// through which Cartan factors and twists act).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    labels: Vec<Label>,
    parity: Vec<Parity>,
    weight: Vec<i64>,
}

impl GradedSpace {
    pub fn new(basis: Vec<(Label, Parity, i64)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (l, _, _) in &basis {
            if !seen.insert(l.clone()) {
                return Err(Error::InvalidArgument(format!("duplicate basis label {l}")));
            }
        }
        let mut labels = Vec::with_capacity(basis.len());
        let mut parity = Vec::with_capacity(basis.len());
        let mut weight = Vec::with_capacity(basis.len());
        for (l, p, w) in basis {
            labels.push(l);
            parity.push(p);
            weight.push(w);
        }
        Ok(Self { labels, parity, weight })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weight[i]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Lexicographic product basis; parities and weights add.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let n = self.dim() * other.dim();
        let mut labels = Vec::with_capacity(n);
        let mut parity = Vec::with_capacity(n);
        let mut weight = Vec::with_capacity(n);
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                labels.push(self.labels[i].tensor(&other.labels[j]));
                parity.push(self.parity[i] + other.parity[j]);
                weight.push(self.weight[i] + other.weight[j]);
            }
        }
        GradedSpace { labels, parity, weight }
    }

    /// `(dim_even, dim_odd)`.
    pub fn superdimension(&self) -> (usize, usize) {
        let odd = self.parity.iter().filter(|p| p.is_odd()).count();
        (self.dim() - odd, odd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spin(m: i64, plus: bool) -> (Label, Parity, i64) {
        let p = if plus { Parity::Even } else { Parity::Odd };
        (Label::Spin { twice_l: 1, twice_m: m, plus }, p, m)
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(GradedSpace::new(vec![spin(1, true), spin(1, true)]).is_err());
    }

    #[test]
    fn tensor_is_associative_on_labels() {
        let v = GradedSpace::new(vec![spin(1, true), spin(-1, false)]).unwrap();
        let a = v.tensor(&v).tensor(&v);
        let b = v.tensor(&v.tensor(&v));
        assert_eq!(a, b);
        assert_eq!(a.superdimension(), (4, 4));
    }

    #[test]
    fn label_display() {
        assert_eq!(spin(-1, false).0.to_string(), "e[1/2;-1/2,-]");
    }
}
