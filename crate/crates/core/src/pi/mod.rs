//! Multilinear graded polynomials: evaluation, identity testing, graded and
//! ordinary codimensions, Young symmetrizers and the alternating witnesses
//! for algebras with A/J(A) = M_2(F).
//!
//! A variable carries a degree label; a term contributes to an evaluation
//! only when every substituted element is homogeneous of its variable's
//! label. This is the graded form of the dual action of (FT)^*.

mod codim;
pub mod oracle;
mod witness;
mod young;

pub use codim::*;
pub use witness::*;
pub use young::*;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, GradedAlgebra};
use crate::kernel::{axpy, is_zero_vec, Field, KernelError, Scalar, Vector};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PiError {
    #[error("degree mismatch: expected {expected} variables, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("substitution for x{0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("budget exceeded: {required} scalar operations needed, budget is {budget}")]
    Budget { required: u128, budget: u128 },
    #[error("degree labels must be distinct")]
    RepeatedLabels,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// x_{word[0]} x_{word[1]} ... with variable v of degree labels[v].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub word: Vec<usize>,
    pub labels: Vec<usize>,
}

impl Monomial {
    pub fn new(word: Vec<usize>, labels: Vec<usize>) -> Result<Self, PiError> {
        let n = labels.len();
        if word.len() != n {
            return Err(PiError::DegreeMismatch { expected: n, found: word.len() });
        }
        let mut seen = vec![false; n];
        for &v in &word {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(PiError::Invalid(format!("word {word:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Monomial { word, labels })
    }

    /// Variable v becomes sigma[v].
    pub fn permuted(&self, sigma: &[usize]) -> Monomial {
        let mut labels = vec![0; self.labels.len()];
        for (v, &l) in self.labels.iter().enumerate() {
            labels[sigma[v]] = l;
        }
        Monomial { word: self.word.iter().map(|&v| sigma[v]).collect(), labels }
    }
}

/// A multilinear polynomial in x_0..x_{n-1} with degree-labelled variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearGradedPolynomial {
    field: Field,
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultilinearGradedPolynomial {
    pub fn zero(field: Field, n: usize) -> Self {
        MultilinearGradedPolynomial { field, n, terms: BTreeMap::new() }
    }

    pub fn monomial(field: Field, word: Vec<usize>, labels: Vec<usize>) -> Result<Self, PiError> {
        let mut p = Self::zero(field, labels.len());
        p.add_term(Monomial::new(word, labels)?, Scalar::one(field))?;
        Ok(p)
    }

    /// Builds from words over variables 0..n, each variable with a fixed label.
    pub fn from_words(
        field: Field,
        labels: &[usize],
        words: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<Self, PiError> {
        let mut p = Self::zero(field, labels.len());
        for (w, c) in words {
            p.add_term(Monomial::new(w, labels.to_vec())?, c)?;
        }
        Ok(p)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) -> Result<(), PiError> {
        if m.labels.len() != self.n {
            return Err(PiError::DegreeMismatch { expected: self.n, found: m.labels.len() });
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, PiError> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.field, self.n);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        }
        out
    }

    /// Variable v becomes sigma[v].
    pub fn permuted(&self, sigma: &[usize]) -> Result<Self, PiError> {
        if sigma.len() != self.n {
            return Err(PiError::DegreeMismatch { expected: self.n, found: sigma.len() });
        }
        let mut out = Self::zero(self.field, self.n);
        for (m, c) in &self.terms {
            out.add_term(m.permuted(sigma), c.clone())?;
        }
        Ok(out)
    }

    /// Sum over all permutations pi of `vars` of (sign pi)^[signed] pi f.
    pub fn symmetrized(&self, vars: &[usize], signed: bool) -> Result<Self, PiError> {
        if vars.iter().any(|&v| v >= self.n) {
            return Err(PiError::Invalid(format!("variable out of range in {vars:?}")));
        }
        let mut out = Self::zero(self.field, self.n);
        let mut sigma: Vec<usize> = (0..self.n).collect();
        for (perm, odd) in permutations(vars.len()) {
            for (i, &v) in vars.iter().enumerate() {
                sigma[v] = vars[perm[i]];
            }
            for (m, c) in &self.terms {
                let c = if signed && odd { -c } else { c.clone() };
                out.add_term(m.permuted(&sigma), c)?;
            }
        }
        Ok(out)
    }

    /// Homogeneous degree of every substituted vector (None for zero).
    fn degrees_of(a: &GradedAlgebra, subs: &[Vector]) -> Result<Vec<Option<usize>>, PiError> {
        subs.iter()
            .enumerate()
            .map(|(v, x)| {
                let mut deg = None;
                for (i, c) in x.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    match deg {
                        None => deg = Some(a.degree[i]),
                        Some(d) if d != a.degree[i] => return Err(PiError::NotHomogeneous(v)),
                        _ => {}
                    }
                }
                Ok(deg)
            })
            .collect()
    }

    /// f(subs[0], ..., subs[n-1]) in A.
    pub fn evaluate(&self, a: &GradedAlgebra, subs: &[Vector]) -> Result<Vector, PiError> {
        if subs.len() != self.n {
            return Err(PiError::DegreeMismatch { expected: self.n, found: subs.len() });
        }
        if let Some(x) = subs.iter().find(|x| x.len() != a.dim()) {
            return Err(PiError::Invalid(format!("substitution of length {} in dimension {}", x.len(), a.dim())));
        }
        let degs = Self::degrees_of(a, subs)?;
        let mut out = a.alg.zero_vec();
        'terms: for (m, c) in &self.terms {
            for (v, &l) in m.labels.iter().enumerate() {
                if degs[v] != Some(l) {
                    continue 'terms;
                }
            }
            let mut acc = subs[m.word[0]].clone();
            for &v in &m.word[1..] {
                acc = a.alg.mul(&acc, &subs[v]);
                if is_zero_vec(&acc) {
                    continue 'terms;
                }
            }
            axpy(&mut out, c, &acc);
        }
        Ok(out)
    }

    /// True iff f vanishes on every tuple of basis elements whose degrees
    /// match some term's labels.
    pub fn is_graded_identity(&self, a: &GradedAlgebra) -> Result<bool, PiError> {
        if self.terms.is_empty() || a.dim() == 0 {
            return Ok(true);
        }
        let candidates: Vec<Vec<usize>> = (0..self.n)
            .map(|v| {
                (0..a.dim()).filter(|&b| self.terms.keys().any(|m| m.labels[v] == a.degree[b])).collect::<Vec<_>>()
            })
            .collect();
        if candidates.iter().any(Vec::is_empty) {
            return Ok(true);
        }
        let mut idx = vec![0usize; self.n];
        loop {
            let subs: Vec<Vector> = idx.iter().enumerate().map(|(v, &i)| a.alg.unit(candidates[v][i])).collect();
            if !is_zero_vec(&self.evaluate(a, &subs)?) {
                return Ok(false);
            }
            let mut v = 0;
            loop {
                if v == self.n {
                    return Ok(true);
                }
                idx[v] += 1;
                if idx[v] < candidates[v].len() {
                    break;
                }
                idx[v] = 0;
                v += 1;
            }
        }
    }
}

/// All permutations of 0..k in lexicographic order, with their parity.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
        out.push((cur.clone(), inversions % 2 == 1));
        // next permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}
