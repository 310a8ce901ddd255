//! Finite semigroups given by multiplication tables, Rees matrix semigroups
//! over the trivial group, and the Green-relation coordinates that recover a
//! Rees presentation from a completely 0-simple table.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("table entry {0} out of range")]
    OutOfRange(usize),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element {0} is not a zero")]
    BadZero(usize),
    #[error("not 0-simple presentation: sandwich has a zero row or column")]
    NotZeroSimplePresentation,
    #[error("semigroup has no zero element")]
    NoZero,
    #[error("semigroup is not 0-simple")]
    NotZeroSimple,
    #[error("has nontrivial subgroups")]
    NontrivialSubgroups,
    #[error("right zero band needs at least one element")]
    EmptyBand,
    #[error("empty support")]
    EmptySupport,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<usize>,
    zero: Option<usize>,
}

impl FiniteSemigroup {
    /// Builds a semigroup from a row-major table, checking every triple.
    pub fn new(size: usize, table: Vec<usize>, zero: Option<usize>) -> Result<Self, SemigroupError> {
        if table.len() != size * size {
            return Err(SemigroupError::TableShape { expected: size * size, found: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= size) {
            return Err(SemigroupError::OutOfRange(bad));
        }
        let s = FiniteSemigroup { size, table, zero };
        if let Some(z) = zero {
            if z >= size || (0..size).any(|x| s.mul(z, x) != z || s.mul(x, z) != z) {
                return Err(SemigroupError::BadZero(z));
            }
        }
        for a in 0..size {
            for b in 0..size {
                let ab = s.mul(a, b);
                for c in 0..size {
                    if s.mul(ab, c) != s.mul(a, s.mul(b, c)) {
                        return Err(SemigroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(s)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn is_zero_elem(&self, a: usize) -> bool {
        self.zero == Some(a)
    }

    /// Searches the table for a zero element.
    pub fn find_zero(&self) -> Option<usize> {
        (0..self.size).find(|&z| (0..self.size).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    /// The same table with a fresh zero appended as the last element.
    pub fn adjoin_zero(&self) -> FiniteSemigroup {
        let n = self.size + 1;
        let z = self.size;
        let mut table = vec![z; n * n];
        for a in 0..self.size {
            for b in 0..self.size {
                table[a * n + b] = self.mul(a, b);
            }
        }
        FiniteSemigroup { size: n, table, zero: Some(z) }
    }

    /// S^1 a S^1.
    pub fn principal_ideal(&self, a: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([a]);
        for x in 0..self.size {
            out.insert(self.mul(x, a));
            out.insert(self.mul(a, x));
            for y in 0..self.size {
                out.insert(self.mul(self.mul(x, a), y));
            }
        }
        out
    }

    fn right_ideal(&self, a: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([a]);
        out.extend((0..self.size).map(|x| self.mul(a, x)));
        out
    }

    fn left_ideal(&self, a: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([a]);
        out.extend((0..self.size).map(|x| self.mul(x, a)));
        out
    }

    /// Collapses an ideal to a single zero. Surviving elements keep their
    /// order; the zero goes last. Returns the quotient and the index map.
    pub fn rees_quotient(&self, ideal: &BTreeSet<usize>) -> (FiniteSemigroup, Vec<usize>) {
        let keep: Vec<usize> = (0..self.size).filter(|x| !ideal.contains(x)).collect();
        let z = keep.len();
        let mut map = vec![z; self.size];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let n = z + 1;
        let mut table = vec![z; n * n];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                table[i * n + j] = map[self.mul(a, b)];
            }
        }
        (FiniteSemigroup { size: n, table, zero: Some(z) }, map)
    }
}

/// Rees matrix semigroup over the trivial group. `sandwich[j][k]` is true
/// when p_{jk} = e; j ranges over the m columns, k over the n rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReesPresentation {
    pub n: usize,
    pub m: usize,
    pub sandwich: Vec<Vec<bool>>,
}

impl ReesPresentation {
    pub fn new(n: usize, m: usize, sandwich: Vec<Vec<bool>>) -> Result<Self, SemigroupError> {
        let p = ReesPresentation { n, m, sandwich };
        p.check()?;
        Ok(p)
    }

    pub fn all_e(n: usize, m: usize) -> Self {
        ReesPresentation { n, m, sandwich: vec![vec![true; n]; m] }
    }

    fn check(&self) -> Result<(), SemigroupError> {
        let shape_ok = self.n > 0
            && self.m > 0
            && self.sandwich.len() == self.m
            && self.sandwich.iter().all(|r| r.len() == self.n);
        if !shape_ok {
            return Err(SemigroupError::NotZeroSimplePresentation);
        }
        let rows_ok = self.sandwich.iter().all(|r| r.iter().any(|&x| x));
        let cols_ok = (0..self.n).all(|k| self.sandwich.iter().any(|r| r[k]));
        if rows_ok && cols_ok {
            Ok(())
        } else {
            Err(SemigroupError::NotZeroSimplePresentation)
        }
    }

    /// Index of (e, i, j) in the semigroup built by `rees_semigroup`.
    pub fn element(&self, i: usize, j: usize) -> usize {
        i * self.m + j
    }

    pub fn theta(&self) -> usize {
        self.n * self.m
    }

    /// Same presentation up to independent row and column permutations.
    pub fn equivalent(&self, other: &ReesPresentation) -> bool {
        if self.n != other.n || self.m != other.m {
            return false;
        }
        let rows = permutations(self.n);
        let cols = permutations(self.m);
        rows.iter().any(|rp| {
            cols.iter().any(|cp| {
                (0..self.m).all(|j| (0..self.n).all(|k| self.sandwich[j][k] == other.sandwich[cp[j]][rp[k]]))
            })
        })
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// (e,i,j)(e,k,l) = (e,i,l) when p_{jk} = e, else the zero. Elements are
/// ordered row-major over (i, j) with the zero last.
pub fn rees_semigroup(pres: &ReesPresentation) -> Result<FiniteSemigroup, SemigroupError> {
    pres.check()?;
    let z = pres.theta();
    let size = z + 1;
    let mut table = vec![z; size * size];
    for i in 0..pres.n {
        for j in 0..pres.m {
            for k in 0..pres.n {
                for l in 0..pres.m {
                    if pres.sandwich[j][k] {
                        table[pres.element(i, j) * size + pres.element(k, l)] = pres.element(i, l);
                    }
                }
            }
        }
    }
    FiniteSemigroup::new(size, table, Some(z))
}

pub fn right_zero_band(k: usize) -> Result<FiniteSemigroup, SemigroupError> {
    if k == 0 {
        return Err(SemigroupError::EmptyBand);
    }
    let table = (0..k * k).map(|x| x % k).collect();
    FiniteSemigroup::new(k, table, None)
}

/// The one-element semigroup.
pub fn trivial() -> FiniteSemigroup {
    FiniteSemigroup { size: 1, table: vec![0], zero: None }
}

/// Cyclic group of order k written additively; no zero.
pub fn cyclic_group(k: usize) -> Result<FiniteSemigroup, SemigroupError> {
    if k == 0 {
        return Err(SemigroupError::EmptyBand);
    }
    let table = (0..k * k).map(|x| (x / k + x % k) % k).collect();
    FiniteSemigroup::new(k, table, None)
}

/// k nonzero elements whose products all vanish, plus the zero.
pub fn null_semigroup(k: usize) -> FiniteSemigroup {
    FiniteSemigroup { size: k + 1, table: vec![k; (k + 1) * (k + 1)], zero: Some(k) }
}

pub fn is_zero_simple(s: &FiniteSemigroup) -> Result<bool, SemigroupError> {
    let z = s.zero.ok_or(SemigroupError::NoZero)?;
    if s.table.iter().all(|&x| x == z) {
        return Ok(false);
    }
    Ok((0..s.size).filter(|&a| a != z).all(|a| s.principal_ideal(a).len() == s.size))
}

/// A Rees presentation read off a table, with the coordinates of each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesCoordinates {
    pub pres: ReesPresentation,
    /// (row, column) for each nonzero element; None for the zero.
    pub coord: Vec<Option<(usize, usize)>>,
}

impl ReesCoordinates {
    pub fn element_at(&self, i: usize, j: usize) -> usize {
        self.coord.iter().position(|c| *c == Some((i, j))).expect("complete coordinates")
    }
}

pub fn green_trivial_rees_coordinates(s: &FiniteSemigroup) -> Result<ReesCoordinates, SemigroupError> {
    if !is_zero_simple(s)? {
        return Err(SemigroupError::NotZeroSimple);
    }
    let z = s.zero.expect("checked");
    let nonzero: Vec<usize> = (0..s.size).filter(|&a| a != z).collect();
    let classes = |ideal: &dyn Fn(usize) -> BTreeSet<usize>| {
        let keys: Vec<BTreeSet<usize>> = nonzero.iter().map(|&a| ideal(a)).collect();
        let mut reps: Vec<BTreeSet<usize>> = Vec::new();
        let mut label = vec![0; s.size];
        for (&a, key) in nonzero.iter().zip(&keys) {
            let idx = match reps.iter().position(|r| r == key) {
                Some(i) => i,
                None => {
                    reps.push(key.clone());
                    reps.len() - 1
                }
            };
            label[a] = idx;
        }
        (reps.len(), label)
    };
    let (n, row_of) = classes(&|a| s.right_ideal(a));
    let (m, col_of) = classes(&|a| s.left_ideal(a));
    let mut seen = vec![vec![false; m]; n];
    let mut coord = vec![None; s.size];
    for &a in &nonzero {
        let (i, j) = (row_of[a], col_of[a]);
        if seen[i][j] {
            return Err(SemigroupError::NontrivialSubgroups);
        }
        seen[i][j] = true;
        coord[a] = Some((i, j));
    }
    if nonzero.len() != n * m {
        return Err(SemigroupError::NotZeroSimple);
    }
    let at = |i: usize, j: usize| nonzero.iter().copied().find(|&a| coord[a] == Some((i, j))).unwrap();
    let sandwich = (0..m).map(|j| (0..n).map(|k| s.mul(at(0, j), at(k, 0)) != z).collect()).collect();
    let pres = ReesPresentation::new(n, m, sandwich)?;
    // The table must agree with the Rees product everywhere.
    for &a in &nonzero {
        for &b in &nonzero {
            let (i, j) = coord[a].unwrap();
            let (k, l) = coord[b].unwrap();
            let want = if pres.sandwich[j][k] { Some((i, l)) } else { None };
            if coord[s.mul(a, b)] != want {
                return Err(SemigroupError::NontrivialSubgroups);
            }
        }
    }
    Ok(ReesCoordinates { pres, coord })
}

/// Subsemigroup generated by `supp`, with a zero placed last (adjoined when
/// the closure has none). Returns the semigroup and, for each old element,
/// its new index if it survives.
pub fn support_closure(
    s: &FiniteSemigroup,
    supp: &BTreeSet<usize>,
) -> Result<(FiniteSemigroup, Vec<Option<usize>>), SemigroupError> {
    if supp.is_empty() {
        return Err(SemigroupError::EmptySupport);
    }
    let mut closure = supp.clone();
    loop {
        let mut grew = false;
        let cur: Vec<usize> = closure.iter().copied().collect();
        for &a in &cur {
            for &b in &cur {
                grew |= closure.insert(s.mul(a, b));
            }
        }
        if !grew {
            break;
        }
    }
    let own_zero = s.zero.filter(|z| closure.contains(z));
    let mut order: Vec<usize> = closure.iter().copied().filter(|&x| Some(x) != own_zero).collect();
    if let Some(z) = own_zero {
        order.push(z);
    }
    let size = order.len() + usize::from(own_zero.is_none());
    let zero = size - 1;
    let mut map = vec![None; s.size];
    for (new, &old) in order.iter().enumerate() {
        map[old] = Some(new);
    }
    let mut table = vec![zero; size * size];
    for (i, &a) in order.iter().enumerate() {
        for (j, &b) in order.iter().enumerate() {
            table[i * size + j] = map[s.mul(a, b)].expect("closed");
        }
    }
    Ok((FiniteSemigroup::new(size, table, Some(zero))?, map))
}
