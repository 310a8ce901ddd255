//! Partitions, tableaux, hook dimensions and the symmetrizers a_T, b_T.

use std::collections::HashMap;

use serde::Serialize;

use super::{MultilinearGradedPolynomial, PiError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PiError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(PiError::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// lambda_i with the convention lambda_i = 0 past the last row (0-based).
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition { parts: (0..w).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect() }
    }
}

/// All partitions of n, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// dim M(lambda) = n! / prod of hook lengths.
pub fn hook_dimension(lambda: &Partition) -> u128 {
    let conj = lambda.conjugate();
    let mut num: u128 = (1..=lambda.n() as u128).product();
    let mut hooks: Vec<u128> = Vec::new();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            hooks.push((row - j - 1 + conj.part(j) - i - 1 + 1) as u128);
        }
    }
    // divide as we go to keep the numerator small
    hooks.sort_unstable();
    let mut den: u128 = 1;
    for h in hooks {
        den *= h;
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    debug_assert_eq!(den, 1);
    num
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of standard Young tableaux, by removing the cell holding n.
pub fn count_standard_tableaux(lambda: &Partition) -> u128 {
    fn go(parts: Vec<usize>, memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
        if parts.iter().all(|&p| p == 0) {
            return 1;
        }
        if let Some(&v) = memo.get(&parts) {
            return v;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            // a corner: removing it keeps the rows weakly decreasing
            if parts[i] > 0 && parts.get(i + 1).is_none_or(|&next| next < parts[i]) {
                let mut q = parts.clone();
                q[i] -= 1;
                total += go(q, memo);
            }
        }
        memo.insert(parts, total);
        total
    }
    go(lambda.parts().to_vec(), &mut HashMap::new())
}

/// A filling of a Young diagram by the variables 0..n, each exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YoungTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, PiError> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.n();
        let mut seen = vec![false; n];
        for &v in rows.iter().flatten() {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(PiError::Invalid("tableau filling is not a bijection onto 0..n".into()));
            }
        }
        Ok(YoungTableau { shape, rows })
    }

    /// Row by row, left to right.
    pub fn row_filling(shape: &Partition) -> Self {
        let mut next = 0;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let r: Vec<usize> = (next..next + len).collect();
                next += len;
                r
            })
            .collect();
        YoungTableau { shape: shape.clone(), rows }
    }

    /// Column by column, top to bottom.
    pub fn column_filling(shape: &Partition) -> Self {
        let cols: Vec<usize> = shape.conjugate().parts().to_vec();
        let mut next = 0;
        let columns = cols
            .iter()
            .map(|&h| {
                let c: Vec<usize> = (next..next + h).collect();
                next += h;
                c
            })
            .collect::<Vec<_>>();
        Self::from_columns(&columns).expect("column filling is a tableau")
    }

    /// Columns given top to bottom, left to right.
    pub fn from_columns(columns: &[Vec<usize>]) -> Result<Self, PiError> {
        if columns.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(PiError::Invalid("column heights must be weakly decreasing".into()));
        }
        let height = columns.first().map_or(0, Vec::len);
        let rows = (0..height).map(|i| columns.iter().filter(|c| c.len() > i).map(|c| c[i]).collect()).collect();
        Self::new(rows)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.shape.part(0)).map(|j| self.rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect()).collect()
    }
}

fn check_degree(t: &YoungTableau, f: &MultilinearGradedPolynomial) -> Result<(), PiError> {
    if t.shape.n() != f.n() {
        return Err(PiError::DegreeMismatch { expected: t.shape.n(), found: f.n() });
    }
    Ok(())
}

/// a_T f: the sum over the row group.
pub fn apply_row_symmetrizer(t: &YoungTableau, f: &MultilinearGradedPolynomial) -> Result<MultilinearGradedPolynomial, PiError> {
    check_degree(t, f)?;
    let mut g = f.clone();
    for row in t.rows() {
        if row.len() > 1 {
            g = g.symmetrized(row, false)?;
        }
    }
    Ok(g)
}

/// b_T f: the signed sum over the column group.
pub fn apply_column_alternator(t: &YoungTableau, f: &MultilinearGradedPolynomial) -> Result<MultilinearGradedPolynomial, PiError> {
    check_degree(t, f)?;
    let mut g = f.clone();
    for col in t.columns() {
        if col.len() > 1 {
            g = g.symmetrized(&col, true)?;
        }
    }
    Ok(g)
}

/// e*_T f = b_T a_T f.
pub fn apply_e_star(t: &YoungTableau, f: &MultilinearGradedPolynomial) -> Result<MultilinearGradedPolynomial, PiError> {
    apply_column_alternator(t, &apply_row_symmetrizer(t, f)?)
}

/// The vanishing criterion: lambda_{r+1} > 0 or sum gamma_i lambda_i >= k.
pub fn vanishing_partition(lambda: &Partition, gamma: &[i64], k: usize, r: usize) -> bool {
    if lambda.part(r) > 0 {
        return true;
    }
    let s: i64 = gamma.iter().take(r).enumerate().map(|(i, &g)| g * lambda.part(i) as i64).sum();
    s >= k as i64
}
