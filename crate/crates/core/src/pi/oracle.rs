//! Direct codimension count used to cross-check the block engine.
//!
//! One matrix over all of P_n^gr: a row per (degree tuple, word), a column
//! per (substitution tuple, output coordinate). Products are taken with the
//! algebra's dense multiplication and the rank comes from plain exact
//! elimination on sparse rows. No block splitting, no symmetry reduction,
//! no modular arithmetic.

use std::collections::BTreeMap;

use super::{permutations, PiError};
use crate::algebra::GradedAlgebra;
use crate::kernel::Scalar;

/// c_n^gr by direct evaluation; `graded = false` substitutes every basis
/// element into every variable (the ordinary codimension).
pub fn direct_codimension(a: &GradedAlgebra, n: usize, graded: bool) -> Result<u128, PiError> {
    if n == 0 {
        return Err(PiError::Invalid("n must be positive".into()));
    }
    let dim = a.dim();
    if dim == 0 {
        return Ok(0);
    }
    let labels_all: Vec<Vec<usize>> = if graded {
        let supp: Vec<usize> = a.support().into_iter().collect();
        tuples(supp.len(), n).into_iter().map(|t| t.into_iter().map(|i| supp[i]).collect()).collect()
    } else {
        vec![vec![usize::MAX; n]]
    };
    let words: Vec<Vec<usize>> = permutations(n).into_iter().map(|(w, _)| w).collect();
    let subs_all = tuples(dim, n);
    let mut rows: Vec<BTreeMap<usize, Scalar>> = Vec::new();
    for labels in &labels_all {
        let fits = |s: &Vec<usize>| (0..n).all(|v| labels[v] == usize::MAX || a.degree[s[v]] == labels[v]);
        for w in &words {
            let mut row = BTreeMap::new();
            for (si, s) in subs_all.iter().enumerate() {
                if !fits(s) {
                    continue;
                }
                let mut acc = a.alg.unit(s[w[0]]);
                for &v in &w[1..] {
                    acc = a.alg.mul(&acc, &a.alg.unit(s[v]));
                }
                for (k, x) in acc.into_iter().enumerate() {
                    if !x.is_zero() {
                        row.insert(si * dim + k, x);
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(sparse_rank(rows) as u128)
}

/// All n-tuples over 0..k.
fn tuples(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..k).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Gaussian elimination on sparse rows, pivoting on the smallest column.
pub fn sparse_rank(rows: Vec<BTreeMap<usize, Scalar>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&c, lead)) = row.iter().next() else { break };
            let Some(p) = pivots.get(&c) else {
                let inv = lead.inv().expect("nonzero lead");
                for x in row.values_mut() {
                    *x = &*x * &inv;
                }
                pivots.insert(c, row);
                break;
            };
            let f = lead.clone();
            for (j, y) in p {
                let v = row.get(j).cloned().unwrap_or_else(|| Scalar::zero(f.field()));
                let nv = &v - &(&f * y);
                if nv.is_zero() {
                    row.remove(j);
                } else {
                    row.insert(*j, nv);
                }
            }
        }
    }
    pivots.len()
}
