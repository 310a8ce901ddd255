//! Graded and ordinary codimensions, one block per degree tuple.
//!
//! P_n^gr splits as the direct sum of the spaces P_{t_1..t_n} of monomials
//! whose variable x_i has degree t_i, and identities split the same way.
//! Renaming variables carries P_{t} onto P_{t o sigma} and identities onto
//! identities, so only sorted tuples are evaluated and each rank is
//! weighted by the number of its rearrangements.
//!
//! Each block is the rank of the n! x (substitutions * dim) evaluation
//! matrix. It is computed over a word-sized prime drawn from the algebra's
//! hash. A full modular rank is exact; otherwise the modular identities
//! are lifted to Q and checked on every substitution, and a rational
//! elimination over all columns is the last resort.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::PiError;
use crate::algebra::GradedAlgebra;
use crate::kernel::modular::{random_prime, reconstruct, ModEchelon};
use crate::kernel::{self, Field, Mat, Scalar};

/// Default cap on |supp|^n * n! * dim.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodimMode {
    Graded,
    Ordinary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimResult {
    pub n: usize,
    pub mode: CodimMode,
    pub value: u128,
    /// Sorted degree tuples evaluated.
    pub blocks: usize,
    /// Blocks whose rank needed the rational certificate.
    pub certified_blocks: usize,
    pub cost: u128,
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// The guard figure: |supp|^n * n! * dim for graded codimensions. The
/// ordinary count substitutes every basis element into every variable, so
/// dim stands in for |supp| there.
pub fn codimension_cost(a: &GradedAlgebra, n: usize, mode: CodimMode) -> u128 {
    let width = match mode {
        CodimMode::Graded => a.support().len(),
        CodimMode::Ordinary => a.dim(),
    } as u128;
    let mut c = factorial(n).saturating_mul(a.dim() as u128);
    for _ in 0..n {
        c = c.saturating_mul(width);
    }
    c
}

pub fn codimension(a: &GradedAlgebra, n: usize, mode: CodimMode, budget: u128) -> Result<CodimResult, PiError> {
    if n == 0 {
        return Err(PiError::Invalid("n must be positive".into()));
    }
    if n > 20 {
        return Err(PiError::Budget { required: u128::MAX, budget });
    }
    let cost = codimension_cost(a, n, mode);
    if cost > budget {
        return Err(PiError::Budget { required: cost, budget });
    }
    let trivial;
    let a = match mode {
        CodimMode::Graded => a,
        CodimMode::Ordinary => {
            trivial = GradedAlgebra::trivially_graded(a.alg.clone());
            &trivial
        }
    };
    let engine = Engine::new(a)?;
    let supp: Vec<usize> = a.support().into_iter().collect();
    let blocks = sorted_tuples(&supp, n);
    let ranks: Vec<(usize, bool)> =
        blocks.par_iter().map(|labels| engine.block_rank(labels)).collect::<Result<_, PiError>>()?;
    let mut value = 0u128;
    let mut certified_blocks = 0;
    for (labels, (r, certified)) in blocks.iter().zip(&ranks) {
        value += *r as u128 * arrangements(labels);
        certified_blocks += *certified as usize;
    }
    Ok(CodimResult { n, mode, value, blocks: blocks.len(), certified_blocks, cost })
}

pub fn graded_codimension(a: &GradedAlgebra, n: usize) -> Result<u128, PiError> {
    Ok(codimension(a, n, CodimMode::Graded, DEFAULT_BUDGET)?.value)
}

pub fn ordinary_codimension(a: &GradedAlgebra, n: usize) -> Result<u128, PiError> {
    Ok(codimension(a, n, CodimMode::Ordinary, DEFAULT_BUDGET)?.value)
}

/// c_n <= c_n^gr <= |T|^n c_n.
pub fn codimension_sandwich_check(a: &GradedAlgebra, n: usize, budget: u128) -> Result<bool, PiError> {
    let ord = codimension(a, n, CodimMode::Ordinary, budget)?.value;
    let gr = codimension(a, n, CodimMode::Graded, budget)?.value;
    let t = (a.semigroup.size() as u128).saturating_pow(n as u32);
    Ok(ord <= gr && gr <= t.saturating_mul(ord))
}

/// Nondecreasing n-tuples over `supp`.
fn sorted_tuples(supp: &[usize], n: usize) -> Vec<Vec<usize>> {
    fn go(supp: &[usize], from: usize, cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in from..supp.len() {
            cur.push(supp[i]);
            go(supp, i, cur, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(supp, 0, &mut Vec::with_capacity(n), n, &mut out);
    out
}

/// n! / prod (multiplicity)!.
fn arrangements(labels: &[usize]) -> u128 {
    let mut r = factorial(labels.len());
    let mut i = 0;
    while i < labels.len() {
        let j = labels[i..].iter().take_while(|&&x| x == labels[i]).count();
        r /= factorial(j);
        i += j;
    }
    r
}

struct Engine<'a> {
    a: &'a GradedAlgebra,
    p: u64,
    /// The modular path is exact when the field is F_p itself.
    exact_mod: bool,
    table_mod: Vec<Vec<(usize, u64)>>,
    /// Semigroup elements whose component is zero.
    null_degrees: Vec<bool>,
}

impl<'a> Engine<'a> {
    fn new(a: &'a GradedAlgebra) -> Result<Self, PiError> {
        let dim = a.dim();
        let residues = |p: u64| -> Option<Vec<Vec<(usize, u64)>>> {
            let mut t = Vec::with_capacity(dim * dim);
            for i in 0..dim {
                for j in 0..dim {
                    let mut row = Vec::new();
                    for (k, c) in a.alg.basis_product_sparse(i, j) {
                        let r = c.residue(p)?;
                        if r != 0 {
                            row.push((*k, r));
                        }
                    }
                    t.push(row);
                }
            }
            Some(t)
        };
        let (p, exact_mod, table_mod) = match a.field() {
            Field::Prime(p) => (p, true, residues(p).ok_or_else(|| PiError::Internal("residue mod p".into()))?),
            Field::Rational => {
                let mut rng = ChaCha8Rng::from_seed(a.content_hash());
                loop {
                    let p = random_prime(&mut rng);
                    if let Some(t) = residues(p) {
                        break (p, false, t);
                    }
                }
            }
        };
        let null_degrees = (0..a.semigroup.size()).map(|t| !a.degree.contains(&t)).collect();
        Ok(Engine { a, p, exact_mod, table_mod, null_degrees })
    }

    /// Word indices (lexicographic rank among permutations) whose prefix
    /// degree never lands in a zero component.
    fn live_words(&self, labels: &[usize]) -> usize {
        let n = labels.len();
        let sg = &self.a.semigroup;
        let mut count = 0;
        let mut stack: Vec<(u64, usize, usize)> = (0..n).map(|v| (1u64 << v, labels[v], 1)).collect();
        while let Some((used, deg, len)) = stack.pop() {
            if self.null_degrees[deg] {
                continue;
            }
            if len == n {
                count += 1;
                continue;
            }
            for v in (0..n).filter(|v| used & (1 << v) == 0) {
                stack.push((used | 1 << v, sg.mul(deg, labels[v]), len + 1));
            }
        }
        count
    }

    /// Rank of one block and whether the rational certificate ran.
    fn block_rank(&self, labels: &[usize]) -> Result<(usize, bool), PiError> {
        let n = labels.len();
        let dim = self.a.dim();
        let nf = factorial(n) as usize;
        let cands: Vec<Vec<usize>> =
            labels.iter().map(|&t| (0..dim).filter(|&b| self.a.degree[b] == t).collect()).collect();
        if cands.iter().any(Vec::is_empty) {
            return Ok((0, false));
        }
        let ceiling = self.live_words(labels);
        if ceiling == 0 {
            return Ok((0, false));
        }
        let p = self.p;
        let mut ech = ModEchelon::new(p, nf);
        let mut leaves = vec![vec![0u64; nf]; dim];
        let fma = |acc: &mut u64, x: &u64, y: &u64| *acc = ((*acc as u128 + (*x as u128 * *y as u128) % p as u128) % p as u128) as u64;
        for_each_tuple(&cands, |tuple| {
            for row in leaves.iter_mut() {
                row.iter_mut().for_each(|x| *x = 0);
            }
            word_products(dim, tuple, &self.table_mod, (&0u64, &1u64), &fma, &|x| *x == 0, &mut |w, v: &[u64]| {
                for (k, x) in v.iter().enumerate() {
                    leaves[k][w] = *x;
                }
            });
            for row in &leaves {
                if row.iter().any(|&x| x != 0) {
                    ech.insert(row.clone());
                }
            }
            ech.rank() < ceiling
        });
        let r = ech.rank();
        if r == ceiling || self.exact_mod {
            return Ok((r, false));
        }
        if let Some(true) = self.certify(&cands, &ech) {
            return Ok((r, true));
        }
        Ok((self.exact_rank(&cands)?, true))
    }

    /// Lifts the modular identities of the block to Q and checks them on
    /// every substitution tuple.
    fn certify(&self, cands: &[Vec<usize>], ech: &ModEchelon) -> Option<bool> {
        let p = self.p;
        let lifted: Vec<Vec<(usize, Scalar)>> = ech
            .kernel()
            .into_iter()
            .map(|y| {
                y.into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(w, c)| reconstruct(c, p).map(|q| (w, Scalar::from_rational(q))))
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<_>>()?;
        let table = self.exact_table();
        let dim = self.a.dim();
        let nf = ech.ncols();
        let zero = Scalar::zero(self.a.field());
        let one = Scalar::one(self.a.field());
        let mut ok = true;
        let mut leaves = vec![vec![zero.clone(); dim]; nf];
        for_each_tuple(cands, |tuple| {
            for l in leaves.iter_mut() {
                l.iter_mut().for_each(|x| *x = zero.clone());
            }
            word_products(dim, tuple, &table, (&zero, &one), &scalar_fma, &Scalar::is_zero, &mut |w, v: &[Scalar]| {
                leaves[w].clone_from_slice(v);
            });
            ok = lifted.iter().all(|y| {
                (0..dim).all(|k| {
                    let mut s = zero.clone();
                    for (w, c) in y {
                        if !leaves[*w][k].is_zero() {
                            scalar_fma(&mut s, c, &leaves[*w][k]);
                        }
                    }
                    s.is_zero()
                })
            });
            ok
        });
        Some(ok)
    }

    /// Rank over the field of all distinct nonzero columns.
    fn exact_rank(&self, cands: &[Vec<usize>]) -> Result<usize, PiError> {
        let table = self.exact_table();
        let dim = self.a.dim();
        let nf = factorial(cands.len()) as usize;
        let zero = Scalar::zero(self.a.field());
        let one = Scalar::one(self.a.field());
        let mut cols: HashSet<Vec<Scalar>> = HashSet::new();
        for_each_tuple(cands, |tuple| {
            let mut leaves = vec![vec![zero.clone(); nf]; dim];
            word_products(dim, tuple, &table, (&zero, &one), &scalar_fma, &Scalar::is_zero, &mut |w, v: &[Scalar]| {
                for (k, x) in v.iter().enumerate() {
                    leaves[k][w] = x.clone();
                }
            });
            cols.extend(leaves.into_iter().filter(|c| c.iter().any(|x| !x.is_zero())));
            true
        });
        let mut rows: Vec<Vec<Scalar>> = cols.into_iter().collect();
        rows.sort_by(|x, y| format!("{x:?}").cmp(&format!("{y:?}")));
        Ok(kernel::rank(&Mat::from_rows_with_cols(nf, rows)?)?)
    }

    fn exact_table(&self) -> Vec<Vec<(usize, Scalar)>> {
        let dim = self.a.dim();
        (0..dim * dim).map(|ij| self.a.alg.basis_product_sparse(ij / dim, ij % dim).to_vec()).collect()
    }
}

fn scalar_fma(acc: &mut Scalar, x: &Scalar, y: &Scalar) {
    *acc = &*acc + &(x * y);
}

/// Calls `f` on every tuple in the product of `cands` until it returns false.
fn for_each_tuple(cands: &[Vec<usize>], mut f: impl FnMut(&[usize]) -> bool) {
    let n = cands.len();
    let mut idx = vec![0usize; n];
    let mut tuple: Vec<usize> = cands.iter().map(|c| c[0]).collect();
    loop {
        if !f(&tuple) {
            return;
        }
        let mut v = 0;
        loop {
            if v == n {
                return;
            }
            idx[v] += 1;
            if idx[v] < cands[v].len() {
                tuple[v] = cands[v][idx[v]];
                break;
            }
            idx[v] = 0;
            tuple[v] = cands[v][0];
            v += 1;
        }
    }
}

/// Visits b_{w(0)} ... b_{w(n-1)} for every permutation w of the variables,
/// sharing prefixes. The callback receives the lexicographic index of w and
/// the product; words whose prefix vanishes are not visited.
fn word_products<C: Clone>(
    dim: usize,
    tuple: &[usize],
    table: &[Vec<(usize, C)>],
    (zero, one): (&C, &C),
    fma: &impl Fn(&mut C, &C, &C),
    is_zero: &impl Fn(&C) -> bool,
    leaf: &mut impl FnMut(usize, &[C]),
) {
    let n = tuple.len();
    let fact: Vec<usize> = (0..=n).map(|k| factorial(k) as usize).collect();
    let mut prefix = vec![vec![zero.clone(); dim]; n];
    #[allow(clippy::too_many_arguments)]
    fn go<C: Clone>(
        depth: usize,
        used: u64,
        index: usize,
        ctx: (&[usize], &[Vec<(usize, C)>], (&C, &C), usize, &[usize]),
        prefix: &mut [Vec<C>],
        fma: &impl Fn(&mut C, &C, &C),
        is_zero: &impl Fn(&C) -> bool,
        leaf: &mut impl FnMut(usize, &[C]),
    ) {
        let (tuple, table, (zero, one), dim, fact) = ctx;
        let n = tuple.len();
        if depth == n {
            leaf(index, &prefix[n - 1]);
            return;
        }
        let mut j = 0;
        for v in 0..n {
            if used & (1 << v) != 0 {
                continue;
            }
            let child = index + j * fact[n - 1 - depth];
            j += 1;
            let b = tuple[v];
            let (head, tail) = prefix.split_at_mut(depth);
            let out = &mut tail[0];
            out.iter_mut().for_each(|x| *x = zero.clone());
            let mut nonzero = false;
            if depth == 0 {
                out[b] = one.clone();
                nonzero = true;
            } else {
                for (i, x) in head[depth - 1].iter().enumerate() {
                    if is_zero(x) {
                        continue;
                    }
                    for (k, c) in &table[i * dim + b] {
                        fma(&mut out[*k], x, c);
                    }
                }
                nonzero = nonzero || out.iter().any(|x| !is_zero(x));
            }
            if nonzero {
                go(depth + 1, used | 1 << v, child, ctx, prefix, fma, is_zero, leaf);
            }
        }
    }
    go(0, 0, 0, (tuple, table, (zero, one), dim, &fact), &mut prefix, fma, is_zero, leaf);
}
