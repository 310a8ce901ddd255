//! Alternating graded non-identities for algebras with A/J(A) = M_2(F),
//! graded by a right zero band.
//!
//! When no class of T_0 outweighs the others, the witness alternates in
//! 2k sets of dim A variables each. Otherwise the witness is b_T f for a
//! tableau whose columns receive homogeneous basis elements with theta
//! summing to a prescribed value, so that the whole substitution has theta
//! sum 0.

use std::collections::BTreeMap;

use serde::Serialize;

use super::young::{hook_dimension, partitions, Partition, YoungTableau};
use super::{permutations, MultilinearGradedPolynomial, PiError};
use crate::algebra::{is_graded_simple, split_iso_to_matrix, GradedAlgebra};
use crate::exponent::{canonical_basis, m2_classify, normalizing_conjugation, CanonicalElement, ExponentError, M2Classification, Role};
use crate::kernel::{is_zero_vec, Field, Scalar, Vector};

/// Cap on the number of term operations spent building a witness.
pub const WITNESS_TERM_BUDGET: u128 = 20_000_000;

type Words = Vec<(Vec<usize>, Scalar)>;

fn var(field: Field, v: usize) -> Words {
    vec![(vec![v], Scalar::one(field))]
}

fn product(a: &Words, b: &Words) -> Words {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for (wa, ca) in a {
        for (wb, cb) in b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            out.push((w, ca * cb));
        }
    }
    out
}

fn product_all(field: Field, parts: &[Words]) -> Words {
    parts.iter().fold(vec![(vec![], Scalar::one(field))], |acc, p| product(&acc, p))
}

fn minus(mut a: Words, b: Words) -> Words {
    a.extend(b.into_iter().map(|(w, c)| (w, -&c)));
    a
}

fn commutator(a: &Words, b: &Words) -> Words {
    minus(product(a, b), product(b, a))
}

/// The standard polynomial sum sign(s) x_{s(1)} ... x_{s(m)}.
fn standard(field: Field, vars: &[usize]) -> Words {
    permutations(vars.len())
        .into_iter()
        .map(|(p, odd)| {
            let c = if odd { Scalar::from_int(field, -1) } else { Scalar::one(field) };
            (p.iter().map(|&i| vars[i]).collect(), c)
        })
        .collect()
}

/// sum over sigma, rho in S_4 of sign(sigma rho) x_s1 y_r1 x_s2 x_s3 x_s4 y_r2 y_r3 y_r4.
fn f0_words(field: Field, x: &[usize], y: &[usize]) -> Words {
    let perms = permutations(4);
    let mut out = Vec::with_capacity(576);
    for (s, so) in &perms {
        for (r, ro) in &perms {
            let w = vec![x[s[0]], y[r[0]], x[s[1]], x[s[2]], x[s[3]], y[r[1]], y[r[2]], y[r[3]]];
            let c = if so ^ ro { Scalar::from_int(field, -1) } else { Scalar::one(field) };
            out.push((w, c));
        }
    }
    out
}

/// [x0,x1][x2,x3] + [x2,x3][x0,x1]
fn pair_words(field: Field, x: &[usize]) -> Words {
    let c1 = commutator(&var(field, x[0]), &var(field, x[1]));
    let c2 = commutator(&var(field, x[2]), &var(field, x[3]));
    let mut out = product(&c1, &c2);
    out.extend(product(&c2, &c1));
    out
}

/// [x0,x1][x4,x5][x2,x3] - [x2,x3][x4,x5][x0,x1]
fn triple_words(field: Field, x: &[usize]) -> Words {
    let c: Vec<Words> = (0..3).map(|i| commutator(&var(field, x[2 * i]), &var(field, x[2 * i + 1]))).collect();
    minus(product_all(field, &[c[0].clone(), c[2].clone(), c[1].clone()]), product_all(field, &[c[1].clone(), c[2].clone(), c[0].clone()]))
}

fn to_poly(field: Field, labels: &[usize], words: Words) -> Result<MultilinearGradedPolynomial, PiError> {
    MultilinearGradedPolynomial::from_words(field, labels, words)
}

/// f0 in x_0..x_3, y_0..y_3 = variables 0..8, all of degree `label`.
pub fn witness_f0(field: Field, label: usize) -> MultilinearGradedPolynomial {
    to_poly(field, &[label; 8], f0_words(field, &[0, 1, 2, 3], &[4, 5, 6, 7])).expect("multilinear")
}

pub fn witness_pair(field: Field, t1: usize, t2: usize) -> Result<MultilinearGradedPolynomial, PiError> {
    if t1 == t2 {
        return Err(PiError::RepeatedLabels);
    }
    to_poly(field, &[t1, t1, t2, t2], pair_words(field, &[0, 1, 2, 3]))
}

pub fn witness_triple(field: Field, t1: usize, t2: usize, t3: usize) -> Result<MultilinearGradedPolynomial, PiError> {
    if t1 == t2 || t2 == t3 || t1 == t3 {
        return Err(PiError::RepeatedLabels);
    }
    to_poly(field, &[t1, t1, t2, t2, t3, t3], triple_words(field, &[0, 1, 2, 3, 4, 5]))
}

/// Orders the elements of T_0 so that t_{2i-1} and t_{2i} lie in different
/// classes and, for odd |T_0|, the last three lie in pairwise different
/// classes. Repeatedly takes one element from each of the two largest
/// classes.
pub fn triangle_pairing(classes: &[Vec<usize>]) -> Result<Vec<usize>, PiError> {
    let total: usize = classes.iter().map(Vec::len).sum();
    if classes.iter().any(|c| 2 * c.len() > total) {
        return Err(PiError::NotApplicable("a class outweighs all the others".into()));
    }
    let mut pools: Vec<Vec<usize>> = classes.iter().map(|c| c.iter().rev().copied().collect()).collect();
    let mut order = Vec::with_capacity(total);
    let mut left = total;
    while left > 0 && left != 3 {
        let mut idx: Vec<usize> = (0..pools.len()).collect();
        idx.sort_by_key(|&i| std::cmp::Reverse(pools[i].len()));
        let (a, b) = (idx[0], idx[1]);
        if pools[b].is_empty() {
            return Err(PiError::Internal("pairing ran out of classes".into()));
        }
        order.push(pools[a].pop().unwrap());
        order.push(pools[b].pop().unwrap());
        left -= 2;
    }
    if left == 3 {
        for p in pools.iter_mut() {
            order.extend(p.drain(..).rev());
        }
    }
    let class_of = |t: usize| classes.iter().position(|c| c.contains(&t));
    let ok_pairs = (0..total / 2 - usize::from(total % 2 == 1)).all(|i| class_of(order[2 * i]) != class_of(order[2 * i + 1]));
    let ok_triple = total % 2 == 0 || {
        let l = &order[total - 3..];
        class_of(l[0]) != class_of(l[1]) && class_of(l[1]) != class_of(l[2]) && class_of(l[0]) != class_of(l[2])
    };
    if !(ok_pairs && ok_triple) {
        return Err(PiError::Internal(format!("pairing {order:?} is invalid")));
    }
    Ok(order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessCase {
    Triangle,
    NonTriangle,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub case: WitnessCase,
    pub polynomial: MultilinearGradedPolynomial,
    /// Homogeneous element substituted for each variable.
    pub substitution: Vec<Vector>,
    /// Variable sets in which the polynomial alternates.
    pub alternating_sets: Vec<Vec<usize>>,
    pub tableau: YoungTableau,
    pub partition: Partition,
    pub value: Vector,
}

fn not_applicable(e: ExponentError) -> PiError {
    match e {
        ExponentError::Algebra(e) => PiError::Algebra(e),
        ExponentError::Pi(e) => e,
        e => PiError::NotApplicable(e.to_string()),
    }
}

fn check_budget(required: u128) -> Result<(), PiError> {
    if required > WITNESS_TERM_BUDGET {
        return Err(PiError::Budget { required, budget: WITNESS_TERM_BUDGET });
    }
    Ok(())
}

/// Alternates `words` over each set in turn, then evaluates.
fn finish(
    a: &GradedAlgebra,
    case: WitnessCase,
    labels: Vec<usize>,
    words: Words,
    substitution: Vec<Vector>,
    sets: Vec<Vec<usize>>,
) -> Result<Witness, PiError> {
    let field = a.field();
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let mut f = to_poly(field, &labels, words)?;
    for s in &sets {
        if s.len() > 1 {
            check_budget(f.len() as u128 * fact(s.len()))?;
            f = f.symmetrized(s, true)?;
        }
    }
    let value = f.evaluate(a, &substitution)?;
    if is_zero_vec(&value) {
        return Err(PiError::Internal("the alternating witness evaluated to zero".into()));
    }
    let tableau = YoungTableau::from_columns(&sets)?;
    Ok(Witness { case, partition: tableau.shape().clone(), polynomial: f, substitution, alternating_sets: sets, tableau, value })
}

/// An alternating graded non-identity of degree n, with its substitution.
/// Triangle case: n must be a positive multiple of 2 dim A. Otherwise the
/// partition is the admissible one of n with the largest dim M(lambda).
pub fn build_alternating_nonidentity(a: &GradedAlgebra, n: usize) -> Result<Witness, PiError> {
    let cls = m2_classify(a).map_err(not_applicable)?;
    if !is_graded_simple(a)?.graded_simple {
        return Err(PiError::NotApplicable("the algebra is not graded-simple".into()));
    }
    if cls.triangle_holds() {
        triangle_witness(a, cls, n)
    } else {
        non_triangle_witness(a, &cls, n)
    }
}

fn triangle_witness(a: &GradedAlgebra, mut cls: M2Classification, n: usize) -> Result<Witness, PiError> {
    let field = a.field();
    let dim = 2 * cls.t0.len() + 4 * cls.t1.len();
    if n == 0 || n % (2 * dim) != 0 {
        return Err(PiError::NotApplicable(format!("n must be a positive multiple of 2 dim A = {}", 2 * dim)));
    }
    let k = n / (2 * dim);
    let order = triangle_pairing(&cls.classes)?;
    let odd = order.len() % 2 == 1;
    if odd {
        // psi(I_a) = <e11, e21>, psi(I_b) = <e12, e22>
        let (ta, tb) = (order[order.len() - 3], order[order.len() - 2]);
        let iso = split_iso_to_matrix(&cls.quotient.alg, Some(cls.image(ta).expect("image")))?;
        cls = cls.with_iso(iso).map_err(not_applicable)?;
        let [al, be] = cls.rows[&tb].clone();
        let p = normalizing_conjugation(field, &al, &be).map_err(not_applicable)?;
        let iso = cls.iso.conjugated(&p)?;
        cls = cls.with_iso(iso).map_err(not_applicable)?;
        let (ra, rb) = (&cls.rows[&ta], &cls.rows[&tb]);
        if !(ra[1].is_zero() && rb[0].is_zero()) {
            return Err(PiError::Internal("normalization of psi failed".into()));
        }
    }
    let zero = Scalar::zero(field);
    let mut t1_elems: BTreeMap<usize, Vec<Vector>> = BTreeMap::new();
    for &t in &cls.t1 {
        let lifts = (0..4)
            .map(|u| cls.lift(a, t, &crate::kernel::unit_vec(field, 4, u)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(not_applicable)?;
        t1_elems.insert(t, lifts);
    }
    let mut t0_elems: BTreeMap<usize, Vec<Vector>> = BTreeMap::new();
    for &t in &cls.t0 {
        let [al, be] = cls.rows[&t].clone();
        let r1 = vec![al.clone(), be.clone(), zero.clone(), zero.clone()];
        let r2 = vec![zero.clone(), zero.clone(), al, be];
        t0_elems.insert(t, vec![cls.lift(a, t, &r1).map_err(not_applicable)?, cls.lift(a, t, &r2).map_err(not_applicable)?]);
    }

    let mut labels = Vec::with_capacity(n);
    let mut subs = Vec::with_capacity(n);
    let mut sets = Vec::with_capacity(2 * k);
    let mut factors: Vec<Words> = Vec::new();
    for _ in 0..k {
        // one x-set and one y-set: (T1 variables by t, T0 variables by order)
        let block = |labels: &mut Vec<usize>, subs: &mut Vec<Vector>| {
            let mut t1v = BTreeMap::new();
            for (&t, el) in &t1_elems {
                let vs: Vec<usize> = el
                    .iter()
                    .map(|e| {
                        labels.push(t);
                        subs.push(e.clone());
                        labels.len() - 1
                    })
                    .collect();
                t1v.insert(t, vs);
            }
            let mut t0v = Vec::new();
            for t in &order {
                for e in &t0_elems[t] {
                    labels.push(*t);
                    subs.push(e.clone());
                    t0v.push(labels.len() - 1);
                }
            }
            (t1v, t0v)
        };
        let start = labels.len();
        let (x1, x0) = block(&mut labels, &mut subs);
        sets.push((start..labels.len()).collect::<Vec<_>>());
        let start = labels.len();
        let (y1, y0) = block(&mut labels, &mut subs);
        sets.push((start..labels.len()).collect::<Vec<_>>());
        for t in x1.keys() {
            factors.push(f0_words(field, &x1[t], &y1[t]));
        }
        let pairs = if odd { (order.len() - 3) / 2 } else { order.len() / 2 };
        for l in 0..pairs {
            factors.push(pair_words(field, &x0[4 * l..4 * l + 4]));
            factors.push(pair_words(field, &y0[4 * l..4 * l + 4]));
        }
        if odd {
            let s = 4 * pairs;
            factors.push(triple_words(field, &x0[s..s + 6]));
            factors.push(triple_words(field, &y0[s..s + 6]));
        }
    }
    check_budget(factors.iter().map(|f| f.len() as u128).product())?;
    let words = product_all(field, &factors);
    finish(a, WitnessCase::Triangle, labels, words, subs, sets)
}

/// The admissible partition of n with the largest dim M(lambda): at most r
/// rows, even rows below the first, and sum gamma_i lambda_i <= 0.
pub fn non_triangle_partition(gamma: &[i64], n: usize) -> Option<Partition> {
    let mut best: Option<(u128, Partition)> = None;
    for l in partitions(n) {
        let ok = l.parts().len() <= gamma.len()
            && l.parts().iter().skip(1).all(|p| p % 2 == 0)
            && l.parts().iter().zip(gamma).map(|(&p, &g)| p as i64 * g).sum::<i64>() <= 0;
        if ok {
            let h = hook_dimension(&l);
            if best.as_ref().is_none_or(|(b, _)| h > *b) {
                best = Some((h, l));
            }
        }
    }
    best.map(|(_, l)| l)
}

/// Basis elements indexed by (t, role).
struct Pools<'a> {
    by: BTreeMap<(usize, Role), &'a CanonicalElement>,
    t1: Vec<usize>,
    /// T_0 minus the largest class.
    t_tilde: Vec<usize>,
    /// The largest class.
    t_hat: Vec<usize>,
}

impl<'a> Pools<'a> {
    fn get(&self, t: usize, role: Role) -> &'a CanonicalElement {
        self.by[&(t, role)]
    }
    fn e(&self, t: usize, i: usize, j: usize) -> &'a CanonicalElement {
        self.get(t, Role::Unit(i, j))
    }
    fn row(&self, t: usize, i: usize) -> &'a CanonicalElement {
        self.get(t, Role::Row(i))
    }
}

/// m basis elements with theta summing to sum gamma_{<=m} > 0: every
/// element with theta <= 0 and then elements with theta = 1.
fn positive_fill(basis: &[CanonicalElement], m: usize) -> Result<Vec<&CanonicalElement>, PiError> {
    let mut out: Vec<&CanonicalElement> = basis.iter().filter(|b| b.theta <= 0).collect();
    if out.len() > m {
        return Err(PiError::Internal("positive column too short".into()));
    }
    out.extend(basis.iter().filter(|b| b.theta == 1).take(m - out.len()));
    Ok(out)
}

/// m basis elements with theta summing to q, for sum gamma_{<=m} <= q <= 0.
fn negative_fill<'a>(p: &Pools<'a>, m: usize, q: i64) -> Result<Vec<&'a CanonicalElement>, PiError> {
    let (n1, nt, nh) = (p.t1.len() as i64, p.t_tilde.len() as i64, p.t_hat.len() as i64);
    let big_a = nt + n1; // elements with theta = -1
    let m_i = m as i64;
    let mut out: Vec<&CanonicalElement> = Vec::new();
    let short = || PiError::Internal(format!("column fill for m = {m}, q = {q} ran out of elements"));
    let take = |v: &[usize], k: i64| -> Result<Vec<usize>, PiError> {
        if k < 0 || k as usize > v.len() {
            return Err(short());
        }
        Ok(v[..k as usize].to_vec())
    };
    if m_i < 2 * big_a + q {
        let l = (m_i + q).div_euclid(2);
        if l < 0 {
            return Err(short());
        }
        if l <= n1 + q {
            out.extend(take(&p.t1, l - q)?.into_iter().map(|t| p.e(t, 1, 2)));
            out.extend(take(&p.t1, l)?.into_iter().map(|t| p.e(t, 2, 1)));
        } else if l <= n1 {
            out.extend(p.t1.iter().map(|&t| p.e(t, 1, 2)));
            out.extend(take(&p.t_tilde, l - q - n1)?.into_iter().map(|t| p.row(t, 1)));
            out.extend(take(&p.t1, l)?.into_iter().map(|t| p.e(t, 2, 1)));
        } else {
            out.extend(p.t1.iter().map(|&t| p.e(t, 1, 2)));
            out.extend(take(&p.t_tilde, l - q - n1)?.into_iter().map(|t| p.row(t, 1)));
            out.extend(p.t1.iter().map(|&t| p.e(t, 2, 1)));
            out.extend(take(&p.t_hat, l - n1)?.into_iter().map(|t| p.row(t, 2)));
        }
        if m_i == 2 * l - q + 1 {
            out.push(p.row(*p.t_hat.first().ok_or_else(short)?, 1));
        }
    } else {
        let mut extra = m_i - 2 * big_a - q;
        let mut grab = |cap: i64| {
            let g = extra.min(cap);
            extra -= g;
            g
        };
        let (k, l, u, s) = (grab(n1), grab(n1), grab(nt), grab(nh));
        if extra > 0 {
            return Err(short());
        }
        let d = big_a + q;
        out.extend(p.t1.iter().map(|&t| p.e(t, 1, 2)));
        out.extend(take(&p.t1, k)?.into_iter().map(|t| p.e(t, 1, 1)));
        out.extend(take(&p.t1, d.min(n1))?.into_iter().map(|t| p.e(t, 2, 1)));
        out.extend(take(&p.t1, l)?.into_iter().map(|t| p.e(t, 2, 2)));
        out.extend(p.t_tilde.iter().map(|&t| p.row(t, 1)));
        out.extend(take(&p.t_tilde, u)?.into_iter().map(|t| p.row(t, 2)));
        out.extend(take(&p.t_hat, s)?.into_iter().map(|t| p.row(t, 1)));
        if d > n1 {
            out.extend(take(&p.t_hat, d - n1)?.into_iter().map(|t| p.row(t, 2)));
        }
    }
    let sum: i64 = out.iter().map(|b| b.theta).sum();
    let distinct = out.iter().enumerate().all(|(i, b)| out[..i].iter().all(|c| !std::ptr::eq(*b, *c)));
    if out.len() != m || sum != q || !distinct {
        return Err(PiError::Internal(format!("column fill for m = {m}, q = {q} has {} elements, theta sum {sum}", out.len())));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Minus,
    Zero,
    Plus,
}

fn kind(thetas: &[i64]) -> Kind {
    let has = |x| thetas.contains(&x);
    match (has(-1), has(1)) {
        (true, false) => Kind::Minus,
        (false, true) => Kind::Plus,
        _ => Kind::Zero,
    }
}

fn non_triangle_witness(a: &GradedAlgebra, cls: &M2Classification, n: usize) -> Result<Witness, PiError> {
    let field = a.field();
    let basis = canonical_basis(a, cls).map_err(not_applicable)?;
    let mut gamma: Vec<i64> = basis.iter().map(|b| b.theta).collect();
    gamma.sort_unstable();
    let lambda = non_triangle_partition(&gamma, n)
        .ok_or_else(|| PiError::NotApplicable(format!("no admissible partition of {n}")))?;
    let hat = cls.largest_class().to_vec();
    let pools = Pools {
        by: basis.iter().map(|b| ((b.t, b.role), b)).collect(),
        t1: cls.t1.clone(),
        t_tilde: cls.t0.iter().copied().filter(|t| !hat.contains(t)).collect(),
        t_hat: hat,
    };

    let heights = lambda.conjugate().parts().to_vec();
    let cols = heights.len();
    let lambda2 = lambda.part(1);
    let m: Vec<i64> = heights.iter().map(|&h| gamma[..h].iter().sum()).collect();
    let ell = m.iter().take_while(|&&x| x > 0).count();
    // half the positive surplus, to be absorbed by N and the q's
    let mut rest: i64 = m[..ell].iter().sum::<i64>() / 2;
    let big_n = rest.min(((lambda.part(0) - lambda2) / 2) as i64);
    rest -= big_n;
    let mut q = vec![0i64; cols];
    for c in (ell..lambda2).step_by(2) {
        let v = m[c].max(-rest);
        rest += v;
        q[c] = v;
        q[c + 1] = v;
    }
    if rest != 0 {
        return Err(PiError::Internal("theta surplus could not be absorbed".into()));
    }
    for (c, qc) in q.iter_mut().enumerate().skip(lambda2) {
        *qc = if c < lambda2 + 2 * big_n as usize { -1 } else { 0 };
    }

    // column fills, grouped by component
    let mut groups: Vec<BTreeMap<usize, Vec<&CanonicalElement>>> = Vec::with_capacity(cols);
    for c in 0..cols {
        let fill = if c < ell { positive_fill(&basis, heights[c])? } else { negative_fill(&pools, heights[c], q[c])? };
        let mut g: BTreeMap<usize, Vec<&CanonicalElement>> = BTreeMap::new();
        for b in fill {
            g.entry(b.t).or_default().push(b);
        }
        for v in g.values_mut() {
            v.sort_by_key(|b| (b.role_key(), b.theta));
        }
        groups.push(g);
    }
    let total: i64 = groups.iter().flat_map(|g| g.values().flatten()).map(|b| b.theta).sum();
    if total != 0 {
        return Err(PiError::Internal(format!("theta sum of the substitution is {total}")));
    }

    // variables column by column
    let mut labels = Vec::with_capacity(n);
    let mut subs = Vec::with_capacity(n);
    let mut vars: Vec<BTreeMap<usize, Vec<usize>>> = Vec::with_capacity(cols);
    let mut sets = Vec::with_capacity(cols);
    for g in &groups {
        let mut vm = BTreeMap::new();
        let mut set = Vec::new();
        for (&t, els) in g {
            let vs: Vec<usize> = els
                .iter()
                .map(|b| {
                    labels.push(t);
                    subs.push(b.vector.clone());
                    labels.len() - 1
                })
                .collect();
            set.extend_from_slice(&vs);
            vm.insert(t, vs);
        }
        vars.push(vm);
        sets.push(set);
    }

    let kinds: Vec<BTreeMap<usize, Kind>> = groups
        .iter()
        .map(|g| g.iter().map(|(&t, els)| (t, kind(&els.iter().map(|b| b.theta).collect::<Vec<_>>()))).collect())
        .collect();
    let list = |k: Kind| -> Vec<(usize, usize)> {
        kinds.iter().enumerate().flat_map(|(c, m)| m.iter().filter(|(_, &x)| x == k).map(move |(&t, _)| (c, t))).collect()
    };
    let (plus, minus_) = (list(Kind::Plus), list(Kind::Minus));
    if plus.len() != minus_.len() {
        return Err(PiError::Internal("unbalanced theta groups".into()));
    }
    let partner: BTreeMap<(usize, usize), (usize, usize)> = plus.iter().copied().zip(minus_.iter().copied()).collect();

    let f_it = |c: usize, t: usize| -> Words {
        let vs = &vars[c][&t];
        match vs.len() {
            1 => var(field, vs[0]),
            _ => standard(field, vs),
        }
    };
    let mut factors: Vec<Words> = Vec::new();
    for i in 0..lambda2 / 2 {
        let (c1, c2) = (2 * i, 2 * i + 1);
        for (&t, &k) in &kinds[c1] {
            if k != Kind::Zero {
                continue;
            }
            if vars[c1][&t].len() == 4 {
                factors.push(f0_words(field, &vars[c1][&t], &vars[c2][&t]));
            } else {
                factors.push(product(&f_it(c1, t), &f_it(c2, t)));
            }
        }
        for (&t, &k) in &kinds[c1] {
            if k != Kind::Plus {
                continue;
            }
            for c in [c1, c2] {
                let (pc, pt) = partner[&(c, t)];
                factors.push(f_it(pc, pt));
                factors.push(f_it(c, t));
            }
        }
    }
    for c in lambda2..cols {
        for (&t, &k) in &kinds[c] {
            if k == Kind::Zero {
                factors.push(f_it(c, t));
            }
        }
    }
    check_budget(factors.iter().map(|f| f.len() as u128).product())?;
    let words = product_all(field, &factors);
    if words.first().is_some_and(|(w, _)| w.len() != n) {
        return Err(PiError::Internal("the product does not use every variable once".into()));
    }
    finish(a, WitnessCase::NonTriangle, labels, words, subs, sets)
}

impl CanonicalElement {
    fn role_key(&self) -> (usize, usize) {
        match self.role {
            Role::Row(i) => (i, 0),
            Role::Unit(i, j) => (i, j),
            Role::Plain(i) => (i, 0),
        }
    }
}

#[cfg(test)]
mod tests;
