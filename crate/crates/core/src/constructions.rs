//! Builders for graded algebras: Munn algebras, the existence construction
//! from modules over M_k(F), gradings induced by block decompositions of
//! M_k(F), the M_2 family, and named fixtures.

use thiserror::Error;

use crate::algebra::{
    flat_mul, is_direct, is_left_ideal, is_right_ideal, jacobson_radical, left_ideal_from_row, matrix_algebra,
    split_along, sum_all, Algebra, AlgebraError, GradedAlgebra, Subspace,
};
use crate::kernel::{is_zero_vec, solve_or_member, sub_vec, unit_vec, zero_vec, Field, Mat, Scalar, Vector};
use crate::semigroups::{self, ReesPresentation};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown fixture {name:?}; available: {}", available.join(", "))]
    UnknownFixture { name: String, available: Vec<String> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Semigroup(#[from] semigroups::SemigroupError),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, ConstructionError> {
    Err(ConstructionError::Invalid(msg.into()))
}

/// An algebra together with its projection psi onto M_k(F), given as a
/// k^2 x dim matrix on the algebra's basis.
#[derive(Clone, Debug)]
pub struct Constructed {
    pub algebra: GradedAlgebra,
    pub k: usize,
    pub psi: Mat,
}

/// Data for the existence construction. Each module is given by a basis of
/// its image under the embedding phi into M_k(F).
#[derive(Clone, Debug)]
pub struct ExistenceInput {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    /// f'_1..f'_n
    pub row_idempotents: Vec<Mat>,
    /// f_1..f_m
    pub column_idempotents: Vec<Mat>,
    /// phi(J^{10}_{*j}) for j = 1..m, a left ideal annihilated by f_j on the right.
    pub left_modules: Vec<Vec<Mat>>,
    /// phi(J^{01}_{i*}) for i = 1..n, a right ideal annihilated by f'_i on the left.
    pub right_modules: Vec<Vec<Mat>>,
}

/// Subspaces B_ij of M_k(F) and a sandwich p_{jl}, stored m x n.
#[derive(Clone, Debug)]
pub struct DecompositionInput {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    /// Spanning sets, blocks[i][j] for B_ij.
    pub blocks: Vec<Vec<Vec<Mat>>>,
    pub sandwich: Vec<Vec<bool>>,
}

fn flat(k: usize, m: &Mat) -> Result<Vector, ConstructionError> {
    if m.rows() != k || m.cols() != k {
        return invalid(format!("expected a {k}x{k} matrix, found {}x{}", m.rows(), m.cols()));
    }
    Ok(m.entries().to_vec())
}

fn common_field(mats: impl IntoIterator<Item = Mat>) -> Result<Field, ConstructionError> {
    let mut field = None;
    for m in mats {
        match (field, m.field().map_err(|e| ConstructionError::Invalid(e.to_string()))?) {
            (_, None) => {}
            (None, Some(f)) => field = Some(f),
            (Some(a), Some(b)) if a != b => return invalid("mixed scalar fields"),
            _ => {}
        }
    }
    Ok(field.unwrap_or(Field::Rational))
}

fn check_idempotents(k: usize, f: Field, fam: &[Vector], what: &str) -> Result<(), ConstructionError> {
    let mut total = zero_vec(f, k * k);
    for (x, e) in fam.iter().enumerate() {
        for (y, g) in fam.iter().enumerate() {
            let p = flat_mul(k, e, g);
            if x == y && p != *e {
                return invalid(format!("{what}_{} is not idempotent", x + 1));
            }
            if x != y && !is_zero_vec(&p) {
                return invalid(format!("{what}_{} {what}_{} != 0", x + 1, y + 1));
            }
        }
        total = crate::kernel::add_vec(&total, e);
    }
    if total != identity_flat(f, k) {
        return invalid(format!("the {what} do not sum to 1"));
    }
    Ok(())
}

fn identity_flat(f: Field, k: usize) -> Vector {
    Mat::identity(f, k).entries().to_vec()
}

fn coords_in(basis: &[Vector], v: &[Scalar]) -> Vector {
    solve_or_member(basis, v).expect("shapes agree").expect("closed by construction")
}

/// The algebra B + sum J^{01}_{i*} + sum J^{10}_{*j} + sum J_ij with
/// (b1, v1, w1, u1)(b2, v2, w2, u2) = (b1 b2, v1 b2, b1 w2, mu(v1, w2)),
/// graded by the n x m Rees semigroup with all entries e.
pub fn existence_construct(inp: &ExistenceInput) -> Result<Constructed, ConstructionError> {
    let (k, n, m) = (inp.k, inp.n, inp.m);
    if k == 0 || n == 0 || m == 0 {
        return invalid("k, n and m must be positive");
    }
    if inp.row_idempotents.len() != n || inp.right_modules.len() != n {
        return invalid("expected n row idempotents and n right modules");
    }
    if inp.column_idempotents.len() != m || inp.left_modules.len() != m {
        return invalid("expected m column idempotents and m left modules");
    }
    let all = inp
        .row_idempotents
        .iter()
        .chain(&inp.column_idempotents)
        .chain(inp.left_modules.iter().flatten())
        .chain(inp.right_modules.iter().flatten())
        .cloned();
    let f = common_field(all)?;
    let kk = k * k;
    let fp: Vec<Vector> = inp.row_idempotents.iter().map(|x| flat(k, x)).collect::<Result<_, _>>()?;
    let fc: Vec<Vector> = inp.column_idempotents.iter().map(|x| flat(k, x)).collect::<Result<_, _>>()?;
    check_idempotents(k, f, &fp, "f'")?;
    check_idempotents(k, f, &fc, "f")?;
    let w10: Vec<Vec<Vector>> =
        inp.left_modules.iter().map(|ms| ms.iter().map(|x| flat(k, x)).collect()).collect::<Result<_, _>>()?;
    let w01: Vec<Vec<Vector>> =
        inp.right_modules.iter().map(|ms| ms.iter().map(|x| flat(k, x)).collect()).collect::<Result<_, _>>()?;
    for (j, imgs) in w10.iter().enumerate() {
        let sp = Subspace::span(f, kk, imgs.iter().cloned());
        if sp.dim() != imgs.len() {
            return invalid(format!("phi on J10_*{} is not injective", j + 1));
        }
        if !is_left_ideal(k, &sp) {
            return invalid(format!("phi(J10_*{}) is not a left ideal", j + 1));
        }
        if imgs.iter().any(|x| !is_zero_vec(&flat_mul(k, x, &fc[j]))) {
            return invalid(format!("phi(J10_*{}) f_{} != 0", j + 1, j + 1));
        }
    }
    for (i, imgs) in w01.iter().enumerate() {
        let sp = Subspace::span(f, kk, imgs.iter().cloned());
        if sp.dim() != imgs.len() {
            return invalid(format!("phi on J01_{}* is not injective", i + 1));
        }
        if !is_right_ideal(k, &sp) {
            return invalid(format!("phi(J01_{}*) is not a right ideal", i + 1));
        }
        if imgs.iter().any(|x| !is_zero_vec(&flat_mul(k, &fp[i], x))) {
            return invalid(format!("f'_{} phi(J01_{}*) != 0", i + 1, i + 1));
        }
    }
    // J_ij is the echelon basis of phi(J01_i*) phi(J10_*j) itself.
    let jij: Vec<Vec<Vec<Vector>>> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let prods = w01[i].iter().flat_map(|v| w10[j].iter().map(move |w| flat_mul(k, v, w)));
                    Subspace::span(f, kk, prods).basis().to_vec()
                })
                .collect()
        })
        .collect();

    // Raw coordinates: [B | J01_1..n | J10_1..m | J_11..J_nm].
    let off01: Vec<usize> = offsets(kk, w01.iter().map(Vec::len));
    let start10 = kk + w01.iter().map(Vec::len).sum::<usize>();
    let off10: Vec<usize> = offsets(start10, w10.iter().map(Vec::len));
    let start_j = start10 + w10.iter().map(Vec::len).sum::<usize>();
    let offj: Vec<usize> = offsets(start_j, jij.iter().flatten().map(Vec::len));
    let dim = start_j + jij.iter().flatten().map(Vec::len).sum::<usize>();
    let oj = |i: usize, j: usize| offj[i * m + j];

    #[derive(Clone, Copy)]
    enum Slot {
        B(usize),
        J01(usize, usize),
        J10(usize, usize),
        J,
    }
    let mut slots = Vec::with_capacity(dim);
    slots.extend((0..kk).map(Slot::B));
    for (i, imgs) in w01.iter().enumerate() {
        slots.extend((0..imgs.len()).map(|l| Slot::J01(i, l)));
    }
    for (j, imgs) in w10.iter().enumerate() {
        slots.extend((0..imgs.len()).map(|l| Slot::J10(j, l)));
    }
    for i in 0..n {
        for j in 0..m {
            slots.extend((0..jij[i][j].len()).map(|_| Slot::J));
        }
    }
    let emb = |at: usize, c: &[Scalar], v: &mut Vector| {
        for (t, x) in c.iter().enumerate() {
            v[at + t] = x.clone();
        }
    };
    let mut table = Vec::with_capacity(dim * dim);
    for &x in &slots {
        for &y in &slots {
            let mut out = zero_vec(f, dim);
            match (x, y) {
                (Slot::B(a), Slot::B(b)) => {
                    emb(0, &flat_mul(k, &unit_vec(f, kk, a), &unit_vec(f, kk, b)), &mut out);
                }
                (Slot::J01(i, l), Slot::B(b)) => {
                    let p = flat_mul(k, &w01[i][l], &unit_vec(f, kk, b));
                    emb(off01[i], &coords_in(&w01[i], &p), &mut out);
                }
                (Slot::B(a), Slot::J10(j, l)) => {
                    let p = flat_mul(k, &unit_vec(f, kk, a), &w10[j][l]);
                    emb(off10[j], &coords_in(&w10[j], &p), &mut out);
                }
                (Slot::J01(i, l), Slot::J10(j, r)) => {
                    let p = flat_mul(k, &w01[i][l], &w10[j][r]);
                    emb(oj(i, j), &coords_in(&jij[i][j], &p), &mut out);
                }
                _ => {}
            }
            table.push(out);
        }
    }
    let raw = Algebra::new(f, dim, table)?;

    // Raw vectors for (b, v, w, u) pieces.
    let lift_b = |b: &[Scalar]| {
        let mut v = zero_vec(f, dim);
        emb(0, b, &mut v);
        v
    };
    let mut basis = Vec::with_capacity(dim);
    let mut degree = Vec::with_capacity(dim);
    let mut names = Vec::with_capacity(dim);
    let mut comps = Vec::new();
    let pres = ReesPresentation::all_e(n, m);
    for i in 0..n {
        for j in 0..m {
            let mut gens: Vec<Vector> = Vec::new();
            for u in 0..kk {
                let e = unit_vec(f, kk, u);
                gens.push(lift_b(&flat_mul(k, &flat_mul(k, &fp[i], &e), &fc[j])));
            }
            // (phi(v), v, 0, 0) for v in J01_i* f_j
            for img in &w01[i] {
                let pv = flat_mul(k, img, &fc[j]);
                let mut x = lift_b(&pv);
                emb(off01[i], &coords_in(&w01[i], &pv), &mut x);
                gens.push(x);
            }
            // (phi(w), 0, w, 0) for w in f'_i J10_*j
            for img in &w10[j] {
                let pw = flat_mul(k, &fp[i], img);
                let mut x = lift_b(&pw);
                emb(off10[j], &coords_in(&w10[j], &pw), &mut x);
                gens.push(x);
            }
            // (phi(v)phi(w), v phi(w), phi(v) w, mu(v, w))
            for v in &w01[i] {
                for w in &w10[j] {
                    let p = flat_mul(k, v, w);
                    let mut x = lift_b(&p);
                    emb(off01[i], &coords_in(&w01[i], &p), &mut x);
                    emb(off10[j], &coords_in(&w10[j], &p), &mut x);
                    emb(oj(i, j), &coords_in(&jij[i][j], &p), &mut x);
                    gens.push(x);
                }
            }
            let comp = Subspace::span(f, dim, gens);
            for (r, b) in comp.basis().iter().enumerate() {
                basis.push(b.clone());
                degree.push(pres.element(i, j));
                names.push(format!("a{}{}_{}", i + 1, j + 1, r + 1));
            }
            comps.push(comp);
        }
    }
    let refs: Vec<&Subspace> = comps.iter().collect();
    if !is_direct(&refs) || basis.len() != dim {
        return Err(AlgebraError::Internal("components do not decompose the constructed algebra".into()).into());
    }
    let alg = raw.in_basis(&basis)?;
    let sg = semigroups::rees_semigroup(&pres)?;
    let algebra = GradedAlgebra::new(alg, sg, degree, Some(names))?;
    let mut psi = Mat::zeros(f, kk, dim);
    for (c, b) in basis.iter().enumerate() {
        for r in 0..kk {
            psi.set(r, c, b[r].clone());
        }
    }
    if let Some(v) = algebra.validate().first() {
        return Err(AlgebraError::Internal(format!("constructed algebra fails validation: {v:?}")).into());
    }
    Ok(Constructed { algebra, k, psi })
}

fn offsets(start: usize, lens: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut at = start;
    lens.map(|l| {
        let o = at;
        at += l;
        o
    })
    .collect()
}

/// Complements of L_j ∩ (L_1 + ... + L_{j-1}) inside each L_j, as
/// one-sided ideals of `alg`, and the decomposition of 1 along them.
pub(crate) fn peirce_idempotents(alg: &Algebra, spaces: &[Subspace], left_ideals: bool) -> Option<Vec<Vector>> {
    let mut acc = Subspace::zero(alg.field(), alg.dim());
    let mut tildes = Vec::with_capacity(spaces.len());
    for s in spaces {
        let kk = s.intersect(&acc);
        let t = if left_ideals {
            let e = alg.right_identity_in(&kk)?;
            alg.span(s.basis().iter().map(|x| sub_vec(x, &alg.mul(x, &e))))
        } else {
            let e = alg.left_identity_in(&kk)?;
            alg.span(s.basis().iter().map(|x| sub_vec(x, &alg.mul(&e, x))))
        };
        acc = acc.sum(s);
        tildes.push(t);
    }
    let one = alg.identity()?;
    split_along(alg, &tildes, &one)
}

/// Builds a graded algebra A with psi(A_ij) = B_ij and ker psi = J(A).
pub fn grading_from_decomposition(inp: &DecompositionInput) -> Result<Constructed, ConstructionError> {
    let (k, n, m) = (inp.k, inp.n, inp.m);
    if k == 0 || n == 0 || m == 0 {
        return invalid("k, n and m must be positive");
    }
    if inp.blocks.len() != n || inp.blocks.iter().any(|r| r.len() != m) {
        return invalid("expected an n x m array of blocks");
    }
    let pres = ReesPresentation::new(n, m, inp.sandwich.clone())?;
    let f = common_field(inp.blocks.iter().flatten().flatten().cloned())?;
    let kk = k * k;
    let mk = matrix_algebra(f, k);
    let mut blocks = vec![vec![Subspace::zero(f, kk); m]; n];
    for i in 0..n {
        for j in 0..m {
            let vs: Vec<Vector> = inp.blocks[i][j].iter().map(|x| flat(k, x)).collect::<Result<_, _>>()?;
            blocks[i][j] = Subspace::span(f, kk, vs);
        }
    }
    let flat_blocks: Vec<Subspace> = blocks.iter().flatten().cloned().collect();
    if sum_all(f, kk, &flat_blocks).dim() != kk {
        return invalid("the blocks do not span M_k");
    }
    for i in 0..n {
        for j in 0..m {
            for l in 0..n {
                for r in 0..m {
                    let p = mk.product_space(&blocks[i][j], &blocks[l][r]);
                    if !p.is_subspace_of(&blocks[i][r]) {
                        return invalid(format!("B_{}{} B_{}{} is not inside B_{}{}", i + 1, j + 1, l + 1, r + 1, i + 1, r + 1));
                    }
                    if !pres.sandwich[j][l] && !p.is_zero() {
                        return invalid(format!("B_{}{} B_{}{} != 0 although p_{}{} = 0", i + 1, j + 1, l + 1, r + 1, j + 1, l + 1));
                    }
                }
            }
        }
    }
    let lbar: Vec<Subspace> = (0..m).map(|j| sum_all(f, kk, &(0..n).map(|i| blocks[i][j].clone()).collect::<Vec<_>>())).collect();
    let rbar: Vec<Subspace> = (0..n).map(|i| sum_all(f, kk, &blocks[i])).collect();
    let fc = peirce_idempotents(&mk, &lbar, true).ok_or_else(|| ConstructionError::Invalid("column spaces are not left ideals".into()))?;
    let fp = peirce_idempotents(&mk, &rbar, false).ok_or_else(|| ConstructionError::Invalid("row spaces are not right ideals".into()))?;
    // W10_*j = L_j (1 - f_j), W01_i* = (1 - f'_i) R_i
    let w10: Vec<Vec<Mat>> = lbar
        .iter()
        .zip(&fc)
        .map(|(l, e)| mk.span(l.basis().iter().map(|x| sub_vec(x, &mk.mul(x, e)))).basis().iter().map(|v| to_mat(k, v)).collect())
        .collect();
    let w01: Vec<Vec<Mat>> = rbar
        .iter()
        .zip(&fp)
        .map(|(r, e)| mk.span(r.basis().iter().map(|x| sub_vec(x, &mk.mul(e, x)))).basis().iter().map(|v| to_mat(k, v)).collect())
        .collect();
    let ex = ExistenceInput {
        k,
        n,
        m,
        row_idempotents: fp.iter().map(|v| to_mat(k, v)).collect(),
        column_idempotents: fc.iter().map(|v| to_mat(k, v)).collect(),
        left_modules: w10,
        right_modules: w01,
    };
    let built = existence_construct(&ex)?;
    let sg = semigroups::rees_semigroup(&pres)?;
    let algebra = built.algebra.regrade(sg, built.algebra.degree.clone())?;
    if let Some(v) = algebra.validate().first() {
        return Err(AlgebraError::Internal(format!("regraded algebra fails validation: {v:?}")).into());
    }
    // psi(A_ij) = B_ij and ker psi = J(A)
    for i in 0..n {
        for j in 0..m {
            let comp = algebra.component(pres.element(i, j));
            let img = Subspace::span(f, kk, comp.basis().iter().map(|b| built.psi.mul_vec(b)));
            if img != blocks[i][j] {
                return Err(AlgebraError::Internal(format!("psi(A_{}{}) != B_{}{}", i + 1, j + 1, i + 1, j + 1)).into());
            }
        }
    }
    let ker = crate::kernel::kernel_basis(&built.psi).map_err(AlgebraError::from)?;
    if algebra.alg.span(ker) != jacobson_radical(&algebra.alg)? {
        return Err(AlgebraError::Internal("ker psi != J(A)".into()).into());
    }
    Ok(Constructed { algebra, k, psi: built.psi })
}

fn to_mat(k: usize, v: &[Scalar]) -> Mat {
    Mat::new(k, k, v.to_vec()).expect("k*k entries")
}

/// Row catalogue (1,0), (0,1), (1,1), (1,2), (1,3), ...
pub fn m2_row(c: usize) -> [i64; 2] {
    match c {
        0 => [1, 0],
        1 => [0, 1],
        _ => [1, c as i64 - 1],
    }
}

/// Input for an M_2 algebra graded by the right zero band of t0 + t1
/// elements: the first t0 slots carry minimal left ideals, equal within a
/// class, and the last t1 slots carry all of M_2.
pub fn m2_family_input(t0: usize, t1: usize, class_sizes: &[usize]) -> Result<DecompositionInput, ConstructionError> {
    if t0 + t1 == 0 {
        return invalid("t0 + t1 must be positive");
    }
    if class_sizes.iter().sum::<usize>() != t0 || class_sizes.contains(&0) {
        return invalid(format!("class sizes {class_sizes:?} do not partition {t0} elements"));
    }
    if t1 == 0 && class_sizes.len() < 2 {
        return invalid("with t1 = 0 at least two classes are needed for the components to generate M_2");
    }
    let q = Field::Rational;
    let mut blocks = Vec::with_capacity(t0 + t1);
    for (c, &size) in class_sizes.iter().enumerate() {
        let row = m2_row(c);
        let ideal = left_ideal_from_row(2, &[Scalar::from_int(q, row[0]), Scalar::from_int(q, row[1])]);
        for _ in 0..size {
            blocks.push(ideal.basis().iter().map(|v| to_mat(2, v)).collect());
        }
    }
    for _ in 0..t1 {
        blocks.push((0..4).map(|u| to_mat(2, &unit_vec(q, 4, u))).collect());
    }
    Ok(DecompositionInput { k: 2, n: 1, m: t0 + t1, blocks: vec![blocks], sandwich: vec![vec![true]; t0 + t1] })
}

pub fn m2_family(t0: usize, t1: usize, class_sizes: &[usize]) -> Result<GradedAlgebra, ConstructionError> {
    Ok(grading_from_decomposition(&m2_family_input(t0, t1, class_sizes)?)?.algebra)
}

/// M(F, n, m, P): n x m matrices with D o E = D P E, where P is m x n.
/// Graded by the n x m Rees semigroup with all entries e.
pub fn munn_algebra(n: usize, m: usize, sandwich: &Mat) -> Result<GradedAlgebra, ConstructionError> {
    if n == 0 || m == 0 {
        return invalid("n and m must be positive");
    }
    if sandwich.rows() != m || sandwich.cols() != n {
        return invalid(format!("sandwich must be {m}x{n}"));
    }
    for j in 0..m {
        if (0..n).all(|i| sandwich.get(j, i).is_zero()) {
            return invalid(format!("sandwich row {} is zero", j + 1));
        }
    }
    for i in 0..n {
        if (0..m).all(|j| sandwich.get(j, i).is_zero()) {
            return invalid(format!("sandwich column {} is zero", i + 1));
        }
    }
    let f = common_field([sandwich.clone()])?;
    let dim = n * m;
    let mut table = Vec::with_capacity(dim * dim);
    for x in 0..dim {
        let (a, b) = (x / m, x % m);
        for y in 0..dim {
            let (c, d) = (y / m, y % m);
            let mut v = zero_vec(f, dim);
            v[a * m + d] = sandwich.get(b, c).clone();
            table.push(v);
        }
    }
    let pres = ReesPresentation::all_e(n, m);
    let names = (0..dim).map(|x| format!("E{}{}", x / m + 1, x % m + 1)).collect();
    let degree = (0..dim).map(|x| pres.element(x / m, x % m)).collect();
    Ok(GradedAlgebra::new(Algebra::new(f, dim, table)?, semigroups::rees_semigroup(&pres)?, degree, Some(names))?)
}

/// {N : P N P = 0} inside M(F, n, m, P).
pub fn munn_radical_formula(n: usize, m: usize, sandwich: &Mat) -> Subspace {
    let f = sandwich.field().ok().flatten().unwrap_or(Field::Rational);
    let dim = n * m;
    // Row (s, t) of the system: (P N P)_{st} = sum_{a,b} P_sa N_ab P_bt.
    let mut rows = crate::kernel::Echelon::new(f, dim);
    for s in 0..m {
        for t in 0..n {
            rows.insert((0..dim).map(|x| sandwich.get(s, x / m) * sandwich.get(x % m, t)).collect());
        }
    }
    Subspace::span(f, dim, rows.kernel())
}

pub const FIXTURES: &[&str] =
    &["ft-rzb2", "m2-dual-numbers", "ut2-z2", "t3-two-b", "m2-trivial", "ut2-trivial", "munn-ones-2x2", "field-trivial", "zero-1"];

fn q(x: i64) -> Scalar {
    Scalar::from_int(Field::Rational, x)
}

fn table_from(dim: usize, prods: &[(usize, usize, usize, i64)]) -> Vec<Vector> {
    let mut t = vec![zero_vec(Field::Rational, dim); dim * dim];
    for &(i, j, k, c) in prods {
        t[i * dim + j][k] = q(c);
    }
    t
}

fn names(xs: &[&str]) -> Option<Vec<String>> {
    Some(xs.iter().map(|s| s.to_string()).collect())
}

/// M_2(F[X]/(X^2)) realized inside M_4(F) by a + bX -> [[a, 0], [b, a]].
fn dual_number_matrix(entries: [[(i64, i64); 2]; 2]) -> Mat {
    let mut m = Mat::zeros(Field::Rational, 4, 4);
    for (p, row) in entries.iter().enumerate() {
        for (c, &(a, b)) in row.iter().enumerate() {
            m.set(2 * p, 2 * c, q(a));
            m.set(2 * p + 1, 2 * c + 1, q(a));
            m.set(2 * p + 1, 2 * c, q(b));
        }
    }
    m
}

/// The basis (1 X; 0 0), (X 0; 0 0) | (0 1; 0 0), (0 X; 0 0) |
/// (0 0; 1 X), (0 0; X 0) | (0 0; 0 1), (0 0; 0 X) of the four blocks.
pub fn dual_numbers_basis() -> Vec<Mat> {
    let z = (0, 0);
    vec![
        dual_number_matrix([[(1, 0), (0, 1)], [z, z]]),
        dual_number_matrix([[(0, 1), z], [z, z]]),
        dual_number_matrix([[z, (1, 0)], [z, z]]),
        dual_number_matrix([[z, (0, 1)], [z, z]]),
        dual_number_matrix([[z, z], [(1, 0), (0, 1)]]),
        dual_number_matrix([[z, z], [(0, 1), z]]),
        dual_number_matrix([[z, z], [z, (1, 0)]]),
        dual_number_matrix([[z, z], [z, (0, 1)]]),
    ]
}

/// The dual-numbers algebra graded by the 2 x 2 Rees semigroup with the
/// given sandwich p_{jl} (stored by column index j first).
pub fn dual_numbers_with_sandwich(sandwich: Vec<Vec<bool>>) -> Result<GradedAlgebra, ConstructionError> {
    let alg = Algebra::from_matrices(Field::Rational, &dual_numbers_basis())?;
    let pres = ReesPresentation::new(2, 2, sandwich)?;
    let degree = (0..8).map(|b| pres.element(b / 4, (b / 2) % 2)).collect();
    Ok(GradedAlgebra::new(
        alg,
        semigroups::rees_semigroup(&pres)?,
        degree,
        names(&["a11", "a11x", "a12", "a12x", "a21", "a21x", "a22", "a22x"]),
    )?)
}

pub fn fixture(name: &str) -> Result<GradedAlgebra, ConstructionError> {
    let rat = Field::Rational;
    let g = match name {
        // e, f with st = t
        "ft-rzb2" => GradedAlgebra::new(
            Algebra::new(rat, 2, table_from(2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 0, 1), (1, 1, 1, 1)]))?,
            semigroups::right_zero_band(2)?,
            vec![0, 1],
            names(&["e", "f"]),
        )?,
        // w_j v_l is zero only for (j, l) = (2, 1).
        "m2-dual-numbers" => dual_numbers_with_sandwich(vec![vec![true, true], vec![false, true]])?,
        // e11, e12, e22 with e12 odd
        "ut2-z2" => GradedAlgebra::new(
            Algebra::new(rat, 3, table_from(3, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)]))?,
            semigroups::cyclic_group(2)?,
            vec![0, 1, 0],
            names(&["e11", "e12", "e22"]),
        )?,
        "t3-two-b" => {
            let e = |u: usize| to_mat(2, &unit_vec(rat, 4, u));
            let inp = ExistenceInput {
                k: 2,
                n: 1,
                m: 2,
                row_idempotents: vec![Mat::identity(rat, 2)],
                column_idempotents: vec![Mat::identity(rat, 2), Mat::zeros(rat, 2, 2)],
                left_modules: vec![vec![], vec![e(1), e(3)]],
                right_modules: vec![vec![]],
            };
            let a = existence_construct(&inp)?.algebra;
            a.regrade(semigroups::right_zero_band(2)?, a.degree.clone())?
        }
        "m2-trivial" => GradedAlgebra::trivially_graded(matrix_algebra(rat, 2)),
        "ut2-trivial" => GradedAlgebra::trivially_graded(Algebra::new(
            rat,
            3,
            table_from(3, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)]),
        )?),
        "munn-ones-2x2" => munn_algebra(2, 2, &Mat::from_ints(&[&[1, 1], &[1, 1]]))?,
        "field-trivial" => GradedAlgebra::trivially_graded(Algebra::new(rat, 1, table_from(1, &[(0, 0, 0, 1)]))?),
        "zero-1" => GradedAlgebra::trivially_graded(Algebra::new(rat, 1, vec![vec![q(0)]])?),
        _ => {
            return Err(ConstructionError::UnknownFixture {
                name: name.to_string(),
                available: FIXTURES.iter().map(|s| s.to_string()).collect(),
            })
        }
    };
    Ok(g)
}
