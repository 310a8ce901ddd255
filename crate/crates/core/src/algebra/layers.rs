//! The layers of the radical of a graded-simple algebra relative to a
//! graded decomposition A = B + J(A), and the map phi into B.

use serde::Serialize;

use super::structure::{is_direct, sum_all, Algebra, Subspace};
use super::wm::{rees_grading, WMDecomposition};
use super::{AlgebraError, GradedAlgebra};
use crate::kernel::{add_vec, is_zero_vec, solve_or_member, sub_vec, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerReport {
    pub b_dim: usize,
    pub radical_dim: usize,
    /// dim J^{10}_{*j} for each column j.
    pub j10: Vec<usize>,
    /// dim J^{01}_{i*} for each row i.
    pub j01: Vec<usize>,
    pub radical_square_dim: usize,
    /// Every equation that did not hold.
    pub failures: Vec<String>,
}

impl LayerReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// x(1 - r)
fn right_co(a: &Algebra, x: &[Scalar], r: &[Scalar]) -> Vector {
    sub_vec(x, &a.mul(x, r))
}

/// (1 - r)x
fn left_co(a: &Algebra, r: &[Scalar], x: &[Scalar]) -> Vector {
    sub_vec(x, &a.mul(r, x))
}

/// A linear map given on spanning pairs (u, phi(u)).
struct Phi {
    dom: Vec<Vector>,
    img: Vec<Vector>,
}

impl Phi {
    fn consistent(&self, a: &Algebra) -> bool {
        let dom = a.span(self.dom.iter().cloned());
        let joint = Subspace::span(
            a.field(),
            2 * a.dim(),
            self.dom.iter().zip(&self.img).map(|(u, v)| [u.clone(), v.clone()].concat()),
        );
        dom.dim() == joint.dim()
    }

    fn apply(&self, a: &Algebra, v: &[Scalar]) -> Option<Vector> {
        let c = solve_or_member(&self.dom, v).ok()??;
        let mut out = a.zero_vec();
        for (ci, w) in c.iter().zip(&self.img) {
            crate::kernel::axpy(&mut out, ci, w);
        }
        Some(out)
    }
}

/// Checks the layer equations for J(A) against a decomposition.
pub fn radical_square_layers(a: &GradedAlgebra, d: &WMDecomposition) -> Result<LayerReport, AlgebraError> {
    let rg = rees_grading(a)?;
    let alg = &a.alg;
    let (f, n_dim) = (alg.field(), alg.dim());
    let (n, m) = (rg.n(), rg.m());
    let one = &d.unit_of_b;
    let fp = &d.row_idempotents;
    let fc = &d.column_idempotents;
    let j = &d.radical;
    let mut failures = Vec::new();
    let mut need = |ok: bool, what: String| {
        if !ok {
            failures.push(what);
        }
    };

    let cols: Vec<Subspace> = (0..m).map(|c| rg.column_ideal(c)).collect();
    let rows: Vec<Subspace> = (0..n).map(|r| rg.row_ideal(r)).collect();
    let j10_star: Vec<Subspace> = cols
        .iter()
        .map(|l| alg.span(l.basis().iter().map(|x| right_co(alg, &alg.mul(one, x), one))))
        .collect();
    let j01_star: Vec<Subspace> = rows
        .iter()
        .map(|r| alg.span(r.basis().iter().map(|x| left_co(alg, one, &alg.mul(x, one)))))
        .collect();
    let j10 = |i: usize, c: usize| alg.span(cols[c].basis().iter().map(|x| right_co(alg, &alg.mul(&fp[i], x), one)));
    let j01 = |i: usize, c: usize| alg.span(rows[i].basis().iter().map(|x| left_co(alg, one, &alg.mul(x, &fc[c]))));

    for c in 0..m {
        let parts: Vec<Subspace> = (0..n).map(|i| j10(i, c)).collect();
        let refs: Vec<&Subspace> = parts.iter().collect();
        need(
            is_direct(&refs) && sum_all(f, n_dim, &parts) == j10_star[c],
            format!("J10_*{} != direct sum of J10_i{}", c + 1, c + 1),
        );
        let left_b = alg.product_space(&d.b, &j10_star[c]).is_subspace_of(&j10_star[c]);
        need(left_b, format!("J10_*{} is not a left B-module", c + 1));
    }
    for i in 0..n {
        let parts: Vec<Subspace> = (0..m).map(|c| j01(i, c)).collect();
        let refs: Vec<&Subspace> = parts.iter().collect();
        need(
            is_direct(&refs) && sum_all(f, n_dim, &parts) == j01_star[i],
            format!("J01_{}* != direct sum of J01_{}j", i + 1, i + 1),
        );
        let right_b = alg.product_space(&j01_star[i], &d.b).is_subspace_of(&j01_star[i]);
        need(right_b, format!("J01_{}* is not a right B-module", i + 1));
    }

    // The two descriptions of J^{10}_{ij}, J^{01}_{ij} through A_ij.
    for i in 0..n {
        for c in 0..m {
            let blk = rg.block(i, c);
            let via10 = alg.span(blk.basis().iter().map(|b| {
                let x = alg.mul(&fp[i], b);
                sub_vec(&x, &alg.mul3(one, &x, one))
            }));
            let via01 = alg.span(blk.basis().iter().map(|b| {
                let x = alg.mul(b, &fc[c]);
                sub_vec(&x, &alg.mul3(one, &x, one))
            }));
            need(via10 == j10(i, c), format!("J10_{}{} != {{a - 1a1 : a in f'A}}", i + 1, c + 1));
            need(via01 == j01(i, c), format!("J01_{}{} != {{a - 1a1 : a in Af}}", i + 1, c + 1));
        }
    }

    let j2 = alg.product_space(j, j);
    let mut pieces: Vec<Subspace> = j01_star.clone();
    pieces.extend(j10_star.iter().cloned());
    pieces.push(j2.clone());
    let refs: Vec<&Subspace> = pieces.iter().collect();
    need(is_direct(&refs) && sum_all(f, n_dim, &pieces) == *j, "J != J01 + J10 + J^2 directly".into());
    let prods: Vec<Subspace> =
        (0..n).flat_map(|i| (0..m).map(move |c| (i, c))).map(|(i, c)| alg.product_space(&j01_star[i], &j10_star[c])).collect();
    let refs: Vec<&Subspace> = prods.iter().collect();
    need(is_direct(&refs) && sum_all(f, n_dim, &prods) == j2, "J^2 != sum of J01_i* J10_*j directly".into());
    let whole = alg.whole();
    need(
        alg.product_space(&j2, &whole).is_zero() && alg.product_space(&whole, &j2).is_zero(),
        "J^2 A or A J^2 is nonzero".into(),
    );

    // phi(a - 1a1) = 1a1 - f'_i a f_j on f'_i A_ij + A_ij f_j.
    let mut phi = Phi { dom: vec![], img: vec![] };
    for i in 0..n {
        for c in 0..m {
            for b in rg.block(i, c).basis() {
                for x in [alg.mul(&fp[i], b), alg.mul(b, &fc[c])] {
                    let inner = alg.mul3(one, &x, one);
                    phi.dom.push(sub_vec(&x, &inner));
                    phi.img.push(sub_vec(&inner, &alg.mul3(&fp[i], &x, &fc[c])));
                }
            }
        }
    }
    let consistent = phi.consistent(alg);
    need(consistent, "phi is not well defined".into());
    if consistent {
        need(phi.img.iter().all(|y| d.b.contains(y)), "phi does not land in B".into());
        let at = |v: &[Scalar]| phi.apply(alg, v);
        for (c, sp) in j10_star.iter().enumerate() {
            let imgs: Vec<Option<Vector>> = sp.basis().iter().map(|v| at(v)).collect();
            if imgs.iter().any(Option::is_none) {
                need(false, format!("phi undefined on J10_*{}", c + 1));
                continue;
            }
            let imgs: Vec<Vector> = imgs.into_iter().flatten().collect();
            need(alg.span(imgs.iter().cloned()).dim() == sp.dim(), format!("J10_*{} meets ker phi", c + 1));
            need(imgs.iter().all(|y| is_zero_vec(&alg.mul(y, &fc[c]))), format!("phi(J10_*{}) f_{} != 0", c + 1, c + 1));
            for bb in d.b.basis() {
                for (v, y) in sp.basis().iter().zip(&imgs) {
                    if at(&alg.mul(bb, v)) != Some(alg.mul(bb, y)) {
                        need(false, format!("phi is not left B-linear on J10_*{}", c + 1));
                    }
                }
            }
        }
        for (i, sp) in j01_star.iter().enumerate() {
            let imgs: Vec<Option<Vector>> = sp.basis().iter().map(|v| at(v)).collect();
            if imgs.iter().any(Option::is_none) {
                need(false, format!("phi undefined on J01_{}*", i + 1));
                continue;
            }
            let imgs: Vec<Vector> = imgs.into_iter().flatten().collect();
            need(alg.span(imgs.iter().cloned()).dim() == sp.dim(), format!("J01_{}* meets ker phi", i + 1));
            need(imgs.iter().all(|y| is_zero_vec(&alg.mul(&fp[i], y))), format!("f'_{} phi(J01_{}*) != 0", i + 1, i + 1));
            for bb in d.b.basis() {
                for (v, y) in sp.basis().iter().zip(&imgs) {
                    if at(&alg.mul(v, bb)) != Some(alg.mul(y, bb)) {
                        need(false, format!("phi is not right B-linear on J01_{}*", i + 1));
                    }
                }
            }
        }
        for i in 0..n {
            for c in 0..m {
                // sum v w = 0 iff sum phi(v) phi(w) = 0
                let mut x_rows = Vec::new();
                let mut y_rows = Vec::new();
                for v in j01_star[i].basis() {
                    for w in j10_star[c].basis() {
                        let (pv, pw) = (at(v).unwrap_or_default(), at(w).unwrap_or_default());
                        x_rows.push(alg.mul(v, w));
                        y_rows.push(if pv.is_empty() || pw.is_empty() { alg.zero_vec() } else { alg.mul(&pv, &pw) });
                    }
                }
                let rx = alg.span(x_rows.iter().cloned()).dim();
                let ry = alg.span(y_rows.iter().cloned()).dim();
                let rxy = Subspace::span(f, 2 * n_dim, x_rows.iter().zip(&y_rows).map(|(x, y)| [x.clone(), y.clone()].concat()))
                    .dim();
                need(rx == ry && ry == rxy, format!("vw and phi(v)phi(w) have different relations at ({}, {})", i + 1, c + 1));

                // A_ij = f'_i B f_j + {phi(v) + v} + <(phi(v) + v)(phi(w) + w)>
                let fbf = alg.span(d.b.basis().iter().map(|bb| alg.mul3(&fp[i], bb, &fc[c])));
                let mixed = alg.span(
                    j10(i, c).basis().iter().chain(j01(i, c).basis()).map(|v| add_vec(v, &at(v).unwrap_or_else(|| alg.zero_vec()))),
                );
                let mut sq = Vec::new();
                for v in j01_star[i].basis() {
                    for w in j10_star[c].basis() {
                        let pv = add_vec(v, &at(v).unwrap_or_else(|| alg.zero_vec()));
                        let pw = add_vec(w, &at(w).unwrap_or_else(|| alg.zero_vec()));
                        sq.push(alg.mul(&pv, &pw));
                    }
                }
                let sq = alg.span(sq);
                let parts = [fbf, mixed, sq];
                let refs: Vec<&Subspace> = parts.iter().collect();
                need(
                    is_direct(&refs) && sum_all(f, n_dim, &parts) == rg.block(i, c),
                    format!("A_{}{} does not decompose", i + 1, c + 1),
                );
            }
        }
    }

    let b_dim = d.b.dim();
    let s01: usize = j01_star.iter().map(Subspace::dim).sum();
    let s10: usize = j10_star.iter().map(Subspace::dim).sum();
    need(s01 <= (n - 1) * b_dim, "dim of the J01 layer exceeds (n-1) dim B".into());
    need(s10 <= (m - 1) * b_dim, "dim of the J10 layer exceeds (m-1) dim B".into());
    need(j.dim() <= (n * m - 1) * b_dim, "dim J exceeds (nm-1) dim B".into());

    Ok(LayerReport {
        b_dim,
        radical_dim: j.dim(),
        j10: j10_star.iter().map(Subspace::dim).collect(),
        j01: j01_star.iter().map(Subspace::dim).collect(),
        radical_square_dim: j2.dim(),
        failures,
    })
}
