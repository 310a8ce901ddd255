//! JSON documents for algebras and semigroups.
//!
//! Scalars are strings "num/den". Products are sparse: `[i, j, [[k, c], ...]]`
//! lists the nonzero coordinates of b_i b_j, and missing pairs are zero.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use gpi_core::algebra::{Algebra, GradedAlgebra};
use gpi_core::semigroups::{self, FiniteSemigroup, ReesPresentation, SemigroupError};
use gpi_core::{Field, Scalar};

#[derive(Debug, Error)]
pub enum DocumentError {
    /// Malformed JSON or a value of the wrong shape.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed, but the semigroup it describes is not a semigroup.
    #[error("semigroup: {0}")]
    Semigroup(#[from] SemigroupError),
}

fn parse_err(msg: impl Into<String>) -> DocumentError {
    DocumentError::Parse(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDocument {
    Named(String),
    Prime { prime: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SemigroupSpec {
    Rees { n: usize, m: usize, sandwich: Vec<Vec<u8>> },
    RightZeroBand { size: usize },
    Table {
        size: usize,
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        zero: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemigroupDocument {
    Ref {
        #[serde(rename = "ref")]
        name: String,
    },
    Spec(SemigroupSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry(pub usize, pub usize, pub Vec<(usize, String)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub field: FieldDocument,
    pub semigroup: SemigroupDocument,
    pub basis: Vec<BasisEntry>,
    pub products: Vec<ProductEntry>,
}

/// "num/den", with den = 1 written out.
pub fn scalar_str(x: &Scalar) -> String {
    match x {
        Scalar::Q(q) => format!("{}/{}", q.numer(), q.denom()),
        Scalar::Fp { v, .. } => format!("{v}/1"),
    }
}

pub fn parse_field(f: &FieldDocument) -> Result<Field, DocumentError> {
    match f {
        FieldDocument::Named(s) if s == "Q" => Ok(Field::Rational),
        FieldDocument::Named(s) => Err(parse_err(format!("unknown field {s:?}; use \"Q\" or {{\"prime\": p}}"))),
        FieldDocument::Prime { prime } => {
            let p = *prime;
            if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                return Err(parse_err(format!("{p} is not prime")));
            }
            Ok(Field::Prime(p))
        }
    }
}

/// Named semigroups: `trivial`, `cyclic:k`, `right_zero_band:k`, `null:k`.
pub fn semigroup_by_name(name: &str) -> Result<FiniteSemigroup, DocumentError> {
    let unknown = || parse_err(format!("unknown semigroup reference {name:?}"));
    if name == "trivial" {
        return Ok(semigroups::trivial());
    }
    let (kind, k) = name.split_once(':').ok_or_else(unknown)?;
    let k: usize = k.parse().map_err(|_| unknown())?;
    Ok(match kind {
        "cyclic" => semigroups::cyclic_group(k)?,
        "right_zero_band" => semigroups::right_zero_band(k)?,
        "null" => semigroups::null_semigroup(k),
        _ => return Err(unknown()),
    })
}

pub fn parse_semigroup(s: &SemigroupDocument) -> Result<FiniteSemigroup, DocumentError> {
    match s {
        SemigroupDocument::Ref { name } => semigroup_by_name(name),
        SemigroupDocument::Spec(SemigroupSpec::RightZeroBand { size }) => Ok(semigroups::right_zero_band(*size)?),
        SemigroupDocument::Spec(SemigroupSpec::Rees { n, m, sandwich }) => {
            let sw = sandwich.iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect();
            Ok(semigroups::rees_semigroup(&ReesPresentation::new(*n, *m, sw)?)?)
        }
        SemigroupDocument::Spec(SemigroupSpec::Table { size, table, zero }) => {
            if table.len() != *size || table.iter().any(|r| r.len() != *size) {
                return Err(parse_err(format!("semigroup table must be {size}x{size}")));
            }
            Ok(FiniteSemigroup::new(*size, table.concat(), *zero)?)
        }
    }
}

pub fn semigroup_document(s: &FiniteSemigroup) -> SemigroupDocument {
    let n = s.size();
    SemigroupDocument::Spec(SemigroupSpec::Table {
        size: n,
        table: s.table().chunks(n.max(1)).map(<[usize]>::to_vec).collect(),
        zero: s.zero(),
    })
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn to_algebra(&self) -> Result<GradedAlgebra, DocumentError> {
        let field = parse_field(&self.field)?;
        let semigroup = parse_semigroup(&self.semigroup)?;
        let dim = self.basis.len();
        let mut table = vec![vec![Scalar::zero(field); dim]; dim * dim];
        let mut seen = vec![false; dim * dim];
        for ProductEntry(i, j, coords) in &self.products {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(parse_err(format!("product [{i}, {j}] refers to a basis index >= {dim}")));
            }
            if std::mem::replace(&mut seen[i * dim + j], true) {
                return Err(parse_err(format!("product [{i}, {j}] listed twice")));
            }
            for (k, c) in coords {
                if *k >= dim {
                    return Err(parse_err(format!("product [{i}, {j}] has coordinate {k} >= {dim}")));
                }
                table[i * dim + j][*k] =
                    Scalar::parse(field, c).map_err(|e| parse_err(format!("product [{i}, {j}]: {e}")))?;
            }
        }
        let alg = Algebra::new(field, dim, table).map_err(|e| parse_err(e.to_string()))?;
        let degree = self.basis.iter().map(|b| b.degree).collect();
        let names = self.basis.iter().map(|b| b.name.clone()).collect();
        GradedAlgebra::new(alg, semigroup, degree, Some(names)).map_err(|e| parse_err(e.to_string()))
    }

    pub fn from_algebra(a: &GradedAlgebra) -> Self {
        let field = match a.field() {
            Field::Rational => FieldDocument::Named("Q".into()),
            Field::Prime(p) => FieldDocument::Prime { prime: p },
        };
        let basis = a.names.iter().zip(&a.degree).map(|(n, &d)| BasisEntry { name: n.clone(), degree: d }).collect();
        let mut products = Vec::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let coords: Vec<(usize, String)> =
                    a.alg.basis_product_sparse(i, j).iter().map(|(k, c)| (*k, scalar_str(c))).collect();
                if !coords.is_empty() {
                    products.push(ProductEntry(i, j, coords));
                }
            }
        }
        AlgebraDocument { field, semigroup: semigroup_document(&a.semigroup), basis, products }
    }
}
