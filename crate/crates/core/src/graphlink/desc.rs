use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::H1Class;
use crate::zlinalg::{graph_first_betti, IntMatrix, JsonInt, Multigraph, Presentation};
use crate::{Error, Result};

/// On-disk form of a [`GraphManifoldDesc`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescDoc {
    pub summands: Vec<Multigraph>,
    pub k: usize,
    pub h1_relations: Vec<Vec<JsonInt>>,
    pub ngens: usize,
    pub rho: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generator_names: Vec<String>,
}

/// A validated description of `M = N # k(S^1 x S^2)`.
///
/// Immutable once built. The Smith decomposition of the relations is
/// computed once and fixes the canonical representative of every class.
#[derive(Clone, Debug)]
pub struct GraphManifoldDesc {
    summands: Vec<Multigraph>,
    k: usize,
    presentation: Presentation,
    rho: IntMatrix,
    generator_names: Vec<String>,
}

impl PartialEq for GraphManifoldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.summands == other.summands
            && self.k == other.k
            && self.presentation.relations() == other.presentation.relations()
            && self.rho == other.rho
            && self.generator_names == other.generator_names
    }
}

fn matrix_field(rows: Vec<Vec<JsonInt>>, cols: usize, field: &str) -> Result<IntMatrix> {
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(Error::field(
                format!("{field}[{i}]"),
                format!("expected {cols} entries, found {}", r.len()),
            ));
        }
    }
    IntMatrix::from_json_rows(rows, Some(cols))
}

impl GraphManifoldDesc {
    pub fn new(
        summands: Vec<Multigraph>,
        k: usize,
        h1_relations: IntMatrix,
        rho: IntMatrix,
        generator_names: Vec<String>,
    ) -> Result<Self> {
        let ngens = h1_relations.cols();
        for (i, g) in summands.iter().enumerate() {
            g.validate().map_err(|e| match e {
                Error::Field { field, reason } => Error::field(format!("summands[{i}].{field}"), reason),
                other => other,
            })?;
        }
        if rho.cols() != ngens {
            return Err(Error::field(
                "rho",
                format!("expected {ngens} columns (one per generator), found {}", rho.cols()),
            ));
        }
        let betti: usize = summands.iter().map(graph_first_betti).sum();
        if rho.rows() != betti {
            return Err(Error::field(
                "rho",
                format!(
                    "expected {betti} rows (first Betti number of the JSJ complex), found {}",
                    rho.rows()
                ),
            ));
        }
        for i in 0..h1_relations.rows() {
            let image = rho.mul_vec(h1_relations.row(i))?;
            if image.iter().any(|x| !x.is_zero()) {
                return Err(Error::field(
                    "rho",
                    format!("does not vanish on relation h1_relations[{i}]; rho is not defined on H1"),
                ));
            }
        }
        if !generator_names.is_empty() && generator_names.len() != ngens {
            return Err(Error::field(
                "generator_names",
                format!("expected {ngens} names, found {}", generator_names.len()),
            ));
        }
        Ok(GraphManifoldDesc {
            summands,
            k,
            presentation: Presentation::new(h1_relations, ngens)?,
            rho,
            generator_names,
        })
    }

    pub fn from_doc(doc: DescDoc) -> Result<Self> {
        let relations = matrix_field(doc.h1_relations, doc.ngens, "h1_relations")?;
        let rho = matrix_field(doc.rho, doc.ngens, "rho")?;
        Self::new(doc.summands, doc.k, relations, rho, doc.generator_names)
    }

    pub fn to_doc(&self) -> DescDoc {
        DescDoc {
            summands: self.summands.clone(),
            k: self.k,
            h1_relations: self.presentation.relations().to_json_rows(),
            ngens: self.ngens(),
            rho: self.rho.to_json_rows(),
            generator_names: self.generator_names.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_doc(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_doc())?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn summands(&self) -> &[Multigraph] {
        &self.summands
    }

    /// Number of `S^1 x S^2` summands.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ngens(&self) -> usize {
        self.presentation.ngens()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn rho(&self) -> &IntMatrix {
        &self.rho
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// Rank of `H1(C_N)`.
    pub fn jsj_betti(&self) -> usize {
        self.rho.rows()
    }

    pub fn zero_class(&self) -> H1Class {
        H1Class::zero(self.ngens(), self.k)
    }

    pub fn check_class(&self, u: &H1Class) -> Result<()> {
        if u.a.len() != self.ngens() {
            return Err(Error::dims("class a-part", self.ngens(), u.a.len()));
        }
        if u.b.len() != self.k {
            return Err(Error::dims("class b-part", self.k, u.b.len()));
        }
        Ok(())
    }

    /// Read a flat coordinate list `a ++ b` of length `ngens + k`.
    pub fn class_from_coords(&self, coords: Vec<BigInt>) -> Result<H1Class> {
        let n = self.ngens() + self.k;
        if coords.len() != n {
            return Err(Error::dims("class coordinates (ngens + k)", n, coords.len()));
        }
        Ok(H1Class::split(coords, self.ngens()))
    }

    /// Canonical representative: `a` reduced against the relations, `b`
    /// untouched since `Z^k` is free.
    pub fn canonical(&self, u: &H1Class) -> Result<H1Class> {
        self.check_class(u)?;
        Ok(H1Class {
            a: self.presentation.canonical(&u.a)?,
            b: u.b.clone(),
        })
    }

    pub fn equivalent(&self, u: &H1Class, v: &H1Class) -> Result<bool> {
        Ok(self.canonical(u)? == self.canonical(v)?)
    }

    /// Display a class using generator names when available.
    pub fn describe(&self, u: &H1Class) -> String {
        let mut terms = Vec::new();
        for (i, x) in u.a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let name = self
                .generator_names
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("g{i}"));
            terms.push(format!("{x}*{name}"));
        }
        for (i, x) in u.b.iter().enumerate() {
            if !x.is_zero() {
                terms.push(format!("{x}*s{i}"));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
