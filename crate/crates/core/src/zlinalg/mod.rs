//! Exact integer linear algebra: matrices over `Z`, Smith normal form,
//! homology of finite presentations, multigraph Betti numbers and the
//! content/divisibility tests used by graph-link decisions.

mod graph;
mod homology;
mod matrix;
mod snf;

pub use graph::{graph_first_betti, Multigraph};
pub use homology::{content, divisible_by, homology_from_presentation, HomologyGroup, Presentation};
pub use matrix::{IntMatrix, JsonInt};
pub use snf::{divisibility_chain, smith_normal_form, smith_normal_form_batch, SmithDecomposition};

use num_bigint::BigInt;

/// Convenience conversion for small literal vectors.
pub fn int_vec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}
