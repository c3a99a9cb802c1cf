//! Graph-manifold descriptions and homological decisions on them.
//!
//! A closed graph manifold `M = N # k(S^1 x S^2)` is described by the JSJ
//! complexes of the irreducible summands of `N`, a presentation of `H1(N)`
//! and the matrix of `rho_*: H1(N) -> H1(C_N)`. Classes in `H1(M)` are pairs
//! `(a, b)` with `a` in generator coordinates of `H1(N)` and `b` in `Z^k`.
//! Poincare duality is the identity on these coordinates, so Euler classes
//! and obstruction classes are entered the same way.

mod class;
mod decide;
mod desc;
mod obstruction;

pub use class::{CriticalLinkDesc, CriticalOrbit, H1Class, OrbitType, PlaneField};
pub use decide::{
    bott_integrable_overtwisted, euler_from_critical_link, graph_link_representable, jsj_complex,
    rho_push,
};
pub use desc::{DescDoc, GraphManifoldDesc};
pub use obstruction::{check_d2_algebra, lutz_twist_bookkeeping, D2Report, D2Tuple};
