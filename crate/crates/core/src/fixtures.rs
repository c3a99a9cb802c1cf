//! Descriptions and critical links shipped with the crate.
//!
//! * `cat_torus.json`: mapping torus of the cat map. `H1 = Z` generated by
//!   the circle direction `c`; the JSJ complex is one vertex with a loop and
//!   `rho` is the identity.
//! * `seifert_vertex.json`: circle bundle over the torus with Euler number 4,
//!   `H1 = Z^2 + Z/4` on `(a, b, h)`. A single Seifert piece, so `H1(C) = 0`.
//! * `cat_plus_s1s2.json`: the cat torus with one `S^1 x S^2` summand.

use crate::graphlink::{CriticalLinkDesc, GraphManifoldDesc, H1Class, OrbitType};
use crate::Result;

pub const CAT_TORUS: &str = include_str!("../fixtures/cat_torus.json");
pub const SEIFERT_VERTEX: &str = include_str!("../fixtures/seifert_vertex.json");
pub const CAT_PLUS_S1S2: &str = include_str!("../fixtures/cat_plus_s1s2.json");

/// `(file name, contents)` for every shipped description.
pub const ALL: [(&str, &str); 3] = [
    ("cat_torus.json", CAT_TORUS),
    ("seifert_vertex.json", SEIFERT_VERTEX),
    ("cat_plus_s1s2.json", CAT_PLUS_S1S2),
];

/// Look up a shipped description by file name (directory part ignored).
pub fn by_name(name: &str) -> Option<&'static str> {
    let base = std::path::Path::new(name).file_name()?.to_str()?;
    ALL.iter().find(|(n, _)| *n == base).map(|(_, text)| *text)
}

pub fn cat_torus() -> Result<GraphManifoldDesc> {
    GraphManifoldDesc::from_json(CAT_TORUS)
}

pub fn seifert_vertex() -> Result<GraphManifoldDesc> {
    GraphManifoldDesc::from_json(SEIFERT_VERTEX)
}

pub fn cat_plus_s1s2() -> Result<GraphManifoldDesc> {
    GraphManifoldDesc::from_json(CAT_PLUS_S1S2)
}

/// Critical link of `alpha_n` with the Bott integral lifted from a Morse
/// function on `R/Z` with `extrema` maxima and as many minima.
///
/// Each critical fibre torus is traded for an elliptic and a hyperbolic orbit
/// in the same fibre class. Fibre classes die in `H1` because `A - I` is
/// invertible, so every component sits in class 0.
pub fn cat_alpha_link(extrema: usize) -> CriticalLinkDesc {
    let mut link = CriticalLinkDesc::default();
    for _ in 0..2 * extrema {
        link.push(OrbitType::Elliptic, H1Class::from_i64(&[0], &[]));
        link.push(OrbitType::Hyperbolic, H1Class::from_i64(&[0], &[]));
    }
    link
}

/// Critical links built from regular fibres and section curves of the
/// Seifert fixture.
pub fn seifert_links() -> Vec<CriticalLinkDesc> {
    let h = H1Class::from_i64(&[0, 0, 1], &[]);
    let a = H1Class::from_i64(&[1, 0, 0], &[]);
    let b = H1Class::from_i64(&[0, 1, 0], &[]);
    let mut fibres = CriticalLinkDesc::default();
    for _ in 0..3 {
        fibres.push(OrbitType::Elliptic, h.clone());
    }
    fibres.push(OrbitType::Hyperbolic, h.clone());
    let mut mixed = CriticalLinkDesc::default();
    mixed.push(OrbitType::Elliptic, a);
    mixed.push(OrbitType::Elliptic, b.clone());
    mixed.push(OrbitType::Hyperbolic, b);
    mixed.push(OrbitType::Elliptic, h.scale(5));
    vec![fibres, mixed]
}

/// Critical link on the cat torus plus `S^1 x S^2`: the cat pairs and the two
/// elliptic core circles of the standard structure on `S^1 x S^2`, which run
/// in opposite directions.
pub fn cat_plus_s1s2_link() -> CriticalLinkDesc {
    let mut link = CriticalLinkDesc::default();
    for c in cat_alpha_link(1).components {
        link.push(c.orbit_type, H1Class::new(c.class.a, vec![0.into()]));
    }
    link.push(OrbitType::Elliptic, H1Class::from_i64(&[0], &[1]));
    link.push(OrbitType::Elliptic, H1Class::from_i64(&[0], &[-1]));
    link
}

/// Every `(description, critical link)` pair the crate constructs itself.
pub fn critical_link_corpus() -> Result<Vec<(&'static str, GraphManifoldDesc, CriticalLinkDesc)>> {
    let mut out = Vec::new();
    for m in 0..4 {
        out.push(("cat_torus.json", cat_torus()?, cat_alpha_link(m)));
    }
    for link in seifert_links() {
        out.push(("seifert_vertex.json", seifert_vertex()?, link));
    }
    out.push(("cat_plus_s1s2.json", cat_plus_s1s2()?, cat_plus_s1s2_link()));
    Ok(out)
}
