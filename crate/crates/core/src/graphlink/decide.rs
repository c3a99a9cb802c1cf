use num_bigint::BigInt;

use super::{CriticalLinkDesc, GraphManifoldDesc, H1Class, OrbitType, PlaneField};
use crate::zlinalg::{content, divisible_by, Multigraph};
use crate::{Error, Result};

/// Disjoint union of the summand complexes, with vertex 0 of each summand
/// joined to vertex 0 of the next.
pub fn jsj_complex(desc: &GraphManifoldDesc) -> Result<Multigraph> {
    let (first, rest) = desc
        .summands()
        .split_first()
        .ok_or_else(|| Error::Empty("description has no summands".into()))?;
    let mut g = first.clone();
    let mut prev_root = 0;
    for s in rest {
        let root = g.vertex_count();
        g = g.disjoint_union(s);
        g.add_edge(prev_root, root)?;
        prev_root = root;
    }
    Ok(g)
}

pub fn rho_push(desc: &GraphManifoldDesc, a: &[BigInt]) -> Result<Vec<BigInt>> {
    if a.len() != desc.ngens() {
        return Err(Error::dims("class a-part", desc.ngens(), a.len()));
    }
    desc.rho().mul_vec(a)
}

/// Yano's criterion: `rho(a)` is divisible by the content of `b`, with
/// content 0 meaning `rho(a) = 0`.
pub fn graph_link_representable(desc: &GraphManifoldDesc, u: &H1Class) -> Result<bool> {
    desc.check_class(u)?;
    let image = rho_push(desc, &u.a)?;
    Ok(divisible_by(&image, &content(&u.b)))
}

/// An overtwisted structure is Bott integrable exactly when the dual of its
/// Euler class is represented by a graph link. `d3_tag` plays no role.
pub fn bott_integrable_overtwisted(desc: &GraphManifoldDesc, xi: &PlaneField) -> Result<bool> {
    graph_link_representable(desc, &xi.euler_pd)
}

/// Elliptic orbits count `+1`, hyperbolic orbits `-1`; the sum is returned
/// in canonical form.
pub fn euler_from_critical_link(desc: &GraphManifoldDesc, link: &CriticalLinkDesc) -> Result<H1Class> {
    let mut total = desc.zero_class();
    for c in &link.components {
        desc.check_class(&c.class)?;
        total = match c.orbit_type {
            OrbitType::Elliptic => &total + &c.class,
            OrbitType::Hyperbolic => &total - &c.class,
        };
    }
    desc.canonical(&total)
}
