//! Bookkeeping for the two-dimensional obstruction `d2(eta1, eta2)` between
//! plane fields. Only its formal properties are used: antisymmetry,
//! additivity, `2 d2(eta1, eta2) = e(eta1) - e(eta2)`, and
//! `d2(xi^K, xi) = -K` for a full Lutz twist along `K`.

use serde::{Deserialize, Serialize};

use super::{GraphManifoldDesc, H1Class};
use crate::Result;

/// Obstruction classes among three plane fields and the Euler classes of the
/// first two. `d21` is optional and only feeds the antisymmetry check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct D2Tuple {
    pub d12: H1Class,
    pub d23: H1Class,
    pub d13: H1Class,
    pub e1: H1Class,
    pub e2: H1Class,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d21: Option<H1Class>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct D2Report {
    /// `d12 + d23 = d13`.
    pub additivity: bool,
    /// `2 d12 = e1 - e2`.
    pub doubling: bool,
    /// `d21 = -d12`, when `d21` was supplied.
    pub antisymmetry: Option<bool>,
}

impl D2Report {
    pub fn all_pass(&self) -> bool {
        self.additivity && self.doubling && self.antisymmetry.unwrap_or(true)
    }
}

/// Each identity is compared in canonical form.
pub fn check_d2_algebra(desc: &GraphManifoldDesc, tuple: &D2Tuple) -> Result<D2Report> {
    let eq = |x: &H1Class, y: &H1Class| desc.equivalent(x, y);
    let additivity = eq(&(&tuple.d12 + &tuple.d23), &tuple.d13)?;
    let doubling = eq(&tuple.d12.scale(2), &(&tuple.e1 - &tuple.e2))?;
    let antisymmetry = match &tuple.d21 {
        Some(d21) => Some(eq(d21, &-&tuple.d12)?),
        None => None,
    };
    Ok(D2Report {
        additivity,
        doubling,
        antisymmetry,
    })
}

/// `d2(xi^K, eta)` from `d2(xi, eta)`: additivity with `d2(xi^K, xi) = -K`.
pub fn lutz_twist_bookkeeping(desc: &GraphManifoldDesc, d_xi_eta: &H1Class, k: &H1Class) -> Result<H1Class> {
    desc.check_class(d_xi_eta)?;
    desc.check_class(k)?;
    desc.canonical(&(d_xi_eta - k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zlinalg::{IntMatrix, Multigraph};

    fn torsion_desc() -> GraphManifoldDesc {
        GraphManifoldDesc::new(
            vec![Multigraph::new(1, vec![]).unwrap()],
            1,
            IntMatrix::from_rows(&[vec![2, 0]], 2).unwrap(),
            IntMatrix::zeros(0, 2),
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn two_torsion_obstruction() {
        let d = torsion_desc();
        let zero = d.zero_class();
        let t = H1Class::from_i64(&[1, 0], &[0]);
        // equal Euler classes only force 2 d12 = 0
        let tuple = D2Tuple {
            d12: t.clone(),
            d23: zero.clone(),
            d13: H1Class::from_i64(&[-1, 0], &[0]),
            e1: H1Class::from_i64(&[0, 3], &[1]),
            e2: H1Class::from_i64(&[0, 3], &[1]),
            d21: Some(t.clone()),
        };
        let r = check_d2_algebra(&d, &tuple).unwrap();
        assert!(r.all_pass(), "{r:?}");

        let bad = D2Tuple {
            d13: H1Class::from_i64(&[0, 1], &[0]),
            ..tuple
        };
        let r = check_d2_algebra(&d, &bad).unwrap();
        assert!(!r.additivity && r.doubling);
    }

    #[test]
    fn twist_bookkeeping() {
        let d = torsion_desc();
        let dxe = H1Class::from_i64(&[3, -2], &[4]);
        assert!(lutz_twist_bookkeeping(&d, &dxe, &dxe).unwrap().is_zero());
        assert_eq!(
            lutz_twist_bookkeeping(&d, &dxe, &d.zero_class()).unwrap(),
            d.canonical(&dxe).unwrap()
        );
        let k = H1Class::from_i64(&[1, 1], &[-3]);
        let once = lutz_twist_bookkeeping(&d, &dxe, &k).unwrap();
        let back = lutz_twist_bookkeeping(&d, &once, &-&k).unwrap();
        assert_eq!(back, d.canonical(&dxe).unwrap());
    }
}
