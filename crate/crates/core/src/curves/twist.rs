//! Full Lutz twist on a straight piece of a Lutz curve.
//!
//! On the window `[s0 - eps, s0 + eps]` the input must be a unit-speed
//! horizontal segment `(s - s0 + a, C)`. The offset `a = h1(s0)` is read off
//! the curve and the template below is translated by `(a, 0)`. It is replaced by a closed-loop excursion made of straight
//! runs and circular arcs: along the top at height `C`, a rounded corner,
//! down the right side, a rounded corner, left along the bottom at `-C`,
//! a clockwise half circle on the far left, and back along the top to
//! `(eps, C)`. Every piece turns clockwise about the origin, so
//! `Delta < 0`, and the excursion encloses the origin exactly once.
//!
//! The path is traversed by arc length `sigma(s)` with
//! `sigma' = 1 + K sin^2(pi u / 2 eps)`, `u = s - s0 + eps`, so that
//! `sigma' = 1` at both window ends and the twisted curve is `C^1` there.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::{grid, CurvePoint, LutzCurve};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
enum Piece {
    Line {
        start: [f64; 2],
        dir: [f64; 2],
        len: f64,
    },
    /// Clockwise arc starting at polar angle `phi0` about `center`.
    Arc {
        center: [f64; 2],
        radius: f64,
        phi0: f64,
        len: f64,
    },
}

impl Piece {
    fn len(&self) -> f64 {
        match *self {
            Piece::Line { len, .. } | Piece::Arc { len, .. } => len,
        }
    }

    /// Position and unit tangent at arc length `sigma` into the piece.
    fn at(&self, sigma: f64) -> ([f64; 2], [f64; 2]) {
        match *self {
            Piece::Line { start, dir, .. } => (
                [start[0] + sigma * dir[0], start[1] + sigma * dir[1]],
                dir,
            ),
            Piece::Arc {
                center,
                radius,
                phi0,
                ..
            } => {
                let (s, c) = (phi0 - sigma / radius).sin_cos();
                ([center[0] + radius * c, center[1] + radius * s], [s, -c])
            }
        }
    }

    fn end(&self) -> [f64; 2] {
        self.at(self.len()).0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistSegmentKind {
    /// `h2` constant; the Reeb field is `(0, 1/h2)`.
    Horizontal,
    /// `h1` constant; the Reeb field is `(1/h1, 0)`.
    Vertical,
    Arc,
}

/// Parameter range of one piece of the twist template.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwistSegment {
    pub s_start: f64,
    pub s_end: f64,
    pub kind: TwistSegmentKind,
}

/// The replacement curve on the surgery window.
#[derive(Clone, Debug)]
pub struct LutzTwist {
    s0: f64,
    eps: f64,
    c: f64,
    shift: f64,
    pieces: Vec<Piece>,
    length: f64,
}

impl LutzTwist {
    fn new(s0: f64, eps: f64, c: f64, shift: f64) -> Self {
        let right = eps + c;
        let corner = c / 2.0;
        let left = eps + c;
        let mut pieces = Vec::with_capacity(7);
        let mut at = [-eps, c];
        let mut push = |p: Piece, at: &mut [f64; 2]| {
            *at = p.end();
            pieces.push(p);
        };
        push(
            Piece::Line {
                start: at,
                dir: [1.0, 0.0],
                len: right - corner + eps,
            },
            &mut at,
        );
        push(
            Piece::Arc {
                center: [right - corner, c - corner],
                radius: corner,
                phi0: FRAC_PI_2,
                len: corner * FRAC_PI_2,
            },
            &mut at,
        );
        push(
            Piece::Line {
                start: at,
                dir: [0.0, -1.0],
                len: 2.0 * (c - corner),
            },
            &mut at,
        );
        push(
            Piece::Arc {
                center: [right - corner, -c + corner],
                radius: corner,
                phi0: 0.0,
                len: corner * FRAC_PI_2,
            },
            &mut at,
        );
        push(
            Piece::Line {
                start: at,
                dir: [-1.0, 0.0],
                len: right - corner + left,
            },
            &mut at,
        );
        push(
            Piece::Arc {
                center: [-left, 0.0],
                radius: c,
                phi0: -FRAC_PI_2,
                len: c * PI,
            },
            &mut at,
        );
        push(
            Piece::Line {
                start: at,
                dir: [1.0, 0.0],
                len: left + eps,
            },
            &mut at,
        );
        let length = pieces.iter().map(Piece::len).sum();
        LutzTwist {
            s0,
            eps,
            c,
            shift,
            pieces,
            length,
        }
    }

    pub fn center(&self) -> f64 {
        self.s0
    }

    pub fn half_width(&self) -> f64 {
        self.eps
    }

    pub fn height(&self) -> f64 {
        self.c
    }

    /// `h1` at the window centre.
    pub fn offset(&self) -> f64 {
        self.shift
    }

    pub fn window(&self) -> (f64, f64) {
        (self.s0 - self.eps, self.s0 + self.eps)
    }

    pub(crate) fn strictly_inside(&self, s: f64) -> bool {
        let (a, b) = self.window();
        a < s && s < b
    }

    fn speed_gain(&self) -> f64 {
        (self.length - 2.0 * self.eps) / self.eps
    }

    /// Arc length reached at parameter `s` and its derivative.
    fn sigma(&self, s: f64) -> (f64, f64) {
        let u = (s - self.s0 + self.eps).clamp(0.0, 2.0 * self.eps);
        let k = self.speed_gain();
        let x = PI * u / self.eps;
        let sigma = u + k * (u / 2.0 - self.eps / (2.0 * PI) * x.sin());
        let ds = 1.0 + k * (x / 2.0).sin().powi(2);
        (sigma, ds)
    }

    fn locate(&self, sigma: f64) -> (usize, f64) {
        let mut rest = sigma.clamp(0.0, self.length);
        for (i, p) in self.pieces.iter().enumerate() {
            if rest <= p.len() || i + 1 == self.pieces.len() {
                return (i, rest.min(p.len()));
            }
            rest -= p.len();
        }
        unreachable!("template has pieces")
    }

    pub(crate) fn eval(&self, s: f64) -> CurvePoint {
        let (sigma, ds) = self.sigma(s);
        let (i, local) = self.locate(sigma);
        let (pos, tangent) = self.pieces[i].at(local);
        CurvePoint {
            h1: pos[0] + self.shift,
            h2: pos[1],
            dh1: tangent[0] * ds,
            dh2: tangent[1] * ds,
        }
    }

    /// Parameter ranges of the template pieces, in order.
    pub fn segments(&self) -> Vec<TwistSegment> {
        let mut out = Vec::with_capacity(self.pieces.len());
        let mut acc = 0.0;
        let mut s_start = self.s0 - self.eps;
        for p in &self.pieces {
            acc += p.len();
            let s_end = self.param_at_length(acc);
            let kind = match p {
                Piece::Line { dir, .. } if dir[1] == 0.0 => TwistSegmentKind::Horizontal,
                Piece::Line { .. } => TwistSegmentKind::Vertical,
                Piece::Arc { .. } => TwistSegmentKind::Arc,
            };
            out.push(TwistSegment {
                s_start,
                s_end,
                kind,
            });
            s_start = s_end;
        }
        out
    }

    /// Inverse of `sigma` by bisection; `sigma` is strictly increasing.
    fn param_at_length(&self, target: f64) -> f64 {
        let (mut a, mut b) = self.window();
        if target >= self.length {
            return b;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if self.sigma(m).0 < target {
                a = m;
            } else {
                b = m;
            }
            if b - a <= f64::EPSILON * (1.0 + m.abs()) {
                break;
            }
        }
        0.5 * (a + b)
    }
}

/// Tolerance for the straight-segment precondition, relative to the window
/// scale.
const SHAPE_TOL: f64 = 1e-9;
const SHAPE_SAMPLES: usize = 200;
const CONSTRUCTION_SAMPLES: usize = 20_000;

/// Insert one extra clockwise loop around the origin on
/// `[s0 - eps, s0 + eps]`, where the curve must equal `(s - s0 + a, c)` for
/// some offset `a`. Offsets that leave the origin outside the loop fail the
/// `Delta < 0` check with a construction error.
pub fn full_lutz_twist(curve: &LutzCurve, s0: f64, eps: f64, c: f64) -> Result<LutzCurve> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Shape(format!("window half-width must be positive, got {eps}")));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Shape(format!("segment height must be positive, got {c}")));
    }
    let (a, b) = (s0 - eps, s0 + eps);
    if !(curve.contains(a) && curve.contains(b)) {
        let (lo, hi) = curve.domain();
        return Err(Error::Shape(format!(
            "window [{a}, {b}] not inside domain [{lo}, {hi}]"
        )));
    }
    let shift = curve.eval(s0)?.h1;
    let tol = SHAPE_TOL * (1.0 + eps.max(c).max(shift.abs()));
    for s in grid(a, b, SHAPE_SAMPLES) {
        let p = curve.eval(s)?;
        let off = [p.h1 - (s - s0 + shift), p.h2 - c, p.dh1 - 1.0, p.dh2];
        if off.iter().any(|x| x.abs() > tol) {
            return Err(Error::Shape(format!(
                "curve is not (s - {s0} + {shift}, {c}) at s = {s}: h = ({}, {}), h' = ({}, {})",
                p.h1, p.h2, p.dh1, p.dh2
            )));
        }
    }

    let twist = LutzTwist::new(s0, eps, c, shift);
    for s in grid(a, b, CONSTRUCTION_SAMPLES) {
        let d = twist.eval(s).delta();
        if !(d < 0.0) {
            return Err(Error::Construction(format!(
                "template has Delta = {d} at s = {s}; enlarge eps"
            )));
        }
    }
    Ok(LutzCurve::twisted(curve.clone(), twist))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{reeb_velocity, winding_angle, ClosedForm};
    use std::f64::consts::TAU;

    fn segment(c: f64) -> LutzCurve {
        LutzCurve::closed_form(ClosedForm::horizontal_segment(0.0, c), -1.0, 1.0).unwrap()
    }

    #[test]
    fn template_is_closed_and_c1() {
        let t = LutzTwist::new(0.0, 0.3, 1.5, 0.0);
        let start = t.eval(-0.3);
        let end = t.eval(0.3);
        assert!((start.h1 + 0.3).abs() < 1e-12 && (start.h2 - 1.5).abs() < 1e-12);
        assert!((end.h1 - 0.3).abs() < 1e-12 && (end.h2 - 1.5).abs() < 1e-12);
        for p in [start, end] {
            assert!((p.dh1 - 1.0).abs() < 1e-12 && p.dh2.abs() < 1e-12);
        }
        // consecutive pieces join with matching position and tangent
        for w in t.pieces.windows(2) {
            let (p_end, d_end) = w[0].at(w[0].len());
            let (p_start, d_start) = w[1].at(0.0);
            for k in 0..2 {
                assert!((p_end[k] - p_start[k]).abs() < 1e-12);
                assert!((d_end[k] - d_start[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn one_extra_clockwise_turn() {
        let base = segment(1.0);
        let twisted = full_lutz_twist(&base, 0.0, 0.5, 1.0).unwrap();
        twisted.validate().unwrap();
        let d = winding_angle(&twisted, -1.0, 1.0).unwrap() - winding_angle(&base, -1.0, 1.0).unwrap();
        assert!((d + TAU).abs() < 1e-9, "{d}");
    }

    #[test]
    fn agrees_outside_window() {
        let base = LutzCurve::closed_form(ClosedForm::horizontal_segment(0.1, 2.0), -1.0, 1.0).unwrap();
        let twisted = full_lutz_twist(&base, 0.1, 0.4, 2.0).unwrap();
        for s in [-1.0, -0.5, -0.3, 0.5, 0.77, 1.0] {
            assert_eq!(base.eval(s).unwrap(), twisted.eval(s).unwrap());
        }
    }

    #[test]
    fn axis_aligned_pieces_have_axis_reeb_fields() {
        let base = segment(1.0);
        let twisted = full_lutz_twist(&base, 0.0, 0.5, 1.0).unwrap();
        let segs = twisted.twist().unwrap().segments();
        assert_eq!(segs.len(), 7);
        for seg in segs {
            let s = 0.5 * (seg.s_start + seg.s_end);
            let p = twisted.eval(s).unwrap();
            let r = reeb_velocity(&twisted, s).unwrap();
            match seg.kind {
                TwistSegmentKind::Horizontal => {
                    assert!(r[0].abs() < 1e-12);
                    assert!((r[1] - 1.0 / p.h2).abs() < 1e-12);
                }
                TwistSegmentKind::Vertical => {
                    assert!(r[1].abs() < 1e-12);
                    assert!(r[0] > 0.0 && (r[0] - 1.0 / p.h1).abs() < 1e-12);
                }
                TwistSegmentKind::Arc => {}
            }
        }
    }

    #[test]
    fn offset_windows() {
        let base = segment(1.0);
        let shifted = full_lutz_twist(&base, -0.4, 0.3, 1.0).unwrap();
        assert_eq!(shifted.twist().unwrap().offset(), -0.4);
        shifted.validate().unwrap();
        let d = winding_angle(&shifted, -1.0, 1.0).unwrap() - winding_angle(&base, -1.0, 1.0).unwrap();
        assert!((d + TAU).abs() < 1e-9, "{d}");

        let long = LutzCurve::closed_form(ClosedForm::horizontal_segment(0.0, 1.0), -5.0, 5.0).unwrap();
        assert!(matches!(
            full_lutz_twist(&long, 3.0, 0.5, 1.0),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn shape_errors() {
        let base = segment(1.0);
        assert!(matches!(
            full_lutz_twist(&base, 0.0, 0.5, 2.0),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            full_lutz_twist(&base, 0.8, 0.5, 1.0),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            full_lutz_twist(&base, 0.0, 0.5, -1.0),
            Err(Error::Shape(_))
        ));
        let alpha = LutzCurve::alpha_n(0, 0.0, 1.0).unwrap();
        assert!(matches!(
            full_lutz_twist(&alpha, 0.5, 0.1, 1.0),
            Err(Error::Shape(_))
        ));
    }
}
