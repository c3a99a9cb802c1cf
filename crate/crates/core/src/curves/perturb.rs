//! Splitting a critical torus or Klein bottle of `f = r^2` into one
//! elliptic and one hyperbolic orbit via `g(r, theta) = r^2 + chi(r) cos theta`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::{Error, Result};

/// Plateau bump `chi: [-delta, delta] -> [0, eps^2]` with `chi = eps^2` on
/// `|r| <= eps` and `chi = 0` on `|r| >= 2 eps`, joined by a quintic
/// smootherstep. The steepest slope is `1.875 eps` at `|r| = 1.5 eps`, below
/// `|2r| = 3 eps`, so `|chi'(r)| < |2r|` holds for every `r != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerturbationBump {
    pub delta: f64,
    pub epsilon: f64,
}

const SCAN_INTERVALS: usize = 4000;
const INVARIANT_SAMPLES: usize = 10_000;

impl PerturbationBump {
    pub fn new(delta: f64, epsilon: f64) -> Result<Self> {
        let bump = PerturbationBump { delta, epsilon };
        bump.validate()?;
        Ok(bump)
    }

    /// Checks `0 < 2 eps < delta` and then the plateau, support and slope
    /// conditions on a sample grid.
    pub fn validate(&self) -> Result<()> {
        let (d, e) = (self.delta, self.epsilon);
        if !(d.is_finite() && e.is_finite() && e > 0.0 && 2.0 * e < d) {
            return Err(Error::Validation(format!(
                "bump needs 0 < 2*epsilon < delta, got delta = {d}, epsilon = {e}"
            )));
        }
        let e2 = e * e;
        for i in 0..=INVARIANT_SAMPLES {
            let r = -d + 2.0 * d * (i as f64 / INVARIANT_SAMPLES as f64);
            let c = self.chi(r);
            if !(0.0..=e2).contains(&c) {
                return Err(Error::Validation(format!("chi({r}) = {c} outside [0, eps^2]")));
            }
            if r.abs() <= e && c != e2 {
                return Err(Error::Validation(format!("chi not constant on plateau at r = {r}")));
            }
            if r.abs() >= 2.0 * e && c != 0.0 {
                return Err(Error::Validation(format!("chi not zero outside support at r = {r}")));
            }
            if r != 0.0 && self.dchi(r).abs() >= (2.0 * r).abs() {
                return Err(Error::Validation(format!("|chi'({r})| >= |2r|")));
            }
        }
        Ok(())
    }

    fn ramp(&self, r: f64) -> f64 {
        ((2.0 * self.epsilon - r.abs()) / self.epsilon).clamp(0.0, 1.0)
    }

    pub fn chi(&self, r: f64) -> f64 {
        let x = self.ramp(r);
        // the quintic can round slightly above 1 just below x = 1
        let s = (x * x * x * (x * (6.0 * x - 15.0) + 10.0)).min(1.0);
        self.epsilon * self.epsilon * s
    }

    pub fn dchi(&self, r: f64) -> f64 {
        let x = self.ramp(r);
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        -self.epsilon * 30.0 * x * x * (x - 1.0) * (x - 1.0) * r.signum()
    }

    pub fn ddchi(&self, r: f64) -> f64 {
        let x = self.ramp(r);
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        60.0 * x * (2.0 * x * x - 3.0 * x + 1.0)
    }

    /// `g(r, theta) = r^2 + chi(r) cos theta`.
    pub fn integral(&self, r: f64, theta: f64) -> f64 {
        r * r + self.chi(r) * theta.cos()
    }

    pub fn gradient(&self, r: f64, theta: f64) -> [f64; 2] {
        [
            2.0 * r + self.dchi(r) * theta.cos(),
            -self.chi(r) * theta.sin(),
        ]
    }

    pub fn hessian(&self, r: f64, theta: f64) -> [[f64; 2]; 2] {
        let (s, c) = theta.sin_cos();
        // adding 0.0 turns a signed zero into +0.0 for reporting
        let off = -self.dchi(r) * s + 0.0;
        [[2.0 + self.ddchi(r) * c, off], [off, -self.chi(r) * c + 0.0]]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MorseType {
    Minimum,
    Maximum,
    Saddle,
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub r: f64,
    /// Angle in `[0, 2 pi)`.
    pub theta: f64,
    pub kind: MorseType,
    pub hessian: [[f64; 2]; 2],
    pub eigenvalues: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriticalSetReport {
    pub bump: PerturbationBump,
    pub points: Vec<CriticalPoint>,
}

fn symmetric_eigenvalues(h: [[f64; 2]; 2]) -> [f64; 2] {
    let mean = 0.5 * (h[0][0] + h[1][1]);
    let half_diff = 0.5 * (h[0][0] - h[1][1]);
    let rad = half_diff.hypot(h[0][1]);
    [mean - rad, mean + rad]
}

fn classify(eig: [f64; 2]) -> MorseType {
    match (eig[0], eig[1]) {
        (a, b) if a > 0.0 && b > 0.0 => MorseType::Minimum,
        (a, b) if a < 0.0 && b < 0.0 => MorseType::Maximum,
        (a, b) if a < 0.0 && b > 0.0 => MorseType::Saddle,
        _ => MorseType::Degenerate,
    }
}

/// Roots of `f` on `[lo, hi]`: exact zeros at scan nodes plus bisection on
/// sign changes.
fn scan_roots(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let node = |i: usize| lo + (hi - lo) * (i as f64 / SCAN_INTERVALS as f64);
    let mut roots: Vec<f64> = Vec::new();
    let mut push = |r: f64| {
        if roots.last().is_none_or(|&last| (r - last).abs() > 1e-12) {
            roots.push(r);
        }
    };
    let mut prev = (node(0), f(node(0)));
    if prev.1 == 0.0 {
        push(prev.0);
    }
    for i in 1..=SCAN_INTERVALS {
        let x = node(i);
        let y = f(x);
        if y == 0.0 {
            push(x);
        } else if prev.1 != 0.0 && prev.1.signum() != y.signum() {
            let (mut a, mut b, fa) = (prev.0, x, prev.1);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fm == 0.0 || b - a <= f64::EPSILON * (1.0 + m.abs()) {
                    a = m;
                    b = m;
                    break;
                }
                if fm.signum() == fa.signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            push(0.5 * (a + b));
        }
        prev = (x, y);
    }
    roots
}

/// Critical points of `r^2 + chi(r) cos theta` on `[-delta, delta] x S^1`
/// with their Morse type.
///
/// `d/dtheta = -chi sin theta` vanishes only where `sin theta = 0` or
/// `chi = 0`. Where `chi = 0` also `chi' = 0`, so `d/dr = 2r`, which vanishes
/// only at `r = 0` where `chi > 0`. The remaining candidates are the roots of
/// `2r +/- chi'(r)` on the lines `theta = 0, pi`.
pub fn perturb_critical_surface(bump: &PerturbationBump) -> Result<CriticalSetReport> {
    bump.validate()?;
    let d = bump.delta;
    let mut out = Vec::new();
    for theta in [0.0, PI] {
        let c = theta.cos();
        for r in scan_roots(-d, d, |r| 2.0 * r + bump.dchi(r) * c) {
            let hessian = bump.hessian(r, theta);
            let eigenvalues = symmetric_eigenvalues(hessian);
            out.push(CriticalPoint {
                r,
                theta,
                kind: classify(eigenvalues),
                hessian,
                eigenvalues,
            });
        }
    }
    Ok(CriticalSetReport {
        bump: *bump,
        points: out,
    })
}
