//! Lutz-type contact forms `alpha = h1(t) dx1 + h2(t) dx2` on
//! `[t_lo, t_hi] x T^2`, viewed as planar curves `t -> (h1(t), h2(t))`.
//!
//! The contact condition is `Delta = h1 h2' - h1' h2 < 0`, i.e. the curve
//! turns clockwise about the origin. The Reeb field is
//! `R = (h2' d/dx1 - h1' d/dx2) / Delta`, tangent to the tori `t = const`.

mod io;
mod perturb;
mod spline;
mod twist;
mod winding;

pub use io::{CurveDoc, CurveKind};
pub use perturb::{
    perturb_critical_surface, CriticalPoint, CriticalSetReport, MorseType, PerturbationBump,
};
pub use spline::CubicSpline;
pub use twist::{full_lutz_twist, LutzTwist, TwistSegment, TwistSegmentKind};
pub use winding::{torsion_count_relative, winding_angle, zero_torsion_witness};

use serde::{Deserialize, Serialize};

use crate::{cattorus, Error, Execution, Result};

/// Number of interior check points used by whole-curve validations.
pub const CHECK_SAMPLES: usize = 10_000;

/// Relative tolerance between spline derivatives and finite differences
/// for sampled curves.
pub const SAMPLED_DERIVATIVE_TOL: f64 = 1e-6;

/// Values and first derivatives of the coefficient functions at one `t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub h1: f64,
    pub h2: f64,
    pub dh1: f64,
    pub dh2: f64,
}

impl CurvePoint {
    /// `h1 h2' - h1' h2`.
    pub fn delta(&self) -> f64 {
        self.h1 * self.dh2 - self.dh1 * self.h2
    }

    fn is_finite(&self) -> bool {
        self.h1.is_finite() && self.h2.is_finite() && self.dh1.is_finite() && self.dh2.is_finite()
    }
}

/// Registry of closed-form coefficient curves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ClosedForm {
    /// The cat-torus family.
    AlphaN { n: u32 },
    /// `h1 = 1, h2 = -t`, the Reeb-trivial chart near a critical Klein bottle.
    KleinNormal,
    /// Affine curve `origin + t * velocity`.
    Segment { origin: [f64; 2], velocity: [f64; 2] },
    /// `radius * (cos(phase - omega t), sin(phase - omega t))`, clockwise for
    /// `omega > 0`.
    Circle { radius: f64, omega: f64, phase: f64 },
}

impl ClosedForm {
    /// The straight segment `(t - s0, c)`.
    pub fn horizontal_segment(s0: f64, c: f64) -> Self {
        ClosedForm::Segment {
            origin: [-s0, c],
            velocity: [1.0, 0.0],
        }
    }

    pub fn eval(&self, t: f64) -> CurvePoint {
        match *self {
            ClosedForm::AlphaN { n } => cattorus::alpha_n(n, t),
            ClosedForm::KleinNormal => CurvePoint {
                h1: 1.0,
                h2: -t,
                dh1: 0.0,
                dh2: -1.0,
            },
            ClosedForm::Segment { origin, velocity } => CurvePoint {
                h1: origin[0] + t * velocity[0],
                h2: origin[1] + t * velocity[1],
                dh1: velocity[0],
                dh2: velocity[1],
            },
            ClosedForm::Circle {
                radius,
                omega,
                phase,
            } => {
                let (s, c) = (phase - omega * t).sin_cos();
                CurvePoint {
                    h1: radius * c,
                    h2: radius * s,
                    dh1: radius * omega * s,
                    dh2: -radius * omega * c,
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Closed(ClosedForm),
    Sampled(SampledCurve),
    Twisted { base: Box<LutzCurve>, twist: LutzTwist },
}

/// Tabulated coefficients with cubic-spline reconstruction.
#[derive(Clone, Debug)]
struct SampledCurve {
    samples: Vec<[f64; 3]>,
    h1: CubicSpline,
    h2: CubicSpline,
}

/// A planar coefficient curve on a closed parameter interval.
///
/// Construction only checks the domain and, for sampled curves, the grid;
/// the contact condition is checked by [`LutzCurve::validate`] and by the
/// operations that divide by `Delta`.
#[derive(Clone, Debug)]
pub struct LutzCurve {
    lo: f64,
    hi: f64,
    repr: Repr,
}

fn check_domain(lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::field(
            "domain",
            format!("need finite lo < hi, got [{lo}, {hi}]"),
        ));
    }
    Ok(())
}

impl LutzCurve {
    pub fn closed_form(form: ClosedForm, lo: f64, hi: f64) -> Result<Self> {
        check_domain(lo, hi)?;
        Ok(LutzCurve {
            lo,
            hi,
            repr: Repr::Closed(form),
        })
    }

    /// `alpha_n` of the cat torus on `[lo, hi]`.
    pub fn alpha_n(n: u32, lo: f64, hi: f64) -> Result<Self> {
        Self::closed_form(ClosedForm::AlphaN { n }, lo, hi)
    }

    pub fn klein_normal(lo: f64, hi: f64) -> Result<Self> {
        Self::closed_form(ClosedForm::KleinNormal, lo, hi)
    }

    /// Build from uniformly spaced `[t, h1, h2]` samples. Derivatives come
    /// from clamped cubic splines and must agree with fourth-order finite
    /// differences to [`SAMPLED_DERIVATIVE_TOL`] (relative).
    pub fn sampled(samples: Vec<[f64; 3]>) -> Result<Self> {
        if samples.len() < 5 {
            return Err(Error::field("samples", "need at least 5 samples"));
        }
        if let Some(i) = samples.iter().position(|s| s.iter().any(|x| !x.is_finite())) {
            return Err(Error::field(format!("samples[{i}]"), "non-finite entry"));
        }
        let lo = samples[0][0];
        let hi = samples[samples.len() - 1][0];
        check_domain(lo, hi)?;
        let step = (hi - lo) / (samples.len() - 1) as f64;
        for (i, s) in samples.iter().enumerate() {
            let expected = lo + step * i as f64;
            if (s[0] - expected).abs() > 1e-9 * step.max(expected.abs()) {
                return Err(Error::field(
                    format!("samples[{i}]"),
                    format!("grid not uniform: t = {} but expected {expected}", s[0]),
                ));
            }
        }
        let h1: Vec<f64> = samples.iter().map(|s| s[1]).collect();
        let h2: Vec<f64> = samples.iter().map(|s| s[2]).collect();
        let sampled = SampledCurve {
            h1: CubicSpline::clamped_uniform(lo, step, h1)?,
            h2: CubicSpline::clamped_uniform(lo, step, h2)?,
            samples,
        };
        for (name, spline) in [("h1", &sampled.h1), ("h2", &sampled.h2)] {
            if let Some((i, err)) = spline.derivative_mismatch(SAMPLED_DERIVATIVE_TOL) {
                return Err(Error::field(
                    "samples",
                    format!(
                        "{name} derivative reconstruction error {err:.3e} at sample {i} exceeds \
                         {SAMPLED_DERIVATIVE_TOL:e}; refine the grid"
                    ),
                ));
            }
        }
        Ok(LutzCurve {
            lo,
            hi,
            repr: Repr::Sampled(sampled),
        })
    }

    /// Tabulate this curve on `n + 1` uniform points.
    pub fn tabulate(&self, n: usize) -> Result<Vec<[f64; 3]>> {
        grid(self.lo, self.hi, n)
            .map(|t| self.eval(t).map(|p| [t, p.h1, p.h2]))
            .collect()
    }

    pub(crate) fn twisted(base: LutzCurve, twist: LutzTwist) -> Self {
        LutzCurve {
            lo: base.lo,
            hi: base.hi,
            repr: Repr::Twisted {
                base: Box::new(base),
                twist,
            },
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn closed_form_kind(&self) -> Option<ClosedForm> {
        match &self.repr {
            Repr::Closed(f) => Some(*f),
            _ => None,
        }
    }

    pub fn samples(&self) -> Option<&[[f64; 3]]> {
        match &self.repr {
            Repr::Sampled(s) => Some(&s.samples),
            _ => None,
        }
    }

    /// The outermost Lutz twist applied to this curve, if any.
    pub fn twist(&self) -> Option<&LutzTwist> {
        match &self.repr {
            Repr::Twisted { twist, .. } => Some(twist),
            _ => None,
        }
    }

    pub fn eval(&self, t: f64) -> Result<CurvePoint> {
        if !self.contains(t) {
            return Err(Error::Domain {
                t,
                lo: self.lo,
                hi: self.hi,
            });
        }
        let p = self.eval_in_domain(t);
        if !p.is_finite() {
            return Err(Error::NonFinite {
                what: "curve evaluation",
                t,
            });
        }
        Ok(p)
    }

    fn eval_in_domain(&self, t: f64) -> CurvePoint {
        match &self.repr {
            Repr::Closed(f) => f.eval(t),
            Repr::Sampled(s) => {
                let (h1, dh1) = s.h1.eval(t);
                let (h2, dh2) = s.h2.eval(t);
                CurvePoint { h1, h2, dh1, dh2 }
            }
            Repr::Twisted { base, twist } => {
                if twist.strictly_inside(t) {
                    twist.eval(t)
                } else {
                    base.eval_in_domain(t)
                }
            }
        }
    }

    /// Check points: a uniform grid of [`CHECK_SAMPLES`] intervals plus the
    /// knots of sampled curves.
    pub fn check_points(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = grid(self.lo, self.hi, CHECK_SAMPLES).collect();
        if let Some(s) = self.samples() {
            ts.extend(s.iter().map(|x| x[0]));
        }
        ts
    }

    /// `Delta` at every check point.
    pub fn sample_contact_defect(&self, exec: Execution) -> Result<Vec<(f64, f64)>> {
        let ts = self.check_points();
        exec.try_map(&ts, |&t| contact_defect(self, t).map(|d| (t, d)))
    }

    /// Fails if the curve meets the origin at a check point (reported first,
    /// since `Delta` vanishes there too), otherwise at the first check point
    /// with `Delta >= 0`.
    pub fn validate(&self) -> Result<()> {
        self.validate_with(Execution::default())
    }

    pub fn validate_with(&self, exec: Execution) -> Result<()> {
        let ts = self.check_points();
        let checks = exec.map(&ts, |&t| -> Result<()> {
            let p = self.eval(t)?;
            if p.h1 == 0.0 && p.h2 == 0.0 {
                return Err(Error::Singularity { t });
            }
            let delta = p.delta();
            if delta.is_nan() || delta >= 0.0 {
                return Err(Error::ContactViolation { t, delta });
            }
            Ok(())
        });
        let mut first = Ok(());
        for c in checks {
            match c {
                Err(e @ Error::Singularity { .. }) => return Err(e),
                Err(e) if first.is_ok() => first = Err(e),
                _ => {}
            }
        }
        first
    }
}

/// `n + 1` points from `lo` to `hi`, both endpoints hit exactly.
pub(crate) fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(1);
    (0..=n).map(move |i| {
        if i == n {
            hi
        } else {
            lo + (hi - lo) * (i as f64 / n as f64)
        }
    })
}

/// `h1 h2' - h1' h2` at `t`.
pub fn contact_defect(curve: &LutzCurve, t: f64) -> Result<f64> {
    let d = curve.eval(t)?.delta();
    if !d.is_finite() {
        return Err(Error::NonFinite {
            what: "contact defect",
            t,
        });
    }
    Ok(d)
}

/// `Delta(t) < 0` at every check point.
pub fn is_contact(curve: &LutzCurve) -> bool {
    curve.validate().is_ok()
}

fn contact_point(curve: &LutzCurve, t: f64) -> Result<(CurvePoint, f64)> {
    let p = curve.eval(t)?;
    let delta = p.delta();
    if !(delta < 0.0) {
        return Err(Error::ContactViolation { t, delta });
    }
    Ok((p, delta))
}

/// `(R1, R2)` components of the Reeb field; the `t` component is zero.
pub fn reeb_velocity(curve: &LutzCurve, t: f64) -> Result<[f64; 2]> {
    let (p, delta) = contact_point(curve, t)?;
    Ok([p.dh2 / delta, -p.dh1 / delta])
}

/// The field `Y` with `alpha(Y) = 0` and `i_Y d alpha = -df`, i.e.
/// `Y = f'(t) (-h2, h1) / Delta`. It is tangent to the tori, so `df(Y) = 0`.
pub fn transverse_y(curve: &LutzCurve, f: &BottProfile, t: f64) -> Result<[f64; 2]> {
    let (p, delta) = contact_point(curve, t)?;
    let df = f.derivative(t);
    if !df.is_finite() {
        return Err(Error::NonFinite {
            what: "Bott profile derivative",
            t,
        });
    }
    Ok([-df * p.h2 / delta, df * p.h1 / delta])
}

/// Whether a Bott profile is declared Morse (isolated nondegenerate
/// critical points) or monotone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileMode {
    Morse,
    Monotone,
}

/// A Bott integral depending only on the transverse coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "profile", rename_all = "snake_case")]
pub enum BottProfile {
    /// `value + sign * (t - center)^2`; `sign` is `+1` or `-1`.
    Quadratic { center: f64, value: f64, sign: f64 },
    /// `offset + slope * t`.
    Linear { offset: f64, slope: f64 },
    /// `amplitude * cos(2 pi t / period)`, the lift of a Morse function on a
    /// circle.
    Periodic { amplitude: f64, period: f64 },
}

impl BottProfile {
    /// `f(t) = t^2`.
    pub fn square() -> Self {
        BottProfile::Quadratic {
            center: 0.0,
            value: 0.0,
            sign: 1.0,
        }
    }

    pub fn mode(&self) -> ProfileMode {
        match self {
            BottProfile::Linear { .. } => ProfileMode::Monotone,
            _ => ProfileMode::Morse,
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match *self {
            BottProfile::Quadratic {
                center,
                value,
                sign,
            } => value + sign * (t - center).powi(2),
            BottProfile::Linear { offset, slope } => offset + slope * t,
            BottProfile::Periodic { amplitude, period } => {
                amplitude * (std::f64::consts::TAU * t / period).cos()
            }
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            BottProfile::Quadratic { center, sign, .. } => 2.0 * sign * (t - center),
            BottProfile::Linear { slope, .. } => slope,
            BottProfile::Periodic { amplitude, period } => {
                let w = std::f64::consts::TAU / period;
                -amplitude * w * (w * t).sin()
            }
        }
    }

    pub fn second_derivative(&self, t: f64) -> f64 {
        match *self {
            BottProfile::Quadratic { sign, .. } => 2.0 * sign,
            BottProfile::Linear { .. } => 0.0,
            BottProfile::Periodic { amplitude, period } => {
                let w = std::f64::consts::TAU / period;
                -amplitude * w * w * (w * t).cos()
            }
        }
    }

    /// Checks the declared mode: a monotone profile must have a nonzero
    /// slope, a Morse profile nonzero amplitude/sign and period.
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            BottProfile::Quadratic {
                center,
                value,
                sign,
            } => center.is_finite() && value.is_finite() && (sign == 1.0 || sign == -1.0),
            BottProfile::Linear { offset, slope } => {
                offset.is_finite() && slope.is_finite() && slope != 0.0
            }
            BottProfile::Periodic { amplitude, period } => {
                amplitude.is_finite() && amplitude != 0.0 && period.is_finite() && period > 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Validation(format!("degenerate Bott profile {self:?}")))
        }
    }
}
