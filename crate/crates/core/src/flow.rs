//! Reeb flows of Lutz-type forms.
//!
//! In a Lutz chart the Reeb field `(0, R1(t), R2(t))` has no transverse
//! component, so orbits stay on the torus `t = const` and any function of
//! `t` is conserved. The integrator is classical fixed-step RK4; angles are
//! integrated unwrapped and only reduced mod `2 pi` when a state is stored.

use std::f64::consts::TAU;
use std::io::Write;

use serde::Serialize;

use crate::curves::{reeb_velocity, BottProfile, LutzCurve};
use crate::{Error, Execution, Result};

/// Reduce an angle into `[0, 2 pi)`.
pub fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowState {
    /// Transverse coordinate.
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
    /// Elapsed flow time.
    pub time: f64,
}

impl FlowState {
    pub fn new(t: f64, x1: f64, x2: f64) -> Self {
        FlowState {
            t,
            x1: reduce_angle(x1),
            x2: reduce_angle(x2),
            time: 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    states: Vec<FlowState>,
    f_values: Vec<f64>,
    step: f64,
    direction: Direction,
    /// `max |f(state) - f(state_0)|`.
    pub integral_drift: f64,
    /// `max |t(state) - t(state_0)|`.
    pub t_drift: f64,
}

impl Trajectory {
    fn start(x0: FlowState, f0: f64, step: f64, direction: Direction) -> Self {
        Trajectory {
            states: vec![x0],
            f_values: vec![f0],
            step,
            direction,
            integral_drift: 0.0,
            t_drift: 0.0,
        }
    }

    fn push(&mut self, s: FlowState, f: f64) {
        self.integral_drift = self.integral_drift.max((f - self.f_values[0]).abs());
        self.t_drift = self.t_drift.max((s.t - self.states[0].t).abs());
        self.states.push(s);
        self.f_values.push(f);
    }

    pub fn states(&self) -> &[FlowState] {
        &self.states
    }

    pub fn f_values(&self) -> &[f64] {
        &self.f_values
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn last(&self) -> &FlowState {
        self.states.last().expect("trajectory holds the initial state")
    }

    /// Largest angular deviation from the exact linear flow on the initial
    /// torus.
    pub fn max_error_vs_exact(&self, curve: &LutzCurve) -> Result<f64> {
        let x0 = self.states[0];
        let sign = self.direction.sign();
        let r = reeb_velocity(curve, x0.t)?;
        Ok(self
            .states
            .iter()
            .map(|s| {
                let ex1 = x0.x1 + sign * s.time * r[0];
                let ex2 = x0.x2 + sign * s.time * r[1];
                angle_distance(s.x1, ex1)
                    .max(angle_distance(s.x2, ex2))
                    .max((s.t - x0.t).abs())
            })
            .fold(0.0, f64::max))
    }

    /// CSV with header `time,t,x1,x2,f`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["time", "t", "x1", "x2", "f"])?;
        for (s, f) in self.states.iter().zip(&self.f_values) {
            out.serialize((s.time, s.t, s.x1, s.x2, f))?;
        }
        out.flush()?;
        Ok(())
    }
}

fn step_count(duration: f64, dt: f64) -> Result<usize> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Validation(format!("step dt must be positive, got {dt}")));
    }
    if !(duration.is_finite() && duration >= dt) {
        return Err(Error::Validation(format!(
            "duration T = {duration} must be at least dt = {dt}"
        )));
    }
    Ok((duration / dt).round() as usize)
}

fn field(curve: &LutzCurve, y: &[f64; 3], sign: f64) -> Result<[f64; 3]> {
    let r = reeb_velocity(curve, y[0])?;
    Ok([0.0, sign * r[0], sign * r[1]])
}

/// One classical RK4 step of size `h` for the autonomous system `y' = v(y)`.
pub fn rk4_step<F>(v: F, y: [f64; 3], h: f64) -> Result<[f64; 3]>
where
    F: Fn(&[f64; 3]) -> Result<[f64; 3]>,
{
    let add = |y: [f64; 3], k: [f64; 3], s: f64| [y[0] + s * k[0], y[1] + s * k[1], y[2] + s * k[2]];
    let k1 = v(&y)?;
    let k2 = v(&add(y, k1, h / 2.0))?;
    let k3 = v(&add(y, k2, h / 2.0))?;
    let k4 = v(&add(y, k3, h))?;
    Ok(std::array::from_fn(|i| {
        y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    }))
}

fn integrate(
    curve: &LutzCurve,
    f: &BottProfile,
    x0: FlowState,
    duration: f64,
    dt: f64,
    direction: Direction,
) -> Result<Trajectory> {
    let steps = step_count(duration, dt)?;
    if !curve.contains(x0.t) {
        let (lo, hi) = curve.domain();
        return Err(Error::Domain { t: x0.t, lo, hi });
    }
    let start = FlowState { time: 0.0, ..x0 };
    let mut traj = Trajectory::start(start, f.value(x0.t), dt, direction);
    let sign = direction.sign();
    let mut y = [x0.t, x0.x1, x0.x2];
    for i in 1..=steps {
        y = match rk4_step(|y| field(curve, y, sign), y, dt) {
            Ok(next) => next,
            Err(cause) => {
                return Err(Error::FlowAborted {
                    partial: Box::new(traj),
                    cause: Box::new(cause),
                })
            }
        };
        let state = FlowState {
            t: y[0],
            x1: reduce_angle(y[1]),
            x2: reduce_angle(y[2]),
            time: i as f64 * dt,
        };
        traj.push(state, f.value(y[0]));
    }
    Ok(traj)
}

/// Integrate the Reeb flow forward for time `duration` (rounded to a whole
/// number of steps `dt`).
pub fn integrate_reeb(
    curve: &LutzCurve,
    f: &BottProfile,
    x0: FlowState,
    duration: f64,
    dt: f64,
) -> Result<Trajectory> {
    integrate(curve, f, x0, duration, dt, Direction::Forward)
}

/// Same as [`integrate_reeb`] with the field reversed.
pub fn integrate_reeb_backward(
    curve: &LutzCurve,
    f: &BottProfile,
    x0: FlowState,
    duration: f64,
    dt: f64,
) -> Result<Trajectory> {
    integrate(curve, f, x0, duration, dt, Direction::Backward)
}

/// Integrate from many initial conditions.
pub fn integrate_many(
    curve: &LutzCurve,
    f: &BottProfile,
    initial: &[FlowState],
    duration: f64,
    dt: f64,
    exec: Execution,
) -> Vec<Result<Trajectory>> {
    exec.map(initial, |&x0| integrate_reeb(curve, f, x0, duration, dt))
}

/// Exact flow on the torus `t = const`: `x0 + T R(t)` mod `2 pi`.
pub fn exact_linear_flow(curve: &LutzCurve, t: f64, x0: [f64; 2], duration: f64) -> Result<[f64; 2]> {
    let r = reeb_velocity(curve, t)?;
    Ok([
        reduce_angle(x0[0] + duration * r[0]),
        reduce_angle(x0[1] + duration * r[1]),
    ])
}
