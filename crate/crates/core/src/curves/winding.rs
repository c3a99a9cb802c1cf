use std::f64::consts::{FRAC_PI_2, TAU};

use super::{grid, LutzCurve, CHECK_SAMPLES};
use crate::{Error, Result};

const INITIAL_STEPS: usize = 256;
const MAX_STEPS: usize = 1 << 22;
/// Tolerance on the distance of a turn ratio from an integer.
const TORSION_TOL: f64 = 1e-3;

/// Total turning angle of `(h1, h2)` about the origin from `t0` to `t1`,
/// counterclockwise positive.
///
/// Increments are `atan2(cross, dot)` between consecutive samples. The grid
/// is doubled until every increment is below `pi/2` and two successive
/// refinements agree, so a loop cannot hide between samples.
pub fn winding_angle(curve: &LutzCurve, t0: f64, t1: f64) -> Result<f64> {
    for t in [t0, t1] {
        if !curve.contains(t) {
            let (lo, hi) = curve.domain();
            return Err(Error::Domain { t, lo, hi });
        }
    }
    if t0 == t1 {
        return Ok(0.0);
    }
    if t0 > t1 {
        return winding_angle(curve, t1, t0).map(|w| -w);
    }

    let mut previous: Option<f64> = None;
    let mut steps = INITIAL_STEPS;
    while steps <= MAX_STEPS {
        if let Some(total) = accumulate(curve, t0, t1, steps)? {
            if let Some(prev) = previous {
                if (total - prev).abs() < 1e-6 {
                    return Ok(total);
                }
            }
            previous = Some(total);
        }
        steps *= 2;
    }
    Err(Error::Resolution {
        t0,
        t1,
        steps: MAX_STEPS,
    })
}

/// Sum of angle increments on a uniform grid, or `None` when some step
/// turns by `pi/2` or more.
fn accumulate(curve: &LutzCurve, t0: f64, t1: f64, steps: usize) -> Result<Option<f64>> {
    let mut total = 0.0;
    let mut prev: Option<(f64, f64)> = None;
    for t in grid(t0, t1, steps) {
        let p = curve.eval(t)?;
        if p.h1 == 0.0 && p.h2 == 0.0 {
            return Err(Error::Singularity { t });
        }
        if let Some((x0, y0)) = prev {
            let cross = x0 * p.h2 - y0 * p.h1;
            let dot = x0 * p.h1 + y0 * p.h2;
            let inc = cross.atan2(dot);
            if inc.abs() >= FRAC_PI_2 {
                return Ok(None);
            }
            total += inc;
        }
        prev = Some((p.h1, p.h2));
    }
    Ok(Some(total))
}

/// Number of extra clockwise full turns of `curve` relative to `base` over
/// their common domain.
pub fn torsion_count_relative(curve: &LutzCurve, base: &LutzCurve) -> Result<i64> {
    let (lo, hi) = curve.domain();
    if base.domain() != (lo, hi) {
        return Err(Error::Validation(format!(
            "curves must share a domain: {:?} vs {:?}",
            curve.domain(),
            base.domain()
        )));
    }
    let w_curve = winding_angle(curve, lo, hi)?;
    let w_base = winding_angle(base, lo, hi)?;
    let turns = (w_base - w_curve) / TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() > TORSION_TOL {
        return Err(Error::Inconsistent(format!(
            "relative winding is {turns} turns, not an integer"
        )));
    }
    Ok(rounded as i64)
}

/// Sufficient certificate for zero torsion: `h2 > 0` at every check point.
pub fn zero_torsion_witness(curve: &LutzCurve) -> bool {
    let (lo, hi) = curve.domain();
    grid(lo, hi, CHECK_SAMPLES).all(|t| curve.eval(t).is_ok_and(|p| p.h2 > 0.0))
}
