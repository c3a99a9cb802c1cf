use crate::{Error, Result};

/// Clamped cubic spline on a uniform grid, stored in Hermite form (values
/// and knot slopes). End slopes come from five-point one-sided differences,
/// which keeps the derivative error third order up to the boundary.
#[derive(Clone, Debug)]
pub struct CubicSpline {
    lo: f64,
    step: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl CubicSpline {
    pub fn clamped_uniform(lo: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 5 {
            return Err(Error::field("samples", "spline needs at least 5 knots"));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::field("samples", "grid step must be positive"));
        }
        let y = &values;
        let h = step;
        let start = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / (12.0 * h);
        let end = (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4]
            + 3.0 * y[n - 5])
            / (12.0 * h);

        // Interior: m[i-1] + 4 m[i] + m[i+1] = 3 (y[i+1] - y[i-1]) / h.
        let mut slopes = vec![0.0; n];
        slopes[0] = start;
        slopes[n - 1] = end;
        let interior = n - 2;
        let mut rhs: Vec<f64> = (1..n - 1)
            .map(|i| 3.0 * (y[i + 1] - y[i - 1]) / h)
            .collect();
        rhs[0] -= start;
        rhs[interior - 1] -= end;
        // Thomas algorithm with constant tridiagonal (1, 4, 1).
        let mut diag = vec![4.0; interior];
        for i in 1..interior {
            let w = 1.0 / diag[i - 1];
            diag[i] -= w;
            rhs[i] -= w * rhs[i - 1];
        }
        slopes[interior] = rhs[interior - 1] / diag[interior - 1];
        for i in (0..interior - 1).rev() {
            slopes[i + 1] = (rhs[i] - slopes[i + 2]) / diag[i];
        }
        Ok(CubicSpline {
            lo,
            step,
            values,
            slopes,
        })
    }

    pub fn knots(&self) -> usize {
        self.values.len()
    }

    /// Value and first derivative at `t`. Outside the grid the end cubic is
    /// extrapolated.
    pub fn eval(&self, t: f64) -> (f64, f64) {
        let n = self.values.len();
        let x = (t - self.lo) / self.step;
        let k = (x.floor().max(0.0) as usize).min(n - 2);
        let u = x - k as f64;
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let (m0, m1) = (self.slopes[k], self.slopes[k + 1]);
        let h = self.step;
        let (u2, u3) = (u * u, u * u * u);
        let value = (2.0 * u3 - 3.0 * u2 + 1.0) * y0
            + (u3 - 2.0 * u2 + u) * h * m0
            + (-2.0 * u3 + 3.0 * u2) * y1
            + (u3 - u2) * h * m1;
        let deriv = ((6.0 * u2 - 6.0 * u) * y0 + (-6.0 * u2 + 6.0 * u) * y1) / h
            + (3.0 * u2 - 4.0 * u + 1.0) * m0
            + (3.0 * u2 - 2.0 * u) * m1;
        (value, deriv)
    }

    /// First interior knot where the spline slope and the fourth-order
    /// central difference disagree by more than `tol`, relative to the
    /// largest difference quotient on the grid.
    pub fn derivative_mismatch(&self, tol: f64) -> Option<(usize, f64)> {
        let y = &self.values;
        let n = y.len();
        let fd: Vec<(usize, f64)> = (2..n - 2)
            .map(|i| {
                let d = (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) / (12.0 * self.step);
                (i, d)
            })
            .collect();
        let scale = fd.iter().map(|(_, d)| d.abs()).fold(0.0, f64::max);
        let scale = if scale > 0.0 { scale } else { 1.0 };
        fd.into_iter()
            .map(|(i, d)| (i, (self.slopes[i] - d).abs() / scale))
            .find(|&(_, err)| err > tol)
    }
}
