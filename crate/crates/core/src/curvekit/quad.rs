use super::CurveError;

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_DEPTH: u32 = 50;

const MAX_EVALUATIONS: usize = 10_000_000;

struct State<F> {
    f: F,
    evaluations: usize,
    unconverged_error: f64,
    exhausted: bool,
}

impl<F: FnMut(f64) -> Result<f64, CurveError>> State<F> {
    fn eval(&mut self, x: f64) -> Result<f64, CurveError> {
        self.evaluations += 1;
        (self.f)(x)
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64, CurveError> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm)?;
        let frm = self.eval(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 || self.evaluations >= MAX_EVALUATIONS || m <= a || m >= b {
            self.unconverged_error += delta.abs() / 15.0;
            self.exhausted = true;
            return Ok(left + right + delta / 15.0);
        }
        let l = self.refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
        let r = self.refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
        Ok(l + r)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with absolute tolerance `tol`.
///
/// Fails with [`CurveError::Quadrature`] if any subinterval is still
/// unresolved after `max_depth` bisections.
pub fn adaptive_simpson<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<f64, CurveError>
where
    F: FnMut(f64) -> Result<f64, CurveError>,
{
    if a == b {
        return Ok(0.0);
    }
    let mut st = State {
        f,
        evaluations: 0,
        unconverged_error: 0.0,
        exhausted: false,
    };
    let fa = st.eval(a)?;
    let fb = st.eval(b)?;
    let fm = st.eval(0.5 * (a + b))?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let estimate = st.refine(a, b, fa, fm, fb, whole, tol, max_depth)?;
    if st.exhausted && st.unconverged_error > tol {
        return Err(CurveError::Quadrature {
            estimate,
            error: st.unconverged_error,
        });
    }
    Ok(estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn integrates_smooth_functions() {
        let v = adaptive_simpson(|x| Ok(x.sin()), 0.0, std::f64::consts::PI, 1e-12, 50).unwrap();
        assert_relative_eq!(v, 2.0, epsilon = 1e-12);
        let v = adaptive_simpson(|x| Ok(x.exp()), 0.0, 1.0, 1e-12, 50).unwrap();
        assert_relative_eq!(v, std::f64::consts::E - 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cubic_is_exact() {
        let v = adaptive_simpson(|x| Ok(x * x * x - x), -1.0, 2.0, 1e-10, 50).unwrap();
        assert_relative_eq!(v, 2.25, epsilon = 1e-14);
    }

    #[test]
    fn singular_integrand_reports_nonconvergence() {
        let err = adaptive_simpson(|x: f64| Ok(1.0 / x.abs().max(1e-300)), -1.0, 1.0, 1e-10, 8)
            .unwrap_err();
        assert!(matches!(err, CurveError::Quadrature { .. }));
    }
}
