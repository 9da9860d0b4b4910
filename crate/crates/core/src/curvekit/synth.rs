use super::{uniform_grid, CurveError, Frame, IntrinsicCurve, Vec3};

/// Samples of a curve on an increasing parameter grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SampledCurve {
    pub params: Vec<f64>,
    pub points: Vec<Vec3>,
    pub frames: Option<Vec<Frame>>,
    pub kappas: Option<Vec<f64>>,
    pub taus: Option<Vec<f64>>,
}

impl SampledCurve {
    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }
}

/// Integrator state at one arc-length value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameState {
    pub s: f64,
    pub position: Vec3,
    pub frame: Frame,
}

#[derive(Clone, Copy)]
struct Rates {
    dp: Vec3,
    dt: Vec3,
    dn: Vec3,
    db: Vec3,
}

fn rates(curve: &IntrinsicCurve, s: f64, f: &Frame) -> Result<Rates, CurveError> {
    let kappa = curve.kappa_jet(s)?.value();
    let tau = curve.tau_jet(s)?.value();
    Ok(Rates {
        dp: f.tangent,
        dt: f.normal * kappa,
        dn: f.binormal * tau - f.tangent * kappa,
        db: f.normal * -tau,
    })
}

fn advance(f: &Frame, k: &Rates, h: f64) -> Frame {
    Frame::new(
        f.tangent + k.dt * h,
        f.normal + k.dn * h,
        f.binormal + k.db * h,
    )
}

fn rk4_step(curve: &IntrinsicCurve, st: &FrameState, h: f64) -> Result<(Vec3, Frame), CurveError> {
    let (s, p, f) = (st.s, st.position, st.frame);
    let k1 = rates(curve, s, &f)?;
    // The rates do not depend on position, so only the frame is staged.
    let k2 = rates(curve, s + 0.5 * h, &advance(&f, &k1, 0.5 * h))?;
    let k3 = rates(curve, s + 0.5 * h, &advance(&f, &k2, 0.5 * h))?;
    let k4 = rates(curve, s + h, &advance(&f, &k3, h))?;
    let w = h / 6.0;
    let comb = |a: Vec3, b: Vec3, c: Vec3, d: Vec3| (a + (b + c) * 2.0 + d) * w;
    let position = p + comb(k1.dp, k2.dp, k3.dp, k4.dp);
    let frame = Frame::new(
        f.tangent + comb(k1.dt, k2.dt, k3.dt, k4.dt),
        f.normal + comb(k1.dn, k2.dn, k3.dn, k4.dn),
        f.binormal + comb(k1.db, k2.db, k3.db, k4.db),
    );
    Ok((position, frame.reorthonormalize()))
}

/// Integrates `p' = T, T' = κN, N' = −κT + τB, B' = −τN` over the curve's
/// domain and returns the state at `outputs` uniformly spaced arc lengths
/// (both ends included).
///
/// Each output interval is split into equal RK4 substeps no longer than the
/// curve's `step`. The frame is re-orthonormalized after every substep.
pub fn integrate_frenet(
    curve: &IntrinsicCurve,
    outputs: usize,
) -> Result<Vec<FrameState>, CurveError> {
    if !(curve.step > 0.0 && curve.step.is_finite()) {
        return Err(CurveError::InvalidStep(curve.step));
    }
    let outputs = outputs.max(2);
    let grid = uniform_grid(curve.domain.start(), curve.domain.end(), outputs);
    for &s in &grid {
        curve.kappa_checked(s)?;
    }
    let interval = curve.domain.len() / (outputs - 1) as f64;
    let substeps = ((interval / curve.step) - 1e-9).ceil().max(1.0) as usize;
    let h = interval / substeps as f64;

    let mut out = Vec::with_capacity(outputs);
    let mut state = FrameState {
        s: grid[0],
        position: curve.p0,
        frame: curve.frame0,
    };
    out.push(state);
    for &target in &grid[1..] {
        let base = state.s;
        for k in 0..substeps {
            let (position, frame) = rk4_step(curve, &state, h)?;
            let s = if k + 1 == substeps {
                target
            } else {
                base + h * (k + 1) as f64
            };
            state = FrameState { s, position, frame };
        }
        out.push(state);
    }
    Ok(out)
}

/// Synthesizes a curve from intrinsic data, sampling every integration step.
pub fn synthesize(curve: &IntrinsicCurve) -> Result<SampledCurve, CurveError> {
    if !(curve.step > 0.0 && curve.step.is_finite()) {
        return Err(CurveError::InvalidStep(curve.step));
    }
    let steps = ((curve.domain.len() / curve.step) - 1e-9).ceil().max(1.0) as usize;
    let states = integrate_frenet(curve, steps + 1)?;
    let mut kappas = Vec::with_capacity(states.len());
    let mut taus = Vec::with_capacity(states.len());
    for st in &states {
        kappas.push(curve.kappa_jet(st.s)?.value());
        taus.push(curve.tau_jet(st.s)?.value());
    }
    Ok(SampledCurve {
        params: states.iter().map(|st| st.s).collect(),
        points: states.iter().map(|st| st.position).collect(),
        frames: Some(states.iter().map(|st| st.frame).collect()),
        kappas: Some(kappas),
        taus: Some(taus),
    })
}

/// Worst orthonormality defect over a list of frames.
pub fn frame_drift(frames: &[Frame]) -> f64 {
    frames.iter().map(Frame::drift).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn unit_circle(step: f64) -> IntrinsicCurve {
        IntrinsicCurve::new(
            "1",
            "0",
            0.0,
            TAU,
            step,
            Vec3::zeros(),
            Vec3::x(),
            Vec3::y(),
        )
        .unwrap()
    }

    #[test]
    fn unit_curvature_gives_unit_circle() {
        let c = synthesize(&unit_circle(1e-3)).unwrap();
        let center = Vec3::new(0.0, 1.0, 0.0);
        let dev = c
            .points
            .iter()
            .map(|p| ((p - center).norm() - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(dev < 1e-8, "deviation {dev}");
        assert_eq!(*c.params.last().unwrap(), TAU);
        assert!(c.points.iter().all(|p| p.z == 0.0));
    }

    #[test]
    fn synthesized_circle_frames_stay_orthonormal() {
        let c = synthesize(&unit_circle(1e-3)).unwrap();
        let drift = frame_drift(c.frames.as_ref().unwrap());
        assert!(drift < 1e-10, "drift {drift}");
    }

    #[test]
    fn drift_of_scaled_and_identity_frames() {
        let f = Frame::identity();
        assert_eq!(frame_drift(&[f]), 0.0);
        let scaled = Frame::new(f.tangent * 2.0, f.normal * 2.0, f.binormal * 2.0);
        assert_eq!(frame_drift(&[scaled]), 1.0);
        let flipped = Frame::new(f.tangent, f.normal, -f.binormal);
        assert_eq!(frame_drift(&[flipped]), 2.0);
    }

    #[test]
    fn fourth_order_convergence_on_circle() {
        let err = |step| {
            let c = synthesize(&unit_circle(step)).unwrap();
            c.points.last().unwrap().norm()
        };
        let ratio = err(1e-2) / err(5e-3);
        assert!(ratio >= 8.0, "ratio {ratio}");
    }

    #[test]
    fn rejects_nonpositive_curvature() {
        let c = IntrinsicCurve::new(
            "cos(s)",
            "0",
            0.0,
            3.0,
            1e-2,
            Vec3::zeros(),
            Vec3::x(),
            Vec3::y(),
        )
        .unwrap();
        match synthesize(&c) {
            Err(CurveError::NonPositiveCurvature { s, .. }) => assert!(s > 1.5 && s < 1.6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn integrate_hits_requested_grid() {
        let c = unit_circle(1e-3);
        let states = integrate_frenet(&c, 9).unwrap();
        assert_eq!(states.len(), 9);
        assert_eq!(states[0].s, 0.0);
        assert_eq!(states[8].s, TAU);
        let q = &states[2];
        assert!((q.position - Vec3::new(1.0, 1.0, 0.0)).norm() < 1e-10);
    }
}
