//! Frenet apparatus `T, N, B, κ, τ` and the arc-length derivatives `κ′, τ′`.
//!
//! Analytic curves are not reparametrized: everything is computed from the
//! general-parameter identities
//!
//! ```text
//! v = |α′|,  T = α′/v,  κ = |α′×α″|/v³,  B = α′×α″/|α′×α″|,  N = B×T,
//! τ = ⟨α′×α″, α‴⟩/|α′×α″|²,  dκ/ds = (dκ/dt)/v,  dτ/ds = (dτ/dt)/v
//! ```
//!
//! with `dκ/dt` and `dτ/dt` obtained by pushing the derivatives of `α′, α″, α‴`
//! through the same formulas in jet arithmetic.

use rayon::prelude::*;

use crate::curvekit::{
    integrate_frenet, uniform_grid, AnalyticCurve, CurveError, CurveSpec, Frame, IntrinsicCurve,
    SampledCurve, Vec3, DEFAULT_QUAD_TOL,
};
use crate::exprjet::Jet4;
use crate::numeric::five_point;

pub const DEFAULT_KAPPA_FLOOR: f64 = 1e-12;
const MIN_SPEED: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FrenetError {
    #[error("curvature {kappa} at t = {t} is below the floor (straight point or inflection)")]
    DegenerateCurvature { t: f64, kappa: f64 },
    #[error("speed {speed} at t = {t} is zero")]
    ZeroSpeed { t: f64, speed: f64 },
    #[error("curve has zero curvature everywhere ({samples} samples)")]
    AllDegenerate { samples: usize },
    #[error("need at least {required} samples, got {got}")]
    TooFewSamples { required: usize, got: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl FrenetError {
    /// True for errors that mark a single grid point as unusable.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            FrenetError::DegenerateCurvature { .. } | FrenetError::ZeroSpeed { .. }
        )
    }
}

/// Frenet data at one parameter value. Derivatives are per unit arc length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetSample {
    pub t: f64,
    /// `|α′(t)|`; 1 for intrinsic curves.
    pub speed: f64,
    pub position: Vec3,
    pub frame: Frame,
    pub kappa: f64,
    pub tau: f64,
    pub dkappa_ds: f64,
    pub dtau_ds: f64,
    /// Second arc-length derivatives, available for intrinsic curves only.
    pub second: Option<SecondDerivatives>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondDerivatives {
    pub d2kappa_ds2: f64,
    pub d2tau_ds2: f64,
}

impl FrenetSample {
    pub fn tangent(&self) -> Vec3 {
        self.frame.tangent
    }

    pub fn normal(&self) -> Vec3 {
        self.frame.normal
    }

    pub fn binormal(&self) -> Vec3 {
        self.frame.binormal
    }
}

/// A grid point where the Frenet frame is undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct Gap {
    pub t: f64,
    pub s: f64,
    pub reason: FrenetError,
}

/// Frenet samples on a grid, with cumulative arc length alongside.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FrenetProfile {
    pub samples: Vec<FrenetSample>,
    /// Arc length from the start of the domain, parallel to `samples`.
    pub arc: Vec<f64>,
    pub gaps: Vec<Gap>,
    /// Number of grid points requested.
    pub grid_len: usize,
}

impl FrenetProfile {
    pub fn iter(&self) -> impl Iterator<Item = (f64, &FrenetSample)> {
        self.arc.iter().copied().zip(self.samples.iter())
    }

    pub fn degenerate_fraction(&self) -> f64 {
        if self.grid_len == 0 {
            0.0
        } else {
            self.gaps.len() as f64 / self.grid_len as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileOptions {
    pub kappa_floor: f64,
    pub quad_tol: f64,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        Self {
            kappa_floor: DEFAULT_KAPPA_FLOOR,
            quad_tol: DEFAULT_QUAD_TOL,
        }
    }
}

type JetVec = [Jet4; 3];

fn jet_vec(derivs: [Vec3; 4]) -> JetVec {
    // Unknown higher derivatives are zero-padded; only the first derivative
    // of the results below is ever read, and it only needs one extra order.
    std::array::from_fn(|i| {
        Jet4::new([derivs[0][i], derivs[1][i], derivs[2][i], derivs[3][i], 0.0])
    })
}

fn jcross(a: &JetVec, b: &JetVec) -> JetVec {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn jdot(a: &JetVec, b: &JetVec) -> Jet4 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Frame, curvature and torsion from the first three derivatives of a
/// regular curve in any parameter. Returns `(speed, frame, kappa, tau)`.
pub fn frame_from_derivatives(
    d1: Vec3,
    d2: Vec3,
    d3: Vec3,
    t: f64,
    kappa_floor: f64,
) -> Result<(f64, Frame, f64, f64), FrenetError> {
    let speed = d1.norm();
    if !(speed >= MIN_SPEED) {
        return Err(FrenetError::ZeroSpeed { t, speed });
    }
    let c = d1.cross(&d2);
    let cn = c.norm();
    let kappa = cn / (speed * speed * speed);
    if !(kappa >= kappa_floor) || cn == 0.0 {
        return Err(FrenetError::DegenerateCurvature { t, kappa });
    }
    let tangent = d1 / speed;
    let binormal = c / cn;
    let normal = binormal.cross(&tangent);
    let tau = c.dot(&d3) / (cn * cn);
    Ok((speed, Frame::new(tangent, normal, binormal), kappa, tau))
}

/// Frenet apparatus of an analytic curve at parameter `t`.
pub fn frenet_at(
    curve: &AnalyticCurve,
    t: f64,
    kappa_floor: f64,
) -> Result<FrenetSample, FrenetError> {
    let jet = curve.eval(t)?;
    let (speed, frame, kappa, tau) =
        frame_from_derivatives(jet.d1, jet.d2, jet.d3, t, kappa_floor)?;

    let a1 = jet_vec([jet.d1, jet.d2, jet.d3, jet.d4]);
    let a2 = jet_vec([jet.d2, jet.d3, jet.d4, Vec3::zeros()]);
    let a3 = jet_vec([jet.d3, jet.d4, Vec3::zeros(), Vec3::zeros()]);
    let c = jcross(&a1, &a2);
    let c2 = jdot(&c, &c);
    let v = jdot(&a1, &a1).sqrt();
    let kappa_jet = c2.sqrt() / (v * v * v);
    let tau_jet = jdot(&c, &a3) / c2;

    Ok(FrenetSample {
        t,
        speed,
        position: jet.p,
        frame,
        kappa,
        tau,
        dkappa_ds: kappa_jet.derivative(1) / speed,
        dtau_ds: tau_jet.derivative(1) / speed,
        second: None,
    })
}

fn intrinsic_sample(
    curve: &IntrinsicCurve,
    s: f64,
    position: Vec3,
    frame: Frame,
    kappa_floor: f64,
) -> Result<FrenetSample, FrenetError> {
    let k = curve.kappa_jet(s)?;
    let w = curve.tau_jet(s)?;
    if !(k.value() >= kappa_floor) {
        return Err(FrenetError::DegenerateCurvature {
            t: s,
            kappa: k.value(),
        });
    }
    Ok(FrenetSample {
        t: s,
        speed: 1.0,
        position,
        frame,
        kappa: k.value(),
        tau: w.value(),
        dkappa_ds: k.derivative(1),
        dtau_ds: w.derivative(1),
        second: Some(SecondDerivatives {
            d2kappa_ds2: k.derivative(2),
            d2tau_ds2: w.derivative(2),
        }),
    })
}

/// Frenet samples on a uniform grid of `n` points spanning the domain.
///
/// Degenerate points become [`Gap`]s; the call fails only if every point is
/// degenerate or a non-degeneracy error occurs.
pub fn frenet_profile(spec: &CurveSpec, n: usize) -> Result<FrenetProfile, FrenetError> {
    frenet_profile_with(spec, n, &ProfileOptions::default())
}

pub fn frenet_profile_with(
    spec: &CurveSpec,
    n: usize,
    opts: &ProfileOptions,
) -> Result<FrenetProfile, FrenetError> {
    if n < 2 {
        return Err(FrenetError::TooFewSamples {
            required: 2,
            got: n,
        });
    }
    let (points, arc): (Vec<Result<FrenetSample, FrenetError>>, Vec<f64>) = match spec {
        CurveSpec::Analytic(curve) => {
            let d = curve.domain;
            let grid = uniform_grid(d.start(), d.end(), n);
            let points = grid
                .par_iter()
                .map(|&t| frenet_at(curve, t, opts.kappa_floor))
                .collect();
            let pieces: Vec<f64> = grid
                .par_windows(2)
                .map(|w| spec.arc_length(w[0], w[1], opts.quad_tol))
                .collect::<Result<_, _>>()?;
            let mut arc = Vec::with_capacity(n);
            let mut acc = 0.0;
            arc.push(acc);
            for piece in pieces {
                acc += piece;
                arc.push(acc);
            }
            (points, arc)
        }
        CurveSpec::Intrinsic(curve) => {
            let states = integrate_frenet(curve, n)?;
            let start = curve.domain.start();
            let points = states
                .iter()
                .map(|st| intrinsic_sample(curve, st.s, st.position, st.frame, opts.kappa_floor))
                .collect();
            let arc = states.iter().map(|st| st.s - start).collect();
            (points, arc)
        }
    };

    let mut profile = FrenetProfile {
        grid_len: n,
        ..Default::default()
    };
    for (point, s) in points.into_iter().zip(arc) {
        match point {
            Ok(sample) => {
                profile.samples.push(sample);
                profile.arc.push(s);
            }
            Err(e) if e.is_degeneracy() => {
                let t = match &e {
                    FrenetError::DegenerateCurvature { t, .. }
                    | FrenetError::ZeroSpeed { t, .. } => *t,
                    _ => unreachable!(),
                };
                profile.gaps.push(Gap { t, s, reason: e });
            }
            Err(e) => return Err(e),
        }
    }
    if profile.samples.is_empty() {
        return Err(FrenetError::AllDegenerate { samples: n });
    }
    Ok(profile)
}

/// Curvature and torsion recovered from sampled frames alone.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FrameEstimates {
    pub params: Vec<f64>,
    /// Index into the source samples for each estimate.
    pub index: Vec<usize>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
}

/// Estimates κ = ⟨T′, N⟩ and τ = ⟨N′, B⟩ by fourth-order central differences
/// of the frames of a uniformly sampled unit-speed curve. The two samples at
/// each end are dropped.
pub fn estimate_from_frames(curve: &SampledCurve) -> Option<FrameEstimates> {
    let frames = curve.frames.as_ref()?;
    let n = frames.len();
    if n < 5 {
        return None;
    }
    let h = (curve.params[n - 1] - curve.params[0]) / (n - 1) as f64;
    let ts: Vec<Vec3> = frames.iter().map(|f| f.tangent).collect();
    let ns: Vec<Vec3> = frames.iter().map(|f| f.normal).collect();
    let mut out = FrameEstimates::default();
    for i in 2..n - 2 {
        let dt = five_point(&ts, i, h);
        let dn = five_point(&ns, i, h);
        out.params.push(curve.params[i]);
        out.index.push(i);
        out.kappa.push(dt.dot(&frames[i].normal));
        out.tau.push(dn.dot(&frames[i].binormal));
    }
    Some(out)
}
