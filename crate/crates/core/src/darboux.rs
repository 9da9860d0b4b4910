//! Darboux frame `{T, Y = U×T, U}` of curves lying on the unit sphere.
//!
//! `U` is the outward sphere normal, i.e. the position itself. With this
//! orientation a great circle has `k_n = −1`. `φ` is the angle from `B` to
//! `U` measured toward `N`, so that `U = sin φ·N + cos φ·B` and
//! `Y = cos φ·N − sin φ·B`.

use std::f64::consts::TAU;

use crate::curvekit::{CurveSpec, Frame, Vec3};
use crate::frenet::{frenet_profile_with, FrenetError, FrenetProfile, ProfileOptions};
use crate::numeric::gradient;

/// Points farther than this from the unit sphere are rejected.
pub const SPHERE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DarbouxError {
    #[error("point at t = {t} has radius {radius}, not on the unit sphere")]
    OffSphere { t: f64, radius: f64 },
    #[error(transparent)]
    Frenet(#[from] FrenetError),
}

/// Frenet data of a curve at one grid point, in a form shared by analytic
/// curves and derived curves such as the normal indicatrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FramedPoint {
    pub t: f64,
    /// Grid coordinate used for differencing φ.
    pub s: f64,
    /// Arc length of the curve per unit of `s`.
    pub speed: f64,
    pub position: Vec3,
    pub frame: Frame,
    pub kappa: f64,
    /// Unavailable when the curve's third derivative is unknown.
    pub tau: Option<f64>,
}

impl FramedPoint {
    pub fn from_profile(profile: &FrenetProfile) -> Vec<FramedPoint> {
        profile
            .iter()
            .map(|(s, fr)| FramedPoint {
                t: fr.t,
                s,
                speed: 1.0,
                position: fr.position,
                frame: fr.frame,
                kappa: fr.kappa,
                tau: Some(fr.tau),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxSample {
    pub t: f64,
    pub tangent: Vec3,
    pub y: Vec3,
    pub u: Vec3,
    pub k_g: f64,
    pub k_n: f64,
    /// `τ − φ′`; `None` when the torsion is unavailable.
    pub tau_g: Option<f64>,
    /// Unwrapped along the grid.
    pub phi: f64,
}

/// Darboux data along a sampled curve on the unit sphere.
pub fn darboux_on_sphere(points: &[FramedPoint]) -> Result<Vec<DarbouxSample>, DarbouxError> {
    let mut out = Vec::with_capacity(points.len());
    let mut prev_phi: Option<f64> = None;
    for p in points {
        let radius = p.position.norm();
        if !((radius - 1.0).abs() <= SPHERE_TOL) {
            return Err(DarbouxError::OffSphere { t: p.t, radius });
        }
        let u = p.position / radius;
        let Frame {
            tangent,
            normal,
            binormal,
        } = p.frame;
        let y = u.cross(&tangent);
        let raw = u.dot(&normal).atan2(u.dot(&binormal));
        let phi = match prev_phi {
            None => raw,
            Some(prev) => raw + TAU * ((prev - raw) / TAU).round(),
        };
        prev_phi = Some(phi);
        out.push(DarbouxSample {
            t: p.t,
            tangent,
            y,
            u,
            k_g: p.kappa * normal.dot(&y),
            k_n: p.kappa * normal.dot(&u),
            tau_g: None,
            phi,
        });
    }

    if points.iter().all(|p| p.tau.is_some()) && !points.is_empty() {
        let s: Vec<f64> = points.iter().map(|p| p.s).collect();
        let phi: Vec<f64> = out.iter().map(|d| d.phi).collect();
        for ((d, p), dphi) in out.iter_mut().zip(points).zip(gradient(&s, &phi)) {
            d.tau_g = p.tau.map(|tau| tau - dphi / p.speed);
        }
    }
    Ok(out)
}

/// Darboux data for an analytic curve on the unit sphere, on `n` grid points.
pub fn darboux_for_spec(
    spec: &CurveSpec,
    n: usize,
    opts: &ProfileOptions,
) -> Result<(FrenetProfile, Vec<DarbouxSample>), DarbouxError> {
    let profile = frenet_profile_with(spec, n, opts)?;
    let samples = darboux_on_sphere(&FramedPoint::from_profile(&profile))?;
    Ok((profile, samples))
}

/// How far the Darboux frame is from the Frenet frame rotated by φ about T.
pub fn rotation_consistency(d: &DarbouxSample, frame: &Frame) -> f64 {
    let (sin, cos) = d.phi.sin_cos();
    let y = frame.normal * cos - frame.binormal * sin;
    let u = frame.normal * sin + frame.binormal * cos;
    (d.y - y).norm().max((d.u - u).norm())
}

/// Largest residuals of `κ² = k_g² + k_n²`, `k_g = κ cos φ`, `k_n = κ sin φ`.
pub fn curvature_identity_residuals(points: &[FramedPoint], samples: &[DarbouxSample]) -> [f64; 3] {
    let mut r = [0.0f64; 3];
    for (p, d) in points.iter().zip(samples) {
        let k = p.kappa;
        r[0] = r[0].max((k * k - (d.k_g * d.k_g + d.k_n * d.k_n)).abs());
        r[1] = r[1].max((d.k_g - k * d.phi.cos()).abs());
        r[2] = r[2].max((d.k_n - k * d.phi.sin()).abs());
    }
    r
}
