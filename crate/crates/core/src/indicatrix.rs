//! Principal normal indicatrix `β(s) = N(s)` on the unit sphere.
//!
//! Per arc length of the base curve,
//!
//! ```text
//! β′ = −κT + τB
//! β″ = −κ′T − (κ² + τ²)N + τ′B
//! ```
//!
//! The curvature of β is `κ_β = |β′×β″|/|β′|³`, which also equals
//! `√(1 + σ²)`. Its normal curvature on the sphere is 1 in magnitude, so the
//! geodesic curvature satisfies `k_g² = κ_β² − 1`; its sign follows σ.
//! The indicatrix is a circle (constant `⟨β, d⟩`) exactly for slant helices.

use nalgebra::{Matrix3, SymmetricEigen};

use crate::curvekit::{CurveSpec, Vec3};
use crate::darboux::FramedPoint;
use crate::frenet::{
    frame_from_derivatives, frenet_profile_with, FrenetError, FrenetProfile, FrenetSample,
};
use crate::slant::{
    classify_profile, sigma_at, AxisSign, ClassifyOptions, SlantError, MIN_SAMPLES,
};

/// Window below 1 within which `κ_β` is treated as rounding.
pub const KAPPA_BETA_CLAMP: f64 = 1e-9;
const ROTATION_FLOOR: f64 = 1e-24;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IndicatrixError {
    #[error("need at least {MIN_SAMPLES} samples, got {0}")]
    TooFewSamples(usize),
    #[error("κ² + τ² = {value} at t = {t} is below the floor")]
    DegenerateRotation { t: f64, value: f64 },
    #[error(
        "indicatrix curvature {kappa_beta} is below 1 (κ_β² − 1 = {excess}); inconsistent data"
    )]
    Inconsistent { kappa_beta: f64, excess: f64 },
    #[error(transparent)]
    Frenet(#[from] FrenetError),
    #[error(transparent)]
    Slant(#[from] SlantError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSample {
    pub t: f64,
    pub s: f64,
    pub beta: Vec3,
    pub kappa_beta: f64,
    pub k_g: f64,
    /// `⟨β, d̄⟩`.
    pub plane_offset: f64,
    pub sigma: f64,
}

/// The two routes to the curvature of β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaBeta {
    /// `|β′×β″|/|β′|³`.
    pub vector: f64,
    /// `√(((κ² + τ²)³ + (τ′κ − κ′τ)²) / (κ² + τ²)³)`.
    pub closed_form: f64,
}

fn beta_derivatives(fr: &FrenetSample) -> (Vec3, Vec3) {
    let (t, n, b) = (fr.tangent(), fr.normal(), fr.binormal());
    let r2 = fr.kappa * fr.kappa + fr.tau * fr.tau;
    let d1 = b * fr.tau - t * fr.kappa;
    let d2 = b * fr.dtau_ds - t * fr.dkappa_ds - n * r2;
    (d1, d2)
}

pub fn indicatrix_curvature(fr: &FrenetSample) -> Result<KappaBeta, IndicatrixError> {
    let r2 = fr.kappa * fr.kappa + fr.tau * fr.tau;
    if !(r2 >= ROTATION_FLOOR) {
        return Err(IndicatrixError::DegenerateRotation { t: fr.t, value: r2 });
    }
    let (d1, d2) = beta_derivatives(fr);
    let speed = d1.norm();
    let vector = d1.cross(&d2).norm() / (speed * speed * speed);
    let r6 = r2 * r2 * r2;
    let twist = fr.dtau_ds * fr.kappa - fr.dkappa_ds * fr.tau;
    let closed_form = ((r6 + twist * twist) / r6).sqrt();
    Ok(KappaBeta {
        vector,
        closed_form,
    })
}

/// Signed geodesic curvature of β on the sphere: magnitude `√(κ_β² − 1)`,
/// sign of `sigma`.
pub fn spherical_geodesic_curvature(kappa_beta: f64, sigma: f64) -> Result<f64, IndicatrixError> {
    let excess = kappa_beta * kappa_beta - 1.0;
    if excess <= -KAPPA_BETA_CLAMP {
        return Err(IndicatrixError::Inconsistent { kappa_beta, excess });
    }
    let magnitude = excess.max(0.0).sqrt();
    Ok(if sigma < 0.0 { -magnitude } else { magnitude })
}

/// Indicatrix samples for every non-degenerate point of `profile`.
pub fn indicatrix_from_profile(
    profile: &FrenetProfile,
    axis: &Vec3,
) -> Result<Vec<SphereSample>, IndicatrixError> {
    profile
        .iter()
        .map(|(s, fr)| {
            let kb = indicatrix_curvature(fr)?;
            let sigma = sigma_at(fr);
            Ok(SphereSample {
                t: fr.t,
                s,
                beta: fr.normal(),
                kappa_beta: kb.vector,
                k_g: spherical_geodesic_curvature(kb.vector, sigma)?,
                plane_offset: fr.normal().dot(axis),
                sigma,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Indicatrix {
    pub profile: FrenetProfile,
    pub samples: Vec<SphereSample>,
    /// Axis, cone angle and sign from the slant classification.
    pub axis: Vec3,
    pub theta: f64,
    pub sign: AxisSign,
}

/// Normal indicatrix of `spec` on a grid of `opts.n_samples` points.
pub fn normal_indicatrix(
    spec: &CurveSpec,
    opts: &ClassifyOptions,
) -> Result<Indicatrix, IndicatrixError> {
    if opts.n_samples < MIN_SAMPLES {
        return Err(IndicatrixError::TooFewSamples(opts.n_samples));
    }
    let profile = frenet_profile_with(spec, opts.n_samples, &opts.profile)?;
    let report = classify_profile(&profile, opts.sigma_tol, opts.axis_tol)?;
    let samples = indicatrix_from_profile(&profile, &report.axis)?;
    Ok(Indicatrix {
        profile,
        samples,
        axis: report.axis,
        theta: report.theta,
        sign: report.sign_choice,
    })
}

/// `max |⟨β, d⟩ − cos θ|`: how far the indicatrix is from the circle cut from
/// the sphere by the plane `⟨x, d⟩ = cos θ`.
pub fn circle_residual(samples: &[SphereSample], axis: &Vec3, theta: f64) -> f64 {
    let c = theta.cos();
    samples
        .iter()
        .map(|p| (p.beta.dot(axis) - c).abs())
        .fold(0.0, f64::max)
}

/// Unit normal of the least-squares plane through `points`.
pub fn fit_plane_normal(points: &[Vec3]) -> Vec3 {
    let n = points.len().max(1) as f64;
    let centroid = points.iter().fold(Vec3::zeros(), |acc, p| acc + p) / n;
    let cov = points.iter().fold(Matrix3::zeros(), |acc, p| {
        let d = p - centroid;
        acc + d * d.transpose()
    });
    let eig = SymmetricEigen::new(cov);
    let (idx, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold(
            (0, f64::INFINITY),
            |best, (i, &v)| if v < best.1 { (i, v) } else { best },
        );
    eig.eigenvectors.column(idx).normalize()
}

/// Frenet data of β itself, for Darboux analysis on the sphere.
///
/// Torsion of β needs `κ″` and `τ″`, which only intrinsic curves provide;
/// for analytic curves it is left unset.
pub fn indicatrix_framed_points(
    profile: &FrenetProfile,
) -> Result<Vec<FramedPoint>, IndicatrixError> {
    profile
        .iter()
        .map(|(s, fr)| {
            let (t, n, b) = (fr.tangent(), fr.normal(), fr.binormal());
            let (k, w) = (fr.kappa, fr.tau);
            let (dk, dw) = (fr.dkappa_ds, fr.dtau_ds);
            let r2 = k * k + w * w;
            let (d1, d2) = beta_derivatives(fr);
            let d3 = fr.second.map(|sec| {
                t * (r2 * k - sec.d2kappa_ds2) - n * (3.0 * (k * dk + w * dw))
                    + b * (sec.d2tau_ds2 - r2 * w)
            });
            let (speed, frame, kappa, tau) = frame_from_derivatives(
                d1,
                d2,
                d3.unwrap_or_else(Vec3::zeros),
                fr.t,
                ROTATION_FLOOR,
            )?;
            Ok(FramedPoint {
                t: fr.t,
                s,
                speed,
                position: n,
                frame,
                kappa,
                tau: d3.map(|_| tau),
            })
        })
        .collect()
}
