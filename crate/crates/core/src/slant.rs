//! Slant-helix invariant, cone angle and axis.
//!
//! A curve is a slant helix when its principal normal keeps a constant angle
//! θ with a fixed unit axis `d`. This holds exactly when
//!
//! ```text
//! σ = (τ′κ − κ′τ) / (κ² + τ²)^{3/2}
//! ```
//!
//! is constant, and then `cot θ = σ` and
//! `d = ±[−(τ/r)·sinθ·T − (κ/r)·sinθ·B] + cosθ·N` with `r = √(κ² + τ²)`.
//! Only one choice of the sign makes `d` constant along the curve; it is
//! selected empirically by comparing how much `d` moves under each choice.

use serde::{Serialize, Serializer};

use crate::curvekit::{CurveSpec, Frame, SampledCurve, Vec3};
use crate::frenet::{
    estimate_from_frames, frenet_profile_with, FrenetError, FrenetProfile, FrenetSample,
    ProfileOptions,
};
use crate::numeric::five_point;

pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_SIGMA_TOL: f64 = 1e-6;
pub const DEFAULT_AXIS_TOL: f64 = 1e-6;
pub const MIN_SAMPLES: usize = 8;
/// Above this fraction of degenerate grid points the verdict is indeterminate.
pub const MAX_DEGENERATE_FRACTION: f64 = 0.1;
const SIGN_TIE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SlantError {
    #[error("need at least {MIN_SAMPLES} samples, got {0}")]
    TooFewSamples(usize),
    #[error("only {0} non-degenerate samples; need at least {MIN_SAMPLES}")]
    TooFewDefined(usize),
    #[error("sampled curve carries no frames")]
    MissingFrames,
    #[error(transparent)]
    Frenet(#[from] FrenetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisSign {
    Plus,
    Minus,
}

impl AxisSign {
    pub fn factor(self) -> f64 {
        match self {
            AxisSign::Plus => 1.0,
            AxisSign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            AxisSign::Plus => AxisSign::Minus,
            AxisSign::Minus => AxisSign::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            AxisSign::Plus => "+",
            AxisSign::Minus => "-",
        }
    }
}

impl Serialize for AxisSign {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Slant,
    NotSlant,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaSample {
    pub t: f64,
    pub s: f64,
    /// NaN when undefined.
    pub sigma: f64,
    pub defined: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlantReport {
    pub verdict: Verdict,
    pub is_slant: bool,
    pub sigma_mean: f64,
    pub sigma_spread: f64,
    pub theta: f64,
    #[serde(serialize_with = "serialize_vec3")]
    pub axis: Vec3,
    pub axis_spread: f64,
    pub normal_angle_spread: f64,
    pub binormal_component: f64,
    pub sign_choice: AxisSign,
    /// Spread `max ‖d(s) − d(s₀)‖` under the chosen and the rejected sign.
    pub chosen_sign_spread: f64,
    pub rejected_sign_spread: f64,
    pub defined_samples: usize,
    pub degenerate_samples: usize,
    pub sigma_tol: f64,
    pub axis_tol: f64,
    pub samples: Vec<SigmaSample>,
}

fn serialize_vec3<S: Serializer>(v: &Vec3, serializer: S) -> Result<S::Ok, S::Error> {
    [v.x, v.y, v.z].serialize(serializer)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub n_samples: usize,
    pub sigma_tol: f64,
    pub axis_tol: f64,
    pub profile: ProfileOptions,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            n_samples: DEFAULT_SAMPLES,
            sigma_tol: DEFAULT_SIGMA_TOL,
            axis_tol: DEFAULT_AXIS_TOL,
            profile: ProfileOptions::default(),
        }
    }
}

/// The slant-helix invariant at one Frenet sample.
pub fn sigma_at(fr: &FrenetSample) -> f64 {
    sigma_from(fr.kappa, fr.tau, fr.dkappa_ds, fr.dtau_ds)
}

pub fn sigma_from(kappa: f64, tau: f64, dkappa: f64, dtau: f64) -> f64 {
    let r2 = kappa * kappa + tau * tau;
    (dtau * kappa - dkappa * tau) / (r2 * r2.sqrt())
}

/// Cone angle `θ = arccot σ`, taken in `(0, π)`.
pub fn theta_from_sigma(sigma: f64) -> f64 {
    1.0f64.atan2(sigma)
}

/// Candidate axis at one sample for cone angle `theta` and the given sign.
pub fn axis_at(fr: &FrenetSample, theta: f64, sign: AxisSign) -> Vec3 {
    axis_from_frame(&fr.frame, fr.kappa, fr.tau, theta, sign)
}

pub fn axis_from_frame(frame: &Frame, kappa: f64, tau: f64, theta: f64, sign: AxisSign) -> Vec3 {
    let r = kappa.hypot(tau);
    let (sin, cos) = theta.sin_cos();
    let lateral = -(frame.tangent * (tau / r) + frame.binormal * (kappa / r)) * sin;
    let d = lateral * sign.factor() + frame.normal * cos;
    d.normalize()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisChoice {
    pub sign: AxisSign,
    /// Grid-mean axis under the chosen sign, renormalized.
    pub axis: Vec3,
    pub spread_plus: f64,
    pub spread_minus: f64,
}

impl AxisChoice {
    pub fn chosen_spread(&self) -> f64 {
        match self.sign {
            AxisSign::Plus => self.spread_plus,
            AxisSign::Minus => self.spread_minus,
        }
    }

    pub fn rejected_spread(&self) -> f64 {
        match self.sign {
            AxisSign::Plus => self.spread_minus,
            AxisSign::Minus => self.spread_plus,
        }
    }
}

fn spread_from_first(axes: &[Vec3]) -> f64 {
    let Some(first) = axes.first() else {
        return 0.0;
    };
    axes.iter().map(|d| (d - first).norm()).fold(0.0, f64::max)
}

fn mean_axis(axes: &[Vec3]) -> Vec3 {
    let sum = axes.iter().fold(Vec3::zeros(), |acc, d| acc + d);
    let norm = sum.norm();
    if norm > 0.0 {
        sum / norm
    } else {
        sum
    }
}

/// Picks the sign under which the candidate axis moves least along the
/// profile. Ties go to `Plus`.
pub fn select_axis_sign(samples: &[FrenetSample], theta: f64) -> AxisChoice {
    let axes = |sign| -> Vec<Vec3> { samples.iter().map(|fr| axis_at(fr, theta, sign)).collect() };
    let plus = axes(AxisSign::Plus);
    let minus = axes(AxisSign::Minus);
    let spread_plus = spread_from_first(&plus);
    let spread_minus = spread_from_first(&minus);
    let (sign, chosen) = if spread_minus < spread_plus - SIGN_TIE {
        (AxisSign::Minus, minus)
    } else {
        (AxisSign::Plus, plus)
    };
    AxisChoice {
        sign,
        axis: mean_axis(&chosen),
        spread_plus,
        spread_minus,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisCheck {
    /// `max ‖d(s) − d̄‖` over the grid.
    pub axis_spread: f64,
    /// `max − min` of `⟨N(s), d̄⟩` over the grid.
    pub normal_angle_spread: f64,
}

/// Discrete check that the per-point axis stays at `mean_axis` and that the
/// principal normal keeps a constant angle with it.
pub fn axis_derivative_check(
    samples: &[FrenetSample],
    mean_axis: &Vec3,
    theta: f64,
    sign: AxisSign,
) -> AxisCheck {
    let mut axis_spread = 0.0f64;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for fr in samples {
        axis_spread = axis_spread.max((axis_at(fr, theta, sign) - mean_axis).norm());
        let c = fr.normal().dot(mean_axis);
        lo = lo.min(c);
        hi = hi.max(c);
    }
    AxisCheck {
        axis_spread,
        normal_angle_spread: if samples.is_empty() { 0.0 } else { hi - lo },
    }
}

/// Largest `|⟨N′, d⟩| / (κ + |τ|)` with `N′ = −κT + τB`.
pub fn normal_derivative_residual(samples: &[FrenetSample], axis: &Vec3) -> f64 {
    samples
        .iter()
        .map(|fr| {
            let dn = fr.binormal() * fr.tau - fr.tangent() * fr.kappa;
            dn.dot(axis).abs() / (fr.kappa + fr.tau.abs())
        })
        .fold(0.0, f64::max)
}

/// Largest `|c² − κ²/(κ² + τ²)·sin²θ|` with `c = ⟨B, d⟩`.
pub fn binormal_identity_residual(samples: &[FrenetSample], axis: &Vec3, theta: f64) -> f64 {
    let sin2 = theta.sin().powi(2);
    samples
        .iter()
        .map(|fr| {
            let c = fr.binormal().dot(axis);
            let k2 = fr.kappa * fr.kappa;
            (c * c - k2 / (k2 + fr.tau * fr.tau) * sin2).abs()
        })
        .fold(0.0, f64::max)
}

/// Arc-length weighted (trapezoid) mean of `values`; arithmetic mean when
/// the samples span no length.
fn arc_mean(values: &[f64], arc: &[f64]) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for i in 1..values.len() {
        let w = arc[i] - arc[i - 1];
        num += w * (values[i] + values[i - 1]) / 2.0;
        den += w;
    }
    if den > 0.0 {
        num / den
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// Frenet samples and their arc lengths, plus how many grid points were lost.
struct Assessed<'a> {
    samples: &'a [FrenetSample],
    arc: &'a [f64],
    sigmas: Vec<f64>,
    undefined: Vec<(f64, f64)>,
    grid_len: usize,
}

fn assess(input: Assessed<'_>, sigma_tol: f64, axis_tol: f64) -> Result<SlantReport, SlantError> {
    let defined = input.samples.len();
    if defined < MIN_SAMPLES {
        return Err(SlantError::TooFewDefined(defined));
    }
    let sigma_mean = arc_mean(&input.sigmas, input.arc);
    let (lo, hi) = input
        .sigmas
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let sigma_spread = hi - lo;
    let theta = theta_from_sigma(sigma_mean);

    let choice = select_axis_sign(input.samples, theta);
    let check = axis_derivative_check(input.samples, &choice.axis, theta, choice.sign);
    let binormal_component = input.samples[0].binormal().dot(&choice.axis);

    let degenerate = input.undefined.len();
    let degenerate_fraction = degenerate as f64 / input.grid_len.max(1) as f64;
    let verdict = if degenerate_fraction > MAX_DEGENERATE_FRACTION {
        Verdict::Indeterminate
    } else if sigma_spread <= sigma_tol && check.axis_spread <= axis_tol {
        Verdict::Slant
    } else {
        Verdict::NotSlant
    };

    let mut samples: Vec<SigmaSample> = input
        .samples
        .iter()
        .zip(input.arc)
        .zip(&input.sigmas)
        .map(|((fr, &s), &sigma)| SigmaSample {
            t: fr.t,
            s,
            sigma,
            defined: true,
        })
        .chain(input.undefined.iter().map(|&(t, s)| SigmaSample {
            t,
            s,
            sigma: f64::NAN,
            defined: false,
        }))
        .collect();
    samples.sort_by(|a, b| a.t.total_cmp(&b.t));

    Ok(SlantReport {
        verdict,
        is_slant: verdict == Verdict::Slant,
        sigma_mean,
        sigma_spread,
        theta,
        axis: choice.axis,
        axis_spread: check.axis_spread,
        normal_angle_spread: check.normal_angle_spread,
        binormal_component,
        sign_choice: choice.sign,
        chosen_sign_spread: choice.chosen_spread(),
        rejected_sign_spread: choice.rejected_spread(),
        defined_samples: defined,
        degenerate_samples: degenerate,
        sigma_tol,
        axis_tol,
        samples,
    })
}

/// Classifies an already computed Frenet profile.
pub fn classify_profile(
    profile: &FrenetProfile,
    sigma_tol: f64,
    axis_tol: f64,
) -> Result<SlantReport, SlantError> {
    assess(
        Assessed {
            samples: &profile.samples,
            arc: &profile.arc,
            sigmas: profile.samples.iter().map(sigma_at).collect(),
            undefined: profile.gaps.iter().map(|g| (g.t, g.s)).collect(),
            grid_len: profile.grid_len,
        },
        sigma_tol,
        axis_tol,
    )
}

/// Decides whether `spec` is a slant helix.
///
/// σ comes from the jets of the curve (analytic) or of the κ(s), τ(s)
/// expressions (intrinsic); intrinsic curves are integrated only to obtain
/// the frames needed for the axis.
pub fn classify(spec: &CurveSpec, opts: &ClassifyOptions) -> Result<SlantReport, SlantError> {
    if opts.n_samples < MIN_SAMPLES {
        return Err(SlantError::TooFewSamples(opts.n_samples));
    }
    let profile = frenet_profile_with(spec, opts.n_samples, &opts.profile)?;
    classify_profile(&profile, opts.sigma_tol, opts.axis_tol)
}

/// Frenet samples reconstructed from the frames of a uniformly sampled
/// unit-speed curve, using finite differences only. Four samples are lost at
/// each end.
pub fn frenet_from_sampled(
    curve: &SampledCurve,
) -> Result<(Vec<FrenetSample>, Vec<f64>), SlantError> {
    let frames = curve.frames.as_ref().ok_or(SlantError::MissingFrames)?;
    let est = estimate_from_frames(curve).ok_or(SlantError::TooFewDefined(curve.len()))?;
    let m = est.kappa.len();
    if m < 5 {
        return Err(SlantError::TooFewDefined(m));
    }
    let h = (est.params[m - 1] - est.params[0]) / (m - 1) as f64;
    let s0 = curve.params[0];
    let mut samples = Vec::with_capacity(m - 4);
    let mut arc = Vec::with_capacity(m - 4);
    for j in 2..m - 2 {
        let i = est.index[j];
        samples.push(FrenetSample {
            t: curve.params[i],
            speed: 1.0,
            position: curve.points[i],
            frame: frames[i],
            kappa: est.kappa[j],
            tau: est.tau[j],
            dkappa_ds: five_point(&est.kappa, j, h),
            dtau_ds: five_point(&est.tau, j, h),
            second: None,
        });
        arc.push(curve.params[i] - s0);
    }
    Ok((samples, arc))
}

/// Classifies a synthesized curve from its sampled frames alone.
pub fn classify_sampled(
    curve: &SampledCurve,
    sigma_tol: f64,
    axis_tol: f64,
) -> Result<SlantReport, SlantError> {
    let (samples, arc) = frenet_from_sampled(curve)?;
    let grid_len = samples.len();
    assess(
        Assessed {
            sigmas: samples.iter().map(sigma_at).collect(),
            samples: &samples,
            arc: &arc,
            undefined: Vec::new(),
            grid_len,
        },
        sigma_tol,
        axis_tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvekit::{AnalyticCurve, IntrinsicCurve};
    use crate::frenet::{frenet_at, frenet_profile, DEFAULT_KAPPA_FLOOR};
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    fn helix() -> CurveSpec {
        CurveSpec::Analytic(AnalyticCurve::new("3*cos(t)", "3*sin(t)", "4*t", 0.0, TAU).unwrap())
    }

    fn precession() -> CurveSpec {
        CurveSpec::Intrinsic(
            IntrinsicCurve::new(
                "2*sin(s)",
                "2*cos(s)",
                0.1,
                3.0,
                1e-3,
                Vec3::zeros(),
                Vec3::x(),
                Vec3::y(),
            )
            .unwrap(),
        )
    }

    fn cubic() -> CurveSpec {
        CurveSpec::Analytic(AnalyticCurve::new("t", "t^2", "t^3", 0.2, 1.5).unwrap())
    }

    #[test]
    fn sigma_of_general_helix_is_zero() {
        let fr = frenet_at(helix().as_analytic().unwrap(), 1.0, DEFAULT_KAPPA_FLOOR).unwrap();
        assert!(sigma_at(&fr).abs() < 1e-15);
    }

    #[test]
    fn sigma_of_constant_precession() {
        let p = frenet_profile(&precession(), 30).unwrap();
        for fr in &p.samples {
            assert_relative_eq!(sigma_at(fr), -0.5, epsilon = 1e-14);
        }
    }

    #[test]
    fn sigma_of_twisted_cubic_matches_symbolic_values() {
        // sympy values of σ for (t, t², t³)
        let curve = AnalyticCurve::new("t", "t^2", "t^3", -1.0, 2.0).unwrap();
        let cases = [
            (0.0, 0.0),
            (0.5, -0.083_419_051_613_941_003),
            (1.0, 0.262_420_870_320_338_92),
            (1.5, 0.300_542_184_982_395_54),
        ];
        for (t, want) in cases {
            let fr = frenet_at(&curve, t, DEFAULT_KAPPA_FLOOR).unwrap();
            assert!((sigma_at(&fr) - want).abs() < 1e-13, "t={t}");
        }
    }

    #[test]
    fn theta_branch() {
        assert_relative_eq!(theta_from_sigma(0.0), FRAC_PI_2);
        assert_relative_eq!(
            theta_from_sigma(-0.5),
            2.034_443_935_795_702_7,
            epsilon = 1e-15
        );
        assert!(theta_from_sigma(1e6) > 0.0);
        assert!(theta_from_sigma(-1e6) < PI);
    }

    #[test]
    fn helix_axis_is_vertical() {
        let curve = helix();
        let fr = frenet_at(curve.as_analytic().unwrap(), 0.0, DEFAULT_KAPPA_FLOOR).unwrap();
        assert_relative_eq!(
            axis_at(&fr, FRAC_PI_2, AxisSign::Plus),
            Vec3::new(0.0, 0.0, -1.0),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            axis_at(&fr, FRAC_PI_2, AxisSign::Minus),
            Vec3::new(0.0, 0.0, 1.0),
            epsilon = 1e-15
        );
        let fr = frenet_at(curve.as_analytic().unwrap(), 2.3, DEFAULT_KAPPA_FLOOR).unwrap();
        assert_relative_eq!(
            axis_at(&fr, FRAC_PI_2, AxisSign::Plus),
            Vec3::new(0.0, 0.0, -1.0),
            epsilon = 1e-15
        );
    }

    #[test]
    fn axis_structure() {
        let fr = frenet_at(cubic().as_analytic().unwrap(), 0.7, DEFAULT_KAPPA_FLOOR).unwrap();
        assert_relative_eq!(
            axis_at(&fr, 0.0, AxisSign::Plus),
            fr.normal(),
            epsilon = 1e-15
        );
        for theta in [0.3, 1.2, 2.5] {
            for sign in [AxisSign::Plus, AxisSign::Minus] {
                let d = axis_at(&fr, theta, sign);
                assert_relative_eq!(d.norm(), 1.0, epsilon = 1e-15);
                assert_relative_eq!(d.dot(&fr.normal()), theta.cos(), epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn sign_selection() {
        let p = frenet_profile(&precession(), 200).unwrap();
        let choice = select_axis_sign(&p.samples, theta_from_sigma(-0.5));
        assert_eq!(choice.sign, AxisSign::Minus);
        assert!(choice.chosen_spread() < 1e-6);
        assert!(choice.rejected_spread() > 0.1);

        let p = frenet_profile(&helix(), 50).unwrap();
        let choice = select_axis_sign(&p.samples, FRAC_PI_2);
        assert_eq!(choice.sign, AxisSign::Plus);
        assert!(choice.spread_plus < 1e-12 && choice.spread_minus < 1e-12);

        let one = p.samples[0];
        let choice = select_axis_sign(&[one, one], 1.0);
        assert_eq!(choice.sign, AxisSign::Plus);
        assert_eq!(choice.spread_plus, 0.0);
        assert_eq!(choice.spread_minus, 0.0);
    }

    #[test]
    fn axis_check_on_constant_frames() {
        let p = frenet_profile(&helix(), 10).unwrap();
        let fr = p.samples[3];
        let d = axis_at(&fr, 1.1, AxisSign::Plus);
        let check = axis_derivative_check(&[fr; 4], &d, 1.1, AxisSign::Plus);
        assert_eq!(check.axis_spread, 0.0);
        assert_eq!(check.normal_angle_spread, 0.0);
    }

    #[test]
    fn classify_examples() {
        let r = classify(&helix(), &ClassifyOptions::default()).unwrap();
        assert!(r.is_slant);
        assert!(r.sigma_spread < 1e-12);
        assert!((r.theta - FRAC_PI_2).abs() < 1e-10);
        assert_relative_eq!(r.axis.z.abs(), 1.0, epsilon = 1e-12);

        let r = classify(&precession(), &ClassifyOptions::default()).unwrap();
        assert!(r.is_slant);
        assert!((r.sigma_mean + 0.5).abs() < 1e-6);
        assert!((r.theta - 2.034_443_935_795_702_7).abs() < 1e-6);
        assert_relative_eq!(1.0 / r.theta.tan(), r.sigma_mean, epsilon = 1e-12);

        let r = classify(&cubic(), &ClassifyOptions::default()).unwrap();
        assert!(!r.is_slant);
        assert_eq!(r.verdict, Verdict::NotSlant);
        assert!(r.sigma_spread > 1e-6);
        assert!(r.axis_spread > 1e-3);
    }

    #[test]
    fn classify_rejects_small_grids() {
        let opts = ClassifyOptions {
            n_samples: 7,
            ..Default::default()
        };
        assert_eq!(
            classify(&helix(), &opts).unwrap_err(),
            SlantError::TooFewSamples(7)
        );
    }

    #[test]
    fn mostly_degenerate_curve_is_indeterminate() {
        // Zero curvature on [-1, 0]: κ vanishes at half the grid.
        let curve = CurveSpec::Analytic(
            AnalyticCurve::new("t", "(t + sqrt(t^2 + 1e-30))^4", "0", -1.0, 1.0).unwrap(),
        );
        let opts = ClassifyOptions {
            n_samples: 40,
            ..Default::default()
        };
        let r = classify(&curve, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Indeterminate);
        assert!(!r.is_slant);
        assert!(r.degenerate_samples >= 4);
        assert_eq!(r.samples.len(), 40);
        assert!(r.samples.iter().any(|s| !s.defined && s.sigma.is_nan()));
    }

    #[test]
    fn sampled_path_matches_jet_path() {
        let spec = precession();
        let synth = crate::curvekit::synthesize(spec.as_intrinsic().unwrap()).unwrap();
        let r = classify_sampled(&synth, 1e-6, 1e-6).unwrap();
        assert!(r.is_slant, "{} {}", r.sigma_spread, r.axis_spread);
        assert!((r.sigma_mean + 0.5).abs() < 1e-6);
        assert!(matches!(
            classify_sampled(&crate::curvekit::SampledCurve::default(), 1e-6, 1e-6),
            Err(SlantError::MissingFrames)
        ));
    }
}
