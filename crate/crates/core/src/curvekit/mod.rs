//! Curve descriptions, position jets, arc length and intrinsic synthesis.

mod quad;
mod spec;
mod synth;

use nalgebra::Vector3;

use crate::exprjet::{EvalError, ParseError};

pub use quad::{adaptive_simpson, DEFAULT_MAX_DEPTH, DEFAULT_QUAD_TOL};
pub use spec::{AnalyticCurve, CurveSpec, Domain, IntrinsicCurve};
pub use synth::{frame_drift, integrate_frenet, synthesize, FrameState, SampledCurve};

pub type Vec3 = Vector3<f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurveError {
    #[error("invalid curve spec: {0}")]
    Spec(String),
    #[error("cannot parse `{field}`: {source}")]
    Parse {
        field: &'static str,
        #[source]
        source: ParseError,
    },
    #[error("cannot evaluate `{field}` at {at}: {source}")]
    Eval {
        field: &'static str,
        at: f64,
        #[source]
        source: EvalError,
    },
    #[error("parameter {at} lies outside the domain [{start}, {end}]")]
    OutOfDomain { at: f64, start: f64, end: f64 },
    #[error("integration step must be positive, got {0}")]
    InvalidStep(f64),
    #[error("curvature must be positive, got kappa = {kappa} at s = {s}")]
    NonPositiveCurvature { s: f64, kappa: f64 },
    #[error("adaptive quadrature did not converge (estimate {estimate}, error estimate {error})")]
    Quadrature { estimate: f64, error: f64 },
    #[error("operation requires an {expected} curve")]
    WrongKind { expected: &'static str },
}

/// An orthonormal, right-handed moving frame (tangent, normal, binormal).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
}

impl Frame {
    pub fn new(tangent: Vec3, normal: Vec3, binormal: Vec3) -> Self {
        Self {
            tangent,
            normal,
            binormal,
        }
    }

    pub fn identity() -> Self {
        Self::new(Vec3::x(), Vec3::y(), Vec3::z())
    }

    /// Modified Gram–Schmidt: keeps the tangent direction, orthogonalizes the
    /// normal against it and rebuilds the binormal as `T × N`.
    pub fn reorthonormalize(&self) -> Self {
        let t = self.tangent.normalize();
        let n = (self.normal - t * t.dot(&self.normal)).normalize();
        Self::new(t, n, t.cross(&n))
    }

    /// Largest deviation from an orthonormal right-handed triple.
    ///
    /// The handedness term uses the determinant of the normalized vectors so
    /// that a pure rescaling only shows up in the norm terms.
    pub fn drift(&self) -> f64 {
        let (t, n, b) = (self.tangent, self.normal, self.binormal);
        let det = t.normalize().cross(&n.normalize()).dot(&b.normalize());
        [
            (t.norm() - 1.0).abs(),
            (n.norm() - 1.0).abs(),
            (b.norm() - 1.0).abs(),
            t.dot(&n).abs(),
            t.dot(&b).abs(),
            n.dot(&b).abs(),
            (det - 1.0).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Position and its first four derivatives with respect to the curve parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub p: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
    pub d4: Vec3,
}

/// `n` points spaced uniformly on `[start, end]`, hitting both ends exactly.
pub fn uniform_grid(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let h = (end - start) / (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        end
                    } else {
                        start + h * i as f64
                    }
                })
                .collect()
        }
    }
}
