use serde::{Deserialize, Serialize};

use super::quad::{adaptive_simpson, DEFAULT_MAX_DEPTH};
use super::{CurveError, CurveJet, Frame, Vec3};
use crate::exprjet::{Expr, Jet4};

const FRAME_TOL: f64 = 1e-12;

/// Closed parameter interval `[start, end]` with `start < end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    start: f64,
    end: f64,
}

impl Domain {
    pub fn new(start: f64, end: f64) -> Result<Self, CurveError> {
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(CurveError::Spec(format!(
                "domain [{start}, {end}] must be finite with start < end"
            )));
        }
        Ok(Self { start, end })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn contains(&self, at: f64) -> bool {
        at >= self.start && at <= self.end
    }

    pub(crate) fn check(&self, at: f64) -> Result<(), CurveError> {
        if self.contains(at) {
            Ok(())
        } else {
            Err(CurveError::OutOfDomain {
                at,
                start: self.start,
                end: self.end,
            })
        }
    }
}

/// A curve `t ↦ (x(t), y(t), z(t))` in a general parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticCurve {
    pub x: Expr,
    pub y: Expr,
    pub z: Expr,
    pub domain: Domain,
}

/// A unit-speed curve given by curvature and torsion as functions of arc
/// length, plus the initial point and frame.
#[derive(Debug, Clone, PartialEq)]
pub struct IntrinsicCurve {
    pub kappa: Expr,
    pub tau: Expr,
    pub domain: Domain,
    pub p0: Vec3,
    pub frame0: Frame,
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    Analytic(AnalyticCurve),
    Intrinsic(IntrinsicCurve),
}

fn parse_field(text: &str, var: &str, field: &'static str) -> Result<Expr, CurveError> {
    Expr::parse(text, var).map_err(|source| CurveError::Parse { field, source })
}

impl AnalyticCurve {
    pub fn new(x: &str, y: &str, z: &str, start: f64, end: f64) -> Result<Self, CurveError> {
        Ok(Self {
            x: parse_field(x, "t", "x")?,
            y: parse_field(y, "t", "y")?,
            z: parse_field(z, "t", "z")?,
            domain: Domain::new(start, end)?,
        })
    }

    /// Position jet at `t`.
    pub fn eval(&self, t: f64) -> Result<CurveJet, CurveError> {
        self.domain.check(t)?;
        let comp = |e: &Expr, field| {
            e.eval_jet(t).map_err(|source| CurveError::Eval {
                field,
                at: t,
                source,
            })
        };
        let (x, y, z) = (
            comp(&self.x, "x")?,
            comp(&self.y, "y")?,
            comp(&self.z, "z")?,
        );
        let v = |k: usize| Vec3::new(x.derivative(k), y.derivative(k), z.derivative(k));
        Ok(CurveJet {
            p: v(0),
            d1: v(1),
            d2: v(2),
            d3: v(3),
            d4: v(4),
        })
    }

    pub fn speed(&self, t: f64) -> Result<f64, CurveError> {
        Ok(self.eval(t)?.d1.norm())
    }
}

impl IntrinsicCurve {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        kappa: &str,
        tau: &str,
        start: f64,
        end: f64,
        step: f64,
        p0: Vec3,
        tangent: Vec3,
        normal: Vec3,
    ) -> Result<Self, CurveError> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(CurveError::InvalidStep(step));
        }
        let frame0 = Frame::new(tangent, normal, tangent.cross(&normal));
        if frame0.drift() > FRAME_TOL {
            return Err(CurveError::Spec(
                "initial frame (T0, N0) must be orthonormal within 1e-12".into(),
            ));
        }
        Ok(Self {
            kappa: parse_field(kappa, "s", "kappa")?,
            tau: parse_field(tau, "s", "tau")?,
            domain: Domain::new(start, end)?,
            p0,
            frame0,
            step,
        })
    }

    pub fn kappa_jet(&self, s: f64) -> Result<Jet4, CurveError> {
        self.kappa.eval_jet(s).map_err(|source| CurveError::Eval {
            field: "kappa",
            at: s,
            source,
        })
    }

    pub fn tau_jet(&self, s: f64) -> Result<Jet4, CurveError> {
        self.tau.eval_jet(s).map_err(|source| CurveError::Eval {
            field: "tau",
            at: s,
            source,
        })
    }

    /// Curvature at `s`, rejecting non-positive values.
    pub fn kappa_checked(&self, s: f64) -> Result<f64, CurveError> {
        let kappa = self.kappa_jet(s)?.value();
        if kappa > 0.0 {
            Ok(kappa)
        } else {
            Err(CurveError::NonPositiveCurvature { s, kappa })
        }
    }
}

impl CurveSpec {
    pub fn domain(&self) -> Domain {
        match self {
            CurveSpec::Analytic(c) => c.domain,
            CurveSpec::Intrinsic(c) => c.domain,
        }
    }

    pub fn as_analytic(&self) -> Result<&AnalyticCurve, CurveError> {
        match self {
            CurveSpec::Analytic(c) => Ok(c),
            CurveSpec::Intrinsic(_) => Err(CurveError::WrongKind {
                expected: "analytic",
            }),
        }
    }

    pub fn as_intrinsic(&self) -> Result<&IntrinsicCurve, CurveError> {
        match self {
            CurveSpec::Intrinsic(c) => Ok(c),
            CurveSpec::Analytic(_) => Err(CurveError::WrongKind {
                expected: "intrinsic",
            }),
        }
    }

    /// Arc length between parameters `a` and `b` (in either order).
    ///
    /// Analytic curves integrate the speed by adaptive Simpson with absolute
    /// tolerance `tol`; intrinsic curves are unit speed by construction.
    pub fn arc_length(&self, a: f64, b: f64, tol: f64) -> Result<f64, CurveError> {
        let domain = self.domain();
        domain.check(a)?;
        domain.check(b)?;
        if !(tol > 0.0) {
            return Err(CurveError::Spec(format!(
                "quadrature tolerance must be positive, got {tol}"
            )));
        }
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match self {
            CurveSpec::Intrinsic(_) => Ok(hi - lo),
            CurveSpec::Analytic(c) => {
                adaptive_simpson(|t| c.speed(t), lo, hi, tol, DEFAULT_MAX_DEPTH)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CurveError> {
        let raw: RawSpec =
            serde_json::from_str(text).map_err(|e| CurveError::Spec(e.to_string()))?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        let raw = RawSpec::from(self);
        serde_json::to_string_pretty(&raw).expect("curve spec serializes")
    }
}

fn default_step() -> f64 {
    1e-3
}

fn default_t0() -> [f64; 3] {
    [1.0, 0.0, 0.0]
}

fn default_n0() -> [f64; 3] {
    [0.0, 1.0, 0.0]
}

/// On-disk JSON form of a curve spec.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawSpec {
    Analytic {
        x: String,
        y: String,
        z: String,
        domain: [f64; 2],
    },
    Intrinsic {
        kappa: String,
        tau: String,
        domain: [f64; 2],
        #[serde(default = "default_step")]
        step: f64,
        #[serde(default)]
        p0: [f64; 3],
        #[serde(rename = "T0", default = "default_t0")]
        t0: [f64; 3],
        #[serde(rename = "N0", default = "default_n0")]
        n0: [f64; 3],
    },
}

impl TryFrom<RawSpec> for CurveSpec {
    type Error = CurveError;

    fn try_from(raw: RawSpec) -> Result<Self, CurveError> {
        match raw {
            RawSpec::Analytic { x, y, z, domain } => Ok(CurveSpec::Analytic(AnalyticCurve::new(
                &x, &y, &z, domain[0], domain[1],
            )?)),
            RawSpec::Intrinsic {
                kappa,
                tau,
                domain,
                step,
                p0,
                t0,
                n0,
            } => Ok(CurveSpec::Intrinsic(IntrinsicCurve::new(
                &kappa,
                &tau,
                domain[0],
                domain[1],
                step,
                Vec3::from(p0),
                Vec3::from(t0),
                Vec3::from(n0),
            )?)),
        }
    }
}

impl From<&CurveSpec> for RawSpec {
    fn from(spec: &CurveSpec) -> Self {
        match spec {
            CurveSpec::Analytic(c) => RawSpec::Analytic {
                x: c.x.source().to_string(),
                y: c.y.source().to_string(),
                z: c.z.source().to_string(),
                domain: [c.domain.start(), c.domain.end()],
            },
            CurveSpec::Intrinsic(c) => RawSpec::Intrinsic {
                kappa: c.kappa.source().to_string(),
                tau: c.tau.source().to_string(),
                domain: [c.domain.start(), c.domain.end()],
                step: c.step,
                p0: c.p0.into(),
                t0: c.frame0.tangent.into(),
                n0: c.frame0.normal.into(),
            },
        }
    }
}
