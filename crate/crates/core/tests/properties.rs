use helixlab::curvekit::{synthesize, AnalyticCurve, CurveSpec, IntrinsicCurve, Vec3};
use helixlab::exprjet::{Expr, Jet4};
use helixlab::frenet::{
    estimate_from_frames, frenet_at, frenet_profile, FrenetSample, DEFAULT_KAPPA_FLOOR,
};
use helixlab::indicatrix::indicatrix_curvature;
use helixlab::slant::{binormal_identity_residual, classify, sigma_at, ClassifyOptions};
use proptest::prelude::*;

const H: f64 = 1e-5;

fn expr_in(var: &'static str) -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just(var.to_string()),
        (0.5f64..3.0).prop_map(|c| format!("{c:.3}")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} - {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} * {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} / (2 + sin({b})))")),
            inner.clone().prop_map(|a| format!("sin({a})")),
            inner.clone().prop_map(|a| format!("cos({a})")),
            inner.clone().prop_map(|a| format!("exp(sin({a}))")),
            inner.clone().prop_map(|a| format!("log(2 + cos({a}))")),
            inner.clone().prop_map(|a| format!("sqrt(3 + sin({a}))")),
            inner.clone().prop_map(|a| format!("({a})^3")),
            inner.prop_map(|a| format!("-{a}")),
        ]
    })
}

fn expr_text() -> impl Strategy<Value = String> {
    expr_in("t")
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

/// Order-4 chain rule written out independently of the library.
fn faa_di_bruno(f: &Jet4, g: &Jet4) -> [f64; 5] {
    let [_, u1, u2, u3, u4] = g.derivatives();
    let [f0, f1, f2, f3, f4] = f.derivatives();
    [
        f0,
        f1 * u1,
        f2 * u1 * u1 + f1 * u2,
        f3 * u1.powi(3) + 3.0 * f2 * u1 * u2 + f1 * u3,
        f4 * u1.powi(4) + 6.0 * f3 * u1 * u1 * u2 + f2 * (4.0 * u1 * u3 + 3.0 * u2 * u2) + f1 * u4,
    ]
}

fn helix_family(a: f64, b: f64, c: f64, scale_t: &str) -> CurveSpec {
    let t = scale_t;
    CurveSpec::Analytic(
        AnalyticCurve::new(
            &format!("{a}*cos({t})"),
            &format!("{b}*sin({t})"),
            &format!("{c}*{t} + 0.1*{t}^2"),
            0.0,
            3.0,
        )
        .unwrap(),
    )
}

fn sample(spec: &CurveSpec, t: f64) -> FrenetSample {
    frenet_at(spec.as_analytic().unwrap(), t, DEFAULT_KAPPA_FLOOR).unwrap()
}

fn precession(amp: f64, n: usize) -> (CurveSpec, ClassifyOptions) {
    let curve = IntrinsicCurve::new(
        &format!("{amp}*sin(s)"),
        &format!("{amp}*cos(s)"),
        0.1,
        3.0,
        1e-3,
        Vec3::zeros(),
        Vec3::x(),
        Vec3::y(),
    )
    .unwrap();
    let opts = ClassifyOptions {
        n_samples: n,
        ..Default::default()
    };
    (CurveSpec::Intrinsic(curve), opts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jets_match_finite_differences(text in expr_text(), t in -1.5f64..1.5) {
        let e = Expr::parse(&text, "t").unwrap();
        let (mid, lo, hi) = (e.eval_jet(t), e.eval_jet(t - H), e.eval_jet(t + H));
        prop_assume!(mid.is_ok() && lo.is_ok() && hi.is_ok());
        let (mid, lo, hi) = (mid.unwrap(), lo.unwrap(), hi.unwrap());
        for k in 1..=2 {
            let fd = (hi.derivative(k - 1) - lo.derivative(k - 1)) / (2.0 * H);
            let err = rel_err(fd, mid.derivative(k));
            prop_assert!(err < 1e-5, "{text} at {t}: d{k} jet {} vs fd {fd}", mid.derivative(k));
        }
    }

    #[test]
    fn evaluation_is_bitwise_deterministic(text in expr_text(), t in -1.5f64..1.5) {
        let a = Expr::parse(&text, "t").unwrap().eval_jet(t);
        let b = Expr::parse(&text, "t").unwrap().eval_jet(t);
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert!(a.derivatives().iter().zip(b.derivatives()).all(|(x, y)| x.to_bits() == y.to_bits())),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn composition_matches_faa_di_bruno(f_u in expr_in("u"), g in expr_text(), t in -1.0f64..1.0) {
        // No function name contains the letter u.
        let composed = Expr::parse(&f_u.replace('u', &format!("({g})")), "t").unwrap().eval_jet(t);
        let inner = Expr::parse(&g, "t").unwrap().eval_jet(t);
        prop_assume!(composed.is_ok() && inner.is_ok());
        let inner = inner.unwrap();
        let outer = Expr::parse(&f_u, "u").unwrap().eval_jet(inner.value());
        prop_assume!(outer.is_ok());
        let want = faa_di_bruno(&outer.unwrap(), &inner);
        let got = composed.unwrap().derivatives();
        for k in 0..5 {
            let scale = want[k].abs().max(1.0);
            prop_assert!((got[k] - want[k]).abs() / scale < 1e-12, "order {k}: {} vs {}", got[k], want[k]);
        }
    }

    #[test]
    fn arc_length_is_additive(a in 0.0f64..1.0, w1 in 0.1f64..1.0, w2 in 0.1f64..1.0) {
        let spec = CurveSpec::Analytic(AnalyticCurve::new("t", "t^2", "t^3", 0.0, 3.0).unwrap());
        let tol = 1e-10;
        let (b, c) = (a + w1, a + w1 + w2);
        let whole = spec.arc_length(a, c, tol).unwrap();
        let parts = spec.arc_length(a, b, tol).unwrap() + spec.arc_length(b, c, tol).unwrap();
        prop_assert!((whole - parts).abs() < 2.0 * tol);
    }

    #[test]
    fn frenet_equations_hold(a in 0.5f64..3.0, b in 0.5f64..3.0, c in 0.2f64..2.0, t in 0.1f64..2.9) {
        let spec = helix_family(a, b, c, "t");
        let fr = sample(&spec, t);
        let (lo, hi) = (sample(&spec, t - H), sample(&spec, t + H));
        let k = 1.0 / (2.0 * H * fr.speed);
        let dt = (hi.tangent() - lo.tangent()) * k;
        let dn = (hi.normal() - lo.normal()) * k;
        let db = (hi.binormal() - lo.binormal()) * k;
        let scale = (fr.kappa * fr.kappa + fr.tau * fr.tau).sqrt();
        prop_assert!((dt - fr.normal() * fr.kappa).norm() / scale < 1e-5);
        prop_assert!((dn - (fr.binormal() * fr.tau - fr.tangent() * fr.kappa)).norm() / scale < 1e-5);
        prop_assert!((db + fr.normal() * fr.tau).norm() / scale < 1e-5);
    }

    #[test]
    fn invariants_ignore_reparametrization(a in 0.5f64..3.0, b in 0.5f64..3.0, c in 0.2f64..2.0, t in 0.1f64..2.9) {
        let one = sample(&helix_family(a, b, c, "t"), t);
        let two = sample(&helix_family(a, b, c, "(2*t)"), t / 2.0);
        prop_assert!((one.position - two.position).norm() < 1e-12);
        prop_assert!((one.kappa - two.kappa).abs() < 1e-10);
        prop_assert!((one.tau - two.tau).abs() < 1e-10);
        prop_assert!((sigma_at(&one) - sigma_at(&two)).abs() < 1e-10);
    }

    #[test]
    fn arc_derivatives_match_finite_differences(a in 0.5f64..3.0, b in 0.5f64..3.0, c in 0.2f64..2.0, t in 0.1f64..2.9) {
        let spec = helix_family(a, b, c, "t");
        let fr = sample(&spec, t);
        let (lo, hi) = (sample(&spec, t - H), sample(&spec, t + H));
        let dk = (hi.kappa - lo.kappa) / (2.0 * H * fr.speed);
        let dw = (hi.tau - lo.tau) / (2.0 * H * fr.speed);
        prop_assert!((dk - fr.dkappa_ds).abs() <= 1e-4 * fr.dkappa_ds.abs() + 1e-9);
        prop_assert!((dw - fr.dtau_ds).abs() <= 1e-4 * fr.dtau_ds.abs() + 1e-9);
    }

    #[test]
    fn sigma_is_scale_invariant(lambda in 0.2f64..5.0, t in 0.2f64..1.5) {
        let scaled = |l: f64| CurveSpec::Analytic(
            AnalyticCurve::new(&format!("{l}*t"), &format!("{l}*t^2"), &format!("{l}*t^3"), 0.0, 2.0).unwrap(),
        );
        let base = sample(&scaled(1.0), t);
        let big = sample(&scaled(lambda), t);
        prop_assert!((base.kappa / lambda - big.kappa).abs() < 1e-12 * base.kappa.max(1.0));
        prop_assert!((sigma_at(&base) - sigma_at(&big)).abs() < 1e-10);
    }

    #[test]
    fn indicatrix_routes_agree(a in 0.5f64..3.0, b in 0.5f64..3.0, c in 0.2f64..2.0, t in 0.1f64..2.9) {
        let fr = sample(&helix_family(a, b, c, "t"), t);
        let kb = indicatrix_curvature(&fr).unwrap();
        let sigma = sigma_at(&fr);
        prop_assert!((kb.vector - kb.closed_form).abs() < 1e-10);
        prop_assert!((kb.vector * kb.vector - 1.0 - sigma * sigma).abs() < 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn accepted_slant_helices_satisfy_axis_identities(amp in 0.5f64..3.0) {
        let (spec, opts) = precession(amp, 300);
        let r = classify(&spec, &opts).unwrap();
        prop_assert!(r.is_slant);
        prop_assert!((r.sigma_mean + 1.0 / amp).abs() < 1e-9);
        prop_assert!((1.0 / r.theta.tan() - r.sigma_mean).abs() < 1e-12);
        prop_assert!((r.axis.norm() - 1.0).abs() < 1e-12);
        let profile = frenet_profile(&spec, 300).unwrap();
        for fr in &profile.samples {
            let dn = fr.binormal() * fr.tau - fr.tangent() * fr.kappa;
            prop_assert!(dn.dot(&r.axis).abs() < 1e-8 * (fr.kappa + fr.tau.abs()));
            prop_assert!((fr.normal().dot(&r.axis) - r.theta.cos()).abs() < 1e-6);
        }
        prop_assert!(binormal_identity_residual(&profile.samples, &r.axis, r.theta) < 1e-8);
    }

    #[test]
    fn synthesis_round_trip_recovers_invariants(amp in 0.5f64..3.0) {
        let (spec, _) = precession(amp, 300);
        let curve = spec.as_intrinsic().unwrap();
        let sampled = synthesize(curve).unwrap();
        let est = estimate_from_frames(&sampled).unwrap();
        for (j, &s) in est.params.iter().enumerate() {
            let k = curve.kappa_jet(s).unwrap().value();
            let w = curve.tau_jet(s).unwrap().value();
            prop_assert!((est.kappa[j] - k).abs() < 1e-5 * k.abs());
            prop_assert!((est.tau[j] - w).abs() < 1e-5 * w.abs().max(k));
        }
        // On a unit-speed curve N is the normalized second derivative.
        let frames = sampled.frames.as_ref().unwrap();
        let h = sampled.params[1] - sampled.params[0];
        for i in (2..sampled.len() - 2).step_by(97) {
            let p = &sampled.points;
            let acc = (-p[i - 2] + p[i - 1] * 16.0 - p[i] * 30.0 + p[i + 1] * 16.0 - p[i + 2]) / (12.0 * h * h);
            prop_assert!((acc.normalize() - frames[i].normal).norm() < 1e-5);
        }
    }

    #[test]
    fn classification_is_refinement_stable(amp in 0.5f64..3.0) {
        let (spec, opts) = precession(amp, 250);
        let coarse = classify(&spec, &opts).unwrap();
        let fine = classify(&spec, &ClassifyOptions { n_samples: 500, ..opts }).unwrap();
        prop_assert!((coarse.sigma_mean - fine.sigma_mean).abs() < opts.sigma_tol / 10.0);
    }
}

#[test]
fn refinement_stability_on_non_slant_curves() {
    let specs = [
        CurveSpec::Analytic(AnalyticCurve::new("t", "t^2", "t^3", 0.2, 1.5).unwrap()),
        helix_family(2.0, 1.0, 0.5, "t"),
    ];
    for spec in specs {
        let opts = ClassifyOptions::default();
        let coarse = classify(&spec, &opts).unwrap();
        let fine = classify(
            &spec,
            &ClassifyOptions {
                n_samples: 2 * opts.n_samples,
                ..opts
            },
        )
        .unwrap();
        assert!(
            (coarse.sigma_mean - fine.sigma_mean).abs() < opts.sigma_tol / 10.0,
            "{} vs {}",
            coarse.sigma_mean,
            fine.sigma_mean
        );
    }
}

#[test]
fn rk4_halving_between_fine_steps() {
    let err = |step: f64| {
        let c = IntrinsicCurve::new(
            "1",
            "0",
            0.0,
            std::f64::consts::TAU,
            step,
            Vec3::zeros(),
            Vec3::x(),
            Vec3::y(),
        )
        .unwrap();
        synthesize(&c).unwrap().points.last().unwrap().norm()
    };
    let ratio = err(1e-2) / err(5e-3);
    assert!(ratio >= 8.0, "ratio {ratio}");
}
