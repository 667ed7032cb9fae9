//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_complex::Complex64;
use p6_cli::run::theta_identity_errors;
use p6_core::elliptic::{invariants_g2g3, wp_eval, wp_laurent_oracle, PeriodConvention};
use p6_core::grid::{sample_taus, standard_tau_grid, tau_grid, theta_identity_grid};
use p6_core::hypergeom::{
    calibrated_chud_variant, chud_residual_with, hyp2f1, hyp2f1_via, lemniscatic_integral_oracle,
    ContinuationRegion, HypergeomParams,
};
use p6_core::jets::{jet_invert, log_derivative_connection, mobius_jet, schwarz_bracket, standard_schwarzian};
use p6_core::painleve::{
    calibrate_period_convention, cusp_asymptotics_check, fit_algebraic_relation, fit_minimal_relation, picard_y,
    solution_residual, substitution_xy, x_schwarz_residual, CurveFitSpec, Cusp, Family, P6Params, SolutionSpec,
};
use p6_core::theta::modular_x;
use p6_core::{HalfPlanePoint, Jet, MobiusMap, TruncationPolicy};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn hp(tau: Complex64) -> HalfPlanePoint {
    HalfPlanePoint::new(tau, &pol()).unwrap()
}

/// Fails with `what` unless `worst <= tol`; reports the worst value.
fn within(what: &str, worst: f64, tol: f64) -> Outcome {
    if worst <= tol {
        Ok(format!("{what} max {worst:.2e} <= {tol:.0e}"))
    } else {
        Err(format!("{what} max {worst:.2e} > {tol:.0e}"))
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

fn theta_identities() -> Outcome {
    let mut parts = Vec::new();
    for (name, grid) in [("standard", standard_tau_grid()), ("wide", theta_identity_grid())] {
        let (mut j, mut q) = (0.0f64, 0.0f64);
        for tau in grid {
            let (a, b) = theta_identity_errors(tau, &pol()).map_err(|e| format!("τ = {tau}: {e}"))?;
            j = j.max(a);
            q = q.max(b);
        }
        parts.push(within(&format!("{name} grid Jacobi"), j, 1e-12));
        parts.push(within(&format!("{name} grid quasi-periodicity"), q, 1e-11));
    }
    all(parts)
}

fn elliptic_cross_oracle() -> Outcome {
    let zt = [
        (c(0.23, 0.0), c(0.0, 1.1)),
        (c(0.31, 0.12), c(0.2, 0.95)),
        (c(-0.18, 0.27), c(-0.3, 1.2)),
        (c(0.41, -0.2), c(0.45, 1.5)),
        (c(0.12, 0.33), c(-0.1, 0.85)),
        (c(-0.37, -0.11), c(0.05, 1.7)),
        (c(0.27, 0.4), c(0.35, 1.05)),
        (c(0.19, -0.29), c(-0.45, 1.3)),
        (c(-0.44, 0.06), c(0.15, 0.8)),
        (c(0.35, 0.22), c(-0.2, 1.0)),
    ];
    let p = pol();
    let wp = |z: Complex64, tau: Complex64, conv| {
        let (a, b) = wp_eval(&Jet::constant(z, 0), &Jet::constant(tau, 0), conv, &p).unwrap();
        (a.value(), b.value())
    };
    let (mut oracle, mut diff, mut scaling) = (0.0f64, 0.0f64, 0.0f64);
    let mut oracle_points = 0;
    for conv in [PeriodConvention::Unit, PeriodConvention::Double] {
        for &(z, tau) in &zt {
            let s = conv.period_scale();
            let inv = invariants_g2g3(&hp(tau), conv, &p).unwrap();
            let (v, dv) = wp(z * s, tau, conv);
            diff = diff.max((dv * dv - inv.cubic(v)).norm());

            let (w1, w3) = conv.half_periods(tau);
            let zs = z * s * 0.5;
            if zs.norm() < 0.6 * w1.norm().min(w3.norm()) {
                let o = wp_laurent_oracle(zs, &hp(tau), conv, &p).unwrap();
                oracle = oracle.max((o - wp(zs, tau, conv).0).norm());
                oracle_points += 1;
            }
        }
    }
    // against both the theta route and the independent Laurent oracle in unit periods
    for &(z, tau) in &zt {
        let (d, _) = wp(z, tau, PeriodConvention::Double);
        let (u, _) = wp(z / 2.0, tau, PeriodConvention::Unit);
        scaling = scaling.max((d - u / 4.0).norm() / (1.0 + d.norm()));
        if let Ok(o) = wp_laurent_oracle(z / 2.0, &hp(tau), PeriodConvention::Unit, &p) {
            scaling = scaling.max((d - o / 4.0).norm() / (1.0 + d.norm()));
        }
    }
    if oracle_points < 10 {
        return Err(format!("only {oracle_points} points inside the Laurent disc"));
    }
    all(vec![
        within(&format!("Laurent oracle ({oracle_points} points)"), oracle, 1e-8),
        within("differential identity", diff, 1e-9),
        within("scaling law", scaling, 1e-10),
    ])
}

fn gamma2_schwarz() -> Outcome {
    let mut worst = 0.0f64;
    for tau in tau_grid(10) {
        let r = x_schwarz_residual(&hp(tau), &pol(), 1e-8).map_err(|e| format!("τ = {tau}: {e}"))?;
        worst = worst.max(r.residual_abs);
    }
    within("[x,τ] residual on 10 points", worst, 1e-8)
}

fn picard_verification() -> Outcome {
    let p = pol();
    let mut parts = Vec::new();
    for (nu, mu, n) in [(1, 1, 2), (1, 1, 3), (1, 2, 5)] {
        let spec = SolutionSpec::algebraic(Family::Picard, nu, mu, n).unwrap();
        let mut worst = 0.0f64;
        for tau in tau_grid(5) {
            let r = solution_residual(&spec, &hp(tau), &P6Params::PICARD, &p, 1e-7)
                .map_err(|e| format!("({nu},{mu},{n}) τ = {tau}: {e}"))?;
            worst = worst.max(r.residual_abs);
        }
        parts.push(within(&format!("P6 ({nu},{mu},{n})"), worst, 1e-7));
    }

    let cal = calibrate_period_convention(&p).map_err(|e| e.to_string())?;
    let passing: Vec<_> = cal.scores.iter().filter(|(_, s)| *s < 1e-9).collect();
    if passing.len() != 1 || passing[0].0 != cal.selected {
        return Err(format!("{} period conventions pass the cross-identity", passing.len()));
    }
    let spec = SolutionSpec::algebraic(Family::Picard, 1, 1, 3).unwrap();
    let mut gap = 0.0f64;
    for tau in tau_grid(5) {
        let t = Jet::constant(tau, 0);
        let mut z = spec.a * tau + spec.b;
        if cal.selected.halved {
            z *= 0.5;
        }
        let (_, ys) = substitution_xy(&Jet::constant(z, 0), &t, cal.selected.conv, &p).map_err(|e| e.to_string())?;
        gap = gap.max((ys.value() - picard_y(&spec, &t, &p).unwrap().value()).norm());
    }
    parts.push(within(&format!("substitution cross-identity under {}", cal.selected.name()), gap, 1e-9));
    all(parts)
}

fn hitchin_verification() -> Outcome {
    let p = pol();
    let third = c(1.0 / 3.0, 0.0);
    let spec = SolutionSpec::new(Family::Hitchin, third, third);
    let (mut worst, mut control) = (0.0f64, f64::INFINITY);
    for tau in tau_grid(5) {
        let r = solution_residual(&spec, &hp(tau), &P6Params::HITCHIN, &p, 1e-7).map_err(|e| e.to_string())?;
        worst = worst.max(r.residual_abs);
        let wrong = solution_residual(&spec, &hp(tau), &P6Params::PICARD, &p, 1e-7).map_err(|e| e.to_string())?;
        control = control.min(wrong.residual_abs);
    }
    let neg = if control > 1e-3 {
        Ok(format!("negative control min {control:.2e} > 1e-3"))
    } else {
        Err(format!("negative control min {control:.2e} <= 1e-3"))
    };
    all(vec![within("P6 at A = B = 1/3", worst, 1e-7), neg])
}

fn cusp_asymptotics() -> Outcome {
    let p = pol();
    let pts = |v: &[(f64, f64)]| v.iter().map(|&(re, im)| hp(c(re, im))).collect::<Vec<_>>();
    let mut parts = Vec::new();
    for (cusp, samples) in [
        (Cusp::Zero, pts(&[(0.0, 0.5), (0.0, 0.4), (0.0, 1.0 / 3.0), (0.0, 0.3), (0.0, 0.25)])),
        (Cusp::Infinity, pts(&[(0.0, 2.0), (0.0, 3.0), (0.0, 4.0), (0.0, 5.0), (0.0, 6.0)])),
    ] {
        let s = cusp_asymptotics_check(cusp, &samples, &p).map_err(|e| e.to_string())?;
        let decays = s.windows(2).all(|w| w[1].leading_error < w[0].leading_error);
        let worst = s.iter().map(|x| x.ratio).fold(0.0, f64::max);
        if !decays {
            return Err(format!("cusp {}: leading error does not decay", cusp.name()));
        }
        parts.push(within(&format!("cusp {} error/|nome|²", cusp.name()), worst, 300.0));
    }
    let s = cusp_asymptotics_check(
        Cusp::One,
        &pts(&[(1.0, 0.5), (1.0, 0.4), (1.0, 1.0 / 3.0), (1.0, 0.3), (1.0, 0.25)]),
        &p,
    )
    .map_err(|e| e.to_string())?;
    let factor = s.iter().map(|x| x.ratio.max(x.ratio.recip())).fold(0.0, f64::max);
    parts.push(within("cusp one growth vs π/t (factor)", factor, 2.0));
    all(parts)
}

fn chudnovsky_identity() -> Outcome {
    let p = pol();
    let variant = calibrated_chud_variant().map_err(|e| e.to_string())?;
    let (mut worst, mut drift) = (0.0f64, 0.0f64);
    for tau in tau_grid(5) {
        let r = chud_residual_with(variant, &hp(tau), &p, 1e-6).map_err(|e| e.to_string())?;
        let d = chud_residual_with(variant, &hp(tau), &p.doubled(), 1e-6).map_err(|e| e.to_string())?;
        worst = worst.max(r.residual_abs);
        drift = drift.max((r.residual_abs - d.residual_abs).abs());
    }
    all(vec![
        within(&format!("[u,τ] + 2℘(2u) under {variant}"), worst, 1e-6),
        within("truncation doubling drift", drift, 1e-9),
    ])
}

fn hypergeometric_suite() -> Outcome {
    let lemn = HypergeomParams::real(0.5, 0.25, 1.25).unwrap();
    let mut quad = 0.0f64;
    for k in 0..10 {
        let s = Complex64::from_polar(0.15 + 0.07 * k as f64, 0.37 + 0.61 * k as f64);
        let series = s * hyp2f1(&lemn, s.powi(4)).map_err(|e| e.to_string())?;
        let oracle = lemniscatic_integral_oracle(s).map_err(|e| e.to_string())?;
        quad = quad.max((series - oracle).norm());
    }
    let params = [
        lemn,
        HypergeomParams::new(c(0.3, 0.2), c(-0.7, 0.1), c(1.6, -0.3)).unwrap(),
    ];
    let mut overlap = 0.0f64;
    for p in &params {
        for k in 0..24 {
            let z = Complex64::from_polar(0.7 + 0.1 * (k % 5) as f64 / 4.0, 0.13 + k as f64 * 0.26);
            let a = hyp2f1_via(p, z, ContinuationRegion::Disc).map_err(|e| e.to_string())?;
            let b = hyp2f1_via(p, z, ContinuationRegion::Pfaff).map_err(|e| e.to_string())?;
            overlap = overlap.max((a - b).norm());
        }
    }
    all(vec![
        within("₂F₁ vs lemniscatic quadrature (10 points)", quad, 1e-9),
        within("continuation overlap", overlap, 1e-11),
    ])
}

fn curve_extraction() -> Outcome {
    let samples: Vec<Complex64> = (0..50)
        .map(|k| {
            let t = k as f64 / 50.0;
            c(0.3 + 0.9 * t, 0.2 + 0.5 * (7.0 * t).sin())
        })
        .collect();
    let linear: Vec<_> = samples.iter().map(|&s| (s, s)).collect();
    let square: Vec<_> = samples.iter().map(|&s| (s * s, s)).collect();

    let mut coeff_err = 0.0f64;
    let fit = fit_algebraic_relation(&linear, &CurveFitSpec::new(1, 1).unwrap()).map_err(|e| e.to_string())?;
    let n = fit.coeffs[0][1];
    for (i, j, want) in [(0, 0, 0.0), (0, 1, 1.0), (1, 0, -1.0), (1, 1, 0.0)] {
        coeff_err = coeff_err.max((fit.coeffs[i][j] / n - want).norm());
    }
    let fit = fit_algebraic_relation(&square, &CurveFitSpec::new(1, 2).unwrap()).map_err(|e| e.to_string())?;
    let n = fit.coeffs[0][2];
    for i in 0..2 {
        for j in 0..3 {
            let want = match (i, j) {
                (0, 2) => 1.0,
                (1, 0) => -1.0,
                _ => 0.0,
            };
            coeff_err = coeff_err.max((fit.coeffs[i][j] / n - want).norm());
        }
    }

    let p = pol();
    let spec = SolutionSpec::algebraic(Family::Picard, 1, 1, 2).unwrap();
    let points: Vec<_> = sample_taus(60)
        .into_iter()
        .map(|tau| {
            let t = Jet::constant(tau, 0);
            (modular_x(&t, &p).unwrap().value(), picard_y(&spec, &t, &p).unwrap().value())
        })
        .collect();
    let fit = fit_minimal_relation(&points, 6, 1e-10).map_err(|e| e.to_string())?;
    if (fit.deg_x, fit.deg_y) != (1, 2) {
        return Err(format!("Picard (1,1,2) fit landed at bidegree ({}, {})", fit.deg_x, fit.deg_y));
    }
    all(vec![
        within("planted y - x, y² - x coefficients", coeff_err, 1e-8),
        within("Picard (1,1,2) held-out residual at bidegree (1,2)", fit.heldout_residual, 1e-7),
    ])
}

fn jet_calculus() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xacce97);
    let mut cplx = |r: f64| c(rng.random_range(-r..r), rng.random_range(-r..r));

    let (mut mobius, mut checked) = (0.0f64, 0);
    while checked < 100 {
        let (a, b, cc, d, t) = (cplx(2.0), cplx(2.0), cplx(2.0), cplx(2.0), cplx(0.5));
        let det = a * d - b * cc;
        if det.norm() < 0.2 {
            continue;
        }
        let s = det.sqrt().inv();
        let m = MobiusMap::new(a * s, b * s, cc * s, d * s).unwrap();
        if !m.derivatives_at(t).is_ok_and(|dv| dv[1].norm() > 0.1) {
            continue;
        }
        let y = mobius_jet(&m, &Jet::variable(t, 3)).unwrap();
        mobius = mobius.max(schwarz_bracket(&y).unwrap().norm());
        checked += 1;
    }

    let (mut inversion, mut connection) = (0.0f64, 0.0f64);
    let mut done = 0;
    while done < 100 {
        let d1 = Complex64::from_polar(0.5 + 1.5 * cplx(1.0).re.abs(), 3.0 * cplx(1.0).im);
        let y = Jet::new(&[cplx(2.0), d1, cplx(2.0), cplx(2.0)]).unwrap();
        let inv = jet_invert(&y, cplx(1.0)).unwrap();
        inversion = inversion.max((schwarz_bracket(&y).unwrap() + standard_schwarzian(&inv).unwrap()).norm());

        let (a, b, cc, d, t) = (cplx(2.0), cplx(2.0), cplx(2.0), cplx(2.0), cplx(1.0));
        if (a * d - b * cc).norm() <= 0.2 || (cc * t + d).norm() <= 0.3 {
            continue;
        }
        let m = MobiusMap::new(a, b, cc, d).unwrap();
        let back = mobius_jet(&m.inverse(), &Jet::variable(m.apply(t).unwrap(), 3)).unwrap();
        let g = Jet::compose(&y, &back);
        let md = m.derivatives_at(t).unwrap();
        let lhs = log_derivative_connection(&g).unwrap() * md[1];
        let rhs = log_derivative_connection(&y).unwrap() - md[2] / md[1];
        connection = connection.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
        done += 1;
    }
    all(vec![
        within("Schwarzian of 100 Möbius maps", mobius, 1e-12),
        within("[y,τ] + {τ,y}", inversion, 1e-10),
        within("connection chain rule", connection, 1e-10),
    ])
}

fn cli_contract() -> Outcome {
    use common::{exit_code, p6verify, schema_errors, summary_consistent};
    let pass = p6verify(&["verify", "--what", "picard", "--nu", "1", "--mu", "1", "--N", "3", "--grid", "5"], None);
    let fail = p6verify(&["hitchin", "--params", "0,0,0,0"], None);
    let usage = p6verify(&["eval", "--fn", "theta3", "--tau", "0.5"], None);
    let codes = (exit_code(&pass), exit_code(&fail), exit_code(&usage));
    if codes != (0, 1, 2) {
        return Err(format!("exit statuses {codes:?}, expected (0, 1, 2)"));
    }
    let reference = p6verify(&["suite"], Some(1));
    for threads in [Some(2), Some(8), None] {
        if p6verify(&["suite"], threads).stdout != reference.stdout {
            return Err(format!("suite output differs with {threads:?} threads"));
        }
    }
    for out in [&pass, &fail, &reference] {
        let text = String::from_utf8(out.stdout.clone()).map_err(|e| e.to_string())?;
        let errors = schema_errors(&text);
        if !errors.is_empty() {
            return Err(format!("schema violations: {errors:?}"));
        }
        if !summary_consistent(&text) {
            return Err("summary disagrees with results".into());
        }
    }
    Ok("exit statuses 0/1/2; suite byte-identical across 1, 2, 8 and default threads; reports match schema".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("theta identity suite", theta_identities),
        ("elliptic cross-oracle", elliptic_cross_oracle),
        ("Γ(2) Schwarz equation", gamma2_schwarz),
        ("Picard verification", picard_verification),
        ("Hitchin verification", hitchin_verification),
        ("cusp asymptotics", cusp_asymptotics),
        ("Chudnovsky identity", chudnovsky_identity),
        ("hypergeometric suite", hypergeometric_suite),
        ("curve extraction", curve_extraction),
        ("jet calculus", jet_calculus),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {name}: {detail}", k + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
