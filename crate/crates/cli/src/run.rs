//! Executes a validated command into a report.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use p6_core::elliptic::{invariants_g2g3, wp_eval, wp_laurent_oracle, PeriodConvention};
use p6_core::grid::{sample_taus, tau_grid, theta_identity_grid};
use p6_core::hypergeom::{calibrated_chud_variant, chud_residual_with, chud_u, gauss_2f1, HypergeomParams};
use p6_core::painleve::{
    calibrated_substitution, cusp_asymptotics_check, fit_minimal_relation, picard_y,
    solution_residual, solution_y, substitution_xy, x_schwarz_residual, CurveFit, Cusp, Family, P6Params,
    SolutionSpec,
};
use p6_core::theta::{modular_x, theta1_prime, theta_eval, theta_null};
use p6_core::{Error, HalfPlanePoint, Jet, ResidualReport, ThetaIndex, TruncationPolicy};
use rayon::prelude::*;

use crate::cli::{
    Command, CommandSpec, ComplexList, ConventionArg, CuspArg, EvalArgs, FamilyArg, FnName, Points, SolutionSelect,
    What,
};
use crate::report::{CommandEcho, Cplx, ReportDocument, Row};

const SOLUTION_TOL: f64 = 1e-7;
const SOLUTION_GRID: usize = 5;
const CHUD_TOL: f64 = 1e-6;
const CHUD_GRID: usize = 5;
const DOUBLING_TOL: f64 = 1e-9;
const SCHWARZ_TOL: f64 = 1e-8;
const SCHWARZ_GRID: usize = 10;
const JACOBI_TOL: f64 = 1e-12;
const QUASI_TOL: f64 = 1e-11;
const WP_IDENTITY_TOL: f64 = 1e-9;
const WP_IDENTITY_Z: f64 = 0.23;
const WP_IDENTITY_GRID: usize = 10;
const SUBSTITUTION_TOL: f64 = 1e-9;
const FIT_SAMPLES: usize = 60;
const FIT_RANK_TOL: f64 = 1e-10;
const FIT_TOL: f64 = 1e-7;
const FIT_MAX_DEG: usize = 6;
const CONTROL_TOL: f64 = 1e-3;
/// Bound on `|x − asymptote| / |local nome|²` at the cusps `0` and `∞`.
const CUSP_RATIO_BOUND: f64 = 300.0;
/// Allowed factor between the observed and predicted growth at the cusp `1`.
const CUSP_RATE_FACTOR: f64 = 2.0;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn row_from(r: ResidualReport) -> Row {
    Row::new(r.context, r.convention).at(r.tau).judged(r.residual_abs, r.tol)
}

fn error_row(context: &str, convention: &str, tau: Option<Complex64>, e: &Error) -> Row {
    let row = Row::new(context, convention);
    match tau {
        Some(t) => row.at(t).failed(e),
        None => row.failed(e),
    }
}

fn taus_or_grid(points: &Points, default: usize) -> Vec<Complex64> {
    if points.tau.is_empty() {
        tau_grid(points.grid.unwrap_or(default))
    } else {
        points.tau.clone()
    }
}

fn period_convention(arg: ConventionArg) -> Result<(PeriodConvention, bool), Error> {
    match arg {
        ConventionArg::Auto => calibrated_substitution().map(|v| (v.conv, v.halved)),
        ConventionArg::Unit => Ok((PeriodConvention::Unit, false)),
        ConventionArg::Double => Ok((PeriodConvention::Double, false)),
    }
}

fn solution_spec(family: Family, s: &SolutionSelect) -> Result<SolutionSpec, Error> {
    if s.a.is_some() || s.b.is_some() {
        let third = c(1.0 / 3.0, 0.0);
        return Ok(SolutionSpec::new(family, s.a.unwrap_or(third), s.b.unwrap_or(third)));
    }
    SolutionSpec::algebraic(family, s.nu.unwrap_or(1), s.mu.unwrap_or(1), s.n.unwrap_or(3))
}

fn p6_params(family: Family, s: &SolutionSelect) -> P6Params {
    match &s.params {
        Some(ComplexList(p)) => P6Params {
            alpha: p[0],
            beta: p[1],
            gamma: p[2],
            delta: p[3],
        },
        None => family.params(),
    }
}

/// One P6 residual row per `τ`.
fn solution_rows(
    family: Family,
    select: &SolutionSelect,
    taus: &[Complex64],
    tol: f64,
    pol: &TruncationPolicy,
) -> Vec<Row> {
    let context = format!("p6-{}", family.name());
    let spec = match solution_spec(family, select) {
        Ok(s) => s,
        Err(e) => return vec![error_row(&context, "", None, &e)],
    };
    let params = p6_params(family, select);
    taus.par_iter()
        .map(|&tau| {
            let r = HalfPlanePoint::new(tau, pol).and_then(|hp| solution_residual(&spec, &hp, &params, pol, tol));
            match r {
                Ok(r) => row_from(r),
                Err(e) => error_row(&context, "", Some(tau), &e),
            }
        })
        .collect()
}

fn x_schwarz_rows(taus: &[Complex64], tol: f64, pol: &TruncationPolicy) -> Vec<Row> {
    taus.par_iter()
        .map(|&tau| {
            match HalfPlanePoint::new(tau, pol).and_then(|hp| x_schwarz_residual(&hp, pol, tol)) {
                Ok(r) => row_from(r),
                Err(e) => error_row("x-schwarz", "gamma2", Some(tau), &e),
            }
        })
        .collect()
}

fn chudnovsky_rows(taus: &[Complex64], tol: f64, pol: &TruncationPolicy) -> Vec<Row> {
    let variant = match calibrated_chud_variant() {
        Ok(v) => v,
        Err(e) => return vec![error_row("chudnovsky", "", None, &e)],
    };
    let doubled = pol.doubled();
    taus.par_iter()
        .map(|&tau| {
            let run = || -> Result<Row, Error> {
                let hp = HalfPlanePoint::new(tau, pol)?;
                let r = chud_residual_with(variant, &hp, pol, tol)?;
                let r2 = chud_residual_with(variant, &hp, &doubled, tol)?;
                let gap = (r.residual_abs - r2.residual_abs).abs();
                let mut row = row_from(r).metric("doubling_gap", gap);
                if gap > DOUBLING_TOL {
                    row.pass = false;
                    row.detail = Some(format!("residual moved by {gap:e} when the term budget doubled"));
                }
                Ok(row)
            };
            run().unwrap_or_else(|e| error_row("chudnovsky", &variant.to_string(), Some(tau), &e))
        })
        .collect()
}

/// `(Jacobi, quasi-periodicity)` errors at `τ`, each relative to `max(1, |value|)`.
pub fn theta_identity_errors(tau: Complex64, pol: &TruncationPolicy) -> Result<(f64, f64), Error> {
    let t = Jet::constant(tau, 0);
    let k = |i| ThetaIndex::new(i);
    let p4 = |i| -> Result<Complex64, Error> { Ok(theta_null(k(i)?, &t, pol)?.value().powi(4)) };
    let (a, b, d) = (p4(2)?, p4(3)?, p4(4)?);
    let scale = a.norm().max(b.norm()).max(d.norm()).max(1.0);
    let jacobi = (b - a - d).norm() / scale;

    let theta = |i: u8, z: Complex64| -> Result<Complex64, Error> {
        Ok(theta_eval(k(i)?, &Jet::constant(z, 0), &t, pol)?.value())
    };
    let q = (c(0.0, PI) * tau).exp();
    let signs: [(u8, f64, f64); 4] = [(1, -1.0, -1.0), (2, -1.0, 1.0), (3, 1.0, 1.0), (4, 1.0, -1.0)];
    let mut quasi: f64 = 0.0;
    for z in [c(0.13, 0.07), c(-0.31, -0.02)] {
        let factor = q.inv() * (c(0.0, -2.0 * PI) * z).exp();
        for &(i, s1, st) in &signs {
            let base = theta(i, z)?;
            let e1 = (theta(i, z + 1.0)? - s1 * base).norm() / base.norm().max(1.0);
            let expect = st * factor * base;
            let et = (theta(i, z + tau)? - expect).norm() / expect.norm().max(1.0);
            quasi = quasi.max(e1).max(et);
        }
    }
    Ok((jacobi, quasi))
}

fn theta_identity_rows(points: &Points, tol: Option<f64>, pol: &TruncationPolicy) -> Vec<Row> {
    let taus = if !points.tau.is_empty() {
        points.tau.clone()
    } else if let Some(n) = points.grid {
        tau_grid(n)
    } else {
        theta_identity_grid()
    };
    let per_tau: Vec<Vec<Row>> = taus
        .par_iter()
        .map(|&tau| match theta_identity_errors(tau, pol) {
            Ok((j, q)) => vec![
                Row::new("theta-jacobi", "").at(tau).judged(j, tol.unwrap_or(JACOBI_TOL)),
                Row::new("theta-quasi-periodicity", "").at(tau).judged(q, tol.unwrap_or(QUASI_TOL)),
            ],
            Err(e) => vec![error_row("theta-identities", "", Some(tau), &e)],
        })
        .collect();
    per_tau.into_iter().flatten().collect()
}

fn wp_identity_rows(
    taus: &[Complex64],
    z: Complex64,
    conv: Result<(PeriodConvention, bool), Error>,
    tol: f64,
    pol: &TruncationPolicy,
) -> Vec<Row> {
    let conv = match conv {
        Ok((c, _)) => c,
        Err(e) => return vec![error_row("wp-identity", "", None, &e)],
    };
    taus.par_iter()
        .map(|&tau| {
            let run = || -> Result<Row, Error> {
                let hp = HalfPlanePoint::new(tau, pol)?;
                let inv = invariants_g2g3(&hp, conv, pol)?;
                let (p, dp) = wp_eval(&Jet::constant(z, 0), &Jet::constant(tau, 0), conv, pol)?;
                let (p, dp) = (p.value(), dp.value());
                let gap = (dp * dp - inv.cubic(p)).norm();
                let mut row = Row::new("wp-identity", conv.name()).at(tau).with_z(z).judged(gap, tol);
                row.values = vec![p.into(), dp.into()];
                if let Ok(o) = wp_laurent_oracle(z, &hp, conv, pol) {
                    row = row.metric("laurent_gap", (o - p).norm());
                }
                Ok(row)
            };
            run().unwrap_or_else(|e| error_row("wp-identity", conv.name(), Some(tau), &e).with_z(z))
        })
        .collect()
}

/// `|y from the ℘ substitution − y from the theta formula|` for a Picard solution.
fn substitution_rows(
    select: &SolutionSelect,
    taus: &[Complex64],
    conv: Result<(PeriodConvention, bool), Error>,
    tol: f64,
    pol: &TruncationPolicy,
) -> Vec<Row> {
    let spec = solution_spec(Family::Picard, select);
    let (spec, (conv, halved)) = match (spec, conv) {
        (Ok(s), Ok(v)) => (s, v),
        (Err(e), _) | (_, Err(e)) => return vec![error_row("substitution", "", None, &e)],
    };
    let name = format!("{}/{}", conv.name(), if halved { "z-half" } else { "z" });
    taus.par_iter()
        .map(|&tau| {
            let run = || -> Result<Row, Error> {
                pol.check_tau(tau)?;
                let t = Jet::constant(tau, 0);
                let mut z = spec.a * tau + spec.b;
                if halved {
                    z *= 0.5;
                }
                let (_, ys) = substitution_xy(&Jet::constant(z, 0), &t, conv, pol)?;
                let yp = picard_y(&spec, &t, pol)?;
                let mut row = Row::new("substitution", name.clone())
                    .at(tau)
                    .with_z(z)
                    .judged((ys.value() - yp.value()).norm(), tol);
                row.values = vec![ys.value().into(), yp.value().into()];
                Ok(row)
            };
            run().unwrap_or_else(|e| error_row("substitution", &name, Some(tau), &e))
        })
        .collect()
}

const CUSP_SAMPLES: [(Cusp, [(f64, f64); 5]); 3] = [
    (Cusp::Zero, [(0.0, 0.5), (0.0, 0.4), (0.0, 1.0 / 3.0), (0.0, 0.3), (0.0, 0.25)]),
    (Cusp::One, [(1.0, 0.5), (1.0, 0.4), (1.0, 1.0 / 3.0), (1.0, 0.3), (1.0, 0.25)]),
    (Cusp::Infinity, [(0.0, 2.0), (0.0, 3.0), (0.0, 4.0), (0.0, 5.0), (0.0, 6.0)]),
];

/// One row per sample. At `0` and `∞` the residual is the second-order
/// ratio `|x − asymptote| / |nome|²`; at `1` it is `max(r, 1/r)` for the
/// observed-to-predicted growth ratio `r`.
fn cusp_rows(cusp: Cusp, taus: &[Complex64], pol: &TruncationPolicy) -> Vec<Row> {
    let context = format!("cusp-{}", cusp.name());
    let points: Result<Vec<HalfPlanePoint>, Error> = taus.iter().map(|&t| HalfPlanePoint::new(t, pol)).collect();
    let samples = match points.and_then(|p| cusp_asymptotics_check(cusp, &p, pol)) {
        Ok(s) => s,
        Err(e) => return vec![error_row(&context, "gamma2", None, &e)],
    };
    samples
        .into_iter()
        .map(|s| {
            let (residual, tol) = match cusp {
                Cusp::One => (s.ratio.max(s.ratio.recip()), CUSP_RATE_FACTOR),
                _ => (s.ratio, CUSP_RATIO_BOUND),
            };
            let residual = if residual.is_finite() { residual } else { f64::INFINITY };
            Row::new(context.clone(), "gamma2")
                .at(s.tau)
                .judged(residual, tol)
                .metric("leading_error", s.leading_error)
                .metric("ratio", s.ratio)
        })
        .collect()
}

fn asymptotics_rows(cusp: Option<CuspArg>, taus: &[Complex64], pol: &TruncationPolicy) -> Vec<Row> {
    let wanted = cusp.map(|c| match c {
        CuspArg::Zero => Cusp::Zero,
        CuspArg::One => Cusp::One,
        CuspArg::Infinity => Cusp::Infinity,
    });
    CUSP_SAMPLES
        .iter()
        .filter(|(k, _)| wanted.is_none_or(|w| w == *k))
        .flat_map(|(k, pts)| {
            let samples: Vec<Complex64> = if taus.is_empty() {
                pts.iter().map(|&(re, im)| c(re, im)).collect()
            } else {
                taus.to_vec()
            };
            cusp_rows(*k, &samples, pol)
        })
        .collect()
}

fn describe_fit(fit: &CurveFit) -> String {
    let terms: Vec<String> = fit
        .terms(1e-12)
        .into_iter()
        .map(|(i, j, v)| format!("({:.12e}{:+.12e}i)*x^{i}*y^{j}", v.re, v.im))
        .collect();
    format!("{} = 0", terms.join(" + "))
}

fn fit_rows(family: Family, select: &SolutionSelect, max_deg: usize, tol: f64, pol: &TruncationPolicy) -> Vec<Row> {
    let context = format!("fit-curve-{}", family.name());
    let run = || -> Result<Row, Error> {
        let spec = solution_spec(family, select)?;
        let taus = sample_taus(FIT_SAMPLES);
        let points = taus
            .par_iter()
            .map(|&tau| {
                let t = Jet::constant(tau, 0);
                Ok((modular_x(&t, pol)?.value(), solution_y(&spec, &t, pol)?.value()))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let fit = fit_minimal_relation(&points, max_deg, FIT_RANK_TOL)?;
        let mut row = Row::new(context.clone(), format!("bidegree {}x{}", fit.deg_x, fit.deg_y))
            .judged(fit.heldout_residual, tol)
            .metric("deg_x", fit.deg_x as f64)
            .metric("deg_y", fit.deg_y as f64)
            .metric("total_degree", fit.total_degree(1e-8) as f64)
            .metric("samples", points.len() as f64);
        if let Some(&s) = fit.singular_values.last() {
            row = row.metric("sigma_min", s);
        }
        row.values = fit.coeffs.iter().flatten().map(|&v| Cplx::from(v)).collect();
        row.detail = Some(describe_fit(&fit));
        Ok(row)
    };
    vec![run().unwrap_or_else(|e| error_row(&context, "", None, &e))]
}

fn eval_rows(args: &EvalArgs, pol: &TruncationPolicy) -> Vec<Row> {
    let context = format!("eval-{}", fn_label(args.func));
    let n = args.order;
    let conv = period_convention(args.convention);
    let convention = match (args.func, &conv) {
        (FnName::Wp, Ok((c, _))) => c.name().to_string(),
        _ => String::new(),
    };
    let eval_at = |tau: Option<Complex64>| -> Result<Jet, Error> {
        let z = args.z;
        let tj = |t: Option<Complex64>| -> Result<Complex64, Error> {
            let t = t.expect("tau-dependent function has a tau");
            pol.check_tau(t)?;
            Ok(t)
        };
        match args.func {
            FnName::Theta1 | FnName::Theta2 | FnName::Theta3 | FnName::Theta4 => {
                let k = ThetaIndex::new(match args.func {
                    FnName::Theta1 => 1,
                    FnName::Theta2 => 2,
                    FnName::Theta3 => 3,
                    _ => 4,
                })?;
                theta_eval(k, &Jet::constant(z, n), &Jet::variable(tj(tau)?, n), pol)
            }
            FnName::Theta1prime => theta1_prime(&Jet::constant(z, n), &Jet::variable(tj(tau)?, n), pol),
            FnName::X => modular_x(&Jet::variable(tj(tau)?, n), pol),
            FnName::U => chud_u(&Jet::variable(tj(tau)?, n), pol),
            FnName::Wp => {
                let (c, _) = conv.clone()?;
                Ok(wp_eval(&Jet::variable(z, n), &Jet::constant(tj(tau)?, n), c, pol)?.0)
            }
            FnName::Hyp2f1 => {
                let p = match &args.params {
                    Some(ComplexList(v)) => HypergeomParams::new(v[0], v[1], v[2])?,
                    None => HypergeomParams::real(0.5, 0.25, 1.25)?,
                };
                gauss_2f1(&p, &Jet::variable(z, n))
            }
        }
    };
    let finish = |tau: Option<Complex64>| -> Row {
        let mut row = Row::new(context.clone(), convention.clone());
        if !matches!(args.func, FnName::X | FnName::U) {
            row = row.with_z(args.z);
        }
        if let Some(t) = tau {
            row = row.at(t);
        }
        match eval_at(tau) {
            Ok(jet) => {
                row.pass = true;
                row.values = jet.derivs().iter().map(|&v| Cplx::from(v)).collect();
                row
            }
            Err(e) => row.failed(&e),
        }
    };
    if args.func == FnName::Hyp2f1 {
        return vec![finish(None)];
    }
    let taus = if args.points.tau.is_empty() {
        tau_grid(args.points.grid.unwrap_or(1))
    } else {
        args.points.tau.clone()
    };
    taus.par_iter().map(|&t| finish(Some(t))).collect()
}

fn fn_label(f: FnName) -> &'static str {
    match f {
        FnName::Theta1 => "theta1",
        FnName::Theta2 => "theta2",
        FnName::Theta3 => "theta3",
        FnName::Theta4 => "theta4",
        FnName::Theta1prime => "theta1prime",
        FnName::Wp => "wp",
        FnName::X => "x",
        FnName::Hyp2f1 => "2f1",
        FnName::U => "u",
    }
}

fn default_select() -> SolutionSelect {
    SolutionSelect {
        nu: None,
        mu: None,
        n: None,
        a: None,
        b: None,
        params: None,
    }
}

/// The Hitchin solution tested against the Picard parameters; passes when
/// the residual exceeds `CONTROL_TOL`.
fn negative_control_rows(taus: &[Complex64], pol: &TruncationPolicy) -> Vec<Row> {
    let mut select = default_select();
    select.params = Some(ComplexList(P6Params::PICARD.as_array().to_vec()));
    solution_rows(Family::Hitchin, &select, taus, CONTROL_TOL, pol)
        .into_iter()
        .map(|mut r| {
            r.context = "p6-hitchin-control".into();
            if r.error.is_none() {
                r.pass = r.residual.is_some_and(|v| v.0 > CONTROL_TOL);
                r.detail = Some("negative control: residual must exceed tol".into());
            }
            r
        })
        .collect()
}

fn suite_rows(pol: &TruncationPolicy) -> Vec<Row> {
    let select_for = |nu, mu, n| SolutionSelect {
        nu: Some(nu),
        mu: Some(mu),
        n: Some(n),
        ..default_select()
    };
    let solution_taus = tau_grid(SOLUTION_GRID);
    let mut rows = theta_identity_rows(
        &Points {
            tau: vec![],
            grid: None,
        },
        None,
        pol,
    );
    rows.extend(wp_identity_rows(
        &tau_grid(WP_IDENTITY_GRID),
        c(WP_IDENTITY_Z, 0.0),
        period_convention(ConventionArg::Auto),
        WP_IDENTITY_TOL,
        pol,
    ));
    rows.extend(x_schwarz_rows(&tau_grid(SCHWARZ_GRID), SCHWARZ_TOL, pol));
    for (nu, mu, n) in [(1, 1, 2), (1, 1, 3), (1, 2, 5)] {
        rows.extend(solution_rows(Family::Picard, &select_for(nu, mu, n), &solution_taus, SOLUTION_TOL, pol));
    }
    rows.extend(substitution_rows(
        &default_select(),
        &solution_taus,
        period_convention(ConventionArg::Auto),
        SUBSTITUTION_TOL,
        pol,
    ));
    rows.extend(solution_rows(Family::Hitchin, &default_select(), &solution_taus, SOLUTION_TOL, pol));
    rows.extend(negative_control_rows(&solution_taus, pol));
    rows.extend(asymptotics_rows(None, &[], pol));
    rows.extend(chudnovsky_rows(&tau_grid(CHUD_GRID), CHUD_TOL, pol));
    rows.extend(fit_rows(Family::Picard, &select_for(1, 1, 2), FIT_MAX_DEG, FIT_TOL, pol));
    rows
}

fn calibration_echo() -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert(
        "period".to_string(),
        calibrated_substitution().map(|v| v.name()).unwrap_or_else(|e| format!("uncalibrated: {}", e.code())),
    );
    m.insert(
        "chudnovsky".to_string(),
        calibrated_chud_variant()
            .map(|v| v.to_string())
            .unwrap_or_else(|e| format!("uncalibrated: {}", e.code())),
    );
    m
}

/// Runs `spec` and assembles the report. Rows keep grid order regardless
/// of how many threads evaluate them.
pub fn execute(spec: &CommandSpec) -> ReportDocument {
    let pol = &spec.policy;
    let rows = match &spec.command {
        Command::Eval(a) => eval_rows(a, pol),
        Command::Picard(a) => solution_rows(
            Family::Picard,
            &a.select,
            &taus_or_grid(&a.points, SOLUTION_GRID),
            a.tol.unwrap_or(SOLUTION_TOL),
            pol,
        ),
        Command::Hitchin(a) => solution_rows(
            Family::Hitchin,
            &a.select,
            &taus_or_grid(&a.points, SOLUTION_GRID),
            a.tol.unwrap_or(SOLUTION_TOL),
            pol,
        ),
        Command::Verify(a) => match a.what {
            What::Picard | What::Hitchin => {
                let family = if a.what == What::Picard { Family::Picard } else { Family::Hitchin };
                solution_rows(
                    family,
                    &a.select,
                    &taus_or_grid(&a.points, SOLUTION_GRID),
                    a.tol.unwrap_or(SOLUTION_TOL),
                    pol,
                )
            }
            What::XSchwarz => {
                x_schwarz_rows(&taus_or_grid(&a.points, SCHWARZ_GRID), a.tol.unwrap_or(SCHWARZ_TOL), pol)
            }
            What::ThetaIdentities => theta_identity_rows(&a.points, a.tol, pol),
            What::WpIdentity => wp_identity_rows(
                &taus_or_grid(&a.points, WP_IDENTITY_GRID),
                a.z.unwrap_or(c(WP_IDENTITY_Z, 0.0)),
                period_convention(a.convention),
                a.tol.unwrap_or(WP_IDENTITY_TOL),
                pol,
            ),
            What::Substitution => substitution_rows(
                &a.select,
                &taus_or_grid(&a.points, SOLUTION_GRID),
                period_convention(a.convention),
                a.tol.unwrap_or(SUBSTITUTION_TOL),
                pol,
            ),
        },
        Command::Asymptotics(a) => asymptotics_rows(a.cusp, &a.tau, pol),
        Command::Chudnovsky(a) => {
            chudnovsky_rows(&taus_or_grid(&a.points, CHUD_GRID), a.tol.unwrap_or(CHUD_TOL), pol)
        }
        Command::FitCurve(a) => {
            let family = match a.family {
                FamilyArg::Picard => Family::Picard,
                FamilyArg::Hitchin => Family::Hitchin,
            };
            fit_rows(family, &a.select, a.max_deg, a.tol.unwrap_or(FIT_TOL), pol)
        }
        Command::Suite(_) => suite_rows(pol),
    };
    ReportDocument::new(
        CommandEcho {
            subcommand: spec.command.name().to_string(),
            args: spec.args.clone(),
        },
        calibration_echo(),
        rows,
    )
}
