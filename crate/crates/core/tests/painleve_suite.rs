use num_complex::Complex64;
use p6_core::elliptic::PeriodConvention;
use p6_core::grid::{sample_taus, standard_tau_grid, tau_grid};
use p6_core::painleve::{
    calibrate_period_convention, fit_algebraic_relation, fit_minimal_relation, hitchin_residual, picard_residual,
    picard_y, solution_residual, substitution_xy, x_schwarz_residual, CurveFitSpec, Family, P6Params, SolutionSpec,
    SubstitutionVariant,
};
use p6_core::theta::modular_x;
use p6_core::{Error, HalfPlanePoint, Jet, TruncationPolicy};

fn hp(tau: Complex64) -> HalfPlanePoint {
    HalfPlanePoint::new(tau, &TruncationPolicy::default()).unwrap()
}

fn picard_points(spec: &SolutionSpec, n: usize) -> Vec<(Complex64, Complex64)> {
    let pol = TruncationPolicy::default();
    sample_taus(n)
        .into_iter()
        .map(|t| {
            let tj = Jet::constant(t, 0);
            (modular_x(&tj, &pol).unwrap().value(), picard_y(spec, &tj, &pol).unwrap().value())
        })
        .collect()
}

#[test]
fn picard_family_solves_p6_on_grid() {
    let pol = TruncationPolicy::default();
    for (nu, mu, n) in [(1, 1, 2), (1, 1, 3), (1, 2, 5)] {
        let spec = SolutionSpec::algebraic(Family::Picard, nu, mu, n).unwrap();
        for tau in tau_grid(5) {
            let r = picard_residual(&spec, &hp(tau), &pol, 1e-7).unwrap();
            assert!(r.pass, "({nu},{mu},{n}) τ = {tau}: {}", r.residual_abs);
            assert_eq!(r.convention, "double/z");
        }
    }
}

#[test]
fn hitchin_solves_p6_on_grid_and_fails_wrong_params() {
    let pol = TruncationPolicy::default();
    let third = Complex64::new(1.0 / 3.0, 0.0);
    let spec = SolutionSpec::new(Family::Hitchin, third, third);
    for tau in tau_grid(5) {
        let r = hitchin_residual(&spec, &hp(tau), &pol, 1e-7).unwrap();
        assert!(r.pass, "τ = {tau}: {}", r.residual_abs);
        let wrong = solution_residual(&spec, &hp(tau), &P6Params::PICARD, &pol, 1e-7).unwrap();
        assert!(wrong.residual_abs > 1e-3);
    }
}

#[test]
fn period_calibration_is_discriminating() {
    let cal = calibrate_period_convention(&TruncationPolicy::default()).unwrap();
    let winner = SubstitutionVariant {
        conv: PeriodConvention::Double,
        halved: false,
    };
    assert_eq!(cal.selected, winner);
    let passing = cal.scores.iter().filter(|(_, s)| *s < 1e-9).count();
    assert_eq!(passing, 1);
    assert!(cal.scores.iter().filter(|(v, _)| *v != winner).all(|(_, s)| *s > 1e-3));
}

#[test]
fn half_periods_map_onto_branch_values() {
    let pol = TruncationPolicy::default();
    for tau in [Complex64::new(0.0, 1.2), Complex64::new(0.3, 0.9)] {
        let t = Jet::constant(tau, 0);
        let x = modular_x(&t, &pol).unwrap().value();
        let mut images: Vec<Complex64> = [Complex64::new(1.0, 0.0), tau, tau + 1.0]
            .into_iter()
            .map(|z| {
                substitution_xy(&Jet::constant(z, 0), &t, PeriodConvention::Double, &pol)
                    .unwrap()
                    .1
                    .value()
            })
            .collect();
        for target in [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), x] {
            let pos = images
                .iter()
                .position(|v| (v - target).norm() < 1e-9)
                .unwrap_or_else(|| panic!("{target} missing at τ = {tau}"));
            images.remove(pos);
        }
        assert!(matches!(
            substitution_xy(&Jet::constant(Complex64::new(0.0, 0.0), 0), &t, PeriodConvention::Double, &pol),
            Err(Error::LatticePole(_))
        ));
    }
}

#[test]
fn x_schwarz_on_ten_points() {
    let pol = TruncationPolicy::default();
    for tau in tau_grid(10) {
        let r = x_schwarz_residual(&hp(tau), &pol, 1e-8).unwrap();
        assert!(r.pass, "τ = {tau}: {}", r.residual_abs);
    }
}

#[test]
fn picard_curve_fits() {
    let spec = SolutionSpec::algebraic(Family::Picard, 1, 1, 2).unwrap();
    let fit = fit_minimal_relation(&picard_points(&spec, 60), 6, 1e-10).unwrap();
    assert!(fit.heldout_residual < 1e-7);
    assert_eq!((fit.deg_x, fit.deg_y), (1, 2));
    // y² − 2xy + x = 0
    let c = &fit.coeffs;
    let s = c[1][1];
    assert!((c[0][2] / s + 0.5).norm() < 1e-8);
    assert!((c[1][0] / s + 0.5).norm() < 1e-8);

    let spec = SolutionSpec::algebraic(Family::Picard, 0, 1, 2).unwrap();
    let fit = fit_minimal_relation(&picard_points(&spec, 60), 6, 1e-10).unwrap();
    assert!(fit.total_degree(1e-8) <= 2);
}

#[test]
fn fit_is_scale_equivariant() {
    let spec = SolutionSpec::algebraic(Family::Picard, 1, 1, 2).unwrap();
    let pts = picard_points(&spec, 40);
    let k = Complex64::new(2.5, -0.7);
    let scaled: Vec<_> = pts.iter().map(|&(x, y)| (x, y * k)).collect();
    let cf = CurveFitSpec::new(1, 2).unwrap();
    let a = fit_algebraic_relation(&pts, &cf).unwrap();
    let b = fit_algebraic_relation(&scaled, &cf).unwrap();
    // b[i][j] ∝ a[i][j]·k^{−j}
    let expect: Vec<Vec<Complex64>> = a
        .coeffs
        .iter()
        .map(|row| row.iter().enumerate().map(|(j, &v)| v * k.powi(-(j as i32))).collect())
        .collect();
    let (bi, bj) = (1, 1);
    let ratio = b.coeffs[bi][bj] / expect[bi][bj];
    for i in 0..2 {
        for j in 0..3 {
            assert!((b.coeffs[i][j] - ratio * expect[i][j]).norm() < 1e-9);
        }
    }
}

#[test]
fn standard_grid_supports_every_residual() {
    let pol = TruncationPolicy::default();
    let spec = SolutionSpec::algebraic(Family::Picard, 1, 1, 3).unwrap();
    for tau in standard_tau_grid() {
        let p = hp(tau);
        assert!(picard_residual(&spec, &p, &pol, 1e-7).unwrap().pass, "τ = {tau}");
        assert!(x_schwarz_residual(&p, &pol, 1e-8).unwrap().pass, "τ = {tau}");
        assert!(p6_core::hypergeom::chud_residual(&p, &pol).unwrap().pass, "τ = {tau}");
    }
}
