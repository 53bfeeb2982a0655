//! Pointwise residual checks of the Hamiltonian eigenvalue equations and of
//! the closed forms of the coherent series.

use std::collections::BTreeMap;



use crate::coherent::{build_coherent_series, closed_form_params, laguerre_series_coeffs, CoherentSeries};
use crate::error::{Error, Result};
use crate::exactcore::{rational, scalar_to_f64, ExactScalar, MultiPoly};
use crate::numerics::fd::{fd_apply_hamiltonian, FDScheme, Hamiltonian};
use crate::numerics::sampling::SampleSet;
use crate::numerics::special::laguerre_bessel_identity_residual;
use crate::numerics::state::{RadialProfile, StateFn, StateMode};
use crate::operators::{exp_nilpotent, ModelKind, ModelParams};
use crate::report::{model_params_map, CheckRecord, Residual};

/// Relative-error floor, as a fraction of the largest sampled magnitude,
/// that keeps points near a node from dominating.
pub const NODE_FLOOR: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckSettings {
    pub scheme: FDScheme,
    pub delta: f64,
    pub tolerance: f64,
}

impl Default for CheckSettings {
    fn default() -> Self {
        CheckSettings {
            scheme: FDScheme::default(),
            delta: 0.2,
            tolerance: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub check_name: String,
    pub params: BTreeMap<String, String>,
    pub points: usize,
    pub seed: Option<u64>,
    pub max_relative_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Point attaining the maximum, when the check is pointwise.
    pub worst_point: Option<Vec<f64>>,
}

impl ResidualReport {
    fn new(
        check_name: &str,
        params: BTreeMap<String, String>,
        points: usize,
        seed: Option<u64>,
        errors: &[(f64, Option<&[f64]>)],
        tolerance: f64,
    ) -> Self {
        // NaN compares greater than everything so it is never hidden.
        let worst = errors
            .iter()
            .copied()
            .reduce(|a, b| if b.0.is_nan() || b.0 > a.0 { b } else { a });
        let max_relative_error = worst.map(|w| w.0).unwrap_or(0.0);
        ResidualReport {
            check_name: check_name.into(),
            params,
            points,
            seed,
            max_relative_error,
            tolerance,
            pass: max_relative_error <= tolerance,
            worst_point: worst.and_then(|w| w.1.map(<[f64]>::to_vec)),
        }
    }

    pub fn to_record(&self) -> CheckRecord {
        let mut record = CheckRecord::new(
            self.check_name.clone(),
            self.params.clone(),
            Residual::Relative(self.max_relative_error),
            Residual::Relative(self.tolerance),
        )
        .with_detail("points", self.points);
        if let Some(seed) = self.seed {
            record = record.with_detail("seed", seed);
        }
        if let Some(p) = &self.worst_point {
            record = record.with_detail("worst_point", format!("{p:?}"));
        }
        record
    }
}

fn relative_errors(pairs: &[(f64, f64)], scale: f64) -> Vec<f64> {
    let floor = NODE_FLOOR * pairs.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    pairs
        .iter()
        .map(|&(got, want)| (got - want).abs() / (scale * want.abs().max(floor)))
        .collect()
}

/// `max |Hf − Ef| / (|E|·max(|f|, floor))` over the sample.
pub fn eigen_residual(
    check_name: &str,
    ham: Hamiltonian,
    state: &StateFn,
    eigenvalue: f64,
    points: &SampleSet,
    settings: &CheckSettings,
    mut params: BTreeMap<String, String>,
) -> Result<ResidualReport> {
    let f = |x: &[f64]| state.eval(x);
    let mut pairs = Vec::with_capacity(points.points.len());
    for p in &points.points {
        let hf = fd_apply_hamiltonian(ham, state.params(), &f, &p.coords, &settings.scheme, settings.delta)?;
        pairs.push((hf, eigenvalue * f(&p.coords)?));
    }
    let scale = if eigenvalue == 0.0 { 1.0 } else { eigenvalue.abs() };
    // `pairs` holds E·f; dividing by |E| restores f for the floor.
    let pairs_f: Vec<(f64, f64)> = pairs.iter().map(|&(a, b)| (a / scale, b / scale)).collect();
    let errs = relative_errors(&pairs_f, 1.0);
    params.insert("hamiltonian".into(), ham.name().into());
    params.insert("eigenvalue".into(), format!("{eigenvalue}"));
    let with_points: Vec<(f64, Option<&[f64]>)> = errs
        .iter()
        .zip(&points.points)
        .map(|(&e, p)| (e, Some(p.coords.as_slice())))
        .collect();
    Ok(ResidualReport::new(
        check_name,
        params,
        points.points.len(),
        Some(points.seed),
        &with_points,
        settings.tolerance,
    ))
}

fn series_params(series: &CoherentSeries) -> BTreeMap<String, String> {
    let mut params = model_params_map(series.params());
    params.insert("m".into(), series.m().to_string());
    params.insert("k2".into(), series.k_squared().to_string());
    params.insert("order".into(), series.order().to_string());
    params
}

/// `H(Zψ) = (k²/2)(Zψ)` for the truncated coherent series `ψ`.
pub fn eigen_residual_scattering(
    series: &CoherentSeries,
    points: &SampleSet,
    settings: &CheckSettings,
) -> Result<ResidualReport> {
    let state = StateFn::from_series(series, StateMode::WithJastrow, settings.delta, settings.tolerance);
    let e = 0.5 * scalar_to_f64(series.k_squared());
    eigen_residual(
        "scattering_eigenvalue",
        Hamiltonian::scattering(series.params().kind()),
        &state,
        e,
        points,
        settings,
        series_params(series),
    )
}

/// The same equation for `Z·Γ(ν'+1)(kr/2)^{−ν'}J_ν'(kr)·P_m` with
/// `ν' = ν + nu_shift`; any nonzero shift must fail.
pub fn scattering_closed_form_residual(
    params: &ModelParams,
    base: &MultiPoly,
    m: u32,
    k_squared: &ExactScalar,
    nu_shift: f64,
    points: &SampleSet,
    settings: &CheckSettings,
) -> Result<ResidualReport> {
    let cf = closed_form_params(params, m)?;
    let k2 = scalar_to_f64(k_squared);
    let nu = scalar_to_f64(&cf.nu) + nu_shift;
    let state = StateFn::closed_form(params, base, nu, k2.sqrt(), StateMode::WithJastrow, settings.delta);
    let mut p = model_params_map(params);
    p.insert("m".into(), m.to_string());
    p.insert("k2".into(), k_squared.to_string());
    p.insert("nu".into(), format!("{nu}"));
    eigen_residual(
        "scattering_closed_form",
        Hamiltonian::scattering(params.kind()),
        &state,
        0.5 * k2,
        points,
        settings,
        p,
    )
}

/// `H(Ŝq) = (m + E₀)(Ŝq)` with `Ŝq = Z·exp(−r²/2)·exp(−R/2)q`, where `R` is
/// the raising operator and the exponential is computed exactly.
pub fn eigen_residual_bound(
    params: &ModelParams,
    q: &MultiPoly,
    points: &SampleSet,
    settings: &CheckSettings,
) -> Result<ResidualReport> {
    if !q.is_homogeneous() || !q.is_symmetric() || q.is_zero() {
        return Err(Error::InvalidParams(format!(
            "bound-state seed {q} must be a nonzero homogeneous symmetric polynomial"
        )));
    }
    if params.kind() == ModelKind::Bn && !q.is_even() {
        return Err(Error::InvalidParams(format!("B_N seed {q} must be even")));
    }
    let m = q.degree().unwrap_or(0);
    let poly = exp_nilpotent(params, &rational(-1, 2), params.raising_tag(), q)?;
    let state = StateFn::from_poly(params, &poly, StateMode::WithJastrowGaussian, settings.delta);
    let energy = params.ground_energy() + ExactScalar::from_integer((m as i64).into());
    let mut p = model_params_map(params);
    p.insert("m".into(), m.to_string());
    p.insert("q".into(), q.to_string());
    eigen_residual(
        "bound_eigenvalue",
        Hamiltonian::confined(params.kind()),
        &state,
        scalar_to_f64(&energy),
        points,
        settings,
        p,
    )
}

/// Truncated series at order `order` against
/// `Γ(ν+1)(kr/2)^{−ν}J_ν(kr)·P_m(x)`, pointwise.
pub fn bessel_closed_form_check(
    params: &ModelParams,
    base: &MultiPoly,
    k_squared: &ExactScalar,
    order: u32,
    points: &SampleSet,
    tolerance: f64,
) -> Result<ResidualReport> {
    let series = build_coherent_series(params, base, k_squared.clone(), order)?;
    let lhs = StateFn::from_series(&series, StateMode::PolynomialOnly, 0.0, tolerance);
    let nu = scalar_to_f64(&series.nu());
    let k = scalar_to_f64(k_squared).sqrt();
    let rhs = StateFn::closed_form(params, base, nu, k, StateMode::PolynomialOnly, 0.0);
    let mut pairs = Vec::with_capacity(points.points.len());
    for p in &points.points {
        pairs.push((lhs.eval(&p.coords)?, rhs.eval(&p.coords)?));
    }
    let errs = relative_errors(&pairs, 1.0);
    let with_points: Vec<(f64, Option<&[f64]>)> = errs
        .iter()
        .zip(&points.points)
        .map(|(&e, p)| (e, Some(p.coords.as_slice())))
        .collect();
    let mut params_map = series_params(&series);
    params_map.insert("nu".into(), series.nu().to_string());
    Ok(ResidualReport::new(
        "bessel_closed_form",
        params_map,
        points.points.len(),
        Some(points.seed),
        &with_points,
        tolerance,
    ))
}

/// Ratio of the Laguerre form to the direct series must be the same at every
/// point; the common `P_m(x)` factor cancels, so only radii matter.
/// Returns the report and the mean ratio.
pub fn laguerre_proportionality_check(
    params: &ModelParams,
    base: &MultiPoly,
    k_squared: &ExactScalar,
    order: u32,
    points: &SampleSet,
    tolerance: f64,
) -> Result<(ResidualReport, f64)> {
    let series = build_coherent_series(params, base, k_squared.clone(), order)?;
    let m = series.m();
    let lag = laguerre_series_coeffs(params, m, k_squared, order)?;
    let direct = RadialProfile::Series {
        coeffs: series.coefficients_f64(),
        next: scalar_to_f64(&series.next_coefficient()),
        guard: f64::INFINITY,
    };
    let mut ratios = Vec::with_capacity(points.points.len());
    for p in &points.points {
        let s = p.r_squared();
        ratios.push(lag.radial_value(s) / direct.eval(s)?);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len().max(1) as f64;
    let errs: Vec<(f64, Option<&[f64]>)> = ratios
        .iter()
        .zip(&points.points)
        .map(|(r, p)| ((r / mean - 1.0).abs(), Some(p.coords.as_slice())))
        .collect();
    let mut params_map = model_params_map(params);
    params_map.insert("m".into(), m.to_string());
    params_map.insert("k2".into(), k_squared.to_string());
    params_map.insert("order".into(), order.to_string());
    Ok((
        ResidualReport::new(
            "laguerre_proportionality",
            params_map,
            points.points.len(),
            Some(points.seed),
            &errs,
            tolerance,
        ),
        mean,
    ))
}

/// Laguerre–Bessel identity over the grid `alphas × xs × zs`.
pub fn laguerre_bessel_grid_check(
    alphas: &[f64],
    xs: &[f64],
    zs: &[f64],
    terms: usize,
    tolerance: f64,
) -> Result<ResidualReport> {
    let mut errs = Vec::new();
    for &a in alphas {
        for &x in xs {
            for &z in zs {
                errs.push((laguerre_bessel_identity_residual(a, x, z, terms)?, None));
            }
        }
    }
    let mut params = BTreeMap::new();
    params.insert("alpha".into(), format!("{alphas:?}"));
    params.insert("x".into(), format!("{xs:?}"));
    params.insert("z".into(), format!("{zs:?}"));
    params.insert("terms".into(), terms.to_string());
    Ok(ResidualReport::new(
        "laguerre_bessel_identity",
        params,
        errs.len(),
        None,
        &errs,
        tolerance,
    ))
}
