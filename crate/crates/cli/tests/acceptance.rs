//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use calkit_core::coherent::{build_coherent_series, recurrence_residual};
use calkit_core::exactcore::{integer, parse_poly, random_symmetric, rational, ExactScalar};
use calkit_core::kernels::{bn_kernel_basis, kernel_basis};
use calkit_core::numerics::checks::{
    bessel_closed_form_check, eigen_residual_bound, eigen_residual_scattering,
    laguerre_bessel_grid_check, laguerre_proportionality_check, scattering_closed_form_residual,
    CheckSettings,
};
use calkit_core::numerics::{sample_chamber, FDScheme, SampleSet, StepRule};
use calkit_core::operators::apply;
use calkit_core::su11::{
    casimir_apply, conjugate_ladder_residual, su11_relations, CasimirOrdering, RadialTower,
    SectorConstants,
};
use calkit_core::{ModelKind, ModelParams, MultiPoly, PairCoefficient, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;
const RANDOM_POLYS: usize = 25;
const RANDOM_MAX_DEGREE: u32 = 6;
const CLOSURE_BUDGET: Duration = Duration::from_secs(30);
const TOWER_LEVELS: u32 = 10;
const MAX_KERNEL_DEGREE: u32 = 3;
const RECURRENCE_MAX_ORDER: u32 = 20;
const BESSEL_ORDER: u32 = 60;
const MAX_KR: f64 = 5.0;
const IDENTITY_TERMS: usize = 40;
const SCATTER_ORDER: u32 = 30;
const POINTS: usize = 20;
const DELTA: f64 = 0.2;
const BOX: (f64, f64) = (0.5, 3.0);
const TOL_FD: f64 = 1e-6;
const TOL_SF: f64 = 1e-10;
const TOL_RATIO: f64 = 1e-8;
const TOL_IDENTITY: f64 = 1e-8;
const BN_MAX_KERNEL_DEGREE: u32 = 6;

type Verdict = (bool, String);

fn an(n: usize, alpha: ExactScalar) -> ModelParams {
    ModelParams::a_n(n, alpha).expect("valid A_N parameters")
}

fn bn(n: usize, lambda: ExactScalar, lambda1: ExactScalar) -> ModelParams {
    ModelParams::b_n(n, lambda, lambda1).expect("valid B_N parameters")
}

fn closure_grid() -> Vec<ModelParams> {
    let alphas = [rational(1, 2), integer(1), integer(2), rational(7, 3)];
    (2..=4)
        .flat_map(|n| alphas.iter().map(move |a| an(n, a.clone())))
        .collect()
}

fn bn_grid() -> Vec<ModelParams> {
    let couplings = [
        (integer(1), integer(1)),
        (rational(1, 2), rational(3, 2)),
        (integer(2), rational(1, 3)),
    ];
    (2..=3)
        .flat_map(|n| couplings.iter().map(move |(l, l1)| bn(n, l.clone(), l1.clone())))
        .collect()
}

fn random_polys(params: &ModelParams, salt: u64) -> Vec<MultiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ salt);
    let even = params.kind() == ModelKind::Bn;
    (0..RANDOM_POLYS)
        .map(|_| random_symmetric(&mut rng, params.n(), RANDOM_MAX_DEGREE, even))
        .collect()
}

fn closure_terms(params: &ModelParams, polys: &[MultiPoly]) -> Result<usize> {
    let mut terms = 0;
    for rel in su11_relations(params) {
        for p in polys {
            terms += rel.residual(params, p)?.len();
        }
    }
    Ok(terms)
}

fn settings() -> CheckSettings {
    CheckSettings {
        scheme: FDScheme::new(4, StepRule::Relative(1e-3)).unwrap(),
        delta: DELTA,
        tolerance: TOL_FD,
    }
}

fn chamber(params: &ModelParams, lo: f64, hi: f64) -> Result<SampleSet> {
    sample_chamber(params.kind(), params.n(), lo, hi, DELTA, POINTS, SEED)
}

/// `E₀ = N/2 + αN(N−1)/2` written out independently of the library.
fn ground_formula_an(n: usize, alpha: &ExactScalar) -> ExactScalar {
    let n = integer(n as i64);
    &n * rational(1, 2) + alpha * &n * (&n - integer(1)) * rational(1, 2)
}

fn ground_formula_bn(n: usize, lambda: &ExactScalar, lambda1: &ExactScalar) -> ExactScalar {
    let n = integer(n as i64);
    &n * (rational(1, 2) + (&n - integer(1)) * lambda + lambda1)
}

fn criterion_1() -> Result<Verdict> {
    let start = Instant::now();
    let mut terms = 0;
    let grid = closure_grid();
    for (i, params) in grid.iter().enumerate() {
        terms += closure_terms(params, &random_polys(params, i as u64))?;
    }
    let elapsed = start.elapsed();
    Ok((
        terms == 0 && elapsed < CLOSURE_BUDGET,
        format!(
            "{} parameter points x {RANDOM_POLYS} polys x 3 relations, residual terms {terms}, {:.1}s of {}s budget",
            grid.len(),
            elapsed.as_secs_f64(),
            CLOSURE_BUDGET.as_secs()
        ),
    ))
}

fn criterion_2() -> Result<Verdict> {
    let mut ordering_terms = 0;
    let mut tower_terms = 0;
    let mut towers = 0;
    for (i, params) in closure_grid().iter().enumerate() {
        for p in random_polys(params, i as u64) {
            let a = casimir_apply(params, &p, CasimirOrdering::MinusPlus)?;
            let b = casimir_apply(params, &p, CasimirOrdering::PlusMinus)?;
            ordering_terms += (&a - &b).len();
        }
        for m in 0..=MAX_KERNEL_DEGREE {
            let s = (integer(m as i64) + params.ground_energy()) * rational(1, 2);
            let value = &s * (integer(1) - &s);
            for base in kernel_basis(params, m)?.basis {
                for n in 0..=TOWER_LEVELS {
                    let q = RadialTower::unit(params, base.clone(), n)?.materialize();
                    let scaled = q.scale(&value);
                    for ordering in [CasimirOrdering::MinusPlus, CasimirOrdering::PlusMinus] {
                        tower_terms += (&casimir_apply(params, &q, ordering)? - &scaled).len();
                    }
                    towers += 1;
                }
            }
        }
    }
    Ok((
        ordering_terms == 0 && tower_terms == 0,
        format!("ordering residual terms {ordering_terms}; {towers} tower states, scalar residual terms {tower_terms}"),
    ))
}

fn criterion_3() -> Result<Verdict> {
    let mut ladder_terms = 0;
    let mut constant_mismatches = 0;
    let mut sectors = 0;
    for params in closure_grid() {
        for m in 0..=MAX_KERNEL_DEGREE {
            let basis = kernel_basis(&params, m)?.basis;
            let sc = SectorConstants::new(&params, m);
            let s = (integer(m as i64) + params.ground_energy()) * rational(1, 2);
            constant_mismatches += usize::from(sc.a != integer(1) - &s);
            for base in &basis {
                let measured = casimir_apply(&params, base, CasimirOrdering::MinusPlus)?;
                constant_mismatches += usize::from(measured != base.scale(&sc.casimir));
                let tower = RadialTower::unit(&params, base.clone(), 0)?;
                ladder_terms += conjugate_ladder_residual(&tower, TOWER_LEVELS)?
                    .iter()
                    .map(MultiPoly::len)
                    .sum::<usize>();
                sectors += 1;
            }
        }
    }
    Ok((
        ladder_terms == 0 && constant_mismatches == 0,
        format!("{sectors} sectors, n <= {TOWER_LEVELS}: ladder residual terms {ladder_terms}, constant mismatches {constant_mismatches}"),
    ))
}

fn criterion_4() -> Result<Verdict> {
    let grid = [an(2, integer(2)), an(3, rational(1, 2))];
    let ksq = [rational(1, 2), integer(1), integer(4)];
    let mut checked = 0;
    let mut nonzero = 0;
    for params in &grid {
        for m in 0..=2 {
            for base in kernel_basis(params, m)?.basis {
                for k2 in &ksq {
                    let full = build_coherent_series(params, &base, k2.clone(), RECURRENCE_MAX_ORDER)?;
                    for order in 0..=RECURRENCE_MAX_ORDER {
                        if !recurrence_residual(&full.truncate(order))?.is_zero() {
                            nonzero += 1;
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok((nonzero == 0, format!("{checked} truncated series, {nonzero} nonzero residuals")))
}

fn criterion_5() -> Result<Verdict> {
    let cases = [
        (an(2, integer(2)), 0),
        (an(2, integer(2)), 1),
        (an(2, integer(2)), 2),
        (an(3, rational(1, 2)), 0),
        (an(3, integer(1)), 1),
        (an(4, integer(1)), 2),
    ];
    let ksq = [rational(1, 2), integer(1), integer(4)];
    let mut worst_bessel: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    let mut max_nu = 0.0f64;
    let mut ok = true;
    for (params, m) in &cases {
        for k2 in &ksq {
            let k = calkit_core::exactcore::scalar_to_f64(k2).sqrt();
            // Keep kr ≤ 5 over the whole box.
            let hi = MAX_KR / (k * (params.n() as f64).sqrt());
            let points = chamber(params, 0.0, hi)?;
            for base in kernel_basis(params, *m)?.basis {
                let r = bessel_closed_form_check(params, &base, k2, BESSEL_ORDER, &points, TOL_SF)?;
                ok &= r.pass;
                worst_bessel = worst_bessel.max(r.max_relative_error);
                let (r, _) = laguerre_proportionality_check(params, &base, k2, BESSEL_ORDER, &points, TOL_RATIO)?;
                ok &= r.pass;
                worst_ratio = worst_ratio.max(r.max_relative_error);
            }
            let nu = calkit_core::exactcore::scalar_to_f64(
                &calkit_core::coherent::bessel_order(params, *m),
            );
            max_nu = max_nu.max(nu);
        }
    }
    ok &= max_nu <= 10.0;
    Ok((
        ok,
        format!("nu <= {max_nu}, kr <= {MAX_KR}: series vs Bessel max rel {worst_bessel:.2e} (tol {TOL_SF:e}); Laguerre ratio spread {worst_ratio:.2e} (tol {TOL_RATIO:e})"),
    ))
}

fn criterion_6() -> Result<Verdict> {
    let r = laguerre_bessel_grid_check(
        &[0.5, 2.0, 4.5],
        &[0.5, 1.0, 2.0],
        &[0.5, 1.0, 2.0],
        IDENTITY_TERMS,
        TOL_IDENTITY,
    )?;
    Ok((
        r.pass,
        format!("{} grid points, M = {IDENTITY_TERMS}, max residual {:.2e} (tol {TOL_IDENTITY:e})", r.points, r.max_relative_error),
    ))
}

fn criterion_7() -> Result<Verdict> {
    let cases = [(an(2, integer(2)), 0), (an(2, integer(2)), 1), (an(3, rational(1, 2)), 0)];
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut control_min = f64::INFINITY;
    for (params, m) in &cases {
        let points = chamber(params, BOX.0, BOX.1)?;
        let base = kernel_basis(params, *m)?.basis.remove(0);
        let series = build_coherent_series(params, &base, integer(1), SCATTER_ORDER)?;
        let r = eigen_residual_scattering(&series, &points, &settings())?;
        ok &= r.pass;
        worst = worst.max(r.max_relative_error);
        let control = scattering_closed_form_residual(params, &base, *m, &integer(1), 1.0, &points, &settings())?;
        ok &= !control.pass;
        control_min = control_min.min(control.max_relative_error);
    }
    Ok((
        ok,
        format!("{POINTS} points each, max rel {worst:.2e} (tol {TOL_FD:e}); nu+1 control residual >= {control_min:.2e}"),
    ))
}

fn criterion_8() -> Result<Verdict> {
    let grid = [an(2, integer(2)), an(3, rational(1, 2))];
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut ladder = Vec::new();
    for params in &grid {
        let n = params.n();
        let formula = ground_formula_an(n, params.alpha().unwrap());
        let raised = apply(params, params.raising_tag(), &MultiPoly::radius_squared(n))?;
        ok &= raised == MultiPoly::constant(n, &formula * integer(2));
        ok &= params.ground_energy() == formula;
        let points = chamber(params, BOX.0, BOX.1)?;
        for m in 0..=3 {
            let q = if m == 0 { MultiPoly::one(n) } else { MultiPoly::power_sum(n, m) };
            let r = eigen_residual_bound(params, &q, &points, &settings())?;
            ok &= r.pass;
            worst = worst.max(r.max_relative_error);
            ladder.push(r.params["eigenvalue"].clone());
        }
    }
    Ok((
        ok,
        format!("eigenvalues [{}], max rel {worst:.2e} (tol {TOL_FD:e}); exact E0 from T+(r^2)/2 matches formula", ladder.join(", ")),
    ))
}

fn criterion_9() -> Result<Verdict> {
    let mut ok = true;
    let mut closure = 0;
    let mut kernel_failures = 0;
    let mut kernel_dims = Vec::new();
    let mut worst: f64 = 0.0;
    for (i, params) in bn_grid().iter().enumerate() {
        closure += closure_terms(params, &random_polys(params, 100 + i as u64))?;
        for m in 0..=BN_MAX_KERNEL_DEGREE {
            let kb = bn_kernel_basis(params, m)?;
            kernel_failures += kb.verify()?.iter().filter(|ok| !**ok).count();
            kernel_failures += usize::from(kb.dimension() + kb.rank != kb.domain_dimension);
            if i == 0 {
                kernel_dims.push(kb.dimension().to_string());
            }
        }
        let formula = ground_formula_bn(params.n(), params.lambda().unwrap(), params.lambda1().unwrap());
        ok &= params.ground_energy() == formula;
        let r = eigen_residual_bound(params, &MultiPoly::one(params.n()), &chamber(params, BOX.0, BOX.1)?, &settings())?;
        ok &= r.pass && r.params["eigenvalue"] == calkit_core::exactcore::scalar_to_f64(&formula).to_string();
        worst = worst.max(r.max_relative_error);
    }
    let single = bn(2, integer(1), integer(1)).with_pair_coefficient(PairCoefficient::Single);
    let polys = random_polys(&single, 200);
    let rel = &su11_relations(&single)[0];
    let mut control = 0;
    for p in &polys {
        control += rel.residual(&single, p)?.len();
    }
    ok &= closure == 0 && kernel_failures == 0 && control > 0;
    Ok((
        ok,
        format!(
            "closure residual terms {closure}; Q_m dims m=0..{BN_MAX_KERNEL_DEGREE} at N=2 [{}], failures {kernel_failures}; eps0 max rel {worst:.2e}; single-coefficient {} residual terms {control}",
            kernel_dims.join(","),
            rel.name
        ),
    ))
}

fn criterion_10() -> Result<Verdict> {
    let params = an(2, integer(2));
    let mut dims = Vec::new();
    let mut ok = true;
    for m in 0..=2 {
        let kb = kernel_basis(&params, m)?;
        dims.push(kb.dimension());
        ok &= kb.verify()?.iter().all(|v| *v);
    }
    ok &= dims == [1, 1, 1];
    let target = parse_poly("m[2] - 3*m[1]^2", 2).expect("grammar");
    let element = kernel_basis(&params, 2)?.basis.remove(0);
    let lead = |p: &MultiPoly| p.leading_term().map(|(_, c)| c.clone()).unwrap();
    ok &= element.scale(&lead(&target)) == target.scale(&lead(&element));
    ok &= apply(&params, params.raising_tag(), &target)?.is_zero();
    Ok((ok, format!("dims {dims:?}, m=2 element {element}")))
}

fn criterion_11() -> Result<Verdict> {
    let bin = env!("CARGO_BIN_EXE_calkit");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env_remove("CALKIT_SEED")
            .output()
            .expect("calkit runs")
    };
    let mut ok = true;
    let mut sizes = Vec::new();
    for args in [
        &["scatter-verify", "--seed", "42"][..],
        &["bound-verify", "--model", "bn"][..],
        &["algebra-check", "--bn", "--n", "2"][..],
        &["coherent", "--ksq", "1/2,4"][..],
    ] {
        let a = run(args);
        let b = run(args);
        ok &= a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
        sizes.push(format!("{} {}B", args[0], a.stdout.len()));
    }
    Ok((ok, format!("two runs byte-identical: {}", sizes.join(", "))))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Result<Verdict>); 11] = [
        (1, "SU(1,1) closure", criterion_1),
        (2, "Casimir orderings and tower value", criterion_2),
        (3, "canonical conjugate", criterion_3),
        (4, "coherent recurrence", criterion_4),
        (5, "Bessel closed form and Laguerre form", criterion_5),
        (6, "Laguerre-Bessel identity", criterion_6),
        (7, "scattering eigenvalue", criterion_7),
        (8, "bound spectrum", criterion_8),
        (9, "B_N suite", criterion_9),
        (10, "kernel regression", criterion_10),
        (11, "determinism", criterion_11),
    ];
    let mut failed = 0;
    for (id, title, check) in criteria {
        let start = Instant::now();
        let (pass, detail) = match check() {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!(
            "{} criterion {id:>2} {title}: {detail} [{:.1}s]",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
