use calkit_core::coherent::{build_coherent_series, recurrence_residual};
use calkit_core::exactcore::{integer, parse_poly, rational, ExactScalar};
use calkit_core::kernels::kernel_basis;
use calkit_core::operators::{apply, exp_nilpotent, OperatorTag};
use calkit_core::su11::{apply_ttilde_minus, RadialTower};
use calkit_core::{ModelParams, MultiPoly, PairCoefficient};
use proptest::prelude::*;

fn rationals() -> impl Strategy<Value = ExactScalar> {
    (-7i64..=7, 1i64..=5).prop_map(|(p, q)| rational(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exp_nilpotent_inverts(c in rationals(), alpha in (1i64..=9).prop_map(|k| rational(k, 3))) {
        let params = ModelParams::a_n(3, alpha).unwrap();
        let p = parse_poly("m[4] - 2*m[2,1,1] + 3*m[3] + 1/2*m[1]^2", 3).unwrap();
        let there = exp_nilpotent(&params, &c, OperatorTag::Tplus, &p).unwrap();
        let back = exp_nilpotent(&params, &-c.clone(), OperatorTag::Tplus, &there).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn raising_on_tower_follows_closed_rule(n in 0u32..6, alpha in rationals()) {
        prop_assume!(alpha > integer(0));
        let params = ModelParams::a_n(2, alpha).unwrap();
        let p1 = kernel_basis(&params, 1).unwrap().basis.remove(0);
        let state = RadialTower::unit(&params, p1.clone(), n).unwrap();
        let raised = apply(&params, OperatorTag::Tplus, &state.materialize()).unwrap();
        // T₊(r²ⁿ P_m) = 2n(E₀ − 1 + m + n) r²ⁿ⁻² P_m
        let factor = integer(2 * n as i64)
            * (params.ground_energy() - integer(1) + integer(1) + integer(n as i64));
        let expected = if n == 0 {
            MultiPoly::zero(2)
        } else {
            RadialTower::unit(&params, p1, n - 1).unwrap().materialize().scale(&factor)
        };
        prop_assert_eq!(raised, expected);
    }
}

#[test]
fn coherent_series_is_linear_in_base() {
    let params = ModelParams::a_n(2, integer(2)).unwrap();
    let base = kernel_basis(&params, 2).unwrap().basis.remove(0);
    let one = build_coherent_series(&params, &base, integer(1), 8).unwrap();
    let two = build_coherent_series(&params, &base.scale(&integer(2)), integer(1), 8).unwrap();
    assert_eq!(two.materialize(), one.materialize().scale(&integer(2)));
}

#[test]
fn coherent_recurrence_on_larger_system() {
    let params = ModelParams::a_n(3, rational(1, 2)).unwrap();
    let s = build_coherent_series(&params, &MultiPoly::one(3), integer(4), 10).unwrap();
    assert!(recurrence_residual(&s).unwrap().is_zero());
}

#[test]
fn coefficients_match_gamma_ratio() {
    // cₙ = Γ(ν+1)(−k²/4)ⁿ / (n! Γ(ν+n+1)) = (−k²/4)ⁿ / (n! (ν+1)ₙ)
    let params = ModelParams::a_n(3, integer(1)).unwrap();
    let base = kernel_basis(&params, 1).unwrap().basis.remove(0);
    let k2 = rational(3, 2);
    let s = build_coherent_series(&params, &base, k2.clone(), 12).unwrap();
    let nu = s.nu();
    assert_eq!(nu, rational(9, 2));
    let mut expected = integer(1);
    for n in 0..=12u32 {
        assert_eq!(s.coefficient(n), expected, "n = {n}");
        let next = integer(n as i64 + 1);
        expected = expected * (-&k2 * rational(1, 4)) / (&next * (&nu + &next));
    }
}

#[test]
fn ttilde_moves_one_level() {
    let params = ModelParams::a_n(2, integer(2)).unwrap();
    let t = RadialTower::unit(&params, MultiPoly::one(2), 3).unwrap();
    let moved = apply_ttilde_minus(&t).unwrap();
    // 1/(2(m + E₀ + n)) with m = 0, E₀ = 3, n = 3
    assert_eq!(moved.coefficient(4), rational(1, 12));
    assert_eq!(moved.coefficients().len(), 1);
}

#[test]
fn bn_single_coefficient_breaks_the_radial_rule() {
    let doubled = ModelParams::b_n(2, integer(1), integer(1)).unwrap();
    let single = doubled.clone().with_pair_coefficient(PairCoefficient::Single);
    let r2 = MultiPoly::radius_squared(2);
    assert_eq!(apply(&doubled, OperatorTag::Kplus, &r2).unwrap(), MultiPoly::constant(2, integer(10)));
    assert_eq!(apply(&single, OperatorTag::Kplus, &r2).unwrap(), MultiPoly::constant(2, integer(8)));
}
