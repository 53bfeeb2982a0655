//! Coherent states `ψ = exp(−½k² T̃₋) P_m`: eigenstates of the raising
//! operator with eigenvalue `−k²/2`, built exactly on the radial tower.

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::exactcore::{integer, rational, scalar_to_f64, ExactScalar, MultiPoly};
use crate::numerics::special::gamma_real;
use crate::operators::{apply, ModelParams};
use crate::su11::{apply_ttilde_minus, RadialTower};

/// Truncated series `ψ_M = Σ_{n≤M} cₙ r²ⁿ P_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentSeries {
    tower: RadialTower,
    k_squared: ExactScalar,
    order: u32,
}

impl CoherentSeries {
    pub fn tower(&self) -> &RadialTower {
        &self.tower
    }

    pub fn params(&self) -> &ModelParams {
        self.tower.params()
    }

    pub fn base(&self) -> &MultiPoly {
        self.tower.base()
    }

    pub fn m(&self) -> u32 {
        self.tower.m()
    }

    pub fn k_squared(&self) -> &ExactScalar {
        &self.k_squared
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Negative `k²` is accepted for analytic continuation but is not a
    /// scattering state.
    pub fn is_analytic_continuation(&self) -> bool {
        self.k_squared.is_negative()
    }

    /// Bessel order `ν = E₀ − 1 + m`.
    pub fn nu(&self) -> ExactScalar {
        bessel_order(self.params(), self.m())
    }

    pub fn coefficient(&self, n: u32) -> ExactScalar {
        self.tower.coefficient(n)
    }

    /// `c₀..=c_M`, including zeros.
    pub fn coefficients(&self) -> Vec<ExactScalar> {
        (0..=self.order).map(|n| self.coefficient(n)).collect()
    }

    /// `ψ_order` for `order ≤ self.order`.
    pub fn truncate(&self, order: u32) -> CoherentSeries {
        let order = order.min(self.order);
        CoherentSeries {
            tower: self.tower.with_coefficients(
                self.tower
                    .coefficients()
                    .iter()
                    .filter(|(&n, _)| n <= order)
                    .map(|(&n, c)| (n, c.clone())),
            ),
            k_squared: self.k_squared.clone(),
            order,
        }
    }

    /// Copy with `cₙ` overwritten.
    pub fn with_coefficient(&self, n: u32, c: ExactScalar) -> CoherentSeries {
        let mut coeffs: Vec<(u32, ExactScalar)> = self
            .tower
            .coefficients()
            .iter()
            .filter(|(&k, _)| k != n)
            .map(|(&k, v)| (k, v.clone()))
            .collect();
        coeffs.push((n, c));
        CoherentSeries {
            tower: self.tower.with_coefficients(coeffs),
            k_squared: self.k_squared.clone(),
            order: self.order.max(n),
        }
    }

    pub fn materialize(&self) -> MultiPoly {
        self.tower.materialize()
    }

    /// Coefficients as `f64`, `c₀..=c_M`.
    pub fn coefficients_f64(&self) -> Vec<f64> {
        self.coefficients().iter().map(scalar_to_f64).collect()
    }

    /// `c_{M+1}` from the single-step rule, for truncation estimates.
    pub fn next_coefficient(&self) -> ExactScalar {
        let n = self.order + 1;
        let step = (-&self.k_squared * rational(1, 4))
            / (integer(n as i64) * (self.nu() + integer(n as i64)));
        self.coefficient(self.order) * step
    }
}

pub fn bessel_order(params: &ModelParams, m: u32) -> ExactScalar {
    params.ground_energy() - integer(1) + integer(m as i64)
}

/// Builds `ψ_M` by repeated exact application of `T̃₋`:
/// `cₙ = ((−k²/2)ⁿ/n!) · [r²ⁿ](T̃₋ⁿ P_m)`.
pub fn build_coherent_series(
    params: &ModelParams,
    base: &MultiPoly,
    k_squared: ExactScalar,
    order: u32,
) -> Result<CoherentSeries> {
    let mut state = RadialTower::unit(params, base.clone(), 0)?;
    let step = -&k_squared * rational(1, 2);
    let mut weight = integer(1);
    let mut coeffs = vec![(0, integer(1))];
    for n in 1..=order {
        state = apply_ttilde_minus(&state)?;
        weight = weight * &step / integer(n as i64);
        coeffs.push((n, &weight * state.coefficient(n)));
    }
    Ok(CoherentSeries {
        tower: state.with_coefficients(coeffs),
        k_squared,
        order,
    })
}

/// Residual of the truncated eigenvalue equation `T₊ψ_M + (k²/2) ψ_{M−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceResidual {
    pub total: MultiPoly,
    /// Component on `r²ⁿ P_m` for `n = 0..M` (index `n`).
    pub levels: Vec<MultiPoly>,
}

impl RecurrenceResidual {
    pub fn is_zero(&self) -> bool {
        self.total.is_zero()
    }

    pub fn nonzero_levels(&self) -> Vec<usize> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(n, _)| n)
            .collect()
    }
}

pub fn recurrence_residual(series: &CoherentSeries) -> Result<RecurrenceResidual> {
    let params = series.params();
    let n = params.n();
    let raised = apply(params, params.raising_tag(), &series.materialize())?;
    let previous = if series.order == 0 {
        MultiPoly::zero(n)
    } else {
        series.truncate(series.order - 1).materialize()
    };
    let total = &raised + &previous.scale(&(&series.k_squared * rational(1, 2)));
    let split = series.tower.extract(&total)?;
    let levels = (0..series.order.max(1))
        .map(|k| {
            split
                .with_coefficients([(k, split.coefficient(k))])
                .materialize()
        })
        .collect();
    Ok(RecurrenceResidual { total, levels })
}

/// Parameters of the closed form `Γ(ν+1) (kr/2)^{−ν} J_ν(kr) P_m(x)` that the
/// series converges to; `c₀ = 1` fixes the normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormParams {
    pub nu: ExactScalar,
    /// `Γ(ν + 1)`
    pub bessel_normalization: f64,
}

impl ClosedFormParams {
    /// Eigenvalue of the raising operator on the state.
    pub fn eigenvalue(&self, k_squared: &ExactScalar) -> ExactScalar {
        -k_squared * rational(1, 2)
    }
}

pub fn closed_form_params(params: &ModelParams, m: u32) -> Result<ClosedFormParams> {
    let nu = bessel_order(params, m);
    let bessel_normalization = gamma_real(scalar_to_f64(&nu) + 1.0)?;
    Ok(ClosedFormParams {
        nu,
        bessel_normalization,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaguerreTerm {
    pub n: u32,
    /// `(k²/2)ⁿ / Γ(ν + n + 1)`
    pub weight: f64,
    pub laguerre_order: ExactScalar,
}

/// `e^{−k²/4} Σ (k²/2)ⁿ/Γ(ν + n + 1) Lₙ^ν(r²/2) P_m(x)`, the form obtained by
/// applying `exp(−T₊)` to the series; proportional to the direct series.
#[derive(Clone, Debug, PartialEq)]
pub struct LaguerreSeries {
    pub prefactor: f64,
    pub terms: Vec<LaguerreTerm>,
}

pub fn laguerre_series_coeffs(
    params: &ModelParams,
    m: u32,
    k_squared: &ExactScalar,
    order: u32,
) -> Result<LaguerreSeries> {
    let nu = bessel_order(params, m);
    let nu_f = scalar_to_f64(&nu);
    let z = 0.5 * scalar_to_f64(k_squared);
    let mut weight = 1.0 / gamma_real(nu_f + 1.0)?;
    let mut terms = Vec::with_capacity(order as usize + 1);
    for n in 0..=order {
        if n > 0 {
            weight *= z / (nu_f + n as f64);
        }
        terms.push(LaguerreTerm {
            n,
            weight,
            laguerre_order: nu.clone(),
        });
    }
    Ok(LaguerreSeries {
        prefactor: (-0.5 * z).exp(),
        terms,
    })
}

impl LaguerreSeries {
    /// Radial factor at `r²`, excluding `P_m(x)`.
    pub fn radial_value(&self, r_squared: f64) -> f64 {
        let Some(first) = self.terms.first() else {
            return 0.0;
        };
        let nu = scalar_to_f64(&first.laguerre_order);
        let x = 0.5 * r_squared;
        self.prefactor
            * self
                .terms
                .iter()
                .map(|t| t.weight * crate::numerics::special::laguerre(t.n as usize, nu, x))
                .sum::<f64>()
    }
}

/// True when every `cₙ/cₙ₋₁` equals `(−k²/2)/(2n(ν + n))`.
pub fn ratio_law_holds(series: &CoherentSeries) -> bool {
    let nu = series.nu();
    (1..=series.order).all(|n| {
        let prev = series.coefficient(n - 1);
        let expected = if prev.is_zero() {
            ExactScalar::zero()
        } else {
            prev * (-series.k_squared() * rational(1, 2))
                / (integer(2 * n as i64) * (&nu + integer(n as i64)))
        };
        series.coefficient(n) == expected
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::parse_poly;

    fn an22() -> ModelParams {
        ModelParams::a_n(2, integer(2)).unwrap()
    }

    #[test]
    fn first_coefficients() {
        let s = build_coherent_series(&an22(), &MultiPoly::one(2), integer(1), 4).unwrap();
        assert_eq!(s.coefficient(0), integer(1));
        assert_eq!(s.coefficient(1), rational(-1, 12));
        assert_eq!(s.coefficient(2), rational(1, 384));
        assert_eq!(s.nu(), integer(2));
        assert!(ratio_law_holds(&s));
        assert_eq!(s.next_coefficient(), s.coefficient(4) * rational(-1, 4) / integer(5 * 7));
    }

    #[test]
    fn order_one_recurrence() {
        let s = build_coherent_series(&an22(), &MultiPoly::one(2), integer(1), 1).unwrap();
        assert_eq!(s.materialize(), parse_poly("1 - 1/12*x1^2 - 1/12*x2^2", 2).unwrap());
        assert!(recurrence_residual(&s).unwrap().is_zero());
    }

    #[test]
    fn corrupted_coefficient_shows_at_level_two() {
        let s = build_coherent_series(&an22(), &MultiPoly::one(2), integer(1), 5).unwrap();
        let bad = s.with_coefficient(3, s.coefficient(3) + integer(1));
        let r = recurrence_residual(&bad).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r.nonzero_levels(), vec![2, 3]);
    }

    #[test]
    fn zero_momentum_is_the_base() {
        let s = build_coherent_series(&an22(), &MultiPoly::one(2), integer(0), 6).unwrap();
        assert_eq!(s.materialize(), MultiPoly::one(2));
    }

    #[test]
    fn closed_form_orders() {
        assert_eq!(closed_form_params(&an22(), 0).unwrap().nu, integer(2));
        let p = ModelParams::a_n(3, integer(1)).unwrap();
        assert_eq!(closed_form_params(&p, 1).unwrap().nu, rational(9, 2));
        let free = ModelParams::a_n(1, integer(0)).unwrap();
        let c = closed_form_params(&free, 0).unwrap();
        assert_eq!(c.nu, rational(-1, 2));
        assert!((c.bessel_normalization - std::f64::consts::PI.sqrt()).abs() < 1e-14);
        assert_eq!(c.eigenvalue(&integer(3)), rational(-3, 2));
    }

    #[test]
    fn laguerre_weights() {
        let l = laguerre_series_coeffs(&an22(), 0, &integer(1), 3).unwrap();
        assert!((l.terms[0].weight - 0.5).abs() < 1e-14);
        assert!((l.terms[1].weight - 1.0 / 12.0).abs() < 1e-14);
        assert!(l.terms.iter().all(|t| t.laguerre_order == integer(2)));
        assert!((l.prefactor - (-0.25f64).exp()).abs() < 1e-15);
    }
}
