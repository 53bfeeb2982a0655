use crate::coherent::CoherentSeries;
use crate::error::{Error, Result};
use crate::exactcore::{scalar_to_f64, MultiPoly};
use crate::numerics::measure::{check_proximity, log_jastrow};
use crate::numerics::special::normalized_bessel;
use crate::operators::ModelParams;

/// Fraction of the check tolerance that the first omitted series term may
/// reach, relative to the partial sum.
pub const TRUNCATION_GUARD: f64 = 1e-3;

/// A polynomial with its coefficients rounded to `f64` once.
#[derive(Clone, Debug, PartialEq)]
pub struct CompiledPoly {
    num_vars: usize,
    terms: Vec<(Vec<i32>, f64)>,
}

impl CompiledPoly {
    pub fn new(p: &MultiPoly) -> Self {
        CompiledPoly {
            num_vars: p.num_vars(),
            terms: p
                .to_f64_terms()
                .into_iter()
                .map(|(e, c)| (e.into_iter().map(|k| k as i32).collect(), c))
                .collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(*c, |acc, (&k, &xi)| if k == 0 { acc } else { acc * xi.powi(k) })
            })
            .sum()
    }
}

/// Radial factor `f(r)` multiplying the base polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum RadialProfile {
    One,
    /// `Σ cₙ r²ⁿ`, refusing points where `|c_{M+1} r^{2M+2}|` exceeds
    /// `guard·|partial sum|`.
    Series {
        coeffs: Vec<f64>,
        next: f64,
        guard: f64,
    },
    /// `Γ(ν+1) (kr/2)^{−ν} J_ν(kr)`
    Bessel { nu: f64, k: f64 },
}

impl RadialProfile {
    pub fn eval(&self, r_squared: f64) -> Result<f64> {
        match self {
            RadialProfile::One => Ok(1.0),
            RadialProfile::Series {
                coeffs,
                next,
                guard,
            } => {
                let partial = coeffs.iter().rev().fold(0.0, |acc, c| acc * r_squared + c);
                let order = coeffs.len().saturating_sub(1);
                let omitted = (next * r_squared.powi(order as i32 + 1)).abs();
                if omitted > guard * partial.abs() {
                    return Err(Error::TruncationTooShort {
                        order,
                        r: r_squared.sqrt(),
                        omitted,
                        partial,
                    });
                }
                Ok(partial)
            }
            RadialProfile::Bessel { nu, k } => normalized_bessel(*nu, k * r_squared.sqrt()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateMode {
    PolynomialOnly,
    WithJastrow,
    WithJastrowGaussian,
}

/// Pointwise evaluator `x ↦ P(x)·f(r)·[Z(x)]·[exp(−r²/2)]`.
#[derive(Clone, Debug)]
pub struct StateFn {
    params: ModelParams,
    base: CompiledPoly,
    radial: RadialProfile,
    mode: StateMode,
    delta: f64,
}

impl StateFn {
    pub fn from_poly(params: &ModelParams, p: &MultiPoly, mode: StateMode, delta: f64) -> Self {
        StateFn {
            params: params.clone(),
            base: CompiledPoly::new(p),
            radial: RadialProfile::One,
            mode,
            delta,
        }
    }

    /// The truncated series; `tolerance` is the accuracy the caller will
    /// check against, which sets the truncation guard.
    pub fn from_series(series: &CoherentSeries, mode: StateMode, delta: f64, tolerance: f64) -> Self {
        StateFn {
            params: series.params().clone(),
            base: CompiledPoly::new(series.base()),
            radial: RadialProfile::Series {
                coeffs: series.coefficients_f64(),
                next: scalar_to_f64(&series.next_coefficient()),
                guard: TRUNCATION_GUARD * tolerance,
            },
            mode,
            delta,
        }
    }

    /// Closed form of order `ν` over `base`.
    pub fn closed_form(
        params: &ModelParams,
        base: &MultiPoly,
        nu: f64,
        k: f64,
        mode: StateMode,
        delta: f64,
    ) -> Self {
        StateFn {
            params: params.clone(),
            base: CompiledPoly::new(base),
            radial: RadialProfile::Bessel { nu, k },
            mode,
            delta,
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn radial(&self) -> &RadialProfile {
        &self.radial
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.base.num_vars() {
            return Err(Error::DimensionMismatch {
                left: x.len(),
                right: self.base.num_vars(),
            });
        }
        let r_squared: f64 = x.iter().map(|v| v * v).sum();
        let core = self.base.eval(x) * self.radial.eval(r_squared)?;
        let log_measure = match self.mode {
            StateMode::PolynomialOnly => return Ok(core),
            StateMode::WithJastrow => {
                check_proximity(self.params.kind(), x, self.delta)?;
                log_jastrow(&self.params, x)
            }
            StateMode::WithJastrowGaussian => {
                check_proximity(self.params.kind(), x, self.delta)?;
                log_jastrow(&self.params, x) - 0.5 * r_squared
            }
        };
        Ok(core * log_measure.exp())
    }
}

pub enum StateSource<'a> {
    Poly(&'a MultiPoly),
    Series(&'a CoherentSeries),
}

/// One-shot evaluation; series use a guard tolerance of `1e−10`.
pub fn eval_state(
    params: &ModelParams,
    source: StateSource<'_>,
    x: &[f64],
    mode: StateMode,
    delta: f64,
) -> Result<f64> {
    let f = match source {
        StateSource::Poly(p) => StateFn::from_poly(params, p, mode, delta),
        StateSource::Series(s) => StateFn::from_series(s, mode, delta, 1e-10),
    };
    f.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::build_coherent_series;
    use crate::exactcore::{integer, parse_poly, rational, ExactScalar};
    use crate::numerics::measure::{eval_measure, Measure};
    use num_traits::FromPrimitive;

    fn an22() -> ModelParams {
        ModelParams::a_n(2, integer(2)).unwrap()
    }

    #[test]
    fn constant_series_is_one() {
        let s = build_coherent_series(&an22(), &MultiPoly::one(2), integer(0), 0).unwrap();
        let f = StateFn::from_series(&s, StateMode::PolynomialOnly, 0.2, 1e-10);
        assert_eq!(f.eval(&[0.3, -7.0]).unwrap(), 1.0);
    }

    #[test]
    fn second_order_series_value() {
        let s = build_coherent_series(&an22(), &MultiPoly::one(2), integer(1), 2).unwrap();
        let f = StateFn::from_series(&s, StateMode::PolynomialOnly, 0.2, 1e3);
        let v = f.eval(&[1.0, 0.0]).unwrap();
        assert!((v - (1.0 - 1.0 / 12.0 + 1.0 / 384.0)).abs() < 1e-15);
        assert!((v - 0.919_270_833_333_333_3).abs() < 1e-15);
    }

    #[test]
    fn truncation_guard_demands_more_terms() {
        let s = build_coherent_series(&an22(), &MultiPoly::one(2), integer(1), 2).unwrap();
        let f = StateFn::from_series(&s, StateMode::PolynomialOnly, 0.2, 1e-10);
        assert!(matches!(f.eval(&[1.0, 0.0]), Err(Error::TruncationTooShort { order: 2, .. })));
    }

    #[test]
    fn measure_composes() {
        let p = parse_poly("x1^2 + 3*x1*x2 + x2^2", 2).unwrap();
        let x = [1.3, -0.4];
        let plain = eval_state(&an22(), StateSource::Poly(&p), &x, StateMode::PolynomialOnly, 0.2).unwrap();
        let z = eval_state(&an22(), StateSource::Poly(&p), &x, StateMode::WithJastrow, 0.2).unwrap();
        let zg = eval_state(&an22(), StateSource::Poly(&p), &x, StateMode::WithJastrowGaussian, 0.2).unwrap();
        assert_eq!(z, plain * eval_measure(&an22(), &x, Measure::Jastrow, 0.2).unwrap());
        let expected = plain * eval_measure(&an22(), &x, Measure::JastrowGaussian, 0.2).unwrap();
        assert!((zg - expected).abs() <= 1e-14 * expected.abs());
    }

    #[test]
    fn float_evaluation_matches_exact() {
        let p = parse_poly("1/3*x1^5 - 7/9*x1^2*x2^3 + 11/13*x2 - 2/7", 2).unwrap();
        let x = [0.8125, -1.4375];
        let exact: Vec<ExactScalar> = x.iter().map(|&v| ExactScalar::from_f64(v).unwrap()).collect();
        let want = scalar_to_f64(&p.eval_exact(&exact).unwrap());
        let got = CompiledPoly::new(&p).eval(&x);
        assert!((got - want).abs() <= 1e-13 * want.abs());
        let q = p.scale(&rational(3, 1));
        assert!((CompiledPoly::new(&q).eval(&x) - 3.0 * got).abs() <= 1e-13 * got.abs());
    }
}
