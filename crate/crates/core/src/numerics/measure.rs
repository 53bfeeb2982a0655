use crate::error::{Error, Result};
use crate::exactcore::scalar_to_f64;
use crate::operators::{ModelKind, ModelParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    /// `Z(x)`
    Jastrow,
    /// `Z(x)·exp(−r²/2)`
    JastrowGaussian,
}

/// Distance to the nearest singular hyperplane: `xᵢ = xⱼ` for A_N, and also
/// `xᵢ = −xⱼ` and `xᵢ = 0` for B_N. Infinite when there is none (A_N, N=1).
pub fn min_separation(kind: ModelKind, x: &[f64]) -> f64 {
    let mut sep = f64::INFINITY;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            sep = sep.min((x[i] - x[j]).abs());
            if kind == ModelKind::Bn {
                sep = sep.min((x[i] + x[j]).abs());
            }
        }
        if kind == ModelKind::Bn {
            sep = sep.min(x[i].abs());
        }
    }
    sep
}

pub(crate) fn check_proximity(kind: ModelKind, x: &[f64], delta: f64) -> Result<f64> {
    let separation = min_separation(kind, x);
    if separation < delta {
        return Err(Error::Proximity {
            point: x.to_vec(),
            separation,
            required: delta,
        });
    }
    Ok(separation)
}

/// `log Z(x)`, accumulated as a sum of logarithms.
pub fn log_jastrow(params: &ModelParams, x: &[f64]) -> f64 {
    let mut acc = 0.0;
    match params.kind() {
        ModelKind::An => {
            let alpha = params.alpha().map(scalar_to_f64).unwrap_or(0.0);
            for i in 0..x.len() {
                for j in i + 1..x.len() {
                    acc += alpha * (x[i] - x[j]).abs().ln();
                }
            }
        }
        ModelKind::Bn => {
            let lambda = params.lambda().map(scalar_to_f64).unwrap_or(0.0);
            let lambda1 = params.lambda1().map(scalar_to_f64).unwrap_or(0.0);
            for i in 0..x.len() {
                for j in i + 1..x.len() {
                    acc += lambda * ((x[i] - x[j]).abs().ln() + (x[i] + x[j]).abs().ln());
                }
                acc += lambda1 * x[i].abs().ln();
            }
        }
    }
    acc
}

/// `Z(x)` or `Z(x)·exp(−r²/2)`, failing within `δ` of a singular hyperplane.
pub fn eval_measure(params: &ModelParams, x: &[f64], measure: Measure, delta: f64) -> Result<f64> {
    if x.len() != params.n() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: params.n(),
        });
    }
    check_proximity(params.kind(), x, delta)?;
    let mut log = log_jastrow(params, x);
    if measure == Measure::JastrowGaussian {
        log -= 0.5 * x.iter().map(|v| v * v).sum::<f64>();
    }
    Ok(log.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::{integer, rational};

    #[test]
    fn direct_products() {
        let an = ModelParams::a_n(2, integer(2)).unwrap();
        assert!((eval_measure(&an, &[1.0, -1.0], Measure::Jastrow, 0.2).unwrap() - 4.0).abs() < 1e-13);
        let bn = ModelParams::b_n(2, integer(1), integer(1)).unwrap();
        assert!((eval_measure(&bn, &[2.0, 1.0], Measure::Jastrow, 0.2).unwrap() - 6.0).abs() < 1e-13);
    }

    #[test]
    fn gaussian_matches_direct_product() {
        let p = ModelParams::a_n(3, rational(7, 3)).unwrap();
        let x: [f64; 3] = [0.4, -0.1, -0.5];
        let direct = ((x[0] - x[1]) * (x[0] - x[2]) * (x[1] - x[2])).abs().powf(7.0 / 3.0)
            * (-0.5 * (0.16 + 0.01 + 0.25f64)).exp();
        let got = eval_measure(&p, &x, Measure::JastrowGaussian, 0.05).unwrap();
        assert!((got - direct).abs() <= 1e-13 * direct);
    }

    #[test]
    fn proximity_is_reported() {
        let p = ModelParams::a_n(2, integer(2)).unwrap();
        match eval_measure(&p, &[1.0, 0.9], Measure::Jastrow, 0.2) {
            Err(Error::Proximity { separation, .. }) => assert!((separation - 0.1).abs() < 1e-12),
            other => panic!("expected proximity error, got {other:?}"),
        }
        let b = ModelParams::b_n(2, integer(1), integer(1)).unwrap();
        assert!(eval_measure(&b, &[1.0, 0.1], Measure::Jastrow, 0.2).is_err());
        assert!(eval_measure(&b, &[1.0, -1.05], Measure::Jastrow, 0.2).is_err());
        assert!(eval_measure(&p, &[1.0], Measure::Jastrow, 0.2).is_err());
    }

    #[test]
    fn single_particle_has_no_singularity() {
        let p = ModelParams::a_n(1, integer(3)).unwrap();
        assert_eq!(min_separation(ModelKind::An, &[0.0]), f64::INFINITY);
        assert_eq!(eval_measure(&p, &[0.0], Measure::JastrowGaussian, 0.2).unwrap(), 1.0);
    }
}
