//! Real-argument special functions: Γ, Bessel `J_ν` of real order, and
//! generalized Laguerre polynomials.


use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use statrs::function::gamma::{gamma, ln_gamma};

use crate::error::{Error, Result};

pub const BESSEL_MIN_ORDER: f64 = -0.5;
pub const BESSEL_MAX_ORDER: f64 = 30.0;
pub const BESSEL_MAX_ARG: f64 = 50.0;

/// Loss of significance (largest term over the sum) beyond which the
/// ascending series is re-summed in exact arithmetic.
const CANCELLATION_LIMIT: f64 = 1e4;
const SERIES_CUTOFF: f64 = 1e-17;

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `Γ(x)` for real `x` away from the poles `0, −1, −2, …`.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !x.is_finite() || is_pole(x) {
        return Err(Error::Domain {
            function: "gamma",
            detail: format!("pole or non-finite argument {x}"),
        });
    }
    Ok(gamma(x))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "ln_gamma",
            detail: format!("argument {x} is not positive"),
        });
    }
    Ok(ln_gamma(x))
}

/// Sum `Σ (−y)ⁿ / (n! (ν+1)ₙ)` of the normalized ascending series.
fn reduced_series_f64(nu: f64, y: f64) -> (f64, f64) {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut largest = 1.0f64;
    let mut n = 0.0f64;
    loop {
        n += 1.0;
        term *= -y / (n * (nu + n));
        sum += term;
        largest = largest.max(term.abs());
        let decreasing = n * (nu + n) > y;
        if decreasing && term.abs() <= SERIES_CUTOFF * sum.abs() {
            break;
        }
        if term == 0.0 {
            break;
        }
    }
    (sum, largest)
}

fn reduced_series_exact(nu: f64, half_x: f64) -> f64 {
    let half_x = BigRational::from_float(half_x).expect("finite argument");
    let y = &half_x * &half_x;
    let nu = BigRational::from_float(nu).expect("finite order");
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let mut n = BigRational::zero();
    let y_f = y.to_f64().unwrap_or(f64::INFINITY);
    let nu_f = nu.to_f64().unwrap();
    let mut k = 0.0f64;
    loop {
        n += BigRational::one();
        k += 1.0;
        term = term * -&y / (&n * (&nu + &n));
        sum += &term;
        let decreasing = k * (nu_f + k) > y_f;
        if decreasing {
            let t = term.abs().to_f64().unwrap_or(0.0);
            let s = sum.abs().to_f64().unwrap_or(0.0);
            if t <= 1e-20 * s || t == 0.0 {
                break;
            }
        }
    }
    sum.to_f64().unwrap_or(0.0)
}

/// Bessel function of the first kind `J_ν(x) = Σ (−1)ⁿ (x/2)^{2n+ν} / (n! Γ(ν+n+1))`
/// for real `ν ∈ [−1/2, 30]` and `x ∈ [0, 50]`.
///
/// The ascending series is summed in `f64`; where the terms cancel by more
/// than four orders of magnitude it is summed again exactly over the
/// rationals (the `f64` inputs are exact rationals) and rounded once.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    if !(BESSEL_MIN_ORDER..=BESSEL_MAX_ORDER).contains(&nu) || nu.is_nan() {
        return Err(Error::Domain {
            function: "bessel_j",
            detail: format!("order {nu} outside [{BESSEL_MIN_ORDER}, {BESSEL_MAX_ORDER}]"),
        });
    }
    if !(0.0..=BESSEL_MAX_ARG).contains(&x) || x.is_nan() {
        return Err(Error::Domain {
            function: "bessel_j",
            detail: format!("argument {x} outside [0, {BESSEL_MAX_ARG}]"),
        });
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::Domain {
                function: "bessel_j",
                detail: format!("J_{nu}(0) is unbounded"),
            })
        };
    }
    let half = 0.5 * x;
    let (mut sum, largest) = reduced_series_f64(nu, half * half);
    if largest > CANCELLATION_LIMIT * sum.abs() {
        sum = reduced_series_exact(nu, half);
    }
    let prefactor = (nu * half.ln() - ln_gamma_real(nu + 1.0)?).exp();
    Ok(prefactor * sum)
}

/// Generalized Laguerre polynomial `Lₙ^α(x)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k + 1 + α − x) L_k − (k + α) L_{k−1}`.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Relative gap between `J_α(2√(xz)) e^z (xz)^{−α/2}` and the Laguerre
/// partial sum `Σ_{n≤M} zⁿ Lₙ^α(x) / Γ(n + α + 1)`.
pub fn laguerre_bessel_identity_residual(alpha: f64, x: f64, z: f64, terms: usize) -> Result<f64> {
    if x < 0.0 || z < 0.0 {
        return Err(Error::Domain {
            function: "laguerre_bessel_identity",
            detail: format!("x = {x}, z = {z} must be non-negative"),
        });
    }
    let xz = x * z;
    let lhs = if xz == 0.0 {
        z.exp() / gamma_real(alpha + 1.0)?
    } else {
        bessel_j(alpha, 2.0 * xz.sqrt())? * z.exp() * xz.powf(-0.5 * alpha)
    };
    let mut weight = 1.0 / gamma_real(alpha + 1.0)?;
    let mut rhs = 0.0;
    for n in 0..=terms {
        if n > 0 {
            weight *= z / (n as f64 + alpha);
        }
        rhs += weight * laguerre(n, alpha, x);
    }
    Ok((lhs - rhs).abs() / lhs.abs())
}

/// `Γ(ν + 1) (x/2)^{−ν} J_ν(x)`, the radial profile of the closed-form
/// scattering state; equals 1 at `x = 0`.
pub fn normalized_bessel(nu: f64, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(1.0);
    }
    let j = bessel_j(nu, x)?;
    Ok(j * (ln_gamma_real(nu + 1.0)? - nu * (0.5 * x).ln()).exp())
}

#[cfg(test)]
pub(crate) fn factorial(n: u32) -> f64 {
    use num_bigint::BigInt;
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
        .to_f64()
        .unwrap()
}
