//! Exact application of the conjugated Calogero operators to polynomials.
//!
//! For the A_N model the generators are
//!
//! * `T₊ = ½ Σ ∂ᵢ² + α Σ_{i≠j} (xᵢ − xⱼ)⁻¹ ∂ᵢ`
//! * `T₀ = −½ (Σ xᵢ∂ᵢ + E₀)`
//! * `T₋ = ½ Σ xᵢ²`
//!
//! and for B_N the `K` generators carry the pair term over `xᵢ² − xⱼ²` and a
//! one-body `λ₁ Σ xᵢ⁻¹∂ᵢ` term. Singular terms are applied as exact divided
//! differences, so an input outside the operator's polynomial domain fails
//! with [`Error::NotDivisible`] instead of producing a truncated result.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactcore::{exact_divide, integer, rational, ExactScalar, MultiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    An,
    Bn,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::An => "A_N",
            ModelKind::Bn => "B_N",
        }
    }
}

/// Normalization of the B_N pair term in `K₊`.
///
/// `Doubled` is `2λ Σ_{i<j} (xᵢ∂ᵢ − xⱼ∂ⱼ)/(xᵢ² − xⱼ²)`, the form obtained by
/// conjugating with the B_N Jastrow factor and the one for which
/// `[K₊, K₋] = −2K₀` closes with `ε₀`. `Single` drops the factor 2 and exists
/// as a negative control.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairCoefficient {
    #[default]
    Doubled,
    Single,
}

impl fmt::Display for PairCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairCoefficient::Doubled => "doubled",
            PairCoefficient::Single => "single",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coupling {
    An {
        alpha: ExactScalar,
    },
    Bn {
        lambda: ExactScalar,
        lambda1: ExactScalar,
        pair: PairCoefficient,
    },
}

/// Particle number and couplings of one model instance.
///
/// Couplings are the exponents of the Jastrow factor; the inverse-square
/// strengths follow as `g² = α(α−1)` (A_N) or `g² = λ(λ−1)`,
/// `g₁² = λ₁(λ₁−1)` (B_N), which keeps every derived constant rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelParams {
    n: usize,
    coupling: Coupling,
}

impl ModelParams {
    pub fn a_n(n: usize, alpha: ExactScalar) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("particle number must be at least 1".into()));
        }
        Ok(ModelParams {
            n,
            coupling: Coupling::An { alpha },
        })
    }

    pub fn b_n(n: usize, lambda: ExactScalar, lambda1: ExactScalar) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("particle number must be at least 1".into()));
        }
        Ok(ModelParams {
            n,
            coupling: Coupling::Bn {
                lambda,
                lambda1,
                pair: PairCoefficient::Doubled,
            },
        })
    }

    /// Selects the B_N pair normalization; a no-op for A_N.
    pub fn with_pair_coefficient(mut self, convention: PairCoefficient) -> Self {
        if let Coupling::Bn { pair, .. } = &mut self.coupling {
            *pair = convention;
        }
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ModelKind {
        match self.coupling {
            Coupling::An { .. } => ModelKind::An,
            Coupling::Bn { .. } => ModelKind::Bn,
        }
    }

    pub fn alpha(&self) -> Option<&ExactScalar> {
        match &self.coupling {
            Coupling::An { alpha } => Some(alpha),
            Coupling::Bn { .. } => None,
        }
    }

    pub fn lambda(&self) -> Option<&ExactScalar> {
        match &self.coupling {
            Coupling::Bn { lambda, .. } => Some(lambda),
            Coupling::An { .. } => None,
        }
    }

    pub fn lambda1(&self) -> Option<&ExactScalar> {
        match &self.coupling {
            Coupling::Bn { lambda1, .. } => Some(lambda1),
            Coupling::An { .. } => None,
        }
    }

    pub fn pair_coefficient(&self) -> Option<PairCoefficient> {
        match &self.coupling {
            Coupling::Bn { pair, .. } => Some(*pair),
            Coupling::An { .. } => None,
        }
    }

    /// Pair coupling `g²`.
    pub fn g_squared(&self) -> ExactScalar {
        let c = match &self.coupling {
            Coupling::An { alpha } => alpha,
            Coupling::Bn { lambda, .. } => lambda,
        };
        c * (c - ExactScalar::one())
    }

    /// One-body coupling `g₁²` of the B_N model.
    pub fn g1_squared(&self) -> Option<ExactScalar> {
        self.lambda1().map(|l| l * (l - ExactScalar::one()))
    }

    /// `E₀ = N/2 + αN(N−1)/2` for A_N, `ε₀ = N(1/2 + (N−1)λ + λ₁)` for B_N.
    pub fn ground_energy(&self) -> ExactScalar {
        let n = integer(self.n as i64);
        match &self.coupling {
            Coupling::An { alpha } => {
                &n * rational(1, 2) + alpha * &n * (&n - ExactScalar::one()) * rational(1, 2)
            }
            Coupling::Bn {
                lambda, lambda1, ..
            } => &n * (rational(1, 2) + (&n - ExactScalar::one()) * lambda + lambda1),
        }
    }

    pub fn raising_tag(&self) -> OperatorTag {
        match self.kind() {
            ModelKind::An => OperatorTag::Tplus,
            ModelKind::Bn => OperatorTag::Kplus,
        }
    }

    pub fn weight_tag(&self) -> OperatorTag {
        match self.kind() {
            ModelKind::An => OperatorTag::Tzero,
            ModelKind::Bn => OperatorTag::Kzero,
        }
    }

    pub fn lowering_tag(&self) -> OperatorTag {
        match self.kind() {
            ModelKind::An => OperatorTag::Tminus,
            ModelKind::Bn => OperatorTag::Kminus,
        }
    }

    /// Compact human-readable label, e.g. `A_N(N=2, alpha=2)`.
    pub fn label(&self) -> String {
        match &self.coupling {
            Coupling::An { alpha } => format!("A_N(N={}, alpha={alpha})", self.n),
            Coupling::Bn {
                lambda,
                lambda1,
                pair,
            } => format!(
                "B_N(N={}, lambda={lambda}, lambda1={lambda1}, pair={pair})",
                self.n
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OperatorTag {
    Tplus,
    Tzero,
    Tminus,
    Kplus,
    Kzero,
    Kminus,
    Euler,
}

impl OperatorTag {
    pub fn name(self) -> &'static str {
        match self {
            OperatorTag::Tplus => "T+",
            OperatorTag::Tzero => "T0",
            OperatorTag::Tminus => "T-",
            OperatorTag::Kplus => "K+",
            OperatorTag::Kzero => "K0",
            OperatorTag::Kminus => "K-",
            OperatorTag::Euler => "E",
        }
    }
}

impl fmt::Display for OperatorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn require(params: &ModelParams, kind: ModelKind, op: OperatorTag) -> Result<()> {
    if params.kind() != kind {
        return Err(Error::ModelMismatch {
            op: op.name(),
            model: params.kind().name(),
        });
    }
    Ok(())
}

fn check_ring(params: &ModelParams, p: &MultiPoly) -> Result<()> {
    if p.num_vars() != params.n {
        return Err(Error::DimensionMismatch {
            left: params.n,
            right: p.num_vars(),
        });
    }
    Ok(())
}

fn coordinate(n: usize, i: usize) -> MultiPoly {
    MultiPoly::variable(n, i).expect("index below particle number")
}

/// `T₊ p`, with the pair sum folded into `α Σ_{i<j} (∂ᵢp − ∂ⱼp)/(xᵢ − xⱼ)`.
pub fn apply_tplus(params: &ModelParams, p: &MultiPoly) -> Result<MultiPoly> {
    require(params, ModelKind::An, OperatorTag::Tplus)?;
    check_ring(params, p)?;
    let n = params.n;
    let alpha = params.alpha().unwrap();
    let grads: Vec<MultiPoly> = (0..n).map(|i| p.diff(i)).collect::<Result<_>>()?;
    let mut pair = MultiPoly::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let divisor = &coordinate(n, i) - &coordinate(n, j);
            pair = &pair + &exact_divide(&(&grads[i] - &grads[j]), &divisor)?;
        }
    }
    Ok(&p.laplacian().scale(&rational(1, 2)) + &pair.scale(alpha))
}

/// `K₊ p` on polynomials that are symmetric and even in every variable.
pub fn apply_kplus(params: &ModelParams, p: &MultiPoly) -> Result<MultiPoly> {
    require(params, ModelKind::Bn, OperatorTag::Kplus)?;
    check_ring(params, p)?;
    let n = params.n;
    let lambda = params.lambda().unwrap();
    let lambda1 = params.lambda1().unwrap();
    let pair_factor = match params.pair_coefficient().unwrap() {
        PairCoefficient::Doubled => lambda * integer(2),
        PairCoefficient::Single => lambda.clone(),
    };
    let grads: Vec<MultiPoly> = (0..n).map(|i| p.diff(i)).collect::<Result<_>>()?;
    let radial: Vec<MultiPoly> = grads
        .iter()
        .enumerate()
        .map(|(i, g)| g.mul_var(i, 1))
        .collect::<Result<_>>()?;

    let mut pair = MultiPoly::zero(n);
    for i in 0..n {
        for j in i + 1..n {
            let divisor = &coordinate(n, i).pow(2) - &coordinate(n, j).pow(2);
            pair = &pair + &exact_divide(&(&radial[i] - &radial[j]), &divisor)?;
        }
    }
    let mut one_body = MultiPoly::zero(n);
    for (i, g) in grads.iter().enumerate() {
        one_body = &one_body + &exact_divide(g, &coordinate(n, i))?;
    }
    let out = &p.laplacian().scale(&rational(1, 2)) + &pair.scale(&pair_factor);
    Ok(&out + &one_body.scale(lambda1))
}

/// `−½ (Σ xᵢ∂ᵢ + e) p` for ground energy `e`.
fn weight(ground: &ExactScalar, p: &MultiPoly) -> MultiPoly {
    (&p.euler() + &p.scale(ground)).scale(&rational(-1, 2))
}

pub fn apply_t0(params: &ModelParams, p: &MultiPoly) -> Result<MultiPoly> {
    require(params, ModelKind::An, OperatorTag::Tzero)?;
    check_ring(params, p)?;
    Ok(weight(&params.ground_energy(), p))
}

pub fn apply_k0(params: &ModelParams, p: &MultiPoly) -> Result<MultiPoly> {
    require(params, ModelKind::Bn, OperatorTag::Kzero)?;
    check_ring(params, p)?;
    Ok(weight(&params.ground_energy(), p))
}

/// `T₋ p = (r²/2) p`. The same multiplication serves as `K₋`.
pub fn apply_tminus(p: &MultiPoly) -> MultiPoly {
    &MultiPoly::radius_squared(p.num_vars()).scale(&rational(1, 2)) * p
}

pub fn apply_kminus(p: &MultiPoly) -> MultiPoly {
    apply_tminus(p)
}

/// Applies the generator named by `tag`.
pub fn apply(params: &ModelParams, tag: OperatorTag, p: &MultiPoly) -> Result<MultiPoly> {
    match tag {
        OperatorTag::Tplus => apply_tplus(params, p),
        OperatorTag::Kplus => apply_kplus(params, p),
        OperatorTag::Tzero => apply_t0(params, p),
        OperatorTag::Kzero => apply_k0(params, p),
        OperatorTag::Tminus | OperatorTag::Kminus => {
            check_ring(params, p)?;
            Ok(apply_tminus(p))
        }
        OperatorTag::Euler => {
            check_ring(params, p)?;
            Ok(p.euler())
        }
    }
}

/// `exp(c·R) p = Σ_k c^k/k! R^k p` for a raising operator `R` (`T₊` or `K₊`).
///
/// `R` lowers the degree by two, so the sum stops after at most
/// `⌊deg p / 2⌋ + 1` nonzero terms.
pub fn exp_nilpotent(
    params: &ModelParams,
    c: &ExactScalar,
    raising: OperatorTag,
    p: &MultiPoly,
) -> Result<MultiPoly> {
    if !matches!(raising, OperatorTag::Tplus | OperatorTag::Kplus) {
        return Err(Error::InvalidParams(format!(
            "exp_nilpotent needs a raising operator, got {raising}"
        )));
    }
    let mut acc = p.clone();
    let mut term = p.clone();
    let mut k = 0i64;
    while !term.is_zero() && !c.is_zero() {
        k += 1;
        term = apply(params, raising, &term)?.scale(&(c / integer(k)));
        acc = &acc + &term;
    }
    Ok(acc)
}
