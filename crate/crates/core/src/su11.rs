//! SU(1,1) layer: commutator residuals, the quadratic Casimir, and the
//! canonical conjugate `T̃₋ = T₋ F(T₀)` acting on radial towers
//! `Σ cₙ r²ⁿ P_m`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactcore::{exact_divide, integer, rational, ExactScalar, MultiPoly};
use crate::operators::{apply, ModelKind, ModelParams, OperatorTag};

/// A signed combination `Σ cᵢ Oᵢ` of generators.
pub type Combination = Vec<(ExactScalar, OperatorTag)>;

/// `[A, B] p = A(B p) − B(A p)`.
pub fn commutator(
    params: &ModelParams,
    a: OperatorTag,
    b: OperatorTag,
    p: &MultiPoly,
) -> Result<MultiPoly> {
    let ab = apply(params, a, &apply(params, b, p)?)?;
    let ba = apply(params, b, &apply(params, a, p)?)?;
    Ok(&ab - &ba)
}

/// `([A, B] − expected) p`; the zero polynomial iff the relation holds on `p`.
pub fn commutator_residual(
    params: &ModelParams,
    a: OperatorTag,
    b: OperatorTag,
    expected: &[(ExactScalar, OperatorTag)],
    p: &MultiPoly,
) -> Result<MultiPoly> {
    let mut r = commutator(params, a, b, p)?;
    for (c, op) in expected {
        r = &r - &apply(params, *op, p)?.scale(c);
    }
    Ok(r)
}

/// One defining relation `[a, b] = expected`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub a: OperatorTag,
    pub b: OperatorTag,
    pub expected: Combination,
}

impl Relation {
    pub fn residual(&self, params: &ModelParams, p: &MultiPoly) -> Result<MultiPoly> {
        commutator_residual(params, self.a, self.b, &self.expected, p)
    }
}

/// `[R, L] = −2W`, `[W, R] = R`, `[W, L] = −L` for the model's raising,
/// weight and lowering generators.
pub fn su11_relations(params: &ModelParams) -> Vec<Relation> {
    let (r, w, l) = (params.raising_tag(), params.weight_tag(), params.lowering_tag());
    vec![
        Relation {
            name: format!("[{r},{l}]=-2{w}"),
            a: r,
            b: l,
            expected: vec![(integer(-2), w)],
        },
        Relation {
            name: format!("[{w},{r}]={r}"),
            a: w,
            b: r,
            expected: vec![(integer(1), r)],
        },
        Relation {
            name: format!("[{w},{l}]=-{l}"),
            a: w,
            b: l,
            expected: vec![(integer(-1), l)],
        },
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CasimirOrdering {
    /// `T₋T₊ − T₀(T₀ + 1)`
    MinusPlus,
    /// `T₊T₋ − T₀(T₀ − 1)`
    PlusMinus,
}

pub fn casimir_apply(
    params: &ModelParams,
    p: &MultiPoly,
    ordering: CasimirOrdering,
) -> Result<MultiPoly> {
    let (r, w, l) = (params.raising_tag(), params.weight_tag(), params.lowering_tag());
    let wp = apply(params, w, p)?;
    match ordering {
        CasimirOrdering::MinusPlus => {
            let lr = apply(params, l, &apply(params, r, p)?)?;
            let ww = apply(params, w, &(&wp + p))?;
            Ok(&lr - &ww)
        }
        CasimirOrdering::PlusMinus => {
            let rl = apply(params, r, &apply(params, l, p)?)?;
            let ww = apply(params, w, &(&wp - p))?;
            Ok(&rl - &ww)
        }
    }
}

/// Per-sector constants of the canonical-conjugate ansatz
/// `F(T₀) = (−T₀ + a)/(Ĉ + T₀(T₀ − 1))` on the tower over a degree-`m`
/// kernel polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorConstants {
    pub m: u32,
    pub ground: ExactScalar,
    /// `a = 1 − (E₀ + m)/2`
    pub a: ExactScalar,
    /// `Ĉ = ½(m + E₀)(1 − (m + E₀)/2)`
    pub casimir: ExactScalar,
}

impl SectorConstants {
    pub fn new(params: &ModelParams, m: u32) -> Self {
        let ground = params.ground_energy();
        let s = (integer(m as i64) + &ground) * rational(1, 2);
        SectorConstants {
            m,
            a: ExactScalar::one() - &s,
            casimir: &s * (ExactScalar::one() - &s),
            ground,
        }
    }

    /// Replaces `a`; used to show that only the sector value gives `[T₊, T̃₋] = 1`.
    pub fn with_a(mut self, a: ExactScalar) -> Self {
        self.a = a;
        self
    }

    /// Eigenvalue of `T₀` on `r²ⁿ P_m`: `−(m + 2n + E₀)/2`.
    pub fn weight_at(&self, n: u32) -> ExactScalar {
        -(integer(self.m as i64 + 2 * n as i64) + &self.ground) * rational(1, 2)
    }

    /// `F` evaluated on the `T₀` eigenvalue of level `n`.
    pub fn f_value(&self, n: u32) -> Result<ExactScalar> {
        self.f_at(&self.weight_at(n))
    }

    fn f_at(&self, t: &ExactScalar) -> Result<ExactScalar> {
        let denom = &self.casimir + t * (t - ExactScalar::one());
        if denom.is_zero() {
            return Err(Error::SingularRepresentation(format!(
                "Ĉ + T₀(T₀−1) vanishes at T₀ = {t} (m = {}, ground energy {})",
                self.m, self.ground
            )));
        }
        Ok((&self.a - t) / denom)
    }

    /// Residual of `F(T₀){Ĉ + T₀(T₀−1)} − F(T₀+1){Ĉ + T₀(T₀+1)} − 1` on level
    /// `n`. At `n = 0` the second term multiplies `T₋T₊P_m = 0` and is dropped.
    pub fn defining_relation_residual(&self, n: u32) -> Result<ExactScalar> {
        let t = self.weight_at(n);
        let one = ExactScalar::one();
        let first = self.f_at(&t)? * (&self.casimir + &t * (&t - &one));
        let second = if n == 0 {
            ExactScalar::zero()
        } else {
            let up = &t + &one;
            self.f_at(&up)? * (&self.casimir + &t * &up)
        };
        Ok(first - second - one)
    }
}

/// A state `Σₙ cₙ r²ⁿ P_m` over a fixed kernel polynomial `P_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialTower {
    params: ModelParams,
    m: u32,
    base: MultiPoly,
    coeffs: BTreeMap<u32, ExactScalar>,
}

impl RadialTower {
    /// Validates that `base` is a nonzero homogeneous symmetric polynomial
    /// annihilated by the model's raising operator (and even, for B_N).
    pub fn new(
        params: &ModelParams,
        base: MultiPoly,
        coeffs: impl IntoIterator<Item = (u32, ExactScalar)>,
    ) -> Result<Self> {
        if base.num_vars() != params.n() {
            return Err(Error::DimensionMismatch {
                left: params.n(),
                right: base.num_vars(),
            });
        }
        let Some(m) = base.degree() else {
            return Err(Error::InvalidTower("base polynomial is zero".into()));
        };
        if !base.is_homogeneous() {
            return Err(Error::InvalidTower(format!("base {base} is not homogeneous")));
        }
        if !base.is_symmetric() {
            return Err(Error::InvalidTower(format!("base {base} is not symmetric")));
        }
        if params.kind() == ModelKind::Bn && !base.is_even() {
            return Err(Error::InvalidTower(format!(
                "base {base} is not even in every variable"
            )));
        }
        let raised = apply(params, params.raising_tag(), &base)?;
        if !raised.is_zero() {
            return Err(Error::InvalidTower(format!(
                "base {base} is not annihilated by {}",
                params.raising_tag()
            )));
        }
        Ok(RadialTower {
            params: params.clone(),
            m,
            base,
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// `r²ⁿ P_m` with unit coefficient.
    pub fn unit(params: &ModelParams, base: MultiPoly, n: u32) -> Result<Self> {
        Self::new(params, base, [(n, ExactScalar::one())])
    }

    /// Same base, new coefficients; skips revalidating the base.
    pub fn with_coefficients(&self, coeffs: impl IntoIterator<Item = (u32, ExactScalar)>) -> Self {
        RadialTower {
            params: self.params.clone(),
            m: self.m,
            base: self.base.clone(),
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn base(&self) -> &MultiPoly {
        &self.base
    }

    pub fn coefficient(&self, n: u32) -> ExactScalar {
        self.coeffs.get(&n).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<u32, ExactScalar> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constants(&self) -> SectorConstants {
        SectorConstants::new(&self.params, self.m)
    }

    /// Expands to an explicit polynomial.
    pub fn materialize(&self) -> MultiPoly {
        let n = self.params.n();
        let r2 = MultiPoly::radius_squared(n);
        let mut radial = MultiPoly::zero(n);
        let mut power = MultiPoly::one(n);
        let mut level = 0;
        for (&k, c) in &self.coeffs {
            while level < k {
                power = &power * &r2;
                level += 1;
            }
            radial = &radial + &power.scale(c);
        }
        &radial * &self.base
    }

    /// Recovers the tower coefficients of `poly`, failing if it is not of
    /// the form `Σ cₙ r²ⁿ base`.
    pub fn extract(&self, poly: &MultiPoly) -> Result<Self> {
        let radial = exact_divide(poly, &self.base)
            .map_err(|_| Error::InvalidTower(format!("{poly} is not a multiple of {}", self.base)))?;
        let n = self.params.n();
        let r2 = MultiPoly::radius_squared(n);
        let mut coeffs = BTreeMap::new();
        let mut power = MultiPoly::one(n);
        let top = radial.degree().unwrap_or(0);
        if top % 2 == 1 && !radial.is_zero() {
            return Err(Error::InvalidTower(format!("{poly} has odd radial degree")));
        }
        let mut reconstructed = MultiPoly::zero(n);
        for level in 0..=top / 2 {
            if level > 0 {
                power = &power * &r2;
            }
            let mut lead = vec![0; n];
            lead[0] = 2 * level;
            let c = radial.coefficient(&lead);
            if !c.is_zero() {
                reconstructed = &reconstructed + &power.scale(&c);
                coeffs.insert(level, c);
            }
        }
        if reconstructed != radial {
            return Err(Error::InvalidTower(format!(
                "{poly} is not a polynomial in r² times {}",
                self.base
            )));
        }
        Ok(self.with_coefficients(coeffs))
    }

    /// Applies the raising operator to the materialized state and re-extracts.
    pub fn raise_exact(&self) -> Result<Self> {
        let raised = apply(&self.params, self.params.raising_tag(), &self.materialize())?;
        self.extract(&raised)
    }
}

/// `F(T₀)` with the sector constants of the tower: level `n` scales by
/// `1/(m + E₀ + n)`.
pub fn apply_f(t: &RadialTower) -> Result<RadialTower> {
    apply_f_with(t, &t.constants())
}

pub fn apply_f_with(t: &RadialTower, constants: &SectorConstants) -> Result<RadialTower> {
    let coeffs = t
        .coeffs
        .iter()
        .map(|(&n, c)| Ok((n, c * constants.f_value(n)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(t.with_coefficients(coeffs))
}

/// `T̃₋ = T₋ F(T₀)`: level `n` moves to level `n + 1` scaled by
/// `1/(2(m + E₀ + n))`.
pub fn apply_ttilde_minus(t: &RadialTower) -> Result<RadialTower> {
    apply_ttilde_minus_with(t, &t.constants())
}

pub fn apply_ttilde_minus_with(
    t: &RadialTower,
    constants: &SectorConstants,
) -> Result<RadialTower> {
    let f = apply_f_with(t, constants)?;
    let half = rational(1, 2);
    Ok(t.with_coefficients(f.coeffs.iter().map(|(&n, c)| (n + 1, c * &half))))
}

/// `(T₊T̃₋ − T̃₋T₊ − 1)(r²ⁿ P_m)` for `n = 0..=n_max`, with the raising
/// operator applied exactly to materialized polynomials.
pub fn conjugate_ladder_residual(t: &RadialTower, n_max: u32) -> Result<Vec<MultiPoly>> {
    conjugate_ladder_residual_with(t, n_max, &t.constants())
}

pub fn conjugate_ladder_residual_with(
    t: &RadialTower,
    n_max: u32,
    constants: &SectorConstants,
) -> Result<Vec<MultiPoly>> {
    (0..=n_max)
        .map(|n| {
            let state = t.with_coefficients([(n, ExactScalar::one())]);
            let forward = apply_ttilde_minus_with(&state, constants)?.raise_exact()?;
            let backward = apply_ttilde_minus_with(&state.raise_exact()?, constants)?;
            let lhs = &forward.materialize() - &backward.materialize();
            Ok(&lhs - &state.materialize())
        })
        .collect()
}
