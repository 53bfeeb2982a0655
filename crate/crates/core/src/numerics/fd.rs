use crate::error::{Error, Result};
use crate::exactcore::scalar_to_f64;
use crate::numerics::measure::min_separation;
use crate::operators::{ModelKind, ModelParams};

/// Default step relative to the local separation.
pub const DEFAULT_RELATIVE_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepRule {
    /// `h = factor × (distance to the nearest singular hyperplane)`
    Relative(f64),
    Absolute(f64),
}

/// Central second-difference stencil of order 2 or 4.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FDScheme {
    order: u8,
    step: StepRule,
}

const WEIGHTS_2: [f64; 3] = [1.0, -2.0, 1.0];
const WEIGHTS_4: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];

impl FDScheme {
    pub fn new(order: u8, step: StepRule) -> Result<Self> {
        if order != 2 && order != 4 {
            return Err(Error::Configuration(format!("FD order must be 2 or 4, got {order}")));
        }
        let value = match step {
            StepRule::Relative(v) | StepRule::Absolute(v) => v,
        };
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::Configuration(format!("FD step must be positive, got {value}")));
        }
        Ok(FDScheme { order, step })
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn step(&self) -> StepRule {
        self.step
    }

    pub fn weights(&self) -> &'static [f64] {
        if self.order == 2 {
            &WEIGHTS_2
        } else {
            &WEIGHTS_4
        }
    }

    /// Furthest stencil offset, in units of `h`.
    pub fn half_width(&self) -> usize {
        self.weights().len() / 2
    }

    pub fn step_at(&self, separation: f64) -> f64 {
        match self.step {
            StepRule::Relative(c) => c * separation,
            StepRule::Absolute(h) => h,
        }
    }
}

impl Default for FDScheme {
    fn default() -> Self {
        FDScheme {
            order: 4,
            step: StepRule::Relative(DEFAULT_RELATIVE_STEP),
        }
    }
}

/// `Σᵢ ∂ᵢ² f(x)` with step `h`; `f(x)` itself is evaluated once.
pub fn fd_laplacian<F>(f: &F, x: &[f64], h: f64, scheme: &FDScheme) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64> + ?Sized,
{
    let w = scheme.weights();
    let half = scheme.half_width();
    let centre = f(x)?;
    let mut y = x.to_vec();
    let mut acc = 0.0;
    for i in 0..x.len() {
        let mut d = w[half] * centre;
        for (k, wk) in w.iter().enumerate() {
            if k == half {
                continue;
            }
            y[i] = x[i] + (k as f64 - half as f64) * h;
            d += wk * f(&y)?;
        }
        y[i] = x[i];
        acc += d;
    }
    Ok(acc / (h * h))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hamiltonian {
    /// Harmonic confinement plus `g²/(xᵢ−xⱼ)²` pairs.
    Csm,
    /// Pairs only.
    Cmm,
    /// B_N pairs `g²[(xᵢ−xⱼ)⁻² + (xᵢ+xⱼ)⁻²]`, one-body `g₁²/(2xᵢ²)` and the
    /// harmonic term.
    BnFull,
    /// B_N terms without the harmonic term.
    BnScatter,
}

impl Hamiltonian {
    pub fn name(self) -> &'static str {
        match self {
            Hamiltonian::Csm => "H_CSM",
            Hamiltonian::Cmm => "H_CMM",
            Hamiltonian::BnFull => "H_BN",
            Hamiltonian::BnScatter => "H_BN_scatter",
        }
    }

    pub fn kind(self) -> ModelKind {
        match self {
            Hamiltonian::Csm | Hamiltonian::Cmm => ModelKind::An,
            Hamiltonian::BnFull | Hamiltonian::BnScatter => ModelKind::Bn,
        }
    }

    pub fn is_confined(self) -> bool {
        matches!(self, Hamiltonian::Csm | Hamiltonian::BnFull)
    }

    pub fn scattering(kind: ModelKind) -> Self {
        match kind {
            ModelKind::An => Hamiltonian::Cmm,
            ModelKind::Bn => Hamiltonian::BnScatter,
        }
    }

    pub fn confined(kind: ModelKind) -> Self {
        match kind {
            ModelKind::An => Hamiltonian::Csm,
            ModelKind::Bn => Hamiltonian::BnFull,
        }
    }
}

/// Potential energy at `x`.
pub fn potential(ham: Hamiltonian, params: &ModelParams, x: &[f64]) -> f64 {
    let g2 = scalar_to_f64(&params.g_squared());
    let mut v = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            v += g2 / (x[i] - x[j]).powi(2);
            if ham.kind() == ModelKind::Bn {
                v += g2 / (x[i] + x[j]).powi(2);
            }
        }
    }
    if ham.kind() == ModelKind::Bn {
        let g1 = params.g1_squared().map(|g| scalar_to_f64(&g)).unwrap_or(0.0);
        v += 0.5 * g1 * x.iter().map(|xi| xi.powi(-2)).sum::<f64>();
    }
    if ham.is_confined() {
        v += 0.5 * x.iter().map(|xi| xi * xi).sum::<f64>();
    }
    v
}

/// `(Hf)(x) = −½Δf(x) + V(x)f(x)` with a central-difference Laplacian.
///
/// The point must sit at least `δ` plus the stencil reach away from every
/// singular hyperplane, so no stencil node comes closer than `δ`.
pub fn fd_apply_hamiltonian<F>(
    ham: Hamiltonian,
    params: &ModelParams,
    f: &F,
    x: &[f64],
    scheme: &FDScheme,
    delta: f64,
) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64> + ?Sized,
{
    if params.kind() != ham.kind() {
        return Err(Error::ModelMismatch {
            op: ham.name(),
            model: params.kind().name(),
        });
    }
    if x.len() != params.n() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: params.n(),
        });
    }
    let separation = min_separation(ham.kind(), x);
    if separation < delta {
        return Err(Error::Proximity {
            point: x.to_vec(),
            separation,
            required: delta,
        });
    }
    let h = if separation.is_finite() {
        scheme.step_at(separation)
    } else {
        scheme.step_at(1.0)
    };
    let reach = h * scheme.half_width() as f64;
    if separation - reach < delta {
        return Err(Error::Configuration(format!(
            "FD reach {reach:e} leaves less than delta={delta} of the separation {separation} at {x:?}"
        )));
    }
    let lap = fd_laplacian(f, x, h, scheme)?;
    Ok(-0.5 * lap + potential(ham, params, x) * f(x)?)
}
