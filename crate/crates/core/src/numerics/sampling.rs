use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numerics::measure::min_separation;
use crate::operators::ModelKind;

/// Attempts per requested point before the box is declared too crowded.
const MAX_ATTEMPTS_PER_POINT: usize = 10_000;

/// Extra distance beyond `δ` left for the finite-difference stencil.
pub const STENCIL_HEADROOM: f64 = 0.01;

#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub coords: Vec<f64>,
    /// Distance to the nearest singular hyperplane.
    pub min_separation: f64,
}

impl SamplePoint {
    pub fn new(kind: ModelKind, coords: Vec<f64>) -> Self {
        let min_separation = min_separation(kind, &coords);
        SamplePoint {
            coords,
            min_separation,
        }
    }

    pub fn r_squared(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub seed: u64,
    pub points: Vec<SamplePoint>,
}

/// Draws `count` points uniformly from `[lo, hi]^n`, keeping those that land
/// (after sorting into `x₁ > x₂ > …`) at separation above `δ` from every
/// singular hyperplane of `kind`.
pub fn sample_chamber(
    kind: ModelKind,
    n: usize,
    lo: f64,
    hi: f64,
    delta: f64,
    count: usize,
    seed: u64,
) -> Result<SampleSet> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Configuration(format!(
            "sampling box [{lo}, {hi}] is empty"
        )));
    }
    if !(delta > 0.0) {
        return Err(Error::Configuration(format!("delta must be positive, got {delta}")));
    }
    let threshold = delta * (1.0 + STENCIL_HEADROOM);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    let mut attempts = 0;
    while points.len() < count {
        attempts += 1;
        if attempts > MAX_ATTEMPTS_PER_POINT * count.max(1) {
            return Err(Error::Configuration(format!(
                "could not place {count} points with separation {delta} in [{lo}, {hi}]^{n}"
            )));
        }
        let mut coords: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
        coords.sort_by(|a, b| b.total_cmp(a));
        let p = SamplePoint::new(kind, coords);
        if p.min_separation > threshold {
            points.push(p);
        }
    }
    Ok(SampleSet { seed, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_ordered_and_separated() {
        let s = sample_chamber(ModelKind::An, 3, 0.5, 3.0, 0.2, 20, 42).unwrap();
        assert_eq!(s.points.len(), 20);
        for p in &s.points {
            assert!(p.coords.windows(2).all(|w| w[0] - w[1] > 0.2));
            assert!(p.coords.iter().all(|x| (0.5..3.0).contains(x)));
        }
    }

    #[test]
    fn seeded_is_reproducible() {
        let a = sample_chamber(ModelKind::Bn, 2, -3.0, 3.0, 0.2, 10, 7).unwrap();
        let b = sample_chamber(ModelKind::Bn, 2, -3.0, 3.0, 0.2, 10, 7).unwrap();
        assert_eq!(a, b);
        for p in &a.points {
            assert!(p.coords.iter().all(|x| x.abs() > 0.2));
        }
        let c = sample_chamber(ModelKind::Bn, 2, -3.0, 3.0, 0.2, 10, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn crowded_box_is_rejected() {
        assert!(sample_chamber(ModelKind::An, 5, 0.0, 0.5, 0.2, 1, 1).is_err());
        assert!(sample_chamber(ModelKind::An, 2, 1.0, 1.0, 0.2, 1, 1).is_err());
    }
}
