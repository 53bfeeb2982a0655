use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for every symbolic coefficient.
pub type ExactScalar = BigRational;

/// Builds the exact rational `numer/denom`.
///
/// Panics if `denom == 0`.
pub fn rational(numer: i64, denom: i64) -> ExactScalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(value))
}

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// with `x1` as the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponents(Vec<u32>);

impl Exponents {
    pub fn new(exponents: Vec<u32>) -> Self {
        Exponents(exponents)
    }

    pub fn zero(num_vars: usize) -> Self {
        Exponents(vec![0; num_vars])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn checked_sub(&self, other: &Exponents) -> Option<Exponents> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponents)
    }

    fn plus(&self, other: &Exponents) -> Exponents {
        Exponents(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals in a fixed number of
/// variables `x1..xN`.
///
/// Terms are kept in graded-lex order and zero coefficients are never stored,
/// so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, ExactScalar>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, ExactScalar::one())
    }

    pub fn constant(num_vars: usize, c: ExactScalar) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Exponents::zero(num_vars), c);
        p
    }

    /// The coordinate `x_{index+1}` (indices are zero-based).
    pub fn variable(num_vars: usize, index: usize) -> Result<Self> {
        if index >= num_vars {
            return Err(Error::VariableOutOfRange { index, num_vars });
        }
        let mut e = vec![0; num_vars];
        e[index] = 1;
        Ok(Self::monomial(Exponents(e), ExactScalar::one()))
    }

    pub fn monomial(exponents: Exponents, c: ExactScalar) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// Collects `(exponents, coefficient)` pairs, summing repeated monomials.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, ExactScalar)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    left: num_vars,
                    right: e.len(),
                });
            }
            p.add_term(Exponents(e), c);
        }
        Ok(p)
    }

    /// `r² = x1² + … + xN²`.
    pub fn radius_squared(num_vars: usize) -> Self {
        Self::power_sum(num_vars, 2)
    }

    /// `x1^k + … + xN^k`.
    pub fn power_sum(num_vars: usize, k: u32) -> Self {
        let mut p = Self::zero(num_vars);
        for i in 0..num_vars {
            let mut e = vec![0; num_vars];
            e[i] = k;
            p.add_term(Exponents(e), ExactScalar::one());
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> ExactScalar {
        self.terms
            .get(&Exponents(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &ExactScalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(e, _)| e.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Exponents::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, degree: u32) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn add_term(&mut self, exponents: Exponents, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exponents.len(), self.num_vars);
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor * x^shift * other`, used by division and multiplication.
    pub(crate) fn add_scaled_shifted(
        &mut self,
        other: &MultiPoly,
        factor: &ExactScalar,
        shift: &Exponents,
    ) {
        for (e, c) in &other.terms {
            self.add_term(e.plus(shift), c * factor);
        }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            out.add_scaled_shifted(other, c, e);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.num_vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Partial derivative with respect to `x_{var+1}`.
    pub fn diff(&self, var: usize) -> Result<MultiPoly> {
        if var >= self.num_vars {
            return Err(Error::VariableOutOfRange {
                index: var,
                num_vars: self.num_vars,
            });
        }
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut d = e.0.clone();
            d[var] -= 1;
            out.add_term(Exponents(d), c * ExactScalar::from_integer(BigInt::from(k)));
        }
        Ok(out)
    }

    /// Multiplies by `x_{var+1}^power`.
    pub fn mul_var(&self, var: usize, power: u32) -> Result<MultiPoly> {
        if var >= self.num_vars {
            return Err(Error::VariableOutOfRange {
                index: var,
                num_vars: self.num_vars,
            });
        }
        Ok(MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut s = e.0.clone();
                    s[var] += power;
                    (Exponents(s), c.clone())
                })
                .collect(),
        })
    }

    /// Euler operator `Σ x_i ∂_i`: scales each monomial by its total degree.
    pub fn euler(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * ExactScalar::from_integer(BigInt::from(e.degree())));
        }
        out
    }

    /// `Σ ∂_i²`.
    pub fn laplacian(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.num_vars);
        for (e, c) in &self.terms {
            for i in 0..self.num_vars {
                let k = e.0[i];
                if k < 2 {
                    continue;
                }
                let mut d = e.0.clone();
                d[i] -= 2;
                let factor = BigInt::from(k) * BigInt::from(k - 1);
                out.add_term(Exponents(d), c * ExactScalar::from_integer(factor));
            }
        }
        out
    }

    /// Exchanges the variables `x_{i+1}` and `x_{j+1}`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Result<MultiPoly> {
        for idx in [i, j] {
            if idx >= self.num_vars {
                return Err(Error::VariableOutOfRange {
                    index: idx,
                    num_vars: self.num_vars,
                });
            }
        }
        Ok(MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut s = e.0.clone();
                    s.swap(i, j);
                    (Exponents(s), c.clone())
                })
                .collect(),
        })
    }

    /// Invariance under every permutation of the variables, checked on the
    /// adjacent transpositions that generate the symmetric group.
    pub fn is_symmetric(&self) -> bool {
        (0..self.num_vars.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut s = e.0.clone();
                s.swap(i, i + 1);
                self.terms.get(&Exponents(s)) == Some(c)
            })
        })
    }

    /// True when every exponent of every term is even.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|k| k % 2 == 0))
    }

    pub fn eval_exact(&self, point: &[ExactScalar]) -> Result<ExactScalar> {
        if point.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                left: self.num_vars,
                right: point.len(),
            });
        }
        let mut acc = ExactScalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in point.iter().zip(&e.0) {
                if *k > 0 {
                    t *= num_traits::pow(x.clone(), *k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point view of the coefficients, for numeric evaluation.
    pub fn to_f64_terms(&self) -> Vec<(Vec<u32>, f64)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.0.clone(), scalar_to_f64(c)))
            .collect()
    }
}

/// Rounds an exact rational to the nearest representable `f64`.
pub fn scalar_to_f64(c: &ExactScalar) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        if c.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    /// Panics on a ring mismatch; use [`MultiPoly::try_add`] to handle it.
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-ExactScalar::one())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponents) -> fmt::Result {
    let mut first = true;
    for (i, k) in e.0.iter().enumerate() {
        if *k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if *k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

/// Text form accepted back by [`crate::exactcore::parse_poly`]; terms are
/// written from the highest graded-lex monomial down.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e.degree() == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write_monomial(f, e)?;
            } else {
                write!(f, "{magnitude}*")?;
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}
