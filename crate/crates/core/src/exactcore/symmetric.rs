use std::fmt;

use num_traits::{One, Zero};

use rand::Rng;

use super::poly::{rational, ExactScalar, Exponents, MultiPoly};

/// Integer partition with parts in non-increasing order and no zero parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts and drops zeros, so `[1, 0, 2]` becomes `[2, 1]`.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponent vector of the dominant monomial `x1^λ1 x2^λ2 …`.
    pub fn exponents(&self, num_vars: usize) -> Option<Exponents> {
        if self.0.len() > num_vars {
            return None;
        }
        let mut e = self.0.clone();
        e.resize(num_vars, 0);
        Some(Exponents::new(e))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "m[{}]", parts.join(","))
    }
}

/// Partitions of `m` into at most `max_parts` parts, largest first part
/// first (`[m]`, `[m-1, 1]`, …).
pub fn partitions(m: u32, max_parts: usize) -> Vec<Partition> {
    fn go(rest: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, max_parts, &mut Vec::new(), &mut out);
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Monomial symmetric polynomial `m_λ`: the sum of all distinct
/// rearrangements of `x^λ`. Zero when `λ` has more parts than variables.
pub fn monomial_symmetric(num_vars: usize, partition: &Partition) -> MultiPoly {
    let mut p = MultiPoly::zero(num_vars);
    let Some(e) = partition.exponents(num_vars) else {
        return p;
    };
    let mut v = e.as_slice().to_vec();
    v.sort_unstable();
    loop {
        p.add_term(Exponents::new(v.clone()), ExactScalar::one());
        if !next_permutation(&mut v) {
            break;
        }
    }
    p
}

/// Basis of the degree-`m` symmetric polynomials in `num_vars` variables:
/// one `m_λ` per partition of `m` into at most `num_vars` parts.
pub fn sym_basis(num_vars: usize, m: u32) -> Vec<(Partition, MultiPoly)> {
    partitions(m, num_vars)
        .into_iter()
        .map(|l| {
            let p = monomial_symmetric(num_vars, &l);
            (l, p)
        })
        .collect()
}

/// Basis of the degree-`m` symmetric polynomials that are even in every
/// variable (`m_λ` with all parts even). Empty for odd `m`.
pub fn even_sym_basis(num_vars: usize, m: u32) -> Vec<(Partition, MultiPoly)> {
    if m % 2 == 1 {
        return Vec::new();
    }
    partitions(m / 2, num_vars)
        .into_iter()
        .map(|half| {
            let l = Partition(half.0.iter().map(|k| 2 * k).collect());
            let p = monomial_symmetric(num_vars, &l);
            (l, p)
        })
        .collect()
}

/// Coordinates of a symmetric polynomial in the monomial-symmetric basis, as
/// `(λ, coefficient of x^λ)` pairs in descending graded-lex order of `λ`.
///
/// Returns `None` when `p` is not symmetric.
pub fn symmetric_coordinates(p: &MultiPoly) -> Option<Vec<(Partition, ExactScalar)>> {
    if !p.is_symmetric() {
        return None;
    }
    let coords = p
        .terms()
        .rev()
        .filter(|(e, _)| e.as_slice().windows(2).all(|w| w[0] >= w[1]))
        .map(|(e, c)| (Partition::new(e.as_slice().to_vec()), c.clone()))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Some(coords)
}

/// Renders a symmetric polynomial with the `m[..]` shorthand, e.g.
/// `m[2] + 3*m[1,1]`; returns `None` for non-symmetric input.
pub fn to_symmetric_string(p: &MultiPoly) -> Option<String> {
    use num_traits::Signed;
    let coords = symmetric_coordinates(p)?;
    if coords.is_empty() {
        return Some("0".to_string());
    }
    let mut s = String::new();
    for (idx, (l, c)) in coords.iter().enumerate() {
        let mag = c.abs();
        let sign = match (idx, c.is_negative()) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        s.push_str(sign);
        if l.is_empty() {
            s.push_str(&mag.to_string());
        } else if mag.is_one() {
            s.push_str(&l.to_string());
        } else {
            s.push_str(&format!("{mag}*{l}"));
        }
    }
    Some(s)
}

/// Random symmetric polynomial of degree at most `max_degree` with small
/// rational coefficients; only even partitions when `even` is set.
pub fn random_symmetric<R: Rng + ?Sized>(
    rng: &mut R,
    num_vars: usize,
    max_degree: u32,
    even: bool,
) -> MultiPoly {
    let mut p = MultiPoly::zero(num_vars);
    for m in 0..=max_degree {
        let basis = if even {
            even_sym_basis(num_vars, m)
        } else {
            sym_basis(num_vars, m)
        };
        for (_, q) in basis {
            if rng.random_bool(0.5) {
                let c = rational(rng.random_range(-5..=5), rng.random_range(1..=4));
                p = &p + &q.scale(&c);
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_polys_are_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let p = random_symmetric(&mut rng, 3, 6, false);
            assert!(p.is_symmetric());
            assert!(p.degree().unwrap_or(0) <= 6);
            let q = random_symmetric(&mut rng, 3, 6, true);
            assert!(q.is_symmetric() && q.is_even());
        }
    }

    #[test]
    fn partitions_of_two_in_two_vars() {
        let basis = sym_basis(2, 2);
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].1, parse_poly("x1^2 + x2^2", 2).unwrap());
        assert_eq!(basis[1].1, parse_poly("x1*x2", 2).unwrap());
    }

    #[test]
    fn small_counts() {
        let b = sym_basis(3, 1);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].1, parse_poly("x1 + x2 + x3", 3).unwrap());
        assert_eq!(sym_basis(2, 3).len(), 2);
        assert_eq!(sym_basis(4, 6).len(), 9);
        assert_eq!(sym_basis(1, 0).len(), 1);
    }

    #[test]
    fn even_basis() {
        assert!(even_sym_basis(2, 3).is_empty());
        let b = even_sym_basis(2, 4);
        let names: Vec<String> = b.iter().map(|(l, _)| l.to_string()).collect();
        assert_eq!(names, ["m[4]", "m[2,2]"]);
        assert!(b.iter().all(|(_, p)| p.is_even() && p.is_symmetric()));
    }

    #[test]
    fn symmetric_shorthand() {
        let p = parse_poly("x1^2 + 3*x1*x2 + x2^2", 2).unwrap();
        assert_eq!(to_symmetric_string(&p).unwrap(), "m[2] + 3*m[1,1]");
        assert!(to_symmetric_string(&parse_poly("x1", 2).unwrap()).is_none());
        assert_eq!(to_symmetric_string(&MultiPoly::one(3)).unwrap(), "1");
    }

    #[test]
    fn monomial_symmetric_term_count() {
        let p = monomial_symmetric(4, &Partition::new(vec![2, 1, 1]));
        assert_eq!(p.len(), 12);
        assert!(monomial_symmetric(2, &Partition::new(vec![1, 1, 1])).is_zero());
    }
}
