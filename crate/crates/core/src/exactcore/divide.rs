use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Exact quotient `p / d`.
///
/// Runs multivariate division against the graded-lex leading term of `d`. If
/// at any step the leading term of the running remainder is not a multiple of
/// `lt(d)`, `p` is not a multiple of `d` and [`Error::NotDivisible`] is
/// returned. No remainder is ever silently dropped.
pub fn exact_divide(p: &MultiPoly, d: &MultiPoly) -> Result<MultiPoly> {
    if p.num_vars() != d.num_vars() {
        return Err(Error::DimensionMismatch {
            left: p.num_vars(),
            right: d.num_vars(),
        });
    }
    let (lead_exp, lead_coeff) = match d.leading_term() {
        Some((e, c)) => (e.clone(), c.clone()),
        None => return Err(Error::DivisionByZero),
    };
    let mut remainder = p.clone();
    let mut quotient = MultiPoly::zero(p.num_vars());
    while let Some((e, c)) = remainder.leading_term() {
        let shift = e.checked_sub(&lead_exp).ok_or_else(|| Error::NotDivisible {
            divisor: d.to_string(),
        })?;
        let factor = c / &lead_coeff;
        remainder.add_scaled_shifted(d, &-factor.clone(), &shift);
        quotient.add_term(shift, factor);
    }
    Ok(quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn factorizations() {
        assert_eq!(exact_divide(&p("x1^2 - x2^2"), &p("x1 - x2")).unwrap(), p("x1 + x2"));
        assert_eq!(
            exact_divide(&p("x1^2*x2 - x1*x2^2"), &p("x1 - x2")).unwrap(),
            p("x1*x2")
        );
    }

    #[test]
    fn non_multiple_is_rejected() {
        let err = exact_divide(&p("x1 + x2"), &p("x1 - x2")).unwrap_err();
        assert!(matches!(err, Error::NotDivisible { .. }));
        assert!(matches!(
            exact_divide(&p("x1^3 + 1"), &p("x1 + x2")),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn zero_divisor() {
        assert_eq!(
            exact_divide(&p("x1"), &MultiPoly::zero(2)).unwrap_err(),
            Error::DivisionByZero
        );
        assert!(exact_divide(&MultiPoly::zero(2), &p("x1 - x2")).unwrap().is_zero());
    }
}
