use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::error::{Error, Result};

/// `ℓ / (50 Δ^{c−1}) − |T_Δ|`, the degree below which the construction
/// applies.
pub fn predict_degree(ell: u64, delta: u64, c: u32, t_delta: u64) -> Result<BigRational> {
    if delta == 0 || c == 0 {
        return Err(Error::domain("Δ and c must be positive"));
    }
    let denom = BigInt::from(50u32) * Pow::pow(BigInt::from(delta), c - 1);
    Ok(BigRational::new(BigInt::from(ell), denom) - BigRational::from_integer(BigInt::from(t_delta)))
}

/// `(D − d)² / n`: the exponent in the size bound `exp(Ω((D − d)²/n))`
/// implied by a degree lower bound `D` for an initial degree `d` on `n`
/// variables. The constant hidden in `Ω` is not computed.
pub fn implied_size_exponent(degree: u64, initial_degree: u64, n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let diff = BigInt::from(degree) - BigInt::from(initial_degree);
    Ok(BigRational::new(&diff * &diff, BigInt::from(n)))
}

/// The degree bound for `G(n, d/n)` with an unspecified constant `C`,
/// rendered symbolically.
pub fn corollary_degree_form(d: u64, n: u64) -> String {
    format!("{d}^(-C*{d}) * {n}  (C: an unspecified constant)")
}

/// Whether the predicted bound reaches degree `D`.
pub fn admits_degree(bound: &BigRational, degree: u64) -> bool {
    *bound >= BigRational::from_integer(BigInt::from(degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn theorem_arithmetic() {
        let p = predict_degree(5000, 6, 4, 0).unwrap();
        assert_eq!(p, BigRational::new(5000.into(), 10800.into()));
        assert_eq!(p.to_string(), "25/54");
        assert_eq!(implied_size_exponent(7, 7, 100).unwrap(), BigRational::zero());
        assert_eq!(implied_size_exponent(12, 2, 50).unwrap(), BigRational::from_integer(2.into()));
        assert!(predict_degree(1, 0, 1, 0).is_err());
        assert!(corollary_degree_form(6, 1000).contains("C"));
    }
}
