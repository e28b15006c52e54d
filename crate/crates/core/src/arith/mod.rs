//! Exact arithmetic: doubled genus, sparse polynomials in `(u, z, v)` over
//! ℚ, and truncated Laurent series in `t` with polynomial coefficients.

mod genus;
mod mpoly;
mod parse;
mod series;

pub use genus::Genus2;
pub use mpoly::{MPoly, Monomial, Var};
pub use parse::{parse_poly, parse_series};
pub use series::{TSeries, EXACT};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `2^e` as a big integer.
pub fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(5, 6), BigInt::from(0));
        assert_eq!(binomial(5, -1), BigInt::from(0));
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }
}
