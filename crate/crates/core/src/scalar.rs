//! Exact scalars and generalized binomial coefficients.
//!
//! `gen_binomial(a, b)` uses the falling-factorial definition
//! `a (a-1) ... (a-b+1) / b!`, so the upper index may be negative and
//! `gen_binomial(a, 0) = 1` for every `a`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_int(n: impl Into<Integer>) -> Rational {
    Rational::from_integer(n.into())
}

/// `a (a-1) ... (a-b+1) / b!` for `b >= 0`, zero for `b < 0`.
pub fn gen_binomial(a: i64, b: i64) -> Integer {
    if b < 0 {
        return Integer::zero();
    }
    // For nonnegative a the coefficient vanishes once b > a.
    if a >= 0 && b > a {
        return Integer::zero();
    }
    let b = if a >= 0 { b.min(a - b) } else { b };
    let mut acc = Integer::one();
    for i in 0..b {
        // acc = C(a, i) here, and C(a, i+1) = C(a, i) * (a - i) / (i + 1) is exact
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

pub fn gen_binomial_big(a: &Integer, b: i64) -> Integer {
    if b < 0 {
        return Integer::zero();
    }
    let mut acc = Integer::one();
    for i in 0..b {
        acc *= a - Integer::from(i);
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient with a rational upper index.
pub fn rat_binomial(a: &Rational, b: i64) -> Rational {
    if b < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..b {
        acc *= a - rat_int(i);
        acc /= rat_int(i + 1);
    }
    acc
}

pub fn factorial(n: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::NegativeFactorial(n));
    }
    Ok(fact(n as u64))
}

/// Infallible factorial for unsigned arguments.
pub fn fact(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, i| acc * i)
}

pub fn multinomial(total: i64, parts: &[i64]) -> Result<Integer> {
    let sum: i64 = parts.iter().sum();
    if sum != total || parts.iter().any(|&p| p < 0) {
        return Err(Error::PartsMismatch { total, sum });
    }
    let mut acc = Integer::one();
    let mut seen = 0;
    for &p in parts {
        seen += p;
        acc *= gen_binomial(seen, p);
    }
    Ok(acc)
}

/// `(-1)^e` as an `i64`.
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Integer power of a rational, negative exponents allowed for nonzero bases.
pub fn rat_pow(base: &Rational, e: i64) -> Result<Rational> {
    if e >= 0 {
        return Ok(num_traits::pow(base.clone(), e as usize));
    }
    if base.is_zero() {
        return Err(Error::Undefined("zero to a negative power".into()));
    }
    Ok(num_traits::pow(base.recip(), e.unsigned_abs() as usize))
}

pub fn to_integer(r: &Rational) -> Result<Integer> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NotIntegral(r.to_string()))
    }
}

pub fn is_nonnegative_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn falling(a: i64, b: i64) -> Rational {
        let mut num = Rational::one();
        for i in 0..b {
            num *= rat_int(a - i);
        }
        num / rat_int(fact(b as u64))
    }

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(5, 2), int(10));
        assert_eq!(gen_binomial(-1, 0), int(1));
        assert_eq!(gen_binomial(-2, 3), int(-4));
        assert_eq!(gen_binomial(3, -1), int(0));
        assert_eq!(gen_binomial(3, 5), int(0));
    }

    #[test]
    fn gen_binomial_matches_falling_product() {
        for a in -10..=12 {
            for b in 0..=12 {
                assert_eq!(rat_int(gen_binomial(a, b)), falling(a, b), "a={a} b={b}");
                assert_eq!(gen_binomial_big(&int(a), b), gen_binomial(a, b));
            }
        }
    }

    #[test]
    fn pascal_recurrence() {
        for a in -8..=12 {
            for b in 1..=12 {
                assert_eq!(
                    gen_binomial(a, b),
                    gen_binomial(a - 1, b) + gen_binomial(a - 1, b - 1)
                );
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(2, &[1, 1]).unwrap(), int(2));
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), int(6));
        assert_eq!(multinomial(3, &[3]).unwrap(), int(1));
        assert!(matches!(
            multinomial(3, &[1, 1]),
            Err(Error::PartsMismatch { total: 3, sum: 2 })
        ));
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial(0).unwrap(), int(1));
        assert_eq!(factorial(5).unwrap(), int(120));
        assert_eq!(factorial(10).unwrap(), int(3628800));
        assert!(factorial(-1).is_err());
    }

    #[test]
    fn large_values_do_not_overflow() {
        let f = factorial(200).unwrap();
        assert_eq!(f.to_string().len(), 375);
        assert_eq!(gen_binomial(300, 150).to_string().len(), 89);
    }

    #[test]
    fn rational_is_normalized() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &int(-3));
        assert_eq!(r.denom(), &int(2));
    }
}
