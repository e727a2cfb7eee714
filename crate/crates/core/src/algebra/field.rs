use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field: a prime field `GF(p)` or the rationals.
///
/// Prime moduli are limited to `p < 2^32` so products fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rational,
}

/// An element of some [`Field`]. The variant must match the field it is used
/// with; polynomials enforce this at their boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= 1 << 32 {
            return Err(Error::domain(format!("modulus {p} exceeds 2^32")));
        }
        if !is_prime(p) {
            return Err(Error::domain(format!("modulus {p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn gf2() -> Field {
        Field::Prime(2)
    }

    pub fn rationals() -> Field {
        Field::Rational
    }

    /// Parses the CLI spelling: `2`, any other prime, or `q` for the rationals.
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("invalid field `{s}` (expected a prime or `q`)")))?;
        Field::prime(p)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(0),
            Field::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(1),
            Field::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u64),
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Whether `s` is a well-formed element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Prime(p), Scalar::Mod(v)) => v < p,
            (Field::Rational, Scalar::Rat(_)) => true,
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod((p - x) % p),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(x * y % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod(mod_inv(*x, *p)),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            _ => panic!("scalar does not belong to {self}"),
        })
    }

    /// Parses a decimal integer or `num/den` into this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid coefficient `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let reduce = |v: &BigInt| -> u64 {
                    let r = ((v % &pb) + &pb) % &pb;
                    u64::try_from(r).expect("residue fits in u64")
                };
                let d = reduce(&den);
                if d == 0 {
                    return Err(Error::domain(format!(
                        "denominator of `{s}` vanishes modulo {p}"
                    )));
                }
                Ok(Scalar::Mod(reduce(&num) * mod_inv(d, *p) % p))
            }
        }
    }
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0 mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Scalar {
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

/// Field arithmetic on an unboxed element type, used by the inner loops of
/// the Gröbner and linear-algebra engines.
pub(crate) trait Arith: Clone + Send + Sync + 'static {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn is_one(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn from_scalar(&self, s: &Scalar) -> Self::E;
    fn to_scalar(&self, e: &Self::E) -> Scalar;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct PrimeArith {
    pub p: u64,
}

impl Arith for PrimeArith {
    type E = u64;

    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_inv(*a, self.p)
    }
    fn from_scalar(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Mod(v) => *v % self.p,
            Scalar::Rat(_) => panic!("rational scalar in GF({})", self.p),
        }
    }
    fn to_scalar(&self, e: &u64) -> Scalar {
        Scalar::Mod(*e)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct RatArith;

impl Arith for RatArith {
    type E = BigRational;

    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rat(r) => r.clone(),
            Scalar::Mod(_) => panic!("modular scalar over Q"),
        }
    }
    fn to_scalar(&self, e: &BigRational) -> Scalar {
        Scalar::Rat(e.clone())
    }
}

/// Runs `$body` with `$ar` bound to the [`Arith`] implementation of `$field`.
macro_rules! with_arith {
    ($field:expr, $ar:ident => $body:expr) => {
        match $field {
            $crate::algebra::Field::Prime(p) => {
                let $ar = $crate::algebra::field::PrimeArith { p };
                $body
            }
            $crate::algebra::Field::Rational => {
                let $ar = $crate::algebra::field::RatArith;
                $body
            }
        }
    };
}
pub(crate) use with_arith;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_moduli() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(0).is_err());
        assert!(Field::prime(5).is_ok());
        assert!(Field::prime(65_537).is_ok());
    }

    #[test]
    fn characteristic_two_cancels() {
        let f = Field::gf2();
        assert!(f.is_zero(&f.add(&f.one(), &f.one())));
    }

    #[test]
    fn parses_fractions_mod_p() {
        let f = Field::Prime(5);
        // 1/2 = 3 mod 5
        assert_eq!(f.parse_scalar("1/2").unwrap(), Scalar::Mod(3));
        assert_eq!(f.parse_scalar("-1").unwrap(), Scalar::Mod(4));
        assert!(f.parse_scalar("1/5").is_err());
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("6/4").unwrap().to_string(), "3/2");
    }

    #[test]
    fn inverse_round_trips() {
        let f = Field::Prime(7);
        for v in 1..7 {
            let a = Scalar::Mod(v);
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
        assert!(f.inv(&Scalar::Mod(0)).is_none());
    }
}
