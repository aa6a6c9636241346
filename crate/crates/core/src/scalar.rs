//! Exact scalar fields: the rationals and small prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact rationals.
pub type Q = BigRational;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_int(v: i64) -> Self;
    fn is_nil(&self) -> bool;
    fn inverse(&self) -> Option<Self>;

    fn ratio(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|i| self.clone() * i)
    }
}

impl Scalar for BigRational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

pub fn q(n: i64) -> Q {
    <Q as Scalar>::from_int(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// "p/q" (or "p") form used by the JSON encodings.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_from_str(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(format!("zero denominator in '{s}'"));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

pub fn q_is_square(x: &Q) -> bool {
    if x.is_negative() {
        return false;
    }
    let sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    sq(x.numer()) && sq(x.denom())
}

/// Element of the prime field F_P.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    pub fn value(self) -> u64 {
        self.0
    }
    pub fn pow(self, mut e: u64) -> Self {
        let mut b = self;
        let mut r = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        r
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= P { s - P } else { s })
    }
}
impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + P - o.0 })
    }
}
impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}
impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn nil() -> Self {
        Fp(0)
    }
    fn unit() -> Self {
        Fp(1 % P)
    }
    fn from_int(v: i64) -> Self {
        Fp::new(v)
    }
    fn is_nil(&self) -> bool {
        self.0 == 0
    }
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse() {
        for v in 1..101 {
            let x = Fp::<101>::new(v);
            assert_eq!(x * x.inverse().unwrap(), Fp::unit());
        }
        assert_eq!(Fp::<7>::new(-1), Fp(6));
    }

    #[test]
    fn rational_strings() {
        let x = q_from_str("-3/6").unwrap();
        assert_eq!(q_to_string(&x), "-1/2");
        assert_eq!(q_to_string(&q(4)), "4");
        assert!(q_from_str("1/0").is_err());
        assert!(q_is_square(&qf(9, 4)));
        assert!(!q_is_square(&qf(-9, 4)));
    }
}
