//! Exact scalars: normalized arbitrary-precision rationals and residues
//! modulo prime powers.
//!
//! [`Rational`] is the scalar every identity in this crate is evaluated in.
//! It is always kept in lowest terms with a positive denominator, so that
//! equality is structural and the canonical `num/den` string is unique.
//!
//! [`Residue`] carries its prime `p` and precision `k` along with the value.
//! Combining residues of different rings is reported as
//! [`Error::ModulusMismatch`] rather than silently reducing.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in canonical form (`den > 0`, `gcd(num, den) = 1`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` and normalizes it.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always strictly positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `1/self`. Panics on zero.
    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// `(-1)^e` as a rational.
    pub fn sign_power(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    }

    /// Borrow the underlying `num-rational` value.
    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Returns `(⌊q⌋, q − ⌊q⌋)`; see [`floor_frac`].
    pub fn floor_frac(&self) -> (BigInt, Rational) {
        floor_frac(self)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<Rational> for BigRational {
    fn from(value: Rational) -> Self {
        value.0
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigUint> for Rational {
    fn from(value: BigUint) -> Self {
        Rational::from_integer(BigInt::from(value))
    }
}

macro_rules! from_primitive {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(value: $t) -> Self {
                Rational::from_integer(BigInt::from(value))
            }
        }
    )*};
}
from_primitive!(i32, i64, u32, u64, usize);

macro_rules! binop {
    ($tr:ident, $method:ident, $atr:ident, $amethod:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($tr::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(&self.0, rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $atr<Rational> for Rational {
            fn $amethod(&mut self, rhs: Rational) {
                $atr::$amethod(&mut self.0, rhs.0);
            }
        }
        impl<'a> $atr<&'a Rational> for Rational {
            fn $amethod(&mut self, rhs: &'a Rational) {
                $atr::$amethod(&mut self.0, &rhs.0);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Always `num/den`, even for integers (`16/1`, `0/1`).
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `a/b` or a bare integer `a`; surrounding whitespace is ignored.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(num, den))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Splits `q` into its floor and fractional part: `q = floor + frac`,
/// `0 <= frac < 1`.
pub fn floor_frac(q: &Rational) -> (BigInt, Rational) {
    let floor = q.numer().div_floor(q.denom());
    let frac = q - Rational::from_integer(floor.clone());
    (floor, frac)
}

/// Inverse of `a` modulo `m`, in `[0, m)`, by the extended Euclidean
/// algorithm.
pub fn mod_inverse(a: &BigInt, m: &BigUint) -> Result<BigUint> {
    let not_invertible = || Error::NotInvertible {
        value: a.to_string(),
        modulus: m.to_string(),
    };
    if m.is_zero() {
        return Err(not_invertible());
    }
    let m_int = BigInt::from(m.clone());
    let a_red = a.mod_floor(&m_int);
    let egcd = a_red.extended_gcd(&m_int);
    if !egcd.gcd.is_one() {
        return Err(not_invertible());
    }
    Ok(egcd
        .x
        .mod_floor(&m_int)
        .to_biguint()
        .expect("mod_floor by a positive modulus is non-negative"))
}

/// Residue of a p-integral rational modulo `p^k`: the unique `r` in
/// `[0, p^k)` with `den·r ≡ num (mod p^k)`.
pub fn reduce_mod_pk(q: &Rational, p: u64, k: u32) -> Result<Residue> {
    let modulus = prime_power(p, k);
    if (q.denom() % BigInt::from(p)).is_zero() {
        return Err(Error::NotPIntegral {
            value: q.to_string(),
            p,
        });
    }
    let inv = mod_inverse(q.denom(), &modulus)?;
    let m_int = BigInt::from(modulus.clone());
    let num = q.numer().mod_floor(&m_int);
    let value = (BigInt::from(inv) * num).mod_floor(&m_int);
    Ok(Residue {
        value: value.to_biguint().expect("non-negative after mod_floor"),
        p,
        k,
        modulus,
    })
}

fn prime_power(p: u64, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), k as usize)
}

/// An element of `Z/p^k Z`, tagged with `(p, k)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: BigUint,
    p: u64,
    k: u32,
    modulus: BigUint,
}

impl Residue {
    /// Reduces an integer into `[0, p^k)`.
    pub fn from_integer(n: impl Into<BigInt>, p: u64, k: u32) -> Self {
        let modulus = prime_power(p, k);
        let value = n
            .into()
            .mod_floor(&BigInt::from(modulus.clone()))
            .to_biguint()
            .expect("non-negative after mod_floor");
        Residue {
            value,
            p,
            k,
            modulus,
        }
    }

    pub fn zero(p: u64, k: u32) -> Self {
        Residue::from_integer(0, p, k)
    }

    pub fn one(p: u64, k: u32) -> Self {
        Residue::from_integer(1, p, k)
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`.
    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_ring(&self, other: &Residue) -> Result<()> {
        if self.p == other.p && self.k == other.k {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: format!("{}^{}", self.p, self.k),
                right: format!("{}^{}", other.p, other.k),
            })
        }
    }

    fn with_value(&self, value: BigUint) -> Residue {
        Residue {
            value,
            p: self.p,
            k: self.k,
            modulus: self.modulus.clone(),
        }
    }

    pub fn try_add(&self, other: &Residue) -> Result<Residue> {
        self.same_ring(other)?;
        Ok(self.with_value((&self.value + &other.value) % &self.modulus))
    }

    pub fn try_sub(&self, other: &Residue) -> Result<Residue> {
        self.same_ring(other)?;
        Ok(self.with_value((&self.value + &self.modulus - &other.value) % &self.modulus))
    }

    pub fn try_mul(&self, other: &Residue) -> Result<Residue> {
        self.same_ring(other)?;
        Ok(self.with_value((&self.value * &other.value) % &self.modulus))
    }

    /// `self / other`; `other` must be a unit.
    pub fn try_div(&self, other: &Residue) -> Result<Residue> {
        self.try_mul(&other.inverse()?)
    }

    pub fn neg(&self) -> Residue {
        self.with_value((&self.modulus - &self.value) % &self.modulus)
    }

    pub fn pow(&self, exp: u64) -> Residue {
        self.with_value(self.value.modpow(&BigUint::from(exp), &self.modulus))
    }

    pub fn inverse(&self) -> Result<Residue> {
        let inv = mod_inverse(&BigInt::from(self.value.clone()), &self.modulus)?;
        Ok(self.with_value(inv))
    }

    /// Multiplies by an ordinary integer.
    pub fn scale(&self, factor: impl Into<BigInt>) -> Residue {
        let m = BigInt::from(self.modulus.clone());
        let v = (BigInt::from(self.value.clone()) * factor.into()).mod_floor(&m);
        self.with_value(v.to_biguint().expect("non-negative after mod_floor"))
    }

    /// Image in `Z/p^j Z` for `1 <= j <= k`.
    pub fn project(&self, j: u32) -> Result<Residue> {
        if j == 0 || j > self.k {
            return Err(Error::InvalidShape(format!(
                "cannot project mod {}^{} residue to precision {j}",
                self.p, self.k
            )));
        }
        Ok(Residue::from_integer(BigInt::from(self.value.clone()), self.p, j))
    }

    /// Value as a `u64`, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    /// The symmetric representative in `(-p^k/2, p^k/2]`.
    pub fn signed_value(&self) -> BigInt {
        let v = BigInt::from(self.value.clone());
        let m = BigInt::from(self.modulus.clone());
        if &v * 2 > m {
            v - m
        } else {
            v
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.value, self.p, self.k)
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn serialize_biguint<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match n.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.collect_str(n),
    }
}

/// Serialized as `{"value": <int>, "modulus": <int>}`.
impl Serialize for Residue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Num<'a>(&'a BigUint);
        impl Serialize for Num<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_biguint(self.0, s)
            }
        }
        let mut st = serializer.serialize_struct("Residue", 2)?;
        st.serialize_field("value", &Num(&self.value))?;
        st.serialize_field("modulus", &Num(&self.modulus))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        let r = Rational::new(6, -8);
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(Rational::zero().to_string(), "0/1");
        assert_eq!(Rational::from(16).to_string(), "16/1");
        assert_eq!(Rational::new(0, -5).to_string(), "0/1");
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("1/2/3".parse::<Rational>().is_err());
        assert_eq!(q(" -4 / 6 "), Rational::new(-2, 3));
    }

    #[test]
    fn floor_frac_examples() {
        assert_eq!(floor_frac(&q("7/2")), (BigInt::from(3), q("1/2")));
        assert_eq!(floor_frac(&q("-1/3")), (BigInt::from(-1), q("2/3")));
        assert_eq!(floor_frac(&q("4")), (BigInt::from(4), Rational::zero()));
        assert_eq!(floor_frac(&q("-3")), (BigInt::from(-3), Rational::zero()));
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_mod_pk(&q("1/2"), 5, 1).unwrap();
        assert_eq!(r.to_u64(), Some(3));
        assert_eq!(reduce_mod_pk(&q("7"), 7, 2).unwrap().to_u64(), Some(7));
        assert_eq!(reduce_mod_pk(&q("-1/3"), 7, 1).unwrap().to_u64(), Some(2));
        assert!(matches!(
            reduce_mod_pk(&q("1/10"), 5, 2),
            Err(Error::NotPIntegral { p: 5, .. })
        ));
    }

    #[test]
    fn mod_inverse_examples() {
        let inv = |a: i64, m: u64| mod_inverse(&BigInt::from(a), &BigUint::from(m));
        assert_eq!(inv(2, 5).unwrap(), BigUint::from(3u32));
        assert_eq!(inv(3, 7).unwrap(), BigUint::from(5u32));
        assert!(matches!(inv(5, 25), Err(Error::NotInvertible { .. })));
        assert_eq!(inv(-1, 7).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn residue_rings_do_not_mix() {
        let a = Residue::from_integer(3, 5, 2);
        let b = Residue::from_integer(3, 5, 3);
        let c = Residue::from_integer(3, 7, 2);
        assert!(matches!(a.try_add(&b), Err(Error::ModulusMismatch { .. })));
        assert!(matches!(a.try_mul(&c), Err(Error::ModulusMismatch { .. })));
        assert_eq!(a.try_mul(&a).unwrap().to_u64(), Some(9));
        assert_eq!(a.neg().to_u64(), Some(22));
        assert_eq!(Residue::from_integer(-1, 5, 2).signed_value(), BigInt::from(-1));
    }

    #[test]
    fn residue_serializes_with_modulus() {
        let r = Residue::from_integer(18, 5, 2);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"value":18,"modulus":25}"#
        );
        assert_eq!(serde_json::to_string(&q("-3/4")).unwrap(), r#""-3/4""#);
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn p_integral(p: u64) -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..2_000)
            .prop_filter("p-integral", move |(_, d)| d % p as i64 != 0)
            .prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn arithmetic_stays_canonical(a in rational(), b in rational()) {
            for r in [&a + &b, &a - &b, &a * &b] {
                prop_assert!(r.denom() > &BigInt::zero());
                prop_assert!(r.numer().gcd(r.denom()).is_one());
            }
            prop_assert_eq!((&a + &b) - &b, a.clone());
        }

        #[test]
        fn floor_frac_shifts_with_integers(a in rational(), n in -1000i64..1000) {
            let (fl, fr) = floor_frac(&a);
            prop_assert!(!fr.is_negative() && fr < Rational::one());
            prop_assert_eq!(Rational::from(fl.clone()) + &fr, a.clone());
            let (fl2, fr2) = floor_frac(&(&a + Rational::from(n)));
            prop_assert_eq!(fl2, fl + n);
            prop_assert_eq!(fr2, fr);
        }

        #[test]
        fn reduction_is_a_ring_homomorphism(
            (p, a, b) in prop_oneof![Just(3u64), Just(5), Just(7)]
                .prop_flat_map(|p| (Just(p), p_integral(p), p_integral(p))),
            k in 1u32..=3,
        ) {
            let ra = reduce_mod_pk(&a, p, k).unwrap();
            let rb = reduce_mod_pk(&b, p, k).unwrap();
            prop_assert_eq!(reduce_mod_pk(&(&a * &b), p, k).unwrap(), ra.try_mul(&rb).unwrap());
            prop_assert_eq!(reduce_mod_pk(&(&a + &b), p, k).unwrap(), ra.try_add(&rb).unwrap());
        }
    }
}
