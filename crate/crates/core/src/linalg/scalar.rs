//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use super::LinalgError;

/// Modulus used whenever a prime field is requested without an explicit one.
pub const DEFAULT_PRIME: u32 = 2_147_483_629;

/// The scalar field an object lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// Residues modulo a prime `p >= 5`.
    Prime(u32),
}

impl Field {
    /// Validated prime field. Rejects composites, `p < 5` and moduli that do not fit in 32 bits.
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        let p32 = u32::try_from(p).map_err(|_| LinalgError::InvalidModulus(p))?;
        if p32 < 5 || !is_prime(p32) {
            return Err(LinalgError::InvalidModulus(p));
        }
        Ok(Field::Prime(p32))
    }

    pub fn default_prime() -> Field {
        Field::Prime(DEFAULT_PRIME)
    }

    pub fn modulus(self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Field::Rational)
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Rational::from_integer(v)),
            Field::Prime(p) => Scalar::Prime(Fp::from_i64(v, p)),
        }
    }

    /// `num / den` in this field.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        self.int(num).checked_div(&self.int(den))
    }

    /// Embeds an exact rational, failing when the denominator vanishes modulo `p`.
    pub fn from_rational(self, q: &Rational) -> Result<Scalar, LinalgError> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let num = residue(&q.numer(), &m);
                let den = residue(&q.denom(), &m);
                Fp::new(num, p).checked_div(&Fp::new(den, p)).map(Scalar::Prime)
            }
        }
    }

    /// Parses `p` or `p/q` (optionally signed) into this field.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar, LinalgError> {
        let q: Rational = text.parse()?;
        self.from_rational(&q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "mod {p}"),
        }
    }
}

fn residue(v: &BigInt, m: &BigInt) -> u32 {
    v.mod_floor(m).to_u32().expect("residue below a 32-bit modulus")
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arbitrary-precision rational kept in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in `i64` stay on a machine-word path;
/// anything larger is promoted to a `BigRational` and demoted again when it shrinks.
#[derive(Clone, Debug)]
pub struct Rational(Repr);

#[derive(Clone, Debug)]
enum Repr {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn zero() -> Rational {
        Rational::from_integer(0)
    }

    pub fn one() -> Rational {
        Rational::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Rational {
        Rational(Repr::Small(Ratio::from_integer(v)))
    }

    /// `num / den`, or `None` when `den == 0`.
    pub fn new(num: BigInt, den: BigInt) -> Option<Rational> {
        if den.is_zero() {
            return None;
        }
        Some(Rational::from_big(BigRational::new(num, den)))
    }

    fn from_big(q: BigRational) -> Rational {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(Ratio::new_raw(n, d))),
            _ => Rational(Repr::Big(Box::new(q))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.numer()),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.denom()),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.numer().is_zero(),
            Repr::Big(b) => b.is_zero(),
        }
    }

    pub fn is_integer(&self) -> bool {
        self.denom().is_one()
    }

    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(r) if *r.numer() != i64::MIN => Rational(Repr::Small(r.recip())),
            _ => Rational::from_big(self.to_big().recip()),
        })
    }

    /// Exact square root when numerator and denominator are perfect squares.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        let (n, d) = (self.numer(), self.denom());
        if n.is_negative() {
            return None;
        }
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &rn * &rn == n && &rd * &rd == d {
            Rational::new(rn, rd)
        } else {
            None
        }
    }

    fn binary(
        &self,
        other: &Rational,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Rational {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(r) = small(a, b) {
                return Rational(Repr::Small(r));
            }
        }
        Rational::from_big(big(self.to_big(), other.to_big()))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Rational) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a == b,
            _ => self.to_big() == other.to_big(),
        }
    }
}

impl Eq for Rational {}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        self.binary(rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self.binary(rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        self.binary(rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(r) if *r.numer() != i64::MIN => Rational(Repr::Small(-*r)),
            _ => Rational::from_big(-self.to_big()),
        }
    }
}

impl FromStr for Rational {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Rational, LinalgError> {
        let bad = || LinalgError::ParseScalar(s.to_string());
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Rational::new(num, den).ok_or(LinalgError::DivisionByZero)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// Residue class modulo a prime below 2^32.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: u32, modulus: u32) -> Fp {
        Fp { value: value % modulus, modulus }
    }

    pub fn from_i64(v: i64, modulus: u32) -> Fp {
        Fp { value: v.rem_euclid(modulus as i64) as u32, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    fn same(self, other: Fp) -> u64 {
        assert_eq!(self.modulus, other.modulus, "mixed field modes");
        self.modulus as u64
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let p = self.modulus as u64;
        let (mut base, mut acc) = (self.value as u64, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp { value: acc as u32, modulus: self.modulus }
    }

    pub fn inv(self) -> Result<Fp, LinalgError> {
        if self.value == 0 {
            return Err(LinalgError::DivisionByZero);
        }
        Ok(self.pow(self.modulus as u64 - 2))
    }

    pub fn checked_div(self, other: &Fp) -> Result<Fp, LinalgError> {
        Ok(self * other.inv()?)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let p = self.same(rhs);
        Fp { value: ((self.value as u64 + rhs.value as u64) % p) as u32, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let p = self.same(rhs);
        Fp { value: ((self.value as u64 + p - rhs.value as u64) % p) as u32, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let p = self.same(rhs);
        Fp { value: ((self.value as u64 * rhs.value as u64) % p) as u32, modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp { value: self.modulus - self.value, modulus: self.modulus }
        }
    }
}

/// A field element tagged with its field.
///
/// Arithmetic between scalars of different fields is a programming error and panics;
/// every public constructor of vectors and matrices rejects mixed input up front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(Rational),
    Prime(Fp),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime(x) => Field::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => *q == Rational::one(),
            Scalar::Prime(x) => x.value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Prime(_) => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar, LinalgError> {
        match self {
            Scalar::Rational(q) => q.recip().map(Scalar::Rational).ok_or(LinalgError::DivisionByZero),
            Scalar::Prime(x) => x.inv().map(Scalar::Prime),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::MixedField);
        }
        Ok(self * &other.inv()?)
    }

    /// Re-expresses this scalar in `field`. Rationals map into prime fields; the reverse is refused.
    pub fn convert(&self, field: Field) -> Result<Scalar, LinalgError> {
        match (self, field) {
            (s, f) if s.field() == f => Ok(s.clone()),
            (Scalar::Rational(q), f) => f.from_rational(q),
            (Scalar::Prime(_), _) => Err(LinalgError::MixedField),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => q.fmt(f),
            Scalar::Prime(x) => write!(f, "{}", x.value),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.$method(b)),
                    (Scalar::Prime(a), Scalar::Prime(b)) => Scalar::Prime(a.$method(*b)),
                    _ => panic!("mixed field modes"),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl<'a> $assign_trait<&'a Scalar> for Scalar {
            fn $assign(&mut self, rhs: &Scalar) {
                *self = (&*self).$method(rhs);
            }
        }

        impl $assign_trait for Scalar {
            fn $assign(&mut self, rhs: Scalar) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

scalar_binop!(Add, add, AddAssign, add_assign);
scalar_binop!(Sub, sub, SubAssign, sub_assign);
scalar_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Prime(x) => Scalar::Prime(-*x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        let q = Field::Rational.ratio(6, -4).unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Field::Rational.ratio(0, 7).unwrap().to_string(), "0");
    }

    #[test]
    fn small_path_promotes_and_demotes() {
        let big = Rational::from_integer(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq * &big.recip().unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(_)));
        let min = Rational::from_integer(i64::MIN);
        assert_eq!(-&(-&min), min);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Field::Rational.ratio(1, 0), Err(LinalgError::DivisionByZero));
        let f = Field::prime(7).unwrap();
        assert_eq!(f.zero().inv(), Err(LinalgError::DivisionByZero));
        assert_eq!(f.ratio(3, 7), Err(LinalgError::DivisionByZero));
    }

    #[test]
    fn prime_field_validation() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(3).is_err());
        assert!(Field::prime(5).is_ok());
        assert!(Field::prime(DEFAULT_PRIME as u64).is_ok());
        assert!(Field::prime(1 << 33).is_err());
    }

    #[test]
    fn prime_inverse() {
        let f = Field::default_prime();
        let x = f.int(123_456);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(f.int(-1).to_string(), (DEFAULT_PRIME - 1).to_string());
    }

    #[test]
    fn parse_and_reduce() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.int(4));
        assert_eq!(Field::Rational.parse_scalar(" -10/4 ").unwrap().to_string(), "-5/2");
        assert!(Field::Rational.parse_scalar("x").is_err());
    }

    #[test]
    fn exact_square_roots() {
        let q: Rational = "9/4".parse().unwrap();
        assert_eq!(q.sqrt_exact().unwrap().to_string(), "3/2");
        assert!("2".parse::<Rational>().unwrap().sqrt_exact().is_none());
    }

    #[test]
    #[should_panic(expected = "mixed field modes")]
    fn mixing_fields_panics() {
        let _ = Field::Rational.one() + Field::default_prime().one();
    }
}
