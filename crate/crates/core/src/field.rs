//! Exact scalar fields: arbitrary-precision rationals, prime fields GF(p),
//! and the binary extension fields GF(4) and GF(8).
//!
//! Every element carries its [`FieldDescriptor`]. Arithmetic between
//! elements of different fields is an error rather than a coercion.
//!
//! Text grammar (see [`FieldElement::parse`]):
//!
//! - rational: `a` or `a/b`, decimal integers with optional sign;
//! - prime field: `a` (reduced mod p), `a/b` is also accepted when `b` is
//!   invertible;
//! - binary field: a sum of `1`, `w`, `w^n` terms, e.g. `w^2+w+1`.
//!
//! GF(4) is GF(2)[w]/(w^2+w+1) and GF(8) is GF(2)[w]/(w^3+w+1).

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest prime modulus accepted (moduli are below 2^32).
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// Errors raised by field construction, parsing and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("binary extension degree must be 2 or 3, got {0}")]
    UnsupportedDegree(u32),
    #[error("mixed-field operation: {0} and {1}")]
    DescriptorMismatch(FieldDescriptor, FieldDescriptor),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed element {text:?} for field {field}")]
    Malformed { field: FieldDescriptor, text: String },
    #[error("malformed field descriptor {0:?}")]
    MalformedDescriptor(String),
}

/// Which exact field a scalar lives in. Build values with [`FieldDescriptor::prime`],
/// [`FieldDescriptor::binary`] or by parsing, which reject unsupported
/// parameters; only GF(4) and GF(8) exist among the binary fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DescriptorRepr", into = "DescriptorRepr")]
pub enum FieldDescriptor {
    Rational,
    Prime(u64),
    Binary(u8),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum DescriptorRepr {
    Rational,
    Prime { p: u64 },
    Binary { k: u32 },
}

impl TryFrom<DescriptorRepr> for FieldDescriptor {
    type Error = FieldError;

    fn try_from(repr: DescriptorRepr) -> Result<Self, FieldError> {
        match repr {
            DescriptorRepr::Rational => Ok(FieldDescriptor::Rational),
            DescriptorRepr::Prime { p } => FieldDescriptor::prime(p),
            DescriptorRepr::Binary { k } => FieldDescriptor::binary(k),
        }
    }
}

impl From<FieldDescriptor> for DescriptorRepr {
    fn from(desc: FieldDescriptor) -> Self {
        match desc {
            FieldDescriptor::Rational => DescriptorRepr::Rational,
            FieldDescriptor::Prime(p) => DescriptorRepr::Prime { p },
            FieldDescriptor::Binary(k) => DescriptorRepr::Binary { k: k as u32 },
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        FieldDescriptor::Rational
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldDescriptor::Prime(p))
    }

    pub fn binary(k: u32) -> Result<Self, FieldError> {
        match k {
            2 | 3 => Ok(FieldDescriptor::Binary(k as u8)),
            _ => Err(FieldError::UnsupportedDegree(k)),
        }
    }

    /// 0 for the rationals, p for GF(p), 2 for GF(2^k).
    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldDescriptor::Rational => 0,
            FieldDescriptor::Prime(p) => p,
            FieldDescriptor::Binary(_) => 2,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldDescriptor::Rational => None,
            FieldDescriptor::Prime(p) => Some(p),
            FieldDescriptor::Binary(k) => Some(1 << k),
        }
    }

    /// All elements of a finite field in canonical order; `None` for ℚ.
    pub fn elements(&self) -> Option<Vec<FieldElement>> {
        let desc = *self;
        match desc {
            FieldDescriptor::Rational => None,
            FieldDescriptor::Prime(p) => {
                Some((0..p).map(|r| FieldElement { desc, value: Value::Residue(r) }).collect())
            }
            FieldDescriptor::Binary(k) => {
                Some((0..(1u8 << k)).map(|bits| FieldElement { desc, value: Value::Poly(bits) }).collect())
            }
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::from_int(*self, 0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::from_int(*self, 1)
    }

    /// The image of the integer `n` under `n ↦ n·1`.
    pub fn int(&self, n: i64) -> FieldElement {
        FieldElement::from_int(*self, n)
    }

    pub fn parse(&self, text: &str) -> Result<FieldElement, FieldError> {
        FieldElement::parse(*self, text)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "rational"),
            FieldDescriptor::Prime(p) => write!(f, "prime:{p}"),
            FieldDescriptor::Binary(k) => write!(f, "binary:{k}"),
        }
    }
}

/// Parses the command-line form `rational`, `prime:p`, `binary:k`.
impl FromStr for FieldDescriptor {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::MalformedDescriptor(s.to_string());
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldDescriptor::Rational);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let n: u64 = arg.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "prime" => FieldDescriptor::prime(n),
            "binary" => FieldDescriptor::binary(u32::try_from(n).map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Rational(BigRational),
    Residue(u64),
    /// Coefficients of 1, w, w^2 as bits 0, 1, 2.
    Poly(u8),
}

/// An element of an exact field, always in canonical form, so structural
/// equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    desc: FieldDescriptor,
    value: Value,
}

/// The four field operations, for [`binary_op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to two elements of the same field.
pub fn binary_op(op: BinaryOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
    match op {
        BinaryOp::Add => a.checked_add(b),
        BinaryOp::Sub => a.checked_sub(b),
        BinaryOp::Mul => a.checked_mul(b),
        BinaryOp::Div => a.checked_div(b),
    }
}

fn binary_modulus(k: u8) -> u8 {
    match k {
        2 => 0b111,
        3 => 0b1011,
        _ => unreachable!("binary degree validated at construction"),
    }
}

/// Carry-less product reduced modulo the fixed irreducible polynomial.
fn gf2k_mul(k: u8, a: u8, b: u8) -> u8 {
    let modulus = binary_modulus(k) as u16;
    let mut acc: u16 = 0;
    for bit in 0..k {
        if b >> bit & 1 == 1 {
            acc ^= (a as u16) << bit;
        }
    }
    for deg in (k..2 * k).rev() {
        if acc >> deg & 1 == 1 {
            acc ^= modulus << (deg - k);
        }
    }
    acc as u8
}

fn mod_pow(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut result = 1u128;
    let mut b = (base % p) as u128;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue below p")
}

fn strip_sign(s: &str) -> (bool, &str) {
    if let Some(rest) = s.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('\u{2212}') {
        (true, rest)
    } else if let Some(rest) = s.strip_prefix('+') {
        (false, rest)
    } else {
        (false, s)
    }
}

fn parse_signed_int(s: &str) -> Option<BigInt> {
    let (neg, digits) = strip_sign(s.trim());
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: BigInt = digits.parse().ok()?;
    Some(if neg { -n } else { n })
}

/// `a` or `a/b` as a (numerator, denominator) pair, denominator unchecked.
fn parse_ratio(s: &str) -> Option<(BigInt, BigInt)> {
    match s.split_once('/') {
        Some((num, den)) => Some((parse_signed_int(num)?, parse_signed_int(den)?)),
        None => Some((parse_signed_int(s)?, BigInt::one())),
    }
}

impl FieldElement {
    pub fn from_int(desc: FieldDescriptor, n: i64) -> Self {
        let value = match desc {
            FieldDescriptor::Rational => Value::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldDescriptor::Prime(p) => Value::Residue(n.rem_euclid(p as i64) as u64),
            FieldDescriptor::Binary(_) => Value::Poly((n.rem_euclid(2)) as u8),
        };
        FieldElement { desc, value }
    }

    /// The element `num/den`; fails when `den` is zero in the field.
    pub fn from_ratio(desc: FieldDescriptor, num: i64, den: i64) -> Result<Self, FieldError> {
        FieldElement::from_int(desc, num).checked_div(&FieldElement::from_int(desc, den))
    }

    /// The GF(2^k) element with coefficient bits `bits` (bit i ↦ w^i).
    pub fn from_poly_bits(desc: FieldDescriptor, bits: u8) -> Result<Self, FieldError> {
        match desc {
            FieldDescriptor::Binary(k) if bits < (1 << k) => Ok(FieldElement { desc, value: Value::Poly(bits) }),
            _ => Err(FieldError::Malformed { field: desc, text: format!("bits {bits:#b}") }),
        }
    }

    /// Parses `text` in the grammar of `desc` into canonical form.
    pub fn parse(desc: FieldDescriptor, text: &str) -> Result<Self, FieldError> {
        let malformed = || FieldError::Malformed { field: desc, text: text.to_string() };
        let trimmed = text.trim();
        match desc {
            FieldDescriptor::Rational => {
                let (num, den) = parse_ratio(trimmed).ok_or_else(malformed)?;
                if den.is_zero() {
                    return Err(FieldError::ZeroDenominator(text.to_string()));
                }
                Ok(FieldElement { desc, value: Value::Rational(BigRational::new(num, den)) })
            }
            FieldDescriptor::Prime(p) => {
                let (num, den) = parse_ratio(trimmed).ok_or_else(malformed)?;
                let num = FieldElement { desc, value: Value::Residue(reduce_bigint(&num, p)) };
                let den = FieldElement { desc, value: Value::Residue(reduce_bigint(&den, p)) };
                if den.is_zero() {
                    return Err(FieldError::ZeroDenominator(text.to_string()));
                }
                num.checked_div(&den)
            }
            FieldDescriptor::Binary(k) => {
                let compact: String = trimmed.chars().filter(|c| !c.is_whitespace()).collect();
                if compact.is_empty() {
                    return Err(malformed());
                }
                let w = FieldElement { desc, value: Value::Poly(0b10) };
                let mut acc = 0u8;
                for term in compact.split('+') {
                    let power = match term {
                        "0" => continue,
                        "1" => 0,
                        "w" => 1,
                        _ => term
                            .strip_prefix("w^")
                            .filter(|e| !e.is_empty() && e.bytes().all(|b| b.is_ascii_digit()))
                            .and_then(|e| e.parse::<u32>().ok())
                            .ok_or_else(malformed)?,
                    };
                    match w.pow(power).value {
                        Value::Poly(bits) => acc ^= bits,
                        _ => unreachable!(),
                    }
                }
                debug_assert!(acc < 1 << k);
                Ok(FieldElement { desc, value: Value::Poly(acc) })
            }
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_zero(),
            Value::Residue(r) => *r == 0,
            Value::Poly(b) => *b == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(r) => r.is_one(),
            Value::Residue(r) => *r == 1,
            Value::Poly(b) => *b == 1,
        }
    }

    /// The underlying rational, if this is an element of ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(r) => Some(r),
            _ => None,
        }
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.desc == other.desc {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch(self.desc, other.desc))
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.desc.characteristic();
                Value::Residue(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Value::Poly(a), Value::Poly(b)) => Value::Poly(a ^ b),
            _ => unreachable!("value kind follows descriptor"),
        };
        Ok(FieldElement { desc: self.desc, value })
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.desc.characteristic();
                Value::Residue((*a as u128 * *b as u128 % p as u128) as u64)
            }
            (Value::Poly(a), Value::Poly(b)) => match self.desc {
                FieldDescriptor::Binary(k) => Value::Poly(gf2k_mul(k, *a, *b)),
                _ => unreachable!(),
            },
            _ => unreachable!("value kind follows descriptor"),
        };
        Ok(FieldElement { desc: self.desc, value })
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(r) => Value::Rational(r.recip()),
            Value::Residue(a) => {
                let p = self.desc.characteristic();
                Value::Residue(mod_pow(*a, p - 2, p))
            }
            // a^(2^k - 2) = a^-1 in GF(2^k)
            Value::Poly(_) => match self.desc {
                FieldDescriptor::Binary(k) => return Ok(self.pow((1u32 << k) - 2)),
                _ => unreachable!(),
            },
        };
        Ok(FieldElement { desc: self.desc, value })
    }

    fn neg_ref(&self) -> FieldElement {
        let value = match &self.value {
            Value::Rational(r) => Value::Rational(-r),
            Value::Residue(a) => {
                let p = self.desc.characteristic();
                Value::Residue(if *a == 0 { 0 } else { p - a })
            }
            Value::Poly(b) => Value::Poly(*b),
        };
        FieldElement { desc: self.desc, value }
    }

    pub fn pow(&self, exp: u32) -> FieldElement {
        let mut result = self.desc.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Integer power allowing negative exponents.
    pub fn powi(&self, exp: i64) -> Result<FieldElement, FieldError> {
        let magnitude = u32::try_from(exp.unsigned_abs())
            .map_err(|_| FieldError::Malformed { field: self.desc, text: format!("exponent {exp}") })?;
        if exp < 0 {
            Ok(self.inv()?.pow(magnitude))
        } else {
            Ok(self.pow(magnitude))
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Residue(a) => write!(f, "{a}"),
            Value::Poly(bits) => {
                if *bits == 0 {
                    return write!(f, "0");
                }
                let terms: Vec<&str> = [(2, "w^2"), (1, "w"), (0, "1")]
                    .iter()
                    .filter(|(deg, _)| bits >> deg & 1 == 1)
                    .map(|(_, name)| *name)
                    .collect();
                write!(f, "{}", terms.join("+"))
            }
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

// Operator sugar. These panic on mixed fields or division by zero; the
// `checked_*` methods are the fallible forms.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> FieldElement {
        FieldElement::parse(FieldDescriptor::Rational, s).unwrap()
    }

    fn gf4() -> FieldDescriptor {
        FieldDescriptor::binary(2).unwrap()
    }

    #[test]
    fn rational_division() {
        let r = binary_op(BinaryOp::Div, &q("1"), &q("-2")).unwrap();
        assert_eq!(r, q("-1/2"));
        assert_eq!(r.to_string(), "-1/2");
    }

    #[test]
    fn rational_parse_normalizes_signs() {
        assert_eq!(q("-14/-4").to_string(), "7/2");
        assert_eq!(q("\u{2212}14/\u{2212}4").to_string(), "7/2");
        assert_eq!(q("6/-4").to_string(), "-3/2");
        assert_eq!(q("+0/5").to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        let rat = FieldDescriptor::Rational;
        assert!(matches!(rat.parse("1/0"), Err(FieldError::ZeroDenominator(_))));
        assert!(matches!(rat.parse("1.5"), Err(FieldError::Malformed { .. })));
        assert!(matches!(rat.parse(""), Err(FieldError::Malformed { .. })));
        assert!(matches!(rat.parse("--3"), Err(FieldError::Malformed { .. })));
        assert!(matches!(gf4().parse("w+"), Err(FieldError::Malformed { .. })));
        assert!(matches!(gf4().parse("2w"), Err(FieldError::Malformed { .. })));
        let gf7 = FieldDescriptor::prime(7).unwrap();
        assert!(matches!(gf7.parse("3/7"), Err(FieldError::ZeroDenominator(_))));
    }

    #[test]
    fn prime_residue_reduction() {
        let gf7 = FieldDescriptor::prime(7).unwrap();
        assert_eq!(gf7.parse("10").unwrap().to_string(), "3");
        assert_eq!(gf7.parse("-3").unwrap().to_string(), "4");
        assert_eq!(gf7.parse("1/2").unwrap().to_string(), "4");
    }

    #[test]
    fn binary_parse_and_format() {
        let e = gf4().parse("w+1").unwrap();
        assert_eq!(e.to_string(), "w+1");
        assert_eq!(gf4().parse("1 + w").unwrap(), e);
        // w^2 = w+1 in GF(4)
        assert_eq!(gf4().parse("w^2").unwrap(), e);
        assert_eq!(gf4().parse("w+w").unwrap().to_string(), "0");
        let gf8 = FieldDescriptor::binary(3).unwrap();
        assert_eq!(gf8.parse("w^3").unwrap().to_string(), "w+1");
        assert_eq!(gf8.parse("w^2+1").unwrap().to_string(), "w^2+1");
    }

    #[test]
    fn gf4_examples() {
        let w = gf4().parse("w").unwrap();
        assert_eq!((&w * &w).to_string(), "w+1");
        assert!((&w + &w).is_zero());
    }

    /// Schoolbook polynomial product over GF(2) followed by long division.
    fn oracle_mul(k: u8, a: u8, b: u8) -> u8 {
        let mut prod = [0u8; 5];
        for i in 0..k as usize {
            for j in 0..k as usize {
                prod[i + j] ^= (a >> i & 1) & (b >> j & 1);
            }
        }
        let modulus: &[u8] = if k == 2 { &[1, 1, 1] } else { &[1, 1, 0, 1] };
        for deg in (k as usize..prod.len()).rev() {
            if prod[deg] == 1 {
                for (t, &c) in modulus.iter().enumerate() {
                    prod[deg - k as usize + t] ^= c;
                }
            }
        }
        (0..k as usize).map(|i| prod[i] << i).sum()
    }

    #[test]
    fn binary_multiplication_tables_match_oracle() {
        for k in [2u8, 3] {
            let desc = FieldDescriptor::binary(k as u32).unwrap();
            for a in 0..1u8 << k {
                for b in 0..1u8 << k {
                    let x = FieldElement::from_poly_bits(desc, a).unwrap();
                    let y = FieldElement::from_poly_bits(desc, b).unwrap();
                    let expected = FieldElement::from_poly_bits(desc, oracle_mul(k, a, b)).unwrap();
                    assert_eq!(&x * &y, expected, "k={k} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn characteristic_and_order() {
        assert_eq!(FieldDescriptor::Rational.characteristic(), 0);
        assert_eq!(FieldDescriptor::prime(5).unwrap().characteristic(), 5);
        assert_eq!(gf4().characteristic(), 2);
        assert_eq!(gf4().elements().unwrap().len(), 4);
        assert_eq!(FieldDescriptor::binary(3).unwrap().elements().unwrap().len(), 8);
        assert!(FieldDescriptor::Rational.elements().is_none());
    }

    #[test]
    fn frobenius_is_bijective() {
        for k in [2, 3] {
            let elems = FieldDescriptor::binary(k).unwrap().elements().unwrap();
            let mut squares: Vec<String> = elems.iter().map(|e| e.pow(2).to_string()).collect();
            squares.sort();
            squares.dedup();
            assert_eq!(squares.len(), elems.len());
        }
    }

    #[test]
    fn descriptor_validation() {
        assert_eq!(FieldDescriptor::prime(9), Err(FieldError::NotPrime(9)));
        assert_eq!(FieldDescriptor::prime(1), Err(FieldError::NotPrime(1)));
        assert_eq!(FieldDescriptor::binary(4), Err(FieldError::UnsupportedDegree(4)));
        assert_eq!("prime:13".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Prime(13));
        assert_eq!("binary:3".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Binary(3));
        assert!("prime:12".parse::<FieldDescriptor>().is_err());
        assert!("complex".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn descriptor_json() {
        let cases = [
            (FieldDescriptor::Rational, r#"{"kind":"rational"}"#),
            (FieldDescriptor::Prime(7), r#"{"kind":"prime","p":7}"#),
            (FieldDescriptor::Binary(2), r#"{"kind":"binary","k":2}"#),
        ];
        for (desc, json) in cases {
            assert_eq!(serde_json::to_string(&desc).unwrap(), json);
            assert_eq!(serde_json::from_str::<FieldDescriptor>(json).unwrap(), desc);
        }
        assert!(serde_json::from_str::<FieldDescriptor>(r#"{"kind":"prime","p":8}"#).is_err());
        assert!(serde_json::from_str::<FieldDescriptor>(r#"{"kind":"binary","k":5}"#).is_err());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = FieldDescriptor::Rational.one();
        let b = FieldDescriptor::prime(5).unwrap().one();
        for op in [BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div] {
            assert!(matches!(binary_op(op, &a, &b), Err(FieldError::DescriptorMismatch(..))));
        }
    }

    #[test]
    fn division_by_zero() {
        for desc in [FieldDescriptor::Rational, FieldDescriptor::Prime(5), gf4()] {
            assert_eq!(desc.one().checked_div(&desc.zero()), Err(FieldError::DivisionByZero));
        }
    }

    #[test]
    fn negative_powers() {
        let two = q("2");
        assert_eq!(two.powi(-3).unwrap(), q("1/8"));
        assert_eq!(two.powi(0).unwrap(), q("1"));
    }
}
