//! Exact coefficient fields: the rationals and prime fields `F_p`.

use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field. Keeps `a + b` inside `u64`.
pub const MAX_PRIME: u64 = 1 << 62;

/// The ground field a polynomial lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// A single coefficient. Which variant is valid is decided by the owning [`Field`].
///
/// Rationals are kept in lowest terms with a positive denominator (guaranteed by
/// `BigRational`); residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Residue(u64),
}

impl Field {
    /// `F_p`, after checking that `p` is prime.
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::zero()),
            Field::Prime(_) => FieldElement::Residue(0),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldElement::Residue(v.rem_euclid(p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match *self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => FieldElement::Residue(reduce_bigint(v, p)),
        }
    }

    /// `num / den` in this field. Fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        match *self {
            Field::Rational => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldElement::Rational(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(p) => {
                let d = reduce_bigint(den, p);
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                let n = reduce_bigint(num, p);
                Ok(FieldElement::Residue(mul_mod(n, inv_mod(d, p), p)))
            }
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Residue(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Residue(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (Field::Rational, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x + y)
            }
            (Field::Prime(p), FieldElement::Residue(x), FieldElement::Residue(y)) => {
                FieldElement::Residue((x + y) % p)
            }
            _ => unreachable!("coefficient does not belong to {:?}", self),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (self, a) {
            (Field::Rational, FieldElement::Rational(x)) => FieldElement::Rational(-x),
            (Field::Prime(p), FieldElement::Residue(x)) => {
                FieldElement::Residue(if *x == 0 { 0 } else { p - x })
            }
            _ => unreachable!("coefficient does not belong to {:?}", self),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (Field::Rational, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x * y)
            }
            (Field::Prime(p), FieldElement::Residue(x), FieldElement::Residue(y)) => {
                FieldElement::Residue(mul_mod(*x, *y, *p))
            }
            _ => unreachable!("coefficient does not belong to {:?}", self),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Rational, FieldElement::Rational(x)) => FieldElement::Rational(x.recip()),
            (Field::Prime(p), FieldElement::Residue(x)) => FieldElement::Residue(inv_mod(*x, *p)),
            _ => unreachable!("coefficient does not belong to {:?}", self),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Whether `a` is a valid element of this field.
    pub fn contains(&self, a: &FieldElement) -> bool {
        match (self, a) {
            (Field::Rational, FieldElement::Rational(_)) => true,
            (Field::Prime(p), FieldElement::Residue(v)) => v < p,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "F{}", p),
        }
    }
}

impl FieldElement {
    /// Sign used when printing; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Residue(_) => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            FieldElement::Residue(_) => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Residue(v) => write!(f, "{}", v),
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime: Fermat.
    pow_mod(a, p - 2, p)
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    match r.sign() {
        Sign::Minus => unreachable!(),
        _ => r.to_u64().unwrap_or(0),
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
