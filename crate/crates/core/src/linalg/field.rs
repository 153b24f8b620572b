use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

fn is_prime(p: u64) -> bool {
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

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} must be below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// `Some(q)` for a finite field with `q` elements.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(p as u64),
        }
    }

    pub fn is_finite(self) -> bool {
        self.order().is_some()
    }

    pub fn characteristic(self) -> u64 {
        self.order().unwrap_or(0)
    }

    /// Enumerates the field when finite. Index `i` maps to the residue `i`.
    pub fn element(self, index: u64) -> Scalar {
        self.from_i64(index as i64)
    }

    /// Whether the field has more than `n` elements.
    pub fn exceeds(self, n: u64) -> bool {
        self.order().map_or(true, |q| q > n)
    }

    /// A uniformly random element for finite fields; a small integer in
    /// `[-range, range]` over the rationals.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R, range: i64) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(rng.gen_range(-range..=range)),
            Field::Prime(p) => self.from_i64(rng.gen_range(0..p as i64)),
        }
    }

    /// Parses a scalar written as a decimal integer or fraction `a/b`.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = |why: &str| Error::ScalarParse(text.to_string(), why.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad("not an integer or fraction"))?;
        let den = BigInt::from_str(den).map_err(|_| bad("bad denominator"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        match self {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let p_big = BigInt::from(p);
                let reduce = |x: &BigInt| {
                    let r = ((x % &p_big) + &p_big) % &p_big;
                    r.to_u32().expect("residue fits")
                };
                let n = Scalar::Residue { value: reduce(&num), modulus: p };
                let d = Scalar::Residue { value: reduce(&den), modulus: p };
                let d_inv = d.inv().ok_or_else(|| bad("denominator vanishes mod p"))?;
                Ok(&n * &d_inv)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `F:p`, `Fp` and `F_p`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" || s.eq_ignore_ascii_case("rationals") {
            return Ok(Field::Rationals);
        }
        let digits = s
            .strip_prefix("F:")
            .or_else(|| s.strip_prefix("F_"))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(s.to_string()))?;
        Field::prime(p)
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                let p = *modulus as u64;
                Scalar::Residue {
                    value: pow_mod(*value as u64, p - 2, p) as u32,
                    modulus: *modulus,
                }
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// Residue representative in `0..p`; `None` over the rationals.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Exact integer value over the rationals, if the scalar is integral.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value as i64),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl fmt::Display for Scalar {
    /// Canonical form: `a`, `-a` or `a/b` over Q; the residue in `0..p` over F_p.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Residue {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Residue {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Scalar {
    /// Absolute value of numerator plus denominator; a crude size measure used
    /// to keep random search witnesses small over Q.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rational(q) => {
                (q.numer().abs() + q.denom()).to_u64().unwrap_or(u64::MAX)
            }
            Scalar::Residue { value, .. } => *value as u64,
        }
    }
}
