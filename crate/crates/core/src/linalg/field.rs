//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Largest modulus accepted for prime fields.
pub const MAX_PRIME: u32 = 1 << 31;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Default for Field {
    fn default() -> Self {
        Field::Rational
    }
}

impl Field {
    /// Checked constructor for a prime field.
    pub fn prime(p: u32) -> Result<Field, LinalgError> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(LinalgError::BadField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(BigRational::zero()),
            Field::Prime(p) => FieldElem::Mod { value: 0, p },
        }
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElem::Mod { value: n.rem_euclid(p as i64) as u32, p },
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<FieldElem, LinalgError> {
        if den == 0 {
            return Err(LinalgError::Parse(format!("zero denominator in {num}/{den}")));
        }
        self.from_i64(num)
            .checked_div(&self.from_i64(den))
            .ok_or_else(|| LinalgError::Parse(format!("denominator {den} is not invertible in {}", self.label())))
    }

    /// Parses `"p"` or `"p/q"` into this field.
    pub fn parse_elem(self, s: &str) -> Result<FieldElem, LinalgError> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num.trim()).map_err(|_| LinalgError::Parse(format!("bad scalar '{s}'")))?;
        let den = BigInt::from_str(den.trim()).map_err(|_| LinalgError::Parse(format!("bad scalar '{s}'")))?;
        if den.is_zero() {
            return Err(LinalgError::Parse(format!("zero denominator in '{s}'")));
        }
        match self {
            Field::Rational => Ok(FieldElem::Rat(BigRational::new(num, den))),
            Field::Prime(p) => {
                let reduce = |x: &BigInt| -> u32 {
                    let m = BigInt::from(p);
                    let r = ((x % &m) + &m) % &m;
                    r.to_u32().unwrap_or(0)
                };
                let n = FieldElem::Mod { value: reduce(&num), p };
                let d = FieldElem::Mod { value: reduce(&den), p };
                n.checked_div(&d).ok_or_else(|| LinalgError::Parse(format!("'{s}' has a denominator divisible by {p}")))
            }
        }
    }

    /// A random scalar; over the rationals an integer in `[-spread, spread]`.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R, spread: i64) -> FieldElem {
        match self {
            Field::Rational => self.from_i64(rng.gen_range(-spread..=spread)),
            Field::Prime(p) => FieldElem::Mod { value: rng.gen_range(0..p), p },
        }
    }

    /// Short label used in files and reports: `q` or `fp:<p>`.
    pub fn label(self) -> String {
        match self {
            Field::Rational => "q".to_string(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for Field {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "q" | "Q" | "rational" => Ok(Field::Rational),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| LinalgError::BadField(format!("unknown field '{other}'")))?;
                Field::prime(p)
            }
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`]. Mixing elements of different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    Mod { value: u32, p: u32 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rat(_) => Field::Rational,
            FieldElem::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Rat(r) => FieldElem::Rat(r.recip()),
            FieldElem::Mod { value, p } => FieldElem::Mod { value: pow_mod(*value, p - 2, *p), p: *p },
        })
    }

    pub fn checked_div(&self, rhs: &FieldElem) -> Option<FieldElem> {
        rhs.inv().map(|i| self * &i)
    }

    /// Size measure used for pivot choice: bit length of numerator plus denominator.
    pub fn height(&self) -> u64 {
        match self {
            FieldElem::Rat(r) => r.numer().bits() + r.denom().bits(),
            FieldElem::Mod { .. } => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rat(r) => r.is_negative(),
            FieldElem::Mod { .. } => false,
        }
    }
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElem::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mismatch(a: &FieldElem, b: &FieldElem) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &'a FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            (FieldElem::Mod { value: a, p }, FieldElem::Mod { value: b, p: q }) if p == q => {
                FieldElem::Mod { value: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &'a FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a - b),
            (FieldElem::Mod { value: a, p }, FieldElem::Mod { value: b, p: q }) if p == q => {
                FieldElem::Mod { value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &'a FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            (FieldElem::Mod { value: a, p }, FieldElem::Mod { value: b, p: q }) if p == q => {
                FieldElem::Mod { value: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &'a FieldElem) -> FieldElem {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rat(a) => FieldElem::Rat(-a),
            FieldElem::Mod { value, p } => FieldElem::Mod { value: (p - value) % p, p: *p },
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &'a FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}
