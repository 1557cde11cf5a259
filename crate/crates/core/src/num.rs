//! Exact scalars.
//!
//! Integers and rationals are arbitrary precision ([`Int`], [`Rat`]). The
//! matrix code is written against the [`Scalar`], [`Pid`] and [`Field`]
//! traits so that the ring of coefficients stays swappable; the integers and
//! their field of fractions are the only instances shipped.

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Normalized arbitrary-precision rational (`den > 0`, `gcd(num, den) = 1`).
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid integer literal {0:?}")]
    BadInt(String),
    #[error("invalid rational literal {0:?}")]
    BadRat(String),
}

/// Coefficients a matrix can carry.
pub trait Scalar:
    Clone + PartialEq + Eq + Debug + Display + FromStr + Num + Neg<Output = Self> + Send + Sync
{
    /// Textual form as used in matrix files (`p` or `p/q`).
    fn render(&self) -> String {
        self.to_string()
    }
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Eq + Debug + Display + FromStr + Num + Neg<Output = T> + Send + Sync
{
}

/// A principal ideal domain with a fixed choice of canonical associates and
/// canonical residues, which is what Hermite normal forms need.
pub trait Pid: Scalar {
    type Fraction: Field;

    /// Bezout data: `(g, s, t)` with `s*a + t*b = g` and `g` canonical.
    fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self);

    /// A unit `u` with `self * u` canonical (for ℤ: nonnegative).
    fn canonical_unit(&self) -> Self;

    /// Quotient `q` such that `self - q * modulus` is the canonical residue
    /// modulo `modulus` (for ℤ: in `[0, |modulus|)`).
    fn residue_quotient(&self, modulus: &Self) -> Self;

    /// `self / other` when the division is known to be exact.
    fn div_exact(&self, other: &Self) -> Self;

    fn is_unit(&self) -> bool;

    fn embed(&self) -> Self::Fraction;
}

/// A field; nonzero elements are invertible under `/`.
pub trait Field: Scalar {}

impl Field for Rat {}

impl Pid for Int {
    type Fraction = Rat;

    fn xgcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let e = a.extended_gcd(b);
        // num-integer already returns a nonnegative gcd
        debug_assert!(!e.gcd.is_negative());
        (e.gcd, e.x, e.y)
    }

    fn canonical_unit(&self) -> Self {
        if self.is_negative() {
            -Int::one()
        } else {
            Int::one()
        }
    }

    fn residue_quotient(&self, modulus: &Self) -> Self {
        let (q, r) = self.div_mod_floor(modulus);
        if r.is_negative() {
            // negative modulus: floor remainder lies in (modulus, 0]
            q + Int::one()
        } else {
            q
        }
    }

    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!((self % other).is_zero());
        self / other
    }

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }

    fn embed(&self) -> Rat {
        Rat::from_integer(self.clone())
    }
}

/// Nonnegative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

/// Nonnegative least common multiple; `lcm(0, x) = 0`.
pub fn lcm(a: &Int, b: &Int) -> Int {
    if a.is_zero() || b.is_zero() {
        return Int::zero();
    }
    a.lcm(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rat, b: &Rat, op: RatOp) -> Result<Rat, NumError> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => checked_div(a, b)?,
    })
}

pub fn checked_div(a: &Rat, b: &Rat) -> Result<Rat, NumError> {
    if b.is_zero() {
        Err(NumError::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Scales a rational vector to a primitive integer vector.
///
/// Returns `(w, scale)` with `w = v * scale`, `scale > 0`, and the entries of
/// `w` jointly coprime unless `v` is zero, in which case `w = 0` and
/// `scale = 1`.
pub fn clear_denominators(v: &[Rat]) -> (Vec<Int>, Rat) {
    let den = v.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
    let w: Vec<Int> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = w.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (w, Rat::one());
    }
    let w = w.into_iter().map(|x| x / &g).collect();
    (w, Rat::new(den, g))
}

pub fn parse_int(s: &str) -> Result<Int, NumError> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(NumError::BadInt(s.to_string()));
    }
    Int::from_str(t).map_err(|_| NumError::BadInt(s.to_string()))
}

/// Parses `p` or `p/q` with `q != 0`.
pub fn parse_rat(s: &str) -> Result<Rat, NumError> {
    let t = s.trim();
    match t.split_once('/') {
        None => Ok(Rat::from_integer(
            parse_int(t).map_err(|_| NumError::BadRat(s.to_string()))?,
        )),
        Some((p, q)) => {
            let p = parse_int(p).map_err(|_| NumError::BadRat(s.to_string()))?;
            let q = parse_int(q).map_err(|_| NumError::BadRat(s.to_string()))?;
            if q.is_zero() {
                return Err(NumError::DivisionByZero);
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// `true` when the integer is strictly positive.
pub fn is_positive(a: &Int) -> bool {
    a.sign() == Sign::Plus
}
