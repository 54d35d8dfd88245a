//! Numbers in `Q` or a quadratic field `Q(sqrt d)`, with `p`-adic valuations
//! along a chosen embedding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("numbers live in different quadratic fields (d = {0} and d = {1}); higher-degree fields are not supported")]
    FieldMismatch(BigInt, BigInt),
    #[error("division by zero")]
    DivisionByZero,
    #[error("valuation of zero")]
    ZeroValuation,
    #[error("p = {p} splits in Q(sqrt {d}); a branch (square root of d mod p) is required")]
    MissingBranch { p: u64, d: BigInt },
    #[error("branch {branch} is not a square root of {d} mod {p}")]
    BadBranch { p: u64, d: BigInt, branch: BigInt },
    #[error("quadratic valuations at p = 2 are not supported")]
    EvenPrime,
    #[error("malformed number: {0}")]
    Parse(String),
    #[error("the minimal polynomial data does not define a field")]
    Degenerate,
}

/// `x + y sqrt(d)` with `d` a squarefree integer; `d = 1` means `y = 0` and
/// the number is rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    d: BigInt,
    x: BigRational,
    y: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl AlgebraicNumber {
    pub fn rational(x: BigRational) -> Self {
        AlgebraicNumber { d: BigInt::one(), x, y: BigRational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `p^e` for any integer `e`.
    pub fn prime_power(p: u64, e: i64) -> Self {
        let pe = BigRational::from_integer(arith::big_pow(p, e.unsigned_abs() as u32));
        Self::rational(if e >= 0 { pe } else { pe.recip() })
    }

    /// `x + y sqrt(d)`; `d` must be squarefree and not 1 unless `y = 0`.
    pub fn new(x: BigRational, y: BigRational, d: BigInt) -> Result<Self, FieldError> {
        if y.is_zero() {
            return Ok(Self::rational(x));
        }
        if d.is_zero() || d.is_one() {
            return Err(FieldError::Degenerate);
        }
        let (r, sf) = arith::squarefree_part(&BigRational::from_integer(d.clone()));
        if !r.is_one() {
            // absorb the square into y so d stays squarefree
            return Self::new(x, y * r, sf);
        }
        Ok(AlgebraicNumber { d, x, y })
    }

    /// `sqrt(d)` for a squarefree `d`.
    pub fn sqrt_of(d: BigInt) -> Result<Self, FieldError> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.x)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    fn common_d(&self, other: &Self) -> Result<BigInt, FieldError> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(FieldError::FieldMismatch(self.d.clone(), other.d.clone())),
        }
    }

    fn make(d: BigInt, x: BigRational, y: BigRational) -> Self {
        if y.is_zero() {
            Self::rational(x)
        } else {
            AlgebraicNumber { d, x, y }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        let d = self.common_d(other)?;
        Ok(Self::make(d, &self.x + &other.x, &self.y + &other.y))
    }

    pub fn neg(&self) -> Self {
        Self::make(self.d.clone(), -&self.x, -&self.y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        let d = self.common_d(other)?;
        let dr = BigRational::from_integer(d.clone());
        let x = &self.x * &other.x + &self.y * &other.y * dr;
        let y = &self.x * &other.y + &self.y * &other.x;
        Ok(Self::make(d, x, y))
    }

    pub fn conj(&self) -> Self {
        Self::make(self.d.clone(), self.x.clone(), -&self.y)
    }

    /// Field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - &self.y * &self.y * BigRational::from_integer(self.d.clone())
    }

    /// Field trace down to `Q`.
    pub fn trace(&self) -> BigRational {
        &self.x * rat(2)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Self::make(self.d.clone(), &c.x / &n, &c.y / &n))
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::make(self.d.clone(), &self.x * r, &self.y * r)
    }

    /// `p`-adic valuation along `place`; half-integers occur when `p` ramifies.
    pub fn valuation(&self, place: &PadicPlace) -> Result<Rational64, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroValuation);
        }
        let p = place.p;
        if self.is_rational() {
            return Ok(Rational64::from_integer(arith::val_rat(&self.x, p).expect("nonzero")));
        }
        match place.kind(&self.d)? {
            Splitting::Ramified | Splitting::Inert => {
                let v = arith::val_rat(&self.norm(), p).expect("nonzero norm");
                Ok(Rational64::new(v, 2))
            }
            Splitting::Split(s) => Ok(Rational64::from_integer(self.split_valuation(p, &s))),
        }
    }

    fn split_valuation(&self, p: u64, s: &BigInt) -> i64 {
        let vx = arith::val_rat(&self.x, p);
        let vy = arith::val_rat(&self.y, p).expect("irrational");
        let lo = vx.map_or(vy, |v| v.min(vy));
        let vn = arith::val_rat(&self.norm(), p).expect("nonzero norm");
        // v(a) <= v(N a) - lo, so relative precision vn - 2 lo + 1 suffices
        let prec = (vn - 2 * lo + 1).max(1) as u32;
        let shift = AlgebraicNumber::prime_power(p, -lo);
        let a = self.mul(&shift).expect("rational shift");
        let poly = [-self.d.clone(), BigInt::zero(), BigInt::one()];
        let root = arith::hensel_lift(&poly, s, p, prec).expect("simple root for split p");
        let xr = arith::rat_mod(&a.x, p, prec).expect("p-integral");
        let yr = arith::rat_mod(&a.y, p, prec).expect("p-integral");
        let m = arith::big_pow(p, prec);
        let val = (xr + yr * root).mod_floor(&m);
        let rel = if val.is_zero() { prec as i64 } else { arith::val_int(&val, p) as i64 };
        lo + rel
    }

    /// The image of this number in `Z/p^m` along `place`, if `p`-integral.
    pub fn reduce(&self, place: &PadicPlace, m: u32) -> Result<Option<BigInt>, FieldError> {
        let p = place.p;
        let modulus = arith::big_pow(p, m);
        if self.is_rational() {
            return Ok(arith::rat_mod(&self.x, p, m));
        }
        match place.kind(&self.d)? {
            Splitting::Split(s) => {
                let poly = [-self.d.clone(), BigInt::zero(), BigInt::one()];
                let root = arith::hensel_lift(&poly, &s, p, m).expect("simple root");
                let xr = arith::rat_mod(&self.x, p, m);
                let yr = arith::rat_mod(&self.y, p, m);
                Ok(match (xr, yr) {
                    (Some(x), Some(y)) => Some((x + y * root).mod_floor(&modulus)),
                    _ => None,
                })
            }
            _ => Ok(None),
        }
    }

    /// Rebuild from `x + y theta` with `theta^2 = t theta - n`.
    ///
    /// `theta` is identified with `(t + r sqrt D)/2` where `t^2 - 4n = r^2 D`,
    /// `r > 0`, `D` squarefree.
    pub fn from_theta(t: &BigRational, n: &BigRational, x: &BigRational, y: &BigRational) -> Result<Self, FieldError> {
        let (r, d) = theta_data(t, n)?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        match d {
            None => {
                // disc is a square: theta = (t + r)/2 is rational
                let theta = (t + &r) * &half;
                Ok(Self::rational(x + y * theta))
            }
            Some(d) => Self::new(x + y * t * &half, y * r * &half, d),
        }
    }

    pub fn to_record(&self) -> NumberRecord {
        if self.is_rational() {
            NumberRecord::Rational { rational: fmt_rat(&self.x) }
        } else {
            NumberRecord::Radical { x: fmt_rat(&self.x), y: fmt_rat(&self.y), d: self.d.to_string() }
        }
    }
}

/// `(r, Some(D))` with `t^2 - 4n = r^2 D`, or `(sqrt(disc), None)` if the
/// discriminant is a rational square.
fn theta_data(t: &BigRational, n: &BigRational) -> Result<(BigRational, Option<BigInt>), FieldError> {
    let disc = t * t - n * rat(4);
    if disc.is_zero() {
        return Err(FieldError::Degenerate);
    }
    if let Some(r) = arith::rational_sqrt(&disc) {
        return Ok((r, None));
    }
    let (r, d) = arith::squarefree_part(&disc);
    Ok((r.abs(), Some(d)))
}

pub fn fmt_rat(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<BigRational, FieldError> {
    let s = s.trim();
    let bad = || FieldError::Parse(s.to_string());
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rat(&self.x));
        }
        let sign = if self.y.is_negative() { "-" } else { "+" };
        write!(f, "{} {} {}*sqrt({})", fmt_rat(&self.x), sign, fmt_rat(&self.y.abs()), self.d)
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// How `p` decomposes in `Q(sqrt d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Splitting {
    Ramified,
    Inert,
    /// Split, with the chosen residue of `sqrt d` mod `p`.
    Split(BigInt),
}

/// A prime `p` together with a choice of embedding of `Q(sqrt d)` into
/// `Q_p` when `p` splits: `sqrt d` is sent to the root congruent to `branch`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicPlace {
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<i64>,
}

impl PadicPlace {
    pub fn new(p: u64) -> Self {
        PadicPlace { p, branch: None }
    }

    pub fn with_branch(p: u64, branch: i64) -> Self {
        PadicPlace { p, branch: Some(branch) }
    }

    pub fn kind(&self, d: &BigInt) -> Result<Splitting, FieldError> {
        let p = self.p;
        if p == 2 {
            return Err(FieldError::EvenPrime);
        }
        let pb = BigInt::from(p);
        if (d % &pb).is_zero() {
            return Ok(Splitting::Ramified);
        }
        if !arith::is_square_mod_prime(d, p) {
            return Ok(Splitting::Inert);
        }
        let b = self.branch.ok_or_else(|| FieldError::MissingBranch { p, d: d.clone() })?;
        let b = BigInt::from(b).mod_floor(&pb);
        if (&b * &b - d).mod_floor(&pb) != BigInt::zero() {
            return Err(FieldError::BadBranch { p, d: d.clone(), branch: b });
        }
        Ok(Splitting::Split(b))
    }

    /// Fill in the default branch (smallest residue) for `d` if none is set.
    pub fn completed_for(&self, d: &BigInt) -> Self {
        if self.branch.is_some() || self.p == 2 || d.is_one() {
            return self.clone();
        }
        let pb = BigInt::from(self.p);
        if (d % &pb).is_zero() || !arith::is_square_mod_prime(d, self.p) {
            return self.clone();
        }
        let s = arith::sqrt_mod_prime(d, self.p)[0];
        PadicPlace { p: self.p, branch: Some(s as i64) }
    }
}

/// Serialized algebraic number.
///
/// `{"rational": "a/b"}`, `{"x", "y", "d"}` for `x + y sqrt d`, or
/// `{"t", "n", "x", "y", "branch"}` for `x + y theta` with
/// `theta^2 = t theta - n` and `branch` the residue of `theta` mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberRecord {
    Rational {
        rational: String,
    },
    Theta {
        t: String,
        n: String,
        x: String,
        y: String,
        #[serde(default)]
        branch: Option<i64>,
    },
    Radical {
        x: String,
        y: String,
        d: String,
    },
}

impl NumberRecord {
    /// Decode, returning the number and (for theta records with a branch)
    /// the implied residue of `sqrt D` mod `p`.
    pub fn decode(&self, p: u64) -> Result<(AlgebraicNumber, Option<i64>), FieldError> {
        match self {
            NumberRecord::Rational { rational } => Ok((AlgebraicNumber::rational(parse_rat(rational)?), None)),
            NumberRecord::Radical { x, y, d } => {
                let d: BigInt = d.trim().parse().map_err(|_| FieldError::Parse(d.clone()))?;
                Ok((AlgebraicNumber::new(parse_rat(x)?, parse_rat(y)?, d)?, None))
            }
            NumberRecord::Theta { t, n, x, y, branch } => {
                let (t, n, x, y) = (parse_rat(t)?, parse_rat(n)?, parse_rat(x)?, parse_rat(y)?);
                let a = AlgebraicNumber::from_theta(&t, &n, &x, &y)?;
                let sqrt_branch = match (branch, theta_data(&t, &n)?) {
                    (Some(b), (r, Some(_))) => {
                        // sqrt D = (2 theta - t) / r
                        let num = BigRational::from_integer(BigInt::from(2 * b)) - &t;
                        let v = arith::rat_mod(&(num / r), p, 1)
                            .ok_or_else(|| FieldError::Parse("branch does not determine sqrt D mod p".into()))?;
                        Some(v.to_i64().expect("small residue"))
                    }
                    _ => None,
                };
                Ok((a, sqrt_branch))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn field_ops() {
        let i = AlgebraicNumber::sqrt_of(BigInt::from(-1)).unwrap();
        assert_eq!(i.mul(&i).unwrap(), AlgebraicNumber::int(-1));
        let a = AlgebraicNumber::new(q(1, 2), q(3, 1), BigInt::from(5)).unwrap();
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), AlgebraicNumber::one());
        let b = AlgebraicNumber::sqrt_of(BigInt::from(2)).unwrap();
        assert!(matches!(a.add(&b), Err(FieldError::FieldMismatch(..))));
        // sqrt(8) normalizes to 2 sqrt(2)
        let c = AlgebraicNumber::new(q(0, 1), q(1, 1), BigInt::from(8)).unwrap();
        assert_eq!(c, b.scale(&q(2, 1)));
    }

    #[test]
    fn valuations_in_each_splitting_type() {
        // 5 = (1 + 2i)(1 - 2i) splits; i = sqrt(-1) = 2 mod 5 makes 1 + 2i = 0 mod 5
        let a = AlgebraicNumber::new(q(1, 1), q(2, 1), BigInt::from(-1)).unwrap();
        let place = PadicPlace::with_branch(5, 2);
        assert_eq!(a.valuation(&place).unwrap(), Rational64::from_integer(1));
        assert_eq!(a.conj().valuation(&place).unwrap(), Rational64::from_integer(0));
        // inert: 3 in Q(i)
        let place3 = PadicPlace::new(3);
        assert_eq!(a.valuation(&place3).unwrap(), Rational64::from_integer(0));
        let three = a.scale(&q(3, 1));
        assert_eq!(three.valuation(&place3).unwrap(), Rational64::from_integer(1));
        // ramified: sqrt(3) has valuation 1/2 at 3
        let r = AlgebraicNumber::sqrt_of(BigInt::from(3)).unwrap();
        assert_eq!(r.valuation(&place3).unwrap(), Rational64::new(1, 2));
        // missing branch
        assert!(matches!(a.valuation(&PadicPlace::new(5)), Err(FieldError::MissingBranch { .. })));
    }

    #[test]
    fn theta_records() {
        // theta^2 = 3 theta - 2 has rational roots 1, 2; theta = (3 + 1)/2 = 2
        let a = AlgebraicNumber::from_theta(&q(3, 1), &q(2, 1), &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(a, AlgebraicNumber::int(2));
        // theta^2 = theta - 1: theta = (1 + sqrt(-3))/2
        let w = AlgebraicNumber::from_theta(&q(1, 1), &q(1, 1), &q(0, 1), &q(1, 1)).unwrap();
        assert_eq!(w.mul(&w).unwrap(), w.sub(&AlgebraicNumber::one()).unwrap());
    }
}
