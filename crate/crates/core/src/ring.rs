//! Exact coefficient rings: `Q`, a quadratic field, `Z/p^M`, and the
//! truncated Iwasawa algebra `(Z/p^M)[T]/(T^D)`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::arith;
use crate::characters::RootOfUnity;
use crate::quadratic::{fmt_rat, parse_rat, AlgebraicNumber};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("cannot parse coefficient {0}")]
    Parse(String),
    #[error("{0} is not integral at p")]
    NotIntegral(String),
    #[error("ring mismatch: {0:?} vs {1:?}")]
    Mismatch(RingDescriptor, RingDescriptor),
    #[error("root of unity {0} is not available in this ring")]
    NoRootOfUnity(RootOfUnity),
    #[error("invalid ring parameters: {0}")]
    Invalid(String),
}

/// Serializable description of a coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingDescriptor {
    Rational,
    Quadratic { d: String },
    Residue { p: u64, m: u32 },
    Iwasawa { p: u64, m: u32, d: usize },
}

pub trait CoefficientRing: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn descriptor(&self) -> RingDescriptor;
    fn to_json(&self, a: &Self::Elem) -> Value;
    fn from_json(&self, v: &Value) -> Result<Self::Elem, RingError>;

    fn one(&self) -> Self::Elem {
        self.from_int(&BigInt::one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn scale(&self, n: &BigInt, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_int(n), a)
    }

    /// Image of a root of unity; only `+1` and `-1` are supported in general.
    fn root_of_unity(&self, r: &RootOfUnity) -> Result<Self::Elem, RingError> {
        match r.sign() {
            Some(1) => Ok(self.one()),
            Some(_) => Ok(self.neg(&self.one())),
            None => Err(RingError::NoRootOfUnity(*r)),
        }
    }
}

fn parse_bigint(v: &Value) -> Result<BigInt, RingError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| RingError::Parse(v.to_string())),
        Value::String(s) => s.trim().parse().map_err(|_| RingError::Parse(s.clone())),
        _ => Err(RingError::Parse(v.to_string())),
    }
}

fn parse_rational(v: &Value) -> Result<BigRational, RingError> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|_| RingError::Parse(s.clone())),
        _ => Ok(BigRational::from_integer(parse_bigint(v)?)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl CoefficientRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Rational
    }
    fn to_json(&self, a: &BigRational) -> Value {
        Value::String(fmt_rat(a))
    }
    fn from_json(&self, v: &Value) -> Result<BigRational, RingError> {
        parse_rational(v)
    }
}

/// `Q(sqrt d)`; elements are `AlgebraicNumber`s in that field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRing {
    d: BigInt,
}

impl QuadraticRing {
    pub fn new(d: BigInt) -> Result<Self, RingError> {
        let (r, sf) = arith::squarefree_part(&BigRational::from_integer(d.clone()));
        if d.is_zero() || !r.is_one() || sf.is_one() {
            return Err(RingError::Invalid(format!("d = {d} must be squarefree and not 0 or 1")));
        }
        Ok(QuadraticRing { d })
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn sqrt_d(&self) -> AlgebraicNumber {
        AlgebraicNumber::sqrt_of(self.d.clone()).expect("squarefree")
    }
}

impl CoefficientRing for QuadraticRing {
    type Elem = AlgebraicNumber;

    fn zero(&self) -> AlgebraicNumber {
        AlgebraicNumber::zero()
    }
    fn from_int(&self, n: &BigInt) -> AlgebraicNumber {
        AlgebraicNumber::from_bigint(n.clone())
    }
    fn add(&self, a: &AlgebraicNumber, b: &AlgebraicNumber) -> AlgebraicNumber {
        a.add(b).expect("elements of one field")
    }
    fn neg(&self, a: &AlgebraicNumber) -> AlgebraicNumber {
        a.neg()
    }
    fn mul(&self, a: &AlgebraicNumber, b: &AlgebraicNumber) -> AlgebraicNumber {
        a.mul(b).expect("elements of one field")
    }
    fn is_zero(&self, a: &AlgebraicNumber) -> bool {
        a.is_zero()
    }
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Quadratic { d: self.d.to_string() }
    }
    fn to_json(&self, a: &AlgebraicNumber) -> Value {
        serde_json::json!({ "x": fmt_rat(a.x()), "y": fmt_rat(a.y()) })
    }
    fn from_json(&self, v: &Value) -> Result<AlgebraicNumber, RingError> {
        match v {
            Value::Object(m) => {
                let x = m.get("x").map(parse_rational).transpose()?.unwrap_or_default();
                let y = m.get("y").map(parse_rational).transpose()?.unwrap_or_default();
                AlgebraicNumber::new(x, y, self.d.clone()).map_err(|e| RingError::Parse(e.to_string()))
            }
            _ => Ok(AlgebraicNumber::rational(parse_rational(v)?)),
        }
    }
}

/// `Z/p^m`, elements kept in `[0, p^m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRing {
    p: u64,
    m: u32,
    modulus: BigInt,
}

impl ResidueRing {
    pub fn new(p: u64, m: u32) -> Result<Self, RingError> {
        if !arith::is_prime(p) || m == 0 || m > 64 {
            return Err(RingError::Invalid(format!("need p prime and 1 <= m <= 64, got p = {p}, m = {m}")));
        }
        Ok(ResidueRing { p, m, modulus: arith::big_pow(p, m) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn reduce(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.modulus)
    }

    /// Image of a `p`-integral rational.
    pub fn from_rational(&self, x: &BigRational) -> Result<BigInt, RingError> {
        arith::rat_mod(x, self.p, self.m).ok_or_else(|| RingError::NotIntegral(fmt_rat(x)))
    }

    pub fn inv(&self, a: &BigInt) -> Option<BigInt> {
        arith::inv_mod(a, &self.modulus)
    }

    /// `p`-adic valuation of a residue, capped at `m` for zero.
    pub fn valuation(&self, a: &BigInt) -> u32 {
        if a.is_zero() {
            self.m
        } else {
            arith::val_int(a, self.p)
        }
    }
}

impl CoefficientRing for ResidueRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        self.reduce(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&-a)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Residue { p: self.p, m: self.m }
    }
    fn to_json(&self, a: &BigInt) -> Value {
        match a.to_i64() {
            Some(n) => Value::from(n),
            None => Value::String(a.to_string()),
        }
    }
    fn from_json(&self, v: &Value) -> Result<BigInt, RingError> {
        self.from_rational(&parse_rational(v)?)
    }
}

/// `(Z/p^m)[T]/(T^d)`; the variable `T` corresponds to `[1 + p] - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IwasawaRing {
    base: ResidueRing,
    d: usize,
}

impl IwasawaRing {
    pub fn new(p: u64, m: u32, d: usize) -> Result<Self, RingError> {
        if d == 0 {
            return Err(RingError::Invalid("T-adic precision must be positive".into()));
        }
        Ok(IwasawaRing { base: ResidueRing::new(p, m)?, d })
    }

    pub fn base(&self) -> &ResidueRing {
        &self.base
    }

    pub fn t_precision(&self) -> usize {
        self.d
    }

    /// The element `T`.
    pub fn t(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.d];
        if self.d > 1 {
            v[1] = BigInt::one();
        }
        v
    }

    pub fn from_coeffs(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = coeffs.iter().take(self.d).map(|c| self.base.reduce(c)).collect();
        v.resize(self.d, BigInt::zero());
        v
    }

    /// Evaluate at `T = u` in `Z/p^m`.
    pub fn evaluate(&self, a: &[BigInt], u: &BigInt) -> BigInt {
        let b = &self.base;
        a.iter().rev().fold(BigInt::zero(), |acc, c| b.add(&b.mul(&acc, u), c))
    }
}

impl CoefficientRing for IwasawaRing {
    type Elem = Vec<BigInt>;

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.d]
    }
    fn from_int(&self, n: &BigInt) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = self.base.reduce(n);
        v
    }
    fn add(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn neg(&self, a: &Vec<BigInt>) -> Vec<BigInt> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.d];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(self.d - i) {
                out[i + j] += x * y;
            }
        }
        out.iter().map(|c| self.base.reduce(c)).collect()
    }
    fn is_zero(&self, a: &Vec<BigInt>) -> bool {
        a.iter().all(|c| c.is_zero())
    }
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::Iwasawa { p: self.base.p, m: self.base.m, d: self.d }
    }
    fn to_json(&self, a: &Vec<BigInt>) -> Value {
        Value::Array(a.iter().map(|c| self.base.to_json(c)).collect())
    }
    fn from_json(&self, v: &Value) -> Result<Vec<BigInt>, RingError> {
        match v {
            Value::Array(items) => {
                let coeffs = items.iter().map(|c| self.base.from_json(c)).collect::<Result<Vec<_>, _>>()?;
                if coeffs.len() > self.d {
                    return Err(RingError::Parse(format!("more than {} T-coefficients", self.d)));
                }
                Ok(self.from_coeffs(&coeffs))
            }
            _ => Ok(self.from_coeffs(&[self.base.from_json(v)?])),
        }
    }
}
