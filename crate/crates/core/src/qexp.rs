//! Truncated `q`-expansions over an exact coefficient ring, and the
//! operators used to build families: `T_l`, `U_p`, depletion, `theta`,
//! ordinary `p`-stabilisation, and specialisation of `Lambda`-adic series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::arith;
use crate::characters::{CharValue, CharacterError, CharacterRecord, DirichletCharacter, WeightCharacter};
use crate::quadratic::FieldError;
use crate::ring::{CoefficientRing, IwasawaRing, Rationals, QuadraticRing, ResidueRing, RingDescriptor, RingError};
use crate::weights_regions::Weights;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QExpError {
    #[error("truncation {have} is too short; need at least {need}")]
    TruncationTooShort { need: usize, have: usize },
    #[error("theta power {0} is negative")]
    NegativePower(i64),
    #[error("a_p is not a unit mod {0}; the form is not ordinary")]
    NotOrdinary(u64),
    #[error("not an eigenvector of {0} to the given truncation")]
    NotEigenform(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{l} divides the level {level}")]
    DividesLevel { l: u64, level: u64 },
    #[error("weight {0} is not supported by this operator")]
    BadWeight(i64),
    #[error("ring prime {ring} differs from {given}")]
    PrimeMismatch { ring: u64, given: u64 },
    #[error("T-adic precision {d} is too small: (1+p)^k - 1 has valuation {v}, need d * v >= {m}")]
    PrecisionLoss { d: usize, v: u32, m: u32 },
    #[error("finite part of conductor {0} is wildly ramified; its values on 1 + p are not in Z/p^m")]
    WildFinitePart(u64),
    #[error("series weights ({0}, {1}) do not match (c1, c2) = ({2}, {3})")]
    WeightMismatch(i64, i64, i64, i64),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("malformed series: {0}")]
    Parse(String),
}

/// `a_0 + a_1 q + ... + a_N q^N` with weight, nebentypus and level.
#[derive(Debug, Clone, PartialEq)]
pub struct QExpansion<R: CoefficientRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
    weight: i64,
    character: DirichletCharacter,
    level: u64,
    twist: Option<String>,
}

impl<R: CoefficientRing> QExpansion<R> {
    pub fn new(
        ring: R,
        coeffs: Vec<R::Elem>,
        weight: i64,
        character: DirichletCharacter,
        level: u64,
    ) -> Result<Self, QExpError> {
        if coeffs.is_empty() {
            return Err(QExpError::Parse("no coefficients".into()));
        }
        if level == 0 || level % character.modulus() != 0 {
            return Err(QExpError::Parse(format!(
                "level {level} is not a multiple of the character modulus {}",
                character.modulus()
            )));
        }
        Ok(QExpansion { ring, coeffs, weight, character, level, twist: None })
    }

    pub fn from_integers(
        ring: R,
        ints: &[BigInt],
        weight: i64,
        character: DirichletCharacter,
        level: u64,
    ) -> Result<Self, QExpError> {
        let coeffs = ints.iter().map(|n| ring.from_int(n)).collect();
        Self::new(ring, coeffs, weight, character, level)
    }

    pub fn zero(ring: R, truncation: usize, weight: i64, level: u64) -> Self {
        let coeffs = vec![ring.zero(); truncation + 1];
        let character = DirichletCharacter::trivial(1).expect("modulus 1");
        QExpansion { ring, coeffs, weight, character, level, twist: None }
    }

    fn derived(&self, coeffs: Vec<R::Elem>, weight: i64, level: u64) -> Self {
        QExpansion {
            ring: self.ring.clone(),
            coeffs,
            weight,
            character: self.character.clone(),
            level,
            twist: self.twist.clone(),
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coefficients(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R::Elem {
        &self.coeffs[n]
    }

    /// The largest `n` with `a_n` known.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn character(&self) -> &DirichletCharacter {
        &self.character
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Opaque marker for twists that leave the expansion at infinity unchanged.
    pub fn twist_tag(&self) -> Option<&str> {
        self.twist.as_deref()
    }

    pub fn with_twist_tag(mut self, tag: impl Into<String>) -> Self {
        self.twist = Some(tag.into());
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.truncation());
        self.derived(self.coeffs[..=n].to_vec(), self.weight, self.level)
    }

    /// Coefficientwise sum, to the shorter truncation.
    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.add(a, b)).collect();
        self.derived(coeffs, self.weight, self.level)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.ring.sub(a, b)).collect();
        self.derived(coeffs, self.weight, self.level)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(c, a)).collect();
        self.derived(coeffs, self.weight, self.level)
    }

    /// Coefficients agree up to the shorter truncation.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b)
    }

    /// Apply a coefficient map into another ring, keeping the metadata.
    pub fn map_ring<S, F>(&self, ring: S, mut f: F) -> Result<QExpansion<S>, QExpError>
    where
        S: CoefficientRing,
        F: FnMut(&R::Elem) -> Result<S::Elem, QExpError>,
    {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        Ok(QExpansion {
            ring,
            coeffs,
            weight: self.weight,
            character: self.character.clone(),
            level: self.level,
            twist: self.twist.clone(),
        })
    }

    fn char_value(&self, l: u64) -> Result<R::Elem, QExpError> {
        match self.character.evaluate(l as i64) {
            CharValue::Zero => Ok(self.ring.zero()),
            CharValue::Root(r) => Ok(self.ring.root_of_unity(&r)?),
        }
    }
}

fn require(need: usize, have: usize) -> Result<(), QExpError> {
    if have < need {
        Err(QExpError::TruncationTooShort { need, have })
    } else {
        Ok(())
    }
}

fn check_prime(l: u64) -> Result<(), QExpError> {
    if arith::is_prime(l) {
        Ok(())
    } else {
        Err(QExpError::NotPrime(l))
    }
}

/// `a_n(T_l f) = a_{nl} + l^{k-1} chi(l) a_{n/l}`, truncated at `floor(N/l)`.
pub fn hecke_t<R: CoefficientRing>(f: &QExpansion<R>, l: u64) -> Result<QExpansion<R>, QExpError> {
    check_prime(l)?;
    if f.level % l == 0 {
        return Err(QExpError::DividesLevel { l, level: f.level });
    }
    if f.weight < 1 {
        return Err(QExpError::BadWeight(f.weight));
    }
    let n_max = f.truncation();
    require(l as usize, n_max)?;
    let l_us = l as usize;
    let r = &f.ring;
    let scalar = r.mul(&r.from_int(&arith::big_pow(l, (f.weight - 1) as u32)), &f.char_value(l)?);
    let coeffs = (0..=n_max / l_us)
        .map(|n| {
            let mut c = f.coeffs[n * l_us].clone();
            if n % l_us == 0 {
                c = r.add(&c, &r.mul(&scalar, &f.coeffs[n / l_us]));
            }
            c
        })
        .collect();
    Ok(f.derived(coeffs, f.weight, f.level))
}

/// `a_n -> a_{np}`, truncated at `floor(N/p)`.
pub fn u_p<R: CoefficientRing>(f: &QExpansion<R>, p: u64) -> Result<QExpansion<R>, QExpError> {
    check_prime(p)?;
    let n_max = f.truncation();
    require(p as usize, n_max)?;
    let p_us = p as usize;
    let coeffs = (0..=n_max / p_us).map(|n| f.coeffs[n * p_us].clone()).collect();
    Ok(f.derived(coeffs, f.weight, arith::lcm(f.level, p)))
}

/// Zero every `a_n` with `p | n`.
pub fn p_deplete<R: CoefficientRing>(f: &QExpansion<R>, p: u64) -> Result<QExpansion<R>, QExpError> {
    check_prime(p)?;
    let p_us = p as usize;
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| if n % p_us == 0 { f.ring.zero() } else { c.clone() })
        .collect();
    Ok(f.derived(coeffs, f.weight, arith::lcm(f.level, p * p)))
}

/// `a_n -> n^t a_n`, weight `k + 2t`.
pub fn theta_power<R: CoefficientRing>(f: &QExpansion<R>, t: i64) -> Result<QExpansion<R>, QExpError> {
    if t < 0 {
        return Err(QExpError::NegativePower(t));
    }
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| f.ring.mul(&f.ring.from_int(&BigInt::from(n).pow(t as u32)), c))
        .collect();
    Ok(f.derived(coeffs, f.weight + 2 * t, f.level))
}

/// An ordinary `p`-stabilisation together with the two roots of the Hecke
/// polynomial at `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Stabilized {
    pub form: QExpansion<ResidueRing>,
    pub alpha: BigInt,
    pub beta: BigInt,
}

/// `f(q) - beta f(q^p)` where `alpha` is the unit root of
/// `X^2 - a_p X + p^{k-1} chi(p)` and `beta` the other root, computed in
/// `Z/p^m`. A form whose level is already divisible by `p` is returned
/// unchanged provided it is a `U_p`-eigenform with unit eigenvalue.
pub fn p_stabilize(f: &QExpansion<ResidueRing>, p: u64) -> Result<Stabilized, QExpError> {
    let ring = f.ring.clone();
    if ring.p() != p {
        return Err(QExpError::PrimeMismatch { ring: ring.p(), given: p });
    }
    let n_max = f.truncation();
    require(p as usize, n_max)?;
    let ap = f.coeffs[p as usize].clone();
    if (&ap % BigInt::from(p)).is_zero() {
        return Err(QExpError::NotOrdinary(p));
    }
    if f.level % p == 0 {
        let u = u_p(f, p)?;
        // eigenvalue read off from a_1(U f) = a_p when a_1 = 1
        if !u.agrees_with(&f.scale(&ap)) {
            return Err(QExpError::NotEigenform(format!("U_{p}")));
        }
        return Ok(Stabilized { form: f.clone(), alpha: ap, beta: BigInt::zero() });
    }
    if f.weight < 2 {
        return Err(QExpError::BadWeight(f.weight));
    }
    let chi = f.char_value(p)?;
    let norm = ring.mul(&ring.from_int(&arith::big_pow(p, (f.weight - 1) as u32)), &chi);
    let poly = [norm.clone(), ring.neg(&ap), BigInt::one()];
    let alpha = arith::hensel_lift(&poly, &ap, p, ring.m()).ok_or(QExpError::NotOrdinary(p))?;
    let beta = ring.mul(&norm, &ring.inv(&alpha).ok_or(QExpError::NotOrdinary(p))?);
    let p_us = p as usize;
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| {
            if n % p_us == 0 {
                ring.sub(c, &ring.mul(&beta, &f.coeffs[n / p_us]))
            } else {
                c.clone()
            }
        })
        .collect();
    Ok(Stabilized { form: f.derived(coeffs, f.weight, arith::lcm(f.level, p)), alpha, beta })
}

/// `(1 + p)^k - 1` in `Z/p^m`, the image of `T` at weight `k`.
pub fn specialization_point(ring: &ResidueRing, k: i64) -> Result<BigInt, QExpError> {
    if k < 0 {
        return Err(QExpError::BadWeight(k));
    }
    let base = ring.from_i64(1 + ring.p() as i64);
    Ok(ring.sub(&ring.pow(&base, k as u64), &ring.one()))
}

/// The ring map `(Z/p^m)[T]/(T^d) -> Z/p^m`, `T -> (1+p)^k - 1`. Dropping
/// `T^d` is only compatible with this map when `u^d = 0` in `Z/p^m`.
pub fn specialize_map(ring: &IwasawaRing, k: i64) -> Result<BigInt, QExpError> {
    let base = ring.base();
    let u = specialization_point(base, k)?;
    if !u.is_zero() {
        let v = base.valuation(&u);
        if (ring.t_precision() as u64) * (v as u64) < base.m() as u64 {
            return Err(QExpError::PrecisionLoss { d: ring.t_precision(), v, m: base.m() });
        }
    }
    Ok(u)
}

/// Specialise a `Lambda`-adic series at `x -> x^k chi(x)`. The finite part
/// must have conductor dividing `p`; it then kills `1 + p` and only changes
/// the nebentypus.
pub fn specialize(family: &QExpansion<IwasawaRing>, point: &WeightCharacter) -> Result<QExpansion<ResidueRing>, QExpError> {
    let ring = family.ring.clone();
    let p = ring.base().p();
    if point.p() != p {
        return Err(QExpError::PrimeMismatch { ring: p, given: point.p() });
    }
    let cond = point.finite_part().conductor();
    if cond % (p * p) == 0 {
        return Err(QExpError::WildFinitePart(cond));
    }
    let u = specialize_map(&ring, point.exponent())?;
    let base = ring.base().clone();
    let mut out = family.map_ring(base, |a| Ok(ring.evaluate(a, &u)))?;
    out.weight = point.exponent();
    out.character = family.character.mul(&point.finite_part().primitive());
    out.level = arith::lcm(arith::lcm(family.level, p), out.character.modulus());
    Ok(out)
}

/// The pair `(G1^[p], theta^t G2^[p])` with the integers `t` and `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct EFamily<R: CoefficientRing> {
    pub first: QExpansion<R>,
    pub second: QExpansion<R>,
    pub t: i64,
    pub r: i64,
}

pub fn build_e_family<R: CoefficientRing>(
    g1: &QExpansion<R>,
    g2: &QExpansion<R>,
    weights: &Weights,
    p: u64,
) -> Result<EFamily<R>, QExpError> {
    let t = weights.hodge_t();
    if t < 0 {
        return Err(QExpError::NegativePower(t));
    }
    if (g1.weight, g2.weight) != (weights.c1, weights.c2) {
        return Err(QExpError::WeightMismatch(g1.weight, g2.weight, weights.c1, weights.c2));
    }
    let first = p_deplete(g1, p)?;
    let second = theta_power(&p_deplete(g2, p)?, t)?;
    Ok(EFamily { first, second, t, r: weights.r() })
}

/// Serialized series: `{ring, weight, character, level, coefficients}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub ring: RingDescriptor,
    pub weight: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterRecord>,
    pub level: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<String>,
    pub coefficients: Vec<Value>,
}

impl<R: CoefficientRing> QExpansion<R> {
    pub fn to_record(&self) -> SeriesRecord {
        SeriesRecord {
            ring: self.ring.descriptor(),
            weight: self.weight,
            character: Some(self.character.to_record()),
            level: self.level,
            twist: self.twist.clone(),
            coefficients: self.coeffs.iter().map(|c| self.ring.to_json(c)).collect(),
        }
    }

    pub fn from_record(ring: R, rec: &SeriesRecord) -> Result<Self, QExpError> {
        if ring.descriptor() != rec.ring {
            return Err(RingError::Mismatch(ring.descriptor(), rec.ring.clone()).into());
        }
        let coeffs = rec.coefficients.iter().map(|v| ring.from_json(v)).collect::<Result<Vec<_>, _>>()?;
        let character = match &rec.character {
            Some(c) => DirichletCharacter::from_record(c)?,
            None => DirichletCharacter::trivial(1)?,
        };
        let mut f = Self::new(ring, coeffs, rec.weight, character, rec.level)?;
        f.twist = rec.twist.clone();
        Ok(f)
    }
}

/// A series over whichever ring its record names.
#[derive(Debug, Clone, PartialEq)]
pub enum DynSeries {
    Rational(QExpansion<Rationals>),
    Quadratic(QExpansion<QuadraticRing>),
    Residue(QExpansion<ResidueRing>),
    Iwasawa(QExpansion<IwasawaRing>),
}

impl DynSeries {
    pub fn from_record(rec: &SeriesRecord) -> Result<Self, QExpError> {
        Ok(match &rec.ring {
            RingDescriptor::Rational => DynSeries::Rational(QExpansion::from_record(Rationals, rec)?),
            RingDescriptor::Quadratic { d } => {
                let d: BigInt = d.parse().map_err(|_| QExpError::Parse(format!("bad d = {d}")))?;
                DynSeries::Quadratic(QExpansion::from_record(QuadraticRing::new(d)?, rec)?)
            }
            RingDescriptor::Residue { p, m } => DynSeries::Residue(QExpansion::from_record(ResidueRing::new(*p, *m)?, rec)?),
            RingDescriptor::Iwasawa { p, m, d } => {
                DynSeries::Iwasawa(QExpansion::from_record(IwasawaRing::new(*p, *m, *d)?, rec)?)
            }
        })
    }

    pub fn to_record(&self) -> SeriesRecord {
        match self {
            DynSeries::Rational(f) => f.to_record(),
            DynSeries::Quadratic(f) => f.to_record(),
            DynSeries::Residue(f) => f.to_record(),
            DynSeries::Iwasawa(f) => f.to_record(),
        }
    }

    /// Reduce into `Z/p^m`; rational and residue series only.
    pub fn into_residue(self, p: u64, m: u32) -> Result<QExpansion<ResidueRing>, QExpError> {
        let target = ResidueRing::new(p, m)?;
        match self {
            DynSeries::Rational(f) => f.map_ring(target.clone(), |x| Ok(target.from_rational(x)?)),
            DynSeries::Residue(f) => {
                if f.ring().p() != p || f.ring().m() < m {
                    return Err(RingError::Mismatch(f.ring().descriptor(), target.descriptor()).into());
                }
                f.map_ring(target.clone(), |x| Ok(target.reduce(x)))
            }
            other => Err(RingError::Mismatch(other.to_record().ring, target.descriptor()).into()),
        }
    }
}

/// Apply the same generic operator to whichever ring a series lives over.
#[macro_export]
macro_rules! on_dyn_series {
    ($s:expr, $f:ident => $body:expr) => {
        match $s {
            $crate::qexp::DynSeries::Rational($f) => $crate::qexp::DynSeries::Rational($body?),
            $crate::qexp::DynSeries::Quadratic($f) => $crate::qexp::DynSeries::Quadratic($body?),
            $crate::qexp::DynSeries::Residue($f) => $crate::qexp::DynSeries::Residue($body?),
            $crate::qexp::DynSeries::Iwasawa($f) => $crate::qexp::DynSeries::Iwasawa($body?),
        }
    };
}

/// Standard series for tests and examples.
pub mod corpus {
    use super::*;
    use num_rational::BigRational;

    /// Coefficients of `q prod (1 - q^n)^24` up to `q^n_max`.
    pub fn delta_coefficients(n_max: usize) -> Vec<BigInt> {
        // F = prod (1 - q^n)^24 satisfies q F'/F = -24 sum sigma(k) q^k,
        // so n f_n = -24 sum_{k=1}^n sigma(k) f_{n-k}.
        let sig: Vec<i64> = (0..=n_max as u64)
            .map(|k| if k == 0 { 0 } else { (1..=k).filter(|d| k % d == 0).sum::<u64>() as i64 })
            .collect();
        let mut f = vec![BigInt::zero(); n_max];
        if n_max > 0 {
            f[0] = BigInt::one();
        }
        for n in 1..n_max {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                acc += &f[n - k] * sig[k];
            }
            f[n] = acc * -24 / BigInt::from(n);
        }
        let mut out = vec![BigInt::zero(); n_max + 1];
        out[1..].clone_from_slice(&f);
        out
    }

    pub fn delta<R: CoefficientRing>(ring: R, n_max: usize) -> QExpansion<R> {
        let trivial = DirichletCharacter::trivial(1).expect("modulus 1");
        QExpansion::from_integers(ring, &delta_coefficients(n_max), 12, trivial, 1).expect("valid series")
    }

    /// `sigma_r(n)`.
    pub fn sigma(r: u32, n: u64) -> BigInt {
        let mut s = BigInt::zero();
        let mut d = 1;
        while d * d <= n {
            if n % d == 0 {
                s += BigInt::from(d).pow(r);
                let e = n / d;
                if e != d {
                    s += BigInt::from(e).pow(r);
                }
            }
            d += 1;
        }
        s
    }

    /// Bernoulli numbers `B_0..B_n` with `B_1 = -1/2`.
    pub fn bernoulli(n: usize) -> Vec<BigRational> {
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = BigRational::one();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate().take(m) {
                acc += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b[m] = -acc / BigRational::from_integer(BigInt::from(m + 1));
        }
        b
    }

    /// `-B_k/2k + sum sigma_{k-1}(n) q^n` for even `k >= 4`.
    pub fn eisenstein_sigma(k: u32, n_max: usize) -> QExpansion<Rationals> {
        assert!(k >= 4 && k.is_even(), "even weight at least 4");
        let b = bernoulli(k as usize);
        let mut coeffs = vec![-b[k as usize].clone() / BigRational::from_integer(BigInt::from(2 * k))];
        coeffs.extend((1..=n_max as u64).map(|n| BigRational::from_integer(sigma(k - 1, n))));
        let trivial = DirichletCharacter::trivial(1).expect("modulus 1");
        QExpansion::new(Rationals, coeffs, k as i64, trivial, 1).expect("valid series")
    }
}
