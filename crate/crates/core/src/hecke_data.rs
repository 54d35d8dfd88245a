//! Hecke parameters at `p` for `Pi` (four Satake parameters) and for each
//! `Sigma_i` (two roots of the Hecke polynomial), with the ordinarity tests.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::quadratic::{AlgebraicNumber, FieldError, NumberRecord, PadicPlace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Hecke parameters must be nonzero")]
    ZeroParameter,
    #[error("product constraint fails: {0}")]
    ProductMismatch(String),
    #[error("valuations must satisfy 0 <= v(alpha) <= v(beta) <= v(gamma) <= v(delta), got {0:?}")]
    ValuationOrder([String; 4]),
    #[error("{0} is not a p-adic unit")]
    NotUnit(String),
    #[error("no root of X^2 - a_p X + p^(c-1) chi(p) is a unit at p = {0}")]
    NotOrdinary(u64),
    #[error("a_p = {0} generates a field of degree > 2 over Q")]
    HigherDegree(String),
    #[error("weights must satisfy {0}")]
    BadWeight(String),
    #[error("conflicting branch choices {0} and {1}")]
    BranchConflict(i64, i64),
}

fn fmt_v(v: Rational64) -> String {
    if *v.denom() == 1 {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn check_prime(p: u64) -> Result<(), HeckeError> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(HeckeError::NotPrime(p))
    }
}

/// The single quadratic field (if any) that a list of numbers lives in,
/// with the place completed by the default branch.
fn place_for(p: u64, branch: Option<i64>, nums: &[&AlgebraicNumber]) -> Result<PadicPlace, HeckeError> {
    let mut d: Option<BigInt> = None;
    for x in nums {
        if x.is_rational() {
            continue;
        }
        match &d {
            Some(d0) if d0 != x.d() => return Err(FieldError::FieldMismatch(d0.clone(), x.d().clone()).into()),
            _ => d = Some(x.d().clone()),
        }
    }
    let place = PadicPlace { p, branch };
    Ok(match d {
        Some(d) => place.completed_for(&d),
        None => place,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GSp4HeckeParams {
    pub p: u64,
    pub k1: i64,
    pub k2: i64,
    pub alpha: AlgebraicNumber,
    pub beta: AlgebraicNumber,
    pub gamma: AlgebraicNumber,
    pub delta: AlgebraicNumber,
    pub chi_p: AlgebraicNumber,
    pub place: PadicPlace,
}

impl GSp4HeckeParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p: u64,
        k1: i64,
        k2: i64,
        alpha: AlgebraicNumber,
        beta: AlgebraicNumber,
        gamma: AlgebraicNumber,
        delta: AlgebraicNumber,
        chi_p: AlgebraicNumber,
        branch: Option<i64>,
    ) -> Result<Self, HeckeError> {
        check_prime(p)?;
        if k2 < 2 || k1 < k2 {
            return Err(HeckeError::BadWeight("k1 >= k2 >= 2".into()));
        }
        if [&alpha, &beta, &gamma, &delta, &chi_p].iter().any(|x| x.is_zero()) {
            return Err(HeckeError::ZeroParameter);
        }
        let place = place_for(p, branch, &[&alpha, &beta, &gamma, &delta, &chi_p])?;
        let target = AlgebraicNumber::prime_power(p, k1 + k2 - 3).mul(&chi_p)?;
        let ad = alpha.mul(&delta)?;
        let bg = beta.mul(&gamma)?;
        if ad != target || bg != target {
            return Err(HeckeError::ProductMismatch(format!(
                "alpha*delta = {ad}, beta*gamma = {bg}, p^(k1+k2-3) chi(p) = {target}"
            )));
        }
        let params = GSp4HeckeParams { p, k1, k2, alpha, beta, gamma, delta, chi_p, place };
        let v = params.valuations()?;
        if !(v[0] >= Rational64::zero() && v[0] <= v[1] && v[1] <= v[2] && v[2] <= v[3]) {
            return Err(HeckeError::ValuationOrder(v.map(fmt_v)));
        }
        Ok(params)
    }

    /// `(1, p^(k2-2), p^(k1-1), p^(k1+k2-3))` with trivial character.
    pub fn monomial(p: u64, k1: i64, k2: i64) -> Result<Self, HeckeError> {
        let pp = |e| AlgebraicNumber::prime_power(p, e);
        Self::new(p, k1, k2, pp(0), pp(k2 - 2), pp(k1 - 1), pp(k1 + k2 - 3), AlgebraicNumber::one(), None)
    }

    pub fn params(&self) -> [&AlgebraicNumber; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.delta]
    }

    pub fn valuations(&self) -> Result<[Rational64; 4], HeckeError> {
        let mut out = [Rational64::zero(); 4];
        for (slot, x) in out.iter_mut().zip(self.params()) {
            *slot = x.valuation(&self.place)?;
        }
        Ok(out)
    }

    fn vals(&self) -> [Rational64; 4] {
        self.valuations().expect("validated at construction")
    }

    pub fn is_borel_ordinary(&self) -> bool {
        let expect = [0, self.k2 - 2, self.k1 - 1, self.k1 + self.k2 - 3].map(Rational64::from_integer);
        self.vals() == expect
    }

    /// `alpha beta / p^(k2-2)` is a unit.
    pub fn is_klingen_ordinary(&self) -> bool {
        let v = self.vals();
        v[0] + v[1] == Rational64::from_integer(self.k2 - 2)
    }

    /// Read as `alpha` being a unit.
    pub fn is_siegel_ordinary(&self) -> bool {
        self.vals()[0].is_zero()
    }

    pub fn from_record(rec: &GSp4Record) -> Result<Self, HeckeError> {
        let mut branch = rec.branch;
        let mut decode = |r: &NumberRecord| -> Result<AlgebraicNumber, HeckeError> {
            let (x, b) = r.decode(rec.p)?;
            merge_branch(&mut branch, b)?;
            Ok(x)
        };
        let alpha = decode(&rec.alpha)?;
        let beta = decode(&rec.beta)?;
        let gamma = decode(&rec.gamma)?;
        let delta = decode(&rec.delta)?;
        let chi = match &rec.chi_p {
            Some(c) => decode(c)?,
            None => AlgebraicNumber::one(),
        };
        Self::new(rec.p, rec.k1, rec.k2, alpha, beta, gamma, delta, chi, branch)
    }

    pub fn to_record(&self) -> GSp4Record {
        GSp4Record {
            p: self.p,
            k1: self.k1,
            k2: self.k2,
            alpha: self.alpha.to_record(),
            beta: self.beta.to_record(),
            gamma: self.gamma.to_record(),
            delta: self.delta.to_record(),
            chi_p: Some(self.chi_p.to_record()),
            branch: self.place.branch,
        }
    }
}

fn merge_branch(slot: &mut Option<i64>, new: Option<i64>) -> Result<(), HeckeError> {
    match (*slot, new) {
        (Some(a), Some(b)) if a != b => Err(HeckeError::BranchConflict(a, b)),
        (None, Some(b)) => {
            *slot = Some(b);
            Ok(())
        }
        _ => Ok(()),
    }
}

/// JSON form of [`GSp4HeckeParams`]. `branch` is the residue of `sqrt d`
/// mod `p` when `p` splits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSp4Record {
    pub p: u64,
    pub k1: i64,
    pub k2: i64,
    pub alpha: NumberRecord,
    pub beta: NumberRecord,
    pub gamma: NumberRecord,
    pub delta: NumberRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_p: Option<NumberRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GL2HeckeParams {
    pub p: u64,
    pub c: i64,
    pub a: AlgebraicNumber,
    pub b: AlgebraicNumber,
    pub unit_scalar: AlgebraicNumber,
    pub place: PadicPlace,
}

impl GL2HeckeParams {
    pub fn new(
        p: u64,
        c: i64,
        a: AlgebraicNumber,
        b: AlgebraicNumber,
        unit_scalar: AlgebraicNumber,
        branch: Option<i64>,
    ) -> Result<Self, HeckeError> {
        check_prime(p)?;
        if c < 1 {
            return Err(HeckeError::BadWeight("c >= 1".into()));
        }
        if a.is_zero() || b.is_zero() || unit_scalar.is_zero() {
            return Err(HeckeError::ZeroParameter);
        }
        let place = place_for(p, branch, &[&a, &b, &unit_scalar])?;
        if !unit_scalar.valuation(&place)?.is_zero() {
            return Err(HeckeError::NotUnit(unit_scalar.to_string()));
        }
        let target = AlgebraicNumber::prime_power(p, c - 1).mul(&unit_scalar)?;
        let ab = a.mul(&b)?;
        if ab != target {
            return Err(HeckeError::ProductMismatch(format!("a*b = {ab}, p^(c-1) * unit = {target}")));
        }
        Ok(GL2HeckeParams { p, c, a, b, unit_scalar, place })
    }

    /// `a = 1`, `b = p^(c-1)`.
    pub fn monomial(p: u64, c: i64) -> Result<Self, HeckeError> {
        Self::new(p, c, AlgebraicNumber::one(), AlgebraicNumber::prime_power(p, c - 1), AlgebraicNumber::one(), None)
    }

    pub fn valuations(&self) -> Result<[Rational64; 2], HeckeError> {
        Ok([self.a.valuation(&self.place)?, self.b.valuation(&self.place)?])
    }

    /// `v(a) = 0`, `v(b) = c - 1`.
    pub fn is_ordinary(&self) -> bool {
        self.valuations()
            .map(|v| v == [Rational64::zero(), Rational64::from_integer(self.c - 1)])
            .unwrap_or(false)
    }

    pub fn from_record(rec: &GL2Record, p: u64) -> Result<Self, HeckeError> {
        match rec {
            GL2Record::Roots { c, a, b, unit, branch } => {
                let mut br = *branch;
                let (a, b1) = a.decode(p)?;
                merge_branch(&mut br, b1)?;
                let (b, b2) = b.decode(p)?;
                merge_branch(&mut br, b2)?;
                let unit = match unit {
                    Some(u) => u.decode(p)?.0,
                    None => AlgebraicNumber::one(),
                };
                Self::new(p, *c, a, b, unit, br)
            }
            GL2Record::HeckePolynomial { c, a_p, chi_p, branch } => {
                let (ap, _) = a_p.decode(p)?;
                let chi = match chi_p {
                    Some(x) => x.decode(p)?.0,
                    None => AlgebraicNumber::one(),
                };
                let chi = chi.as_rational().cloned().ok_or_else(|| HeckeError::HigherDegree(chi.to_string()))?;
                ordinary_gl2(&ap, *c, p, &chi, branch.map(|b| PadicPlace::with_branch(p, b)))
            }
        }
    }

    pub fn to_record(&self) -> GL2Record {
        GL2Record::Roots {
            c: self.c,
            a: self.a.to_record(),
            b: self.b.to_record(),
            unit: Some(self.unit_scalar.to_record()),
            branch: self.place.branch,
        }
    }
}

/// JSON form of a `GL2` factor: either the two roots, or `a_p` and
/// `chi(p)` from which the ordinary root is extracted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GL2Record {
    Roots {
        c: i64,
        a: NumberRecord,
        b: NumberRecord,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<NumberRecord>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        branch: Option<i64>,
    },
    HeckePolynomial {
        c: i64,
        a_p: NumberRecord,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        chi_p: Option<NumberRecord>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        branch: Option<i64>,
    },
}

/// Split `X^2 - a_p X + p^(c-1) chi(p)` into its unit root `a` and the
/// other root `b`. Without an explicit place the smallest square root of
/// the discriminant's squarefree part mod `p` is used as the branch.
pub fn ordinary_gl2(
    a_p: &AlgebraicNumber,
    c: i64,
    p: u64,
    chi_p: &BigRational,
    place: Option<PadicPlace>,
) -> Result<GL2HeckeParams, HeckeError> {
    check_prime(p)?;
    if c < 1 {
        return Err(HeckeError::BadWeight("c >= 1".into()));
    }
    let ap = a_p.as_rational().ok_or_else(|| HeckeError::HigherDegree(a_p.to_string()))?;
    if chi_p.is_zero() || arith::val_rat(chi_p, p) != Some(0) {
        return Err(HeckeError::NotUnit(crate::quadratic::fmt_rat(chi_p)));
    }
    let norm = BigRational::from_integer(arith::big_pow(p, (c - 1) as u32)) * chi_p;
    let disc = ap * ap - &norm * BigRational::from_integer(BigInt::from(4));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let (r1, r2) = match arith::rational_sqrt(&disc) {
        Some(s) => (
            AlgebraicNumber::rational((ap + &s) * &half),
            AlgebraicNumber::rational((ap - &s) * &half),
        ),
        None => {
            let (r, d) = arith::squarefree_part(&disc);
            let x = ap * &half;
            let y = r * &half;
            (AlgebraicNumber::new(x.clone(), y.clone(), d.clone())?, AlgebraicNumber::new(x, -y, d)?)
        }
    };
    let place = place.unwrap_or_else(|| PadicPlace::new(p));
    let branch = place_for(p, place.branch, &[&r1])?.branch;
    let pl = PadicPlace { p, branch };
    let (a, b) = if r1.valuation(&pl)?.is_zero() {
        (r1, r2)
    } else if r2.valuation(&pl)?.is_zero() {
        (r2, r1)
    } else {
        return Err(HeckeError::NotOrdinary(p));
    };
    GL2HeckeParams::new(p, c, a, b, AlgebraicNumber::rational(chi_p.clone()), branch)
}
