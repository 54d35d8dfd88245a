//! The Euler factor `prod (1 - p^w / xi)` over the contributing eigenvalues,
//! the eight-factor region-`f` formula, and the local zeta constants.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::characters::ClassicalPoint;
use crate::hecke_data::{GL2HeckeParams, GSp4HeckeParams, HeckeError};
use crate::panchishkin::{contributing_set, printed_row, ConstituentLabel, LabelSet};
use crate::quadratic::{AlgebraicNumber, FieldError, PadicPlace};
use crate::weights_regions::{Region, Weights};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error("parameters use different primes: {0:?}")]
    PrimeMismatch(Vec<u64>),
    #[error("weights {weights} do not match the Hecke data ({what})")]
    WeightMismatch { weights: Weights, what: String },
    #[error("{0} is not ordinary with the expected valuations")]
    NotOrdinary(&'static str),
    #[error("eigenvalue {label} equals p^w; the factor is degenerate")]
    ZeroDenominator { label: ConstituentLabel },
    #[error("weights {0} lie in region {1}, not f")]
    WrongRegion(Weights, Region),
    #[error("no local zeta constant is known for region {0}")]
    Unsupported(Region),
    #[error("{0} violates the Ramanujan bound")]
    NotTempered(String),
}

/// Weights together with Hecke data at one prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerInput {
    weights: Weights,
    gsp4: GSp4HeckeParams,
    gl2_1: GL2HeckeParams,
    gl2_2: GL2HeckeParams,
    place: PadicPlace,
}

impl EulerInput {
    pub fn new(
        weights: Weights,
        gsp4: GSp4HeckeParams,
        gl2_1: GL2HeckeParams,
        gl2_2: GL2HeckeParams,
    ) -> Result<Self, EulerError> {
        let ps = vec![gsp4.p, gl2_1.p, gl2_2.p];
        if ps.iter().any(|&p| p != gsp4.p) {
            return Err(EulerError::PrimeMismatch(ps));
        }
        let checks = [
            (gsp4.k1 == weights.k1 && gsp4.k2 == weights.k2, "k1, k2"),
            (gl2_1.c == weights.c1, "c1"),
            (gl2_2.c == weights.c2, "c2"),
        ];
        for (ok, what) in checks {
            if !ok {
                return Err(EulerError::WeightMismatch { weights, what: what.into() });
            }
        }
        if !gsp4.is_borel_ordinary() {
            return Err(EulerError::NotOrdinary("the GSp4 data"));
        }
        if !gl2_1.is_ordinary() {
            return Err(EulerError::NotOrdinary("the first GL2 factor"));
        }
        if !gl2_2.is_ordinary() {
            return Err(EulerError::NotOrdinary("the second GL2 factor"));
        }
        let place = merged_place(&[&gsp4.place, &gl2_1.place, &gl2_2.place])?;
        Ok(EulerInput { weights, gsp4, gl2_1, gl2_2, place })
    }

    /// Monomial data `alpha = 1, beta = p^(k2-2), ...`, `a_i = 1, b_i = p^(c_i - 1)`.
    pub fn monomial(weights: Weights, p: u64) -> Result<Self, EulerError> {
        Self::new(
            weights,
            GSp4HeckeParams::monomial(p, weights.k1, weights.k2)?,
            GL2HeckeParams::monomial(p, weights.c1)?,
            GL2HeckeParams::monomial(p, weights.c2)?,
        )
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn p(&self) -> u64 {
        self.gsp4.p
    }

    pub fn gsp4(&self) -> &GSp4HeckeParams {
        &self.gsp4
    }

    pub fn gl2(&self) -> [&GL2HeckeParams; 2] {
        [&self.gl2_1, &self.gl2_2]
    }

    pub fn place(&self) -> &PadicPlace {
        &self.place
    }

    /// `param_i * gl1_j * gl2_k`.
    pub fn eigenvalue(&self, l: ConstituentLabel) -> Result<AlgebraicNumber, EulerError> {
        let x = self.gsp4.params()[l.i as usize];
        let a = [&self.gl2_1.a, &self.gl2_1.b][l.j as usize];
        let b = [&self.gl2_2.a, &self.gl2_2.b][l.k as usize];
        Ok(x.mul(a)?.mul(b)?)
    }

    pub fn p_to_w(&self) -> AlgebraicNumber {
        AlgebraicNumber::prime_power(self.p(), self.weights.w())
    }

    /// Every Hecke parameter has absolute value `p^(weight/2)` in every
    /// complex embedding, and `chi(p)` has absolute value 1.
    pub fn check_tempered(&self) -> Result<(), EulerError> {
        let p = self.p();
        let (k1, k2) = (self.weights.k1, self.weights.k2);
        for x in self.gsp4.params() {
            if !has_absolute_value(x, p, k1 + k2 - 3) {
                return Err(EulerError::NotTempered(format!("GSp4 parameter {x}")));
            }
        }
        if !has_absolute_value(&self.gsp4.chi_p, p, 0) {
            return Err(EulerError::NotTempered(format!("chi(p) = {}", self.gsp4.chi_p)));
        }
        for g in self.gl2() {
            for x in [&g.a, &g.b] {
                if !has_absolute_value(x, p, g.c - 1) {
                    return Err(EulerError::NotTempered(format!("GL2 parameter {x}")));
                }
            }
        }
        Ok(())
    }
}

fn merged_place(places: &[&PadicPlace]) -> Result<PadicPlace, EulerError> {
    let mut out = places[0].clone();
    for pl in &places[1..] {
        match (out.branch, pl.branch) {
            (Some(a), Some(b)) if a != b => return Err(HeckeError::BranchConflict(a, b).into()),
            (None, Some(_)) => out.branch = pl.branch,
            _ => {}
        }
    }
    Ok(out)
}

/// `|sigma(x)|^2 = p^e` for every complex embedding `sigma`.
fn has_absolute_value(x: &AlgebraicNumber, p: u64, e: i64) -> bool {
    let target = AlgebraicNumber::prime_power(p, e);
    if x.d().is_negative() {
        return AlgebraicNumber::rational(x.norm()) == target;
    }
    // real embeddings: x and its conjugate
    x.pow(2) == target && x.conj().pow(2) == target
}

/// Exact value together with its valuation at the chosen place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerValue {
    pub value: AlgebraicNumber,
    pub valuation: String,
    pub factors: usize,
}

impl EulerValue {
    fn new(value: AlgebraicNumber, place: &PadicPlace, factors: usize) -> Result<Self, EulerError> {
        let v: Rational64 = value.valuation(place)?;
        let valuation = if *v.denom() == 1 { v.numer().to_string() } else { v.to_string() };
        Ok(EulerValue { value, valuation, factors })
    }
}

/// `prod (1 - p^w / xi)` over `set`.
pub fn euler_factor_for_set(input: &EulerInput, set: LabelSet) -> Result<AlgebraicNumber, EulerError> {
    let pw = input.p_to_w();
    let one = AlgebraicNumber::one();
    let mut acc = AlgebraicNumber::one();
    for l in set.iter() {
        let xi = input.eigenvalue(l)?;
        if xi == pw {
            return Err(EulerError::ZeroDenominator { label: l });
        }
        acc = acc.mul(&one.sub(&pw.div(&xi)?)?)?;
    }
    Ok(acc)
}

pub fn euler_factor(input: &EulerInput) -> Result<AlgebraicNumber, EulerError> {
    euler_factor_for_set(input, contributing_set(&input.weights))
}

pub fn euler_factor_with_valuation(input: &EulerInput, strict: bool) -> Result<EulerValue, EulerError> {
    if strict {
        input.check_tempered()?;
    }
    let set = contributing_set(&input.weights);
    EulerValue::new(euler_factor_for_set(input, set)?, &input.place, set.len())
}

/// The factor for the contributing set printed for `region`, whatever
/// region the weights lie in.
pub fn euler_factor_in_region(input: &EulerInput, region: Region) -> Result<EulerValue, EulerError> {
    let (block, _) = printed_row(region);
    let mut set = LabelSet::default();
    for (n, &on) in block.iter().enumerate() {
        let l = ConstituentLabel::from_index(n as u8);
        set.insert(if on { l } else { l.partner() });
    }
    EulerValue::new(euler_factor_for_set(input, set)?, &input.place, set.len())
}

/// The factor at a classical point: empty product when both twist
/// characters are ramified at `p`.
pub fn euler_factor_for_point(input: &EulerInput, point: &ClassicalPoint) -> Result<AlgebraicNumber, EulerError> {
    if point.is_fully_ramified() {
        return Ok(AlgebraicNumber::one());
    }
    euler_factor(input)
}

/// The eight-factor product over `{alpha, beta} x {a1, b1} x {a2, b2}`,
/// evaluated as `prod (xi - p^w) / prod xi`.
pub fn euler_factor_f_closed_form(input: &EulerInput) -> Result<AlgebraicNumber, EulerError> {
    let region = input.weights.classify();
    if region != Region::F {
        return Err(EulerError::WrongRegion(input.weights, region));
    }
    let pw = input.p_to_w();
    let (g1, g2) = (&input.gl2_1, &input.gl2_2);
    let mut num = AlgebraicNumber::one();
    let mut den = AlgebraicNumber::one();
    for (i, x) in [&input.gsp4.alpha, &input.gsp4.beta].into_iter().enumerate() {
        // printed order: a1a2, b1a2, a1b2, b1b2
        for (k, y2) in [&g2.a, &g2.b].into_iter().enumerate() {
            for (j, y1) in [&g1.a, &g1.b].into_iter().enumerate() {
                let xi = x.mul(y1)?.mul(y2)?;
                let d = xi.sub(&pw)?;
                if d.is_zero() {
                    return Err(EulerError::ZeroDenominator { label: ConstituentLabel::new(i as u8, j as u8, k as u8) });
                }
                num = num.mul(&d)?;
                den = den.mul(&xi)?;
            }
        }
    }
    Ok(num.div(&den)?)
}

/// The constant relating the local zeta integral to the Euler factor in
/// regions `f` and `e`, with `q = p`.
pub fn zeta_constant(region: Region, p: u64) -> Result<BigRational, EulerError> {
    let q = BigRational::from_integer(BigInt::from(p));
    let one = BigRational::one();
    match region {
        Region::F => {
            let q3 = &q * &q * &q;
            let a = &q + &one;
            Ok(q3 / (&a * &a * (&q - &one)))
        }
        Region::E => {
            let q2 = &q * &q;
            let b = &q2 - &one;
            Ok(&q2 * &q2 / (&b * &b))
        }
        r => Err(EulerError::Unsupported(r)),
    }
}

/// Whether the factor is nonzero. When every contributing eigenvalue has
/// valuation below `w`, each factor is `1` minus a non-unit and no
/// evaluation is needed.
pub fn crystalline_nonvanishing(input: &EulerInput) -> Result<bool, EulerError> {
    Ok(nonvanishing_with_path(input)?.0)
}

/// Also reports whether the fast path was taken.
pub fn nonvanishing_with_path(input: &EulerInput) -> Result<(bool, bool), EulerError> {
    let w = Rational64::from_integer(input.weights.w());
    let set = contributing_set(&input.weights);
    let mut strict = true;
    for l in set.iter() {
        if input.eigenvalue(l)?.valuation(&input.place)? >= w {
            strict = false;
            break;
        }
    }
    if strict {
        return Ok((true, true));
    }
    Ok((!euler_factor(input)?.is_zero(), false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pinned() -> EulerInput {
        EulerInput::monomial(Weights::new(8, 4, 2, 2).unwrap(), 2).unwrap()
    }

    #[test]
    fn pinned_example_both_paths() {
        let e = pinned();
        assert_eq!(euler_factor(&e).unwrap(), AlgebraicNumber::int(3_075_975));
        assert_eq!(euler_factor_f_closed_form(&e).unwrap(), AlgebraicNumber::int(3_075_975));
        assert!(crystalline_nonvanishing(&e).unwrap());
    }

    #[test]
    fn closed_form_needs_region_f() {
        let e = EulerInput::monomial(Weights::new(3, 3, 2, 2).unwrap(), 5).unwrap();
        assert!(matches!(euler_factor_f_closed_form(&e), Err(EulerError::WrongRegion(..))));
    }

    #[test]
    fn zeta_constants_at_5() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(zeta_constant(Region::F, 5).unwrap(), r(125, 144));
        assert_eq!(zeta_constant(Region::E, 5).unwrap(), r(625, 576));
        assert_eq!(zeta_constant(Region::C, 5), Err(EulerError::Unsupported(Region::C)));
    }

    #[test]
    fn monomial_data_is_not_tempered() {
        assert!(matches!(pinned().check_tempered(), Err(EulerError::NotTempered(_))));
    }
}
