use gpatlas::euler::{
    euler_factor, euler_factor_f_closed_form, euler_factor_in_region, euler_factor_with_valuation, EulerError,
    EulerInput,
};
use gpatlas::hecke_data::{GL2HeckeParams, GSp4HeckeParams};
use gpatlas::quadratic::AlgebraicNumber;
use gpatlas::weights_regions::{Region, Weights};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn pp(p: u64, e: i64) -> AlgebraicNumber {
    AlgebraicNumber::prime_power(p, e)
}

fn gauss(x: i64, y: i64) -> AlgebraicNumber {
    AlgebraicNumber::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()), BigInt::from(-1))
        .unwrap()
}

/// Borel-ordinary data over `Q(i)` at `5 = (2 + i)(2 - i)`, embedding `i -> 2`.
fn input(w: Weights, u: [AlgebraicNumber; 4]) -> Result<EulerInput, String> {
    let p = 5;
    let [u1, u2, u3, u4] = u;
    let top = pp(p, w.k1 + w.k2 - 3);
    let beta = pp(p, w.k2 - 2).mul(&u2).unwrap();
    let g = GSp4HeckeParams::new(
        p,
        w.k1,
        w.k2,
        u1.clone(),
        beta.clone(),
        top.div(&beta).unwrap(),
        top.div(&u1).unwrap(),
        AlgebraicNumber::one(),
        Some(2),
    )
    .map_err(|e| e.to_string())?;
    let gl = |c, a: AlgebraicNumber| {
        let b = pp(p, c - 1).div(&a).unwrap();
        GL2HeckeParams::new(p, c, a, b, AlgebraicNumber::one(), Some(2)).map_err(|e| e.to_string())
    };
    EulerInput::new(w, g, gl(w.c1, u3)?, gl(w.c2, u4)?).map_err(|e| e.to_string())
}

/// `x + y i` with `x + 2y` prime to 5, so a unit at the chosen place.
fn unit() -> impl Strategy<Value = AlgebraicNumber> {
    (-8i64..=8, -8i64..=8).prop_filter_map("unit", |(x, y)| {
        ((x + 2 * y).rem_euclid(5) != 0).then(|| gauss(x, y))
    })
}

fn region_f() -> impl Strategy<Value = Weights> {
    (2i64..=10, 0i64..=8, 1i64..=9, 1i64..=9)
        .prop_filter_map("region f", |(k2, dk, c1, c2)| {
            Weights::new(k2 + dk, k2, c1, c2).ok().filter(|w| w.classify() == Region::F)
        })
}

fn any_weights() -> impl Strategy<Value = Weights> {
    (2i64..=10, 0i64..=8, 1i64..=24, 1i64..=24).prop_filter_map("parity", |(k2, dk, c1, c2)| {
        Weights::new(k2 + dk, k2, c1, c2).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_table(w in region_f(), u in [unit(), unit(), unit(), unit()]) {
        let e = input(w, u).unwrap();
        match (euler_factor(&e), euler_factor_f_closed_form(&e)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(EulerError::ZeroDenominator { .. }), Err(EulerError::ZeroDenominator { .. })) => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn own_region_row_is_the_default(w in any_weights(), u in [unit(), unit(), unit(), unit()]) {
        let e = input(w, u).unwrap();
        if let Ok(v) = euler_factor(&e) {
            prop_assert_eq!(euler_factor_in_region(&e, w.classify()).unwrap().value, v);
        }
    }

    #[test]
    fn swapping_the_gl2_factors(w in any_weights(), u in [unit(), unit(), unit(), unit()]) {
        let [u1, u2, u3, u4] = u;
        let e = input(w, [u1.clone(), u2.clone(), u3.clone(), u4.clone()]).unwrap();
        let m = input(w.mirror(), [u1, u2, u4, u3]).unwrap();
        match (euler_factor(&e), euler_factor(&m)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

#[test]
fn strict_mode_needs_ramanujan() {
    // monomial data are never tempered
    let w = Weights::new(8, 4, 2, 2).unwrap();
    let e = EulerInput::monomial(w, 5).unwrap();
    assert!(matches!(euler_factor_with_valuation(&e, true), Err(EulerError::NotTempered(_))));
    assert!(euler_factor_with_valuation(&e, false).is_ok());
}

#[test]
fn tempered_gaussian_data_pass_strict_mode() {
    // (2 + i) has norm 5: take every parameter to be a power of 2 + i times
    // a power of 2 - i with the right total
    let w = Weights::new(3, 3, 1, 1).unwrap();
    let pi = gauss(2, 1);
    let pib = gauss(2, -1);
    // embedding i -> 2 sends 2 + i to 4 (a unit) and 2 - i to 0
    let pw = |a: u32, b: u32| pi.pow(a).mul(&pib.pow(b)).unwrap();
    let g = GSp4HeckeParams::new(5, 3, 3, pw(3, 0), pw(2, 1), pw(1, 2), pw(0, 3), pw(0, 0), Some(2)).unwrap();
    let gl = || GL2HeckeParams::new(5, 1, AlgebraicNumber::one(), AlgebraicNumber::one(), AlgebraicNumber::one(), Some(2)).unwrap();
    let e = EulerInput::new(w, g, gl(), gl()).unwrap();
    assert!(euler_factor_with_valuation(&e, true).is_ok());
}

#[test]
fn non_ordinary_input_is_rejected() {
    let w = Weights::new(6, 4, 3, 3).unwrap();
    let g = GSp4HeckeParams::monomial(5, 6, 4).unwrap();
    let bad = GL2HeckeParams::new(5, 3, pp(5, 1), pp(5, 1), AlgebraicNumber::one(), None).unwrap();
    let good = GL2HeckeParams::monomial(5, 3).unwrap();
    assert!(matches!(EulerInput::new(w, g, bad, good), Err(EulerError::NotOrdinary(_))));
}
