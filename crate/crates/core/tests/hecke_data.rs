use gpatlas::hecke_data::{ordinary_gl2, GL2HeckeParams, GSp4HeckeParams, HeckeError};
use gpatlas::quadratic::{AlgebraicNumber, PadicPlace};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #[test]
    fn monomial_data_round_trip(p in prop::sample::select(vec![3u64, 5, 7, 11]), k2 in 2i64..8, dk in 0i64..6) {
        let g = GSp4HeckeParams::monomial(p, k2 + dk, k2).unwrap();
        prop_assert!(g.is_borel_ordinary() && g.is_klingen_ordinary() && g.is_siegel_ordinary());
        let back = GSp4HeckeParams::from_record(&g.to_record()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn ordinary_roots_multiply_out(p in prop::sample::select(vec![3u64, 5, 7]), c in 1i64..6, u in 1i64..30) {
        prop_assume!(u % p as i64 != 0);
        // a_p = u + p^(c-1)/u has the unit root u when c > 1
        let pc = r(p.pow(c as u32 - 1) as i64);
        let ap = r(u) + &pc / r(u);
        let g = ordinary_gl2(&AlgebraicNumber::rational(ap), c, p, &r(1), None).unwrap();
        prop_assert!(g.is_ordinary());
        prop_assert_eq!(g.a.mul(&g.b).unwrap(), AlgebraicNumber::rational(pc));
        let back = GL2HeckeParams::from_record(&g.to_record(), p).unwrap();
        prop_assert_eq!(back, g);
    }
}

#[test]
fn tau_at_eleven_is_ordinary() {
    let ap = r(534_612);
    let g = ordinary_gl2(&AlgebraicNumber::rational(ap), 12, 11, &r(1), None).unwrap();
    assert!(g.is_ordinary());
}

#[test]
fn products_are_checked() {
    let one = AlgebraicNumber::one();
    let e = GSp4HeckeParams::new(5, 4, 4, one.clone(), one.clone(), one.clone(), one.clone(), one, None);
    assert!(matches!(e, Err(HeckeError::ProductMismatch(_))));
}

#[test]
fn split_primes_need_a_branch() {
    let i = AlgebraicNumber::sqrt_of(BigInt::from(-1)).unwrap();
    let place = PadicPlace::new(5);
    assert!(i.valuation(&place).is_err());
    assert_eq!(i.valuation(&PadicPlace::with_branch(5, 2)).unwrap(), 0.into());
}
