use gpatlas::characters::DirichletCharacter;
use gpatlas::qexp::{corpus, hecke_t, p_deplete, p_stabilize, theta_power, u_p, DynSeries, QExpError, QExpansion};
use gpatlas::ring::{Rationals, ResidueRing};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn series(coeffs: Vec<i64>, k: i64) -> QExpansion<Rationals> {
    let ints: Vec<BigInt> = coeffs.into_iter().map(BigInt::from).collect();
    QExpansion::from_integers(Rationals, &ints, k, DirichletCharacter::trivial(1).unwrap(), 1).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-100i64..100, 150..220)
}

proptest! {
    #[test]
    fn hecke_operators_commute(c in coeffs(), k in 2i64..12) {
        let f = series(c, k);
        for (l, m) in [(2u64, 3u64), (2, 5), (3, 7)] {
            let a = hecke_t(&hecke_t(&f, l).unwrap(), m).unwrap();
            let b = hecke_t(&hecke_t(&f, m).unwrap(), l).unwrap();
            let n = a.truncation().min(b.truncation());
            prop_assert_eq!(a.truncate(n).coefficients().to_vec(), b.truncate(n).coefficients().to_vec());
        }
    }

    #[test]
    fn u_p_commutes_with_t_l(c in coeffs()) {
        let f = series(c, 4);
        let a = u_p(&hecke_t(&f, 2).unwrap(), 5).unwrap();
        let b = hecke_t(&u_p(&f, 5).unwrap(), 2).unwrap();
        let n = a.truncation().min(b.truncation());
        prop_assert_eq!(a.truncate(n).coefficients().to_vec(), b.truncate(n).coefficients().to_vec());
    }

    #[test]
    fn depletion_is_idempotent(c in coeffs(), p in prop::sample::select(vec![3u64, 5, 7])) {
        let f = series(c, 2);
        let once = p_deplete(&f, p).unwrap();
        prop_assert_eq!(p_deplete(&once, p).unwrap().coefficients().to_vec(), once.coefficients().to_vec());
        prop_assert!(u_p(&once, p).unwrap().is_zero());
    }

    #[test]
    fn theta_is_additive_in_t(c in coeffs(), s in 0i64..4, t in 0i64..4) {
        let f = series(c, 2);
        let a = theta_power(&theta_power(&f, s).unwrap(), t).unwrap();
        let b = theta_power(&f, s + t).unwrap();
        prop_assert_eq!(a.coefficients(), b.coefficients());
        prop_assert_eq!(b.weight(), 2 + 2 * (s + t));
    }

    #[test]
    fn records_round_trip(c in coeffs()) {
        let f = series(c, 6);
        let rec = f.to_record();
        let back = DynSeries::from_record(&rec).unwrap();
        prop_assert_eq!(back.to_record(), rec);
    }
}

#[test]
fn eisenstein_series_are_eigenforms() {
    for k in [4u32, 6, 8, 12] {
        let e = corpus::eisenstein_sigma(k, 400);
        for l in [2u64, 3, 5, 7] {
            let t = hecke_t(&e, l).unwrap();
            let eig = BigRational::from_integer(corpus::sigma(k - 1, l));
            let n = t.truncation();
            assert_eq!(t.coefficients(), e.truncate(n).scale(&eig).coefficients(), "k = {k}, l = {l}");
        }
    }
}

#[test]
fn stabilising_an_eisenstein_series() {
    // E_4 at p = 5: the unit root is 1 and the other root 5^3
    let e = corpus::eisenstein_sigma(4, 300);
    let ring = ResidueRing::new(5, 6).unwrap();
    // the constant term 1/240 is not 5-integral; drop it
    let mut ints = vec![BigInt::from(0)];
    for c in &e.coefficients()[1..] {
        ints.push(ring.from_rational(c).unwrap());
    }
    let f = QExpansion::new(ring.clone(), ints, 4, DirichletCharacter::trivial(1).unwrap(), 1).unwrap();
    let st = p_stabilize(&f, 5).unwrap();
    assert_eq!(st.alpha, BigInt::from(1));
    assert_eq!(st.beta, BigInt::from(125));
    let up = u_p(&st.form, 5).unwrap();
    assert_eq!(up.coefficients(), st.form.truncate(up.truncation()).coefficients());
}

#[test]
fn short_series_are_refused() {
    let f = series(vec![0, 1, 2], 2);
    assert!(matches!(hecke_t(&f, 5), Err(QExpError::TruncationTooShort { .. })));
}
