//! Dirichlet characters in discrete-log form, weight characters of `Z_p^x`,
//! and classical points of a pair of Hida families.
//!
//! Every prime-power factor `l^e` of the modulus carries a fixed basis of
//! `(Z/l^e)^x`: the smallest primitive root for odd `l`, and `(-1, 5)` for
//! powers of two. A character is the vector of exponents `x_i` with
//! `chi(g_i) = exp(2 pi i x_i / n_i)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("p = 2 is not supported here; p must be odd")]
    EvenPrime,
    #[error("modulus {modulus} is not a power of {p}")]
    NotPrimePower { modulus: u64, p: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("bad exponent data for modulus {0}")]
    BadExponents(u64),
    #[error("cannot lift a character mod {from} to modulus {to}")]
    NotAMultiple { from: u64, to: u64 },
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("residue classes inconsistent: {0}")]
    ResidueClass(String),
    #[error("tau index {index} out of range ({available} square roots available)")]
    TauIndexOutOfRange { index: usize, available: usize },
    #[error("{0} is not a unit")]
    NotAUnit(BigInt),
    #[error("characters live over different primes ({0} and {1})")]
    PrimeMismatch(u64, u64),
}

/// `exp(2 pi i num/den)`, stored as a reduced fraction in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 2 }
    }

    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let num = num % den;
        let g = arith::gcd(num, den).max(1);
        RootOfUnity { num: num / g, den: den / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// The order of this root of unity.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let den = arith::lcm(self.den, other.den);
        let num = (self.num as u128 * (den / self.den) as u128
            + other.num as u128 * (den / other.den) as u128)
            % den as u128;
        RootOfUnity::new(num as u64, den)
    }

    pub fn pow(&self, e: u64) -> Self {
        let num = (self.num as u128 * e as u128 % self.den as u128) as u64;
        RootOfUnity::new(num, self.den)
    }

    pub fn inv(&self) -> Self {
        RootOfUnity::new(self.den - self.num, self.den)
    }

    /// `Some(+1)` or `Some(-1)` for real values.
    pub fn sign(&self) -> Option<i8> {
        match self.den {
            1 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign() {
            Some(1) => write!(f, "1"),
            Some(_) => write!(f, "-1"),
            None => write!(f, "zeta_{}^{}", self.den, self.num),
        }
    }
}

/// The value of a Dirichlet character at an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharValue {
    Zero,
    Root(RootOfUnity),
}

impl CharValue {
    pub fn root(&self) -> Option<RootOfUnity> {
        match self {
            CharValue::Zero => None,
            CharValue::Root(r) => Some(*r),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (CharValue::Root(a), CharValue::Root(b)) => CharValue::Root(a.mul(b)),
            _ => CharValue::Zero,
        }
    }
}

/// Basis and discrete-log table for `(Z/l^e)^x`.
#[derive(Debug)]
struct UnitGroup {
    prime: u64,
    power: u32,
    modulus: u64,
    gens: Vec<u64>,
    orders: Vec<u64>,
    // logs[a * rank + i] = exponent of gens[i] in a; u32::MAX marks non-units
    logs: Vec<u32>,
}

impl UnitGroup {
    fn new(prime: u64, power: u32) -> Self {
        let modulus = prime.pow(power);
        let (gens, orders) = if prime == 2 {
            match power {
                0 | 1 => (vec![], vec![]),
                2 => (vec![3], vec![2]),
                _ => (vec![modulus - 1, 5], vec![2, 1 << (power - 2)]),
            }
        } else if power == 0 {
            (vec![], vec![])
        } else {
            (
                vec![arith::smallest_primitive_root(prime, power)],
                vec![arith::phi_prime_power(prime, power)],
            )
        };
        let rank = gens.len();
        let mut logs = vec![u32::MAX; modulus as usize * rank.max(1)];
        if rank == 0 {
            // the trivial group still needs unit detection in `log`
        } else if rank == 1 {
            let mut cur = 1 % modulus;
            for x in 0..orders[0] {
                logs[cur as usize] = x as u32;
                cur = cur * gens[0] % modulus;
            }
        } else {
            let mut sign = 1 % modulus;
            for s in 0..orders[0] {
                let mut cur = sign;
                for x in 0..orders[1] {
                    logs[cur as usize * 2] = s as u32;
                    logs[cur as usize * 2 + 1] = x as u32;
                    cur = cur * gens[1] % modulus;
                }
                sign = sign * gens[0] % modulus;
            }
        }
        UnitGroup { prime, power, modulus, gens, orders, logs }
    }

    fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Exponent of the group (lcm of component orders).
    fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &n| arith::lcm(acc, n))
    }

    fn log(&self, a: u64) -> Option<Vec<u64>> {
        let a = a % self.modulus;
        if self.modulus > 1 && a % self.prime == 0 {
            return None;
        }
        let rank = self.rank();
        if rank == 0 {
            return Some(vec![]);
        }
        let base = a as usize * rank;
        Some(self.logs[base..base + rank].iter().map(|&x| x as u64).collect())
    }
}

#[derive(Clone)]
struct LocalChar {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
}

impl LocalChar {
    fn eval_unit(&self, a: u64) -> Option<RootOfUnity> {
        let logs = self.group.log(a)?;
        let mut r = RootOfUnity::one();
        for ((x, e), n) in logs.iter().zip(&self.exps).zip(&self.group.orders) {
            let num = (*x as u128 * *e as u128 % *n as u128) as u64;
            r = r.mul(&RootOfUnity::new(num, *n));
        }
        Some(r)
    }

    fn key(&self) -> (u64, u32, &[u64]) {
        (self.group.prime, self.group.power, &self.exps)
    }

    fn from_values(group: Arc<UnitGroup>, value_at: impl Fn(u64) -> RootOfUnity) -> LocalChar {
        let exps = group
            .gens
            .iter()
            .zip(&group.orders)
            .map(|(&g, &n)| {
                let r = value_at(g);
                debug_assert_eq!(n % r.order(), 0);
                r.num() * (n / r.order())
            })
            .collect();
        LocalChar { group, exps }
    }
}

/// A Dirichlet character modulo `M`.
#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    locals: Vec<LocalChar>,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.locals.len() == other.locals.len()
            && self.locals.iter().zip(&other.locals).all(|(a, b)| a.key() == b.key())
    }
}

impl Eq for DirichletCharacter {}

impl Hash for DirichletCharacter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
        for l in &self.locals {
            l.key().hash(state);
        }
    }
}

impl PartialOrd for DirichletCharacter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DirichletCharacter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus.cmp(&other.modulus).then_with(|| {
            let a: Vec<_> = self.locals.iter().map(|l| l.key()).collect();
            let b: Vec<_> = other.locals.iter().map(|l| l.key()).collect();
            a.cmp(&b)
        })
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi mod {} [", self.modulus)?;
        for (i, l) in self.locals.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}^{}: {:?}", l.group.prime, l.group.power, l.exps)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl DirichletCharacter {
    pub fn trivial(modulus: u64) -> Result<Self, CharacterError> {
        let groups = Self::groups_for(modulus)?;
        let locals = groups
            .into_iter()
            .map(|g| LocalChar { exps: vec![0; g.rank()], group: g })
            .collect();
        Ok(DirichletCharacter { modulus, locals })
    }

    /// Build from one exponent vector per prime-power factor of `modulus`,
    /// factors listed in increasing order of the prime.
    pub fn from_exponents(modulus: u64, exponents: Vec<Vec<u64>>) -> Result<Self, CharacterError> {
        let groups = Self::groups_for(modulus)?;
        if groups.len() != exponents.len() {
            return Err(CharacterError::BadExponents(modulus));
        }
        let mut locals = Vec::with_capacity(groups.len());
        for (g, exps) in groups.into_iter().zip(exponents) {
            if exps.len() != g.rank() {
                return Err(CharacterError::BadExponents(modulus));
            }
            let exps = exps.iter().zip(&g.orders).map(|(e, n)| e % n).collect();
            locals.push(LocalChar { group: g, exps });
        }
        Ok(DirichletCharacter { modulus, locals })
    }

    /// The character mod `p^e` sending the smallest primitive root to
    /// `exp(2 pi i x / phi(p^e))`.
    pub fn from_generator_exponent(p: u64, e: u32, x: u64) -> Result<Self, CharacterError> {
        check_odd_prime(p)?;
        if e == 0 {
            return Self::trivial(1);
        }
        Self::from_exponents(p.pow(e), vec![vec![x]])
    }

    /// The quadratic character mod an odd prime.
    pub fn legendre(p: u64) -> Result<Self, CharacterError> {
        check_odd_prime(p)?;
        Self::from_generator_exponent(p, 1, (p - 1) / 2)
    }

    fn groups_for(modulus: u64) -> Result<Vec<Arc<UnitGroup>>, CharacterError> {
        if modulus == 0 {
            return Err(CharacterError::ZeroModulus);
        }
        Ok(arith::factor(modulus)
            .into_iter()
            .map(|(l, e)| Arc::new(UnitGroup::new(l, e)))
            .collect())
    }

    /// Every character mod `modulus`, in a fixed order.
    pub fn all_mod(modulus: u64) -> Result<Vec<Self>, CharacterError> {
        let groups = Self::groups_for(modulus)?;
        let mut choices: Vec<Vec<Vec<u64>>> = vec![vec![]];
        for g in &groups {
            let mut local_choices: Vec<Vec<u64>> = vec![vec![]];
            for &n in &g.orders {
                local_choices = local_choices
                    .into_iter()
                    .flat_map(|v| {
                        (0..n).map(move |x| {
                            let mut w = v.clone();
                            w.push(x);
                            w
                        })
                    })
                    .collect();
            }
            choices = choices
                .into_iter()
                .flat_map(|v| {
                    local_choices.iter().map(move |lc| {
                        let mut w = v.clone();
                        w.push(lc.clone());
                        w
                    })
                })
                .collect();
        }
        Ok(choices
            .into_iter()
            .map(|exps| DirichletCharacter {
                modulus,
                locals: groups
                    .iter()
                    .zip(exps)
                    .map(|(g, e)| LocalChar { group: g.clone(), exps: e })
                    .collect(),
            })
            .collect())
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(prime, power, exponents)` per prime-power factor.
    pub fn components(&self) -> Vec<(u64, u32, Vec<u64>)> {
        self.locals
            .iter()
            .map(|l| (l.group.prime, l.group.power, l.exps.clone()))
            .collect()
    }

    pub fn evaluate(&self, a: i64) -> CharValue {
        let a = a.rem_euclid(self.modulus as i64) as u64;
        self.evaluate_residue(a)
    }

    pub fn evaluate_big(&self, a: &BigInt) -> CharValue {
        let a = a.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap_or(0);
        self.evaluate_residue(a)
    }

    fn evaluate_residue(&self, a: u64) -> CharValue {
        if arith::gcd(a, self.modulus) != 1 {
            return CharValue::Zero;
        }
        let mut r = RootOfUnity::one();
        for l in &self.locals {
            match l.eval_unit(a) {
                Some(v) => r = r.mul(&v),
                None => return CharValue::Zero,
            }
        }
        CharValue::Root(r)
    }

    /// `chi(-1)`.
    pub fn parity(&self) -> i8 {
        match self.evaluate(-1) {
            CharValue::Root(r) => r.sign().expect("chi(-1) is real"),
            CharValue::Zero => unreachable!("-1 is a unit"),
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    /// Trivial on all units mod `M` (the modulus may still be larger than 1).
    pub fn is_trivial(&self) -> bool {
        self.locals.iter().all(|l| l.exps.iter().all(|&e| e == 0))
    }

    pub fn order(&self) -> u64 {
        self.locals.iter().fold(1, |acc, l| {
            l.exps.iter().zip(&l.group.orders).fold(acc, |acc, (&e, &n)| {
                arith::lcm(acc, n / arith::gcd(e, n))
            })
        })
    }

    /// Exponent of `(Z/M)^x`; the order of any character divides it.
    pub fn group_exponent(&self) -> u64 {
        self.locals.iter().fold(1, |acc, l| arith::lcm(acc, l.group.exponent()))
    }

    /// The same character viewed modulo a multiple of its modulus.
    pub fn lift(&self, modulus: u64) -> Result<Self, CharacterError> {
        if modulus == 0 || modulus % self.modulus != 0 {
            return Err(CharacterError::NotAMultiple { from: self.modulus, to: modulus });
        }
        if modulus == self.modulus {
            return Ok(self.clone());
        }
        let groups = Self::groups_for(modulus)?;
        let locals = groups
            .into_iter()
            .map(|g| match self.locals.iter().find(|l| l.group.prime == g.prime) {
                Some(old) => LocalChar::from_values(g, |x| {
                    old.eval_unit(x).expect("generator is a unit")
                }),
                None => LocalChar { exps: vec![0; g.rank()], group: g },
            })
            .collect();
        Ok(DirichletCharacter { modulus, locals })
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = arith::lcm(self.modulus, other.modulus);
        let a = self.lift(m).expect("lcm is a multiple");
        let b = other.lift(m).expect("lcm is a multiple");
        let locals = a
            .locals
            .iter()
            .zip(&b.locals)
            .map(|(x, y)| LocalChar {
                group: x.group.clone(),
                exps: x
                    .exps
                    .iter()
                    .zip(&y.exps)
                    .zip(&x.group.orders)
                    .map(|((e, f), n)| (e + f) % n)
                    .collect(),
            })
            .collect();
        DirichletCharacter { modulus: m, locals }
    }

    pub fn inv(&self) -> Self {
        let locals = self
            .locals
            .iter()
            .map(|l| LocalChar {
                group: l.group.clone(),
                exps: l.exps.iter().zip(&l.group.orders).map(|(e, n)| (n - e) % n).collect(),
            })
            .collect();
        DirichletCharacter { modulus: self.modulus, locals }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: u64) -> Self {
        let locals = self
            .locals
            .iter()
            .map(|l| LocalChar {
                group: l.group.clone(),
                exps: l
                    .exps
                    .iter()
                    .zip(&l.group.orders)
                    .map(|(e, n)| (*e as u128 * k as u128 % *n as u128) as u64)
                    .collect(),
            })
            .collect();
        DirichletCharacter { modulus: self.modulus, locals }
    }

    /// The primitive character inducing this one.
    pub fn primitive(&self) -> Self {
        let mut modulus = 1;
        let mut locals = Vec::new();
        for l in &self.locals {
            let (prime, power) = (l.group.prime, l.group.power);
            let b = (0..=power)
                .find(|&b| {
                    let step = prime.pow(b);
                    let q = l.group.modulus;
                    (0..q / step)
                        .map(|k| (1 + k * step) % q)
                        .filter(|a| a % prime != 0)
                        .all(|a| l.eval_unit(a).is_some_and(|r| r.is_one()))
                })
                .unwrap_or(power);
            let conductor = prime.pow(b);
            if conductor == 1 {
                continue;
            }
            let g = Arc::new(UnitGroup::new(prime, b));
            locals.push(LocalChar::from_values(g, |x| l.eval_unit(x).expect("unit")));
            modulus *= conductor;
        }
        DirichletCharacter { modulus, locals }
    }

    pub fn conductor(&self) -> u64 {
        self.primitive().modulus
    }

    /// Equality as characters of the profinite units: same primitive character.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.primitive() == other.primitive()
    }

    /// The `l`-primary component, as a character mod the `l`-part of `M`.
    pub fn local_part(&self, prime: u64) -> Self {
        match self.locals.iter().find(|l| l.group.prime == prime) {
            Some(l) => DirichletCharacter { modulus: l.group.modulus, locals: vec![l.clone()] },
            None => DirichletCharacter { modulus: 1, locals: vec![] },
        }
    }

    pub fn to_record(&self) -> CharacterRecord {
        CharacterRecord {
            modulus: self.modulus,
            components: self
                .locals
                .iter()
                .map(|l| LocalRecord {
                    prime: l.group.prime,
                    power: l.group.power,
                    exponents: l.exps.clone(),
                })
                .collect(),
        }
    }

    pub fn from_record(rec: &CharacterRecord) -> Result<Self, CharacterError> {
        let factors = arith::factor(rec.modulus.max(1));
        if rec.modulus == 0
            || factors.len() != rec.components.len()
            || factors
                .iter()
                .zip(&rec.components)
                .any(|((l, e), c)| *l != c.prime || *e != c.power)
        {
            return Err(CharacterError::BadExponents(rec.modulus));
        }
        Self::from_exponents(
            rec.modulus,
            rec.components.iter().map(|c| c.exponents.clone()).collect(),
        )
    }
}

/// Canonical serialized form of a Dirichlet character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    pub modulus: u64,
    #[serde(default)]
    pub components: Vec<LocalRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalRecord {
    pub prime: u64,
    pub power: u32,
    pub exponents: Vec<u64>,
}

impl Serialize for DirichletCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirichletCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = CharacterRecord::deserialize(d)?;
        DirichletCharacter::from_record(&rec).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_odd_prime(p: u64) -> Result<(), CharacterError> {
    if p == 2 {
        return Err(CharacterError::EvenPrime);
    }
    if !arith::is_prime(p) {
        return Err(CharacterError::NotPrime(p));
    }
    Ok(())
}

fn p_power_exponent(modulus: u64, p: u64) -> Result<u32, CharacterError> {
    let mut m = modulus;
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    if m != 1 {
        return Err(CharacterError::NotPrimePower { modulus, p });
    }
    Ok(e)
}

/// All `psi` with `psi^2 = chi` as characters of `Z_p^x`, among characters of
/// modulus dividing `p * modulus(chi)`, returned in primitive form and sorted.
pub fn square_roots(chi: &DirichletCharacter, p: u64) -> Result<Vec<DirichletCharacter>, CharacterError> {
    check_odd_prime(p)?;
    let a = p_power_exponent(chi.modulus, p)?;
    let target = p.pow(a + 1);
    let lifted = chi.lift(target)?;
    let n = arith::phi_prime_power(p, a + 1);
    let x = lifted.locals[0].exps[0];
    if x % 2 == 1 {
        return Ok(vec![]);
    }
    let mut roots: Vec<DirichletCharacter> = [x / 2, x / 2 + n / 2]
        .iter()
        .map(|&y| {
            DirichletCharacter::from_exponents(target, vec![vec![y]])
                .expect("valid exponent")
                .primitive()
        })
        .collect();
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// The character `x -> x^k chi(x)` of `Z_p^x`, with `chi` of `p`-power modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCharacter {
    p: u64,
    exponent: i64,
    finite_part: DirichletCharacter,
}

impl WeightCharacter {
    pub fn new(p: u64, exponent: i64, finite_part: DirichletCharacter) -> Result<Self, CharacterError> {
        check_odd_prime(p)?;
        p_power_exponent(finite_part.modulus, p)?;
        Ok(WeightCharacter { p, exponent, finite_part })
    }

    /// `x -> x^k` with no finite part.
    pub fn algebraic(p: u64, exponent: i64) -> Result<Self, CharacterError> {
        Self::new(p, exponent, DirichletCharacter::trivial(1)?)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn finite_part(&self) -> &DirichletCharacter {
        &self.finite_part
    }

    /// `(-1)^k chi(-1)`.
    pub fn parity(&self) -> i8 {
        let s = if self.exponent.rem_euclid(2) == 0 { 1 } else { -1 };
        s * self.finite_part.parity()
    }

    /// Value at a unit `u` known mod `p^r`: `u^k mod p^r` together with `chi(u)`.
    /// Requires the conductor of the finite part to divide `p^r`.
    pub fn evaluate(&self, u: &BigInt, r: u32) -> Result<(BigInt, CharValue), CharacterError> {
        let modulus = arith::big_pow(self.p, r);
        let u = u.mod_floor(&modulus);
        if r > 0 && (&u % BigInt::from(self.p)).is_zero() {
            return Err(CharacterError::NotAUnit(u));
        }
        let cond = self.finite_part.conductor();
        if self.p.pow(r) % cond != 0 {
            return Err(CharacterError::NotAMultiple { from: cond, to: self.p.pow(r) });
        }
        let base = if self.exponent >= 0 {
            u.clone()
        } else {
            arith::inv_mod(&u, &modulus).ok_or_else(|| CharacterError::NotAUnit(u.clone()))?
        };
        let power = base.modpow(&BigInt::from(self.exponent.unsigned_abs()), &modulus);
        Ok((power, self.finite_part.primitive().evaluate_big(&u)))
    }
}

/// The residue classes `(c1bar, c2bar)` of the two families and the chosen
/// class `cbar` for the twist. The twist class is never defaulted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistClasses {
    pub p: u64,
    pub c1bar: u64,
    pub c2bar: u64,
    pub cbar: u64,
}

impl TwistClasses {
    pub fn new(p: u64, c1bar: u64, c2bar: u64, cbar: u64) -> Result<Self, CharacterError> {
        check_odd_prime(p)?;
        let m = p - 1;
        if c1bar >= m || c2bar >= m || cbar >= m {
            return Err(CharacterError::ResidueClass(format!("residues must lie in [0, {m})")));
        }
        let sum = c1bar + c2bar;
        let offset = sum % 2;
        if (2 * cbar + offset) % m != sum % m {
            return Err(CharacterError::ResidueClass(format!(
                "2*{cbar} + {offset} is not {sum} mod {m}"
            )));
        }
        Ok(TwistClasses { p, c1bar, c2bar, cbar })
    }

    /// The two admissible twist classes for given family classes.
    pub fn candidates(p: u64, c1bar: u64, c2bar: u64) -> Vec<u64> {
        let m = p - 1;
        (0..m)
            .filter(|c| (2 * c + (c1bar + c2bar) % 2) % m == (c1bar + c2bar) % m)
            .collect()
    }
}

/// A classical point `(c1 + chi1, c2 + chi2)` of the product of two weight
/// spaces together with a choice of `tau`, a square root of `chi1 chi2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalPoint {
    weight1: WeightCharacter,
    weight2: WeightCharacter,
    classes: TwistClasses,
    tau: DirichletCharacter,
    half_sum: i64,
}

impl ClassicalPoint {
    pub fn new(
        w1: WeightCharacter,
        w2: WeightCharacter,
        classes: TwistClasses,
        tau_choice: usize,
    ) -> Result<Self, CharacterError> {
        let p = classes.p;
        check_odd_prime(p)?;
        for w in [&w1, &w2] {
            if w.p != p {
                return Err(CharacterError::PrimeMismatch(w.p, p));
            }
        }
        let (chi1, chi2) = (&w1.finite_part, &w2.finite_part);
        if chi1.parity() * chi2.parity() != 1 {
            return Err(CharacterError::ParityViolation("chi1(-1) chi2(-1) = -1".into()));
        }
        let c_sum = w1.exponent + w2.exponent;
        if c_sum.rem_euclid(2) as u64 != (classes.c1bar + classes.c2bar) % 2 {
            return Err(CharacterError::ParityViolation(format!(
                "c1 + c2 = {c_sum} has the wrong parity for the residue classes ({}, {})",
                classes.c1bar, classes.c2bar
            )));
        }
        let roots = square_roots(&chi1.mul(chi2), p)?;
        assert!(!roots.is_empty(), "an even character always has a square root");
        let tau = roots
            .get(tau_choice)
            .cloned()
            .ok_or(CharacterError::TauIndexOutOfRange { index: tau_choice, available: roots.len() })?;
        Ok(ClassicalPoint { weight1: w1, weight2: w2, classes, tau, half_sum: c_sum.div_euclid(2) })
    }

    pub fn weight1(&self) -> &WeightCharacter {
        &self.weight1
    }

    pub fn weight2(&self) -> &WeightCharacter {
        &self.weight2
    }

    pub fn classes(&self) -> TwistClasses {
        self.classes
    }

    pub fn tau(&self) -> &DirichletCharacter {
        &self.tau
    }

    /// `floor((c1 + c2) / 2)`, the algebraic part of the twist at this point.
    pub fn half_sum(&self) -> i64 {
        self.half_sum
    }

    pub fn p(&self) -> u64 {
        self.classes.p
    }

    pub fn is_crystalline(&self) -> bool {
        self.weight1.finite_part.is_trivial()
            && self.weight2.finite_part.is_trivial()
            && self.tau.is_trivial()
    }

    /// For crystalline points: whether `c1 + c2` lies in the class mod `2p - 2`
    /// singled out by `cbar`. The constructor does not enforce this, since it
    /// needs the family component of each weight.
    pub fn crystalline_class_matches(&self) -> bool {
        let m = 2 * (self.classes.p as i64 - 1);
        let c_sum = self.weight1.exponent + self.weight2.exponent;
        let offset = (self.classes.c1bar + self.classes.c2bar) as i64 % 2;
        (c_sum - 2 * self.classes.cbar as i64 - offset).rem_euclid(m) == 0
    }

    pub fn is_fully_ramified(&self) -> bool {
        let chi1 = &self.weight1.finite_part;
        !self.tau.is_trivial() && !chi1.div(&self.tau).primitive().is_trivial()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order4_mod5() -> DirichletCharacter {
        DirichletCharacter::from_generator_exponent(5, 1, 1).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let t = DirichletCharacter::trivial(1).unwrap();
        assert_eq!(t.evaluate(7), CharValue::Root(RootOfUnity::one()));
        let leg = DirichletCharacter::legendre(5).unwrap();
        assert_eq!(leg.evaluate(2), CharValue::Root(RootOfUnity::minus_one()));
        assert_eq!(leg.evaluate(10), CharValue::Zero);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(DirichletCharacter::trivial(1).unwrap().parity(), 1);
        assert_eq!(DirichletCharacter::legendre(5).unwrap().parity(), 1);
        assert_eq!(order4_mod5().parity(), -1);
    }

    #[test]
    fn square_root_examples() {
        let t = DirichletCharacter::trivial(1).unwrap();
        let r = square_roots(&t, 5).unwrap();
        assert_eq!(r, vec![t.clone(), DirichletCharacter::legendre(5).unwrap()]);
        let r = square_roots(&DirichletCharacter::legendre(5).unwrap(), 5).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|c| c.modulus() == 5 && c.order() == 4));
        assert!(square_roots(&order4_mod5(), 5).unwrap().is_empty());
    }

    #[test]
    fn two_power_groups() {
        let chars = DirichletCharacter::all_mod(16).unwrap();
        assert_eq!(chars.len(), 8);
        let odd = chars.iter().filter(|c| c.parity() == -1).count();
        assert_eq!(odd, 4);
    }

    #[test]
    fn primitive_and_lift() {
        let leg = DirichletCharacter::legendre(5).unwrap();
        let lifted = leg.lift(25).unwrap();
        assert_eq!(lifted.conductor(), 5);
        assert_eq!(lifted.primitive(), leg);
        let t = DirichletCharacter::trivial(35).unwrap();
        assert_eq!(t.primitive(), DirichletCharacter::trivial(1).unwrap());
    }

    #[test]
    fn classical_point_examples() {
        let t = TwistClasses::new(5, 0, 0, 0).unwrap();
        let w = WeightCharacter::algebraic(5, 2).unwrap();
        let pt = ClassicalPoint::new(w.clone(), w.clone(), t, 0).unwrap();
        assert!(pt.tau().is_trivial());
        assert!(pt.is_crystalline());

        let chi = order4_mod5();
        let w1 = WeightCharacter::new(5, 2, chi.clone()).unwrap();
        let w2 = WeightCharacter::new(5, 2, chi.inv()).unwrap();
        assert!(ClassicalPoint::new(w1.clone(), w2, t, 0).is_ok());

        let err = ClassicalPoint::new(w1, w, t, 0).unwrap_err();
        assert!(matches!(err, CharacterError::ParityViolation(_)));
    }

    #[test]
    fn fully_ramified_examples() {
        let chi = order4_mod5();
        let leg = DirichletCharacter::legendre(5).unwrap();
        // chi1 = Legendre, chi2 = Legendre: chi1 chi2 trivial, roots {1, Legendre}
        let w1 = WeightCharacter::new(5, 2, leg.clone()).unwrap();
        let w2 = WeightCharacter::new(5, 2, leg.clone()).unwrap();
        let t = TwistClasses::new(5, 0, 0, 0).unwrap();
        let pt = ClassicalPoint::new(w1.clone(), w2.clone(), t, 0).unwrap();
        assert!(pt.tau().is_trivial());
        assert!(!pt.is_fully_ramified());
        let pt = ClassicalPoint::new(w1, w2, t, 1).unwrap();
        assert_eq!(pt.tau(), &leg);
        assert!(!pt.is_fully_ramified());
        // chi1 = Legendre, chi2 = chi^2 * ... pick chi2 with chi1 chi2 = chi^2 = Legendre,
        // so tau is one of the order-4 characters and chi1 / tau has order 4.
        let w1 = WeightCharacter::new(5, 2, leg.clone()).unwrap();
        let w2 = WeightCharacter::new(5, 2, DirichletCharacter::trivial(1).unwrap()).unwrap();
        let pt = ClassicalPoint::new(w1, w2, t, 0).unwrap();
        assert_eq!(pt.tau().order(), 4);
        assert!(pt.is_fully_ramified());
        assert!(chi.order() == 4);
    }
}
