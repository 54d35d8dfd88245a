//! Small exact-arithmetic helpers shared by the other modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Euler's phi of a prime power `p^e`.
pub fn phi_prime_power(p: u64, e: u32) -> u64 {
    if e == 0 {
        1
    } else {
        (p - 1) * p.pow(e - 1)
    }
}

/// Smallest generator of the cyclic group `(Z/p^e)^x`, `p` odd.
pub fn smallest_primitive_root(p: u64, e: u32) -> u64 {
    let m = p.pow(e);
    let order = phi_prime_power(p, e);
    let order_primes: Vec<u64> = factor(order).into_iter().map(|(q, _)| q).collect();
    (2..m)
        .find(|&g| g % p != 0 && order_primes.iter().all(|&q| pow_mod(g, order / q, m) != 1))
        .unwrap_or(1)
}

pub fn big_pow(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `p`-adic valuation of a nonzero integer.
pub fn val_int(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation of a rational; `None` for zero.
pub fn val_rat(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(val_int(x.numer(), p) as i64 - val_int(x.denom(), p) as i64)
}

/// Reduce a `p`-integral rational into `[0, p^m)`.
pub fn rat_mod(x: &BigRational, p: u64, m: u32) -> Option<BigInt> {
    let modulus = big_pow(p, m);
    let den = x.denom().mod_floor(&modulus);
    let inv = inv_mod(&den, &modulus)?;
    Some((x.numer() * inv).mod_floor(&modulus))
}

pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() && e.gcd != -BigInt::one() {
        return None;
    }
    let x = if e.gcd.is_negative() { -e.x } else { e.x };
    Some(x.mod_floor(m))
}

/// Is `x` a square in `Q`? Returns the nonnegative root.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt(x.numer())?;
    let d = int_sqrt(x.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Write a nonzero rational as `r^2 * d` with `d` a squarefree integer.
pub fn squarefree_part(x: &BigRational) -> (BigRational, BigInt) {
    // x = a/b = a*b / b^2
    let ab = x.numer() * x.denom();
    let sign = if ab.is_negative() { -1 } else { 1 };
    let mut m = ab.abs();
    let mut square = BigInt::one();
    let mut d = BigInt::one();
    let mut q = BigInt::from(2u32);
    while &q * &q <= m {
        let mut e = 0;
        while (&m % &q).is_zero() {
            m /= &q;
            e += 1;
        }
        square *= num_traits::pow(q.clone(), e / 2);
        if e % 2 == 1 {
            d *= &q;
        }
        q += 1;
    }
    d *= m;
    let r = BigRational::new(square, x.denom().clone());
    (r, d * sign)
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

/// Legendre symbol `(a/p)` for odd prime `p`, with `a` coprime to `p`.
pub fn is_square_mod_prime(a: &BigInt, p: u64) -> bool {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0);
    if p == 2 {
        return true;
    }
    pow_mod(r, (p - 1) / 2, p) == 1
}

/// All square roots of `a` modulo an odd prime `p`, smallest first.
pub fn sqrt_mod_prime(a: &BigInt, p: u64) -> Vec<u64> {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0);
    let mut out: Vec<u64> = (0..p).filter(|x| (x * x) % p == r).collect();
    out.dedup();
    out
}

/// Newton-lift a simple root of `poly` (coefficients low to high) from
/// `approx` to a root mod `p^m`. Fails when the derivative is not a unit.
pub fn hensel_lift(poly: &[BigInt], approx: &BigInt, p: u64, m: u32) -> Option<BigInt> {
    let pb = BigInt::from(p);
    let eval = |x: &BigInt| poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
    let deriv = |x: &BigInt| {
        poly.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(BigInt::zero(), |acc, (i, c)| acc * x + c * BigInt::from(i))
    };
    if (eval(approx) % &pb) != BigInt::zero() || (deriv(approx) % &pb).is_zero() {
        return None;
    }
    let modulus = big_pow(p, m);
    let mut x = approx.mod_floor(&modulus);
    let mut prec = 1u32;
    while prec < m {
        prec = (prec * 2).min(m);
        let md = big_pow(p, prec);
        let inv = inv_mod(&deriv(&x).mod_floor(&md), &md)?;
        x = (&x - eval(&x) * inv).mod_floor(&md);
    }
    Some(x.mod_floor(&modulus))
}
