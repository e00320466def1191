//! Integer and rational primitives: residue symbols, trial-division
//! factorization, Hilbert symbols over `Q` and ramification of rational
//! quaternion algebras.
//!
//! Every input in scope has absolute value well below `10^7`, so plain
//! trial division is used throughout.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// A place of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinite,
}

/// The set of places at which a quaternion algebra over `Q` ramifies.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RamifiedSet {
    pub finite_places: Vec<u64>,
    pub infinite_ramified: bool,
}

impl RamifiedSet {
    /// Product of the finite ramified primes (1 for a split algebra at every
    /// finite place).
    pub fn discriminant(&self) -> u64 {
        self.finite_places.iter().product()
    }

    pub fn is_split(&self) -> bool {
        self.finite_places.is_empty() && !self.infinite_ramified
    }

    pub fn is_valid(&self) -> bool {
        let ascending = self.finite_places.windows(2).all(|w| w[0] < w[1]);
        let count = self.finite_places.len() + usize::from(self.infinite_ramified);
        ascending && count % 2 == 0
    }
}

/// Kronecker symbol `(a | n)`.
pub fn kronecker_symbol(a: i64, n: i64) -> Result<i8> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut a = a as i128;
    let mut n = n as i128;
    let mut result = 1i8;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    // Jacobi symbol for odd positive n.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    Ok(if n == 1 { result } else { 0 })
}

/// Prime factorization of `|n|` as ascending `(prime, exponent)` pairs.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn primes_up_to(limit: u64) -> impl Iterator<Item = u64> {
    (2..=limit).filter(|&n| is_prime(n))
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Squarefree kernel of a nonzero integer, sign preserved.
pub fn squarefree_part_int(n: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let kernel: u64 = factorize(n.unsigned_abs())
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product();
    Ok(n.signum() * kernel as i64)
}

/// The unique squarefree integer `s` with `r / s` a rational square.
pub fn squarefree_part(r: &Rational) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::Zero);
    }
    let num = r.numer().abs().to_u64().ok_or_else(|| Error::Internal("numerator too large".into()))?;
    let den = r.denom().abs().to_u64().ok_or_else(|| Error::Internal("denominator too large".into()))?;
    let mut kernel = 1i64;
    for (p, e) in merge_factorizations(&factorize(num), &factorize(den)) {
        if e % 2 == 1 {
            kernel *= p as i64;
        }
    }
    Ok(if r.is_negative() { -kernel } else { kernel })
}

fn merge_factorizations(a: &[(u64, u32)], b: &[(u64, u32)]) -> Vec<(u64, u32)> {
    let mut all: Vec<(u64, u32)> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for (p, e) in all {
        match out.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => out.push((p, e)),
        }
    }
    out
}

pub fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Exact square root of a rational, if it is a square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &rn * &rn == *n && &rd * &rd == *d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

pub fn is_rational_square(r: &Rational) -> bool {
    rational_sqrt(r).is_some()
}

/// `p`-adic valuation of a nonzero rational.
pub fn valuation(r: &Rational, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = r.numer().abs();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = r.denom().abs();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    v
}

/// Residue of a `p`-integral rational modulo `m` (`m` coprime to the
/// denominator).
pub fn residue_mod(r: &Rational, m: u64) -> Option<u64> {
    let m_big = BigInt::from(m);
    let den = r.denom().mod_floor(&m_big);
    let inv = mod_inverse(den.to_u64()?, m)?;
    let num = r.numer().mod_floor(&m_big).to_u64()?;
    Some(((num as u128 * inv as u128) % m as u128) as u64)
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Hilbert symbol `(a, b)_v`: 1 iff `z^2 = a x^2 + b y^2` has a nontrivial
/// solution over the completion of `Q` at `v`.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero);
    }
    match place {
        Place::Infinite => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(2) => Ok(hilbert_at_two(a, b)),
        Place::Finite(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            Ok(hilbert_at_odd(a, b, p))
        }
    }
}

fn hilbert_at_odd(a: &Rational, b: &Rational, p: u64) -> i8 {
    let alpha = valuation(a, p);
    let beta = valuation(b, p);
    let pr = Rational::from_integer(BigInt::from(p));
    let u = a / pow_signed(&pr, alpha);
    let w = b / pow_signed(&pr, beta);
    let legendre = |x: &Rational| {
        let r = residue_mod(x, p).expect("unit residue");
        kronecker_symbol(r as i64, p as i64).expect("odd modulus")
    };
    let mut s: i8 = if (alpha * beta).rem_euclid(2) == 1 && p % 4 == 3 { -1 } else { 1 };
    if beta.rem_euclid(2) == 1 {
        s *= legendre(&u);
    }
    if alpha.rem_euclid(2) == 1 {
        s *= legendre(&w);
    }
    s
}

fn pow_signed(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Reduce a nonzero rational modulo squares to an integer with 2-adic
/// valuation 0 or 1, then take it modulo 64.
fn two_adic_class_mod64(r: &Rational) -> u64 {
    // r * denom^2 is an integer in the same square class.
    let mut n: BigInt = r.numer() * r.denom();
    let four = BigInt::from(4);
    while (&n % &four).is_zero() {
        n /= &four;
    }
    n.mod_floor(&BigInt::from(64)).to_u64().unwrap()
}

/// Exhaustive search for a primitive solution of `z^2 = a x^2 + b y^2`
/// modulo 64. With `v_2(a), v_2(b) <= 1` the unit coordinate's partial
/// derivative has valuation at most 2, so Hensel lifting needs agreement
/// modulo `2^5`; 64 suffices.
fn hilbert_at_two(a: &Rational, b: &Rational) -> i8 {
    let a = two_adic_class_mod64(a);
    let b = two_adic_class_mod64(b);
    let mut odd_square = [false; 64];
    let mut even_square = [false; 64];
    for z in 0..64u64 {
        let s = (z * z % 64) as usize;
        if z % 2 == 1 {
            odd_square[s] = true;
        } else {
            even_square[s] = true;
        }
    }
    for x in 0..64u64 {
        for y in 0..64u64 {
            let rhs = ((a * x * x + b * y * y) % 64) as usize;
            let xy_primitive = x % 2 == 1 || y % 2 == 1;
            if odd_square[rhs] || (xy_primitive && even_square[rhs]) {
                return 1;
            }
        }
    }
    -1
}

/// Ramification of the quaternion algebra `(a, b / Q)`.
pub fn quaternion_ramification(a: i64, b: i64) -> Result<RamifiedSet> {
    if a == 0 || b == 0 {
        return Err(Error::Zero);
    }
    let ra = Rational::from_integer(BigInt::from(a));
    let rb = Rational::from_integer(BigInt::from(b));
    let mut places = prime_divisors(2 * a.unsigned_abs() * b.unsigned_abs());
    places.sort_unstable();
    let mut finite_places = Vec::new();
    for p in places {
        if hilbert_symbol(&ra, &rb, Place::Finite(p))? == -1 {
            finite_places.push(p);
        }
    }
    let infinite_ramified = hilbert_symbol(&ra, &rb, Place::Infinite)? == -1;
    Ok(RamifiedSet { finite_places, infinite_ramified })
}

/// Smallest-`y` solution of `x^2 + d y^2 = m` in nonnegative integers, by
/// enumeration of `y`.
pub fn cornacchia(d: u64, m: u64) -> Option<(u64, u64)> {
    if d == 0 || m == 0 {
        return None;
    }
    let mut y = 0u64;
    while d as u128 * (y as u128) * (y as u128) <= m as u128 {
        let rest = m - d * y * y;
        let x = rest.sqrt();
        if x * x == rest {
            return Some((x, y));
        }
        y += 1;
    }
    None
}

/// Same enumeration for the principal-form norm equation `x^2 + d y^2 = 4m`.
pub fn cornacchia_quadrupled(d: u64, m: u64) -> Option<(u64, u64)> {
    cornacchia(d, 4 * m)
}

/// All solutions `(x, y)` with `x, y >= 0` of `x^2 + d y^2 = m`, ascending in `y`.
pub fn norm_form_solutions(d: u64, m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut y = 0u64;
    while d as u128 * (y as u128) * (y as u128) <= m as u128 {
        let rest = m - d * y * y;
        let x = rest.sqrt();
        if x * x == rest {
            out.push((x, y));
        }
        y += 1;
    }
    out
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// Factor a fundamental discriminant into prime discriminants, ordered by
/// ascending absolute value.
pub fn prime_discriminant_factorization(d: i64) -> Result<Vec<i64>> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamental(d));
    }
    let mut factors: Vec<i64> = prime_divisors(d.unsigned_abs())
        .into_iter()
        .filter(|&p| p != 2)
        .map(|p| if p % 4 == 1 { p as i64 } else { -(p as i64) })
        .collect();
    let odd: i64 = factors.iter().product();
    let two_part = d / odd;
    if two_part != 1 {
        factors.push(two_part);
    }
    factors.sort_by_key(|f| (f.abs(), *f));
    Ok(factors)
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn squares_mod(n: i64) -> Vec<i64> {
        let mut s: Vec<i64> = (1..n).map(|x| x * x % n).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(squares_mod(7), vec![1, 2, 4]);
        assert_eq!(kronecker_symbol(5, 7).unwrap(), -1);
        for n in 1..50 {
            assert_eq!(kronecker_symbol(1, n).unwrap(), 1);
        }
        assert!(!squares_mod(13).contains(&(-84i64).rem_euclid(13)));
        assert_eq!(kronecker_symbol(-84, 13).unwrap(), -1);
        assert_eq!(kronecker_symbol(3, 0), Err(Error::ZeroModulus));
    }

    #[test]
    fn kronecker_matches_legendre_brute_force() {
        for p in primes_up_to(60).filter(|&p| p > 2) {
            let sq = squares_mod(p as i64);
            for a in -40i64..40 {
                let r = a.rem_euclid(p as i64);
                let expected = if r == 0 { 0 } else if sq.contains(&r) { 1 } else { -1 };
                assert_eq!(kronecker_symbol(a, p as i64).unwrap(), expected, "({a}|{p})");
            }
        }
    }

    #[test]
    fn kronecker_at_two_and_negative_modulus() {
        // (a|2) = 0 for even a, 1 for a = ±1 mod 8, -1 for a = ±3 mod 8
        assert_eq!(kronecker_symbol(4, 2).unwrap(), 0);
        assert_eq!(kronecker_symbol(7, 2).unwrap(), 1);
        assert_eq!(kronecker_symbol(5, 2).unwrap(), -1);
        assert_eq!(kronecker_symbol(-1, -1).unwrap(), -1);
        assert_eq!(kronecker_symbol(-3, 8).unwrap(), -1);
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&rational(12)).unwrap(), 3);
        assert_eq!(squarefree_part(&rational_frac(-98, 4)).unwrap(), -2);
        assert_eq!(squarefree_part(&rational(1)).unwrap(), 1);
        assert_eq!(squarefree_part(&rational_frac(5, 12)).unwrap(), 15);
        assert_eq!(squarefree_part(&rational(0)), Err(Error::Zero));
    }

    /// Exhaustive check for a primitive solution of z^2 + x^2 + y^2 = 0 mod 16.
    #[test]
    fn hilbert_minus_one_minus_one_at_two() {
        let mut found = false;
        for x in 0..16 {
            for y in 0..16 {
                for z in 0..16 {
                    if (x % 2 == 1 || y % 2 == 1 || z % 2 == 1) && (x * x + y * y + z * z) % 16 == 0 {
                        found = true;
                    }
                }
            }
        }
        assert!(!found);
        let m1 = rational(-1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Finite(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&m1, &m1, Place::Infinite).unwrap(), -1);
        for a in [-7i64, 2, 3, 10, -30] {
            for p in [Place::Finite(2), Place::Finite(3), Place::Finite(5), Place::Infinite] {
                assert_eq!(hilbert_symbol(&rational(a), &rational(1), p).unwrap(), 1);
            }
        }
    }

    /// Closed-form 2-adic Hilbert symbol, used only as an oracle.
    fn hilbert_two_closed_form(a: i64, b: i64) -> i8 {
        let split = |x: i64| {
            let v = x.trailing_zeros() as i64;
            (v, (x >> v).rem_euclid(8))
        };
        let (al, u) = split(a);
        let (be, w) = split(b);
        let eps = |x: i64| ((x - 1) / 2) % 2;
        let om = |x: i64| ((x * x - 1) / 8) % 2;
        let e = eps(u) * eps(w) + al * om(w) + be * om(u);
        if e % 2 == 0 { 1 } else { -1 }
    }

    #[test]
    fn hilbert_two_matches_closed_form() {
        for a in -60i64..60 {
            for b in -60i64..60 {
                if a == 0 || b == 0 {
                    continue;
                }
                assert_eq!(
                    hilbert_symbol(&rational(a), &rational(b), Place::Finite(2)).unwrap(),
                    hilbert_two_closed_form(a, b),
                    "({a},{b})_2"
                );
            }
        }
    }

    #[test]
    fn ramification_examples() {
        let r = quaternion_ramification(-1, -1).unwrap();
        assert_eq!(r, RamifiedSet { finite_places: vec![2], infinite_ramified: true });
        let r = quaternion_ramification(1, -7).unwrap();
        assert!(r.is_split());
        assert_eq!(r.discriminant(), 1);
        assert_eq!(quaternion_ramification(2, 13).unwrap().discriminant(), 26);
        assert!(!quaternion_ramification(2, 13).unwrap().infinite_ramified);
        for (a, b) in [(-3, 26), (-15, 39), (-5, 13)] {
            let r = quaternion_ramification(a, b).unwrap();
            assert!(r.is_valid());
        }
    }

    #[test]
    fn cornacchia_examples() {
        assert_eq!(cornacchia(1, 13), Some((3, 2)));
        // x^2 + 21 y^2 = 100: y = 2 gives 88, y = 1 gives 79, y = 0 gives 100.
        assert_eq!(cornacchia_quadrupled(21, 25), Some((10, 0)));
        assert_eq!(cornacchia(3, 2), None);
        assert_eq!(cornacchia_quadrupled(3, 2), None);
        assert_eq!(norm_form_solutions(20, 36), vec![(6, 0), (4, 1)]);
    }

    #[test]
    fn prime_discriminants() {
        assert_eq!(prime_discriminant_factorization(-84).unwrap(), vec![-3, -4, -7]);
        assert_eq!(prime_discriminant_factorization(-195).unwrap(), vec![-3, 5, 13]);
        assert_eq!(prime_discriminant_factorization(8).unwrap(), vec![8]);
        assert_eq!(prime_discriminant_factorization(-120).unwrap(), vec![-3, 5, 8]);
        assert_eq!(prime_discriminant_factorization(-340).unwrap(), vec![-4, 5, 17]);
        assert_eq!(prime_discriminant_factorization(-12), Err(Error::NotFundamental(-12)));
        assert_eq!(prime_discriminant_factorization(-80), Err(Error::NotFundamental(-80)));
    }

    #[test]
    fn factorization_and_primes() {
        assert_eq!(factorize(1435), vec![(5, 1), (7, 1), (41, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(primes_up_to(30).collect::<Vec<_>>(), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(residue_mod(&rational_frac(1, 3), 7), Some(5));
        assert_eq!(valuation(&rational_frac(12, 9), 3), -1);
    }
}
