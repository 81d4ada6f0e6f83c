//! Elementary number theory on exact integers and rationals.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A sign in {-1, +1}. Singular determinants, the Lickorish sign and the
/// values of `nu` all live here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    /// `(-1)^k`.
    pub fn parity(k: i64) -> Sign {
        if k.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// 0 for +1, 1 for -1.
    pub fn bit(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// p-adic valuation with an explicit infinity. The derived order puts every
/// finite value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p.to_string()));
    }
    Ok(())
}

/// Legendre symbol `(a|p)` in {-1, 0, 1} via Euler's criterion.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    check_odd_prime(p)?;
    Ok(legendre_unchecked(a, p))
}

pub(crate) fn legendre_unchecked(a: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let r = a.mod_floor(&pb);
    if r.is_zero() {
        return 0;
    }
    let e = BigInt::from((p - 1) / 2);
    let v = r.modpow(&e, &pb);
    if v.is_one() {
        1
    } else {
        -1
    }
}

pub fn legendre_i64(a: i64, p: u64) -> Result<i8> {
    legendre(&BigInt::from(a), p)
}

/// Legendre symbol of a rational whose numerator and denominator are prime to p.
/// Returns 0 when p divides either of them.
pub fn legendre_rational(x: &BigRational, p: u64) -> Result<i8> {
    let n = x.numer() * x.denom();
    legendre(&n, p)
}

/// Smallest positive quadratic non-residue mod p.
pub fn smallest_nonresidue(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    (2..p)
        .find(|&b| legendre_unchecked(&BigInt::from(b), p) == -1)
        .ok_or_else(|| Error::NotOddPrime(p.to_string()))
}

/// `ord_p` of a nonzero integer; infinite for zero.
pub fn ord_p_int(x: &BigInt, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let pb = BigInt::from(p);
    let mut v = 0i64;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        y = q;
        v += 1;
    }
    Valuation::Finite(v)
}

/// p-adic valuation of a rational.
pub fn ord_p(x: &BigRational, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(ord_p_unchecked(x, p))
}

pub(crate) fn ord_p_unchecked(x: &BigRational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let a = ord_p_int(x.numer(), p).finite().unwrap_or(0);
    let b = ord_p_int(x.denom(), p).finite().unwrap_or(0);
    Valuation::Finite(a - b)
}

/// Splits `n = p^alpha * q` with q prime to p. `n` must be nonzero.
pub fn split_prime_power(n: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut q = n.clone();
    let mut a = 0u32;
    while !q.is_zero() && (&q % &pb).is_zero() {
        q /= &pb;
        a += 1;
    }
    (a, q)
}

/// The sign `nu(eta)`: +1 for eta = ±1 mod 12 and -1 for eta = ±5 mod 12.
pub fn nu(eta: &BigInt) -> Result<Sign> {
    let r = eta.mod_floor(&BigInt::from(12)).to_u32().unwrap_or(0);
    match r {
        1 | 11 => Ok(Sign::Plus),
        5 | 7 => Ok(Sign::Minus),
        _ => Err(Error::NotCoprimeToSix(eta.to_string())),
    }
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(n: &BigUint) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut m = n.clone();
    let mut d = 2u64;
    while BigUint::from(d) * BigUint::from(d) <= m {
        let db = BigUint::from(d);
        if (&m % &db).is_zero() {
            let mut e = 0;
            while (&m % &db).is_zero() {
                m /= &db;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigUint::one() {
        let last = m.to_u64().expect("prime factor beyond u64 range");
        out.push((last, 1));
    }
    out
}

/// Odd primes dividing a nonzero integer, ascending.
pub fn odd_prime_divisors(n: &BigInt) -> Vec<u64> {
    factorize(&n.abs().to_biguint().unwrap_or_default())
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| p != 2)
        .collect()
}

/// Whether `a` is a square modulo the odd modulus `q` (with gcd(a, q) = 1).
pub fn is_qr_mod(a: &BigInt, q: &BigInt) -> Result<bool> {
    if q.is_even() {
        return Err(Error::EvenModulus(q.to_string()));
    }
    if !q.is_positive() {
        return Err(Error::Parse(format!("modulus {q} must be positive")));
    }
    if !a.gcd(q).is_one() {
        return Err(Error::NotCoprime {
            a: a.to_string(),
            q: q.to_string(),
        });
    }
    // Odd prime powers lift residues by Hensel, so only the primes matter.
    let primes = factorize(&q.to_biguint().unwrap_or_default());
    Ok(primes
        .into_iter()
        .all(|(p, _)| legendre_unchecked(a, p) == 1))
}

/// Modular inverse of `a` modulo `m` (assumed coprime), in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    e.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn legendre_table_values() {
        assert_eq!(legendre(&b(-1), 5).unwrap(), 1);
        assert_eq!(legendre(&b(2), 7).unwrap(), 1);
        assert_eq!(legendre(&b(0), 3).unwrap(), 0);
        assert_eq!(legendre(&b(-1), 7).unwrap(), -1);
        assert_eq!(legendre(&b(2), 5).unwrap(), -1);
    }

    #[test]
    fn legendre_rejects_bad_moduli() {
        assert!(legendre(&b(1), 2).is_err());
        assert!(legendre(&b(1), 1).is_err());
        assert!(legendre(&b(1), 9).is_err());
        assert!(legendre(&b(1), 15).is_err());
    }

    #[test]
    fn ord_p_examples() {
        let r = |n: i64, d: i64| BigRational::new(b(n), b(d));
        assert_eq!(ord_p(&r(9, 1), 3).unwrap(), Valuation::Finite(2));
        assert_eq!(ord_p(&r(2, 9), 3).unwrap(), Valuation::Finite(-2));
        assert_eq!(ord_p(&r(0, 1), 5).unwrap(), Valuation::Infinite);
        assert!(Valuation::Finite(1_000_000) < Valuation::Infinite);
        assert!(ord_p(&r(1, 1), 4).is_err());
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(&b(1)).unwrap(), Sign::Plus);
        assert_eq!(nu(&b(5)).unwrap(), Sign::Minus);
        assert_eq!(nu(&b(13)).unwrap(), Sign::Plus);
        assert_eq!(nu(&b(-1)).unwrap(), Sign::Plus);
        assert_eq!(nu(&b(7)).unwrap(), Sign::Minus);
        assert!(nu(&b(9)).is_err());
        assert!(nu(&b(4)).is_err());
    }

    #[test]
    fn qr_examples() {
        assert!(is_qr_mod(&b(4), &b(9)).unwrap());
        assert!(!is_qr_mod(&b(2), &b(9)).unwrap());
        assert!(is_qr_mod(&b(3), &b(4)).is_err());
        assert!(is_qr_mod(&b(3), &b(9)).is_err());
    }

    #[test]
    fn factorize_small() {
        let f = factorize(&BigUint::from(195u32));
        assert_eq!(f, vec![(3, 1), (5, 1), (13, 1)]);
        assert_eq!(factorize(&BigUint::from(81u32)), vec![(3, 4)]);
        assert_eq!(odd_prime_divisors(&b(-98)), vec![7]);
    }

    #[test]
    fn nonresidue_witness() {
        assert_eq!(smallest_nonresidue(3).unwrap(), 2);
        assert_eq!(smallest_nonresidue(7).unwrap(), 3);
        assert_eq!(smallest_nonresidue(17).unwrap(), 3);
    }
}
