//! Integer utilities: primality, modular arithmetic, residue symbols,
//! continued fractions of quadratic surds, Pell units and norm equations.

mod cf;
mod norm_eq;

pub use cf::{fundamental_unit, maximal_order_unit, sqrt_cont_frac, ContinuedFraction, PellSolution, QuadUnit};
pub use norm_eq::{norm_equation_solvable, solve_norm_equation, solve_norm_equation_bounded, DEFAULT_NORM_BOUND};

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// How a primality verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    /// Deterministic Miller-Rabin base set, exact below 2^64.
    Proven,
    /// Strong probable prime to 64 random bases.
    Probable,
}

/// An odd prime. Values below 2^64 are certified by a deterministic base set;
/// larger values carry [`Certainty::Probable`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OddPrime {
    value: BigUint,
    certainty: Certainty,
}

impl OddPrime {
    pub fn new(value: BigUint) -> Result<Self> {
        if let Some(v) = value.to_u64() {
            return Self::from_u64(v);
        }
        if value.is_even() || !is_probable_prime_big(&value, 64) {
            return Err(Error::NotOddPrime(value.to_string()));
        }
        Ok(OddPrime { value, certainty: Certainty::Probable })
    }

    pub fn from_u64(v: u64) -> Result<Self> {
        if v.is_multiple_of(2) || !is_prime_u64(v) {
            return Err(Error::NotOddPrime(v.to_string()));
        }
        Ok(OddPrime { value: BigUint::from(v), certainty: Certainty::Proven })
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn certainty(&self) -> Certainty {
        self.certainty
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime(n: u64, base: u64) -> bool {
    let base = base % n;
    if base == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(base, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    SMALL.iter().all(|&b| strong_probable_prime(n, b))
}

/// Miller-Rabin with `rounds` random bases.
pub fn is_probable_prime_big(n: &BigUint, rounds: usize) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut rng = rand::thread_rng();
    'witness: for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol (a/n) for odd n >= 1.
pub fn jacobi(a: i128, n: i128) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::BadModulus(n.to_string()));
    }
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Jacobi symbol for arbitrary-precision arguments.
pub fn jacobi_big(a: &BigInt, n: &BigInt) -> Result<i8> {
    if n.sign() != num_bigint::Sign::Plus || n.is_even() {
        return Err(Error::BadModulus(n.to_string()));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut sign = 1i8;
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % &eight).to_u8().unwrap_or(0);
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % &four) == BigInt::from(3) && (&n % &four) == BigInt::from(3) {
            sign = -sign;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { sign } else { 0 })
}

/// Kronecker symbol (a/n) for n >= 1.
pub fn kronecker(a: i64, n: u64) -> i8 {
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let twos = n.trailing_zeros();
    let odd = n >> twos;
    let mut sign = 1i8;
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if twos % 2 == 1 && (r == 3 || r == 5) {
            sign = -1;
        }
    }
    sign * jacobi(a as i128, odd as i128).expect("odd positive modulus")
}

/// The rational quartic residue symbol (2/p)_4 = 2^((p-1)/4) mod p.
pub fn quartic_symbol_2(p: &OddPrime) -> Result<i8> {
    let v = p.value();
    let eight = BigUint::from(8u32);
    if (v % &eight) != BigUint::one() {
        return Err(Error::NotOneModEight(v.to_u64().unwrap_or(u64::MAX)));
    }
    let e = BigUint::from(2u32).modpow(&((v - 1u32) >> 2), v);
    if e.is_one() {
        Ok(1)
    } else if e == v - 1u32 {
        Ok(-1)
    } else {
        unreachable!("2 is a quadratic residue modulo a prime = 1 mod 8")
    }
}

/// Convenience wrapper on machine integers.
pub fn quartic_symbol_2_u64(p: u64) -> Result<i8> {
    quartic_symbol_2(&OddPrime::from_u64(p)?)
}

/// A square root of `a` modulo an odd prime `p` (Tonelli-Shanks), if `a` is a residue.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: u128) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// Prime factorisation by trial division; intended for arguments below ~10^12.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
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

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// The squarefree kernel s with n = s * g^2.
pub fn squarefree_part(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product()
}

/// Primes below `limit` congruent to `residue` modulo `modulus`.
pub fn primes_in_class(limit: u64, residue: u64, modulus: u64) -> Vec<u64> {
    let mut p = residue % modulus;
    let mut out = Vec::new();
    while p <= limit {
        if is_prime_u64(p) {
            out.push(p);
        }
        p += modulus;
    }
    out
}

/// The prime condition on (p, r): p = 9 mod 16, r = 3 mod 4, (p/r) = -1 and
/// (2/p)_4 = -1.
pub fn condition_one(p: u64, r: u64) -> Result<()> {
    let fail = |reason: &str| Err(Error::ConditionFailed { p, r, reason: reason.into() });
    if !is_prime_u64(p) || !is_prime_u64(r) || p == 2 || r == 2 {
        return fail("p and r must be odd primes");
    }
    if p % 16 != 9 {
        return fail("p is not 9 mod 16");
    }
    if r % 4 != 3 {
        return fail("r is not 3 mod 4");
    }
    if jacobi(p as i128, r as i128)? != -1 {
        return fail("(p/r) is not -1");
    }
    if quartic_symbol_2_u64(p)? != -1 {
        return fail("(2/p)_4 is not -1");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(41, 3).unwrap(), -1);
        assert_eq!(jacobi(7, 41).unwrap(), -1);
        for n in (1..200).step_by(2) {
            assert_eq!(jacobi(1, n).unwrap(), 1);
        }
        assert!(jacobi(3, 8).is_err());
        assert!(jacobi(3, -5).is_err());
        assert!(jacobi(3, 0).is_err());
    }

    #[test]
    fn jacobi_big_agrees() {
        for n in (1..300i128).step_by(2) {
            for a in -50..50i128 {
                assert_eq!(
                    jacobi(a, n).unwrap(),
                    jacobi_big(&BigInt::from(a), &BigInt::from(n)).unwrap()
                );
            }
        }
    }

    #[test]
    fn quartic_examples() {
        assert_eq!(quartic_symbol_2_u64(41).unwrap(), -1);
        assert_eq!(quartic_symbol_2_u64(137).unwrap(), -1);
        assert_eq!(quartic_symbol_2_u64(73).unwrap(), 1);
        assert!(matches!(quartic_symbol_2_u64(13), Err(Error::NotOneModEight(13))));
        assert!(quartic_symbol_2_u64(15).is_err());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751));
        assert!(OddPrime::from_u64(2).is_err());
        let big = BigUint::parse_bytes(b"170141183460469231731687303715884105727", 10).unwrap();
        let p = OddPrime::new(big).unwrap();
        assert_eq!(p.certainty(), Certainty::Probable);
        assert_eq!(OddPrime::from_u64(41).unwrap().certainty(), Certainty::Proven);
    }

    #[test]
    fn sqrt_mod_roundtrip() {
        for p in [3u64, 7, 17, 41, 97, 113, 257, 65537] {
            for a in 0..p.min(300) {
                match sqrt_mod_prime(a, p) {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a),
                    None => assert_eq!(jacobi(a as i128, p as i128).unwrap(), -1),
                }
            }
        }
    }

    #[test]
    fn kronecker_even_moduli() {
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(4, 2), 0);
        assert_eq!(kronecker(5, 6), kronecker(5, 2) * kronecker(5, 3));
    }

    #[test]
    fn squarefree_helpers() {
        assert_eq!(squarefree_part(72), 2);
        assert_eq!(squarefree_part(41 * 9), 41);
        assert!(is_squarefree(123));
        assert!(!is_squarefree(12));
    }

    #[test]
    fn prime_condition() {
        assert!(condition_one(41, 3).is_ok());
        assert!(condition_one(41, 7).is_ok());
        assert!(matches!(condition_one(73, 3), Err(Error::ConditionFailed { .. })));
        assert!(condition_one(41, 5).is_err());
        assert!(condition_one(41, 11).is_ok());
        assert!(condition_one(41, 23).is_err());
        assert!(condition_one(57, 3).is_err());
    }
}
