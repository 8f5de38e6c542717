//! Modular polynomial gcd over Q: monic gcds modulo word-sized primes,
//! combined by CRT and lifted by rational reconstruction, accepted only after
//! exact trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

use super::poly::Polynomial;
use super::rational::Rational;

/// Primes tried before giving up and letting the caller fall back to Euclid.
const MAX_PRIMES: usize = 128;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The largest primes below `2^62`.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut n = (1u64 << 62) - 1;
        while out.len() < MAX_PRIMES {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    coeffs
        .iter()
        .map(|c| u64::try_from(c.mod_floor(&pb)).expect("residue fits"))
        .collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `Z/p` of two polynomials with nonzero leading terms.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let lb = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = mul_mod(*a.last().unwrap(), lb, p);
            for (j, bj) in b.iter().enumerate() {
                let t = mul_mod(f, *bj, p);
                a[shift + j] = (a[shift + j] + p - t) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    let l = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|&c| mul_mod(c, l, p)).collect()
}

/// `r/s` with `r = s u (mod m)` and `|r|, s <= sqrt(m/2)`, if it exists.
fn reconstruct(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.abs() > bound || s1.is_zero() || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

fn divides(g: &Polynomial, p: &Polynomial) -> bool {
    p.div_rem(g).is_ok_and(|(_, r)| r.is_zero())
}

/// Monic `gcd(a, b)` for nonzero inputs, or `None` if the prime budget ran
/// out before a candidate divided both.
pub(super) fn gcd(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let ai = a.primitive_integer_coeffs();
    let bi = b.primitive_integer_coeffs();
    let mut degree = usize::MAX;
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = Vec::new();
    for &p in primes() {
        let (ar, br) = (reduce(&ai, p), reduce(&bi, p));
        if ar.last() == Some(&0) || br.last() == Some(&0) {
            continue;
        }
        let g = gcd_mod(ar, br, p);
        let d = g.len() - 1;
        if d == 0 {
            return Some(Polynomial::one());
        }
        if d > degree {
            continue;
        }
        let pb = BigInt::from(p);
        if d < degree {
            // Every earlier prime was unlucky.
            degree = d;
            modulus = pb;
            residues = g.into_iter().map(BigInt::from).collect();
        } else {
            let inv = BigInt::from(inv_mod((&modulus % &pb).try_into().expect("residue fits"), p));
            for (x, gi) in residues.iter_mut().zip(g) {
                let t = ((BigInt::from(gi) - &*x) * &inv).mod_floor(&pb);
                *x += &modulus * t;
            }
            modulus *= &pb;
        }
        let coeffs: Option<Vec<Rational>> = residues.iter().map(|x| reconstruct(x, &modulus)).collect();
        if let Some(c) = coeffs {
            let cand = Polynomial::new(c);
            // A common divisor whose degree bounds the true one from above
            // is the gcd.
            if divides(&cand, a) && divides(&cand, b) {
                return Some(cand);
            }
        }
    }
    None
}
