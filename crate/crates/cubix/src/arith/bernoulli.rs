//! Exact Bernoulli numbers, two independent modular algorithms for their
//! residues, and the irregular-pair scan.

use std::collections::BTreeMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

static BERNOULLI_MEMO: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

/// Exact B_k from the recurrence sum_{j=0}^{k} C(k+1, j) B_j = 0 with
/// B_0 = 1. Memoized; concurrent readers share the table.
pub fn bernoulli(k: u64) -> BigRational {
    let k = k as usize;
    {
        let memo = BERNOULLI_MEMO.read().unwrap();
        if let Some(b) = memo.get(k) {
            return b.clone();
        }
    }
    let mut memo = BERNOULLI_MEMO.write().unwrap();
    if memo.is_empty() {
        memo.push(BigRational::one());
    }
    while memo.len() <= k {
        let m = memo.len(); // computing B_m
        if m % 2 == 1 && m > 1 {
            memo.push(BigRational::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, j)
        for (j, b) in memo.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from(binom.clone());
            }
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let value = -acc / BigRational::from(BigInt::from(m as u64 + 1));
        memo.push(value);
    }
    memo[k].clone()
}

/// Sieve of all primes <= n.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// The von Staudt-Clausen denominator of B_k for even k: the product of all
/// primes p with (p-1) | k.
pub fn von_staudt_clausen_denominator(k: u64) -> BigInt {
    let mut out = BigInt::one();
    for p in primes_up_to(k + 1) {
        if k.is_multiple_of(p - 1) {
            out *= BigInt::from(p);
        }
    }
    out
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    mod_pow(a, p - 2, p)
}

fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let factors = crate::ring::factorize(phi);
    'outer: for g in 2..p {
        for &(q, _) in &factors {
            if mod_pow(g, phi / q, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root")
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Residues of B_k mod p for even 2 <= k <= p-3, by the Voronoi congruence
///   (a^k - 1) B_k / k  =  a^{k-1} sum_{j=1}^{p-1} j^{k-1} floor(ja/p)  (mod p)
/// with a a primitive root so that a^k != 1 for every k in range.
pub fn bernoulli_mod_p(p: u64) -> Result<BTreeMap<u64, u64>> {
    check_odd_prime(p)?;
    let mut out = BTreeMap::new();
    if p < 5 {
        return Ok(out);
    }
    let a = primitive_root(p);
    let floors: Vec<u64> = (0..p).map(|j| j * a / p % p).collect();
    // j^{k-1} for the current k, updated by j^2 steps
    let mut powers: Vec<u64> = (0..p).collect(); // j^1
    let squares: Vec<u64> = (0..p).map(|j| j * j % p).collect();
    let mut a_pow_k1 = a % p; // a^{k-1} for k = 2
    let a_sq = a * a % p;
    for k in (2..=p - 3).step_by(2) {
        let mut sum: u128 = 0;
        for j in 1..p as usize {
            sum += powers[j] as u128 * floors[j] as u128;
        }
        let sum = (sum % p as u128) as u64;
        let a_pow_k = a_pow_k1 * a % p;
        let lead = (a_pow_k + p - 1) % p;
        let b = (k % p) as u128 * mod_inv(lead, p) as u128 % p as u128 * a_pow_k1 as u128
            % p as u128
            * sum as u128
            % p as u128;
        out.insert(k, b as u64);
        for j in 0..p as usize {
            powers[j] = (powers[j] as u128 * squares[j] as u128 % p as u128) as u64;
        }
        a_pow_k1 = a_pow_k1 * a_sq % p;
    }
    Ok(out)
}

/// Residues of B_k mod p for even 2 <= k <= p-3 by running the defining
/// recurrence entirely mod p (denominators stay prime to p in this range).
/// Independent of the Voronoi route.
pub fn bernoulli_mod_p_recurrence(p: u64) -> Result<BTreeMap<u64, u64>> {
    check_odd_prime(p)?;
    let mut out = BTreeMap::new();
    if p < 5 {
        return Ok(out);
    }
    let kmax = (p - 3) as usize;
    // factorials and inverse factorials mod p
    let mut fact = vec![1u64; kmax + 2];
    for i in 1..=kmax + 1 {
        fact[i] = fact[i - 1] * (i as u64 % p) % p;
    }
    let mut inv_fact = vec![1u64; kmax + 2];
    inv_fact[kmax + 1] = mod_inv(fact[kmax + 1], p);
    for i in (0..=kmax).rev() {
        inv_fact[i] = inv_fact[i + 1] * ((i + 1) as u64 % p) % p;
    }
    let binom = |n: usize, r: usize| -> u64 { fact[n] * inv_fact[r] % p * inv_fact[n - r] % p };

    let mut b = vec![0u64; kmax + 1];
    b[0] = 1;
    if kmax >= 1 {
        b[1] = p - mod_inv(2, p); // -1/2
    }
    for k in 2..=kmax {
        if k % 2 == 1 {
            b[k] = 0;
            continue;
        }
        let mut acc: u128 = 0;
        for j in 0..k {
            if b[j] == 0 {
                continue;
            }
            acc = (acc + binom(k + 1, j) as u128 * b[j] as u128) % p as u128;
        }
        let acc = (acc % p as u128) as u64;
        b[k] = (p - acc) % p * mod_inv((k as u64 + 1) % p, p) % p;
    }
    for k in (2..=kmax).step_by(2) {
        out.insert(k as u64, b[k]);
    }
    Ok(out)
}

/// Reduction of the exact B_k mod p (defined when (p-1) does not divide k).
pub fn bernoulli_reduced(k: u64, p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    if k.is_multiple_of(p - 1) {
        return Err(Error::Parity(format!("B_{k} has p in its denominator for p={p}")));
    }
    let b = bernoulli(k);
    let num = b.numer().mod_floor(&BigInt::from(p));
    let den = b.denom().mod_floor(&BigInt::from(p));
    let num = num.to_u64().unwrap();
    let den = den.to_u64().unwrap();
    Ok(num * mod_inv(den, p) % p)
}

/// Picks the irregular indices of one prime from a residue table.
fn irregular_indices(table: &BTreeMap<u64, u64>) -> Vec<u64> {
    table.iter().filter(|(_, &r)| r == 0).map(|(&k, _)| k).collect()
}

/// All irregular pairs (p, k) with p <= limit: p odd prime, k even,
/// 2 <= k <= p-3, p | numerator(B_k). Both modular algorithms are run and
/// must agree. The scan is parallel over primes.
pub fn irregular_pairs(limit: u64, jobs: Option<usize>) -> Result<Vec<(u64, u64)>> {
    let scan = || -> Result<Vec<(u64, u64)>> {
        let primes: Vec<u64> = primes_up_to(limit).into_iter().filter(|&p| p >= 3).collect();
        let per_prime: Vec<Result<Vec<(u64, u64)>>> = primes
            .par_iter()
            .map(|&p| {
                let voronoi = irregular_indices(&bernoulli_mod_p(p)?);
                let recurrence = irregular_indices(&bernoulli_mod_p_recurrence(p)?);
                if voronoi != recurrence {
                    return Err(Error::Internal(format!(
                        "modular Bernoulli algorithms disagree at p={p}: {voronoi:?} vs {recurrence:?}"
                    )));
                }
                Ok(voronoi.into_iter().map(|k| (p, k)).collect())
            })
            .collect();
        let mut out = Vec::new();
        for r in per_prime {
            out.extend(r?);
        }
        out.sort_unstable();
        Ok(out)
    };
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?
            .install(scan),
        None => scan(),
    }
}

/// n!! = n!(n-1)!...2! (1 for n <= 1).
pub fn superfactorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut fact = BigInt::one();
    for j in 2..=n.max(1) {
        fact *= BigInt::from(j);
        acc *= &fact;
    }
    acc
}

/// numerator(B_n / n) for even n, as a positive integer.
pub fn numerator_bn_over_n(n: u64) -> Result<BigInt> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Parity(format!("numerator(B_n/n) requires even n, got {n}")));
    }
    let q = bernoulli(n) / BigRational::from(BigInt::from(n));
    Ok(q.numer().abs())
}
