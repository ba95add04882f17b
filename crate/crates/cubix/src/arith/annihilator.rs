//! The annihilator integers e(n), M_n(G), M'_n(G), C_{d+1}(G), the epsilon
//! gcds, Kummer-Vandiver status data, and the Ext-vanishing verdicts.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::bernoulli::{
    bernoulli_mod_p, is_prime, numerator_bn_over_n, superfactorial,
};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::ring::factorize;

/// How odd-index e(n) values are resolved. Even-index values always come
/// from Bernoulli numerators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EMode {
    /// Only unconditionally known values; odd n >= 5 is Unknown.
    Strict,
    /// Kummer-Vandiver assumed: every odd e(n) is 1.
    Vandiver,
    /// Odd values from user-supplied K-group order data:
    /// n -> [(p, ord_p(#K_{2n-2}(Z)))] restricted to primes with p | h+_p.
    Table(BTreeMap<u64, Vec<(u64, u32)>>),
}

impl EMode {
    pub fn name(&self) -> &'static str {
        match self {
            EMode::Strict => "strict",
            EMode::Vandiver => "vandiver",
            EMode::Table(_) => "table",
        }
    }
}

/// An e(n) value, or an explicit Unknown (never a silent 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EValue {
    Known(BigInt),
    Unknown,
}

impl EValue {
    pub fn as_string(&self) -> String {
        match self {
            EValue::Known(v) => v.to_string(),
            EValue::Unknown => "unknown".into(),
        }
    }
}

/// e(n): numerator(B_n/n) for even n; 1 for n = 1 and n = 3 (K_4(Z) is
/// trivial); for other odd n the product of the supplied K-group orders, 1
/// under the Vandiver assumption, or Unknown in strict mode.
pub fn e_value(n: u64, mode: &EMode) -> Result<EValue> {
    if n == 0 {
        return Err(Error::Malformed("e(n) requires n >= 1".into()));
    }
    if n.is_multiple_of(2) {
        return Ok(EValue::Known(numerator_bn_over_n(n)?));
    }
    if n == 1 || n == 3 {
        return Ok(EValue::Known(BigInt::one()));
    }
    match mode {
        EMode::Vandiver => Ok(EValue::Known(BigInt::one())),
        EMode::Strict => Ok(EValue::Unknown),
        EMode::Table(table) => match table.get(&n) {
            Some(entries) => {
                let mut acc = BigInt::one();
                for &(p, e) in entries {
                    acc *= BigInt::from(p).pow(e);
                }
                Ok(EValue::Known(acc))
            }
            None => Ok(EValue::Unknown),
        },
    }
}

/// Highest power of p dividing n (as a number, not an exponent).
pub fn ord_p(n: &BigInt, p: &BigInt) -> BigInt {
    let mut power = BigInt::one();
    let mut rest = n.abs();
    while (&rest % p).is_zero() && !rest.is_zero() {
        power *= p;
        rest /= p;
    }
    power
}

/// Kummer-Vandiver verification status: a verified bound plus user-supplied
/// extra primes. Conjecture status is data, not code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VandiverTable {
    pub verified_below: u64,
    #[serde(default)]
    pub extra_verified: BTreeSet<u64>,
    #[serde(default)]
    pub comment: String,
}

impl VandiverTable {
    /// The bundled table: verified numerically for all p < 12_000_000.
    pub fn bundled() -> Self {
        serde_json::from_str(include_str!("../../data/vandiver.json"))
            .expect("bundled vandiver data parses")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Malformed(format!("vandiver data: {e}")))
    }

    pub fn is_verified(&self, p: u64) -> bool {
        p < self.verified_below || self.extra_verified.contains(&p)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EValueEntry {
    pub k: u64,
    pub value: String,
}

/// The annihilator integers of a finite abelian group at relative dimension
/// d, with the vanishing verdicts derived from them.
#[derive(Debug, Clone, Serialize)]
pub struct AnnihilatorReport {
    pub group: Vec<u64>,
    pub group_order: String,
    pub factorization: Vec<(String, u32)>,
    pub d: u64,
    pub mode: String,
    pub e_values: Vec<EValueEntry>,
    pub m: String,
    pub m_prime: String,
    pub c_bound: String,
    pub epsilon: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_gy: Option<u64>,
    pub verdicts: Vec<String>,
}

/// Computes M_{d+1}(G), M'_{d+1}(G), C_{d+1}(G) = gcd(M'_{d+1}, 2 (d+1)!!),
/// epsilon(G) = gcd(2, #G) and optionally epsilon(G, Y) = gcd(2, #G, genus).
pub fn annihilator_bounds(
    group: &FiniteAbelianGroup,
    d: u64,
    mode: &EMode,
    vandiver: &VandiverTable,
    genus: Option<u64>,
) -> Result<AnnihilatorReport> {
    let mut factorization: BTreeMap<u64, u32> = BTreeMap::new();
    let mut order = BigInt::one();
    for &n in group.orders() {
        order *= BigInt::from(n);
        for (p, e) in factorize(n) {
            *factorization.entry(p).or_insert(0) += e;
        }
    }
    let primes: Vec<u64> = factorization.keys().copied().collect();

    let mut e_values = Vec::new();
    let mut m = Some(BigInt::one());
    let mut m_prime = BigInt::one();
    for k in 2..=d + 1 {
        let e = e_value(k, mode)?;
        e_values.push(EValueEntry { k, value: e.as_string() });
        match &e {
            EValue::Known(value) => {
                let mut contribution = BigInt::one();
                for &p in &primes {
                    let p_big = BigInt::from(p);
                    if (value % &p_big).is_zero() {
                        contribution *= ord_p(&order, &p_big);
                    }
                }
                if let Some(acc) = m.as_mut() {
                    *acc *= &contribution;
                }
                if k % 2 == 0 {
                    m_prime *= &contribution;
                }
            }
            EValue::Unknown => {
                // odd-index unknowns block M but never M' (even indices only)
                m = None;
            }
        }
    }

    let c_bound = m_prime.gcd(&(BigInt::from(2) * superfactorial(d + 1)));
    let epsilon = if (&order % BigInt::from(2)).is_zero() { 2 } else { 1 };
    let epsilon_gy = genus.map(|g| {
        let acc = BigInt::from(2).gcd(&order).gcd(&BigInt::from(g));
        num_traits::ToPrimitive::to_u64(&acc).unwrap_or(1)
    });

    let mut verdicts = Vec::new();
    if m.as_ref().is_some_and(|v| v.is_one()) {
        verdicts.push(
            "invertible-sheaf-trivial: M = 1, so every line bundle carrying a (d+2)-cubic structure over Spec(Z[G]) is trivial"
                .to_string(),
        );
    }
    if primes.iter().all(|&p| vandiver.is_verified(p) && p > d + 1) {
        verdicts.push(
            "trivial: all primes dividing #G are Vandiver-verified and exceed d+1, so the Euler-characteristic class is annihilated into the kernel subgroup"
                .to_string(),
        );
    }

    Ok(AnnihilatorReport {
        group: group.orders().to_vec(),
        group_order: order.to_string(),
        factorization: factorization.iter().map(|(p, e)| (p.to_string(), *e)).collect(),
        d,
        mode: mode.name().to_string(),
        e_values,
        m: m.map_or_else(|| "unknown".into(), |v| v.to_string()),
        m_prime: m_prime.to_string(),
        c_bound: c_bound.to_string(),
        epsilon,
        epsilon_gy,
        verdicts,
    })
}

/// gcd(2, #G).
pub fn epsilon_g(group: &FiniteAbelianGroup) -> u64 {
    if group.orders().iter().any(|n| n % 2 == 0) {
        2
    } else {
        1
    }
}

/// Verdict for the vanishing of the group of n-fold multiextension classes
/// at an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExtVerdict {
    Vanishes,
    Nonvanishing,
    ConditionalVanishes,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtReport {
    pub p: u64,
    pub n: u64,
    /// Index i with the relevant eigenspace (C/p)^{(i)}, i = (1-n) mod (p-1).
    pub eigenspace_index: u64,
    pub verdict: ExtVerdict,
    pub provenance: String,
}

/// Decides vanishing of the class group eigenspace (C(p)/p)^{(1-n)} that
/// controls n-fold multiextensions of mu_p by G_m.
pub fn vanishing_ext(p: u64, n: u64, vandiver: &VandiverTable) -> Result<ExtReport> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if n == 0 {
        return Err(Error::Malformed("n must be >= 1".into()));
    }
    let modulus = (p - 1) as i128;
    let i = ((1i128 - n as i128).rem_euclid(modulus)) as u64;
    let report = |verdict, provenance: String| {
        Ok(ExtReport { p, n, eigenspace_index: i, verdict, provenance })
    };

    if i == 0 {
        return report(
            ExtVerdict::Vanishes,
            "the (0)-eigenspace of C(p)/p vanishes".into(),
        );
    }
    if i == 1 {
        return report(
            ExtVerdict::Vanishes,
            "the (1)-eigenspace of C(p)/p vanishes; covers p-1 | n".into(),
        );
    }
    if i % 2 == 1 {
        // odd eigenspace: Herbrand-Ribet through the Kummer congruence
        let k = n % (p - 1);
        let residues = bernoulli_mod_p(p)?;
        let r = *residues.get(&k).ok_or_else(|| {
            Error::Internal(format!("missing Bernoulli residue for k={k}, p={p}"))
        })?;
        if r != 0 {
            return report(
                ExtVerdict::Vanishes,
                format!(
                    "Herbrand: p does not divide B_{k} (index reduced mod p-1 by the Kummer congruences)"
                ),
            );
        }
        return report(
            ExtVerdict::Nonvanishing,
            format!("Ribet converse (external theorem input): p divides B_{k}"),
        );
    }
    // even eigenspace >= 2: plus part
    let regular = bernoulli_mod_p(p)?.values().all(|&r| r != 0);
    if regular {
        return report(
            ExtVerdict::Vanishes,
            "p is regular, so the whole class group is prime to p".into(),
        );
    }
    if vandiver.is_verified(p) {
        return report(
            ExtVerdict::ConditionalVanishes,
            "plus-part eigenspace trivial for Vandiver-verified p".into(),
        );
    }
    report(
        ExtVerdict::Unknown,
        "even eigenspace of an irregular prime without Vandiver verification".into(),
    )
}
