//! Condition checker for candidate tuples in the eigenspace-compatible
//! tower of class-group homomorphism modules: a pure verifier over
//! user-supplied data, with the Galois constraint sigma_a(f_k) = a^{n-1} f_k
//! on declared generators and the norm constraint N_{k-1}(f_{k-1}) =
//! p^{n-1} f_k across levels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::bernoulli::is_prime;
use crate::error::{Error, Result};

/// One declared generator of the Galois action at a level: the unit a of
/// Z/p^k and its action matrix on the module coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaloisGen {
    pub a: u64,
    pub matrix: Vec<Vec<i64>>,
}

/// Level k data: the finite module Hom(C(p^k), p^{-k}Z/Z) as a product of
/// cyclic p-groups, the declared Galois generators, and the candidate f_k.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CnpmLevel {
    pub orders: Vec<u64>,
    pub galois_generators: Vec<GaloisGen>,
    pub f: Vec<i64>,
}

/// The full tower: levels k = 1..=m and the norm-induced maps between
/// consecutive levels (norm_maps[k-2] maps level k-1 into level k).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CnpmData {
    pub p: u64,
    pub m: usize,
    pub levels: Vec<CnpmLevel>,
    #[serde(default)]
    pub norm_maps: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CnpmViolation {
    pub level: usize,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub galois_a: Option<u64>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CnpmReport {
    pub p: u64,
    pub n: u64,
    pub accepted: bool,
    pub violations: Vec<CnpmViolation>,
}

fn reduce_coords(orders: &[u64], coords: &[i64]) -> Vec<BigInt> {
    coords
        .iter()
        .zip(orders)
        .map(|(&c, &o)| BigInt::from(c).mod_floor(&BigInt::from(o)))
        .collect()
}

/// matrix rows indexed by source coordinates, columns by target coordinates;
/// well-defined iff matrix[i][j] * src_order_i = 0 mod dst_order_j.
fn check_hom(src: &[u64], dst: &[u64], matrix: &[Vec<i64>], what: &str) -> Result<()> {
    if matrix.len() != src.len() || matrix.iter().any(|row| row.len() != dst.len()) {
        return Err(Error::Malformed(format!(
            "{what}: matrix shape must be {} x {}",
            src.len(),
            dst.len()
        )));
    }
    for (i, row) in matrix.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            let prod = BigInt::from(k) * BigInt::from(src[i]);
            if !prod.mod_floor(&BigInt::from(dst[j])).is_zero() {
                return Err(Error::Malformed(format!(
                    "{what}: entry ({i},{j}) = {k} does not define a homomorphism"
                )));
            }
        }
    }
    Ok(())
}

fn apply_hom(dst: &[u64], matrix: &[Vec<i64>], x: &[BigInt]) -> Vec<BigInt> {
    (0..dst.len())
        .map(|j| {
            let mut acc = BigInt::zero();
            for (i, xi) in x.iter().enumerate() {
                acc += BigInt::from(matrix[i][j]) * xi;
            }
            acc.mod_floor(&BigInt::from(dst[j]))
        })
        .collect()
}

fn scalar_mul(orders: &[u64], scalar: &BigInt, x: &[BigInt]) -> Vec<BigInt> {
    x.iter()
        .zip(orders)
        .map(|(xi, &o)| (scalar * xi).mod_floor(&BigInt::from(o)))
        .collect()
}

fn validate(data: &CnpmData) -> Result<()> {
    if data.p < 3 || !is_prime(data.p) {
        return Err(Error::NotOddPrime(data.p));
    }
    if data.m == 0 || data.levels.len() != data.m {
        return Err(Error::Malformed(format!(
            "expected {} levels, got {}",
            data.m,
            data.levels.len()
        )));
    }
    if data.norm_maps.len() + 1 != data.m {
        return Err(Error::Malformed(format!(
            "expected {} norm maps, got {}",
            data.m - 1,
            data.norm_maps.len()
        )));
    }
    for (idx, level) in data.levels.iter().enumerate() {
        let k = idx + 1;
        let pk = BigInt::from(data.p).pow(k as u32);
        for &o in &level.orders {
            let o_big = BigInt::from(o);
            // each cyclic factor is a p-power dividing p^k
            if o == 0 || !(&pk % &o_big).is_zero() {
                return Err(Error::Malformed(format!(
                    "level {k}: cyclic order {o} does not divide p^{k}"
                )));
            }
        }
        if level.f.len() != level.orders.len() {
            return Err(Error::Malformed(format!(
                "level {k}: candidate has {} coordinates, module has {}",
                level.f.len(),
                level.orders.len()
            )));
        }
        for gen in &level.galois_generators {
            if gen.a % data.p == 0 {
                return Err(Error::Malformed(format!(
                    "level {k}: galois generator a = {} is not a unit mod p^{k}",
                    gen.a
                )));
            }
            check_hom(&level.orders, &level.orders, &gen.matrix, &format!("level {k} galois"))?;
        }
    }
    for (idx, nm) in data.norm_maps.iter().enumerate() {
        let k = idx + 2;
        check_hom(
            &data.levels[idx].orders,
            &data.levels[idx + 1].orders,
            nm,
            &format!("norm map into level {k}"),
        )?;
    }
    Ok(())
}

/// Checks the eigenspace condition (i) on the declared Galois generators and
/// the norm-compatibility condition (ii) across levels, for the exponent n.
pub fn cnpm_check(n: u64, data: &CnpmData) -> Result<CnpmReport> {
    if n == 0 {
        return Err(Error::Malformed("n must be >= 1".into()));
    }
    validate(data)?;
    let mut violations = Vec::new();
    let fmt = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();

    for (idx, level) in data.levels.iter().enumerate() {
        let k = idx + 1;
        let f = reduce_coords(&level.orders, &level.f);
        // (i) sigma_a(f_k) = a^{n-1} f_k on each declared generator
        for gen in &level.galois_generators {
            let lhs = apply_hom(&level.orders, &gen.matrix, &f);
            let pk = BigInt::from(data.p).pow(k as u32);
            let scalar = BigInt::from(gen.a).modpow(&BigInt::from(n - 1), &pk);
            let rhs = scalar_mul(&level.orders, &scalar, &f);
            if lhs != rhs {
                violations.push(CnpmViolation {
                    level: k,
                    kind: "galois".into(),
                    galois_a: Some(gen.a),
                    lhs: fmt(&lhs),
                    rhs: fmt(&rhs),
                });
            }
        }
        // (ii) N_{k-1}(f_{k-1}) = p^{n-1} f_k
        if idx > 0 {
            let prev = &data.levels[idx - 1];
            let f_prev = reduce_coords(&prev.orders, &prev.f);
            let lhs = apply_hom(&level.orders, &data.norm_maps[idx - 1], &f_prev);
            let pk = BigInt::from(data.p).pow(k as u32);
            let scalar = BigInt::from(data.p).modpow(&BigInt::from(n - 1), &pk);
            let rhs = scalar_mul(&level.orders, &scalar, &f);
            if lhs != rhs {
                violations.push(CnpmViolation {
                    level: k,
                    kind: "norm".into(),
                    galois_a: None,
                    lhs: fmt(&lhs),
                    rhs: fmt(&rhs),
                });
            }
        }
    }

    Ok(CnpmReport { p: data.p, n, accepted: violations.is_empty(), violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// one level, module Z/p, sigma_a acting by multiplication by a^{n-1}
    fn single_level(p: u64, power: u64, f: i64) -> CnpmData {
        CnpmData {
            p,
            m: 1,
            levels: vec![CnpmLevel {
                orders: vec![p],
                galois_generators: vec![GaloisGen { a: 2, matrix: vec![vec![power as i64]] }],
                f: vec![f],
            }],
            norm_maps: vec![],
        }
    }

    #[test]
    fn zero_tuple_accepted() {
        // regardless of the declared action, f = 0 satisfies both conditions
        let data = single_level(37, 5, 0);
        let report = cnpm_check(3, &data).unwrap();
        assert!(report.accepted);
    }

    #[test]
    fn exact_action_accepted_perturbed_rejected() {
        // n = 2: sigma_2 must act by 2 on f
        let good = single_level(37, 2, 1);
        assert!(cnpm_check(2, &good).unwrap().accepted);
        let bad = single_level(37, 3, 1);
        let report = cnpm_check(2, &bad).unwrap();
        assert!(!report.accepted);
        assert_eq!(report.violations[0].kind, "galois");
        assert_eq!(report.violations[0].galois_a, Some(2));
    }

    #[test]
    fn n1_with_nontrivial_action_accepts_only_zero() {
        // module with trivial (0)-eigenspace: sigma_2 acts by 2, so
        // sigma_2 f = f forces f = 0 mod 37
        for f in 0..37 {
            let data = single_level(37, 2, f);
            let accepted = cnpm_check(1, &data).unwrap().accepted;
            assert_eq!(accepted, f == 0, "f = {f}");
        }
    }

    #[test]
    fn norm_condition_checked_across_levels() {
        // two levels Z/3, Z/9; norm map multiplication by 3; n = 2:
        // N(f_1) = 3 f_1 must equal p^{n-1} f_2 = 3 f_2 in Z/9.
        let mk = |f1: i64, f2: i64| CnpmData {
            p: 3,
            m: 2,
            levels: vec![
                CnpmLevel {
                    orders: vec![3],
                    galois_generators: vec![GaloisGen { a: 2, matrix: vec![vec![2]] }],
                    f: vec![f1],
                },
                CnpmLevel {
                    orders: vec![9],
                    galois_generators: vec![GaloisGen { a: 2, matrix: vec![vec![2]] }],
                    f: vec![f2],
                },
            ],
            norm_maps: vec![vec![vec![3]]],
        };
        assert!(cnpm_check(2, &mk(1, 1)).unwrap().accepted);
        let report = cnpm_check(2, &mk(1, 2)).unwrap();
        assert!(!report.accepted);
        assert!(report.violations.iter().any(|v| v.kind == "norm"));
    }

    #[test]
    fn malformed_data_rejected() {
        let mut data = single_level(37, 2, 1);
        data.levels[0].orders = vec![36];
        assert!(matches!(cnpm_check(2, &data), Err(Error::Malformed(_))));
        let data = single_level(4, 2, 1);
        assert!(matches!(cnpm_check(2, &data), Err(Error::NotOddPrime(4))));
    }
}
