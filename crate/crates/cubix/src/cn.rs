//! Finite presentations of the symmetric powers C_n(A) of the augmentation
//! ideal of `Z[A]` for finite abelian A, their abelian-group structure via
//! Smith normal form, and the well-definedness audit for evaluation of
//! cubic elements on the defining relations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::cubic::character_value;
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::ring::GroupRingElement;
use crate::snf::{smith_normal_form, SnfResult};

/// Presentation of C_n(A): generators are n-tuples of nonidentity elements
/// of A; relation rows live in the free abelian group on the generators.
#[derive(Debug, Clone)]
pub struct CnPresentation {
    pub group: FiniteAbelianGroup,
    pub n: usize,
    pub generators: Vec<GroupElement>,
    pub relations: Vec<Vec<BigInt>>,
}

/// Structure extracted from the presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnStructure {
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
    pub generator_count: usize,
    pub relation_count: usize,
}

fn nonzero_tuples(a: &FiniteAbelianGroup, n: usize) -> Vec<GroupElement> {
    let rank = a.rank();
    a.elements(n)
        .into_iter()
        .filter(|g| (0..n).all(|slot| g.slot(rank.max(1), slot).iter().any(|&c| c != 0)))
        .collect()
}

fn tuple_from_slots(a: &FiniteAbelianGroup, slots: &[Vec<i64>]) -> Result<GroupElement> {
    a.reduce(slots.len(), &slots.concat())
}

/// Builds the presentation: degenerate tuples (any identity slot) are zero
/// up front; relations are (i) identifications under adjacent transpositions
/// and (ii) the four-term module relation over all (a_0, ..., a_n).
pub fn cn_presentation(a: &FiniteAbelianGroup, n: usize, cap: u128) -> Result<CnPresentation> {
    if n < 1 {
        return Err(Error::ArityTooSmall { min: 1, got: n });
    }
    let order = a.order()? as u128;
    let work = order.saturating_pow(n as u32 + 1);
    if work > cap {
        return Err(Error::CapExceeded { needed: work, cap });
    }
    let generators = nonzero_tuples(a, n);
    let index: BTreeMap<&GroupElement, usize> =
        generators.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let rank = a.rank().max(1);
    let mut relations: Vec<Vec<BigInt>> = Vec::new();

    // (i) Sym identifications: [.., a_i, a_{i+1}, ..] = [.., a_{i+1}, a_i, ..]
    for g in &generators {
        for i in 0..n.saturating_sub(1) {
            let mut coords: Vec<i64> = g.coords().iter().map(|&c| c as i64).collect();
            for r in 0..rank {
                coords.swap(i * rank + r, (i + 1) * rank + r);
            }
            let swapped = a.reduce(n, &coords)?;
            if swapped == *g {
                continue;
            }
            let mut row = vec![BigInt::zero(); generators.len()];
            row[index[g]] += 1;
            row[index[&swapped]] -= 1;
            relations.push(row);
        }
    }

    // (ii) the module relation, instantiated over all (n+1)-tuples; brackets
    // with an identity slot vanish and contribute nothing.
    if n >= 2 {
        for tuple in a.elements(n + 1) {
            let slot = |i: usize| -> Vec<i64> {
                tuple.coords()[i * rank..(i + 1) * rank].iter().map(|&x| x as i64).collect()
            };
            let merge = |i: usize, j: usize| -> Vec<i64> {
                slot(i).iter().zip(slot(j)).map(|(x, y)| x + y).collect()
            };
            let mut row = vec![BigInt::zero(); generators.len()];
            let mut touched = false;
            let mut add = |slots: Vec<Vec<i64>>, sign: i64| -> Result<()> {
                let t = tuple_from_slots(a, &slots)?;
                if let Some(&idx) = index.get(&t) {
                    row[idx] += sign;
                    touched = true;
                }
                Ok(())
            };
            // [a1,...,an]
            add((1..=n).map(slot).collect(), 1)?;
            // [a0, a1+a2, a3, ..., an]
            add([slot(0), merge(1, 2)].into_iter().chain((3..=n).map(slot)).collect(), 1)?;
            // [a0, a1, a3, ..., an]
            add([slot(0), slot(1)].into_iter().chain((3..=n).map(slot)).collect(), -1)?;
            // [a0+a1, a2, ..., an]
            add(std::iter::once(merge(0, 1)).chain((2..=n).map(slot)).collect(), -1)?;
            if touched && row.iter().any(|c| !c.is_zero()) {
                relations.push(row);
            }
        }
    }

    Ok(CnPresentation { group: a.clone(), n, generators, relations })
}

impl CnPresentation {
    pub fn snf(&self) -> SnfResult {
        smith_normal_form(self.relations.clone(), self.generators.len())
    }

    pub fn structure(&self) -> CnStructure {
        let snf = self.snf();
        CnStructure {
            invariant_factors: snf.invariant_factors().iter().map(|d| d.to_string()).collect(),
            free_rank: snf.free_rank(),
            generator_count: self.generators.len(),
            relation_count: self.relations.len(),
        }
    }
}

/// Invariant factors and free rank of C_n(A).
pub fn cn_structure(a: &FiniteAbelianGroup, n: usize, cap: u128) -> Result<CnStructure> {
    Ok(cn_presentation(a, n, cap)?.structure())
}

/// One violated instance found by `alpha_well_defined`.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaViolation {
    pub kind: String,
    pub tuple: Vec<u64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaReport {
    pub pass: bool,
    pub violations: Vec<AlphaViolation>,
}

const MAX_VIOLATIONS: usize = 16;

/// Checks that evaluation at c respects every defining relation of C_n(A),
/// with A the character-index group of G and values taken in the cyclotomic
/// quotient ring. For a cubic unit this passes; for an element satisfying
/// only the degeneracy conditions, the violated relations are reported.
pub fn alpha_well_defined(c: &GroupRingElement, cap: u128) -> Result<AlphaReport> {
    let n = c.arity();
    if n < 2 {
        return Err(Error::ArityTooSmall { min: 2, got: n });
    }
    let a = c.base().clone();
    let order = a.order()? as u128;
    let work = order.saturating_pow(n as u32 + 1);
    if work > cap {
        return Err(Error::CapExceeded { needed: work, cap });
    }
    let exponent = a.exponent();
    let rank = a.rank().max(1);
    let one = character_value(
        &GroupRingElement::one(c.ring().clone(), a.clone(), n),
        exponent,
        &a.zero(n),
    )?;
    let is_degenerate =
        |t: &GroupElement| (0..n).any(|s| t.slot(rank, s).iter().all(|&x| x == 0));
    let value = |t: &GroupElement| -> Result<crate::cubic::CycPoly> {
        if is_degenerate(t) {
            // degenerate generators are zero in C_n(A); their value is 1
            Ok(one.clone())
        } else {
            character_value(c, exponent, t)
        }
    };

    let mut violations = Vec::new();
    let push = |v: AlphaViolation, violations: &mut Vec<AlphaViolation>| {
        if violations.len() < MAX_VIOLATIONS {
            violations.push(v);
        }
    };

    // degeneracy: tuples with an identity slot must evaluate to 1
    for t in a.elements(n) {
        if !is_degenerate(&t) {
            continue;
        }
        let v = character_value(c, exponent, &t)?;
        if v != one {
            push(
                AlphaViolation {
                    kind: "degeneracy".into(),
                    tuple: t.coords().to_vec(),
                    lhs: v.to_string(),
                    rhs: "1".into(),
                },
                &mut violations,
            );
        }
    }

    // symmetry identifications
    for t in a.elements(n) {
        let v = value(&t)?;
        for i in 0..n - 1 {
            let mut coords: Vec<i64> = t.coords().iter().map(|&x| x as i64).collect();
            for r in 0..rank {
                coords.swap(i * rank + r, (i + 1) * rank + r);
            }
            let swapped = a.reduce(n, &coords)?;
            let vs = value(&swapped)?;
            if vs != v {
                push(
                    AlphaViolation {
                        kind: "symmetry".into(),
                        tuple: t.coords().to_vec(),
                        lhs: v.to_string(),
                        rhs: vs.to_string(),
                    },
                    &mut violations,
                );
            }
        }
    }

    // module relations: value[a1..an] * value[a0, a1+a2, ..] =
    //                   value[a0, a1, a3, ..] * value[a0+a1, a2, ..]
    let ring = c.ring().clone();
    for tuple in a.elements(n + 1) {
        let slot = |i: usize| -> Vec<i64> {
            tuple.coords()[i * rank..(i + 1) * rank].iter().map(|&x| x as i64).collect()
        };
        let merge = |i: usize, j: usize| -> Vec<i64> {
            slot(i).iter().zip(slot(j)).map(|(x, y)| x + y).collect()
        };
        let t1 = tuple_from_slots(&a, &(1..=n).map(slot).collect::<Vec<_>>())?;
        let t2 = tuple_from_slots(
            &a,
            &[slot(0), merge(1, 2)].into_iter().chain((3..=n).map(slot)).collect::<Vec<_>>(),
        )?;
        let t3 = tuple_from_slots(
            &a,
            &[slot(0), slot(1)].into_iter().chain((3..=n).map(slot)).collect::<Vec<_>>(),
        )?;
        let t4 = tuple_from_slots(
            &a,
            &std::iter::once(merge(0, 1)).chain((2..=n).map(slot)).collect::<Vec<_>>(),
        )?;
        let lhs = value(&t1)?.mul(&value(&t2)?, &ring);
        let rhs = value(&t3)?.mul(&value(&t4)?, &ring);
        if lhs != rhs {
            push(
                AlphaViolation {
                    kind: "relation".into(),
                    tuple: tuple.coords().to_vec(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                },
                &mut violations,
            );
        }
    }

    Ok(AlphaReport { pass: violations.is_empty(), violations })
}
