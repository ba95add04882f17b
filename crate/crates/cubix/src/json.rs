//! JSON interchange formats: the element format shared by all modules and
//! the CLI, and the serializations of check reports and polynomial types.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cubic::CubicCheck;
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::ring::{CoeffRing, GroupRingElement};
use crate::sym::{FreeMonomial, LaurentPoly, SymElement};

/// "Z" | {"Zmod": m} | "Q"
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingJson {
    Name(String),
    Zmod { #[serde(rename = "Zmod")] modulus: u64 },
}

impl RingJson {
    pub fn to_ring(&self) -> Result<CoeffRing> {
        match self {
            RingJson::Name(s) if s == "Z" => Ok(CoeffRing::Integers),
            RingJson::Name(s) if s == "Q" => Ok(CoeffRing::Rationals),
            RingJson::Name(s) => Err(Error::Malformed(format!("unknown ring {s:?}"))),
            RingJson::Zmod { modulus } => CoeffRing::modulus(*modulus),
        }
    }

    pub fn from_ring(ring: &CoeffRing) -> Self {
        match ring {
            CoeffRing::Integers => RingJson::Name("Z".into()),
            CoeffRing::Rationals => RingJson::Name("Q".into()),
            CoeffRing::Mod(m) => RingJson::Zmod { modulus: *m },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Num(i64),
    Str(String),
}

impl CoeffJson {
    fn as_string(&self) -> String {
        match self {
            CoeffJson::Num(v) => v.to_string(),
            CoeffJson::Str(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub g: Vec<Vec<i64>>,
    pub c: CoeffJson,
}

/// The element format:
/// { "ring": ..., "group": [n_1, ..., n_r], "arity": a, "coeffs": [...] }
/// where each coefficient entry lists a coordinate tuples of length r.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    pub ring: RingJson,
    pub group: Vec<u64>,
    pub arity: usize,
    pub coeffs: Vec<TermJson>,
}

impl ElementJson {
    pub fn from_element(x: &GroupRingElement) -> Self {
        let rank = x.base().rank();
        let coeffs = x
            .coeffs()
            .iter()
            .map(|(g, c)| TermJson {
                g: (0..x.arity())
                    .map(|slot| g.slot(rank.max(1), slot).iter().map(|&v| v as i64).collect())
                    .collect(),
                c: CoeffJson::Str(c.to_string()),
            })
            .collect();
        ElementJson {
            ring: RingJson::from_ring(x.ring()),
            group: x.base().orders().to_vec(),
            arity: x.arity(),
            coeffs,
        }
    }

    pub fn to_element(&self) -> Result<GroupRingElement> {
        let ring = self.ring.to_ring()?;
        let base = FiniteAbelianGroup::new(self.group.clone())?;
        let rank = base.rank();
        let mut terms = Vec::new();
        for term in &self.coeffs {
            if term.g.len() != self.arity {
                return Err(Error::Malformed(format!(
                    "coordinate entry lists {} tuples, arity is {}",
                    term.g.len(),
                    self.arity
                )));
            }
            let mut flat = Vec::with_capacity(self.arity * rank);
            for tuple in &term.g {
                if tuple.len() != rank {
                    return Err(Error::Malformed(format!(
                        "coordinate tuple {:?} has length {}, group rank is {rank}",
                        tuple,
                        tuple.len()
                    )));
                }
                flat.extend_from_slice(tuple);
            }
            let g = base.reduce(self.arity, &flat)?;
            let c = ring.parse(&term.c.as_string())?;
            terms.push((g, c));
        }
        Ok(GroupRingElement::from_terms(ring, base, self.arity, terms))
    }
}

pub fn element_to_json(x: &GroupRingElement) -> String {
    serde_json::to_string_pretty(&ElementJson::from_element(x)).expect("element serializes")
}

pub fn element_from_json(s: &str) -> Result<GroupRingElement> {
    let parsed: ElementJson =
        serde_json::from_str(s).map_err(|e| Error::Malformed(format!("element json: {e}")))?;
    parsed.to_element()
}

/// {ok, failed_condition: "c0"|"c1"|"c2"|null, witness: element?}
#[derive(Debug, Clone, Serialize)]
pub struct CubicCheckJson {
    pub ok: bool,
    pub failed_condition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ElementJson>,
}

impl CubicCheckJson {
    pub fn from_check(check: &CubicCheck) -> Self {
        CubicCheckJson {
            ok: check.ok,
            failed_condition: check.failed_condition.clone(),
            witness: check.witness.as_ref().map(ElementJson::from_element),
        }
    }
}

fn monomial_to_json(m: &FreeMonomial) -> BTreeMap<String, i64> {
    m.exponents().iter().map(|&(i, e)| (i.to_string(), e)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct LaurentTermJson {
    pub m: BTreeMap<String, i64>,
    pub c: String,
}

/// `{"terms": [{"m": {"0": e0, ...}, "c": "<int>"}]}`
#[derive(Debug, Clone, Serialize)]
pub struct LaurentJson {
    pub terms: Vec<LaurentTermJson>,
}

impl LaurentJson {
    pub fn from_poly(p: &LaurentPoly) -> Self {
        LaurentJson {
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| LaurentTermJson { m: monomial_to_json(m), c: c.to_string() })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SymTermJson {
    pub factors: Vec<BTreeMap<String, i64>>,
    pub c: String,
}

/// Degree plus the list of pure-tensor terms.
#[derive(Debug, Clone, Serialize)]
pub struct SymJson {
    pub degree: usize,
    pub terms: Vec<SymTermJson>,
}

impl SymJson {
    pub fn from_sym(e: &SymElement) -> Self {
        SymJson {
            degree: e.degree(),
            terms: e
                .terms()
                .iter()
                .map(|(t, c)| SymTermJson {
                    factors: t.factors().iter().map(monomial_to_json).collect(),
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}
