//! Verification, generation and transformation of n-cubic group-ring
//! elements. The conditions (c0), (c1), (c2) are checked as exact identities
//! of group-ring elements via pushforwards; a character-table oracle over a
//! cyclotomic quotient ring provides an independent verdict on small groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{transpositions, FiniteAbelianGroup, GroupElement, GroupHom};
use crate::ring::{Coeff, CoeffRing, GroupRingElement};

/// Outcome of a cubic-condition check.
#[derive(Debug, Clone)]
pub struct CubicCheck {
    pub ok: bool,
    /// "c0", "c1" or "c2" when a condition fails.
    pub failed_condition: Option<String>,
    /// A derived element that should equal 1 but does not.
    pub witness: Option<GroupRingElement>,
}

impl CubicCheck {
    fn pass() -> Self {
        CubicCheck { ok: true, failed_condition: None, witness: None }
    }

    fn fail(cond: &str, witness: Option<GroupRingElement>) -> Self {
        CubicCheck { ok: false, failed_condition: Some(cond.to_string()), witness }
    }
}

/// Checks conditions (c0), (c1), (c2) for an element of R[G^n], plus the
/// slice consequence (c0'). Unit failure is reported as an error, distinct
/// from a condition failure.
pub fn is_cubic(c: &GroupRingElement, n: usize) -> Result<CubicCheck> {
    if n < 2 {
        return Err(Error::ArityTooSmall { min: 2, got: n });
    }
    if c.arity() != n {
        return Err(Error::ArityMismatch { expected: n, got: c.arity() });
    }
    let inv = c.invert_unit()?;

    // (c0): augmentation is 1.
    if c.augmentation() != c.ring().one() {
        return Ok(CubicCheck::fail("c0", None));
    }

    // (c1): invariance under every transposition of tuple slots.
    for perm in transpositions(n) {
        let sigma = GroupHom::permutation(c.base().clone(), &perm)?;
        let permuted = c.pushforward(&sigma)?;
        if permuted != *c {
            let witness = permuted.multiply(&inv)?;
            return Ok(CubicCheck::fail("c1", Some(witness)));
        }
    }

    // (c2): the cocycle identity in R[G^{n+1}],
    //   push_A(c) push_B(c) = push_C(c) push_D(c),
    // with A duplicating slot 0 into (0,1), B inserting the identity at
    // slot 2, C duplicating slot 1 into (1,2), D inserting at slot 0.
    let base = c.base().clone();
    let lhs = c
        .pushforward(&GroupHom::duplicate(base.clone(), n, 0)?)?
        .multiply(&c.pushforward(&GroupHom::insert_zero(base.clone(), n, 2)?)?)?;
    let rhs = c
        .pushforward(&GroupHom::duplicate(base.clone(), n, 1)?)?
        .multiply(&c.pushforward(&GroupHom::insert_zero(base.clone(), n, 0)?)?)?;
    if lhs != rhs {
        let witness = lhs.multiply(&rhs.invert_unit()?)?;
        return Ok(CubicCheck::fail("c2", Some(witness)));
    }

    // (c0') consequence: every slice at a trivial character is 1. Implied by
    // (c0)-(c2); kept as a consistency audit and folded under "c2".
    for k in 0..n {
        let del = GroupHom::delete(base.clone(), n, k)?;
        let slice = c.pushforward(&del)?;
        if !slice.is_one() {
            return Ok(CubicCheck::fail("c2", Some(slice)));
        }
    }

    Ok(CubicCheck::pass())
}

/// An element verified to be n-cubic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicElement {
    element: GroupRingElement,
    arity: usize,
}

impl CubicElement {
    pub fn verify(element: GroupRingElement, arity: usize) -> Result<Self> {
        let check = is_cubic(&element, arity)?;
        if !check.ok {
            return Err(Error::NotCubic {
                arity,
                condition: check.failed_condition.unwrap_or_default(),
            });
        }
        Ok(CubicElement { element, arity })
    }

    pub fn element(&self) -> &GroupRingElement {
        &self.element
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.element.base()
    }
}

/// An element of `Z[x]/(x^N - 1)`, with coefficients reduced mod m when the
/// coefficient ring is Z/m; the value ring of the concrete character pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPoly {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl CycPoly {
    fn zero(order: u64) -> Self {
        CycPoly { order, coeffs: vec![BigInt::zero(); order as usize] }
    }

    fn reduce(&mut self, ring: &CoeffRing) {
        if let CoeffRing::Mod(m) = ring {
            let m = BigInt::from(*m);
            for c in &mut self.coeffs {
                *c = c.mod_floor(&m);
            }
        }
    }

    fn add_power(&mut self, exponent: u64, c: &BigInt) {
        let idx = (exponent % self.order) as usize;
        self.coeffs[idx] += c;
    }

    pub fn mul(&self, other: &Self, ring: &CoeffRing) -> Self {
        let mut out = CycPoly::zero(self.order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % self.order as usize;
                out.coeffs[k] += a * b;
            }
        }
        out.reduce(ring);
        out
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { format!("{c}") } else { format!("{c}*x^{i}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// The table of all character-tuple values of c, computed in `Z[x]/(x^N - 1)`
/// with N the exponent of the base group. Characters of G^n are indexed by
/// elements of G^n through the natural pairing.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub exponent: u64,
    pub values: Vec<(GroupElement, CycPoly)>,
}

fn pairing_exponent(
    base: &FiniteAbelianGroup,
    exponent: u64,
    chi: &GroupElement,
    g: &GroupElement,
) -> u64 {
    let rank = base.rank().max(1);
    let mut acc: u128 = 0;
    for (i, (&t, &x)) in chi.coords().iter().zip(g.coords()).enumerate() {
        let order = base.orders()[i % rank] as u128;
        let weight = exponent as u128 / order;
        acc = (acc + (t as u128) * (x as u128) % (exponent as u128) * weight) % exponent as u128;
    }
    acc as u64
}

pub(crate) fn character_value(
    c: &GroupRingElement,
    exponent: u64,
    chi: &GroupElement,
) -> Result<CycPoly> {
    let mut value = CycPoly::zero(exponent);
    for (g, coeff) in c.coeffs() {
        let e = pairing_exponent(c.base(), exponent, chi, g);
        let v = match coeff {
            Coeff::Int(v) => v.clone(),
            Coeff::Rat(_) => {
                return Err(Error::Malformed(
                    "character oracle requires coefficients in Z or Z/m".into(),
                ))
            }
        };
        value.add_power(e, &v);
    }
    value.reduce(c.ring());
    Ok(value)
}

/// Evaluates every character tuple on c. Work is |G|^n values, each a sum of
/// up to |G|^n powers, guarded by `cap`.
pub fn character_oracle(c: &GroupRingElement, cap: u128) -> Result<CharacterTable> {
    let n = c.arity();
    let size = c.base().power_order(n)? as u128;
    let needed = size.saturating_mul(size);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let exponent = c.base().exponent();
    let mut values = Vec::new();
    for chi in c.base().elements(n) {
        let v = character_value(c, exponent, &chi)?;
        values.push((chi, v));
    }
    Ok(CharacterTable { exponent, values })
}

/// Independent verdict on (c0), (c1), (c2), computed entirely through
/// concrete character values in the cyclotomic quotient ring. Used as an
/// oracle for `is_cubic` on small groups; does not test unit-ness.
pub fn oracle_cubic_check(c: &GroupRingElement, n: usize, cap: u128) -> Result<CubicCheck> {
    if n < 2 {
        return Err(Error::ArityTooSmall { min: 2, got: n });
    }
    if c.arity() != n {
        return Err(Error::ArityMismatch { expected: n, got: c.arity() });
    }
    let base = c.base().clone();
    let size = base.power_order(n)? as u128;
    let tuple_work = (base.order()? as u128)
        .saturating_pow(n as u32 + 1)
        .saturating_mul(size);
    if tuple_work > cap {
        return Err(Error::CapExceeded { needed: tuple_work, cap });
    }
    let exponent = base.exponent();
    let value = |chi: &GroupElement| character_value(c, exponent, chi);

    // (c0)
    if !value(&base.zero(n))?.is_one() {
        return Ok(CubicCheck::fail("c0", None));
    }

    // (c1): the value table is symmetric under permuting the tuple.
    let rank = base.rank();
    for chi in base.elements(n) {
        let v = value(&chi)?;
        for perm in transpositions(n) {
            let mut coords = vec![0i64; n * rank];
            for (slot, &target) in perm.iter().enumerate() {
                for r in 0..rank {
                    coords[target * rank + r] = chi.coords()[slot * rank + r] as i64;
                }
            }
            let permuted = base.reduce(n, &coords)?;
            if value(&permuted)? != v {
                return Ok(CubicCheck::fail("c1", None));
            }
        }
    }

    // (c2): for every (n+1)-tuple of characters.
    let ring = c.ring().clone();
    for tau in base.elements(n + 1) {
        let slot = |i: usize| -> Vec<i64> {
            tau.coords()[i * rank..(i + 1) * rank].iter().map(|&x| x as i64).collect()
        };
        let merge = |i: usize, j: usize| -> Vec<i64> {
            slot(i).iter().zip(slot(j)).map(|(a, b)| a + b).collect()
        };
        let build = |slots: Vec<Vec<i64>>| base.reduce(n, &slots.concat());
        // (t0*t1, t2, ..., tn)
        let lhs1 = build(std::iter::once(merge(0, 1)).chain((2..=n).map(slot)).collect())?;
        // (t0, t1, t3, ..., tn)
        let lhs2 = build([slot(0), slot(1)].into_iter().chain((3..=n).map(slot)).collect())?;
        // (t0, t1*t2, t3, ..., tn)
        let rhs1 = build([slot(0), merge(1, 2)].into_iter().chain((3..=n).map(slot)).collect())?;
        // (t1, t2, ..., tn)
        let rhs2 = build((1..=n).map(slot).collect())?;
        let lhs = value(&lhs1)?.mul(&value(&lhs2)?, &ring);
        let rhs = value(&rhs1)?.mul(&value(&rhs2)?, &ring);
        if lhs != rhs {
            return Ok(CubicCheck::fail("c2", None));
        }
    }
    Ok(CubicCheck::pass())
}

/// The coboundary construction: for a unit u of `R[G]` with augmentation 1,
/// the alternating product over subsets I of {1,...,n} of u pushed along
/// g -> (g in the slots of I, identity elsewhere). Always n-cubic.
pub fn theta_cocycle(u: &GroupRingElement, n: usize) -> Result<GroupRingElement> {
    if n < 2 {
        return Err(Error::ArityTooSmall { min: 2, got: n });
    }
    if u.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, got: u.arity() });
    }
    let inv = u.invert_unit()?;
    if u.augmentation() != u.ring().one() {
        return Err(Error::AugmentationNotOne);
    }
    let mut acc = GroupRingElement::one(u.ring().clone(), u.base().clone(), n);
    for mask in 0..1u32 << n {
        let matrix = vec![(0..n).map(|i| i64::from(mask >> i & 1 == 1)).collect()];
        let iota = GroupHom::new(u.base().clone(), 1, n, matrix)?;
        let odd = (n - mask.count_ones() as usize) % 2 == 1;
        let factor = if odd { inv.pushforward(&iota)? } else { u.pushforward(&iota)? };
        acc = acc.multiply(&factor)?;
    }
    Ok(acc)
}

/// Lifts an (n-1)-cubic element to an n-cubic one:
/// c = push_{C'}(c') * push_{A'}(c')^{-1} * push_{B'}(c')^{-1} with
/// C' duplicating slot 0, A' inserting the identity at slot 1, B' at slot 0.
pub fn induce(c_prime: &GroupRingElement) -> Result<GroupRingElement> {
    let m = c_prime.arity();
    if m < 2 {
        return Err(Error::ArityTooSmall { min: 2, got: m });
    }
    let check = is_cubic(c_prime, m)?;
    if !check.ok {
        return Err(Error::NotCubic {
            arity: m,
            condition: check.failed_condition.unwrap_or_default(),
        });
    }
    let base = c_prime.base().clone();
    let c_map = GroupHom::duplicate(base.clone(), m, 0)?;
    let a_map = GroupHom::insert_zero(base.clone(), m, 1)?;
    let b_map = GroupHom::insert_zero(base, m, 0)?;
    let inv = c_prime.invert_unit()?;
    c_prime
        .pushforward(&c_map)?
        .multiply(&inv.pushforward(&a_map)?)?
        .multiply(&inv.pushforward(&b_map)?)
}

/// Result of the multiextension partial-composition-law audit.
#[derive(Debug, Clone, Serialize)]
pub struct LawCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiextReport {
    pub laws: Vec<LawCheck>,
    pub all_pass: bool,
}

/// One multiplier of the i-th composition law, as a pushforward matrix into
/// G^vars: c-slots i, i+1 read the two combining entries (each a sum of
/// variables); tuple slot t != i reads the single variable reader(t).
fn law_multiplier(
    elem: &GroupRingElement,
    vars: usize,
    i: usize,
    first: &[usize],
    second: &[usize],
    reader: impl Fn(usize) -> Vec<usize>,
) -> Result<GroupRingElement> {
    let n = elem.arity();
    let mut matrix = vec![vec![0i64; vars]; n];
    for &v in first {
        matrix[i][v] += 1;
    }
    for &v in second {
        matrix[i + 1][v] += 1;
    }
    for t in 0..n - 1 {
        if t == i {
            continue;
        }
        let c_slot = if t < i { t } else { t + 1 };
        for v in reader(t) {
            matrix[c_slot][v] += 1;
        }
    }
    elem.pushforward(&GroupHom::new(elem.base().clone(), n, vars, matrix)?)
}

/// Independently re-derives the unit-section, commutativity, associativity
/// and pairwise compatibility identities of the multiplication-by-c
/// composition laws and checks them as exact group-ring identities.
pub fn multiextension_laws_check(c: &CubicElement) -> Result<MultiextReport> {
    multiextension_laws_check_element(c.element(), c.arity())
}

/// The raw audit, usable on unverified elements (perturbation fuzzing).
/// None of the checks requires inversion.
pub fn multiextension_laws_check_element(
    elem: &GroupRingElement,
    n: usize,
) -> Result<MultiextReport> {
    if n < 2 {
        return Err(Error::ArityTooSmall { min: 2, got: n });
    }
    if elem.arity() != n {
        return Err(Error::ArityMismatch { expected: n, got: elem.arity() });
    }
    let base = elem.base().clone();
    let mut laws = Vec::new();

    // Unit sections: the identity fiber of each composition law is the
    // canonical trivialization, so every slice at a trivial slot must be 1.
    for slot in 0..n {
        let del = GroupHom::delete(base.clone(), n, slot)?;
        let pass = elem.pushforward(&del)?.is_one();
        laws.push(LawCheck { name: format!("unit_section_{slot}"), pass });
    }

    // Commutativity of law i: swapping the combining pair fixes c.
    for i in 0..n - 1 {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        let sigma = GroupHom::permutation(base.clone(), &perm)?;
        let pass = elem.pushforward(&sigma)? == *elem;
        laws.push(LawCheck { name: format!("commutativity_{i}"), pass });
    }

    // Associativity of law i over G^{n+1}: variables x,y,z at i, i+1, i+2,
    // tuple slot t != i at variable (t or t+2):
    //   c(..,x,y,..) c(..,x+y,z,..) = c(..,y,z,..) c(..,x,y+z,..)
    for i in 0..n - 1 {
        let vars = n + 1;
        let reader = |t: usize| vec![if t < i { t } else { t + 2 }];
        let x = vec![i];
        let y = vec![i + 1];
        let z = vec![i + 2];
        let xy = vec![i, i + 1];
        let yz = vec![i + 1, i + 2];
        let lhs = law_multiplier(elem, vars, i, &x, &y, reader)?
            .multiply(&law_multiplier(elem, vars, i, &xy, &z, reader)?)?;
        let rhs = law_multiplier(elem, vars, i, &y, &z, reader)?
            .multiply(&law_multiplier(elem, vars, i, &x, &yz, reader)?)?;
        laws.push(LawCheck { name: format!("associativity_{i}"), pass: lhs == rhs });
    }

    // Compatibility of laws i < j over G^{n+1}: pairs (x,x') at variables
    // i, i+1 and (y,y') at  j+1, j+2:
    //   c^i(y) c^i(y') c^j(x+x') = c^j(x) c^j(x') c^i(y+y')
    for i in 0..n - 1 {
        for j in (i + 1)..n - 1 {
            let vars = n + 1;
            let var_of = |t: usize| {
                if t < i {
                    t
                } else if t < j {
                    t + 1
                } else {
                    t + 3
                }
            };
            let x = vec![i];
            let xp = vec![i + 1];
            let y = vec![j + 1];
            let yp = vec![j + 2];
            let xxp = vec![i, i + 1];
            let yyp = vec![j + 1, j + 2];
            // c^i multiplier with tuple slot j reading `at_j`
            let ci = |at_j: &[usize]| {
                let at_j = at_j.to_vec();
                law_multiplier(elem, vars, i, &x, &xp, move |t| {
                    if t == j {
                        at_j.clone()
                    } else {
                        vec![var_of(t)]
                    }
                })
            };
            // c^j multiplier with tuple slot i reading `at_i`
            let cj = |at_i: &[usize]| {
                let at_i = at_i.to_vec();
                law_multiplier(elem, vars, j, &y, &yp, move |t| {
                    if t == i {
                        at_i.clone()
                    } else {
                        vec![var_of(t)]
                    }
                })
            };
            let r1 = ci(&y)?.multiply(&ci(&yp)?)?.multiply(&cj(&xxp)?)?;
            let r2 = cj(&x)?.multiply(&cj(&xp)?)?.multiply(&ci(&yyp)?)?;
            laws.push(LawCheck { name: format!("compatibility_{i}_{j}"), pass: r1 == r2 });
        }
    }

    let all_pass = laws.iter().all(|l| l.pass);
    Ok(MultiextReport { laws, all_pass })
}
