//! Coefficient rings (Z, Z/m, Q) and sparse group-ring arithmetic over
//! powers of a finite abelian base group, including unit inversion via the
//! regular representation and pushforward along homomorphisms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElement, GroupHom, SlotTarget};

/// One of the three supported coefficient rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Integers,
    /// Z/m with m >= 2.
    Mod(u64),
    Rationals,
}

/// A coefficient, stored normalized for its ring (residues in [0, m) for
/// Z/m, reduced fractions with positive denominator for Q).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
}

impl CoeffRing {
    pub fn modulus(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(CoeffRing::Mod(m))
    }

    pub fn normalize(&self, c: Coeff) -> Coeff {
        match (self, c) {
            (CoeffRing::Integers, Coeff::Int(v)) => Coeff::Int(v),
            (CoeffRing::Mod(m), Coeff::Int(v)) => {
                Coeff::Int(v.mod_floor(&BigInt::from(*m)))
            }
            (CoeffRing::Rationals, Coeff::Int(v)) => Coeff::Rat(BigRational::from(v)),
            (CoeffRing::Rationals, Coeff::Rat(v)) => Coeff::Rat(v),
            (_, Coeff::Rat(v)) => {
                // Integer rings only accept integral rationals.
                assert!(v.is_integer(), "non-integral coefficient in integer ring");
                self.normalize(Coeff::Int(v.to_integer()))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        self.normalize(Coeff::Int(BigInt::from(v)))
    }

    pub fn zero(&self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(v) => v.is_zero(),
            Coeff::Rat(v) => v.is_zero(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => self.normalize(Coeff::Int(x + y)),
            (Coeff::Rat(x), Coeff::Rat(y)) => self.normalize(Coeff::Rat(x + y)),
            _ => panic!("mixed coefficient variants"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Int(x) => self.normalize(Coeff::Int(-x)),
            Coeff::Rat(x) => self.normalize(Coeff::Rat(-x)),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => self.normalize(Coeff::Int(x * y)),
            (Coeff::Rat(x), Coeff::Rat(y)) => self.normalize(Coeff::Rat(x * y)),
            _ => panic!("mixed coefficient variants"),
        }
    }

    /// Multiplicative inverse, when one exists in this ring.
    pub fn try_invert(&self, a: &Coeff) -> Option<Coeff> {
        match (self, a) {
            (CoeffRing::Integers, Coeff::Int(v)) => {
                if v.abs().is_one() {
                    Some(Coeff::Int(v.clone()))
                } else {
                    None
                }
            }
            (CoeffRing::Mod(m), Coeff::Int(v)) => {
                let m = BigInt::from(*m);
                let ext = v.extended_gcd(&m);
                if ext.gcd.is_one() {
                    Some(self.normalize(Coeff::Int(ext.x)))
                } else {
                    None
                }
            }
            (CoeffRing::Rationals, Coeff::Rat(v)) => {
                if v.is_zero() {
                    None
                } else {
                    Some(Coeff::Rat(v.recip()))
                }
            }
            _ => panic!("mixed coefficient variants"),
        }
    }

    pub fn parse(&self, s: &str) -> Result<Coeff> {
        let bad = |_| Error::Malformed(format!("invalid coefficient {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            if *self != CoeffRing::Rationals {
                return Err(Error::Malformed(format!(
                    "fractional coefficient {s:?} outside Q"
                )));
            }
            let num: BigInt = num.trim().parse().map_err(bad)?;
            let den: BigInt = den.trim().parse().map_err(bad)?;
            if den.is_zero() {
                return Err(Error::Malformed("zero denominator".into()));
            }
            Ok(self.normalize(Coeff::Rat(BigRational::new(num, den))))
        } else {
            let v: BigInt = s.trim().parse().map_err(bad)?;
            Ok(self.normalize(Coeff::Int(v)))
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::Mod(m) => write!(f, "Z/{m}"),
            CoeffRing::Rationals => write!(f, "Q"),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(v) => write!(f, "{v}"),
            Coeff::Rat(v) => {
                if v.is_integer() {
                    write!(f, "{}", v.to_integer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
        }
    }
}

/// A sparse group-ring element over G^arity with coefficients in `ring`.
/// Zero coefficients are never stored, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    ring: CoeffRing,
    base: FiniteAbelianGroup,
    arity: usize,
    coeffs: BTreeMap<GroupElement, Coeff>,
}

impl GroupRingElement {
    pub fn zero(ring: CoeffRing, base: FiniteAbelianGroup, arity: usize) -> Self {
        GroupRingElement { ring, base, arity, coeffs: BTreeMap::new() }
    }

    pub fn one(ring: CoeffRing, base: FiniteAbelianGroup, arity: usize) -> Self {
        let mut x = Self::zero(ring, base, arity);
        let g = x.base.zero(x.arity);
        x.coeffs.insert(g, x.ring.one());
        x
    }

    /// The basis element `[g]`.
    pub fn basis(ring: CoeffRing, base: FiniteAbelianGroup, arity: usize, g: GroupElement) -> Self {
        let mut x = Self::zero(ring, base, arity);
        let c = x.ring.one();
        x.coeffs.insert(g, c);
        x
    }

    pub fn from_terms(
        ring: CoeffRing,
        base: FiniteAbelianGroup,
        arity: usize,
        terms: impl IntoIterator<Item = (GroupElement, Coeff)>,
    ) -> Self {
        let mut x = Self::zero(ring, base, arity);
        for (g, c) in terms {
            x.add_term(g, c);
        }
        x
    }

    fn add_term(&mut self, g: GroupElement, c: Coeff) {
        let c = self.ring.normalize(c);
        if self.ring.is_zero(&c) {
            return;
        }
        match self.coeffs.entry(g) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = self.ring.add(e.get(), &c);
                if self.ring.is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn base(&self) -> &FiniteAbelianGroup {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &BTreeMap<GroupElement, Coeff> {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self
                .coeffs
                .get(&self.base.zero(self.arity))
                .is_some_and(|c| *c == self.ring.one())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.base != other.base || self.arity != other.arity {
            return Err(Error::GroupMismatch(
                format!("{}^{}", self.base, self.arity),
                format!("{}^{}", other.base, other.arity),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (g, c) in &other.coeffs {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.base.clone(), self.arity);
        for (g, c) in &self.coeffs {
            out.coeffs.insert(g.clone(), self.ring.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.ring.clone(), self.base.clone(), self.arity);
        for (g, a) in &self.coeffs {
            for (h, b) in &other.coeffs {
                let k = self.base.add(g, h);
                out.add_term(k, self.ring.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.base.clone(), self.arity);
        for (g, a) in &self.coeffs {
            out.add_term(g.clone(), self.ring.mul(a, c));
        }
        out
    }

    /// Sum of coefficients (the image under the augmentation map).
    pub fn augmentation(&self) -> Coeff {
        let mut acc = self.ring.zero();
        for c in self.coeffs.values() {
            acc = self.ring.add(&acc, c);
        }
        acc
    }

    /// Linear extension of `[g] -> [phi(g)]`. A ring homomorphism.
    pub fn pushforward(&self, phi: &GroupHom) -> Result<Self> {
        if *phi.base() != self.base || phi.source_arity() != self.arity {
            return Err(Error::GroupMismatch(
                format!("{}^{}", self.base, self.arity),
                format!("{}^{}", phi.base(), phi.source_arity()),
            ));
        }
        let mut out = Self::zero(self.ring.clone(), self.base.clone(), phi.target_arity());
        for (g, c) in &self.coeffs {
            out.add_term(phi.apply(g), c.clone());
        }
        Ok(out)
    }

    /// Convenience constructor over GroupHom::embed: pushforward along the
    /// coordinate embedding G^arity -> G^target_arity described by `targets`.
    pub fn coordinate_embed(&self, targets: &[SlotTarget], target_arity: usize) -> Result<Self> {
        if targets.len() != self.arity {
            return Err(Error::MalformedSpec(format!(
                "spec names {} source coordinates, element has arity {}",
                targets.len(),
                self.arity
            )));
        }
        let phi = GroupHom::embed(self.base.clone(), target_arity, targets)?;
        self.pushforward(&phi)
    }

    /// x^k for k in Z; negative powers require x to be a unit.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return self.invert_unit()?.pow(-k);
        }
        let mut acc = Self::one(self.ring.clone(), self.base.clone(), self.arity);
        for _ in 0..k {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    pub fn is_unit(&self) -> bool {
        self.invert_unit().is_ok()
    }

    /// Inverse in the group ring. Solves the linear system given by the
    /// regular representation: over Q directly, over Z with an integrality
    /// check, and over Z/m by prime-power split and CRT recombination.
    /// The system is |G^a| x |G^a|; the enumeration cap bounds its size.
    pub fn invert_unit(&self) -> Result<Self> {
        let n = self.base.power_order(self.arity)? as usize;
        let work = (n as u128) * (n as u128);
        let cap = crate::enumeration_cap();
        if work > cap {
            return Err(Error::CapExceeded { needed: work, cap });
        }
        let full = self.base.elements(self.arity);
        let index: BTreeMap<&GroupElement, usize> =
            full.iter().enumerate().map(|(i, g)| (g, i)).collect();

        // Column h of the system matrix holds x shifted by h: (x*y)_k = sum_h x_{k-h} y_h.
        let column_of = |h: &GroupElement| -> Vec<BigInt> {
            let mut col = vec![BigInt::zero(); n];
            for (g, c) in &self.coeffs {
                let k = self.base.add(g, h);
                let v = match c {
                    Coeff::Int(v) => v.clone(),
                    Coeff::Rat(_) => unreachable!("integer path"),
                };
                col[index[&k]] = v;
            }
            col
        };

        match &self.ring {
            CoeffRing::Rationals => {
                let mut mat = vec![vec![BigRational::zero(); n]; n];
                for (h, j) in full.iter().zip(0..) {
                    for (g, c) in &self.coeffs {
                        let k = self.base.add(g, h);
                        if let Coeff::Rat(v) = c {
                            mat[index[&k]][j] = v.clone();
                        }
                    }
                }
                let sol = solve_rational(mat, n).ok_or(Error::NotAUnit)?;
                Ok(Self::from_terms(
                    self.ring.clone(),
                    self.base.clone(),
                    self.arity,
                    full.into_iter().zip(sol.into_iter().map(Coeff::Rat)),
                ))
            }
            CoeffRing::Integers => {
                let mut mat = vec![vec![BigRational::zero(); n]; n];
                for (h, j) in full.iter().zip(0..) {
                    let col = column_of(h);
                    for (i, v) in col.into_iter().enumerate() {
                        mat[i][j] = BigRational::from(v);
                    }
                }
                let sol = solve_rational(mat, n).ok_or(Error::NotAUnit)?;
                if sol.iter().any(|v| !v.is_integer()) {
                    return Err(Error::NotAUnit);
                }
                Ok(Self::from_terms(
                    self.ring.clone(),
                    self.base.clone(),
                    self.arity,
                    full.into_iter()
                        .zip(sol.into_iter().map(|v| Coeff::Int(v.to_integer()))),
                ))
            }
            CoeffRing::Mod(m) => {
                let mut residues: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
                for (p, e) in factorize(*m) {
                    let q = BigInt::from(p).pow(e);
                    let mut mat = vec![vec![BigInt::zero(); n]; n];
                    for (h, j) in full.iter().zip(0..) {
                        let col = column_of(h);
                        for (i, v) in col.into_iter().enumerate() {
                            mat[i][j] = v.mod_floor(&q);
                        }
                    }
                    let sol =
                        solve_mod_prime_power(mat, n, &BigInt::from(p), &q).ok_or(Error::NotAUnit)?;
                    residues.push((q, sol));
                }
                let m_big = BigInt::from(*m);
                let sol = crt_combine(&residues, &m_big);
                Ok(Self::from_terms(
                    self.ring.clone(),
                    self.base.clone(),
                    self.arity,
                    full.into_iter().zip(sol.into_iter().map(Coeff::Int)),
                ))
            }
        }
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(g, c)| format!("{c}*[{:?}]", g.coords()))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Gauss-Jordan over Q; returns the solution of M y = e_0 or None if singular.
fn solve_rational(mut mat: Vec<Vec<BigRational>>, n: usize) -> Option<Vec<BigRational>> {
    let mut rhs = vec![BigRational::zero(); n];
    if n == 0 {
        return Some(rhs);
    }
    rhs[0] = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = mat[col][col].recip();
        for v in mat[col].iter_mut() {
            *v *= &inv;
        }
        rhs[col] *= &inv;
        for r in 0..n {
            if r == col || mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone();
            for c in 0..n {
                let t = &factor * &mat[col][c];
                mat[r][c] -= t;
            }
            let t = &factor * &rhs[col];
            rhs[r] -= t;
        }
    }
    Some(rhs)
}

/// Gauss-Jordan over Z/p^e, pivoting on entries that are units mod p.
/// Returns None when no unit pivot exists (the matrix is singular mod p).
fn solve_mod_prime_power(
    mut mat: Vec<Vec<BigInt>>,
    n: usize,
    p: &BigInt,
    q: &BigInt,
) -> Option<Vec<BigInt>> {
    let mut rhs = vec![BigInt::zero(); n];
    if n == 0 {
        return Some(rhs);
    }
    rhs[0] = BigInt::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !(&mat[r][col] % p).is_zero())?;
        mat.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = mod_inverse(&mat[col][col], q)?;
        for v in mat[col].iter_mut() {
            *v = (&*v * &inv).mod_floor(q);
        }
        rhs[col] = (&rhs[col] * &inv).mod_floor(q);
        for r in 0..n {
            if r == col || mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone();
            for c in 0..n {
                let t = (&factor * &mat[col][c]).mod_floor(q);
                mat[r][c] = (&mat[r][c] - t).mod_floor(q);
            }
            let t = (&factor * &rhs[col]).mod_floor(q);
            rhs[r] = (&rhs[r] - t).mod_floor(q);
        }
    }
    Some(rhs)
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ext = a.extended_gcd(m);
    if ext.gcd.is_one() {
        Some(ext.x.mod_floor(m))
    } else {
        None
    }
}

/// CRT recombination of solution vectors modulo pairwise coprime moduli.
fn crt_combine(residues: &[(BigInt, Vec<BigInt>)], m: &BigInt) -> Vec<BigInt> {
    let n = residues[0].1.len();
    let mut out = vec![BigInt::zero(); n];
    for (q, sol) in residues {
        let rest = m / q;
        let inv = mod_inverse(&rest.mod_floor(q), q).expect("coprime CRT moduli");
        for i in 0..n {
            out[i] += &sol[i] * &rest * &inv;
        }
    }
    out.into_iter().map(|v| v.mod_floor(m)).collect()
}

/// Trial-division factorization (p, exponent) in increasing p.
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

/// All elements of ring[G^arity] for a finite coefficient ring; the element
/// space has m^(#G^arity) members, guarded by `cap`.
pub fn enumerate_group_ring_elements(
    ring: &CoeffRing,
    base: &FiniteAbelianGroup,
    arity: usize,
    cap: u128,
) -> Result<Vec<GroupRingElement>> {
    let m = match ring {
        CoeffRing::Mod(m) => *m,
        _ => {
            return Err(Error::Malformed(
                "exhaustive enumeration requires a finite coefficient ring".into(),
            ))
        }
    };
    let n: u32 = base
        .power_order(arity)?
        .try_into()
        .map_err(|_| Error::CapExceeded { needed: u128::MAX, cap })?;
    let total = (m as u128)
        .checked_pow(n)
        .ok_or(Error::CapExceeded { needed: u128::MAX, cap })?;
    if total > cap {
        return Err(Error::CapExceeded { needed: total, cap });
    }
    let basis = base.elements(arity);
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0u64; n as usize];
    loop {
        out.push(GroupRingElement::from_terms(
            ring.clone(),
            base.clone(),
            arity,
            basis
                .iter()
                .cloned()
                .zip(digits.iter().map(|&d| Coeff::Int(BigInt::from(d)))),
        ));
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < m {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2).unwrap()
    }

    fn elem(ring: CoeffRing, base: &FiniteAbelianGroup, arity: usize, terms: &[(&[i64], i64)]) -> GroupRingElement {
        GroupRingElement::from_terms(
            ring.clone(),
            base.clone(),
            arity,
            terms.iter().map(|(g, c)| {
                (base.reduce(arity, g).unwrap(), Coeff::Int(BigInt::from(*c)))
            }),
        )
    }

    #[test]
    fn group_like_product() {
        let g = FiniteAbelianGroup::new(vec![4]).unwrap();
        let x = elem(CoeffRing::Integers, &g, 1, &[(&[1], 1)]);
        let y = elem(CoeffRing::Integers, &g, 1, &[(&[3], 1)]);
        assert!(x.multiply(&y).unwrap().is_one());
    }

    #[test]
    fn one_is_neutral() {
        let g = z2();
        let x = elem(CoeffRing::Mod(5), &g, 1, &[(&[0], 2), (&[1], 3)]);
        let one = GroupRingElement::one(CoeffRing::Mod(5), g, 1);
        assert_eq!(one.multiply(&x).unwrap(), x);
    }

    #[test]
    fn inverse_pair_over_z5() {
        // (2+[g])(4+3[g]) = 8+3 + 10[g] = 11 = 1 over Z/5.
        let g = z2();
        let x = elem(CoeffRing::Mod(5), &g, 1, &[(&[0], 2), (&[1], 1)]);
        let y = elem(CoeffRing::Mod(5), &g, 1, &[(&[0], 4), (&[1], 3)]);
        assert!(x.multiply(&y).unwrap().is_one());
        assert_eq!(x.invert_unit().unwrap(), y);
    }

    #[test]
    fn non_unit_detected_over_z2() {
        let g = z2();
        let x = elem(CoeffRing::Mod(2), &g, 1, &[(&[0], 1), (&[1], 1)]);
        assert_eq!(x.invert_unit().unwrap_err(), Error::NotAUnit);
    }

    #[test]
    fn group_like_inverse() {
        let g = FiniteAbelianGroup::new(vec![6]).unwrap();
        let x = elem(CoeffRing::Integers, &g, 1, &[(&[1], 1)]);
        let y = x.invert_unit().unwrap();
        assert_eq!(y, elem(CoeffRing::Integers, &g, 1, &[(&[5], 1)]));
    }

    #[test]
    fn integer_inverse_requires_integrality() {
        // 2 * (1/2) = 1 over Q but 2 is not a unit of Z[G].
        let g = z2();
        let x = elem(CoeffRing::Integers, &g, 1, &[(&[0], 2)]);
        assert_eq!(x.invert_unit().unwrap_err(), Error::NotAUnit);
        let x = elem(CoeffRing::Rationals, &g, 1, &[(&[0], 2)]);
        let y = x.invert_unit().unwrap();
        assert!(x.multiply(&y).unwrap().is_one());
    }

    #[test]
    fn inverse_over_composite_modulus() {
        // Needs the prime-power split: no entry of the system is a unit mod 6.
        let g = z2();
        let x = elem(CoeffRing::Mod(6), &g, 1, &[(&[0], 2), (&[1], 3)]);
        // aug(x) = 5, coprime to 6; x^2 = 4+9 + 12[g] = 13 = 1 mod 6.
        let y = x.invert_unit().unwrap();
        assert!(x.multiply(&y).unwrap().is_one());
        assert_eq!(y, x);
    }

    #[test]
    fn augmentation_examples() {
        let g = FiniteAbelianGroup::new(vec![3]).unwrap();
        let x = elem(CoeffRing::Integers, &g, 1, &[(&[0], 1), (&[1], 2), (&[2], -3)]);
        assert_eq!(x.augmentation(), Coeff::Int(BigInt::zero()));
        let zero = GroupRingElement::zero(CoeffRing::Integers, g, 1);
        assert_eq!(zero.augmentation(), Coeff::Int(BigInt::zero()));
    }

    #[test]
    fn pushforward_examples() {
        let g = z2();
        let x = elem(CoeffRing::Integers, &g, 1, &[(&[1], 1)]);
        let id = GroupHom::identity(g.clone(), 1);
        assert_eq!(x.pushforward(&id).unwrap(), x);

        let diag = GroupHom::embed(g.clone(), 2, &[SlotTarget::Pair(0, 1)]).unwrap();
        let y = x.pushforward(&diag).unwrap();
        assert_eq!(y, elem(CoeffRing::Integers, &g, 2, &[(&[1, 1], 1)]));

        let mult = GroupHom::new(g.clone(), 2, 1, vec![vec![1], vec![1]]).unwrap();
        let z = y.pushforward(&mult).unwrap();
        assert!(z.is_one());
    }

    #[test]
    fn coordinate_embed_examples() {
        let g = z2();
        let x = elem(CoeffRing::Integers, &g, 2, &[(&[1, 0], 1)]);
        // insert identity in the last slot
        let y = x
            .coordinate_embed(&[SlotTarget::One(0), SlotTarget::One(1)], 3)
            .unwrap();
        assert_eq!(y, elem(CoeffRing::Integers, &g, 3, &[(&[1, 0, 0], 1)]));
        // co-diagonal into slots 0,1
        let y = x
            .coordinate_embed(&[SlotTarget::Pair(0, 1), SlotTarget::One(2)], 3)
            .unwrap();
        assert_eq!(y, elem(CoeffRing::Integers, &g, 3, &[(&[1, 1, 0], 1)]));
        // permutation
        let y = x
            .coordinate_embed(&[SlotTarget::One(1), SlotTarget::One(0)], 2)
            .unwrap();
        assert_eq!(y, elem(CoeffRing::Integers, &g, 2, &[(&[0, 1], 1)]));
    }

    #[test]
    fn ring_mismatch_rejected() {
        let g = z2();
        let x = elem(CoeffRing::Mod(3), &g, 1, &[(&[0], 1)]);
        let y = elem(CoeffRing::Mod(5), &g, 1, &[(&[0], 1)]);
        assert!(matches!(x.multiply(&y), Err(Error::RingMismatch(_, _))));
    }

    #[test]
    fn brute_force_unit_oracle_agrees() {
        // Exhaustively filter invertibles by scanning all products and compare
        // with the set on which invert_unit succeeds.
        for (m, orders) in [
            (2u64, vec![2u64]),
            (3, vec![2]),
            (5, vec![2]),
            (2, vec![2, 2]),
            (3, vec![3]),
            (4, vec![2]),
            (6, vec![2]),
            (8, vec![2]),
            (9, vec![3]),
            (5, vec![4]),
        ] {
            let base = FiniteAbelianGroup::new(orders).unwrap();
            let ring = CoeffRing::modulus(m).unwrap();
            let all = enumerate_group_ring_elements(&ring, &base, 1, 1 << 20).unwrap();
            for x in &all {
                let brute = all.iter().any(|y| x.multiply(y).unwrap().is_one());
                assert_eq!(x.is_unit(), brute, "unit disagreement for {x} over ({ring})[{base}]");
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let base = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let ring = CoeffRing::Mod(3);
        for x in enumerate_group_ring_elements(&ring, &base, 1, 1 << 20).unwrap() {
            if let Ok(y) = x.invert_unit() {
                assert!(x.multiply(&y).unwrap().is_one());
                assert_eq!(y.invert_unit().unwrap(), x);
            }
        }
    }

    #[test]
    fn augmentation_is_multiplicative() {
        let base = FiniteAbelianGroup::new(vec![4]).unwrap();
        let ring = CoeffRing::Mod(3);
        let all = enumerate_group_ring_elements(&ring, &base, 1, 1 << 20).unwrap();
        for x in all.iter().step_by(7) {
            for y in all.iter().step_by(11) {
                let lhs = x.multiply(y).unwrap().augmentation();
                let rhs = ring.mul(&x.augmentation(), &y.augmentation());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(691), vec![(691, 1)]);
    }
}
