//! Finite abelian groups presented as products of cyclic groups, their
//! elements in reduced coordinates, and homomorphisms between powers of a
//! fixed base group given by integer matrices.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite abelian group `∏ Z/n_i` given by its list of cyclic orders.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidOrder(bad));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    /// The trivial group (empty product).
    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: vec![] }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> Result<u64> {
        self.orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or(Error::OrderOverflow)
    }

    /// Least common multiple of the cyclic orders (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |acc, &n| acc.lcm(&n))
    }

    /// Order of the power group G^arity.
    pub fn power_order(&self, arity: usize) -> Result<u64> {
        let base = self.order()?;
        (0..arity)
            .try_fold(1u64, |acc, _| acc.checked_mul(base))
            .ok_or(Error::OrderOverflow)
    }

    fn order_at(&self, flat_index: usize) -> u64 {
        self.orders[flat_index % self.orders.len()]
    }

    /// Reduce flat coordinates of an element of G^arity.
    pub fn reduce(&self, arity: usize, coords: &[i64]) -> Result<GroupElement> {
        if self.rank() == 0 {
            if coords.is_empty() {
                return Ok(GroupElement(vec![]));
            }
            return Err(Error::MalformedSpec("coordinates for trivial group".into()));
        }
        if coords.len() != arity * self.rank() {
            return Err(Error::MalformedSpec(format!(
                "expected {} coordinates, got {}",
                arity * self.rank(),
                coords.len()
            )));
        }
        Ok(GroupElement(
            coords
                .iter()
                .enumerate()
                .map(|(i, &c)| c.rem_euclid(self.order_at(i) as i64) as u64)
                .collect(),
        ))
    }

    pub fn zero(&self, arity: usize) -> GroupElement {
        GroupElement(vec![0; arity * self.rank()])
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        debug_assert_eq!(a.0.len(), b.0.len());
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .enumerate()
                .map(|(i, (&x, &y))| (x + y) % self.order_at(i))
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .enumerate()
                .map(|(i, &x)| if x == 0 { 0 } else { self.order_at(i) - x })
                .collect(),
        )
    }

    pub fn scalar_mul(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .enumerate()
                .map(|(i, &x)| {
                    let n = self.order_at(i) as i128;
                    ((k as i128 * x as i128).rem_euclid(n)) as u64
                })
                .collect(),
        )
    }

    /// All elements of G^arity in lexicographic coordinate order.
    pub fn elements(&self, arity: usize) -> Vec<GroupElement> {
        let len = arity * self.rank();
        let mut out = Vec::new();
        let mut cur = vec![0u64; len];
        loop {
            out.push(GroupElement(cur.clone()));
            let mut i = len;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.order_at(i) {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// An element of G^arity in reduced flat coordinates (arity * rank residues).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(pub(crate) Vec<u64>);

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    /// Coordinates of one tuple slot, given the base rank.
    pub fn slot(&self, rank: usize, slot: usize) -> &[u64] {
        &self.0[slot * rank..(slot + 1) * rank]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// Target assignment for one source coordinate in a coordinate embedding:
/// either a single target slot or a pair of slots (co-diagonal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotTarget {
    One(usize),
    Pair(usize, usize),
}

/// A homomorphism G^a -> G^b between powers of the same base group, acting on
/// tuple coordinates through an integer matrix: the image of (g_1,...,g_a) is
/// `(sum_j K[j][0] g_j, ..., sum_j K[j][b-1] g_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    base: FiniteAbelianGroup,
    source_arity: usize,
    target_arity: usize,
    /// source_arity rows, target_arity columns, entries reduced mod exponent.
    matrix: Vec<Vec<i64>>,
}

impl GroupHom {
    /// Build a homomorphism from an integer matrix; entries are reduced mod
    /// the exponent of the base group (the canonical form, under which the
    /// induced map on every cyclic factor is unchanged).
    pub fn new(
        base: FiniteAbelianGroup,
        source_arity: usize,
        target_arity: usize,
        matrix: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if matrix.len() != source_arity || matrix.iter().any(|row| row.len() != target_arity) {
            return Err(Error::MalformedSpec(format!(
                "matrix shape must be {source_arity} x {target_arity}"
            )));
        }
        let e = base.exponent() as i64;
        let matrix = matrix
            .into_iter()
            .map(|row| row.into_iter().map(|k| k.rem_euclid(e)).collect())
            .collect();
        Ok(GroupHom { base, source_arity, target_arity, matrix })
    }

    pub fn identity(base: FiniteAbelianGroup, arity: usize) -> Self {
        let matrix = (0..arity)
            .map(|j| (0..arity).map(|c| i64::from(j == c)).collect())
            .collect();
        GroupHom::new(base, arity, arity, matrix).expect("identity matrix is well formed")
    }

    /// Permutation of tuple slots: source slot j goes to target slot `perm[j]`.
    pub fn permutation(base: FiniteAbelianGroup, perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::MalformedSpec(format!("invalid permutation {perm:?}")));
            }
            seen[p] = true;
        }
        let mut matrix = vec![vec![0i64; n]; n];
        for (j, &p) in perm.iter().enumerate() {
            matrix[j][p] = 1;
        }
        GroupHom::new(base, n, n, matrix)
    }

    /// Embedding G^a -> G^b described slot by slot; target slots not named by
    /// any source coordinate receive the identity element. Duplicate targets
    /// across sources are rejected.
    pub fn embed(
        base: FiniteAbelianGroup,
        target_arity: usize,
        targets: &[SlotTarget],
    ) -> Result<Self> {
        let source_arity = targets.len();
        let mut used = vec![false; target_arity];
        let mut claim = |slot: usize| -> Result<()> {
            if slot >= target_arity {
                return Err(Error::MalformedSpec(format!(
                    "target slot {slot} out of range 0..{target_arity}"
                )));
            }
            if used[slot] {
                return Err(Error::MalformedSpec(format!("target slot {slot} named twice")));
            }
            used[slot] = true;
            Ok(())
        };
        for t in targets {
            match *t {
                SlotTarget::One(i) => claim(i)?,
                SlotTarget::Pair(i, j) => {
                    claim(i)?;
                    if i == j {
                        return Err(Error::MalformedSpec(format!(
                            "co-diagonal targets must be distinct, got ({i},{j})"
                        )));
                    }
                    claim(j)?;
                }
            }
        }
        let mut matrix = vec![vec![0i64; target_arity]; source_arity];
        for (j, t) in targets.iter().enumerate() {
            match *t {
                SlotTarget::One(i) => matrix[j][i] = 1,
                SlotTarget::Pair(i, k) => {
                    matrix[j][i] = 1;
                    matrix[j][k] = 1;
                }
            }
        }
        GroupHom::new(base, source_arity, target_arity, matrix)
    }

    /// G^n -> G^{n+1} inserting the identity at `slot`, shifting the rest.
    pub fn insert_zero(base: FiniteAbelianGroup, n: usize, slot: usize) -> Result<Self> {
        if slot > n {
            return Err(Error::MalformedSpec(format!("insert slot {slot} out of range 0..={n}")));
        }
        let targets: Vec<SlotTarget> = (0..n)
            .map(|j| SlotTarget::One(if j < slot { j } else { j + 1 }))
            .collect();
        GroupHom::embed(base, n + 1, &targets)
    }

    /// G^n -> G^{n+1} duplicating source slot `src` into target slots
    /// (src, src+1) and shifting the remaining slots in order.
    pub fn duplicate(base: FiniteAbelianGroup, n: usize, src: usize) -> Result<Self> {
        if src >= n {
            return Err(Error::MalformedSpec(format!("source slot {src} out of range 0..{n}")));
        }
        let targets: Vec<SlotTarget> = (0..n)
            .map(|j| {
                if j < src {
                    SlotTarget::One(j)
                } else if j == src {
                    SlotTarget::Pair(src, src + 1)
                } else {
                    SlotTarget::One(j + 1)
                }
            })
            .collect();
        GroupHom::embed(base, n + 1, &targets)
    }

    /// G^n -> G^{n-1} forgetting tuple slot `slot` (the covariant form of
    /// forcing that slot to the trivial character).
    pub fn delete(base: FiniteAbelianGroup, n: usize, slot: usize) -> Result<Self> {
        if slot >= n {
            return Err(Error::MalformedSpec(format!("delete slot {slot} out of range 0..{n}")));
        }
        let mut matrix = vec![vec![0i64; n - 1]; n];
        for j in 0..n {
            if j < slot {
                matrix[j][j] = 1;
            } else if j > slot {
                matrix[j][j - 1] = 1;
            }
        }
        GroupHom::new(base, n, n - 1, matrix)
    }

    pub fn base(&self) -> &FiniteAbelianGroup {
        &self.base
    }

    pub fn source_arity(&self) -> usize {
        self.source_arity
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let rank = self.base.rank();
        debug_assert_eq!(g.0.len(), self.source_arity * rank);
        let mut out = vec![0u64; self.target_arity * rank];
        for c in 0..self.target_arity {
            for i in 0..rank {
                let n = self.base.orders()[i] as u128;
                let mut acc: u128 = 0;
                for j in 0..self.source_arity {
                    acc += (self.matrix[j][c] as u128) * (g.0[j * rank + i] as u128) % n;
                }
                out[c * rank + i] = (acc % n) as u64;
            }
        }
        GroupElement(out)
    }

    /// other ∘ self (apply self first). Corresponds to the matrix product.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.base != other.base || self.target_arity != other.source_arity {
            return Err(Error::GroupMismatch(
                format!("{}^{}", self.base, self.target_arity),
                format!("{}^{}", other.base, other.source_arity),
            ));
        }
        let e = self.base.exponent() as i128;
        let matrix = (0..self.source_arity)
            .map(|j| {
                (0..other.target_arity)
                    .map(|c| {
                        let mut acc: i128 = 0;
                        for k in 0..self.target_arity {
                            acc += self.matrix[j][k] as i128 * other.matrix[k][c] as i128;
                        }
                        acc.rem_euclid(e) as i64
                    })
                    .collect()
            })
            .collect();
        GroupHom::new(self.base.clone(), self.source_arity, other.target_arity, matrix)
    }
}

/// All transpositions (i, j) with i < j < n, as slot permutations.
pub fn transpositions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, j);
            out.push(perm);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2).unwrap()
    }

    #[test]
    fn order_and_exponent() {
        let g = FiniteAbelianGroup::new(vec![2, 4, 3]).unwrap();
        assert_eq!(g.order().unwrap(), 24);
        assert_eq!(g.exponent(), 12);
        assert!(g.exponent() <= g.order().unwrap());
        assert_eq!(g.order().unwrap() % g.exponent(), 0);
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(
            FiniteAbelianGroup::new(vec![2, 0]).unwrap_err(),
            Error::InvalidOrder(0)
        );
    }

    #[test]
    fn reduce_normalizes() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let e = g.reduce(1, &[-1, 7]).unwrap();
        assert_eq!(e.coords(), &[1, 1]);
    }

    #[test]
    fn element_enumeration_counts() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.elements(1).len(), 6);
        assert_eq!(g.elements(2).len(), 36);
        assert_eq!(FiniteAbelianGroup::trivial().elements(3).len(), 1);
    }

    #[test]
    fn diagonal_embedding() {
        let h = GroupHom::embed(z2(), 2, &[SlotTarget::Pair(0, 1)]).unwrap();
        let g = z2().reduce(1, &[1]).unwrap();
        assert_eq!(h.apply(&g).coords(), &[1, 1]);
    }

    #[test]
    fn multiplication_map_kills_diagonal() {
        // (Z/2)^2 -> Z/2, (g, g) -> 0
        let h = GroupHom::new(z2(), 2, 1, vec![vec![1], vec![1]]).unwrap();
        let g = z2().reduce(2, &[1, 1]).unwrap();
        assert!(h.apply(&g).is_zero());
    }

    #[test]
    fn permutation_swaps() {
        let h = GroupHom::permutation(z2(), &[1, 0]).unwrap();
        let g = z2().reduce(2, &[1, 0]).unwrap();
        assert_eq!(h.apply(&g).coords(), &[0, 1]);
    }

    #[test]
    fn insert_and_delete() {
        let ins = GroupHom::insert_zero(z2(), 2, 2).unwrap();
        let g = z2().reduce(2, &[1, 1]).unwrap();
        assert_eq!(ins.apply(&g).coords(), &[1, 1, 0]);
        let del = GroupHom::delete(z2(), 3, 1).unwrap();
        let g3 = z2().reduce(3, &[1, 0, 1]).unwrap();
        assert_eq!(del.apply(&g3).coords(), &[1, 1]);
    }

    #[test]
    fn composition_matches_sequential_application() {
        let d = GroupHom::duplicate(z2(), 2, 0).unwrap();
        let p = GroupHom::permutation(z2(), &[2, 0, 1]).unwrap();
        let comp = d.then(&p).unwrap();
        for g in z2().elements(2) {
            assert_eq!(comp.apply(&g), p.apply(&d.apply(&g)));
        }
    }

    #[test]
    fn embed_rejects_double_claims() {
        assert!(GroupHom::embed(z2(), 2, &[SlotTarget::One(0), SlotTarget::One(0)]).is_err());
        assert!(GroupHom::embed(z2(), 1, &[SlotTarget::Pair(0, 0)]).is_err());
        assert!(GroupHom::embed(z2(), 1, &[SlotTarget::One(3)]).is_err());
    }

    #[test]
    fn matrix_entries_reduced_mod_exponent() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let h = GroupHom::new(g.clone(), 1, 1, vec![vec![7]]).unwrap();
        assert_eq!(h.matrix()[0][0], 1);
        let x = g.reduce(1, &[1, 2]).unwrap();
        assert_eq!(h.apply(&x).coords(), &[1, 2]);
    }
}
