//! Symmetric-power calculus on the augmentation ideal of a free abelian
//! group: Laurent polynomials, pure-tensor elements, the Psi/Phi builders,
//! their combinatorial identities, and evaluation at cubic elements (the
//! flat operator and Taylor chains).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cubic::is_cubic;
use crate::error::{Error, Result};
use crate::ring::GroupRingElement;

/// A monomial of the free abelian group on x_0, x_1, ...: a sorted sparse
/// list of (variable index, nonzero exponent). The empty list is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FreeMonomial(Vec<(usize, i64)>);

impl FreeMonomial {
    pub fn one() -> Self {
        FreeMonomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        FreeMonomial(vec![(i, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        pairs
            .into_iter()
            .filter(|&(_, e)| e != 0)
            .fold(FreeMonomial::one(), |m, (i, e)| m.mul(&FreeMonomial(vec![(i, e)])))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => {
                    if i < j {
                        out.push((i, e));
                        a.next();
                    } else if j < i {
                        out.push((j, f));
                        b.next();
                    } else {
                        if e + f != 0 {
                            out.push((i, e + f));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(_), None) => {
                    out.extend(a.cloned());
                    break;
                }
                (None, Some(_)) => {
                    out.extend(b.cloned());
                    break;
                }
                (None, None) => break,
            }
        }
        FreeMonomial(out)
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return FreeMonomial::one();
        }
        FreeMonomial(self.0.iter().map(|&(i, e)| (i, e * k)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i)
    }
}

impl fmt::Display for FreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(i, e)| if *e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A sparse Laurent polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<FreeMonomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::monomial(FreeMonomial::one(), BigInt::from(c))
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn var(i: usize) -> Self {
        LaurentPoly::monomial(FreeMonomial::var(i), BigInt::one())
    }

    pub fn monomial(m: FreeMonomial, c: BigInt) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: FreeMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<FreeMonomial, BigInt> {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Ring endomorphism induced by rewriting variables to monomials.
    /// Variables not named in the map are left untouched.
    pub fn substitute(&self, map: &BTreeMap<usize, FreeMonomial>) -> Self {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut image = FreeMonomial::one();
            for &(i, e) in m.exponents() {
                match map.get(&i) {
                    Some(w) => image = image.mul(&w.pow(e)),
                    None => image = image.mul(&FreeMonomial::var(i).pow(e)),
                }
            }
            out.add_term(image, c.clone());
        }
        out
    }

    /// Substitution x_i -> 1.
    pub fn substitute_one(&self, var: usize) -> Self {
        self.substitute(&BTreeMap::from([(var, FreeMonomial::one())]))
    }

    /// Smallest total degree after rewriting every variable as (1 + v): the
    /// augmentation-ideal valuation. None for the zero polynomial. Only
    /// defined for polynomials with nonnegative exponents.
    pub fn augmentation_valuation(&self) -> Option<u64> {
        let mut shifted: BTreeMap<FreeMonomial, BigInt> = BTreeMap::new();
        for (m, c) in &self.terms {
            // expand prod_i (1 + v_i)^{e_i}
            let mut acc: Vec<(FreeMonomial, BigInt)> = vec![(FreeMonomial::one(), c.clone())];
            for &(i, e) in m.exponents() {
                assert!(e >= 0, "valuation requires a polynomial");
                let mut next = Vec::new();
                // binomial coefficients C(e, k)
                let mut binom = BigInt::one();
                for k in 0..=e {
                    for (mm, cc) in &acc {
                        next.push((mm.mul(&FreeMonomial::var(i).pow(k)), cc * &binom));
                    }
                    binom = binom * BigInt::from(e - k) / BigInt::from(k + 1);
                }
                acc = next;
            }
            for (mm, cc) in acc {
                let entry = shifted.entry(mm).or_insert_with(BigInt::zero);
                *entry += cc;
            }
        }
        shifted
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, _)| m.exponents().iter().map(|&(_, e)| e as u64).sum())
            .min()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An ordered pure tensor `([w_1]-[1]) ⊗ ... ⊗ ([w_k]-[1])`. A tensor with a
/// trivial factor is zero and is never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PureTensor {
    factors: Vec<FreeMonomial>,
}

impl PureTensor {
    pub fn factors(&self) -> &[FreeMonomial] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }
}

/// An integer combination of pure tensors of a fixed degree. Raw Sym_Z
/// tensors are kept ordered; semantic equality goes through the Laurent
/// image (`laurent_eq`), which is faithful on the augmentation-ideal power.
#[derive(Debug, Clone)]
pub struct SymElement {
    degree: usize,
    terms: BTreeMap<PureTensor, BigInt>,
}

impl SymElement {
    pub fn zero(degree: usize) -> Self {
        SymElement { degree, terms: BTreeMap::new() }
    }

    /// The pure tensor with the given factors; zero if any factor is 1.
    pub fn generator(degree: usize, factors: Vec<FreeMonomial>) -> Self {
        assert_eq!(factors.len(), degree);
        let mut out = SymElement::zero(degree);
        if factors.iter().any(|w| w.is_one()) {
            return out;
        }
        out.terms.insert(PureTensor { factors }, BigInt::one());
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<PureTensor, BigInt> {
        &self.terms
    }

    fn add_term(&mut self, t: PureTensor, c: BigInt) {
        if c.is_zero() || t.factors.iter().any(|w| w.is_one()) {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SymElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return SymElement::zero(self.degree);
        }
        SymElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(t, c)| (t.clone(), c * k)).collect(),
        }
    }

    /// Tensor concatenation; degrees add.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = SymElement::zero(self.degree + other.degree);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let mut factors = t1.factors.clone();
                factors.extend(t2.factors.iter().cloned());
                out.add_term(PureTensor { factors }, c1 * c2);
            }
        }
        out
    }

    pub fn tensor_pow(&self, k: usize) -> Self {
        let mut acc = SymElement::generator(0, vec![]);
        for _ in 0..k {
            acc = acc.tensor(self);
        }
        acc
    }

    /// Image under the multiplication map `Sym^k -> I[F]^k ⊂ Z[F]`:
    /// each tensor becomes the product of its (w - 1) factors. The image
    /// only depends on the factor multiset, so tensors are grouped by
    /// sorted factors and each distinct product is expanded once.
    pub fn to_laurent(&self) -> LaurentPoly {
        let mut grouped: BTreeMap<Vec<FreeMonomial>, BigInt> = BTreeMap::new();
        for (t, c) in &self.terms {
            let mut key = t.factors.clone();
            key.sort();
            let entry = grouped.entry(key).or_insert_with(BigInt::zero);
            *entry += c;
        }
        let mut out = LaurentPoly::zero();
        for (factors, c) in grouped {
            if c.is_zero() {
                continue;
            }
            let mut prod = LaurentPoly::monomial(FreeMonomial::one(), c);
            for w in &factors {
                let factor = LaurentPoly::monomial(w.clone(), BigInt::one()).sub(&LaurentPoly::one());
                prod = prod.mul(&factor);
            }
            out = out.add(&prod);
        }
        out
    }

    /// Equality through the Laurent image.
    pub fn laurent_eq(&self, other: &Self) -> bool {
        self.to_laurent() == other.to_laurent()
    }
}

/// All subsets of {0, ..., n-1} in bitmask order.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1u32 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// The elements A_S (degree 1), B_S (degree 2) and P_S (degree 1) attached
/// to a subset S of variable indices; all three are 0 for empty S.
pub fn build_a_b_p(s: &[usize]) -> (SymElement, SymElement, SymElement) {
    let m = s.len();
    let mut a = SymElement::zero(1);
    for &i in s {
        a = a.add(&SymElement::generator(1, vec![FreeMonomial::var(i)]));
    }
    let mut b = SymElement::zero(2);
    for p in 0..m.saturating_sub(1) {
        let tail = FreeMonomial::from_pairs(s[p + 1..].iter().map(|&i| (i, 1)));
        b = b.add(&SymElement::generator(
            2,
            vec![FreeMonomial::var(s[p]), tail],
        ));
    }
    let p = if m == 0 {
        SymElement::zero(1)
    } else {
        SymElement::generator(1, vec![FreeMonomial::from_pairs(s.iter().map(|&i| (i, 1)))])
    };
    (a, b, p)
}

/// Psi_S of degree n+1: sum over j of `A_S^⊗j ⊗ B_S ⊗ ([χ_S]-[1])^⊗(n-j-1)`,
/// expanded multinomially into pure tensors. Psi_∅ = 0.
pub fn build_psi(s: &[usize], n: usize) -> SymElement {
    let mut out = SymElement::zero(n + 1);
    if s.is_empty() {
        return out;
    }
    let (a, b, _) = build_a_b_p(s);
    let chi = SymElement::generator(1, vec![FreeMonomial::from_pairs(s.iter().map(|&i| (i, 1)))]);
    let mut a_pow = SymElement::generator(0, vec![]);
    for j in 0..n {
        let term = a_pow.tensor(&b).tensor(&chi.tensor_pow(n - j - 1));
        out = out.add(&term);
        a_pow = a_pow.tensor(&a);
    }
    out
}

/// Phi of degree n+1: the signed sum of Psi_S over all S ⊆ {0,...,n-1}.
pub fn build_phi(n: usize) -> SymElement {
    let mut out = SymElement::zero(n + 1);
    for s in subsets(n) {
        let sign = if (n - s.len()).is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        out = out.add(&build_psi(&s, n).scalar_mul(&sign));
    }
    out
}

/// The closed form of Phi in the Laurent ring:
/// sum over S of (-1)^{n-#S} ((prod_{i in S} x_i - 1)^n - (sum_{i in S} x_i - #S)^n).
pub fn phi_closed_form(n: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for s in subsets(n) {
        let prod_term = LaurentPoly::monomial(
            FreeMonomial::from_pairs(s.iter().map(|&i| (i, 1))),
            BigInt::one(),
        )
        .sub(&LaurentPoly::one());
        let mut sum_term = LaurentPoly::constant(-(s.len() as i64));
        for &i in &s {
            sum_term = sum_term.add(&LaurentPoly::var(i));
        }
        let diff = prod_term.pow(n as u32).sub(&sum_term.pow(n as u32));
        out = if (n - s.len()).is_multiple_of(2) { out.add(&diff) } else { out.sub(&diff) };
    }
    out
}

/// One named identity check result.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
}

/// Report of the identity suite for a given n.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub checks: Vec<IdentityCheck>,
    pub all_pass: bool,
}

/// Verifies (g1), (g2), the multinomial identity and the final product
/// identity as exact Laurent-polynomial equalities.
pub fn verify_identities(n: usize) -> Result<IdentityReport> {
    if n < 2 {
        return Err(Error::ArityTooSmall { min: 2, got: n });
    }
    let mut checks = Vec::new();
    let phi = build_phi(n).to_laurent();

    // (g1): Phi is symmetric in its arguments.
    let mut g1 = true;
    for i in 0..n {
        for j in (i + 1)..n {
            let map = BTreeMap::from([
                (i, FreeMonomial::var(j)),
                (j, FreeMonomial::var(i)),
            ]);
            if phi.substitute(&map) != phi {
                g1 = false;
            }
        }
    }
    checks.push(IdentityCheck { name: "g1_symmetry".into(), pass: g1 });

    // (g2): the cocycle identity for Phi, with a fresh variable at index n.
    // Arguments of Phi live at positions 0..n-1; z denotes the fresh variable.
    let z = n;
    let arg = |monos: Vec<FreeMonomial>| -> LaurentPoly {
        let map: BTreeMap<usize, FreeMonomial> = monos.into_iter().enumerate().collect();
        phi.substitute(&map)
    };
    // Phi(z*x0, x1, ..., x_{n-1})
    let t1 = arg(
        std::iter::once(FreeMonomial::from_pairs([(z, 1), (0, 1)]))
            .chain((1..n).map(FreeMonomial::var))
            .collect(),
    );
    // Phi(z, x0, x2, ..., x_{n-1})   (x1 omitted)
    let t2 = arg(
        [FreeMonomial::var(z), FreeMonomial::var(0)]
            .into_iter()
            .chain((2..n).map(FreeMonomial::var))
            .collect(),
    );
    // Phi(z, x0*x1, x2, ..., x_{n-1})
    let t3 = arg(
        [FreeMonomial::var(z), FreeMonomial::from_pairs([(0, 1), (1, 1)])]
            .into_iter()
            .chain((2..n).map(FreeMonomial::var))
            .collect(),
    );
    // Phi(x0, x1, ..., x_{n-1})
    let g2 = t1.add(&t2) == t3.add(&phi);
    checks.push(IdentityCheck { name: "g2_cocycle".into(), pass: g2 });

    // Multinomial identity: sum_S (-1)^{n-#S} (sum_{i in S} z_i)^n = n! z_1...z_n.
    let mut lhs = LaurentPoly::zero();
    for s in subsets(n) {
        let mut sum = LaurentPoly::zero();
        for &i in &s {
            sum = sum.add(&LaurentPoly::var(i));
        }
        let pw = sum.pow(n as u32);
        lhs = if (n - s.len()).is_multiple_of(2) { lhs.add(&pw) } else { lhs.sub(&pw) };
    }
    let mut rhs = LaurentPoly::constant(1);
    let mut nfact = BigInt::one();
    for i in 0..n {
        rhs = rhs.mul(&LaurentPoly::var(i));
        nfact *= BigInt::from(i as u64 + 1);
    }
    rhs = rhs.mul(&LaurentPoly::monomial(FreeMonomial::one(), nfact));
    checks.push(IdentityCheck { name: "multinomial".into(), pass: lhs == rhs });

    // Final product identity over variables x_0..x_n (n+1 of them):
    // (x0x1-1)(x2-1)...(xn-1) + (x0-1)(x1-1)(x3-1)...(xn-1)
    //   = (x0-1)(x1x2-1)(x3-1)...(xn-1) + (x1-1)(x2-1)...(xn-1).
    let lin = |i: usize| LaurentPoly::var(i).sub(&LaurentPoly::one());
    let pair = |i: usize, j: usize| {
        LaurentPoly::monomial(FreeMonomial::from_pairs([(i, 1), (j, 1)]), BigInt::one())
            .sub(&LaurentPoly::one())
    };
    let tail = |from: usize| {
        (from..=n).fold(LaurentPoly::one(), |acc, k| acc.mul(&lin(k)))
    };
    let lhs = pair(0, 1).mul(&tail(2)).add(&lin(0).mul(&lin(1)).mul(&tail(3)));
    let rhs = lin(0).mul(&pair(1, 2)).mul(&tail(3)).add(&lin(1).mul(&tail(2)));
    checks.push(IdentityCheck { name: "final_product".into(), pass: lhs == rhs });

    let all_pass = checks.iter().all(|c| c.pass);
    Ok(IdentityReport { n, checks, all_pass })
}

/// How evaluate_sym_at treats pure tensors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Require a cubic element so each pure tensor collapses to one
    /// pushforward.
    CollapseCubic,
    /// Full 2^k inclusion-exclusion expansion; only requires a unit.
    InclusionExclusion,
}

/// Evaluate a degree-k SymElement at an element of R[G^k]; variables
/// designate the output tuple slots, so the result lives over G^out_arity.
pub fn evaluate_sym_at(
    e: &SymElement,
    c: &GroupRingElement,
    out_arity: usize,
    mode: EvalMode,
) -> Result<GroupRingElement> {
    if e.degree() != c.arity() {
        return Err(Error::ArityMismatch { expected: e.degree(), got: c.arity() });
    }
    if mode == EvalMode::CollapseCubic {
        let check = is_cubic(c, c.arity())?;
        if !check.ok {
            return Err(Error::NotCubic {
                arity: c.arity(),
                condition: check.failed_condition.unwrap_or_else(|| "c2".into()),
            });
        }
    }
    evaluate_sym_at_unchecked(e, c, out_arity, mode)
}

pub(crate) fn evaluate_sym_at_unchecked(
    e: &SymElement,
    c: &GroupRingElement,
    out_arity: usize,
    mode: EvalMode,
) -> Result<GroupRingElement> {
    let k = e.degree();
    let mut acc = GroupRingElement::one(c.ring().clone(), c.base().clone(), out_arity);
    for (tensor, coeff) in e.terms() {
        let mut matrix = vec![vec![0i64; out_arity]; k];
        for (j, w) in tensor.factors().iter().enumerate() {
            for &(i, exp) in w.exponents() {
                if i >= out_arity {
                    return Err(Error::MalformedSpec(format!(
                        "variable x{i} exceeds output arity {out_arity}"
                    )));
                }
                matrix[j][i] = exp;
            }
        }
        let value = match mode {
            EvalMode::CollapseCubic => {
                let phi = crate::group::GroupHom::new(c.base().clone(), k, out_arity, matrix)?;
                c.pushforward(&phi)?
            }
            EvalMode::InclusionExclusion => {
                let mut v = GroupRingElement::one(c.ring().clone(), c.base().clone(), out_arity);
                for mask in 0..1u32 << k {
                    let mut sub = matrix.clone();
                    for (j, row) in sub.iter_mut().enumerate() {
                        if mask >> j & 1 == 0 {
                            row.iter_mut().for_each(|x| *x = 0);
                        }
                    }
                    let phi = crate::group::GroupHom::new(c.base().clone(), k, out_arity, sub)?;
                    let pushed = c.pushforward(&phi)?;
                    let sign_neg = (k - mask.count_ones() as usize) % 2 == 1;
                    v = if sign_neg {
                        v.multiply(&pushed.invert_unit()?)?
                    } else {
                        v.multiply(&pushed)?
                    };
                }
                v
            }
        };
        let exp: i64 = i64::try_from(coeff.clone()).map_err(|_| {
            Error::Malformed("tensor coefficient exceeds evaluation range".into())
        })?;
        acc = acc.multiply(&value.pow(exp)?)?;
    }
    Ok(acc)
}

/// The §3.4-style defining relation of the symmetric power, instantiated at
/// monomials w_0, ..., w_n: [w1,...,wn] + [w0, w1w2, w3,...,wn]
/// - [w0, w1, w3,...,wn] - [w0w1, w2,...,wn], of degree n.
pub fn relation_element(w: &[FreeMonomial]) -> SymElement {
    let n = w.len() - 1;
    assert!(n >= 2, "relation needs at least three monomials");
    let gen = |factors: Vec<FreeMonomial>| SymElement::generator(n, factors);
    let t1 = gen(w[1..].to_vec());
    let t2 = gen(
        [w[0].clone(), w[1].mul(&w[2])]
            .into_iter()
            .chain(w[3..].iter().cloned())
            .collect(),
    );
    let t3 = gen(
        [w[0].clone(), w[1].clone()]
            .into_iter()
            .chain(w[3..].iter().cloned())
            .collect(),
    );
    let t4 = gen(
        [w[0].mul(&w[1]), w[2].clone()]
            .into_iter()
            .chain(w[3..].iter().cloned())
            .collect(),
    );
    t1.add(&t2).sub(&t3).sub(&t4)
}

/// The flat operator: an (n+1)-cubic element yields an n-cubic element by
/// evaluating Phi(n) at it. The output is revalidated.
pub fn flat(c: &GroupRingElement) -> Result<GroupRingElement> {
    if c.arity() < 3 {
        return Err(Error::ArityTooSmall { min: 3, got: c.arity() });
    }
    let n = c.arity() - 1;
    let check = is_cubic(c, c.arity())?;
    if !check.ok {
        return Err(Error::NotCubic {
            arity: c.arity(),
            condition: check.failed_condition.unwrap_or_else(|| "c2".into()),
        });
    }
    let d = evaluate_sym_at_unchecked(&build_phi(n), c, n, EvalMode::CollapseCubic)?;
    let recheck = is_cubic(&d, n)?;
    if !recheck.ok {
        return Err(Error::Internal(format!(
            "flat output fails condition {}",
            recheck.failed_condition.unwrap_or_default()
        )));
    }
    Ok(d)
}

/// The Taylor chain of an (n+1)-cubic element, with the exponent ledger
/// (-1)^i (n-i-1)!! and the superfactorial n!! of the expansion.
#[derive(Debug, Clone)]
pub struct TaylorChain {
    pub elements: Vec<GroupRingElement>,
    pub exponents: Vec<BigInt>,
    pub superfactorial: BigInt,
}

pub fn taylor_chain(c: &GroupRingElement) -> Result<TaylorChain> {
    if c.arity() < 3 {
        return Err(Error::ArityTooSmall { min: 3, got: c.arity() });
    }
    let n = c.arity() - 1;
    let check = is_cubic(c, c.arity())?;
    if !check.ok {
        return Err(Error::NotCubic {
            arity: c.arity(),
            condition: check.failed_condition.unwrap_or_else(|| "c2".into()),
        });
    }
    let mut elements = vec![c.clone()];
    while elements.last().unwrap().arity() >= 3 {
        elements.push(flat(elements.last().unwrap())?);
    }
    let exponents = (0..n)
        .map(|i| {
            let sf = crate::arith::superfactorial((n - i - 1) as u64);
            if i % 2 == 0 {
                sf
            } else {
                -sf
            }
        })
        .collect();
    Ok(TaylorChain {
        elements,
        exponents,
        superfactorial: crate::arith::superfactorial(n as u64),
    })
}
