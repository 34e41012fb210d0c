//! Truncated elements of O_{(g*)^k} = S(g)^{⊗k}.
//!
//! A term is keyed by its flattened exponent vector: slot `s`, generator `i`
//! lives at position `s * dim + i`. Coefficients are kept in canonical form
//! (no negligible entries) and every stored term has total degree at most the
//! truncation `N`; products and brackets silently drop anything above it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, RMatrix};
use crate::scalar::{factorial, Scalar};

pub type Key = Vec<u8>;

#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeriesTensor<S> {
    dim: usize,
    slots: usize,
    trunc: usize,
    coeffs: BTreeMap<Key, S>,
}

fn degree(key: &[u8]) -> usize {
    key.iter().map(|&e| e as usize).sum()
}

fn accumulate<S: Scalar>(map: &mut HashMap<Key, S>, key: Key, c: S) {
    match map.get_mut(&key) {
        Some(v) => *v = v.clone() + c,
        None => {
            map.insert(key, c);
        }
    }
}

impl<S: Scalar> FormalSeriesTensor<S> {
    pub fn zero(dim: usize, slots: usize, trunc: usize) -> Self {
        Self { dim, slots, trunc, coeffs: BTreeMap::new() }
    }

    /// Collects terms, adding repeated keys and dropping terms above `trunc`.
    pub fn from_terms<I>(dim: usize, slots: usize, trunc: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Key, S)>,
    {
        let mut acc = HashMap::new();
        for (key, c) in terms {
            debug_assert_eq!(key.len(), dim * slots);
            if degree(&key) <= trunc {
                accumulate(&mut acc, key, c);
            }
        }
        Self::from_map(dim, slots, trunc, acc)
    }

    fn from_map(dim: usize, slots: usize, trunc: usize, map: HashMap<Key, S>) -> Self {
        let coeffs = map.into_iter().filter(|(_, c)| !c.is_negligible()).collect();
        Self { dim, slots, trunc, coeffs }
    }

    pub fn one(dim: usize, slots: usize, trunc: usize) -> Self {
        Self::from_terms(dim, slots, trunc, [(vec![0; dim * slots], S::one())])
    }

    /// The generator `x_i` placed in slot `slot`.
    pub fn generator(dim: usize, slots: usize, trunc: usize, slot: usize, i: usize) -> Self {
        let mut key = vec![0; dim * slots];
        key[slot * dim + i] = 1;
        Self::from_terms(dim, slots, trunc, [(key, S::one())])
    }

    /// A single monomial given slot by slot.
    pub fn monomial(dim: usize, trunc: usize, slot_exponents: &[&[u8]], c: S) -> Self {
        let key: Key = slot_exponents.iter().flat_map(|s| s.iter().copied()).collect();
        assert_eq!(key.len(), dim * slot_exponents.len());
        Self::from_terms(dim, slot_exponents.len(), trunc, [(key, c)])
    }

    /// Σ r_ij x_i ⊗ x_j.
    pub fn from_r_matrix(r: &RMatrix<S>, trunc: usize) -> Self {
        let dim = r.dim();
        Self::from_terms(
            dim,
            2,
            trunc,
            r.nonzero().map(|(i, j, v)| {
                let mut key = vec![0; 2 * dim];
                key[i] += 1;
                key[dim + j] += 1;
                (key, v.clone())
            }),
        )
    }

    /// Element of g^{⊗k} from index tuples.
    pub fn from_index_tuples<I>(dim: usize, slots: usize, trunc: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, S)>,
    {
        Self::from_terms(
            dim,
            slots,
            trunc,
            terms.into_iter().map(|(idx, c)| {
                let mut key = vec![0; dim * slots];
                for (s, &i) in idx.iter().enumerate() {
                    key[s * dim + i] += 1;
                }
                (key, c)
            }),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &S)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, key: &[u8]) -> S {
        self.coeffs.get(key).cloned().unwrap_or_else(S::zero)
    }

    pub fn slot_degrees(&self, key: &[u8]) -> Vec<usize> {
        key.chunks(self.dim.max(1))
            .map(degree)
            .chain(std::iter::repeat(0))
            .take(self.slots)
            .collect()
    }

    /// Lowest total degree of a stored term (`None` for zero).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.keys().map(|k| degree(k)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.coeffs.keys().map(|k| degree(k)).max()
    }

    /// Same data, new truncation; terms above it are dropped.
    pub fn with_trunc(&self, trunc: usize) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(k, _)| degree(k) <= trunc)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        Self { dim: self.dim, slots: self.slots, trunc, coeffs }
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        self.filter(|k, _| degree(k) == d)
    }

    /// Terms of total degree ≥ d.
    pub fn degree_at_least(&self, d: usize) -> Self {
        self.filter(|k, _| degree(k) >= d)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Key, &S) -> bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(k, c)| keep(k, c))
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        Self { dim: self.dim, slots: self.slots, trunc: self.trunc, coeffs }
    }

    /// Component of the given multidegree (one degree per slot).
    pub fn multidegree_part(&self, degrees: &[usize]) -> Self {
        let dim = self.dim;
        let slots = self.slots;
        self.filter(|k, _| {
            (0..slots).all(|s| degree(&k[s * dim..(s + 1) * dim]) == degrees[s])
        })
    }

    /// Every term has total degree ≥ 2.
    pub fn in_m_squared(&self) -> bool {
        self.coeffs.keys().all(|k| degree(k) >= 2)
    }

    /// Every slot of every term has positive degree.
    pub fn in_m_tensor(&self) -> bool {
        let dim = self.dim;
        self.coeffs
            .keys()
            .all(|k| (0..self.slots).all(|s| degree(&k[s * dim..(s + 1) * dim]) >= 1))
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_negligible() {
            return Self::zero(self.dim, self.slots, self.trunc);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, c)| (k.clone(), c.clone() * s.clone()))
            .filter(|(_, c)| !c.is_negligible())
            .collect();
        Self { dim: self.dim, slots: self.slots, trunc: self.trunc, coeffs }
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.slots != other.slots {
            return Err(Error::SlotMismatch(self.slots, other.slots));
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other, S::one()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other, -S::one()))
    }

    /// self + s·other, ignoring truncation bookkeeping of `other`.
    pub(crate) fn add_unchecked(&self, other: &Self, s: S) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            if degree(k) > self.trunc {
                continue;
            }
            let add = c.clone() * s.clone();
            match coeffs.get_mut(k) {
                Some(v) => {
                    *v = v.clone() + add;
                    if v.is_negligible() {
                        coeffs.remove(k);
                    }
                }
                None => {
                    if !add.is_negligible() {
                        coeffs.insert(k.clone(), add);
                    }
                }
            }
        }
        Self { dim: self.dim, slots: self.slots, trunc: self.trunc, coeffs }
    }

    /// Commutative product in S(g)^{⊗k}, truncated.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc = HashMap::new();
        let rhs = sorted_by_degree(other);
        for (a, ca) in &self.coeffs {
            let da = degree(a);
            for (b, cb, db) in &rhs {
                if da + db > self.trunc {
                    break;
                }
                let key: Key = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                accumulate(&mut acc, key, ca.clone() * (*cb).clone());
            }
        }
        Ok(Self::from_map(self.dim, self.slots, self.trunc, acc))
    }

    /// Reorders slots: slot `s` of the result is slot `perm[s]` of `self`.
    pub fn permute_slots(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.slots);
        let dim = self.dim;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let key: Key = perm
                    .iter()
                    .flat_map(|&p| k[p * dim..(p + 1) * dim].iter().copied())
                    .collect();
                (key, c.clone())
            })
            .collect();
        Self { dim, slots: self.slots, trunc: self.trunc, coeffs }
    }

    /// Coefficients of the multidegree-(1,…,1) part as index tuples.
    pub fn linear_part(&self) -> BTreeMap<Vec<usize>, S> {
        let dim = self.dim;
        self.coeffs
            .iter()
            .filter_map(|(k, c)| {
                let mut idx = Vec::with_capacity(self.slots);
                for s in 0..self.slots {
                    let chunk = &k[s * dim..(s + 1) * dim];
                    if degree(chunk) != 1 {
                        return None;
                    }
                    idx.push(chunk.iter().position(|&e| e == 1)?);
                }
                Some((idx, c.clone()))
            })
            .collect()
    }

    /// Human-readable rendering using basis names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        TensorDisplay { t: self, names }
    }
}

fn sorted_by_degree<S: Scalar>(t: &FormalSeriesTensor<S>) -> Vec<(&Key, &S, usize)> {
    let mut v: Vec<_> = t.coeffs.iter().map(|(k, c)| (k, c, degree(k))).collect();
    v.sort_by_key(|(_, _, d)| *d);
    v
}

struct TensorDisplay<'a, S> {
    t: &'a FormalSeriesTensor<S>,
    names: &'a [String],
}

impl<S: Scalar> fmt::Display for TensorDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_zero() {
            return write!(f, "0");
        }
        let dim = self.t.dim;
        for (n, (k, c)) in self.t.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for s in 0..self.t.slots {
                let chunk = &k[s * dim..(s + 1) * dim];
                let factors: Vec<String> = chunk
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            self.names[i].clone()
                        } else {
                            format!("{}^{e}", self.names[i])
                        }
                    })
                    .collect();
                let body = if factors.is_empty() { "1".to_string() } else { factors.join("") };
                write!(f, "{}{body}", if s == 0 { "" } else { "⊗" })?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &FormalSeriesTensor<S> {
    type Output = FormalSeriesTensor<S>;
    fn add(self, rhs: Self) -> Self::Output {
        self.try_add(rhs).expect("incompatible tensors")
    }
}

impl<S: Scalar> Sub for &FormalSeriesTensor<S> {
    type Output = FormalSeriesTensor<S>;
    fn sub(self, rhs: Self) -> Self::Output {
        self.try_sub(rhs).expect("incompatible tensors")
    }
}

impl<S: Scalar> Mul for &FormalSeriesTensor<S> {
    type Output = FormalSeriesTensor<S>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.try_mul(rhs).expect("incompatible tensors")
    }
}

impl<S: Scalar> Neg for &FormalSeriesTensor<S> {
    type Output = FormalSeriesTensor<S>;
    fn neg(self) -> Self::Output {
        self.scale(&-S::one())
    }
}

/// Lie-Poisson bracket on S(g)^{⊗k}, slots bracketing independently.
pub fn poisson_bracket<S: Scalar>(
    alg: &LieAlgebra<S>,
    f: &FormalSeriesTensor<S>,
    g: &FormalSeriesTensor<S>,
) -> Result<FormalSeriesTensor<S>> {
    f.check_compatible(g)?;
    if f.dim != alg.dim() {
        return Err(Error::DimensionMismatch(f.dim, alg.dim()));
    }
    Ok(bracket_up_to(alg, f, g, f.trunc))
}

/// Poisson bracket keeping only output terms of degree ≤ `max_deg`.
pub(crate) fn bracket_up_to<S: Scalar>(
    alg: &LieAlgebra<S>,
    f: &FormalSeriesTensor<S>,
    g: &FormalSeriesTensor<S>,
    max_deg: usize,
) -> FormalSeriesTensor<S> {
    let dim = f.dim;
    let mut acc: HashMap<Key, S> = HashMap::new();
    if alg.is_abelian() || f.is_zero() || g.is_zero() {
        return FormalSeriesTensor::zero(dim, f.slots, f.trunc);
    }
    let rhs = sorted_by_degree(g);
    for (a, ca) in &f.coeffs {
        let da = degree(a);
        if da == 0 {
            continue;
        }
        for (b, cb, db) in &rhs {
            if da + db > max_deg + 1 {
                break;
            }
            if *db == 0 {
                continue;
            }
            let cab = ca.clone() * (*cb).clone();
            for s in 0..f.slots {
                let base = s * dim;
                for i in 0..dim {
                    let ai = a[base + i];
                    if ai == 0 {
                        continue;
                    }
                    for j in 0..dim {
                        let bj = b[base + j];
                        if bj == 0 {
                            continue;
                        }
                        let terms = alg.bracket_terms(i, j);
                        if terms.is_empty() {
                            continue;
                        }
                        let mult = cab.clone() * S::from_int(ai as i64 * bj as i64);
                        for (k, c) in terms {
                            let mut key: Key = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                            key[base + i] -= 1;
                            key[base + j] -= 1;
                            key[base + k] += 1;
                            accumulate(&mut acc, key, mult.clone() * c.clone());
                        }
                    }
                }
            }
        }
    }
    FormalSeriesTensor::from_map(dim, f.slots, f.trunc, acc)
}

/// All ways of splitting an exponent vector into `parts` ordered pieces, with
/// the multinomial weights of the iterated coproduct.
fn split_exponents<S: Scalar>(exps: &[u8], parts: usize) -> Vec<(Vec<Vec<u8>>, S)> {
    let mut out: Vec<(Vec<Vec<u8>>, S)> = vec![(vec![vec![0; exps.len()]; parts], S::one())];
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let comps = compositions(e, parts);
        let mut next = Vec::with_capacity(out.len() * comps.len());
        for (pieces, w) in &out {
            for comp in &comps {
                let mut pieces = pieces.clone();
                let mut denom = 1u64;
                for (p, &c) in comp.iter().enumerate() {
                    pieces[p][i] = c;
                    denom *= (1..=c as u64).product::<u64>();
                }
                let weight = w.clone() * factorial::<S>(e as usize) / S::from_int(denom as i64);
                next.push((pieces, weight));
            }
        }
        out = next;
    }
    out
}

/// Weak compositions of `n` into `parts` nonnegative parts.
fn compositions(n: u8, parts: usize) -> Vec<Vec<u8>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// f^{I_1,…,I_m}: slot `j` of `f` is spread over the slots in `blocks[j]` by the
/// iterated coproduct dual to addition on g*; the remaining of the `n` slots
/// carry the unit. Slot indices are 0-based.
pub fn coproduct_insert<S: Scalar>(
    f: &FormalSeriesTensor<S>,
    blocks: &[&[usize]],
    n: usize,
) -> Result<FormalSeriesTensor<S>> {
    if blocks.len() != f.slots {
        return Err(Error::SlotMismatch(blocks.len(), f.slots));
    }
    let mut used = vec![false; n];
    for block in blocks {
        if block.is_empty() {
            return Err(Error::Parse("empty coproduct block".into()));
        }
        for &s in *block {
            if s >= n {
                return Err(Error::IndexOutOfRange { index: s, bound: n });
            }
            if used[s] {
                return Err(Error::BlockOverlap(s));
            }
            used[s] = true;
        }
    }
    let dim = f.dim;
    let mut cache: HashMap<(Vec<u8>, usize), Vec<(Vec<Vec<u8>>, S)>> = HashMap::new();
    let mut acc: HashMap<Key, S> = HashMap::new();
    for (key, c) in &f.coeffs {
        let mut partial: Vec<(Key, S)> = vec![(vec![0; dim * n], c.clone())];
        for (j, block) in blocks.iter().enumerate() {
            let chunk = key[j * dim..(j + 1) * dim].to_vec();
            let splits = cache
                .entry((chunk.clone(), block.len()))
                .or_insert_with(|| split_exponents(&chunk, block.len()));
            let mut next = Vec::with_capacity(partial.len() * splits.len());
            for (pk, pc) in &partial {
                for (pieces, w) in splits.iter() {
                    let mut nk = pk.clone();
                    for (piece, &target) in pieces.iter().zip(block.iter()) {
                        nk[target * dim..(target + 1) * dim].copy_from_slice(piece);
                    }
                    next.push((nk, pc.clone() * w.clone()));
                }
            }
            partial = next;
        }
        for (k, v) in partial {
            accumulate(&mut acc, k, v);
        }
    }
    Ok(FormalSeriesTensor::from_map(dim, n, f.trunc, acc))
}

/// Adjoint action of the basis element `x_i`, as a derivation across all
/// slots and factors.
pub fn g_action<S: Scalar>(
    alg: &LieAlgebra<S>,
    i: usize,
    f: &FormalSeriesTensor<S>,
) -> Result<FormalSeriesTensor<S>> {
    let dim = alg.dim();
    if i >= dim {
        return Err(Error::IndexOutOfRange { index: i, bound: dim });
    }
    if f.dim != dim {
        return Err(Error::DimensionMismatch(f.dim, dim));
    }
    let mut acc = HashMap::new();
    for (key, c) in &f.coeffs {
        for s in 0..f.slots {
            let base = s * dim;
            for j in 0..dim {
                let e = key[base + j];
                if e == 0 {
                    continue;
                }
                for (k, ck) in alg.bracket_terms(i, j) {
                    let mut nk = key.clone();
                    nk[base + j] -= 1;
                    nk[base + k] += 1;
                    accumulate(&mut acc, nk, c.clone() * ck.clone() * S::from_int(e as i64));
                }
            }
        }
    }
    Ok(FormalSeriesTensor::from_map(dim, f.slots, f.trunc, acc))
}

pub fn is_invariant<S: Scalar>(alg: &LieAlgebra<S>, f: &FormalSeriesTensor<S>) -> Result<bool> {
    for i in 0..alg.dim() {
        if !g_action(alg, i, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All permutations of `0..k` with their signs.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if left.is_empty() {
            out.push((prefix.clone(), sign));
            return;
        }
        for pos in 0..left.len() {
            let v = left.remove(pos);
            prefix.push(v);
            // Moving the element at `pos` to the front costs `pos` transpositions.
            rec(prefix, left, if pos % 2 == 0 { sign } else { -sign }, out);
            prefix.pop();
            left.insert(pos, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..k).collect(), 1, &mut out);
    out
}

/// Idempotent antisymmetrization of the multidegree-(1,…,1) component.
pub fn alt_project<S: Scalar>(f: &FormalSeriesTensor<S>) -> FormalSeriesTensor<S> {
    let k = f.slots;
    let perms = signed_permutations(k);
    let norm = factorial::<S>(k);
    let terms = f.linear_part().into_iter().flat_map(|(idx, c)| {
        let c = c / norm.clone();
        perms
            .iter()
            .map(|(p, sign)| (p.iter().map(|&q| idx[q]).collect::<Vec<_>>(), c.clone() * S::from_int(*sign)))
            .collect::<Vec<_>>()
    });
    FormalSeriesTensor::from_index_tuples(f.dim, k, k, terms)
}

/// [r^{12}, r^{13}] + [r^{12}, r^{23}] + [r^{13}, r^{23}] in g^{⊗3}, for any r.
pub fn cyb_unchecked<S: Scalar>(alg: &LieAlgebra<S>, r: &RMatrix<S>) -> FormalSeriesTensor<S> {
    let dim = alg.dim();
    let mut terms: Vec<(Vec<usize>, S)> = Vec::new();
    let nz: Vec<_> = r.nonzero().map(|(i, j, v)| (i, j, v.clone())).collect();
    for (i, j, rij) in &nz {
        for (k, l, rkl) in &nz {
            let w = rij.clone() * rkl.clone();
            for (m, c) in alg.bracket_terms(*i, *k) {
                terms.push((vec![*m, *j, *l], w.clone() * c.clone()));
            }
            for (m, c) in alg.bracket_terms(*j, *k) {
                terms.push((vec![*i, *m, *l], w.clone() * c.clone()));
            }
            for (m, c) in alg.bracket_terms(*j, *l) {
                terms.push((vec![*i, *k, *m], w.clone() * c.clone()));
            }
        }
    }
    FormalSeriesTensor::from_index_tuples(dim, 3, 3, terms)
}

/// Classical Yang-Baxter operator of an antisymmetric r.
pub fn cyb<S: Scalar>(alg: &LieAlgebra<S>, r: &RMatrix<S>) -> Result<FormalSeriesTensor<S>> {
    if r.dim() != alg.dim() {
        return Err(Error::DimensionMismatch(r.dim(), alg.dim()));
    }
    if !r.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    Ok(cyb_unchecked(alg, r))
}

/// [t^{12}, t^{23}] = Σ t_ij t_kl x_i ⊗ [x_j, x_k] ⊗ x_l.
pub fn bracket_12_23<S: Scalar>(alg: &LieAlgebra<S>, t: &RMatrix<S>) -> FormalSeriesTensor<S> {
    let nz: Vec<_> = t.nonzero().map(|(i, j, v)| (i, j, v.clone())).collect();
    let mut terms = Vec::new();
    for (i, j, tij) in &nz {
        for (k, l, tkl) in &nz {
            for (m, c) in alg.bracket_terms(*j, *k) {
                terms.push((vec![*i, *m, *l], tij.clone() * tkl.clone() * c.clone()));
            }
        }
    }
    FormalSeriesTensor::from_index_tuples(alg.dim(), 3, 3, terms)
}

/// Exponent vectors in `dim` variables of total degree `d`, in lexicographic order.
pub fn monomials_of_degree(dim: usize, d: usize) -> Vec<Vec<u8>> {
    if dim == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = compositions(d as u8, dim);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Keys of the homogeneous space of total degree `total` in `slots` slots,
/// each slot of degree ≥ `min_slot`. The order is deterministic.
pub fn homogeneous_basis(dim: usize, slots: usize, total: usize, min_slot: usize) -> Vec<Key> {
    let mut out = Vec::new();
    if slots * min_slot > total {
        return out;
    }
    let free = total - slots * min_slot;
    let mut splits = compositions(free as u8, slots);
    splits.sort_by(|a, b| b.cmp(a));
    for split in splits {
        let per_slot: Vec<Vec<Vec<u8>>> = split
            .iter()
            .map(|&extra| monomials_of_degree(dim, extra as usize + min_slot))
            .collect();
        let mut partial: Vec<Key> = vec![Vec::new()];
        for options in &per_slot {
            let mut next = Vec::with_capacity(partial.len() * options.len());
            for p in &partial {
                for o in options {
                    let mut k = p.clone();
                    k.extend_from_slice(o);
                    next.push(k);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}
