//! Enveloping algebras in the PBW basis, the dual Lie algebra g*, and the
//! co-Poisson structure δ and derivation D on an enveloping algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::RwLock;

use crate::duality::LinearForm;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, RMatrix};
use crate::linalg::{self, SparseVec};
use crate::scalar::Scalar;
use crate::tensor::{monomials_of_degree, poisson_bracket, FormalSeriesTensor};

/// Which enveloping algebra an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraTag {
    G,
    GDual,
}

/// Non-decreasing sequence of generator indices.
pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq)]
pub struct PBWElement<S> {
    tag: AlgebraTag,
    coeffs: BTreeMap<Word, S>,
}

fn is_sorted(w: &[usize]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

impl<S: Scalar> PBWElement<S> {
    pub fn zero(tag: AlgebraTag) -> Self {
        Self { tag, coeffs: BTreeMap::new() }
    }

    pub fn one(tag: AlgebraTag) -> Self {
        Self::monomial(tag, Vec::new(), S::one())
    }

    pub fn generator(tag: AlgebraTag, i: usize) -> Self {
        Self::monomial(tag, vec![i], S::one())
    }

    pub fn monomial(tag: AlgebraTag, word: Word, c: S) -> Self {
        Self::from_terms(tag, [(word, c)])
    }

    /// Words must be sorted; repeated words are added.
    pub fn from_terms(tag: AlgebraTag, terms: impl IntoIterator<Item = (Word, S)>) -> Self {
        let mut coeffs: BTreeMap<Word, S> = BTreeMap::new();
        for (w, c) in terms {
            assert!(is_sorted(&w), "PBW words are sorted");
            let slot = coeffs.entry(w).or_insert_with(S::zero);
            *slot = slot.clone() + c;
        }
        coeffs.retain(|_, c| !c.is_negligible());
        Self { tag, coeffs }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, w: &[usize]) -> S {
        self.coeffs.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Filtration degree: the longest word present (0 for zero).
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.tag, self.coeffs.iter().map(|(w, c)| (w.clone(), c.clone() * s.clone())))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.tag != other.tag {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Self::from_terms(
            self.tag,
            self.coeffs.iter().chain(other.coeffs.iter()).map(|(w, c)| (w.clone(), c.clone())),
        ))
    }

    /// Top filtration component as a commutative polynomial in `dim` variables.
    pub fn symbol(&self, dim: usize) -> FormalSeriesTensor<S> {
        let d = self.degree();
        FormalSeriesTensor::from_terms(
            dim,
            1,
            d,
            self.coeffs
                .iter()
                .filter(|(w, _)| w.len() == d)
                .map(|(w, c)| (word_exponents(w, dim), c.clone())),
        )
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PbwDisplay { x: self, names }
    }
}

struct PbwDisplay<'a, S> {
    x: &'a PBWElement<S>,
    names: &'a [String],
}

impl<S: Scalar> fmt::Display for PbwDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_zero() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.x.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let body: Vec<&str> = w.iter().map(|&i| self.names[i].as_str()).collect();
            if body.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}){}", body.join("·"))?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Add for &PBWElement<S> {
    type Output = PBWElement<S>;
    fn add(self, rhs: Self) -> PBWElement<S> {
        self.try_add(rhs).expect("elements of different algebras")
    }
}

impl<S: Scalar> Sub for &PBWElement<S> {
    type Output = PBWElement<S>;
    fn sub(self, rhs: Self) -> PBWElement<S> {
        self.try_add(&-rhs).expect("elements of different algebras")
    }
}

impl<S: Scalar> Neg for &PBWElement<S> {
    type Output = PBWElement<S>;
    fn neg(self) -> PBWElement<S> {
        self.scale(&-S::one())
    }
}

pub fn word_exponents(w: &[usize], dim: usize) -> Vec<u8> {
    let mut e = vec![0u8; dim];
    for &i in w {
        e[i] += 1;
    }
    e
}

pub fn exponents_word(e: &[u8]) -> Word {
    e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i).take(k as usize)).collect()
}

/// U(a) for a finite-dimensional Lie algebra a, with a write-once memo of
/// straightened words.
pub struct Envelope<S> {
    tag: AlgebraTag,
    alg: LieAlgebra<S>,
    memo: RwLock<HashMap<Word, Vec<(Word, S)>>>,
}

impl<S: Scalar> Clone for Envelope<S> {
    fn clone(&self) -> Self {
        Self::new(self.tag, self.alg.clone())
    }
}

impl<S: Scalar> fmt::Debug for Envelope<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Envelope").field("tag", &self.tag).field("alg", &self.alg).finish()
    }
}

impl<S: Scalar> Envelope<S> {
    pub fn new(tag: AlgebraTag, alg: LieAlgebra<S>) -> Self {
        Self { tag, alg, memo: RwLock::new(HashMap::new()) }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn one(&self) -> PBWElement<S> {
        PBWElement::one(self.tag)
    }

    pub fn generator(&self, i: usize) -> PBWElement<S> {
        PBWElement::generator(self.tag, i)
    }

    /// PBW expansion of an arbitrary word, by swapping the first descent:
    /// u·b·a·v = u·a·b·v + u·[b,a]·v.
    pub fn straighten(&self, word: &[usize]) -> Vec<(Word, S)> {
        let Some(p) = word.windows(2).position(|w| w[0] > w[1]) else {
            return vec![(word.to_vec(), S::one())];
        };
        if let Some(v) = self.memo.read().expect("memo poisoned").get(word) {
            return v.clone();
        }
        let mut acc: BTreeMap<Word, S> = BTreeMap::new();
        let mut push = |terms: Vec<(Word, S)>, scale: &S| {
            for (w, c) in terms {
                let slot = acc.entry(w).or_insert_with(S::zero);
                *slot = slot.clone() + c * scale.clone();
            }
        };
        let (b, a) = (word[p], word[p + 1]);
        let mut swapped = word.to_vec();
        swapped.swap(p, p + 1);
        push(self.straighten(&swapped), &S::one());
        for (k, c) in self.alg.bracket_terms(b, a) {
            let mut shorter = word[..p].to_vec();
            shorter.push(*k);
            shorter.extend_from_slice(&word[p + 2..]);
            push(self.straighten(&shorter), c);
        }
        let result: Vec<(Word, S)> = acc.into_iter().filter(|(_, c)| !c.is_negligible()).collect();
        self.memo.write().expect("memo poisoned").insert(word.to_vec(), result.clone());
        result
    }

    fn check(&self, x: &PBWElement<S>) -> Result<()> {
        if x.tag == self.tag {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn product(&self, a: &PBWElement<S>, b: &PBWElement<S>) -> Result<PBWElement<S>> {
        self.check(a)?;
        self.check(b)?;
        let mut terms = Vec::new();
        for (wa, ca) in &a.coeffs {
            for (wb, cb) in &b.coeffs {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                let cab = ca.clone() * cb.clone();
                for (v, c) in self.straighten(&w) {
                    terms.push((v, c * cab.clone()));
                }
            }
        }
        Ok(PBWElement::from_terms(self.tag, terms))
    }

    pub fn commutator(&self, a: &PBWElement<S>, b: &PBWElement<S>) -> Result<PBWElement<S>> {
        Ok(&self.product(a, b)? - &self.product(b, a)?)
    }

    pub fn power(&self, a: &PBWElement<S>, n: usize) -> Result<PBWElement<S>> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.product(&acc, a)?;
        }
        Ok(acc)
    }

    /// Sorted words of length exactly `d`, in a fixed order.
    pub fn words_of_degree(&self, d: usize) -> Vec<Word> {
        monomials_of_degree(self.dim(), d).iter().map(|e| exponents_word(e)).collect()
    }

    /// Sorted words of length ≤ `maxdeg`, shortest first.
    pub fn words_up_to(&self, maxdeg: usize) -> Vec<Word> {
        (0..=maxdeg).flat_map(|d| self.words_of_degree(d)).collect()
    }

    /// Basis of the centralizer of all generators within filtration ≤ maxdeg.
    pub fn center(&self, maxdeg: usize) -> Vec<PBWElement<S>> {
        let words = self.words_up_to(maxdeg);
        let dim = self.dim();
        let mut rows: HashMap<(usize, Word), usize> = HashMap::new();
        let cols: Vec<SparseVec<S>> = words
            .iter()
            .map(|w| {
                let m = PBWElement::monomial(self.tag, w.clone(), S::one());
                let mut entries = Vec::new();
                for i in 0..dim {
                    let c = self.commutator(&m, &self.generator(i)).expect("same algebra");
                    for (v, x) in c.coeffs {
                        let n = rows.len();
                        let row = *rows.entry((i, v)).or_insert(n);
                        entries.push((row, x));
                    }
                }
                linalg::normalize(entries)
            })
            .collect();
        linalg::kernel(&cols, rows.len())
            .into_iter()
            .map(|v| PBWElement::from_terms(self.tag, v.into_iter().map(|(j, c)| (words[j].clone(), c))))
            .collect()
    }
}

pub fn pbw_product<S: Scalar>(
    env: &Envelope<S>,
    a: &PBWElement<S>,
    b: &PBWElement<S>,
) -> Result<PBWElement<S>> {
    env.product(a, b)
}

pub fn center<S: Scalar>(env: &Envelope<S>, maxdeg: usize) -> Vec<PBWElement<S>> {
    env.center(maxdeg)
}

/// g* with [α,β] = ad*(R β)(α) − ad*(R α)(β), R(ξ) = (id⊗ξ)(r), on the dual basis.
pub fn dual_bracket<S: Scalar>(alg: &LieAlgebra<S>, r: &RMatrix<S>) -> Result<LieAlgebra<S>> {
    let dim = alg.dim();
    if r.dim() != dim {
        return Err(Error::DimensionMismatch(r.dim(), dim));
    }
    if !r.is_antisymmetric() {
        return Err(Error::NotAntisymmetric);
    }
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut terms = Vec::new();
            for m in 0..dim {
                let mut v = S::zero();
                for a in 0..dim {
                    v = v - r.get(a, j).clone() * alg.structure_constant(a, m, i);
                    v = v + r.get(a, i).clone() * alg.structure_constant(a, m, j);
                }
                if !v.is_negligible() {
                    terms.push((m, v));
                }
            }
            entries.push((i, j, terms));
        }
    }
    let names = alg.names().iter().map(|n| format!("{n}*")).collect();
    LieAlgebra::from_brackets(names, entries)
}

/// Basis of S(g*)^g by degree, for g acting on ξ by the coadjoint action
/// x_i·ξ_j = −Σ_m c_{imj} ξ_m.
pub fn invariants_s_dual<S: Scalar>(alg: &LieAlgebra<S>, maxdeg: usize) -> Vec<LinearForm<S>> {
    let dim = alg.dim();
    let mut out = Vec::new();
    for d in 0..=maxdeg {
        let monos = monomials_of_degree(dim, d);
        let mut rows: HashMap<(usize, Vec<u8>), usize> = HashMap::new();
        let cols: Vec<SparseVec<S>> = monos
            .iter()
            .map(|e| {
                let mut entries = Vec::new();
                for i in 0..dim {
                    for j in 0..dim {
                        if e[j] == 0 {
                            continue;
                        }
                        for m in 0..dim {
                            let c = alg.structure_constant(i, m, j);
                            if c.is_negligible() {
                                continue;
                            }
                            let mut t = e.clone();
                            t[j] -= 1;
                            t[m] += 1;
                            let n = rows.len();
                            let row = *rows.entry((i, t)).or_insert(n);
                            entries.push((row, -c * S::from_int(e[j] as i64)));
                        }
                    }
                }
                linalg::normalize(entries)
            })
            .collect();
        for v in linalg::kernel(&cols, rows.len()) {
            out.push(LinearForm::from_terms(dim, d, v.into_iter().map(|(j, c)| (monos[j].clone(), c))));
        }
    }
    out
}

/// Lie-Poisson bracket of S(g*) built from the bracket of g*.
pub fn s_dual_poisson_bracket<S: Scalar>(
    dual: &LieAlgebra<S>,
    f: &LinearForm<S>,
    g: &LinearForm<S>,
) -> LinearForm<S> {
    let n = f.order() + g.order();
    let pf = f.as_polynomial(n);
    let pg = g.as_polynomial(n);
    LinearForm::from_polynomial(&poisson_bracket(dual, &pf, &pg).expect("same shape"), n)
}

/// Elements of U(a)⊗U(a) keyed by pairs of sorted words.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PBWTensor<S> {
    coeffs: BTreeMap<(Word, Word), S>,
}

impl<S: Scalar> PBWTensor<S> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((Word, Word), S)>) -> Self {
        let mut coeffs: BTreeMap<(Word, Word), S> = BTreeMap::new();
        for (k, c) in terms {
            let slot = coeffs.entry(k).or_insert_with(S::zero);
            *slot = slot.clone() + c;
        }
        coeffs.retain(|_, c| !c.is_negligible());
        Self { coeffs }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &S)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_scaled(&self, other: &Self, s: &S) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .map(|(k, c)| (k.clone(), c.clone()))
                .chain(other.coeffs.iter().map(|(k, c)| (k.clone(), c.clone() * s.clone()))),
        )
    }

    /// x ↦ x^{21}.
    pub fn flip(&self) -> Self {
        Self::from_terms(self.coeffs.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.clone())))
    }
}

/// An enveloping algebra with the co-Poisson structure induced by a Lie
/// cobracket on its generators.
#[derive(Clone)]
pub struct CoPoissonEnvelope<S: Scalar> {
    env: Envelope<S>,
    /// δ(x_m) = Σ coeff·x_a⊗x_b as (a, b, coeff) triples.
    cobracket: Vec<Vec<(usize, usize, S)>>,
}

impl<S: Scalar> fmt::Debug for CoPoissonEnvelope<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoPoissonEnvelope").field("env", &self.env).field("cobracket", &self.cobracket).finish()
    }
}

impl<S: Scalar> CoPoissonEnvelope<S> {
    pub fn new(env: Envelope<S>, cobracket: Vec<Vec<(usize, usize, S)>>) -> Self {
        assert_eq!(cobracket.len(), env.dim());
        Self { env, cobracket }
    }

    /// U(g*) for g* = dual_bracket(r), cobracket the transpose of the bracket
    /// of g: δ(ξ_m) = Σ_{a,b} c_{abm} ξ_a⊗ξ_b.
    pub fn dual_of(alg: &LieAlgebra<S>, r: &RMatrix<S>) -> Result<Self> {
        let dual = dual_bracket(alg, r)?;
        Ok(Self::with_transposed_bracket(dual, alg))
    }

    /// U(h) for a given Lie algebra h ≅ g*, cobracket the transpose of g's bracket.
    pub fn with_transposed_bracket(dual: LieAlgebra<S>, alg: &LieAlgebra<S>) -> Self {
        let dim = alg.dim();
        let mut cobracket = vec![Vec::new(); dim];
        for a in 0..dim {
            for b in 0..dim {
                for (m, c) in alg.bracket_terms(a, b) {
                    cobracket[*m].push((a, b, c.clone()));
                }
            }
        }
        Self::new(Envelope::new(AlgebraTag::GDual, dual), cobracket)
    }

    /// U(g) with the coboundary cobracket δ(x) = [x⊗1 + 1⊗x, r].
    pub fn coboundary(alg: &LieAlgebra<S>, r: &RMatrix<S>) -> Self {
        let dim = alg.dim();
        let mut cobracket = vec![Vec::new(); dim];
        for (m, slot) in cobracket.iter_mut().enumerate() {
            for (i, j, rij) in r.nonzero() {
                for (k, c) in alg.bracket_terms(m, i) {
                    slot.push((*k, j, rij.clone() * c.clone()));
                }
                for (k, c) in alg.bracket_terms(m, j) {
                    slot.push((i, *k, rij.clone() * c.clone()));
                }
            }
        }
        Self::new(Envelope::new(AlgebraTag::G, alg.clone()), cobracket)
    }

    pub fn envelope(&self) -> &Envelope<S> {
        &self.env
    }

    fn tensor_product(&self, x: &PBWTensor<S>, y: &PBWTensor<S>) -> PBWTensor<S> {
        let mut terms = Vec::new();
        for ((a1, a2), ca) in &x.coeffs {
            for ((b1, b2), cb) in &y.coeffs {
                let mut w1 = a1.clone();
                w1.extend_from_slice(b1);
                let mut w2 = a2.clone();
                w2.extend_from_slice(b2);
                let left = self.env.straighten(&w1);
                let right = self.env.straighten(&w2);
                let cab = ca.clone() * cb.clone();
                for (u, cu) in &left {
                    for (v, cv) in &right {
                        terms.push(((u.clone(), v.clone()), cab.clone() * cu.clone() * cv.clone()));
                    }
                }
            }
        }
        PBWTensor::from_terms(terms)
    }

    /// Δ₀ of a sorted word: sum over splittings into complementary subsequences.
    fn coproduct_word(w: &[usize]) -> PBWTensor<S> {
        let k = w.len();
        PBWTensor::from_terms((0..1u32 << k).map(|mask| {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (p, &i) in w.iter().enumerate() {
                if (mask >> p) & 1 == 1 {
                    left.push(i);
                } else {
                    right.push(i);
                }
            }
            ((left, right), S::one())
        }))
    }

    pub fn coproduct(&self, x: &PBWElement<S>) -> Result<PBWTensor<S>> {
        self.env.check(x)?;
        let mut acc = PBWTensor::zero();
        for (w, c) in &x.coeffs {
            acc = acc.add_scaled(&Self::coproduct_word(w), c);
        }
        Ok(acc)
    }

    fn delta_word(&self, w: &[usize], cache: &mut HashMap<Word, PBWTensor<S>>) -> PBWTensor<S> {
        if w.is_empty() {
            return PBWTensor::zero();
        }
        if let Some(v) = cache.get(w) {
            return v.clone();
        }
        let first = PBWTensor::from_terms(
            self.cobracket[w[0]].iter().map(|(a, b, c)| ((vec![*a], vec![*b]), c.clone())),
        );
        let value = if w.len() == 1 {
            first
        } else {
            // δ(x·y) = δ(x)Δ₀(y) + Δ₀(x)δ(y) with x = w[0], y = w[1..].
            let rest = &w[1..];
            let a = self.tensor_product(&first, &Self::coproduct_word(rest));
            let b = self.tensor_product(&Self::coproduct_word(&w[..1]), &self.delta_word(rest, cache));
            a.add_scaled(&b, &S::one())
        };
        cache.insert(w.to_vec(), value.clone());
        value
    }

    /// Co-Leibniz extension of the cobracket of the generators.
    pub fn copoisson_delta(&self, x: &PBWElement<S>) -> Result<PBWTensor<S>> {
        self.env.check(x)?;
        let mut cache = HashMap::new();
        let mut acc = PBWTensor::zero();
        for (w, c) in &x.coeffs {
            acc = acc.add_scaled(&self.delta_word(w, &mut cache), c);
        }
        Ok(acc)
    }

    /// D on a generator: the bracket applied to its cobracket.
    pub fn d_generator(&self, m: usize) -> PBWElement<S> {
        let alg = self.env.algebra();
        let terms = self.cobracket[m].iter().flat_map(|(a, b, c)| {
            alg.bracket_terms(*a, *b).iter().map(move |(k, x)| (vec![*k], c.clone() * x.clone()))
        });
        PBWElement::from_terms(self.env.tag, terms.collect::<Vec<_>>())
    }

    fn d_word(&self, w: &[usize]) -> PBWElement<S> {
        let mut acc = PBWElement::zero(self.env.tag);
        for p in 0..w.len() {
            let dg = self.d_generator(w[p]);
            for (v, c) in &dg.coeffs {
                let mut word = w[..p].to_vec();
                word.extend_from_slice(v);
                word.extend_from_slice(&w[p + 1..]);
                let terms = self.env.straighten(&word).into_iter().map(|(u, x)| (u, x * c.clone()));
                acc = &acc + &PBWElement::from_terms(self.env.tag, terms.collect::<Vec<_>>());
            }
        }
        acc
    }

    /// The derivation extending bracket∘cobracket from the generators.
    pub fn derivation_d(&self, x: &PBWElement<S>) -> Result<PBWElement<S>> {
        self.env.check(x)?;
        let mut acc = PBWElement::zero(self.env.tag);
        for (w, c) in &x.coeffs {
            acc = &acc + &self.d_word(w).scale(c);
        }
        Ok(acc)
    }

    /// (D⊗id) applied to a two-fold tensor.
    pub fn d_tensor_id(&self, x: &PBWTensor<S>) -> PBWTensor<S> {
        let mut terms = Vec::new();
        for ((a, b), c) in &x.coeffs {
            for (u, cu) in &self.d_word(a).coeffs {
                terms.push(((u.clone(), b.clone()), c.clone() * cu.clone()));
            }
        }
        PBWTensor::from_terms(terms)
    }

    /// x ↦ δ(x) − s·(D⊗id)(Δ₀(x)).
    pub fn c_s_map(&self, x: &PBWElement<S>, s: &S) -> Result<PBWTensor<S>> {
        let delta = self.copoisson_delta(x)?;
        let twisted = self.d_tensor_id(&self.coproduct(x)?);
        Ok(delta.add_scaled(&twisted, &-s.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::RKind;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn usl2() -> Envelope<Rational> {
        Envelope::new(AlgebraTag::G, LieAlgebra::sl2())
    }

    #[test]
    fn defining_relation() {
        let u = usl2();
        let (e, h, f) = (u.generator(0), u.generator(1), u.generator(2));
        assert_eq!(u.commutator(&e, &f).unwrap(), h);
        assert_eq!(u.commutator(&h, &e).unwrap(), e.scale(&q(2, 1)));
    }

    #[test]
    fn straightening_by_hand() {
        // f·e = e·f − h
        let u = usl2();
        let fe = u.product(&u.generator(2), &u.generator(0)).unwrap();
        let expected = PBWElement::from_terms(AlgebraTag::G, [(vec![0, 2], q(1, 1)), (vec![1], q(-1, 1))]);
        assert_eq!(fe, expected);
        // f·h = h·f + 2f, so e·f·h = e·h·f + 2·e·f
        let efh = u.product(&u.product(&u.generator(0), &u.generator(2)).unwrap(), &u.generator(1)).unwrap();
        let expected = PBWElement::from_terms(AlgebraTag::G, [(vec![0, 1, 2], q(1, 1)), (vec![0, 2], q(2, 1))]);
        assert_eq!(efh, expected);
    }

    #[test]
    fn tags_are_checked() {
        let u = usl2();
        let x = PBWElement::<Rational>::generator(AlgebraTag::GDual, 0);
        assert_eq!(u.product(&x, &x), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn center_of_usl2() {
        let u = usl2();
        assert_eq!(u.center(2).len(), 2);
        assert_eq!(u.center(4).len(), 3);
        let casimir = PBWElement::from_terms(
            AlgebraTag::G,
            [(vec![0, 2], q(2, 1)), (vec![1], q(-1, 1)), (vec![1, 1], q(1, 2))],
        );
        for i in 0..3 {
            assert!(u.commutator(&casimir, &u.generator(i)).unwrap().is_zero());
        }
    }

    #[test]
    fn abelian_center_is_everything() {
        let u = Envelope::<Rational>::new(AlgebraTag::G, LieAlgebra::abelian(2));
        assert_eq!(u.center(3).len(), 10);
    }

    #[test]
    fn dual_bracket_examples() {
        let g = LieAlgebra::<Rational>::sl2();
        assert!(dual_bracket(&g, &RMatrix::zero(3)).unwrap().is_abelian());
        let r = RMatrix::from_triples(3, &[(0, 2, q(1, 2)), (2, 0, q(-1, 2))], RKind::AntisymmetricCoboundary).unwrap();
        let d = dual_bracket(&g, &r).unwrap();
        assert!(!d.is_abelian());
        assert!(dual_bracket(&LieAlgebra::abelian(3), &RMatrix::from_triples(3, &[(0, 1, q(1, 1)), (1, 0, q(-1, 1))], RKind::AntisymmetricCoboundary).unwrap()).unwrap().is_abelian());
    }

    #[test]
    fn sl2_invariant_dimensions() {
        let g = LieAlgebra::<Rational>::sl2();
        let inv = invariants_s_dual(&g, 4);
        let dims: Vec<usize> = (0..=4).map(|d| inv.iter().filter(|f| f.degree() == d).count()).collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn delta_of_unit_and_generators() {
        let g = LieAlgebra::<Rational>::sl2();
        let r = RMatrix::from_triples(3, &[(0, 2, q(1, 2)), (2, 0, q(-1, 2))], RKind::AntisymmetricCoboundary).unwrap();
        let u = CoPoissonEnvelope::dual_of(&g, &r).unwrap();
        let env = u.envelope();
        assert!(u.copoisson_delta(&env.one()).unwrap().is_zero());
        assert!(u.derivation_d(&env.one()).unwrap().is_zero());
        // δ(h*) = [e,f] = h transposed: e*⊗f* − f*⊗e*
        let dh = u.copoisson_delta(&env.generator(1)).unwrap();
        let expected = PBWTensor::from_terms([((vec![0], vec![2]), q(1, 1)), ((vec![2], vec![0]), q(-1, 1))]);
        assert_eq!(dh, expected);
        assert_eq!(dh.flip(), PBWTensor::zero().add_scaled(&dh, &q(-1, 1)));
    }
}
