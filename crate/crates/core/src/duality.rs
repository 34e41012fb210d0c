//! Restricted-dual forms on O_{g*}, the twisted coproduct ^ρΔ, the product
//! ·_ρ it induces on forms, Poisson traces, and θ : S(g*)^g → U(g*).
//!
//! A form with key α is ξ^α; it pairs with x^β as α!·δ_{αβ}. With this
//! normalization the Δ₀-convolution of forms is the product of S(g*).

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::envelope::{exponents_word, AlgebraTag, Envelope, PBWElement, Word};
use crate::envelope::dual_bracket;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, RKind, RMatrix};
use crate::linalg::{self, SparseVec};
use crate::scalar::{multi_factorial, Scalar};
use crate::star::star_conjugate;
use crate::tensor::{coproduct_insert, monomials_of_degree, poisson_bracket, FormalSeriesTensor, Key};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<S> {
    dim: usize,
    order: usize,
    coeffs: BTreeMap<Key, S>,
}

impl<S: Scalar> LinearForm<S> {
    /// Keys above `order` are rejected.
    pub fn from_terms(dim: usize, order: usize, terms: impl IntoIterator<Item = (Key, S)>) -> Self {
        let mut coeffs: BTreeMap<Key, S> = BTreeMap::new();
        for (k, c) in terms {
            assert_eq!(k.len(), dim);
            assert!(degree(&k) <= order, "form key above its order");
            let slot = coeffs.entry(k).or_insert_with(S::zero);
            *slot = slot.clone() + c;
        }
        coeffs.retain(|_, c| !c.is_negligible());
        Self { dim, order, coeffs }
    }

    pub fn zero(dim: usize, order: usize) -> Self {
        Self { dim, order, coeffs: BTreeMap::new() }
    }

    /// The counit.
    pub fn one(dim: usize) -> Self {
        Self::from_terms(dim, 0, [(vec![0; dim], S::one())])
    }

    /// ξ_i, the dual basis vector.
    pub fn dual_generator(dim: usize, i: usize) -> Self {
        let mut k = vec![0; dim];
        k[i] = 1;
        Self::from_terms(dim, 1, [(k, S::one())])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Largest degree of a key (0 for the zero form).
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|k| degree(k)).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &S)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, k: &[u8]) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.dim, self.order, self.coeffs.iter().map(|(k, c)| (k.clone(), c.clone() * s.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(
            self.dim,
            self.order.max(other.order),
            self.coeffs.iter().chain(other.coeffs.iter()).map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    /// Same form viewed as a polynomial in ξ.
    pub fn as_polynomial(&self, trunc: usize) -> FormalSeriesTensor<S> {
        FormalSeriesTensor::from_terms(self.dim, 1, trunc, self.coeffs.iter().map(|(k, c)| (k.clone(), c.clone())))
    }

    pub fn from_polynomial(p: &FormalSeriesTensor<S>, order: usize) -> Self {
        Self::from_terms(p.dim(), order, p.terms().map(|(k, c)| (k.clone(), c.clone())))
    }

    /// Product in S(g*), which is the untwisted convolution of forms.
    pub fn product(&self, other: &Self) -> Self {
        let n = self.order + other.order;
        Self::from_polynomial(&(&self.as_polynomial(n) * &other.as_polynomial(n)), n)
    }

    /// Top-degree part.
    pub fn symbol(&self) -> Self {
        let d = self.degree();
        Self::from_terms(
            self.dim,
            d,
            self.coeffs.iter().filter(|(k, _)| degree(k) == d).map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    /// The PBW element with the same coordinates (ξ^α ↦ sorted word of α).
    pub fn to_pbw(&self, tag: AlgebraTag) -> PBWElement<S> {
        PBWElement::from_terms(tag, self.coeffs.iter().map(|(k, c)| (exponents_word(k), c.clone())))
    }
}

fn degree(k: &[u8]) -> usize {
    k.iter().map(|&e| e as usize).sum()
}

/// ℓ(f) = Σ_α ℓ_α·α!·f_α.
pub fn form_pair<S: Scalar>(l: &LinearForm<S>, f: &FormalSeriesTensor<S>) -> Result<S> {
    if f.slots() != 1 {
        return Err(Error::SlotMismatch(f.slots(), 1));
    }
    if l.order > f.trunc() {
        return Err(Error::TruncationTooLow { have: f.trunc(), need: l.order });
    }
    let mut acc = S::zero();
    for (k, c) in &l.coeffs {
        let v = f.coeff(k);
        if !v.is_negligible() {
            acc = acc + c.clone() * multi_factorial::<S>(k) * v;
        }
    }
    Ok(acc)
}

/// (ℓ₁⊗ℓ₂)(T) for a two-slot tensor.
pub fn pair_two<S: Scalar>(l1: &LinearForm<S>, l2: &LinearForm<S>, t: &FormalSeriesTensor<S>) -> S {
    let dim = l1.dim;
    let mut acc = S::zero();
    for (k, c) in t.terms() {
        let (a, b) = k.split_at(dim);
        let (Some(x), Some(y)) = (l1.coeffs.get(a), l2.coeffs.get(b)) else {
            continue;
        };
        acc = acc + c.clone() * x.clone() * y.clone() * multi_factorial::<S>(a) * multi_factorial::<S>(b);
    }
    acc
}

/// ^ρΔ(f) = ρ ⋆ Δ₀(f) ⋆ (−ρ).
pub fn twisted_coproduct<S: Scalar>(
    alg: &LieAlgebra<S>,
    f: &FormalSeriesTensor<S>,
    rho: &FormalSeriesTensor<S>,
) -> Result<FormalSeriesTensor<S>> {
    if f.slots() != 1 {
        return Err(Error::SlotMismatch(f.slots(), 1));
    }
    let d = coproduct_insert(f, &[&[0, 1]], 2)?;
    star_conjugate(alg, rho, &d)
}

/// The filtered algebra (O_{g*}, ^ρΔ)° with a cache of ^ρΔ on monomials.
/// ^ρΔ is an algebra morphism, so ^ρΔ(x^γ) is a product of generator images.
pub struct TwistedDual<S> {
    alg: LieAlgebra<S>,
    rho: FormalSeriesTensor<S>,
    generators: Vec<FormalSeriesTensor<S>>,
    cache: RwLock<HashMap<Key, FormalSeriesTensor<S>>>,
}

impl<S: Scalar> TwistedDual<S> {
    pub fn new(alg: &LieAlgebra<S>, rho: &FormalSeriesTensor<S>) -> Result<Self> {
        if rho.slots() != 2 {
            return Err(Error::SlotMismatch(rho.slots(), 2));
        }
        if rho.dim() != alg.dim() {
            return Err(Error::DimensionMismatch(rho.dim(), alg.dim()));
        }
        let dim = alg.dim();
        let generators = (0..dim)
            .map(|i| twisted_coproduct(alg, &FormalSeriesTensor::generator(dim, 1, rho.trunc(), 0, i), rho))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { alg: alg.clone(), rho: rho.clone(), generators, cache: RwLock::new(HashMap::new()) })
    }

    pub fn rho(&self) -> &FormalSeriesTensor<S> {
        &self.rho
    }

    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.alg
    }

    /// ^ρΔ(x^γ) mod degree N+1.
    pub fn coproduct_of_monomial(&self, gamma: &[u8]) -> FormalSeriesTensor<S> {
        if let Some(v) = self.cache.read().expect("cache poisoned").get(gamma) {
            return v.clone();
        }
        let value = match gamma.iter().position(|&e| e > 0) {
            None => FormalSeriesTensor::one(self.alg.dim(), 2, self.rho.trunc()),
            Some(i) => {
                let mut smaller = gamma.to_vec();
                smaller[i] -= 1;
                &self.coproduct_of_monomial(&smaller) * &self.generators[i]
            }
        };
        self.cache.write().expect("cache poisoned").insert(gamma.to_vec(), value.clone());
        value
    }

    /// ℓ₁ ·_ρ ℓ₂ : x ↦ (ℓ₁⊗ℓ₂)(^ρΔ(x)).
    pub fn product(&self, l1: &LinearForm<S>, l2: &LinearForm<S>) -> Result<LinearForm<S>> {
        let n = l1.order + l2.order;
        if n > self.rho.trunc() {
            return Err(Error::TruncationTooLow { have: self.rho.trunc(), need: n });
        }
        let dim = self.alg.dim();
        let mut terms = Vec::new();
        for d in 0..=n {
            for gamma in monomials_of_degree(dim, d) {
                let v = pair_two(l1, l2, &self.coproduct_of_monomial(&gamma));
                if !v.is_negligible() {
                    let c = v / multi_factorial::<S>(&gamma);
                    terms.push((gamma, c));
                }
            }
        }
        Ok(LinearForm::from_terms(dim, n, terms))
    }
}

pub fn rho_product<S: Scalar>(
    alg: &LieAlgebra<S>,
    l1: &LinearForm<S>,
    l2: &LinearForm<S>,
    rho: &FormalSeriesTensor<S>,
) -> Result<LinearForm<S>> {
    TwistedDual::new(alg, rho)?.product(l1, l2)
}

/// Coordinates of all brackets {x^α, x^β} landing in degree d, one row each.
fn bracket_rows<S: Scalar>(alg: &LieAlgebra<S>, d: usize) -> Vec<SparseVec<S>> {
    let dim = alg.dim();
    let target = monomials_of_degree(dim, d);
    let index: HashMap<&Key, usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut rows = Vec::new();
    for a in 1..=(d + 1) / 2 {
        let b = d + 1 - a;
        for alpha in monomials_of_degree(dim, a) {
            for beta in monomials_of_degree(dim, b) {
                let fa = FormalSeriesTensor::from_terms(dim, 1, d + 1, [(alpha.clone(), S::one())]);
                let fb = FormalSeriesTensor::from_terms(dim, 1, d + 1, [(beta.clone(), S::one())]);
                let br = poisson_bracket(alg, &fa, &fb).expect("same shape");
                // ℓ pairs with weight γ!, folded into the row.
                let row = linalg::normalize(
                    br.terms().map(|(k, c)| (index[k], c.clone() * multi_factorial::<S>(k))),
                );
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Basis of the Poisson traces of order ≤ maxdeg, degree by degree.
pub fn poisson_traces<S: Scalar>(alg: &LieAlgebra<S>, maxdeg: usize) -> Vec<LinearForm<S>> {
    let dim = alg.dim();
    let mut out = Vec::new();
    for d in 0..=maxdeg {
        let monos = monomials_of_degree(dim, d);
        let rref = linalg::Rref::from_rows(bracket_rows(alg, d), monos.len());
        for v in rref.kernel() {
            out.push(LinearForm::from_terms(dim, d, v.into_iter().map(|(j, c)| (monos[j].clone(), c))));
        }
    }
    out
}

pub fn is_poisson_trace<S: Scalar>(alg: &LieAlgebra<S>, l: &LinearForm<S>) -> bool {
    let dim = alg.dim();
    (0..=l.degree()).all(|d| {
        let monos = monomials_of_degree(dim, d);
        let v: SparseVec<S> = linalg::normalize(
            monos.iter().enumerate().map(|(j, k)| (j, l.coeff(k))),
        );
        bracket_rows(alg, d).iter().all(|row| {
            row.iter()
                .filter_map(|(j, c)| v.iter().find(|(i, _)| i == j).map(|(_, x)| c.clone() * x.clone()))
                .fold(S::zero(), |a, b| a + b)
                .is_negligible()
        })
    })
}

/// The antisymmetric matrix r = Alt of the degree-(1,1) part of ρ.
pub fn leading_r<S: Scalar>(rho: &FormalSeriesTensor<S>) -> RMatrix<S> {
    let dim = rho.dim();
    let mut r = RMatrix::zero(dim);
    let triples: Vec<(usize, usize, S)> =
        rho.linear_part().into_iter().map(|(idx, c)| (idx[0], idx[1], c)).collect();
    if !triples.is_empty() {
        r = RMatrix::from_triples(dim, &triples, RKind::QuasitriangularCandidate).expect("indices in range");
    }
    r.antisymmetric_part()
}

/// θ = Ψ⁻¹ on Poisson traces, where Ψ sends the PBW monomial ξ_{i1}⋯ξ_{ik}
/// of U(g*) to ξ_{i1} ·_ρ ⋯ ·_ρ ξ_{ik}. The Lie algebra g* here is the one
/// whose bracket is the ·_ρ-commutator of dual generators, namely
/// dual_bracket(−2r) with r the leading part of ρ.
pub struct ThetaMap<S> {
    twisted: TwistedDual<S>,
    target: Envelope<S>,
    psi: RwLock<HashMap<Word, LinearForm<S>>>,
}

impl<S: Scalar> ThetaMap<S> {
    pub fn new(alg: &LieAlgebra<S>, rho: &FormalSeriesTensor<S>) -> Result<Self> {
        let r = leading_r(rho).scaled(&S::from_int(-2));
        let dual = dual_bracket(alg, &r)?;
        Ok(Self {
            twisted: TwistedDual::new(alg, rho)?,
            target: Envelope::new(AlgebraTag::GDual, dual),
            psi: RwLock::new(HashMap::new()),
        })
    }

    pub fn target(&self) -> &Envelope<S> {
        &self.target
    }

    pub fn twisted(&self) -> &TwistedDual<S> {
        &self.twisted
    }

    /// Ψ of a sorted word, built by right multiplication with generators.
    pub fn psi(&self, w: &[usize]) -> Result<LinearForm<S>> {
        if let Some(v) = self.psi.read().expect("cache poisoned").get(w) {
            return Ok(v.clone());
        }
        let dim = self.target.dim();
        let value = match w.split_last() {
            None => LinearForm::one(dim),
            Some((last, init)) => {
                self.twisted.product(&self.psi(init)?, &LinearForm::dual_generator(dim, *last))?
            }
        };
        self.psi.write().expect("cache poisoned").insert(w.to_vec(), value.clone());
        Ok(value)
    }

    pub fn apply(&self, f: &LinearForm<S>) -> Result<PBWElement<S>> {
        if !is_poisson_trace(self.twisted.algebra(), f) {
            return Err(Error::NotATrace);
        }
        self.invert(f)
    }

    /// Ψ⁻¹ on an arbitrary form, by solving against Ψ of all words up to its degree.
    pub fn invert(&self, f: &LinearForm<S>) -> Result<PBWElement<S>> {
        let n = f.degree();
        let dim = self.target.dim();
        let words = self.target.words_up_to(n);
        let keys: Vec<Key> = (0..=n).flat_map(|d| monomials_of_degree(dim, d)).collect();
        let index: HashMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let cols = words
            .iter()
            .map(|w| {
                let p = self.psi(w)?;
                Ok(linalg::normalize(p.terms().map(|(k, c)| (index[k], c.clone()))))
            })
            .collect::<Result<Vec<_>>>()?;
        let rhs = linalg::normalize(f.terms().map(|(k, c)| (index[k], c.clone())));
        let x = linalg::solve(&cols, keys.len(), &rhs).ok_or(Error::SingularPairing)?;
        if linalg::rank(&cols, keys.len()) != words.len() {
            return Err(Error::SingularPairing);
        }
        Ok(PBWElement::from_terms(
            AlgebraTag::GDual,
            x.into_iter().map(|(j, c)| (words[j].clone(), c)),
        ))
    }
}

pub fn theta<S: Scalar>(
    alg: &LieAlgebra<S>,
    f: &LinearForm<S>,
    rho: &FormalSeriesTensor<S>,
) -> Result<PBWElement<S>> {
    ThetaMap::new(alg, rho)?.apply(f)
}
