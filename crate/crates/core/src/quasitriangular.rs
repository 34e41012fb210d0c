//! Quasitriangular structures (g, r′): validation, the subalgebras C_s of
//! U(g*), the map α : U(g*) → U(g) and its inverse Θ on the center, and the
//! inner-derivation check on U(g).

use std::collections::HashMap;

use crate::envelope::{AlgebraTag, CoPoissonEnvelope, Envelope, PBWElement, Word};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, RKind, RMatrix};
use crate::linalg::{self, SparseVec};
use crate::scalar::Scalar;
use crate::tensor::{bracket_12_23, cyb, cyb_unchecked, g_action, FormalSeriesTensor};

#[derive(Clone, Debug)]
pub struct QTStructure<S> {
    alg: LieAlgebra<S>,
    rprime: RMatrix<S>,
    r: RMatrix<S>,
    t: RMatrix<S>,
    z: FormalSeriesTensor<S>,
    nondegenerate: bool,
}

impl<S: Scalar> QTStructure<S> {
    pub fn algebra(&self) -> &LieAlgebra<S> {
        &self.alg
    }

    pub fn rprime(&self) -> &RMatrix<S> {
        &self.rprime
    }

    /// ½(r′ − r′^{21}).
    pub fn r(&self) -> &RMatrix<S> {
        &self.r
    }

    /// r′ + r′^{21}.
    pub fn t(&self) -> &RMatrix<S> {
        &self.t
    }

    /// ¼[t^{12}, t^{23}].
    pub fn z(&self) -> &FormalSeriesTensor<S> {
        &self.z
    }

    pub fn nondegenerate(&self) -> bool {
        self.nondegenerate
    }
}

pub fn qt_validate<S: Scalar>(alg: &LieAlgebra<S>, rprime: &RMatrix<S>) -> Result<QTStructure<S>> {
    let dim = alg.dim();
    if rprime.dim() != dim {
        return Err(Error::DimensionMismatch(rprime.dim(), dim));
    }
    if !cyb_unchecked(alg, rprime).is_zero() {
        return Err(Error::CYBViolation);
    }
    let t = rprime.symmetric_sum();
    let t_tensor = FormalSeriesTensor::from_r_matrix(&t, 2);
    for i in 0..dim {
        if !g_action(alg, i, &t_tensor)?.is_zero() {
            return Err(Error::TNotInvariant);
        }
    }
    let r = rprime.antisymmetric_part();
    let z = bracket_12_23(alg, &t).scale(&S::ratio(1, 4));
    if cyb(alg, &r)? != z {
        return Err(Error::CYBViolation);
    }
    let rows: Vec<SparseVec<S>> =
        (0..dim).map(|i| linalg::normalize((0..dim).map(|j| (j, t.get(i, j).clone())))).collect();
    let nondegenerate = linalg::rank(&rows, dim) == dim;
    Ok(QTStructure { alg: alg.clone(), rprime: rprime.clone(), r, t, z, nondegenerate })
}

/// Dimensions of a filtered subspace: `total[d]` is the dimension within
/// filtration ≤ d, `graded[d]` the jump at d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredDims {
    pub total: Vec<usize>,
    pub graded: Vec<usize>,
}

impl FilteredDims {
    fn from_totals(total: Vec<usize>) -> Self {
        let graded = total.iter().enumerate().map(|(d, &n)| if d == 0 { n } else { n - total[d - 1] }).collect();
        Self { total, graded }
    }
}

/// Outcome of the inner-derivation check, with per-generator witnesses.
#[derive(Clone, Debug)]
pub struct InnerDerivationReport<S> {
    /// μ(r′) = Σ r′_ij [x_i, x_j].
    pub mu: PBWElement<S>,
    /// (generator, μ∘δ(x), −[μ(r′), x]).
    pub witnesses: Vec<(usize, PBWElement<S>, PBWElement<S>)>,
    pub passed: bool,
}

/// U(g*) on dual_bracket(r) with its co-Poisson structure, and U(g), for a
/// validated quasitriangular structure.
///
/// C_s is computed with D = −½·(bracket∘cobracket), the first-order term of
/// S² − id for a quantization with Δ − Δ^{21} = ħδ + O(ħ²). `with_d_scale`
/// overrides the factor.
pub struct QTContext<S: Scalar> {
    qt: QTStructure<S>,
    dual: CoPoissonEnvelope<S>,
    d_scale: S,
    ug: Envelope<S>,
    /// L(ξ_i) and R(ξ_i) as elements of g ⊂ U(g).
    left: Vec<PBWElement<S>>,
    right: Vec<PBWElement<S>>,
}

impl<S: Scalar> QTContext<S> {
    pub fn new(qt: QTStructure<S>) -> Result<Self> {
        let alg = qt.alg.clone();
        let dim = alg.dim();
        let dual = CoPoissonEnvelope::dual_of(&alg, &qt.r)?;
        let ug = Envelope::new(AlgebraTag::G, alg);
        let rp = &qt.rprime;
        let left = (0..dim)
            .map(|i| PBWElement::from_terms(AlgebraTag::G, (0..dim).map(|b| (vec![b], rp.get(i, b).clone()))))
            .collect();
        let right = (0..dim)
            .map(|j| PBWElement::from_terms(AlgebraTag::G, (0..dim).map(|a| (vec![a], -rp.get(a, j).clone()))))
            .collect();
        Ok(Self { qt, dual, ug, left, right, d_scale: S::ratio(-1, 2) })
    }

    pub fn with_d_scale(mut self, scale: S) -> Self {
        self.d_scale = scale;
        self
    }

    /// Factor relating the D of C_s to bracket∘cobracket.
    pub fn d_scale(&self) -> &S {
        &self.d_scale
    }

    fn c_s_image(&self, x: &PBWElement<S>, s: &S) -> Result<crate::envelope::PBWTensor<S>> {
        self.dual.c_s_map(x, &(s.clone() * self.d_scale.clone()))
    }

    pub fn structure(&self) -> &QTStructure<S> {
        &self.qt
    }

    pub fn dual(&self) -> &CoPoissonEnvelope<S> {
        &self.dual
    }

    pub fn ug(&self) -> &Envelope<S> {
        &self.ug
    }

    /// L(ℓ) = (ℓ⊗id)(r′) on a generator.
    pub fn l_generator(&self, i: usize) -> &PBWElement<S> {
        &self.left[i]
    }

    /// R(ℓ) = −(id⊗ℓ)(r′) on a generator.
    pub fn r_generator(&self, i: usize) -> &PBWElement<S> {
        &self.right[i]
    }

    fn words(&self, maxdeg: usize) -> Vec<Word> {
        self.dual.envelope().words_up_to(maxdeg)
    }

    /// Columns of x ↦ δ(x) − s(D⊗id)Δ₀(x) on the PBW words up to maxdeg.
    fn c_s_columns(&self, s: &S, words: &[Word]) -> Result<(Vec<SparseVec<S>>, usize)> {
        let mut rows: HashMap<(Word, Word), usize> = HashMap::new();
        let mut cols = Vec::with_capacity(words.len());
        for w in words {
            let x = PBWElement::monomial(AlgebraTag::GDual, w.clone(), S::one());
            let image = self.c_s_image(&x, s)?;
            let mut entries = Vec::new();
            for (k, c) in image.terms() {
                let n = rows.len();
                entries.push((*rows.entry(k.clone()).or_insert(n), c.clone()));
            }
            cols.push(linalg::normalize(entries));
        }
        Ok((cols, rows.len()))
    }

    /// Basis of C_s within filtration ≤ maxdeg.
    pub fn c_s_basis(&self, s: &S, maxdeg: usize) -> Result<Vec<PBWElement<S>>> {
        let words = self.words(maxdeg);
        let (cols, nrows) = self.c_s_columns(s, &words)?;
        Ok(linalg::kernel(&cols, nrows)
            .into_iter()
            .map(|v| PBWElement::from_terms(AlgebraTag::GDual, v.into_iter().map(|(j, c)| (words[j].clone(), c))))
            .collect())
    }

    /// dim(C_s ∩ U(g*)_{≤d}) for d = 0..=maxdeg.
    pub fn c_s_dims(&self, s: &S, maxdeg: usize) -> Result<FilteredDims> {
        let words = self.words(maxdeg);
        let (cols, nrows) = self.c_s_columns(s, &words)?;
        let mut total = Vec::new();
        let mut start = 0;
        for d in 0..=maxdeg {
            let end = start + words[start..].iter().take_while(|w| w.len() == d).count();
            total.push(end - linalg::rank(&cols[..end], nrows));
            start = end;
        }
        Ok(FilteredDims::from_totals(total))
    }

    pub fn in_c_s(&self, x: &PBWElement<S>, s: &S) -> Result<bool> {
        Ok(self.c_s_image(x, s)?.is_zero())
    }

    fn product_g(&self, factors: impl IntoIterator<Item = PBWElement<S>>) -> PBWElement<S> {
        factors.into_iter().fold(self.ug.one(), |acc, f| self.ug.product(&acc, &f).expect("same algebra"))
    }

    fn alpha_word(&self, w: &[usize]) -> PBWElement<S> {
        let k = w.len();
        let mut acc = PBWElement::zero(AlgebraTag::G);
        for mask in 0..1u32 << k {
            let chosen = (0..k).filter(|p| (mask >> p) & 1 == 1).map(|p| self.left[w[p]].clone());
            let rest: Vec<usize> = (0..k).filter(|p| (mask >> p) & 1 == 0).collect();
            let sign = if rest.len() % 2 == 0 { S::one() } else { -S::one() };
            // S₀ reverses the order and flips the sign of each factor.
            let anti = rest.iter().rev().map(|&p| self.right[w[p]].clone());
            let term = self.ug.product(&self.product_g(chosen), &self.product_g(anti)).expect("same algebra");
            acc = &acc + &term.scale(&sign);
        }
        acc
    }

    /// α = m₀ ∘ (L ⊗ S₀R) ∘ Δ₀.
    pub fn sts_alpha(&self, x: &PBWElement<S>) -> Result<PBWElement<S>> {
        if x.tag() != AlgebraTag::GDual {
            return Err(Error::AlgebraMismatch);
        }
        let mut acc = PBWElement::zero(AlgebraTag::G);
        for (w, c) in x.terms() {
            acc = &acc + &self.alpha_word(w).scale(c);
        }
        Ok(acc)
    }

    /// rank of α restricted to U(g*)_{≤d}, for d = 0..=maxdeg, next to the
    /// dimension of that filtration piece.
    pub fn alpha_ranks(&self, maxdeg: usize) -> Vec<(usize, usize)> {
        let words = self.words(maxdeg);
        let targets = self.ug.words_up_to(maxdeg);
        let index: HashMap<&Word, usize> = targets.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let cols: Vec<SparseVec<S>> = words
            .iter()
            .map(|w| linalg::normalize(self.alpha_word(w).terms().map(|(v, c)| (index[v], c.clone()))))
            .collect();
        let mut out = Vec::new();
        let mut end = 0;
        for d in 0..=maxdeg {
            end += words[end..].iter().take_while(|w| w.len() == d).count();
            out.push((linalg::rank(&cols[..end], targets.len()), end));
        }
        out
    }

    pub fn is_central(&self, z: &PBWElement<S>) -> Result<bool> {
        for i in 0..self.ug.dim() {
            if !self.ug.commutator(z, &self.ug.generator(i))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Θ(z) = α⁻¹(z) for central z.
    pub fn sts_theta(&self, z: &PBWElement<S>) -> Result<PBWElement<S>> {
        if z.tag() != AlgebraTag::G {
            return Err(Error::AlgebraMismatch);
        }
        if !self.qt.nondegenerate {
            return Err(Error::Degenerate);
        }
        if !self.is_central(z)? {
            return Err(Error::NotCentral);
        }
        let n = z.degree();
        let words = self.words(n);
        let targets = self.ug.words_up_to(n);
        let index: HashMap<&Word, usize> = targets.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let cols: Vec<SparseVec<S>> = words
            .iter()
            .map(|w| linalg::normalize(self.alpha_word(w).terms().map(|(v, c)| (index[v], c.clone()))))
            .collect();
        let rhs = linalg::normalize(z.terms().map(|(v, c)| (index[v], c.clone())));
        let y = linalg::solve(&cols, targets.len(), &rhs).ok_or(Error::NotInImage)?;
        Ok(PBWElement::from_terms(AlgebraTag::GDual, y.into_iter().map(|(j, c)| (words[j].clone(), c))))
    }

    /// Checks μ∘δ = −ad(μ(r′)) on the generators of U(g), where δ is the
    /// coboundary cobracket of r.
    pub fn check_inner_derivation(&self) -> InnerDerivationReport<S> {
        let alg = &self.qt.alg;
        let mu = PBWElement::from_terms(
            AlgebraTag::G,
            self.qt
                .rprime
                .nonzero()
                .flat_map(|(i, j, c)| alg.bracket_terms(i, j).iter().map(move |(k, x)| (vec![*k], c.clone() * x.clone())))
                .collect::<Vec<_>>(),
        );
        let g = CoPoissonEnvelope::coboundary(alg, &self.qt.r);
        let mut witnesses = Vec::new();
        let mut passed = true;
        for i in 0..alg.dim() {
            let lhs = g.d_generator(i);
            let rhs = -&self.ug.commutator(&mu, &self.ug.generator(i)).expect("same algebra");
            passed &= lhs == rhs;
            witnesses.push((i, lhs, rhs));
        }
        InnerDerivationReport { mu, witnesses, passed }
    }
}

pub fn c_s_basis<S: Scalar>(qt: &QTStructure<S>, s: &S, maxdeg: usize) -> Result<Vec<PBWElement<S>>> {
    QTContext::new(qt.clone())?.c_s_basis(s, maxdeg)
}

pub fn sts_alpha<S: Scalar>(qt: &QTStructure<S>, x: &PBWElement<S>) -> Result<PBWElement<S>> {
    QTContext::new(qt.clone())?.sts_alpha(x)
}

pub fn sts_theta<S: Scalar>(qt: &QTStructure<S>, z: &PBWElement<S>) -> Result<PBWElement<S>> {
    QTContext::new(qt.clone())?.sts_theta(z)
}

pub fn check_inner_derivation<S: Scalar>(qt: &QTStructure<S>) -> Result<InnerDerivationReport<S>> {
    Ok(QTContext::new(qt.clone())?.check_inner_derivation())
}

/// True when the two families span different subspaces.
pub fn spans_differ<S: Scalar>(a: &[PBWElement<S>], b: &[PBWElement<S>]) -> bool {
    let mut index: HashMap<Word, usize> = HashMap::new();
    let mut coords = |xs: &[PBWElement<S>]| -> Vec<SparseVec<S>> {
        xs.iter()
            .map(|x| {
                linalg::normalize(x.terms().map(|(w, c)| {
                    let n = index.len();
                    (*index.entry(w.clone()).or_insert(n), c.clone())
                }))
            })
            .collect()
    };
    let ca = coords(a);
    let cb = coords(b);
    let n = index.len();
    let ra = linalg::rank(&ca, n);
    let rb = linalg::rank(&cb, n);
    let both: Vec<_> = ca.into_iter().chain(cb).collect();
    let rab = linalg::rank(&both, n);
    !(ra == rab && rb == rab)
}

/// The sl2 structure r′ = e⊗f + ¼ h⊗h.
pub fn sl2_rprime<S: Scalar>() -> RMatrix<S> {
    RMatrix::from_triples(3, &[(0, 2, S::one()), (1, 1, S::ratio(1, 4))], RKind::QuasitriangularCandidate)
        .expect("indices in range")
}
