//! The co-Hochschild complex (S^{>0}(g)^{⊗·}, d) and its g-invariant part.
//!
//! The differential only redistributes exponents between slots, so it
//! preserves the content of a monomial (the exponent of each generator summed
//! over slots). Non-invariant computations split into content blocks; the
//! invariant ones cannot, since ad mixes generators.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{self, SparseVec};
use crate::scalar::Scalar;
use crate::tensor::{alt_project, coproduct_insert, g_action, FormalSeriesTensor, Key};

/// Homogeneous element of S^{>0}(g)^{⊗k} of fixed total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<S> {
    degree: usize,
    value: FormalSeriesTensor<S>,
}

impl<S: Scalar> Cochain<S> {
    /// The tensor must already be homogeneous of this degree with no empty slot.
    pub fn new(value: FormalSeriesTensor<S>, degree: usize) -> Result<Self> {
        if value.terms().any(|(k, _)| k.iter().map(|&e| e as usize).sum::<usize>() != degree) {
            return Err(Error::NotHomogeneous(degree));
        }
        if !value.in_m_tensor() {
            return Err(Error::NotInMTensor);
        }
        let value = value.with_trunc(degree);
        Ok(Self { degree, value })
    }

    /// Degree-`degree` part of an arbitrary tensor.
    pub fn homogeneous_part_of(t: &FormalSeriesTensor<S>, degree: usize) -> Result<Self> {
        Self::new(t.homogeneous_part(degree), degree)
    }

    pub fn zero(dim: usize, slots: usize, degree: usize) -> Self {
        Self { degree, value: FormalSeriesTensor::zero(dim, slots, degree) }
    }

    pub fn slots(&self) -> usize {
        self.value.slots()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value(&self) -> &FormalSeriesTensor<S> {
        &self.value
    }

    pub fn into_value(self) -> FormalSeriesTensor<S> {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

/// Slot blocks of the i-th face c^{1,…,(i,i+1),…,k+1}, 0-based, 1 ≤ i ≤ k.
fn merged_blocks(k: usize, i: usize) -> Vec<Vec<usize>> {
    let mut blocks = Vec::with_capacity(k);
    let mut s = 0;
    for j in 0..k {
        if j + 1 == i {
            blocks.push(vec![s, s + 1]);
            s += 2;
        } else {
            blocks.push(vec![s]);
            s += 1;
        }
    }
    blocks
}

fn insert<S: Scalar>(t: &FormalSeriesTensor<S>, blocks: &[Vec<usize>], n: usize) -> FormalSeriesTensor<S> {
    let refs: Vec<&[usize]> = blocks.iter().map(|b| b.as_slice()).collect();
    coproduct_insert(t, &refs, n).expect("face blocks are valid")
}

/// d on an arbitrary k-slot tensor (no homogeneity requirement).
pub fn d_tensor<S: Scalar>(c: &FormalSeriesTensor<S>) -> FormalSeriesTensor<S> {
    let k = c.slots();
    let n = k + 1;
    let shifted: Vec<Vec<usize>> = (1..=k).map(|s| vec![s]).collect();
    let mut out = insert(c, &shifted, n);
    for i in 1..=k {
        let face = insert(c, &merged_blocks(k, i), n);
        let sign = if i % 2 == 0 { S::one() } else { -S::one() };
        out = out.add_unchecked(&face, sign);
    }
    let last: Vec<Vec<usize>> = (0..k).map(|s| vec![s]).collect();
    let sign = if (k + 1) % 2 == 0 { S::one() } else { -S::one() };
    out.add_unchecked(&insert(c, &last, n), sign)
}

pub fn cohochschild_d<S: Scalar>(c: &Cochain<S>) -> Cochain<S> {
    // Terms with an empty slot cancel between adjacent faces.
    let value = d_tensor(&c.value);
    debug_assert!(value.in_m_tensor());
    Cochain { degree: c.degree, value }
}

/// Result of trying to write a cocycle as a coboundary.
#[derive(Clone, Debug, PartialEq)]
pub enum Coboundary<S> {
    Primitive(Cochain<S>),
    /// Nonzero cohomology class, given by its antisymmetrization.
    Obstruction(FormalSeriesTensor<S>),
}

fn content(key: &[u8], dim: usize) -> Vec<u8> {
    let mut c = vec![0u8; dim];
    for (p, &e) in key.iter().enumerate() {
        c[p % dim.max(1)] += e;
    }
    c
}

/// Weak compositions of `n` into `parts` parts.
fn compositions(n: u8, parts: usize) -> Vec<Vec<u8>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Keys of S^{>0}(g)^{⊗slots} with the given content, in a fixed order.
pub fn keys_with_content(content: &[u8], slots: usize) -> Vec<Key> {
    let dim = content.len();
    let mut partial: Vec<Key> = vec![vec![0; dim * slots]];
    for (i, &e) in content.iter().enumerate() {
        let comps = compositions(e, slots);
        let mut next = Vec::with_capacity(partial.len() * comps.len());
        for p in &partial {
            for comp in &comps {
                let mut k = p.clone();
                for (s, &c) in comp.iter().enumerate() {
                    k[s * dim + i] = c;
                }
                next.push(k);
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .filter(|k| (0..slots).all(|s| k[s * dim..(s + 1) * dim].iter().any(|&e| e > 0)))
        .collect()
}

/// Contents of total degree `degree` in `dim` variables.
fn all_contents(dim: usize, degree: usize) -> Vec<Vec<u8>> {
    compositions(degree as u8, dim)
}

struct Indexer {
    index: HashMap<Key, usize>,
}

impl Indexer {
    fn new() -> Self {
        Self { index: HashMap::new() }
    }

    fn get(&mut self, k: &Key) -> usize {
        let n = self.index.len();
        *self.index.entry(k.clone()).or_insert(n)
    }

    fn len(&self) -> usize {
        self.index.len()
    }
}

fn monomial<S: Scalar>(dim: usize, slots: usize, degree: usize, key: &Key) -> FormalSeriesTensor<S> {
    FormalSeriesTensor::from_terms(dim, slots, degree, [(key.clone(), S::one())])
}

/// Columns of d on the given source keys, indexed through `rows`.
fn d_columns<S: Scalar>(
    dim: usize,
    slots: usize,
    degree: usize,
    source: &[Key],
    rows: &mut Indexer,
) -> Vec<SparseVec<S>> {
    source
        .iter()
        .map(|k| {
            let image = d_tensor(&monomial::<S>(dim, slots, degree, k));
            linalg::normalize(image.terms().map(|(t, c)| (rows.get(t), c.clone())))
        })
        .collect()
}

fn to_tensor<S: Scalar>(
    dim: usize,
    slots: usize,
    degree: usize,
    keys: &[Key],
    x: &SparseVec<S>,
) -> FormalSeriesTensor<S> {
    FormalSeriesTensor::from_terms(dim, slots, degree, x.iter().map(|(j, v)| (keys[*j].clone(), v.clone())))
}

/// Some β with d(β) = c. With `invariant_only`, β is also g-invariant.
pub fn solve_coboundary<S: Scalar>(
    alg: &LieAlgebra<S>,
    c: &Cochain<S>,
    invariant_only: bool,
) -> Result<Coboundary<S>> {
    let k = c.slots();
    let degree = c.degree;
    let dim = c.value.dim();
    if dim != alg.dim() {
        return Err(Error::DimensionMismatch(dim, alg.dim()));
    }
    if !cohochschild_d(c).is_zero() {
        return Err(Error::NotACocycle(format!("{k}-slot cochain of degree {degree}")));
    }
    if invariant_only && !crate::tensor::is_invariant(alg, &c.value)? {
        return Err(Error::NotInvariant);
    }
    if c.is_zero() {
        return Ok(Coboundary::Primitive(Cochain::zero(dim, k.saturating_sub(1), degree)));
    }
    let found = if k == 1 {
        None
    } else if invariant_only {
        solve_invariant(alg, c)
    } else {
        solve_by_content(c)
    };
    match found {
        Some(beta) => Ok(Coboundary::Primitive(beta)),
        None if degree == k => Ok(Coboundary::Obstruction(alt_project(&c.value))),
        None => Err(Error::RankCertificate { k, degree }),
    }
}

fn solve_by_content<S: Scalar>(c: &Cochain<S>) -> Option<Cochain<S>> {
    let k = c.slots();
    let dim = c.value.dim();
    let degree = c.degree;
    let mut blocks: BTreeMap<Vec<u8>, Vec<(Key, S)>> = BTreeMap::new();
    for (key, v) in c.value.terms() {
        blocks.entry(content(key, dim)).or_default().push((key.clone(), v.clone()));
    }
    let mut solution = FormalSeriesTensor::zero(dim, k - 1, degree);
    for (cont, terms) in blocks {
        let source = keys_with_content(&cont, k - 1);
        let mut rows = Indexer::new();
        let cols = d_columns::<S>(dim, k - 1, degree, &source, &mut rows);
        let rhs = linalg::normalize(terms.iter().map(|(t, v)| (rows.get(t), v.clone())));
        let x = linalg::solve(&cols, rows.len(), &rhs)?;
        solution = solution.add_unchecked(&to_tensor(dim, k - 1, degree, &source, &x), S::one());
    }
    Some(Cochain { degree, value: solution })
}

/// Columns of the stacked map β ↦ (x_1·β, …, x_dim·β) on the given keys.
fn action_columns<S: Scalar>(
    alg: &LieAlgebra<S>,
    slots: usize,
    degree: usize,
    source: &[Key],
) -> (Vec<SparseVec<S>>, usize) {
    let dim = alg.dim();
    let mut rows = Indexer::new();
    let cols = source
        .iter()
        .map(|k| {
            let m = monomial::<S>(dim, slots, degree, k);
            let mut entries = Vec::new();
            for i in 0..dim {
                let image = g_action(alg, i, &m).expect("index in range");
                for (t, v) in image.terms() {
                    let mut tagged = t.clone();
                    tagged.push(i as u8);
                    entries.push((rows.get(&tagged), v.clone()));
                }
            }
            linalg::normalize(entries)
        })
        .collect();
    (cols, rows.len())
}

/// Keys of the full homogeneous (slots, degree) space of S^{>0}(g)^{⊗slots}.
fn full_basis(dim: usize, slots: usize, degree: usize) -> Vec<Key> {
    all_contents(dim, degree)
        .into_iter()
        .flat_map(|c| keys_with_content(&c, slots))
        .collect()
}

/// Basis of the invariant subspace of the homogeneous (slots, degree) space.
pub fn invariant_basis<S: Scalar>(alg: &LieAlgebra<S>, slots: usize, degree: usize) -> Vec<FormalSeriesTensor<S>> {
    let dim = alg.dim();
    let source = full_basis(dim, slots, degree);
    let (cols, nrows) = action_columns(alg, slots, degree, &source);
    linalg::kernel(&cols, nrows)
        .iter()
        .map(|v| to_tensor(dim, slots, degree, &source, v))
        .collect()
}

fn solve_invariant<S: Scalar>(alg: &LieAlgebra<S>, c: &Cochain<S>) -> Option<Cochain<S>> {
    let k = c.slots();
    let dim = alg.dim();
    let degree = c.degree;
    // Unknowns are coordinates in a basis of the invariant (k-1)-cochains.
    let inv = invariant_basis(alg, k - 1, degree);
    let mut rows = Indexer::new();
    let cols: Vec<SparseVec<S>> = inv
        .iter()
        .map(|b| {
            let image = d_tensor(b);
            linalg::normalize(image.terms().map(|(t, v)| (rows.get(t), v.clone())))
        })
        .collect();
    let rhs = linalg::normalize(c.value.terms().map(|(t, v)| (rows.get(t), v.clone())));
    let x = linalg::solve(&cols, rows.len(), &rhs)?;
    let mut value = FormalSeriesTensor::zero(dim, k - 1, degree);
    for (j, v) in &x {
        value = value.add_unchecked(&inv[*j], v.clone());
    }
    Some(Cochain { degree, value })
}

/// dim of the cohomology in slot count k and total degree `degree`.
pub fn cohomology_dimension<S: Scalar>(
    alg: &LieAlgebra<S>,
    k: usize,
    degree: usize,
    invariant_only: bool,
) -> usize {
    let dim = alg.dim();
    if invariant_only {
        let here = invariant_basis(alg, k, degree);
        let cocycle_rank = image_rank(&here);
        let kernel = here.len() - cocycle_rank;
        let below = if k >= 2 { image_rank(&invariant_basis(alg, k - 1, degree)) } else { 0 };
        return kernel - below;
    }
    let mut total = 0;
    for cont in all_contents(dim, degree) {
        let here = keys_with_content(&cont, k);
        if here.is_empty() {
            continue;
        }
        let mut rows = Indexer::new();
        let out_rank = linalg::rank(&d_columns::<S>(dim, k, degree, &here, &mut rows), rows.len());
        let in_rank = if k >= 2 {
            let below = keys_with_content(&cont, k - 1);
            let mut rows = Indexer::new();
            linalg::rank(&d_columns::<S>(dim, k - 1, degree, &below, &mut rows), rows.len())
        } else {
            0
        };
        total += here.len() - out_rank - in_rank;
    }
    total
}

fn image_rank<S: Scalar>(basis: &[FormalSeriesTensor<S>]) -> usize {
    let mut rows = Indexer::new();
    let cols: Vec<SparseVec<S>> = basis
        .iter()
        .map(|b| linalg::normalize(d_tensor(b).terms().map(|(t, v)| (rows.get(t), v.clone()))))
        .collect();
    linalg::rank(&cols, rows.len())
}

/// Distinct contents of a tensor; handy for block bookkeeping in callers.
pub fn contents<S: Scalar>(t: &FormalSeriesTensor<S>) -> BTreeSet<Vec<u8>> {
    t.terms().map(|(k, _)| content(k, t.dim())).collect()
}
