//! Finite-dimensional Lie algebras given by structure constants, r-matrices,
//! and the JSON input format.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Scalar};

/// A Lie algebra over a field, `[x_i, x_j] = Σ_k c[i][j][k] x_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<S> {
    names: Vec<String>,
    /// Sparse rows of the structure constants, indexed by `i * dim + j`.
    brackets: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// Builds and validates an algebra from bracket entries `(i, j, [(k, c)])`.
    ///
    /// A pair given in one order only is completed by antisymmetry; a pair given
    /// in both orders must agree up to sign.
    pub fn from_brackets(
        names: Vec<String>,
        entries: Vec<(usize, usize, Vec<(usize, S)>)>,
    ) -> Result<Self> {
        let dim = names.len();
        let mut dense = vec![S::zero(); dim * dim * dim];
        let mut given = vec![false; dim * dim];
        for (i, j, terms) in &entries {
            for idx in [*i, *j].into_iter().chain(terms.iter().map(|(k, _)| *k)) {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, bound: dim });
                }
            }
            if given[i * dim + j] {
                return Err(Error::Parse(format!("bracket ({i}, {j}) given twice")));
            }
            given[i * dim + j] = true;
            for (k, c) in terms {
                let slot = &mut dense[(i * dim + j) * dim + k];
                *slot = slot.clone() + c.clone();
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let cij = dense[(i * dim + j) * dim + k].clone();
                    let cji = dense[(j * dim + i) * dim + k].clone();
                    if i == j {
                        if !cij.is_zero() {
                            return Err(Error::AntisymmetryViolation(i, j));
                        }
                    } else if given[i * dim + j] && given[j * dim + i] {
                        if !(cij.clone() + cji).is_negligible() {
                            return Err(Error::AntisymmetryViolation(i, j));
                        }
                    } else if given[i * dim + j] {
                        dense[(j * dim + i) * dim + k] = -cij;
                    }
                }
            }
        }
        let alg = Self::from_dense(names, &dense);
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn from_dense(names: Vec<String>, dense: &[S]) -> Self {
        let dim = names.len();
        let brackets = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &dense[ij * dim + k];
                        (!c.is_negligible()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        Self { names, brackets }
    }

    pub fn abelian(dim: usize) -> Self {
        let names = (0..dim).map(|i| format!("x{i}")).collect();
        Self::from_dense(names, &vec![S::zero(); dim * dim * dim])
    }

    /// sl2 on the ordered basis (e, h, f).
    pub fn sl2() -> Self {
        let two = S::from_int(2);
        Self::from_brackets(
            vec!["e".into(), "h".into(), "f".into()],
            vec![
                (1, 0, vec![(0, two.clone())]),
                (1, 2, vec![(2, -two)]),
                (0, 2, vec![(1, S::one())]),
            ],
        )
        .expect("sl2 is a Lie algebra")
    }

    /// The two-dimensional non-abelian algebra, basis (h, e) with `[h, e] = e`.
    pub fn affine_line() -> Self {
        Self::from_brackets(
            vec!["h".into(), "e".into()],
            vec![(0, 1, vec![(1, S::one())])],
        )
        .expect("ax+b is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Nonzero terms of `[x_i, x_j]`.
    pub fn bracket_terms(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.brackets[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> S {
        self.bracket_terms(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(S::zero)
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(Vec::is_empty)
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, a: &[S], b: &[S]) -> Vec<S> {
        let dim = self.dim();
        let mut out = vec![S::zero(); dim];
        for i in 0..dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                if b[j].is_zero() {
                    continue;
                }
                let ab = a[i].clone() * b[j].clone();
                for (k, c) in self.bracket_terms(i, j) {
                    out[*k] = out[*k].clone() + ab.clone() * c.clone();
                }
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[i] = S::one();
        v
    }

    /// Exhaustive Jacobi check over all ordered basis triples.
    pub fn check_jacobi(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let (xi, xj, xk) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let a = self.bracket(&xi, &self.bracket(&xj, &xk));
                    let b = self.bracket(&xj, &self.bracket(&xk, &xi));
                    let c = self.bracket(&xk, &self.bracket(&xi, &xj));
                    if a.iter()
                        .zip(&b)
                        .zip(&c)
                        .any(|((a, b), c)| !(a.clone() + b.clone() + c.clone()).is_negligible())
                    {
                        return Err(Error::JacobiViolation(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Whether an r-matrix is meant as a coboundary structure or as the full r' of
/// a quasitriangular structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RKind {
    AntisymmetricCoboundary,
    QuasitriangularCandidate,
}

/// An element of g ⊗ g stored as a dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix<S> {
    dim: usize,
    entries: Vec<S>,
    kind: RKind,
}

impl<S: Scalar> RMatrix<S> {
    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: vec![S::zero(); dim * dim], kind: RKind::AntisymmetricCoboundary }
    }

    /// An element of ∧²(g); fails if the entries are not antisymmetric.
    pub fn antisymmetric(dim: usize, entries: Vec<S>) -> Result<Self> {
        let r = Self { dim, entries, kind: RKind::AntisymmetricCoboundary };
        if r.entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(r.entries.len(), dim * dim));
        }
        if !r.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        Ok(r)
    }

    pub fn quasitriangular(dim: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(entries.len(), dim * dim));
        }
        Ok(Self { dim, entries, kind: RKind::QuasitriangularCandidate })
    }

    /// Sparse constructor from `(i, j, value)` triples; repeated entries add up.
    pub fn from_triples(dim: usize, triples: &[(usize, usize, S)], kind: RKind) -> Result<Self> {
        let mut entries = vec![S::zero(); dim * dim];
        for (i, j, v) in triples {
            if *i >= dim || *j >= dim {
                return Err(Error::IndexOutOfRange { index: (*i).max(*j), bound: dim });
            }
            entries[i * dim + j] = entries[i * dim + j].clone() + v.clone();
        }
        match kind {
            RKind::AntisymmetricCoboundary => Self::antisymmetric(dim, entries),
            RKind::QuasitriangularCandidate => Self::quasitriangular(dim, entries),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> RKind {
        self.kind
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| (self.get(i, j).clone() + self.get(j, i).clone()).is_negligible())
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_negligible())
    }

    /// r^{2,1}.
    pub fn flip(&self) -> Self {
        let dim = self.dim;
        let entries = (0..dim * dim).map(|ij| self.get(ij % dim, ij / dim).clone()).collect();
        Self { dim, entries, kind: self.kind }
    }

    pub fn scaled(&self, s: &S) -> Self {
        let entries = self.entries.iter().map(|e| e.clone() * s.clone()).collect();
        Self { dim: self.dim, entries, kind: self.kind }
    }

    fn combine(&self, other: &Self, sign: S, scale: S, kind: RKind) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a.clone() + sign.clone() * b.clone()) * scale.clone())
            .collect();
        Self { dim: self.dim, entries, kind }
    }

    /// (r - r^{2,1}) / 2.
    pub fn antisymmetric_part(&self) -> Self {
        self.combine(&self.flip(), -S::one(), S::ratio(1, 2), RKind::AntisymmetricCoboundary)
    }

    /// r + r^{2,1}.
    pub fn symmetric_sum(&self) -> Self {
        self.combine(&self.flip(), S::one(), S::one(), RKind::QuasitriangularCandidate)
    }

    /// Nonzero entries `(i, j, r_ij)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        let dim = self.dim;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_negligible())
            .map(move |(ij, v)| (ij / dim, ij % dim, v))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    dim: usize,
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<(usize, usize, Vec<(usize, String)>)>,
    #[serde(default)]
    r: Vec<(usize, usize, String)>,
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
}

/// A parsed input file: the Lie algebra and its r-matrix.
#[derive(Clone, Debug)]
pub struct InputSpec<S> {
    pub algebra: LieAlgebra<S>,
    pub r: RMatrix<S>,
}

fn rational<S: Scalar>(text: &str) -> Result<S> {
    parse_rational(text)
        .map(|q| S::from_rational(&q))
        .ok_or_else(|| Error::Parse(format!("bad rational {text:?}")))
}

/// Parses the JSON input format.
///
/// `kind` is optional: `"coboundary"` (default) requires `r` antisymmetric,
/// `"quasitriangular"` reads `r` as the full r'.
pub fn load_input<S: Scalar>(text: &str) -> Result<InputSpec<S>> {
    let file: InputFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.basis.len() != file.dim {
        return Err(Error::Parse(format!(
            "dim is {} but basis lists {} names",
            file.dim,
            file.basis.len()
        )));
    }
    let entries = file
        .brackets
        .iter()
        .map(|(i, j, terms)| {
            let terms = terms
                .iter()
                .map(|(k, c)| Ok((*k, rational::<S>(c)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok((*i, *j, terms))
        })
        .collect::<Result<Vec<_>>>()?;
    let algebra = LieAlgebra::from_brackets(file.basis, entries)?;
    let kind = match file.kind.as_deref() {
        None | Some("coboundary") => RKind::AntisymmetricCoboundary,
        Some("quasitriangular") => RKind::QuasitriangularCandidate,
        Some(other) => return Err(Error::Parse(format!("unknown kind {other:?}"))),
    };
    let triples = file
        .r
        .iter()
        .map(|(i, j, v)| Ok((*i, *j, rational::<S>(v)?)))
        .collect::<Result<Vec<_>>>()?;
    let r = RMatrix::from_triples(file.dim, &triples, kind)?;
    Ok(InputSpec { algebra, r })
}

/// Parses only the Lie algebra part of an input file.
pub fn load_lie_algebra<S: Scalar>(text: &str) -> Result<LieAlgebra<S>> {
    load_input(text).map(|spec| spec.algebra)
}
