//! Values recomputed densely from structure constants, independently of the
//! sparse machinery in the library.

use bialg::tensor::cyb_unchecked;
use bialg::{cohomology_dimension, dual_bracket, Algebra, RKind, RMat, Rational, Scalar};
use num_traits::{One, Zero};

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone() / pivot.clone();
                for j in 0..cols {
                    let v = m[rank][j].clone() * f.clone();
                    m[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|first| {
            subsets(n, k - 1).into_iter().filter(move |s| s.first().map_or(true, |&x| x > first)).map(move |mut s| {
                s.insert(0, first);
                s
            })
        })
        .collect()
}

fn c(g: &Algebra, i: usize, j: usize, k: usize) -> Rational {
    g.structure_constant(i, j, k)
}

/// Sign and sorted form of an index list; None if it repeats.
fn sort_signed(mut v: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    Some((v, sign))
}

/// dim ∧^k(g)^g from the adjoint action on wedge monomials.
fn wedge_invariants(g: &Algebra, k: usize) -> usize {
    let n = g.dim();
    let basis = subsets(n, k);
    let index = |s: &Vec<usize>| basis.iter().position(|b| b == s).unwrap();
    // rows: (generator, target monomial); columns: source monomials
    let mut rows = vec![vec![Rational::zero(); basis.len()]; n * basis.len()];
    for (col, mono) in basis.iter().enumerate() {
        for a in 0..n {
            for p in 0..k {
                for m in 0..n {
                    let coeff = c(g, a, mono[p], m);
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut v = mono.clone();
                    v[p] = m;
                    if let Some((sorted, sign)) = sort_signed(v) {
                        rows[a * basis.len() + index(&sorted)][col] += coeff * Rational::from_int(sign);
                    }
                }
            }
        }
    }
    basis.len() - dense_rank(rows)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}

fn heisenberg() -> Algebra {
    Algebra::from_brackets(
        vec!["x".into(), "y".into(), "z".into()],
        vec![(0, 1, vec![(2, Rational::one())])],
    )
    .unwrap()
}

fn algebras() -> Vec<(&'static str, Algebra)> {
    vec![
        ("abelian1", Algebra::abelian(1)),
        ("abelian2", Algebra::abelian(2)),
        ("affine_line", Algebra::affine_line()),
        ("abelian3", Algebra::abelian(3)),
        ("heisenberg", heisenberg()),
        ("sl2", Algebra::sl2()),
    ]
}

#[test]
fn wedge_oracle_sanity() {
    let sl2 = Algebra::sl2();
    assert_eq!((0..=3).map(|k| wedge_invariants(&sl2, k)).collect::<Vec<_>>(), vec![1, 0, 0, 1]);
    assert_eq!(wedge_invariants(&Algebra::affine_line(), 1), 0);
    assert_eq!(wedge_invariants(&heisenberg(), 1), 1);
}

#[test]
fn cohomology_table() {
    for (name, g) in algebras() {
        let n = g.dim();
        for k in 1..=3 {
            for degree in k..=5 {
                let full = cohomology_dimension(&g, k, degree, false);
                let inv = cohomology_dimension(&g, k, degree, true);
                let (want_full, want_inv) =
                    if degree == k { (binom(n, k), wedge_invariants(&g, k)) } else { (0, 0) };
                assert_eq!(full, want_full, "{name} k={k} N={degree}");
                assert_eq!(inv, want_inv, "{name} k={k} N={degree} invariant");
            }
        }
    }
}

/// CYB(r′) from [r12,r13] + [r12,r23] + [r13,r23], dense in g^{⊗3}.
fn dense_cyb(g: &Algebra, r: &[Vec<Rational>]) -> Vec<Rational> {
    let n = g.dim();
    let mut out = vec![Rational::zero(); n * n * n];
    let at = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let w = r[i][j].clone() * r[k][l].clone();
                    if w.is_zero() {
                        continue;
                    }
                    for m in 0..n {
                        // [x_i⊗x_j⊗1, x_k⊗1⊗x_l] = [x_i,x_k]⊗x_j⊗x_l
                        out[at(m, j, l)] += w.clone() * c(g, i, k, m);
                        // [x_i⊗x_j⊗1, 1⊗x_k⊗x_l] = x_i⊗[x_j,x_k]⊗x_l
                        out[at(i, m, l)] += w.clone() * c(g, j, k, m);
                        // [x_i⊗1⊗x_j, 1⊗x_k⊗x_l] = x_i⊗x_k⊗[x_j,x_l]
                        out[at(i, k, m)] += w.clone() * c(g, j, l, m);
                    }
                }
            }
        }
    }
    out
}

fn matrix(triples: &[(usize, usize, Rational)], n: usize) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (i, j, v) in triples {
        m[*i][*j] += v.clone();
    }
    m
}

#[test]
fn cyb_matches_dense_oracle() {
    let g = Algebra::sl2();
    for triples in [
        vec![(0, 2, q(1, 1)), (1, 1, q(1, 4))],
        vec![(0, 2, q(1, 1))],
        vec![(0, 2, q(1, 2)), (2, 0, q(-1, 2))],
        vec![(0, 1, q(3, 1)), (2, 2, q(-1, 5)), (1, 0, q(1, 1))],
    ] {
        let rm = RMat::from_triples(3, &triples, RKind::QuasitriangularCandidate).unwrap();
        let sparse = cyb_unchecked(&g, &rm);
        let dense = dense_cyb(&g, &matrix(&triples, 3));
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let mut key = vec![0u8; 9];
                    key[a] += 1;
                    key[3 + b] += 1;
                    key[6 + c] += 1;
                    assert_eq!(sparse.coeff(&key), dense[(a * 3 + b) * 3 + c], "{triples:?} at ({a},{b},{c})");
                }
            }
        }
    }
    let qt = dense_cyb(&g, &matrix(&[(0, 2, q(1, 1)), (1, 1, q(1, 4))], 3));
    assert!(qt.iter().all(|v| v.is_zero()));
    let bad = dense_cyb(&g, &matrix(&[(0, 2, q(1, 1))], 3));
    assert!(bad.iter().any(|v| !v.is_zero()));
}

/// The bracket of g* as the transpose of δ(x) = [x⊗1 + 1⊗x, r].
fn dense_dual_bracket(g: &Algebra, r: &[Vec<Rational>]) -> Vec<Rational> {
    let n = g.dim();
    let mut out = vec![Rational::zero(); n * n * n];
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    // [x_m, x_a] ⊗ x_b + x_a ⊗ [x_m, x_b], weighted by r_ab
                    out[(k * n + b) * n + m] += r[a][b].clone() * c(g, m, a, k);
                    out[(a * n + k) * n + m] += r[a][b].clone() * c(g, m, b, k);
                }
            }
        }
    }
    out
}

#[test]
fn dual_bracket_matches_transpose() {
    let mut checked = 0;
    for (name, g) in algebras() {
        let n = g.dim();
        if n < 2 {
            continue;
        }
        let triples = vec![(0, n - 1, q(2, 3)), (n - 1, 0, q(-2, 3))];
        let rm = RMat::from_triples(n, &triples, RKind::AntisymmetricCoboundary).unwrap();
        let d = dual_bracket(&g, &rm).unwrap();
        checked += 1;
        let dense = dense_dual_bracket(&g, &matrix(&triples, n));
        for i in 0..n {
            for j in 0..n {
                for m in 0..n {
                    assert_eq!(d.structure_constant(i, j, m), dense[(i * n + j) * n + m], "{name} [{i},{j}]_{m}");
                }
            }
        }
    }
    assert_eq!(checked, 5);
}
