//! The Baker-Campbell-Hausdorff group law on m² with the Poisson bracket as
//! Lie bracket.
//!
//! BCH(X, Y) is assembled from words in two letters: if a_w is the coefficient
//! of the word w in log(e^X e^Y), then BCH(X, Y) = Σ_w (a_w / |w|)·[w_1, [w_2, … w_n]]
//! (Dynkin). Nested brackets of inputs in m² gain degree, so only words of
//! bounded length survive truncation.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::scalar::Scalar;
use crate::tensor::{bracket_up_to, FormalSeriesTensor};

/// `table[n][w]` is the Dynkin weight a_w/n of the length-`n` word whose
/// `i`-th letter is bit `i` of `w` (0 = X, 1 = Y).
static TABLE: OnceLock<RwLock<Vec<Vec<BigRational>>>> = OnceLock::new();

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Coefficient of the word in log(e^X e^Y), by splitting it into blocks X^p Y^q.
fn log_coefficient(word: &[u8]) -> BigRational {
    let n = word.len();
    // block[i][j]: weight of word[i..j] as a single block X^p Y^q, if it is one.
    let block = |i: usize, j: usize| -> Option<BigRational> {
        let s = &word[i..j];
        let p = s.iter().take_while(|&&l| l == 0).count();
        if s[p..].iter().all(|&l| l == 1) {
            Some(BigRational::new(BigInt::one(), factorial(p) * factorial(s.len() - p)))
        } else {
            None
        }
    };
    // ways[m][j]: total weight of splitting word[..j] into m blocks.
    let mut ways = vec![vec![BigRational::zero(); n + 1]; n + 1];
    ways[0][0] = BigRational::one();
    for m in 1..=n {
        for j in 1..=n {
            let mut acc = BigRational::zero();
            for i in (m - 1)..j {
                if ways[m - 1][i].is_zero() {
                    continue;
                }
                if let Some(b) = block(i, j) {
                    acc += &ways[m - 1][i] * b;
                }
            }
            ways[m][j] = acc;
        }
    }
    let mut total = BigRational::zero();
    for m in 1..=n {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        total += &ways[m][n] * rat(sign, m as i64);
    }
    total
}

fn ensure_table(len: usize) {
    let lock = TABLE.get_or_init(|| RwLock::new(vec![Vec::new()]));
    if lock.read().expect("BCH table poisoned").len() > len {
        return;
    }
    let mut table = lock.write().expect("BCH table poisoned");
    while table.len() <= len {
        let n = table.len();
        let row = (0..1u32 << n)
            .map(|w| {
                let word: Vec<u8> = (0..n).map(|i| ((w >> i) & 1) as u8).collect();
                log_coefficient(&word) / rat(n as i64, 1)
            })
            .collect();
        table.push(row);
    }
}

/// Dynkin weights of all words of length `n`.
pub fn bch_weights(n: usize) -> Vec<BigRational> {
    ensure_table(n);
    TABLE.get().unwrap().read().expect("BCH table poisoned")[n].clone()
}

fn check_m_squared<S: Scalar>(f: &FormalSeriesTensor<S>) -> Result<()> {
    if f.in_m_squared() {
        Ok(())
    } else {
        Err(Error::NotInMSquared)
    }
}

/// f ⋆ g, truncated at the common truncation.
pub fn star<S: Scalar>(
    alg: &LieAlgebra<S>,
    f: &FormalSeriesTensor<S>,
    g: &FormalSeriesTensor<S>,
) -> Result<FormalSeriesTensor<S>> {
    f.check_compatible(g)?;
    check_m_squared(f)?;
    check_m_squared(g)?;
    if f.dim() != alg.dim() {
        return Err(Error::DimensionMismatch(f.dim(), alg.dim()));
    }
    Ok(star_unchecked(alg, f, g))
}

pub(crate) fn star_unchecked<S: Scalar>(
    alg: &LieAlgebra<S>,
    f: &FormalSeriesTensor<S>,
    g: &FormalSeriesTensor<S>,
) -> FormalSeriesTensor<S> {
    let sum = f.add_unchecked(g, S::one());
    let (Some(of), Some(og)) = (f.order(), g.order()) else {
        return sum;
    };
    if alg.is_abelian() {
        return sum;
    }
    let n_max = f.trunc();
    let letters = [(f, of), (g, og)];
    // Memo of right-normed brackets keyed by (suffix bits, suffix length).
    let mut memo: HashMap<(u32, usize), FormalSeriesTensor<S>> = HashMap::new();
    let mut result = sum;
    let mut len = 2;
    loop {
        // Shortest possible degree of a length-`len` bracket.
        let min_deg = (len - 1) * of.min(og) + of.max(og) - (len - 1);
        if min_deg > n_max {
            break;
        }
        let weights = bch_weights(len);
        for (w, a) in weights.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let w = w as u32;
            let lower: usize = (0..len)
                .map(|i| letters[((w >> i) & 1) as usize].1)
                .sum::<usize>()
                - (len - 1);
            if lower > n_max {
                continue;
            }
            let b = right_normed(alg, &letters, w, len, &mut memo);
            if !b.is_zero() {
                result = result.add_unchecked(&b, S::from_rational(a));
            }
        }
        len += 1;
    }
    result
}

fn right_normed<S: Scalar>(
    alg: &LieAlgebra<S>,
    letters: &[(&FormalSeriesTensor<S>, usize); 2],
    w: u32,
    len: usize,
    memo: &mut HashMap<(u32, usize), FormalSeriesTensor<S>>,
) -> FormalSeriesTensor<S> {
    let first = letters[(w & 1) as usize].0;
    if len == 1 {
        return first.clone();
    }
    let key = (w, len);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let rest = right_normed(alg, letters, w >> 1, len - 1, memo);
    let v = bracket_up_to(alg, first, &rest, first.trunc());
    memo.insert(key, v.clone());
    v
}

/// Left-to-right star product of a nonempty sequence.
pub fn star_all<S: Scalar>(
    alg: &LieAlgebra<S>,
    factors: &[&FormalSeriesTensor<S>],
) -> Result<FormalSeriesTensor<S>> {
    let (first, rest) = factors.split_first().expect("empty star product");
    check_m_squared(first)?;
    let mut acc = (*first).clone();
    for f in rest {
        acc = star(alg, &acc, f)?;
    }
    Ok(acc)
}

/// exp(ad ρ)(x) = Σ (1/n!) {ρ, {ρ, … {ρ, x}}}.
pub fn star_conjugate<S: Scalar>(
    alg: &LieAlgebra<S>,
    rho: &FormalSeriesTensor<S>,
    x: &FormalSeriesTensor<S>,
) -> Result<FormalSeriesTensor<S>> {
    rho.check_compatible(x)?;
    check_m_squared(rho)?;
    let mut result = x.clone();
    let mut term = x.clone();
    let mut n = 1;
    while !term.is_zero() && !rho.is_zero() {
        term = bracket_up_to(alg, rho, &term, rho.trunc()).scale(&S::ratio(1, n));
        result = result.add_unchecked(&term, S::one());
        n += 1;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::poisson_bracket;
    use crate::Rational;

    type T = FormalSeriesTensor<Rational>;

    fn word(s: &str) -> u32 {
        s.chars().enumerate().map(|(i, c)| if c == 'Y' { 1 << i } else { 0 }).sum()
    }

    #[test]
    fn known_bch_terms() {
        // log(e^X e^Y) = X + Y + XY/2 − YX/2 + …
        assert_eq!(log_coefficient(&[0, 1]), rat(1, 2));
        assert_eq!(log_coefficient(&[1, 0]), rat(-1, 2));
        assert_eq!(log_coefficient(&[0, 0]), BigRational::zero());
        let w2 = bch_weights(2);
        assert_eq!(w2[word("XY") as usize], rat(1, 4));
        assert_eq!(w2[word("YX") as usize], rat(-1, 4));
    }

    #[test]
    fn third_order_matches_closed_form() {
        // Degree-3 BCH part is ([X,[X,Y]] + [Y,[Y,X]])/12; evaluate in the free
        // associative algebra via word coefficients.
        let w3 = bch_weights(3);
        let mut assoc: HashMap<String, BigRational> = HashMap::new();
        for (w, a) in w3.iter().enumerate() {
            // expand [w1,[w2,w3]] into words
            let l: Vec<char> = (0..3).map(|i| if (w >> i) & 1 == 1 { 'Y' } else { 'X' }).collect();
            let inner = [(format!("{}{}", l[1], l[2]), 1), (format!("{}{}", l[2], l[1]), -1)];
            for (s, sign) in inner {
                *assoc.entry(format!("{}{}", l[0], s)).or_insert_with(BigRational::zero) += a * rat(sign, 1);
                *assoc.entry(format!("{}{}", s, l[0])).or_insert_with(BigRational::zero) -= a * rat(sign, 1);
            }
        }
        for w in 0..8u32 {
            let s: String = (0..3).map(|i| if (w >> i) & 1 == 1 { 'Y' } else { 'X' }).collect();
            let direct = log_coefficient(&(0..3).map(|i| ((w >> i) & 1) as u8).collect::<Vec<_>>());
            assert_eq!(assoc.get(&s).cloned().unwrap_or_else(BigRational::zero), direct, "{s}");
        }
    }

    fn sl2_sample(trunc: usize) -> (LieAlgebra<Rational>, T, T) {
        let g = LieAlgebra::sl2();
        let f = T::from_terms(3, 1, trunc, [(vec![2, 0, 0], Rational::one()), (vec![0, 1, 1], Rational::ratio(1, 3))]);
        let h = T::from_terms(3, 1, trunc, [(vec![0, 0, 2], Rational::ratio(-2, 1)), (vec![1, 1, 0], Rational::one())]);
        (g, f, h)
    }

    #[test]
    fn second_order_term() {
        let (g, f, h) = sl2_sample(3);
        let s = star(&g, &f, &h).unwrap();
        let expected = &(&f + &h) + &poisson_bracket(&g, &f, &h).unwrap().scale(&Rational::ratio(1, 2));
        assert_eq!(s, expected);
    }

    #[test]
    fn inverse_and_unit() {
        let (g, f, _) = sl2_sample(6);
        assert!(star(&g, &f, &-&f).unwrap().is_zero());
        let zero = T::zero(3, 1, 6);
        assert_eq!(star(&g, &f, &zero).unwrap(), f);
        assert_eq!(star(&g, &zero, &f).unwrap(), f);
    }

    #[test]
    fn rejects_low_degree() {
        let g = LieAlgebra::<Rational>::sl2();
        let x = T::generator(3, 1, 4, 0, 0);
        assert_eq!(star(&g, &x, &x), Err(Error::NotInMSquared));
        assert_eq!(star_conjugate(&g, &x, &x), Err(Error::NotInMSquared));
    }

    #[test]
    fn associativity_sample() {
        let (g, f, h) = sl2_sample(6);
        let k = T::from_terms(3, 1, 6, [(vec![1, 0, 1], Rational::one()), (vec![0, 3, 0], Rational::ratio(1, 5))]);
        let left = star(&g, &star(&g, &f, &h).unwrap(), &k).unwrap();
        let right = star(&g, &f, &star(&g, &h, &k).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn conjugation_matches_star() {
        let (g, f, h) = sl2_sample(6);
        let lhs = star_all(&g, &[&f, &h, &-&f]).unwrap();
        assert_eq!(lhs, star_conjugate(&g, &f, &h).unwrap());
    }
}
