//! Permutations of `{1, ..., h}`, reduced words in adjacent transpositions and
//! chamber sorting.
//!
//! Letter `i` stands for the transposition `s_i = (i, i+1)`. A word acts on
//! vectors left to right: the first letter is applied first, and applying
//! `s_i` swaps positions `i` and `i+1`. Accordingly the product of a word
//! `[i_1, ..., i_k]` is `s_{i_k} o ... o s_{i_1}`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};

/// A bijection of `{0, ..., h-1}`; displayed one-based in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(h: usize) -> Self {
        Permutation((0..h).collect())
    }

    /// From one-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let h = images.len();
        let mut seen = vec![false; h];
        for &v in images {
            if v == 0 || v > h || seen[v - 1] {
                return Err(Error::InvalidParameter(format!("{images:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(images.iter().map(|v| v - 1).collect()))
    }

    /// The transposition `(i, i+1)`, one-based `i`.
    pub fn adjacent(h: usize, i: usize) -> Self {
        assert!(i >= 1 && i < h, "s_{i} does not exist in S_{h}");
        let mut p = Self::identity(h);
        p.0.swap(i - 1, i);
        p
    }

    pub fn transposition(h: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(h);
        p.0.swap(i - 1, j - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// One-based image of one-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.0[j - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }

    /// `self o other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Permutation(inv)
    }

    pub fn inversions(&self) -> usize {
        let n = self.0.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.0[i] > self.0[j])
            .count()
    }

    /// Moves the entry at position `k` to position `self(k)`.
    pub fn act<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (k, x) in v.iter().enumerate() {
            out[self.0[k]] = x.clone();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line().iter().map(usize::to_string).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// Product of a word: the first letter acts first.
pub fn word_product(h: usize, word: &[usize]) -> Permutation {
    word.iter()
        .fold(Permutation::identity(h), |acc, &i| Permutation::adjacent(h, i).compose(&acc))
}

/// Applies the letters of `word` to `v` in order.
pub fn apply_word<T: Clone>(v: &[T], word: &[usize]) -> Vec<T> {
    let mut out = v.to_vec();
    for &i in word {
        out.swap(i - 1, i);
    }
    out
}

/// A reduced word for `sigma`: bubble-sorting the one-line notation of `sigma`
/// back to the identity records exactly `inversions(sigma)` swaps, and the
/// recorded swaps multiply to `sigma`.
pub fn adjacent_word(sigma: &Permutation) -> Vec<usize> {
    let mut line = sigma.0.clone();
    let mut word = Vec::with_capacity(sigma.inversions());
    let n = line.len();
    for pass in 0..n {
        for i in 0..n.saturating_sub(pass + 1) {
            if line[i] > line[i + 1] {
                line.swap(i, i + 1);
                word.push(i + 1);
            }
        }
    }
    word
}

/// `(12)(23)...(h-1,h)...(23)(12)` composed as functions, leftmost outermost.
pub fn duality_sigma(h: usize) -> Result<Permutation> {
    if h < 2 {
        return Err(Error::InvalidParameter(format!("need h >= 2, got {h}")));
    }
    Ok(duality_word(h)?
        .iter()
        .fold(Permutation::identity(h), |acc, &i| acc.compose(&Permutation::adjacent(h, i))))
}

/// `[1, 2, ..., h-1, ..., 2, 1]`.
pub fn duality_word(h: usize) -> Result<Vec<usize>> {
    if h < 2 {
        return Err(Error::InvalidParameter(format!("need h >= 2, got {h}")));
    }
    Ok((1..h).chain((1..h - 1).rev()).collect())
}

/// A class in the `A_{h-1}` chamber geometry; chamber operations need
/// pairwise distinct entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberVector(pub Vec<BigRational>);

impl ChamberVector {
    pub fn check_regular(&self) -> Result<()> {
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] == self.0[j] {
                    return Err(Error::RegularityViolation(i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }
}

impl FromStr for ChamberVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<BigRational>()
                    .map_err(|_| Error::Parse(format!("bad rational `{x}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(ChamberVector)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberSort {
    pub sigma: Vec<usize>,
    pub word: Vec<usize>,
    pub length: usize,
    pub sorted: Vec<String>,
}

/// The permutation carrying `v` into the dominant (strictly decreasing)
/// chamber, with a reduced word for it.
pub fn chamber_sort(v: &ChamberVector) -> Result<(Permutation, Vec<usize>)> {
    v.check_regular()?;
    let mut order: Vec<usize> = (0..v.0.len()).collect();
    order.sort_by(|&i, &j| v.0[j].cmp(&v.0[i]));
    // position j of the result takes entry order[j]
    let sigma = Permutation(order).inverse();
    let word = adjacent_word(&sigma);
    Ok((sigma, word))
}

pub fn chamber_sort_report(v: &ChamberVector) -> Result<ChamberSort> {
    let (sigma, word) = chamber_sort(v)?;
    let sorted = apply_word(&v.0, &word).iter().map(BigRational::to_string).collect();
    Ok(ChamberSort { sigma: sigma.one_line(), length: word.len(), word, sorted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    fn cv(v: &[i64]) -> ChamberVector {
        ChamberVector(v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
    }

    /// Number of pairs `i < j` with `v_i < v_j`: the swaps any adjacent sort
    /// into decreasing order needs.
    fn ascents<T: Ord>(v: &[T]) -> usize {
        (0..v.len()).flat_map(|i| (i + 1..v.len()).map(move |j| (i, j))).filter(|&(i, j)| v[i] < v[j]).count()
    }

    #[test]
    fn words_for_small_permutations() {
        assert!(adjacent_word(&Permutation::identity(4)).is_empty());
        assert_eq!(adjacent_word(&perm(&[2, 1])), vec![1]);
        let rev = perm(&[4, 3, 2, 1]);
        let w = adjacent_word(&rev);
        assert_eq!(w.len(), 6);
        assert_eq!(word_product(4, &w), rev);
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
    }

    #[test]
    fn random_words_are_reduced_and_multiply_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let h = rng.gen_range(1..=7);
            let mut line: Vec<usize> = (1..=h).collect();
            line.shuffle(&mut rng);
            let sigma = perm(&line);
            let w = adjacent_word(&sigma);
            assert_eq!(word_product(h, &w), sigma);
            assert_eq!(w.len(), sigma.inversions());
            // acting letter by letter equals acting by the product
            let v: Vec<usize> = (10..10 + h).collect();
            assert_eq!(apply_word(&v, &w), sigma.act(&v));
        }
    }

    #[test]
    fn duality_elements() {
        assert_eq!(duality_sigma(2).unwrap(), perm(&[2, 1]));
        assert_eq!(duality_sigma(3).unwrap(), perm(&[3, 2, 1]));
        let s4 = duality_sigma(4).unwrap();
        // brute force: compose the five displayed factors right to left on each point
        let factors = [(1, 2), (2, 3), (3, 4), (2, 3), (1, 2)];
        for j in 1..=4 {
            let mut x = j;
            for &(a, b) in factors.iter().rev() {
                x = if x == a { b } else if x == b { a } else { x };
            }
            assert_eq!(s4.apply(j), x);
        }
        assert_eq!(word_product(4, &adjacent_word(&s4)), s4);
        assert!(duality_sigma(1).is_err());
    }

    #[test]
    fn palindromic_words() {
        assert_eq!(duality_word(2).unwrap(), vec![1]);
        assert_eq!(duality_word(3).unwrap(), vec![1, 2, 1]);
        assert_eq!(duality_word(5).unwrap(), vec![1, 2, 3, 4, 3, 2, 1]);
        for h in 2..=8 {
            let w = duality_word(h).unwrap();
            assert_eq!(w.len(), 2 * h - 3);
            let sigma = duality_sigma(h).unwrap();
            assert_eq!(word_product(h, &w), sigma.inverse());
            assert_eq!(sigma, Permutation::transposition(h, 1, h));
            assert_eq!(sigma.inversions(), w.len());
        }
    }

    #[test]
    fn chamber_examples() {
        let (s, w) = chamber_sort(&cv(&[5, 3, 1])).unwrap();
        assert_eq!(s, Permutation::identity(3));
        assert!(w.is_empty());
        let (s, w) = chamber_sort(&cv(&[2, 5])).unwrap();
        assert_eq!(s, perm(&[2, 1]));
        assert_eq!(w, vec![1]);
        let v = cv(&[1, 3, 2, 4]);
        let (_, w) = chamber_sort(&v).unwrap();
        assert_eq!(apply_word(&v.0, &w), cv(&[4, 3, 2, 1]).0);
        assert_eq!(w.len(), ascents(&[1, 3, 2, 4]));
        assert_eq!(w.len(), 5);
        assert_eq!(chamber_sort(&cv(&[1, 2, 1])), Err(Error::RegularityViolation(1, 3)));
    }

    #[test]
    fn chamber_sort_on_random_regular_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let h = rng.gen_range(1..=8);
            let mut vals: Vec<i64> = (-20..20).collect();
            vals.shuffle(&mut rng);
            let v = ChamberVector(
                vals[..h]
                    .iter()
                    .map(|&x| BigRational::new(BigInt::from(x), BigInt::from(3)))
                    .collect(),
            );
            let (sigma, w) = chamber_sort(&v).unwrap();
            let sorted = ChamberVector(apply_word(&v.0, &w));
            assert!(sorted.is_strictly_decreasing());
            assert_eq!(w.len(), ascents(&v.0));
            assert_eq!(sigma.act(&v.0), sorted.0);
        }
    }

    #[test]
    fn parse_rationals() {
        let v: ChamberVector = "1/2, -3, 4".parse().unwrap();
        assert_eq!(v.0[0], BigRational::new(1.into(), 2.into()));
        assert!("1,x".parse::<ChamberVector>().is_err());
    }
}
