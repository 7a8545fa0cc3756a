//! Borel–Weil–Bott on `G(t, h)` for irreducible homogeneous bundles
//! `Sigma^a tau (x) Sigma^b q`.
//!
//! Convention: the bundle with weight `(a | b)` has `GL_h` weight `(b, a)`
//! (quotient block first). Add `rho = (h-1, ..., 1, 0)`; a repeated entry
//! kills all cohomology, otherwise the only nonzero group sits in degree
//! equal to the number of inversions, and is the irreducible representation
//! with highest weight `sort(weight + rho) - rho`. With this convention
//! `O(k) = (det tau)^{-k}` has `a = (-k, ..., -k)` and `b = 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::partitions::{partitions_of, BoxShape, Partition};

/// Highest weight on the `tau` block and on the `q` block, each non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl Weight {
    pub fn new(a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidParameter("both weight blocks must be nonempty".into()));
        }
        for block in [&a, &b] {
            if block.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidParameter(format!("weight block {block:?} is not non-increasing")));
            }
        }
        Ok(Weight { a, b })
    }

    /// `O(k)` on `G(t, h)`.
    pub fn line(k: i64, shape: BoxShape) -> Self {
        Weight { a: vec![-k; shape.rows], b: vec![0; shape.cols] }
    }

    pub fn trivial(shape: BoxShape) -> Self {
        Self::line(0, shape)
    }

    pub fn shape(&self) -> BoxShape {
        BoxShape { rows: self.a.len(), cols: self.b.len() }
    }

    /// Concatenated `GL_h` weight, quotient block first.
    pub fn gl_weight(&self) -> Vec<i64> {
        self.b.iter().chain(&self.a).copied().collect()
    }

    /// Weight of `E^* (x) K_G`, with `K_G = O(-h)`.
    pub fn serre_dual(&self) -> Weight {
        let h = (self.a.len() + self.b.len()) as i64;
        Weight {
            a: self.a.iter().rev().map(|x| h - x).collect(),
            b: self.b.iter().rev().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}|{}", join(&self.a), join(&self.b))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("weight `{s}` needs the form a1,..|b1,..")))?;
        let block = |x: &str| -> Result<Vec<i64>> {
            x.split(',')
                .map(|v| v.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight entry in `{s}`"))))
                .collect()
        };
        Weight::new(block(a)?, block(b)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Cohomology {
    AllZero { zero: bool },
    Degree { degree: usize, dim: String },
}

impl Cohomology {
    fn zero() -> Self {
        Cohomology::AllZero { zero: true }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cohomology::AllZero { .. })
    }

    /// Dimension of `H^d`.
    pub fn dim_in(&self, d: usize) -> BigInt {
        match self {
            Cohomology::Degree { degree, dim } if *degree == d => dim.parse().expect("decimal dimension"),
            _ => BigInt::zero(),
        }
    }
}

pub fn bott_cohomology(w: &Weight) -> Cohomology {
    let gl = w.gl_weight();
    let h = gl.len();
    let shifted: Vec<i64> = gl.iter().enumerate().map(|(i, x)| x + (h - 1 - i) as i64).collect();
    let mut sorted = shifted.clone();
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Cohomology::zero();
    }
    let inversions = (0..h)
        .flat_map(|i| (i + 1..h).map(move |j| (i, j)))
        .filter(|&(i, j)| shifted[i] < shifted[j])
        .count();
    let dominant: Vec<i64> = sorted.iter().enumerate().map(|(i, x)| x - (h - 1 - i) as i64).collect();
    Cohomology::Degree { degree: inversions, dim: weyl_dimension(&dominant).to_string() }
}

/// Weyl dimension formula for a dominant `GL_n` weight.
pub fn weyl_dimension(lambda: &[i64]) -> BigInt {
    let n = lambda.len();
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..n {
        for j in i + 1..n {
            num *= lambda[i] - lambda[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    num / den
}

/// `Omega^p = wedge^p(tau (x) q*) = sum_{|mu| = p} Sigma^mu tau (x) Sigma^{mu'} q*`.
pub fn exterior_cotangent_decomposition(p: usize, shape: BoxShape) -> Result<Vec<Weight>> {
    if p > shape.dim() {
        return Err(Error::InvalidParameter(format!("p = {p} exceeds dim G = {}", shape.dim())));
    }
    Ok(partitions_of(p, shape.cols, shape.rows)
        .iter()
        .map(|mu| cauchy_summand(mu, shape))
        .collect())
}

fn cauchy_summand(mu: &Partition, shape: BoxShape) -> Weight {
    let a = mu.padded(shape.rows).into_iter().map(|x| x as i64).collect();
    let b = mu.conjugate().padded(shape.cols).into_iter().rev().map(|x| -(x as i64)).collect();
    Weight { a, b }
}

/// `h^{p,q}(G)`, indexed `[p][q]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeTable {
    pub dim: usize,
    pub entries: Vec<Vec<String>>,
}

impl HodgeTable {
    pub fn get(&self, p: usize, q: usize) -> BigInt {
        self.entries[p][q].parse().expect("decimal entry")
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..=self.dim).map(|p| self.get(p, p)).collect()
    }

    pub fn off_diagonal_vanishes(&self) -> bool {
        (0..=self.dim).all(|p| (0..=self.dim).all(|q| p == q || self.get(p, q).is_zero()))
    }
}

pub fn hodge_numbers(shape: BoxShape) -> HodgeTable {
    hodge_numbers_with(shape, Strategy::default())
}

pub fn hodge_numbers_with(shape: BoxShape, strategy: Strategy) -> HodgeTable {
    let n = shape.dim();
    let entries = strategy.map_range(n + 1, |p| {
        let summands = exterior_cotangent_decomposition(p, shape).expect("p within range");
        let results: Vec<Cohomology> = summands.iter().map(bott_cohomology).collect();
        (0..=n)
            .map(|q| results.iter().map(|c| c.dim_in(q)).sum::<BigInt>().to_string())
            .collect()
    });
    HodgeTable { dim: n, entries }
}

/// Coefficients of the Gaussian binomial `[h choose t]_q`.
pub fn gaussian_binomial(shape: BoxShape) -> Vec<u64> {
    (0..=shape.dim())
        .map(|d| partitions_of(d, shape.cols, shape.rows).len() as u64)
        .collect()
}
