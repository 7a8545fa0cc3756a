//! The rational Chow ring of `G(t, h)` in the Schubert basis, and Chern
//! characters of Schur functors of the tautological bundles.
//!
//! Schubert classes `sigma_lambda` are indexed by partitions in the
//! `t x (h - t)` box, with `sigma_i = c_i(q)` the special classes. All
//! arithmetic is exact; anything of degree above `t(h - t)` or outside the
//! box vanishes.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::linalg::RationalMatrix;
use crate::partitions::{enumerate_box, lr_coefficients, BoxShape, Partition};
use crate::symfunc::schur_in_power_sums;

/// A finitely supported rational combination of Schubert classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertVector {
    shape: BoxShape,
    coeffs: BTreeMap<Partition, BigRational>,
}

impl SchubertVector {
    pub fn zero(shape: BoxShape) -> Self {
        SchubertVector { shape, coeffs: BTreeMap::new() }
    }

    pub fn one(shape: BoxShape) -> Self {
        Self::scalar(shape, BigRational::one())
    }

    pub fn scalar(shape: BoxShape, c: BigRational) -> Self {
        let mut v = Self::zero(shape);
        v.add_term(Partition::empty(), c);
        v
    }

    /// The Schubert class `sigma_lambda`.
    pub fn schubert(shape: BoxShape, lambda: Partition) -> Result<Self> {
        if !lambda.fits_in(shape) {
            return Err(outside(&lambda, shape));
        }
        let mut v = Self::zero(shape);
        v.add_term(lambda, BigRational::one());
        Ok(v)
    }

    pub fn from_terms<I>(shape: BoxShape, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, BigRational)>,
    {
        let mut v = Self::zero(shape);
        for (p, c) in terms {
            if !p.fits_in(shape) {
                return Err(outside(&p, shape));
            }
            v.add_term(p, c);
        }
        Ok(v)
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, p: &Partition) -> BigRational {
        self.coeffs.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, p: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::BoxMismatch {
                left: self.shape.to_string(),
                right: other.shape.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.shape);
        }
        SchubertVector {
            shape: self.shape,
            coeffs: self.coeffs.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    /// Homogeneous part of degree `d`.
    pub fn degree_part(&self, d: usize) -> Self {
        SchubertVector {
            shape: self.shape,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(p, _)| p.size() == d)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Scales the degree-`d` part by `f(d)`.
    pub fn graded_scale(&self, f: impl Fn(usize) -> BigRational) -> Self {
        let mut out = Self::zero(self.shape);
        for (p, c) in &self.coeffs {
            out.add_term(p.clone(), c * f(p.size()));
        }
        out
    }

    /// The Adams operation `psi^k` on a Chern character: degree `d` scaled by `k^d`.
    pub fn adams(&self, k: i64) -> Self {
        self.graded_scale(|d| BigRational::from_integer(BigInt::from(k).pow(d as u32)))
    }

    /// Chern character of the dual bundle.
    pub fn dual(&self) -> Self {
        self.adams(-1)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Partition::empty())
    }

    /// Coordinates in the canonical Schubert basis order.
    pub fn to_dense(&self) -> Vec<BigRational> {
        enumerate_box(self.shape).iter().map(|p| self.coeff(p)).collect()
    }
}

impl fmt::Display for SchubertVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> =
            self.coeffs.iter().map(|(p, c)| format!("({c})s[{p}]")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

fn outside(p: &Partition, shape: BoxShape) -> Error {
    Error::OutsideBox { partition: p.to_string(), shape: shape.to_string() }
}

/// Bilinear product via Littlewood–Richardson coefficients with box truncation.
pub fn schubert_multiply(a: &SchubertVector, b: &SchubertVector) -> Result<SchubertVector> {
    a.check_shape(b)?;
    let mut out = SchubertVector::zero(a.shape);
    for (l, x) in &a.coeffs {
        for (m, y) in &b.coeffs {
            for (nu, c) in lr_coefficients(l, m, Some(a.shape)) {
                out.add_term(nu, x * y * BigRational::from_integer(c.into()));
            }
        }
    }
    Ok(out)
}

/// `A(G(t, h))_Q` with its structure constants tabulated once.
#[derive(Debug)]
pub struct SchubertRing {
    shape: BoxShape,
    basis: Vec<Partition>,
    index: HashMap<Partition, usize>,
    // table[i * n + j]: (k, c^k_{ij})
    table: Vec<Vec<(usize, u64)>>,
}

impl SchubertRing {
    pub fn new(shape: BoxShape) -> Self {
        Self::with_strategy(shape, Strategy::default())
    }

    pub fn with_strategy(shape: BoxShape, strategy: Strategy) -> Self {
        let basis = enumerate_box(shape);
        let index: HashMap<Partition, usize> =
            basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = basis.len();
        let table = strategy.map_range(n * n, |ij| {
            let (i, j) = (ij / n, ij % n);
            lr_coefficients(&basis[i], &basis[j], Some(shape))
                .into_iter()
                .map(|(nu, c)| (index[&nu], c))
                .collect()
        });
        SchubertRing { shape, basis, index, table }
    }

    /// Process-wide ring for `shape`, built on first use.
    pub fn shared(shape: BoxShape) -> Arc<SchubertRing> {
        static CACHE: OnceLock<Mutex<HashMap<BoxShape, Arc<SchubertRing>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(r) = cache.lock().expect("ring cache poisoned").get(&shape) {
            return r.clone();
        }
        let ring = Arc::new(SchubertRing::new(shape));
        cache.lock().expect("ring cache poisoned").entry(shape).or_insert(ring).clone()
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    pub fn multiply(&self, a: &SchubertVector, b: &SchubertVector) -> Result<SchubertVector> {
        a.check_shape(b)?;
        if a.shape != self.shape {
            return Err(Error::BoxMismatch {
                left: a.shape.to_string(),
                right: self.shape.to_string(),
            });
        }
        let n = self.basis.len();
        let mut acc = vec![BigRational::zero(); n];
        for (l, x) in &a.coeffs {
            let i = self.index[l];
            for (m, y) in &b.coeffs {
                let j = self.index[m];
                let xy = x * y;
                for &(k, c) in &self.table[i * n + j] {
                    acc[k] += &xy * BigRational::from_integer(c.into());
                }
            }
        }
        Ok(self.vector_of(acc))
    }

    fn vector_of(&self, acc: Vec<BigRational>) -> SchubertVector {
        SchubertVector {
            shape: self.shape,
            coeffs: self
                .basis
                .iter()
                .cloned()
                .zip(acc)
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    fn mul(&self, a: &SchubertVector, b: &SchubertVector) -> SchubertVector {
        self.multiply(a, b).expect("vectors built from this ring share its box")
    }

    pub fn power(&self, a: &SchubertVector, k: usize) -> SchubertVector {
        (0..k).fold(SchubertVector::one(self.shape), |acc, _| self.mul(&acc, a))
    }

    /// Truncated exponential `sum_{m <= dim} x^m / m!` of a class without
    /// constant term.
    pub fn exp(&self, x: &SchubertVector) -> SchubertVector {
        let mut term = SchubertVector::one(self.shape);
        let mut sum = term.clone();
        for m in 1..=self.shape.dim() {
            term = self.mul(&term, x).scale(&BigRational::new(BigInt::one(), BigInt::from(m)));
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term).expect("same box");
        }
        sum
    }

    /// Total Chern class of `q`: `1 + sigma_1 + ... + sigma_{h-t}`.
    pub fn total_chern_q(&self) -> SchubertVector {
        let terms = (0..=self.shape.cols)
            .map(|i| (Partition::from_unsorted(vec![i]), BigRational::one()));
        SchubertVector::from_terms(self.shape, terms).expect("special classes fit in the box")
    }

    /// `c_0(tau), ..., c_t(tau)` from `c(tau) c(q) = 1`, solved degree by degree.
    pub fn chern_classes_tau(&self) -> Vec<SchubertVector> {
        let special: Vec<SchubertVector> = (0..=self.shape.cols)
            .map(|i| {
                SchubertVector::schubert(self.shape, Partition::from_unsorted(vec![i]))
                    .expect("special classes fit in the box")
            })
            .collect();
        let mut c = vec![SchubertVector::one(self.shape)];
        for n in 1..=self.shape.rows {
            let mut cn = SchubertVector::zero(self.shape);
            for i in 1..=n.min(self.shape.cols) {
                cn = cn.sub(&self.mul(&special[i], &c[n - i])).expect("same box");
            }
            c.push(cn);
        }
        c
    }

    /// Newton power sums `p_1, ..., p_dim` of the Chern roots of `tau`
    /// (index 0 holds the rank).
    pub fn power_sums_tau(&self) -> Vec<SchubertVector> {
        let e = self.chern_classes_tau();
        let t = self.shape.rows;
        let dim = self.shape.dim();
        let elem = |i: usize| if i <= t { e[i].clone() } else { SchubertVector::zero(self.shape) };
        let rank = BigRational::from_integer(BigInt::from(t));
        let mut p = vec![SchubertVector::scalar(self.shape, rank)];
        for m in 1..=dim {
            // p_m = sum_{i<m} (-1)^{i-1} e_i p_{m-i} + (-1)^{m-1} m e_m
            let mut pm = elem(m).scale(&signed(m - 1, BigInt::from(m)));
            for i in 1..m {
                let term = self.mul(&elem(i), &p[m - i]).scale(&signed(i - 1, BigInt::one()));
                pm = pm.add(&term).expect("same box");
            }
            p.push(pm);
        }
        p
    }

    /// `ch(tau) = t + sum_m p_m / m!`.
    pub fn ch_tau(&self) -> SchubertVector {
        let p = self.power_sums_tau();
        let mut factorial = BigInt::one();
        let mut out = p[0].clone();
        for (m, pm) in p.iter().enumerate().skip(1) {
            factorial *= BigInt::from(m);
            out = out.add(&pm.scale(&BigRational::new(BigInt::one(), factorial.clone()))).expect("same box");
        }
        out
    }

    /// `ch(q) = h - ch(tau)`.
    pub fn ch_q(&self) -> SchubertVector {
        let h = BigRational::from_integer(BigInt::from(self.shape.h()));
        SchubertVector::scalar(self.shape, h).sub(&self.ch_tau()).expect("same box")
    }

    /// `ch(O(k)) = exp(k sigma_1)`.
    pub fn ch_line(&self, k: i64) -> SchubertVector {
        let sigma1 = SchubertVector::schubert(self.shape, Partition::from_unsorted(vec![1]))
            .expect("sigma_1 fits");
        self.exp(&sigma1.scale(&BigRational::from_integer(BigInt::from(k))))
    }

    /// `ch(Sigma^alpha E)` from `ch(E)`, through the power-sum expansion of the
    /// Schur function and Adams operations.
    pub fn ch_schur(&self, alpha: &Partition, ch_bundle: &SchubertVector) -> SchubertVector {
        let mut adams_cache: HashMap<usize, SchubertVector> = HashMap::new();
        let mut out = SchubertVector::zero(self.shape);
        for (rho, coeff) in schur_in_power_sums(alpha) {
            let mut prod = SchubertVector::one(self.shape);
            for &k in rho.parts() {
                let psi = adams_cache
                    .entry(k)
                    .or_insert_with(|| ch_bundle.adams(k as i64))
                    .clone();
                prod = self.mul(&prod, &psi);
            }
            out = out.add(&prod.scale(&coeff)).expect("same box");
        }
        out
    }

    /// `ch(Sigma^alpha tau)`.
    pub fn chern_character(&self, alpha: &Partition) -> Result<SchubertVector> {
        if !alpha.fits_in(self.shape) {
            return Err(outside(alpha, self.shape));
        }
        Ok(self.ch_schur(alpha, &self.ch_tau()))
    }

    /// Columns `ch(Sigma^alpha tau)`, rows the Schubert basis, both in
    /// canonical order.
    pub fn ch_matrix(&self, strategy: Strategy) -> RationalMatrix {
        let ch_tau = self.ch_tau();
        let columns = strategy.map(&self.basis, |alpha| self.ch_schur(alpha, &ch_tau).to_dense());
        let n = self.basis.len();
        let mut m = RationalMatrix::zeros(n, n);
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }
}

fn signed(exp: usize, magnitude: BigInt) -> BigRational {
    let v = BigRational::from_integer(magnitude);
    if exp.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

pub fn chern_classes_tau(shape: BoxShape) -> Vec<SchubertVector> {
    SchubertRing::shared(shape).chern_classes_tau()
}

pub fn chern_character(alpha: &Partition, shape: BoxShape) -> Result<SchubertVector> {
    SchubertRing::shared(shape).chern_character(alpha)
}

pub fn ch_matrix(shape: BoxShape) -> RationalMatrix {
    SchubertRing::shared(shape).ch_matrix(Strategy::default())
}

/// True when the class has no negative coefficient; handy for sanity checks
/// on effective classes.
pub fn is_nonnegative(v: &SchubertVector) -> bool {
    v.coeffs.values().all(|c| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sv(shape: BoxShape, terms: &[(&str, i64, i64)]) -> SchubertVector {
        SchubertVector::from_terms(shape, terms.iter().map(|&(s, n, d)| (p(s), q(n, d)))).unwrap()
    }

    fn b(r: usize, c: usize) -> BoxShape {
        BoxShape::new(r, c).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let g24 = b(2, 2);
        let s1 = sv(g24, &[("1", 1, 1)]);
        let x = sv(g24, &[("2", 3, 1), ("1,1", -1, 2)]);
        assert_eq!(schubert_multiply(&SchubertVector::one(g24), &x).unwrap(), x);
        assert_eq!(schubert_multiply(&s1, &s1).unwrap(), sv(g24, &[("2", 1, 1), ("1,1", 1, 1)]));
        let s2 = sv(g24, &[("2", 1, 1)]);
        let s11 = sv(g24, &[("1,1", 1, 1)]);
        assert!(schubert_multiply(&s2, &s11).unwrap().is_zero());
        assert!(schubert_multiply(&s1, &SchubertVector::one(b(1, 2))).is_err());
        // sigma_1^4 = 2 [pt] on G(2,4)
        let ring = SchubertRing::new(g24);
        assert_eq!(ring.power(&s1, 4), sv(g24, &[("2,2", 2, 1)]));
    }

    #[test]
    fn chern_classes_of_tau() {
        let c = chern_classes_tau(b(1, 2));
        assert_eq!(c[0], SchubertVector::one(b(1, 2)));
        assert_eq!(c[1], sv(b(1, 2), &[("1", -1, 1)]));
        let c = chern_classes_tau(b(2, 2));
        assert_eq!(c[1], sv(b(2, 2), &[("1", -1, 1)]));
        assert_eq!(c[2], sv(b(2, 2), &[("1,1", 1, 1)]));
    }

    #[test]
    fn chern_times_chern_is_one() {
        for (t, w) in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)] {
            let ring = SchubertRing::new(b(t, w));
            let total_tau = ring
                .chern_classes_tau()
                .iter()
                .fold(SchubertVector::zero(b(t, w)), |acc, c| acc.add(c).unwrap());
            assert_eq!(ring.multiply(&total_tau, &ring.total_chern_q()).unwrap(), SchubertVector::one(b(t, w)));
        }
    }

    #[test]
    fn chern_character_examples() {
        let p2 = b(1, 2);
        assert_eq!(chern_character(&p("-"), p2).unwrap(), SchubertVector::one(p2));
        assert_eq!(
            chern_character(&p("1"), p2).unwrap(),
            sv(p2, &[("-", 1, 1), ("1", -1, 1), ("2", 1, 2)])
        );
        assert!(chern_character(&p("2,1"), p2).is_err());

        // ch(wedge^2 tau) on G(2,4) is exp(c_1(tau)) = exp(-sigma_1)
        let g24 = b(2, 2);
        let ring = SchubertRing::new(g24);
        let s1 = sv(g24, &[("1", 1, 1)]);
        let mut want = SchubertVector::zero(g24);
        let mut fact = 1i64;
        for m in 0..=4usize {
            if m > 0 {
                fact *= m as i64;
            }
            let sign = if m % 2 == 0 { 1 } else { -1 };
            want = want.add(&ring.power(&s1, m).scale(&q(sign, fact))).unwrap();
        }
        assert_eq!(ring.chern_character(&p("1,1")).unwrap(), want);
        // sigma_1^4/24 = 2/24 [pt]
        assert_eq!(want.coeff(&p("2,2")), q(1, 12));
    }

    #[test]
    fn top_exterior_times_its_dual_is_one() {
        for (t, w) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
            let ring = SchubertRing::new(b(t, w));
            let det = ring.chern_character(&Partition::from_unsorted(vec![1; t])).unwrap();
            assert_eq!(ring.multiply(&det, &det.dual()).unwrap(), SchubertVector::one(b(t, w)));
        }
    }

    #[test]
    fn ch_matrix_small() {
        let m = ch_matrix(b(1, 1));
        let want = [[1, 1], [0, -1]];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(m[(i, j)], q(want[i][j], 1));
            }
        }
        let m = ch_matrix(b(2, 2));
        assert_eq!(m.rows(), 6);
        assert!(!m.determinant().unwrap().is_zero());
    }

    #[test]
    fn ch_matrix_invertible_up_to_h7() {
        for h in 2..=7 {
            for t in 1..=h / 2 {
                let m = ch_matrix(BoxShape::grassmannian(t, h).unwrap());
                assert!(!m.determinant().unwrap().is_zero(), "G({t},{h})");
            }
        }
    }

    #[test]
    fn strategies_build_identical_rings() {
        let shape = b(2, 3);
        let seq = SchubertRing::with_strategy(shape, Strategy::Sequential);
        let par = SchubertRing::with_strategy(shape, Strategy::Parallel);
        assert_eq!(seq.table, par.table);
        assert_eq!(seq.ch_matrix(Strategy::Sequential), par.ch_matrix(Strategy::Parallel));
    }

    fn random_vector(rng: &mut ChaCha8Rng, ring: &SchubertRing) -> SchubertVector {
        let terms = ring
            .basis()
            .iter()
            .map(|p| (p.clone(), q(rng.gen_range(-5..=5), rng.gen_range(1..=3))));
        SchubertVector::from_terms(ring.shape(), terms).unwrap()
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for shape in [b(2, 2), b(2, 3)] {
            let ring = SchubertRing::new(shape);
            for _ in 0..50 {
                let x = random_vector(&mut rng, &ring);
                let y = random_vector(&mut rng, &ring);
                let z = random_vector(&mut rng, &ring);
                let m = |a: &SchubertVector, b: &SchubertVector| ring.multiply(a, b).unwrap();
                assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
                assert_eq!(m(&x, &y), m(&y, &x));
                assert_eq!(m(&x, &y.add(&z).unwrap()), m(&x, &y).add(&m(&x, &z)).unwrap());
                assert_eq!(m(&x, &y), schubert_multiply(&x, &y).unwrap());
            }
        }
    }
}
