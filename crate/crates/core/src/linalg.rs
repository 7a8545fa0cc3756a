//! Exact integer and rational matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        Ok(IntegerMatrix { rows: r, cols: c, data })
    }

    /// Builds a matrix from its columns, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Invariant factors `d_1 | d_2 | ...` of the Smith normal form, one per
    /// diagonal position (`min(rows, cols)` entries, zeros last).
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut diag = Vec::with_capacity(m.min(n));
        for k in 0..m.min(n) {
            // pivot on the smallest nonzero absolute value in the trailing block
            loop {
                let pivot = (k..m)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !a[i][j].is_zero())
                    .min_by(|&(i, j), &(p, q)| a[i][j].abs().cmp(&a[p][q].abs()));
                let Some((pi, pj)) = pivot else {
                    break;
                };
                a.swap(k, pi);
                for row in a.iter_mut() {
                    row.swap(k, pj);
                }
                let mut clean = true;
                for i in k + 1..m {
                    let q = a[i][k].div_floor(&a[k][k]);
                    if !q.is_zero() {
                        for j in k..n {
                            let t = &q * &a[k][j];
                            a[i][j] -= t;
                        }
                    }
                    clean &= a[i][k].is_zero();
                }
                for j in k + 1..n {
                    let q = a[k][j].div_floor(&a[k][k]);
                    if !q.is_zero() {
                        for i in k..m {
                            let t = &q * &a[i][k];
                            a[i][j] -= t;
                        }
                    }
                    clean &= a[k][j].is_zero();
                }
                if !clean {
                    continue;
                }
                // divisibility: fold any offending row into row k and retry
                let offender = (k + 1..m)
                    .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &a[k][k]).is_zero());
                match offender {
                    Some((i, _)) => {
                        for j in k..n {
                            let t = a[i][j].clone();
                            a[k][j] += t;
                        }
                    }
                    None => break,
                }
            }
            diag.push(a[k][k].abs());
        }
        diag
    }

    /// Exact inverse; fails unless the matrix is unimodular.
    pub fn unimodular_inverse(&self) -> Result<IntegerMatrix> {
        let inv = RationalMatrix::from(self).inverse()?;
        inv.to_integer().ok_or(Error::Singular)
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", padded.join(" "))?;
        }
        Ok(())
    }
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .fold(BigRational::zero(), |acc, x| acc + x)
            })
            .collect())
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> =
            (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        for k in 0..n {
            let pivot = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(k, pivot);
            inv.swap(k, pivot);
            let p = a[k][k].clone();
            for j in 0..n {
                a[k][j] = &a[k][j] / &p;
                inv[k][j] = &inv[k][j] / &p;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let da = &f * &a[k][j];
                    a[i][j] -= da;
                    let di = &f * &inv[k][j];
                    inv[i][j] -= di;
                }
            }
        }
        Ok(RationalMatrix { rows: n, cols: n, data: inv.into_iter().flatten().collect() })
    }

    pub fn determinant(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> =
            (0..n).map(|i| self.data[i * n..(i + 1) * n].to_vec()).collect();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(pivot) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if pivot != k {
                a.swap(k, pivot);
                det = -det;
            }
            det *= &a[k][k];
            for i in k + 1..n {
                let f = &a[i][k] / &a[k][k];
                for j in k..n {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
            }
        }
        Ok(det)
    }

    /// The same matrix over the integers, if every entry is integral.
    pub fn to_integer(&self) -> Option<IntegerMatrix> {
        self.data.iter().all(BigRational::is_integer).then(|| IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(BigRational::to_integer).collect(),
        })
    }
}

impl From<&IntegerMatrix> for RationalMatrix {
    fn from(m: &IntegerMatrix) -> Self {
        RationalMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().cloned().map(BigRational::from_integer).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Cofactor expansion, exponential but independent of elimination.
    fn laplace_det(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * laplace_det(&minor)
            })
            .sum()
    }

    #[test]
    fn determinants() {
        assert_eq!(IntegerMatrix::identity(4).determinant().unwrap(), BigInt::one());
        assert_eq!(IntegerMatrix::diagonal(&[1, 1, 2]).determinant().unwrap(), BigInt::from(2));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant().unwrap(), BigInt::from(-1));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).determinant().unwrap(), BigInt::zero());
        assert!(m(&[vec![1, 2]]).determinant().is_err());
    }

    #[test]
    fn smith_examples() {
        assert_eq!(IntegerMatrix::identity(3).smith_invariants(), ints(&[1, 1, 1]));
        assert_eq!(m(&[vec![2]]).smith_invariants(), ints(&[2]));
        assert_eq!(m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).smith_invariants(), ints(&[2, 6, 12]));
        assert_eq!(m(&[vec![1, 0, -3], vec![0, 1, 6], vec![0, 0, -2]]).smith_invariants(), ints(&[1, 1, 2]));
        assert_eq!(m(&[vec![2, 0], vec![0, 3]]).smith_invariants(), ints(&[1, 6]));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).smith_invariants(), ints(&[1, 0]));
        assert_eq!(m(&[vec![2, 4, 6]]).smith_invariants(), ints(&[2]));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let a = m(&[vec![3, 1, 0], vec![-3, 0, 1], vec![1, 0, 0]]);
        let inv = a.unimodular_inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), IntegerMatrix::identity(3));
        assert!(IntegerMatrix::diagonal(&[1, 2]).unimodular_inverse().is_err());
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(entries in proptest::collection::vec(-9i64..=9, 16)) {
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
            let want = laplace_det(&rows);
            prop_assert_eq!(m(&rows).determinant().unwrap(), BigInt::from(want));
            let q = RationalMatrix::from(&m(&rows)).determinant().unwrap();
            prop_assert_eq!(q, BigRational::from_integer(BigInt::from(want)));
        }

        #[test]
        fn smith_product_is_abs_det_and_divides(entries in proptest::collection::vec(-9i64..=9, 9)) {
            let rows: Vec<Vec<i64>> = entries.chunks(3).map(<[i64]>::to_vec).collect();
            let a = m(&rows);
            let d = a.smith_invariants();
            let prod: BigInt = d.iter().product();
            prop_assert_eq!(prod, a.determinant().unwrap().abs());
            for w in d.windows(2) {
                if !w[0].is_zero() {
                    prop_assert!((&w[1] % &w[0]).is_zero());
                } else {
                    prop_assert!(w[1].is_zero());
                }
            }
        }
    }
}
