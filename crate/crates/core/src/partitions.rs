//! Young diagrams, box enumeration and Littlewood–Richardson coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A partition stored as its non-increasing, strictly positive parts.
///
/// The empty partition is written `-` in text form, any other partition as
/// its comma-separated parts (`2,1`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from arbitrary parts. Trailing zeros are dropped;
    /// an increasing sequence or a zero followed by a positive part is an error.
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and strips zeros, so any multiset of row lengths is accepted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.0.len()
    }

    /// Number of columns (the first part).
    pub fn cols(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i`, zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits_in(&self, shape: BoxShape) -> bool {
        self.rows() <= shape.rows && self.cols() <= shape.cols
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.rows() <= self.rows() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Transpose of the diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.cols();
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Parts padded with zeros to length `n`. Panics if the partition has more
    /// than `n` rows.
    pub fn padded(&self, n: usize) -> Vec<usize> {
        assert!(self.rows() <= n, "partition {self} has more than {n} rows");
        let mut v = self.0.clone();
        v.resize(n, 0);
        v
    }

    /// Complement inside a `shape` rectangle, rotated back to a partition:
    /// `(w - a_t, ..., w - a_1)`.
    pub fn complement(&self, shape: BoxShape) -> Partition {
        let padded = self.padded(shape.rows);
        Partition::from_unsorted(padded.iter().rev().map(|&p| shape.cols - p).collect())
    }

    /// Multiplicities `m_1, m_2, ...` of each part size, indexed from 1.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl Ord for Partition {
    /// Graded by size, then lexicographically descending within a grade.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

impl From<&[usize]> for Partition {
    fn from(parts: &[usize]) -> Self {
        Partition::from_unsorted(parts.to_vec())
    }
}

/// A `rows x cols` rectangle; for the Grassmannian `G(t, h)` this is `t x (h - t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxShape {
    pub rows: usize,
    pub cols: usize,
}

impl BoxShape {
    pub fn new(rows: usize, cols: usize) -> Result<Self, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter(format!(
                "box needs positive sides, got {rows}x{cols}"
            )));
        }
        Ok(BoxShape { rows, cols })
    }

    /// The box of `G(t, h)`.
    pub fn grassmannian(t: usize, h: usize) -> Result<Self, Error> {
        if t == 0 || t >= h {
            return Err(Error::InvalidParameter(format!(
                "G({t},{h}) needs 0 < t < h"
            )));
        }
        BoxShape::new(t, h - t)
    }

    /// Ambient dimension `h`.
    pub fn h(&self) -> usize {
        self.rows + self.cols
    }

    /// Dimension of the Grassmannian, `t(h - t)`.
    pub fn dim(&self) -> usize {
        self.rows * self.cols
    }

    /// Number of partitions in the box, `C(h, t)`.
    pub fn count(&self) -> usize {
        binomial(self.h(), self.rows)
    }

    pub fn full(&self) -> Partition {
        Partition(vec![self.cols; self.rows])
    }
}

impl fmt::Display for BoxShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All partitions fitting in `shape`, in canonical order.
pub fn enumerate_box(shape: BoxShape) -> Vec<Partition> {
    let mut out = Vec::with_capacity(shape.count());
    for n in 0..=shape.dim() {
        let mut grade = partitions_of(n, shape.cols, shape.rows);
        grade.sort();
        out.extend(grade);
    }
    out
}

/// Partitions of `n` with parts at most `max_part` and at most `max_rows` rows,
/// lexicographically descending.
pub fn partitions_of(n: usize, max_part: usize, max_rows: usize) -> Vec<Partition> {
    fn go(
        remaining: usize,
        max_part: usize,
        rows_left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            cur.push(p);
            go(remaining - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_part, max_rows, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n` without restriction.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    partitions_of(n, n, n)
}

/// Littlewood–Richardson coefficients `c^nu_{lambda mu}`.
///
/// LR tableaux of shape `nu / lambda` and content `mu` are built strip by strip:
/// the `k`s are added as a horizontal strip such that the row reading word
/// stays a lattice word. When `shape` is given, products leaving the box are
/// dropped; shapes only grow during the construction, so a partial shape that
/// leaves the box is abandoned immediately.
pub fn lr_coefficients(
    lambda: &Partition,
    mu: &Partition,
    shape: Option<BoxShape>,
) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    if let Some(b) = shape {
        if !lambda.fits_in(b) || !mu.fits_in(b) {
            return out;
        }
    }
    let rows = lambda.rows() + mu.rows();
    let mut current = lambda.padded(rows);
    // counts[k][r]: number of letters k+1 in row r
    let mut counts = vec![vec![0usize; rows]; mu.rows()];
    add_strip(0, mu, shape, &mut current, &mut counts, &mut out);
    out
}

fn add_strip(
    letter: usize,
    mu: &Partition,
    shape: Option<BoxShape>,
    current: &mut Vec<usize>,
    counts: &mut Vec<Vec<usize>>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if letter == mu.rows() {
        *out.entry(Partition::from_unsorted(current.clone())).or_insert(0) += 1;
        return;
    }
    let base = current.clone();
    place_row(0, mu.part(letter), letter, mu, shape, &base, current, counts, out);
}

/// Distributes the remaining copies of `letter` over rows `row..` as a
/// horizontal strip on top of `base`.
#[allow(clippy::too_many_arguments)]
fn place_row(
    row: usize,
    remaining: usize,
    letter: usize,
    mu: &Partition,
    shape: Option<BoxShape>,
    base: &[usize],
    current: &mut Vec<usize>,
    counts: &mut Vec<Vec<usize>>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if remaining == 0 {
        add_strip(letter + 1, mu, shape, current, counts, out);
        return;
    }
    if row == current.len() {
        return;
    }
    // horizontal strip: row may not extend past the old length of the row above
    let cap = if row == 0 {
        remaining
    } else {
        base[row - 1] - base[row]
    };
    let placed_above: usize = counts[letter][..row].iter().sum();
    let lattice_cap = if letter == 0 {
        remaining
    } else {
        let prev_above: usize = counts[letter - 1][..row].iter().sum();
        prev_above.saturating_sub(placed_above)
    };
    let max_here = cap.min(remaining).min(lattice_cap);
    for k in (0..=max_here).rev() {
        let new_len = base[row] + k;
        if let Some(b) = shape {
            if k > 0 && (new_len > b.cols || row >= b.rows) {
                continue;
            }
        }
        current[row] = new_len;
        counts[letter][row] = k;
        place_row(row + 1, remaining - k, letter, mu, shape, base, current, counts, out);
        counts[letter][row] = 0;
        current[row] = base[row];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn box_enumeration_order() {
        let b = BoxShape::new(2, 2).unwrap();
        let got: Vec<String> = enumerate_box(b).iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["-", "1", "2", "1,1", "2,1", "2,2"]);
        assert_eq!(enumerate_box(BoxShape::new(1, 1).unwrap()), vec![p("-"), p("1")]);
        assert_eq!(enumerate_box(BoxShape::new(2, 3).unwrap()).len(), 10);
    }

    #[test]
    fn box_counts_are_binomial() {
        for t in 1..=6 {
            for w in 1..=6 {
                let b = BoxShape::new(t, w).unwrap();
                assert_eq!(enumerate_box(b).len(), binomial(t + w, t));
            }
        }
    }

    #[test]
    fn conjugates() {
        assert_eq!(p("-").conjugate(), p("-"));
        assert_eq!(p("2,1").conjugate(), p("2,1"));
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
        for n in 0..=12 {
            for a in all_partitions(n) {
                assert_eq!(a.conjugate().conjugate(), a);
            }
        }
    }

    #[test]
    fn text_form() {
        assert_eq!(p("2,1").parts(), &[2, 1]);
        assert!(p("-").is_empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p("3,0").to_string(), "3");
    }

    #[test]
    fn complement_in_box() {
        let b = BoxShape::new(2, 3).unwrap();
        assert_eq!(p("2").complement(b), p("3,1"));
        assert_eq!(p("-").complement(b), p("3,3"));
        assert_eq!(b.full().complement(b), p("-"));
    }

    #[test]
    fn lr_small_cases() {
        let one = p("1");
        let got = lr_coefficients(&one, &one, None);
        assert_eq!(got.len(), 2);
        assert_eq!(got[&p("2")], 1);
        assert_eq!(got[&p("1,1")], 1);

        let lam = p("3,1");
        let got = lr_coefficients(&lam, &p("-"), None);
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![(lam, 1)]);

        let b = BoxShape::new(2, 2).unwrap();
        assert!(lr_coefficients(&p("2"), &p("1,1"), Some(b)).is_empty());

        // s21 * s21 has c^{321}=2
        let got = lr_coefficients(&p("2,1"), &p("2,1"), None);
        assert_eq!(got[&p("3,2,1")], 2);
        assert_eq!(got.values().sum::<u64>(), 8);
    }

    #[test]
    fn lr_grading_and_symmetry() {
        for a in 0..=4 {
            for b in 0..=4 {
                for lam in all_partitions(a) {
                    for mu in all_partitions(b) {
                        let lm = lr_coefficients(&lam, &mu, None);
                        assert_eq!(lm, lr_coefficients(&mu, &lam, None));
                        assert!(lm.keys().all(|nu| nu.size() == a + b));
                    }
                }
            }
        }
    }

    #[test]
    fn boxed_lr_equals_filtered_lr() {
        for shape in [BoxShape { rows: 2, cols: 2 }, BoxShape { rows: 2, cols: 3 }, BoxShape { rows: 3, cols: 3 }] {
            let basis = enumerate_box(shape);
            for lam in &basis {
                for mu in &basis {
                    let mut full = lr_coefficients(lam, mu, None);
                    full.retain(|nu, _| nu.fits_in(shape));
                    assert_eq!(lr_coefficients(lam, mu, Some(shape)), full);
                }
            }
        }
    }
}
