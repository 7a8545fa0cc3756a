//! The lattice `K(G) = K(T*G) = K(E(H))` with basis `[Sigma^alpha tau]`, and
//! the flop homomorphism sending `[Sigma^alpha tau+]` to `[Sigma^alpha tau*]`.
//!
//! Classes are expanded by computing their Chern character, then solving
//! against the Chern characters of the basis. Genuine K-classes always land
//! on integer coordinates; anything else is reported as
//! [`Error::NonIntegralExpansion`] and never rounded.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chow::{SchubertRing, SchubertVector};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::linalg::{IntegerMatrix, RationalMatrix};
use crate::partitions::{BoxShape, Partition};

/// Homogeneous bundles the expression language knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseBundle {
    /// The tautological subbundle `tau`.
    Taut,
    TautDual,
    /// The universal quotient `q`.
    Quot,
    QuotDual,
    /// `Theta_G = Hom(tau, q)`.
    Tangent,
    /// `Omega_G = Hom(q, tau)`.
    Cotangent,
}

impl BaseBundle {
    fn name(self) -> &'static str {
        match self {
            BaseBundle::Taut => "tau",
            BaseBundle::TautDual => "tau*",
            BaseBundle::Quot => "q",
            BaseBundle::QuotDual => "q*",
            BaseBundle::Tangent => "T",
            BaseBundle::Cotangent => "Omega",
        }
    }
}

impl FromStr for BaseBundle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "tau" => BaseBundle::Taut,
            "tau*" => BaseBundle::TautDual,
            "q" => BaseBundle::Quot,
            "q*" => BaseBundle::QuotDual,
            "T" | "Theta" => BaseBundle::Tangent,
            "Omega" => BaseBundle::Cotangent,
            other => return Err(Error::Parse(format!("unknown bundle `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Schur(Partition, BaseBundle),
    Exterior(usize, BaseBundle),
    /// `O(k)`, with `O(-1) = wedge^t tau`.
    Line(i64),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Schur(p, b) if p.parts() == [1] => write!(f, "{}", b.name()),
            Factor::Schur(p, b) => write!(f, "S[{p}]({})", b.name()),
            Factor::Exterior(i, b) => write!(f, "wedge{i}({})", b.name()),
            Factor::Line(k) => write!(f, "O({k})"),
        }
    }
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = |s: &str| -> Result<String> {
            let open = s.find('(').ok_or_else(|| Error::Parse(format!("missing `(` in `{s}`")))?;
            let body = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("missing `)` in `{s}`")))?;
            Ok(body.to_string())
        };
        if s == "O" {
            return Ok(Factor::Line(0));
        }
        if s.starts_with("O(") {
            let k = inner(s)?
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad twist in `{s}`")))?;
            return Ok(Factor::Line(k));
        }
        if let Some(rest) = s.strip_prefix("wedge") {
            let open = rest.find('(').ok_or_else(|| Error::Parse(format!("missing `(` in `{s}`")))?;
            let i = rest[..open]
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad exterior degree in `{s}`")))?;
            return Ok(Factor::Exterior(i, inner(rest)?.parse()?));
        }
        if let Some(rest) = s.strip_prefix("S[") {
            let close = rest.find(']').ok_or_else(|| Error::Parse(format!("missing `]` in `{s}`")))?;
            let p: Partition = rest[..close].parse()?;
            return Ok(Factor::Schur(p, inner(&rest[close + 1..])?.parse()?));
        }
        Ok(Factor::Schur(Partition::from_unsorted(vec![1]), s.parse()?))
    }
}

/// One integer multiple of a tensor product of factors. An empty product is `O`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub factors: Vec<Factor>,
}

/// A formal integer combination of tensor products of tautological bundles.
///
/// Text form: terms joined by `+`/`-`, an optional `n*` coefficient, factors
/// joined by `&`. Factors are `O`, `O(k)`, `wedgeI(B)`, `S[parts](B)` or a bare
/// bundle `B` in `tau, tau*, q, q*, T, Omega`. Example:
/// `3*O - O(-1) + wedge2(T) & O(-1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassExpr {
    pub terms: Vec<Term>,
}

impl ClassExpr {
    pub fn single(factors: Vec<Factor>) -> Self {
        ClassExpr { terms: vec![Term { coeff: BigInt::one(), factors }] }
    }

    pub fn scaled(mut self, c: i64) -> Self {
        for t in &mut self.terms {
            t.coeff *= c;
        }
        self
    }

    pub fn plus(mut self, other: ClassExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let sign = if t.coeff.is_negative() { "-" } else { "+" };
            if i > 0 || t.coeff.is_negative() {
                write!(f, "{}{sign} ", if i > 0 { " " } else { "" })?;
            }
            let mag = t.coeff.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if t.factors.is_empty() {
                write!(f, "O")?;
            }
            let parts: Vec<String> = t.factors.iter().map(Factor::to_string).collect();
            write!(f, "{}", parts.join(" & "))?;
        }
        Ok(())
    }
}

impl FromStr for ClassExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        let mut sign = 1i64;
        let bytes: Vec<char> = s.chars().collect();
        let mut pieces: Vec<(i64, String)> = Vec::new();
        for (i, &c) in bytes.iter().enumerate() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                '+' | '-' if depth == 0 => {
                    let chunk: String = bytes[start..i].iter().collect();
                    if !chunk.trim().is_empty() {
                        pieces.push((sign, chunk));
                    }
                    sign = if c == '-' { -1 } else { 1 };
                    start = i + 1;
                }
                _ => {}
            }
        }
        let chunk: String = bytes[start..].iter().collect();
        if !chunk.trim().is_empty() {
            pieces.push((sign, chunk));
        }
        if pieces.is_empty() {
            return Err(Error::Parse("empty class expression".into()));
        }
        for (sign, chunk) in pieces {
            let chunk = chunk.trim();
            let (coeff, rest) = match chunk.split_once('*') {
                Some((c, r)) if c.trim().chars().all(|ch| ch.is_ascii_digit()) && !c.trim().is_empty() => {
                    (c.trim().parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))?, r)
                }
                _ if chunk.chars().all(|ch| ch.is_ascii_digit()) => {
                    (chunk.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))?, "O")
                }
                _ => (BigInt::one(), chunk),
            };
            let factors = rest
                .split('&')
                .map(str::parse::<Factor>)
                .collect::<Result<Vec<_>>>()?;
            terms.push(Term { coeff: coeff * sign, factors });
        }
        Ok(ClassExpr { terms })
    }
}

/// Integer coordinates in the basis `[Sigma^alpha tau]`, canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KVector {
    shape: BoxShape,
    coords: Vec<BigInt>,
}

impl KVector {
    pub fn new(shape: BoxShape, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != shape.count() {
            return Err(Error::DimensionMismatch(format!(
                "K({shape}) has rank {}, got {} coordinates",
                shape.count(),
                coords.len()
            )));
        }
        Ok(KVector { shape, coords })
    }

    pub fn unit(shape: BoxShape, index: usize) -> Self {
        let mut coords = vec![BigInt::zero(); shape.count()];
        coords[index] = BigInt::one();
        KVector { shape, coords }
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn coords_i64(&self) -> Vec<i64> {
        use num_traits::ToPrimitive;
        self.coords.iter().map(|c| c.to_i64().expect("coordinate fits in i64")).collect()
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = crate::partitions::enumerate_box(self.shape);
        let mut first = true;
        for (c, p) in self.coords.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "[S{p}]")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Per-box expansion context: Schubert ring, basis Chern characters and
/// their inverse.
#[derive(Debug)]
pub struct KTheory {
    shape: BoxShape,
    ring: Arc<SchubertRing>,
    ch_inverse: RationalMatrix,
    ch_tau: SchubertVector,
}

impl KTheory {
    pub fn new(shape: BoxShape) -> Self {
        Self::with_strategy(shape, Strategy::default())
    }

    pub fn with_strategy(shape: BoxShape, strategy: Strategy) -> Self {
        let ring = Arc::new(SchubertRing::with_strategy(shape, strategy));
        let ch_inverse = ring
            .ch_matrix(strategy)
            .inverse()
            .expect("Chern character matrix of a Grassmannian is invertible");
        let ch_tau = ring.ch_tau();
        KTheory { shape, ring, ch_inverse, ch_tau }
    }

    /// Process-wide context for `shape`, built on first use.
    pub fn shared(shape: BoxShape) -> Arc<KTheory> {
        static CACHE: OnceLock<Mutex<HashMap<BoxShape, Arc<KTheory>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(k) = cache.lock().expect("K-theory cache poisoned").get(&shape) {
            return k.clone();
        }
        let k = Arc::new(KTheory::new(shape));
        cache.lock().expect("K-theory cache poisoned").entry(shape).or_insert(k).clone()
    }

    pub fn shape(&self) -> BoxShape {
        self.shape
    }

    pub fn ring(&self) -> &SchubertRing {
        &self.ring
    }

    pub fn basis(&self) -> &[Partition] {
        self.ring.basis()
    }

    pub fn ch_base(&self, bundle: BaseBundle) -> SchubertVector {
        let h = BigRational::from_integer(BigInt::from(self.shape.h()));
        let ch_q = || SchubertVector::scalar(self.shape, h.clone()).sub(&self.ch_tau).expect("same box");
        match bundle {
            BaseBundle::Taut => self.ch_tau.clone(),
            BaseBundle::TautDual => self.ch_tau.dual(),
            BaseBundle::Quot => ch_q(),
            BaseBundle::QuotDual => ch_q().dual(),
            BaseBundle::Tangent => self.mul(&self.ch_tau.dual(), &ch_q()),
            BaseBundle::Cotangent => self.mul(&self.ch_tau, &ch_q().dual()),
        }
    }

    fn mul(&self, a: &SchubertVector, b: &SchubertVector) -> SchubertVector {
        self.ring.multiply(a, b).expect("same box")
    }

    pub fn ch_factor(&self, factor: &Factor) -> SchubertVector {
        match factor {
            Factor::Line(k) => self.ring.ch_line(*k),
            Factor::Schur(p, b) => self.ring.ch_schur(p, &self.ch_base(*b)),
            Factor::Exterior(i, b) => {
                self.ring.ch_schur(&Partition::from_unsorted(vec![1; *i]), &self.ch_base(*b))
            }
        }
    }

    pub fn ch_expr(&self, expr: &ClassExpr) -> SchubertVector {
        let mut total = SchubertVector::zero(self.shape);
        for term in &expr.terms {
            let prod = term
                .factors
                .iter()
                .fold(SchubertVector::one(self.shape), |acc, f| self.mul(&acc, &self.ch_factor(f)));
            total = total
                .add(&prod.scale(&BigRational::from_integer(term.coeff.clone())))
                .expect("same box");
        }
        total
    }

    /// Solves `ch_matrix * x = ch` and insists on an integral solution.
    pub fn expand_ch(&self, ch: &SchubertVector, label: &str) -> Result<KVector> {
        let x = self.ch_inverse.mul_vec(&ch.to_dense())?;
        if let Some(bad) = x.iter().find(|c| !c.is_integer()) {
            NON_INTEGRAL.fetch_add(1, Ordering::Relaxed);
            return Err(Error::NonIntegralExpansion {
                expr: label.to_string(),
                detail: format!("coordinate {bad}"),
            });
        }
        KVector::new(self.shape, x.iter().map(BigRational::to_integer).collect())
    }

    pub fn expand(&self, expr: &ClassExpr) -> Result<KVector> {
        self.expand_ch(&self.ch_expr(expr), &expr.to_string())
    }

    /// `[O(k)]`.
    pub fn line_bundle_class(&self, k: i64) -> Result<KVector> {
        self.expand(&ClassExpr::single(vec![Factor::Line(k)]))
    }

    /// `[Sigma^alpha tau*]`.
    pub fn dual_class(&self, alpha: &Partition) -> Result<KVector> {
        if !alpha.fits_in(self.shape) {
            return Err(Error::OutsideBox { partition: alpha.to_string(), shape: self.shape.to_string() });
        }
        self.expand(&ClassExpr::single(vec![Factor::Schur(alpha.clone(), BaseBundle::TautDual)]))
    }

    /// Matrix of the flop map in canonical bases: column `alpha` is
    /// `[Sigma^alpha tau*]`. The same matrix represents the map on `E(H)` and
    /// on `T*G`, whose K-groups are identified with `K(G)` by pullback.
    pub fn flop_matrix(&self, strategy: Strategy) -> Result<IntegerMatrix> {
        let columns = strategy.map(self.basis(), |alpha| self.dual_class(alpha).map(KVector::into_coords));
        let columns = columns.into_iter().collect::<Result<Vec<_>>>()?;
        IntegerMatrix::from_columns(self.shape.count(), &columns)
    }

    /// Checks `Sigma^alpha tau* = Sigma^beta tau (x) O(c)` in two ways for
    /// every alpha in the box: with `beta` the complement of alpha in a
    /// `t x alpha_1` rectangle and `c = alpha_1`, and with `beta` the
    /// complement in the whole box and the single twist `c = h - t`.
    pub fn twist_check(&self) -> Result<TwistReport> {
        let t = self.shape.rows;
        let w = self.shape.cols;
        let mut per_alpha = true;
        let mut uniform = true;
        for alpha in self.basis() {
            let dual = self.dual_class(alpha)?;
            let narrow = alpha.complement(BoxShape { rows: t, cols: alpha.cols() });
            let local = self.expand(&ClassExpr::single(vec![
                Factor::Schur(narrow, BaseBundle::Taut),
                Factor::Line(alpha.cols() as i64),
            ]))?;
            per_alpha &= local == dual;
            let wide = alpha.complement(self.shape);
            let global = self.expand(&ClassExpr::single(vec![
                Factor::Schur(wide, BaseBundle::Taut),
                Factor::Line(w as i64),
            ]))?;
            uniform &= global == dual;
        }
        Ok(TwistReport { per_alpha, uniform })
    }
}

/// Outcome of [`KTheory::twist_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    /// `Sigma^alpha tau* = Sigma^{alpha^c} tau (x) O(alpha_1)` for every alpha.
    pub per_alpha: bool,
    /// `{Sigma^alpha tau*} = {Sigma^alpha tau} (x) O(h - t)` as sets.
    pub uniform: bool,
}

static NON_INTEGRAL: AtomicUsize = AtomicUsize::new(0);

/// How many expansions in this process have failed the integrality check.
pub fn non_integral_count() -> usize {
    NON_INTEGRAL.load(Ordering::Relaxed)
}

pub fn expand_in_basis(expr: &ClassExpr, shape: BoxShape) -> Result<KVector> {
    KTheory::shared(shape).expand(expr)
}

pub fn line_bundle_class(k: i64, shape: BoxShape) -> Result<KVector> {
    KTheory::shared(shape).line_bundle_class(k)
}

pub fn dual_class(alpha: &Partition, shape: BoxShape) -> Result<KVector> {
    KTheory::shared(shape).dual_class(alpha)
}

pub fn flop_matrix(shape: BoxShape) -> Result<IntegerMatrix> {
    KTheory::shared(shape).flop_matrix(Strategy::default())
}

/// `det = +-1`.
pub fn is_unimodular(m: &IntegerMatrix) -> Result<bool> {
    Ok(m.determinant()?.abs().is_one())
}

pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    m.smith_invariants()
}

/// Serialized form of a lattice map: integers as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixReport {
    #[serde(rename = "box")]
    pub shape: [usize; 2],
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub det: String,
    pub snf: Vec<String>,
}

impl MatrixReport {
    pub fn new(shape: BoxShape, m: &IntegerMatrix) -> Result<Self> {
        Ok(MatrixReport {
            shape: [shape.rows, shape.cols],
            basis: crate::partitions::enumerate_box(shape).iter().map(Partition::to_string).collect(),
            matrix: m.to_rows().iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect(),
            det: m.determinant()?.to_string(),
            snf: m.smith_invariants().iter().map(BigInt::to_string).collect(),
        })
    }

    pub fn to_matrix(&self) -> Result<IntegerMatrix> {
        let rows = self
            .matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        IntegerMatrix::from_rows(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(r: usize, c: usize) -> BoxShape {
        BoxShape::new(r, c).unwrap()
    }

    fn v(shape: BoxShape, c: &[i64]) -> KVector {
        KVector::new(shape, c.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    fn e(s: &str) -> ClassExpr {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let x = e("3*O - O(-1) + wedge2(T) & O(-1) - S[2,1](tau*)");
        assert_eq!(x.terms.len(), 4);
        assert_eq!(x.terms[1].coeff, BigInt::from(-1));
        assert_eq!(x.terms[2].factors, vec![Factor::Exterior(2, BaseBundle::Tangent), Factor::Line(-1)]);
        assert_eq!(x.to_string(), "3*O(0) - O(-1) + wedge2(T) & O(-1) - S[2,1](tau*)");
        assert_eq!(e(&x.to_string()), x);
        assert_eq!(e("tau*").terms[0].factors, vec![Factor::Schur("1".parse().unwrap(), BaseBundle::TautDual)]);
        assert_eq!(e("2").terms[0].coeff, BigInt::from(2));
        assert!("wedge(T)".parse::<ClassExpr>().is_err());
        assert!("S[1,2](tau)".parse::<ClassExpr>().is_err());
        assert!("foo".parse::<ClassExpr>().is_err());
    }

    #[test]
    fn line_bundles_on_projective_spaces() {
        assert_eq!(line_bundle_class(0, b(1, 2)).unwrap(), v(b(1, 2), &[1, 0, 0]));
        assert_eq!(line_bundle_class(1, b(1, 2)).unwrap(), v(b(1, 2), &[3, -3, 1]));
        assert_eq!(line_bundle_class(-1, b(1, 2)).unwrap(), v(b(1, 2), &[0, 1, 0]));
        assert_eq!(line_bundle_class(1, b(1, 1)).unwrap(), v(b(1, 1), &[2, -1]));
        assert_eq!(line_bundle_class(2, b(1, 2)).unwrap(), v(b(1, 2), &[6, -8, 3]));
    }

    #[test]
    fn example_classes_on_p2() {
        let p2 = b(1, 2);
        assert_eq!(expand_in_basis(&e("O"), p2).unwrap(), v(p2, &[1, 0, 0]));
        assert_eq!(expand_in_basis(&e("O(1)"), p2).unwrap(), v(p2, &[3, -3, 1]));
        // tangent twisted down: 3[O] - [O(-1)]
        assert_eq!(expand_in_basis(&e("T & O(-1)"), p2).unwrap(), v(p2, &[3, -1, 0]));
    }

    #[test]
    fn dual_classes() {
        assert_eq!(dual_class(&Partition::empty(), b(2, 2)).unwrap(), KVector::unit(b(2, 2), 0));
        assert_eq!(dual_class(&"1".parse().unwrap(), b(1, 1)).unwrap(), v(b(1, 1), &[2, -1]));
        assert_eq!(dual_class(&"1".parse().unwrap(), b(1, 2)).unwrap(), v(b(1, 2), &[3, -3, 1]));
        assert!(dual_class(&"3".parse().unwrap(), b(1, 2)).is_err());
    }

    #[test]
    fn flop_matrix_examples() {
        let m = flop_matrix(b(1, 1)).unwrap();
        assert_eq!(m, IntegerMatrix::from_rows(&[vec![1, 2], vec![0, -1]]).unwrap());
        let m = flop_matrix(b(1, 2)).unwrap();
        assert_eq!(m.column(2), [6, -8, 3].map(BigInt::from).to_vec());
        let m = flop_matrix(b(2, 2)).unwrap();
        assert_eq!(m.rows(), 6);
        assert!(is_unimodular(&m).unwrap());
        assert!(is_unimodular(&IntegerMatrix::identity(3)).unwrap());
        assert!(!is_unimodular(&IntegerMatrix::diagonal(&[1, 1, 2])).unwrap());
        assert!(is_unimodular(&IntegerMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn flop_is_an_involution() {
        for (t, w) in [(1, 1), (1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 3)] {
            let m = flop_matrix(b(t, w)).unwrap();
            assert!(is_unimodular(&m).unwrap(), "{t}x{w}");
            assert_eq!(m.mul(&m).unwrap(), IntegerMatrix::identity(m.rows()), "{t}x{w}");
        }
    }

    #[test]
    fn basis_round_trip() {
        let shape = b(2, 3);
        let k = KTheory::shared(shape);
        for (i, alpha) in k.basis().iter().enumerate() {
            let x = k.expand(&ClassExpr::single(vec![Factor::Schur(alpha.clone(), BaseBundle::Taut)])).unwrap();
            assert_eq!(x, KVector::unit(shape, i));
        }
    }

    #[test]
    fn both_twist_readings_hold() {
        for (t, w) in [(1, 2), (2, 2), (2, 3), (3, 3)] {
            let r = KTheory::shared(b(t, w)).twist_check().unwrap();
            assert!(r.per_alpha && r.uniform, "{t}x{w}: {r:?}");
        }
    }

    #[test]
    fn restriction_to_the_central_fibre_vanishes() {
        // 0 -> S -> S -> S|_{T*G} -> 0 on the one-parameter deformation
        let k = KTheory::shared(b(2, 2));
        for alpha in k.basis() {
            let s = ClassExpr::single(vec![Factor::Schur(alpha.clone(), BaseBundle::Taut)]);
            let restricted = s.clone().plus(s.scaled(-1));
            assert!(k.expand(&restricted).unwrap().coords().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn non_integral_classes_are_rejected() {
        let k = KTheory::shared(b(1, 2));
        let half_point = SchubertVector::from_terms(
            b(1, 2),
            [("2".parse().unwrap(), BigRational::new(1.into(), 2.into()))],
        )
        .unwrap();
        assert!(matches!(k.expand_ch(&half_point, "half a point"), Err(Error::NonIntegralExpansion { .. })));
    }

    #[test]
    fn matrix_report_round_trips() {
        let shape = b(1, 2);
        let report = MatrixReport::new(shape, &flop_matrix(shape).unwrap()).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with(r#"{"box":[1,2],"basis":["-","1","2"],"matrix":[["1","3","6"]"#));
        let back: MatrixReport = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
        assert_eq!(back.to_matrix().unwrap(), flop_matrix(shape).unwrap());
        assert_eq!(back.det, "-1");
    }
}
