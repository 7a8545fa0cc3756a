//! The main-component correspondence on `T*P^2` at the level of K-theory.
//!
//! For `t = 1` the fibre product of `T*G` and `T*G+` over the nilpotent cone has
//! two components. Pushing and pulling through the main one sends
//! `[O+(-1)], [O+], [O+(1)]` to `[O(1)], [O], [O(-1) (x) I]`, where `I` is the
//! ideal sheaf of the zero section. The image has index 2, so the
//! correspondence is not a lattice isomorphism.
//!
//! Matrices are presented in the basis `([O(1)], [O], [O(-1)])` of the
//! target (and `([O+(-1)], [O+], [O+(1)])` of the source); the conversion to
//! the canonical basis `([O], [tau], [Sigma^2 tau])` is unimodular and is
//! exposed alongside.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kgroup::{BaseBundle, ClassExpr, Factor, KTheory, KVector};
use crate::linalg::IntegerMatrix;
use crate::partitions::BoxShape;

/// `[I (x) O(-1)]` on `T*P^{h-1}`, from the Koszul resolution of the zero
/// section: `sum_{i >= 1} (-1)^{i+1} [pi^*(wedge^i Theta (x) O(-1))]`.
pub fn koszul_ideal_class(h: usize) -> Result<KVector> {
    if h < 2 {
        return Err(Error::InvalidParameter(format!("Koszul class needs h >= 2, got {h}")));
    }
    let shape = BoxShape::grassmannian(1, h)?;
    let mut expr = ClassExpr::default();
    for i in 1..h {
        let sign = if i % 2 == 1 { 1 } else { -1 };
        expr = expr.plus(ClassExpr::single(twisted_wedge_tangent(i)).scaled(sign));
    }
    KTheory::shared(shape).expand(&expr)
}

/// Factors of `wedge^i Theta (x) O(-1)`.
pub fn twisted_wedge_tangent(i: usize) -> Vec<Factor> {
    vec![Factor::Exterior(i, BaseBundle::Tangent), Factor::Line(-1)]
}

/// Columns `[O(k)]` for the given twists, in canonical coordinates of `shape`.
pub fn line_basis(shape: BoxShape, twists: &[i64]) -> Result<IntegerMatrix> {
    let k = KTheory::shared(shape);
    let cols = twists
        .iter()
        .map(|&t| k.line_bundle_class(t).map(KVector::into_coords))
        .collect::<Result<Vec<_>>>()?;
    IntegerMatrix::from_columns(shape.count(), &cols)
}

/// Target presentation basis `([O(1)], [O], [O(-1)])`.
pub const TARGET_TWISTS: [i64; 3] = [1, 0, -1];
/// Source presentation basis `([O+(-1)], [O+], [O+(1)])`.
pub const SOURCE_TWISTS: [i64; 3] = [-1, 0, 1];

fn p2() -> BoxShape {
    BoxShape { rows: 1, cols: 2 }
}

/// Rewrites a canonical-basis class on `P^2` in the basis `([O(1)], [O], [O(-1)])`.
pub fn to_line_basis(v: &KVector) -> Result<Vec<BigInt>> {
    line_basis(p2(), &TARGET_TWISTS)?.unimodular_inverse()?.mul_vec(v.coords())
}

/// Matrix of the main-component map in the presentation bases.
pub fn psi_prime_matrix() -> Result<IntegerMatrix> {
    let k = KTheory::shared(p2());
    let images = [
        k.line_bundle_class(1)?,
        k.line_bundle_class(0)?,
        koszul_ideal_class(3)?,
    ];
    let cols = images.iter().map(to_line_basis).collect::<Result<Vec<_>>>()?;
    IntegerMatrix::from_columns(3, &cols)
}

/// The same map between the canonical bases `([O+], [tau+], [Sigma^2 tau+])`
/// and `([O], [tau], [Sigma^2 tau])`.
pub fn psi_prime_matrix_canonical() -> Result<IntegerMatrix> {
    let target = line_basis(p2(), &TARGET_TWISTS)?;
    let source_inv = line_basis(p2(), &SOURCE_TWISTS)?.unimodular_inverse()?;
    target.mul(&psi_prime_matrix()?)?.mul(&source_inv)
}

/// Index of the column lattice, or `None` when it has infinite index.
pub fn image_index(m: &IntegerMatrix) -> Result<Option<BigInt>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let d = m.smith_invariants();
    if d.iter().any(Zero::is_zero) {
        return Ok(None);
    }
    Ok(Some(d.iter().product()))
}

/// Everything the `counterexample` command reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub basis: Vec<String>,
    pub source_basis: Vec<String>,
    pub images: Vec<Vec<String>>,
    pub matrix: Vec<Vec<String>>,
    /// Columns: the presentation basis in canonical coordinates.
    pub change_of_basis: Vec<Vec<String>>,
    pub snf: Vec<String>,
    pub index: serde_json::Value,
    pub isomorphism: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    Lines,
    Canonical,
}

pub fn counterexample_report(presentation: Presentation) -> Result<CounterexampleReport> {
    let (m, basis, source_basis) = match presentation {
        Presentation::Lines => (
            psi_prime_matrix()?,
            ["O(1)", "O", "O(-1)"],
            ["O+(-1)", "O+", "O+(1)"],
        ),
        Presentation::Canonical => (
            psi_prime_matrix_canonical()?,
            ["O", "tau", "S[2](tau)"],
            ["O+", "tau+", "S[2](tau+)"],
        ),
    };
    let strings = |m: &IntegerMatrix| -> Vec<Vec<String>> {
        m.to_rows().iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect()
    };
    let index = image_index(&m)?;
    let change = line_basis(p2(), &TARGET_TWISTS)?;
    Ok(CounterexampleReport {
        basis: basis.map(String::from).to_vec(),
        source_basis: source_basis.map(String::from).to_vec(),
        images: strings(&m.transpose()),
        matrix: strings(&m),
        change_of_basis: strings(&change),
        snf: m.smith_invariants().iter().map(BigInt::to_string).collect(),
        isomorphism: index.as_ref().is_some_and(|i| *i == BigInt::from(1)),
        index: match index {
            Some(i) => i.to_u64().map_or_else(|| i.to_string().into(), serde_json::Value::from),
            None => "infinite".into(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgroup::flop_matrix;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn koszul_class_on_t_star_p2() {
        let c = koszul_ideal_class(3).unwrap();
        assert_eq!(to_line_basis(&c).unwrap(), ints(&[-3, 6, -2]));
    }

    #[test]
    fn koszul_intermediate_terms() {
        let k = KTheory::shared(p2());
        let first = k.expand(&ClassExpr::single(twisted_wedge_tangent(1))).unwrap();
        assert_eq!(to_line_basis(&first).unwrap(), ints(&[0, 3, -1]));
        let second = k.expand(&ClassExpr::single(twisted_wedge_tangent(2))).unwrap();
        assert_eq!(to_line_basis(&second).unwrap(), ints(&[3, -3, 1]));
    }

    #[test]
    fn koszul_on_p1() {
        // [O(1)] = 2[O] - [O(-1)] in the basis ([O], [tau])
        assert_eq!(koszul_ideal_class(2).unwrap().coords(), ints(&[2, -1]));
        assert!(koszul_ideal_class(1).is_err());
    }

    #[test]
    fn psi_prime_columns_and_index() {
        let m = psi_prime_matrix().unwrap();
        assert_eq!(m.column(0), ints(&[1, 0, 0]));
        assert_eq!(m.column(1), ints(&[0, 1, 0]));
        assert_eq!(m.column(2), ints(&[-3, 6, -2]));
        assert_eq!(m.smith_invariants(), ints(&[1, 1, 2]));
        assert_eq!(image_index(&m).unwrap(), Some(BigInt::from(2)));
    }

    #[test]
    fn index_does_not_depend_on_presentation() {
        let change = line_basis(p2(), &TARGET_TWISTS).unwrap();
        assert_eq!(change.determinant().unwrap().magnitude().to_string(), "1");
        let canon = psi_prime_matrix_canonical().unwrap();
        assert_eq!(image_index(&canon).unwrap(), Some(BigInt::from(2)));
        assert_eq!(canon.smith_invariants(), ints(&[1, 1, 2]));
    }

    #[test]
    fn index_examples() {
        assert_eq!(image_index(&IntegerMatrix::identity(3)).unwrap(), Some(BigInt::from(1)));
        assert_eq!(image_index(&IntegerMatrix::diagonal(&[1, 0])).unwrap(), None);
        let flop = flop_matrix(p2()).unwrap();
        assert_eq!(image_index(&flop).unwrap(), Some(BigInt::from(1)));
        assert!(image_index(&IntegerMatrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn report_in_both_presentations() {
        let r = counterexample_report(Presentation::Lines).unwrap();
        assert_eq!(r.images[2], ["-3", "6", "-2"]);
        assert_eq!(r.snf, ["1", "1", "2"]);
        assert_eq!(r.index, serde_json::json!(2));
        assert!(!r.isomorphism);
        let c = counterexample_report(Presentation::Canonical).unwrap();
        assert_eq!(c.snf, r.snf);
        assert_eq!(c.index, r.index);
    }
}
