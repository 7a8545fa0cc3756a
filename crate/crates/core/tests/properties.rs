use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use kflop::bott::{bott_cohomology, Weight};
use kflop::kgroup::{line_bundle_class, ClassExpr, KTheory};
use kflop::partitions::lr_coefficients;
use kflop::weyl::{adjacent_word, apply_word, chamber_sort, word_product, ChamberVector, Permutation};
use kflop::{BoxShape, Partition};

fn partition(max_part: usize, max_rows: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_rows).prop_map(Partition::from_unsorted)
}

fn block(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, n).prop_map(|mut v| {
        v.sort_unstable_by(|x, y| y.cmp(x));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lr_is_commutative_and_graded(a in partition(3, 3), b in partition(3, 3)) {
        let ab = lr_coefficients(&a, &b, None);
        prop_assert_eq!(&ab, &lr_coefficients(&b, &a, None));
        for nu in ab.keys() {
            prop_assert_eq!(nu.size(), a.size() + b.size());
            prop_assert!(nu.contains(&a) && nu.contains(&b));
        }
    }

    #[test]
    fn serre_duality_on_g25(a in block(2), b in block(3)) {
        let w = Weight::new(a, b).unwrap();
        let (c, d) = (bott_cohomology(&w), bott_cohomology(&w.serre_dual()));
        for i in 0..=6 {
            prop_assert_eq!(c.dim_in(i), d.dim_in(6 - i));
        }
    }

    #[test]
    fn words_multiply_back(line in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle()) {
        let sigma = Permutation::from_one_line(&line).unwrap();
        let w = adjacent_word(&sigma);
        prop_assert_eq!(word_product(6, &w), sigma.clone());
        prop_assert_eq!(w.len(), sigma.inversions());
    }

    #[test]
    fn chamber_sort_lands_in_dominant_chamber(v in prop::collection::hash_set(-100i64..100, 1..8)) {
        let v = ChamberVector(v.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect());
        let (_, w) = chamber_sort(&v).unwrap();
        prop_assert!(ChamberVector(apply_word(&v.0, &w)).is_strictly_decreasing());
    }

    #[test]
    fn line_bundles_multiply(j in -3i64..=3, k in -3i64..=3) {
        let shape = BoxShape::grassmannian(2, 4).unwrap();
        let expr: ClassExpr = format!("O({j}) & O({k})").parse().unwrap();
        let product = KTheory::shared(shape).expand(&expr).unwrap();
        prop_assert_eq!(product, line_bundle_class(j + k, shape).unwrap());
    }
}
