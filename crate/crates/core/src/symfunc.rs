//! Schur functions expanded in power sums.
//!
//! `s_alpha = sum_rho chi^alpha(rho) / z_rho * p_rho`, with the symmetric group
//! characters computed by the Murnaghan–Nakayama rule on beta-sets.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::partitions::{all_partitions, Partition};

/// Irreducible character `chi^lambda` of `S_n` evaluated on cycle type `rho`.
pub fn character(lambda: &Partition, rho: &Partition) -> i64 {
    if lambda.size() != rho.size() {
        return 0;
    }
    let len = lambda.rows();
    let beta: BTreeSet<usize> = (0..len).map(|i| lambda.part(i) + len - 1 - i).collect();
    mn_rule(&beta, rho.parts())
}

fn mn_rule(beta: &BTreeSet<usize>, hooks: &[usize]) -> i64 {
    let Some((&r, rest)) = hooks.split_first() else {
        return 1;
    };
    let mut total = 0;
    for &b in beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.range(b - r + 1..b).count();
        let mut next = beta.clone();
        next.remove(&b);
        next.insert(b - r);
        let sign = if between.is_multiple_of(2) { 1 } else { -1 };
        total += sign * mn_rule(&next, rest);
    }
    total
}

/// Size of the centralizer of a permutation with cycle type `rho`:
/// `prod_i i^{m_i} m_i!`.
pub fn z_factor(rho: &Partition) -> BigInt {
    let mut z = BigInt::one();
    for (part, mult) in rho.multiplicities() {
        for k in 1..=mult {
            z *= BigInt::from(part) * BigInt::from(k);
        }
    }
    z
}

/// Nonzero terms `(rho, chi^alpha(rho) / z_rho)` of the power-sum expansion
/// of `s_alpha`.
pub fn schur_in_power_sums(alpha: &Partition) -> Vec<(Partition, BigRational)> {
    if alpha.is_empty() {
        return vec![(Partition::empty(), BigRational::one())];
    }
    all_partitions(alpha.size())
        .into_iter()
        .filter_map(|rho| {
            let chi = character(alpha, &rho);
            if chi == 0 {
                return None;
            }
            let coeff = BigRational::new(BigInt::from(chi), z_factor(&rho));
            (!coeff.is_zero()).then_some((rho, coeff))
        })
        .collect()
}
