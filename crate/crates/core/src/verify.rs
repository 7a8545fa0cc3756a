//! The acceptance suite: ten end-to-end checks, each with its own oracle and
//! time budget. Shared by the `verify-all` command and the `acceptance` test.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bott::{bott_cohomology, hodge_numbers_with, Cohomology, Weight};
use crate::counterex::{image_index, psi_prime_matrix, to_line_basis, twisted_wedge_tangent};
use crate::error::Result;
use crate::exec::Strategy;
use crate::flopgeom::{gamma_map, quadric_value, symbolic_quadric_of_gamma, AffinePoint5, ModP};
use crate::kgroup::{non_integral_count, BaseBundle, ClassExpr, Factor, KTheory, KVector};
use crate::linalg::{IntegerMatrix, RationalMatrix};
use crate::partitions::{all_partitions, enumerate_box, lr_coefficients, BoxShape, Partition};
use crate::weyl::{apply_word, chamber_sort, duality_sigma, duality_word, word_product, ChamberVector, Permutation};

pub const DEFAULT_SEED: u64 = 1;

/// `(t, h)` pairs on which the flop matrix is certified.
pub const FLOP_CASES: [(usize, usize); 7] = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 6)];

const FIELD: u64 = 32003;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub budget_ms: Option<u64>,
    pub within_budget: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub all_pass: bool,
    pub criteria: Vec<CriterionResult>,
}

struct Outcome {
    exact: bool,
    detail: String,
}

impl Outcome {
    fn new(exact: bool, detail: impl Into<String>) -> Self {
        Outcome { exact, detail: detail.into() }
    }
}

fn run(id: u8, name: &'static str, budget_ms: Option<u64>, f: impl FnOnce() -> Result<Outcome>) -> CriterionResult {
    let start = Instant::now();
    let outcome = f().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
    let elapsed = start.elapsed();
    let within_budget = budget_ms.is_none_or(|b| elapsed <= Duration::from_millis(b));
    CriterionResult {
        id,
        name,
        pass: outcome.exact && within_budget,
        detail: outcome.detail,
        budget_ms,
        within_budget,
        elapsed,
    }
}

pub fn verify_all(seed: u64, strategy: Strategy) -> VerifyReport {
    let baseline = non_integral_count();
    let criteria = vec![
        run(1, "basis ranks", Some(1_000), basis_ranks),
        run(2, "flop unimodularity", Some(30_000), || flop_unimodular(strategy)),
        run(3, "flop involution", None, || flop_involution(strategy)),
        run(4, "main-component index", Some(1_000), main_component),
        run(5, "Koszul intermediate classes", None, koszul_terms),
        run(6, "Bott anchors", Some(5_000), || bott_anchors(strategy)),
        run(7, "Pluecker identity", Some(1_000), || pluecker_identity(seed)),
        run(8, "Weyl words", Some(1_000), || weyl_words(seed)),
        run(9, "oracle equivalences", None, || oracle_equivalences(baseline)),
        run(10, "Serre duality", None, || serre_duality(seed)),
    ];
    VerifyReport { seed, all_pass: criteria.iter().all(|c| c.pass), criteria }
}

/// Pascal's triangle up to row `n`.
fn pascal(n: usize) -> Vec<Vec<usize>> {
    let mut rows = vec![vec![1usize]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let row = (0..=i)
            .map(|k| if k == 0 || k == i { 1 } else { prev[k - 1] + prev[k] })
            .collect();
        rows.push(row);
    }
    rows
}

fn basis_ranks() -> Result<Outcome> {
    let tri = pascal(8);
    let mut checked = 0;
    for h in 1..=8 {
        for t in 1..=h / 2 {
            let n = enumerate_box(BoxShape::grassmannian(t, h)?).len();
            if n != tri[h][t] {
                return Ok(Outcome::new(false, format!("G({t},{h}): {n} partitions, expected {}", tri[h][t])));
            }
            checked += 1;
        }
    }
    Ok(Outcome::new(true, format!("{checked} Grassmannians with h <= 8")))
}

fn flop_for(t: usize, h: usize, strategy: Strategy) -> Result<IntegerMatrix> {
    KTheory::shared(BoxShape::grassmannian(t, h)?).flop_matrix(strategy)
}

fn flop_unimodular(strategy: Strategy) -> Result<Outcome> {
    let mut dets = Vec::new();
    for (t, h) in FLOP_CASES {
        let m = flop_for(t, h, strategy)?;
        let det = m.determinant()?;
        // cross-check the fraction-free determinant with rational elimination
        let rational = RationalMatrix::from(&m).determinant()?;
        if rational != BigRational::from_integer(det.clone()) || !det.abs().is_one() {
            return Ok(Outcome::new(false, format!("G({t},{h}): det {det}, rational {rational}")));
        }
        dets.push(format!("G({t},{h})={det}"));
    }
    Ok(Outcome::new(true, format!("det: {}", dets.join(" "))))
}

fn flop_involution(strategy: Strategy) -> Result<Outcome> {
    for (t, h) in FLOP_CASES {
        let m = flop_for(t, h, strategy)?;
        if m.mul(&m)? != IntegerMatrix::identity(m.rows()) {
            return Ok(Outcome::new(false, format!("G({t},{h}): square is not the identity")));
        }
    }
    Ok(Outcome::new(true, format!("{} matrices square to the identity", FLOP_CASES.len())))
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn main_component() -> Result<Outcome> {
    let m = psi_prime_matrix()?;
    let expected = [ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[-3, 6, -2])];
    for (j, col) in expected.iter().enumerate() {
        if &m.column(j) != col {
            return Ok(Outcome::new(false, format!("column {j} is {:?}", m.column(j))));
        }
    }
    let snf = m.smith_invariants();
    let index = image_index(&m)?;
    let det = m.determinant()?.abs();
    let exact = snf == ints(&[1, 1, 2]) && index == Some(BigInt::from(2)) && det == BigInt::from(2);
    let snf_text: Vec<String> = snf.iter().map(BigInt::to_string).collect();
    Ok(Outcome::new(exact, format!("snf ({}), |det| {det}", snf_text.join(","))))
}

fn koszul_terms() -> Result<Outcome> {
    let k = KTheory::shared(BoxShape::grassmannian(1, 3)?);
    let first = to_line_basis(&k.expand(&ClassExpr::single(twisted_wedge_tangent(1)))?)?;
    let second = to_line_basis(&k.expand(&ClassExpr::single(twisted_wedge_tangent(2)))?)?;
    let exact = first == ints(&[0, 3, -1]) && second == ints(&[3, -3, 1]);
    Ok(Outcome::new(exact, format!("wedge1 {first:?}, wedge2 {second:?}")))
}

fn bott_anchors(strategy: Strategy) -> Result<Outcome> {
    let g24 = BoxShape::grassmannian(2, 4)?;
    if !bott_cohomology(&Weight::line(-2, g24)).is_zero() {
        return Ok(Outcome::new(false, "O(-2) on G(2,4) has cohomology"));
    }
    let hodge = hodge_numbers_with(g24, strategy);
    if hodge.diagonal() != ints(&[1, 1, 2, 1, 1]) || !hodge.off_diagonal_vanishes() {
        return Ok(Outcome::new(false, format!("Hodge diagonal {:?}", hodge.diagonal())));
    }
    let p2 = BoxShape::grassmannian(1, 3)?;
    for d in 0..=5i64 {
        let expected = BigInt::from((d + 1) * (d + 2) / 2);
        match bott_cohomology(&Weight::line(d, p2)) {
            Cohomology::Degree { degree: 0, .. } => {}
            other => return Ok(Outcome::new(false, format!("O({d}) on P^2: {other:?}"))),
        }
        let h0 = bott_cohomology(&Weight::line(d, p2)).dim_in(0);
        if h0 != expected {
            return Ok(Outcome::new(false, format!("h0(P^2, O({d})) = {h0}")));
        }
    }
    Ok(Outcome::new(true, "h22 = 2, h33 = 1, diagonal (1,1,2,1,1), h0(P^2,O(d)) for d <= 5"))
}

fn pluecker_identity(seed: u64) -> Result<Outcome> {
    let symbolic = symbolic_quadric_of_gamma();
    if symbolic.num_terms() != 0 {
        return Ok(Outcome::new(false, format!("{} surviving monomials", symbolic.num_terms())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let pt = AffinePoint5::new(std::array::from_fn(|_| ModP::random(&mut rng, FIELD)));
        let v = quadric_value(&gamma_map(&pt));
        if v.value() != 0 {
            return Ok(Outcome::new(false, format!("nonzero value at {pt:?}")));
        }
    }
    Ok(Outcome::new(true, format!("symbolic zero, 1000 points over F_{FIELD}")))
}

/// Pairs `i < j` with `v_i < v_j`.
fn ascents<T: Ord>(v: &[T]) -> usize {
    (0..v.len())
        .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| v[i] < v[j])
        .count()
}

fn random_regular(rng: &mut ChaCha8Rng) -> ChamberVector {
    let h = rng.gen_range(1..=8);
    loop {
        let v = ChamberVector(
            (0..h)
                .map(|_| BigRational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=4).into()))
                .collect(),
        );
        if v.check_regular().is_ok() {
            return v;
        }
    }
}

fn weyl_words(seed: u64) -> Result<Outcome> {
    for h in 2..=8 {
        let w = duality_word(h)?;
        let sigma = duality_sigma(h)?;
        if word_product(h, &w) != sigma.inverse() || w.len() != 2 * h - 3 {
            return Ok(Outcome::new(false, format!("h = {h}: word {w:?}, sigma {sigma}")));
        }
        if sigma != Permutation::transposition(h, 1, h) {
            return Ok(Outcome::new(false, format!("h = {h}: sigma {sigma} is not (1 {h})")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..500 {
        let v = random_regular(&mut rng);
        let (_, word) = chamber_sort(&v)?;
        let sorted = ChamberVector(apply_word(&v.0, &word));
        if !sorted.is_strictly_decreasing() || word.len() != ascents(&v.0) {
            return Ok(Outcome::new(false, format!("chamber sort failed on {:?}", v.0)));
        }
    }
    Ok(Outcome::new(true, "h = 2..8 duality words, 500 chamber sorts"))
}

/// Counts LR tableaux of shape `nu / lambda` and content `mu` by filling
/// cells one at a time and checking the reverse reading word at the end.
pub fn lr_brute_force(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lambda) || nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    let cells: Vec<(usize, usize)> = (0..nu.rows())
        .flat_map(|r| (lambda.part(r)..nu.part(r)).map(move |c| (r, c)))
        .collect();
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut remaining: Vec<usize> = mu.parts().to_vec();
    count_fillings(&cells, 0, &mut filling, &mut remaining, lambda)
}

fn count_fillings(
    cells: &[(usize, usize)],
    k: usize,
    filling: &mut BTreeMap<(usize, usize), usize>,
    remaining: &mut [usize],
    lambda: &Partition,
) -> u64 {
    if k == cells.len() {
        return u64::from(is_lattice(cells, filling, remaining.len()));
    }
    let (r, c) = cells[k];
    let mut total = 0;
    for v in 0..remaining.len() {
        if remaining[v] == 0 {
            continue;
        }
        let left_ok = c == lambda.part(r) || filling.get(&(r, c - 1)).is_some_and(|&x| x <= v);
        let above_ok = r == 0 || c < lambda.part(r - 1) || filling.get(&(r - 1, c)).is_some_and(|&x| x < v);
        if !(left_ok && above_ok) {
            continue;
        }
        remaining[v] -= 1;
        filling.insert((r, c), v);
        total += count_fillings(cells, k + 1, filling, remaining, lambda);
        filling.remove(&(r, c));
        remaining[v] += 1;
    }
    total
}

fn is_lattice(cells: &[(usize, usize)], filling: &BTreeMap<(usize, usize), usize>, letters: usize) -> bool {
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(r, c) in cells {
        rows.entry(r).or_default().push(filling[&(r, c)]);
    }
    let mut seen = vec![0usize; letters];
    for row in rows.values() {
        for &v in row.iter().rev() {
            seen[v] += 1;
            if v > 0 && seen[v] > seen[v - 1] {
                return false;
            }
        }
    }
    true
}

fn oracle_equivalences(baseline: usize) -> Result<Outcome> {
    let mut triples = 0usize;
    for n in 0..=8 {
        for a in 0..=n {
            for lambda in all_partitions(a) {
                for mu in all_partitions(n - a) {
                    let fast = lr_coefficients(&lambda, &mu, None);
                    for nu in all_partitions(n) {
                        let expected = lr_brute_force(&lambda, &mu, &nu);
                        let got = fast.get(&nu).copied().unwrap_or(0);
                        if got != expected {
                            return Ok(Outcome::new(
                                false,
                                format!("c({lambda};{mu} -> {nu}) = {got}, brute force {expected}"),
                            ));
                        }
                        triples += 1;
                    }
                }
            }
        }
    }
    let shape = BoxShape::new(2, 3)?;
    let k = KTheory::shared(shape);
    for (i, alpha) in k.basis().iter().enumerate() {
        let class = k.expand(&ClassExpr::single(vec![Factor::Schur(alpha.clone(), BaseBundle::Taut)]))?;
        if class != KVector::unit(shape, i) {
            return Ok(Outcome::new(false, format!("basis element {alpha} expands to {class}")));
        }
    }
    let failures = non_integral_count() - baseline;
    if failures != 0 {
        return Ok(Outcome::new(false, format!("{failures} non-integral expansions")));
    }
    Ok(Outcome::new(
        true,
        format!("{triples} LR triples, {} basis round trips, no non-integral expansion", shape.count()),
    ))
}

fn serre_duality(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block = |rng: &mut ChaCha8Rng| {
        let mut v: Vec<i64> = (0..2).map(|_| rng.gen_range(-6..=6)).collect();
        v.sort_unstable_by(|x, y| y.cmp(x));
        v
    };
    let dim = 4;
    let mut nonzero = 0;
    for _ in 0..100 {
        let a = block(&mut rng);
        let b = block(&mut rng);
        let w = Weight::new(a, b)?;
        let (c, d) = (bott_cohomology(&w), bott_cohomology(&w.serre_dual()));
        let ok = (0..=dim).all(|i| c.dim_in(i) == d.dim_in(dim - i));
        if !ok {
            return Ok(Outcome::new(false, format!("mismatch at {w}: {c:?} vs {d:?}")));
        }
        nonzero += usize::from(!c.is_zero());
    }
    Ok(Outcome::new(true, format!("100 weights, {nonzero} with nonzero cohomology")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(lr_brute_force(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), 2);
        assert_eq!(lr_brute_force(&p(&[1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_brute_force(&p(&[1]), &p(&[1]), &p(&[1, 1])), 1);
        assert_eq!(lr_brute_force(&p(&[2]), &p(&[1]), &p(&[1, 1, 1])), 0);
        assert_eq!(lr_brute_force(&Partition::empty(), &p(&[2, 1]), &p(&[2, 1])), 1);
    }

    #[test]
    fn pascal_rows() {
        assert_eq!(pascal(4)[4], vec![1, 4, 6, 4, 1]);
    }
}
