//! Orbit counting by Burnside's lemma over conjugacy cells.
//!
//! The number of `AGL(n,2)`-orbits on `R(s,n)/R(k,n)` is
//! `(1/|AGL|) sum_cells |cell| * 2^{d - rank(τ_rep + I)}`. Sums are collected
//! per exponent so that each power of two is formed once, and the final
//! division is checked to be exact.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::anf::QuotientSpace;
use crate::conjclasses::{ConjCell, Provider};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::group::group_orders;
use crate::repr::Representation;

/// Number of coefficient vectors fixed by a matrix: `2^{d - rank(τ + I)}`.
pub fn fix_count(tau: &BitMatrix) -> Result<BigUint> {
    Ok(BigUint::one() << fixed_exponent(tau)?)
}

fn fixed_exponent(tau: &BitMatrix) -> Result<usize> {
    if tau.rows() == 0 {
        return Ok(0);
    }
    Ok(tau.rows() - tau.add_identity()?.rank())
}

/// Outcome of one orbit count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub space: QuotientSpace,
    pub count: BigUint,
    pub provider: String,
    pub cells: usize,
    pub elapsed: Duration,
}

/// Orbit counts for several spaces of the same `n` from one list of cells.
///
/// `ρ` is built once per cell on the smallest contiguous range covering all
/// requested spaces, and each space reads its own principal block.
pub fn count_with_cells(n: usize, spaces: &[QuotientSpace], cells: &[ConjCell]) -> Result<Vec<BigUint>> {
    if let Some(bad) = spaces.iter().find(|s| s.n() != n) {
        return Err(Error::DimensionMismatch(format!("{bad} requested with n = {n}")));
    }
    if let Some(bad) = cells.iter().find(|c| c.rep().n() != n) {
        return Err(Error::DimensionMismatch(format!(
            "cell of degree {} with n = {n}",
            bad.rep().n()
        )));
    }
    if spaces.is_empty() {
        return Ok(Vec::new());
    }
    let ranges: Vec<_> = spaces.iter().map(|s| s.full_range()).collect();
    let lo = ranges.iter().map(|r| r.start).min().unwrap_or(0);
    let hi = ranges.iter().map(|r| r.end).max().unwrap_or(0);
    let rep = Representation::new(n);

    let exponents: Vec<Vec<usize>> = cells
        .par_iter()
        .map(|cell| {
            let rho = rep.block(cell.rep(), lo..hi);
            ranges
                .iter()
                .map(|r| fixed_exponent(&rho.principal_block(r.start - lo, r.end - lo)))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;

    let (_, agl) = group_orders(n);
    (0..spaces.len())
        .map(|i| {
            let mut by_exponent: BTreeMap<usize, BigUint> = BTreeMap::new();
            for (cell, exps) in cells.iter().zip(&exponents) {
                *by_exponent.entry(exps[i]).or_insert_with(BigUint::zero) += cell.size();
            }
            let total: BigUint = by_exponent.into_iter().map(|(e, s)| s << e).sum();
            if !(&total % &agl).is_zero() {
                return Err(Error::InexactDivision { n });
            }
            Ok(total / &agl)
        })
        .collect()
}

/// Counts orbits on several spaces of one `n`, fetching cells once.
pub fn count_all(n: usize, spaces: &[QuotientSpace], provider: &Provider, seed: u64) -> Result<Vec<CountResult>> {
    let start = Instant::now();
    let cells = provider.cells(n, seed)?;
    let counts = count_with_cells(n, spaces, &cells)?;
    let elapsed = start.elapsed();
    Ok(spaces
        .iter()
        .zip(counts)
        .map(|(&space, count)| CountResult {
            space,
            count,
            provider: provider.tag().to_string(),
            cells: cells.len(),
            elapsed,
        })
        .collect())
}

/// Number of affine equivalence classes of `R(s,n)/R(k,n)`.
pub fn count(space: QuotientSpace, provider: &Provider, seed: u64) -> Result<CountResult> {
    let mut results = count_all(space.n(), &[space], provider, seed)?;
    Ok(results.pop().expect("one space requested"))
}

/// A space, its mirror, and their counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryPair {
    pub space: QuotientSpace,
    pub mirror: QuotientSpace,
    pub count: BigUint,
    pub mirror_count: BigUint,
}

impl SymmetryPair {
    pub fn holds(&self) -> bool {
        self.count == self.mirror_count
    }
}

/// Compares the count of every space of `n` with that of its mirror.
pub fn symmetry_check(n: usize, provider: &Provider, seed: u64) -> Result<Vec<SymmetryPair>> {
    let spaces = QuotientSpace::all(n)?;
    let results = count_all(n, &spaces, provider, seed)?;
    let lookup: BTreeMap<(usize, i32), &BigUint> =
        results.iter().map(|r| ((r.space.s(), r.space.k()), &r.count)).collect();
    Ok(results
        .iter()
        .map(|r| {
            let mirror = r.space.mirror();
            SymmetryPair {
                space: r.space,
                mirror,
                count: r.count.clone(),
                mirror_count: lookup[&(mirror.s(), mirror.k())].clone(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anf::{project, CoefficientVector};
    use crate::conjclasses::{affine_cells, exhaustive_cells, DEFAULT_SEED};
    use crate::gf2::BitVector;
    use crate::group::{enumerate_elements, point_to_vector, vector_to_point, AffineElement};
    use crate::repr::tau_matrix;

    fn space(n: usize, s: usize, k: i32) -> QuotientSpace {
        QuotientSpace::new(n, s, k).unwrap()
    }

    fn canonical(n: usize, s: usize, k: i32) -> BigUint {
        count(space(n, s, k), &Provider::Canonical, DEFAULT_SEED).unwrap().count
    }

    /// Fixed cosets of `g`, found by moving truth tables.
    fn fixed_by_enumeration(g: &AffineElement, space: QuotientSpace) -> usize {
        let n = g.n();
        (0..1u64 << space.dimension())
            .filter(|&bits| {
                let v = CoefficientVector::new(space, BitVector::from_u64(space.dimension(), bits)).unwrap();
                let table = v.decode().truth_table();
                let mut moved = BitVector::zeros(1 << n);
                for x in 0..1usize << n {
                    moved.set(x, table.get(vector_to_point(&g.apply(&point_to_vector(n, x)))));
                }
                let image = crate::anf::Anf::from_truth_table(&moved).unwrap();
                project(&image, space).unwrap() == v
            })
            .count()
    }

    #[test]
    fn identity_fixes_everything() {
        for n in 1..=6 {
            for sp in QuotientSpace::all(n).unwrap() {
                let tau = BitMatrix::identity(sp.dimension());
                assert_eq!(fix_count(&tau).unwrap(), BigUint::one() << sp.dimension());
            }
        }
        assert_eq!(fix_count(&BitMatrix::zeros(0, 0)).unwrap(), BigUint::one());
    }

    #[test]
    fn fix_count_matches_enumeration() {
        for n in 1..=3 {
            for g in enumerate_elements(n).step_by(if n == 3 { 5 } else { 1 }) {
                for sp in QuotientSpace::all(n).unwrap() {
                    let tau = tau_matrix(&g, sp).unwrap();
                    assert_eq!(
                        fix_count(tau.matrix()).unwrap(),
                        BigUint::from(fixed_by_enumeration(&g, sp)),
                        "{g:?} on {sp}"
                    );
                }
            }
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(canonical(3, 3, 1), BigUint::from(3u32));
        assert_eq!(canonical(7, 1, 0), BigUint::from(2u32));
        assert_eq!(canonical(7, 3, 2), BigUint::from(12u32));
        assert_eq!(canonical(7, 7, 1), "63379147320777408548".parse::<BigUint>().unwrap());
        assert_eq!(canonical(8, 4, 3), BigUint::from(999u32));
    }

    #[test]
    fn providers_agree_on_small_n() {
        for n in 1..=4 {
            let spaces = QuotientSpace::all(n).unwrap();
            let exact = count_with_cells(n, &spaces, &exhaustive_cells(n).unwrap()).unwrap();
            let canon = count_with_cells(n, &spaces, &affine_cells(n, DEFAULT_SEED).unwrap()).unwrap();
            assert_eq!(exact, canon, "n = {n}");
        }
    }

    #[test]
    fn refining_cells_leaves_counts_unchanged() {
        // Splitting every class into one cell per element is the finest
        // possible partition.
        let n = 3;
        let singletons: Vec<ConjCell> = enumerate_elements(n)
            .map(|g| ConjCell::new(g, BigUint::one()).unwrap())
            .collect();
        let spaces = QuotientSpace::all(n).unwrap();
        assert_eq!(
            count_with_cells(n, &spaces, &singletons).unwrap(),
            count_with_cells(n, &spaces, &exhaustive_cells(n).unwrap()).unwrap()
        );
    }

    #[test]
    fn bad_cells_give_inexact_division() {
        let n = 3;
        let mut cells = exhaustive_cells(n).unwrap();
        cells.push(ConjCell::new(AffineElement::identity(n), BigUint::one()).unwrap());
        let full = space(3, 3, -1);
        assert!(matches!(
            count_with_cells(n, &[full], &cells),
            Err(Error::InexactDivision { n: 3 })
        ));
    }

    #[test]
    fn multi_space_matches_single_space() {
        let n = 5;
        let cells = affine_cells(n, DEFAULT_SEED).unwrap();
        let spaces = QuotientSpace::all(n).unwrap();
        let together = count_with_cells(n, &spaces, &cells).unwrap();
        for (sp, value) in spaces.iter().zip(&together) {
            assert_eq!(count_with_cells(n, &[*sp], &cells).unwrap()[0], *value);
        }
    }

    #[test]
    fn mirror_symmetry_small_n() {
        for n in 1..=6 {
            for pair in symmetry_check(n, &Provider::Canonical, DEFAULT_SEED).unwrap() {
                assert!(pair.holds(), "{} vs {}", pair.space, pair.mirror);
            }
        }
    }

    #[test]
    fn rejects_mismatched_degree() {
        let cells = exhaustive_cells(2).unwrap();
        assert!(count_with_cells(3, &[space(3, 3, -1)], &cells).is_err());
    }
}
