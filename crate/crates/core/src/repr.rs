//! Matrices of the linear action of `AGL(n,2)` on quotient coefficient spaces.
//!
//! `g = (A, b)` sends `f` to `x -> f(Ax + b)` reduced modulo `R(k,n)`. Column
//! `j` of `τ_g` is the coefficient vector of the image of the `j`-th basis
//! monomial. Since substitution composes contravariantly,
//! `τ(g2 ∘ g1) = τ(g1) · τ(g2)`.
//!
//! Affine substitution never raises degree, so in the full monomial order
//! (degrees descending) the full matrix `ρ_g` is block lower triangular and
//! every `τ_g` for `R(s,n)/R(k,n)` is the principal block of `ρ_g` on the
//! contiguous range of degrees `k+1..=s`.

use std::ops::Range;

use crate::anf::{Anf, MonomialBasis, QuotientSpace};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::group::AffineElement;

/// `τ_g` for one quotient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauMatrix {
    space: QuotientSpace,
    matrix: BitMatrix,
    source: AffineElement,
}

impl TauMatrix {
    #[inline]
    pub fn space(&self) -> QuotientSpace {
        self.space
    }

    #[inline]
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    #[inline]
    pub fn source(&self) -> &AffineElement {
        &self.source
    }

    pub fn into_matrix(self) -> BitMatrix {
        self.matrix
    }
}

/// `sum_{i=k+1}^{s} C(n, i)`.
pub fn dimension(n: usize, s: usize, k: i32) -> Result<usize> {
    Ok(QuotientSpace::new(n, s, k)?.dimension())
}

pub fn tau_matrix(g: &AffineElement, space: QuotientSpace) -> Result<TauMatrix> {
    if g.n() != space.n() {
        return Err(Error::DimensionMismatch(format!(
            "element of AGL({},2) acting on {space}",
            g.n()
        )));
    }
    let matrix = Representation::new(g.n()).block(g, space.full_range());
    Ok(TauMatrix {
        space,
        matrix,
        source: g.clone(),
    })
}

/// `ρ_g`, the action on the full coefficient space.
pub fn rho_matrix(g: &AffineElement) -> BitMatrix {
    Representation::new(g.n()).block(g, 0..1 << g.n())
}

/// Builds blocks of `ρ_g` for many elements of one `AGL(n,2)`.
#[derive(Clone, Debug)]
pub struct Representation {
    n: usize,
    basis: MonomialBasis,
}

impl Representation {
    pub fn new(n: usize) -> Self {
        let space = QuotientSpace::full(n).expect("n within the supported range");
        Self {
            n,
            basis: MonomialBasis::new(space),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Principal block of `ρ_g` on the given range of full-order positions.
    pub fn block(&self, g: &AffineElement, range: Range<usize>) -> BitMatrix {
        assert_eq!(g.n(), self.n, "element degree does not match the representation");
        let n = self.n;
        let size = range.len();
        let mut out = BitMatrix::zeros(size, size);
        if size == 0 {
            return out;
        }
        let rows: Vec<_> = (0..n).map(|i| g.matrix().row(i)).collect();
        let needed = |mask: usize| {
            self.basis
                .position(mask as u32)
                .is_some_and(|p| p >= range.start && p < range.end)
        };
        // images[mask] = ANF of x -> x^mask (Ax + b), built from the image of
        // mask minus its highest variable. Only masks below the highest one
        // in range are needed.
        let top = (0..1usize << n).rev().find(|&m| needed(m)).unwrap_or(0);
        let mut images: Vec<Anf> = Vec::with_capacity(top + 1);
        images.push(Anf::one(n));
        for mask in 1..=top {
            let var = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let prev = &images[mask & !(1 << var)];
            images.push(prev.mul_affine_form(&rows[var], g.shift().get(var)));
        }
        for (mask, image) in images.iter().enumerate() {
            if !needed(mask) {
                continue;
            }
            let col = self.basis.position(mask as u32).expect("needed masks are in the basis") - range.start;
            for term in image.term_bits().iter_ones() {
                let row = self.basis.position(term as u32).expect("full basis holds every mask");
                if row >= range.start && row < range.end {
                    out.set(row - range.start, col, true);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anf::{project, substitute, CoefficientVector};
    use crate::gf2::BitVector;
    use crate::group::{enumerate_elements, point_to_vector, vector_to_point};
    use proptest::prelude::*;

    fn example_g() -> AffineElement {
        AffineElement::new(
            BitMatrix::parse_rows(&["110", "010", "001"]).unwrap(),
            "100".parse().unwrap(),
        )
        .unwrap()
    }

    const WORKED_EXAMPLE: [&str; 8] = [
        "10000000", "01000000", "00100000", "00110000", "00001000", "00001100", "00010010", "00001001",
    ];

    fn element_strategy_exact(n: usize) -> impl Strategy<Value = AffineElement> {
        (
            proptest::collection::vec(any::<bool>(), n * n),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_filter_map("singular", move |(abits, bbits)| {
                let mut a = BitMatrix::zeros(n, n);
                for (i, bit) in abits.into_iter().enumerate() {
                    a.set(i / n, i % n, bit);
                }
                AffineElement::new(a, BitVector::from_bools(&bbits)).ok()
            })
    }

    fn space_strategy(n: usize) -> impl Strategy<Value = QuotientSpace> {
        let spaces = QuotientSpace::all(n).unwrap();
        proptest::sample::select(spaces)
    }

    /// Image of `f` under `g` computed through truth tables only.
    fn image_via_truth_table(f: &Anf, g: &AffineElement) -> Anf {
        let n = f.n();
        let table = f.truth_table();
        let mut out = BitVector::zeros(1 << n);
        for x in 0..1usize << n {
            let y = vector_to_point(&g.apply(&point_to_vector(n, x)));
            out.set(x, table.get(y));
        }
        Anf::from_truth_table(&out).unwrap()
    }

    #[test]
    fn worked_example_matrix() {
        // Substituting x1 -> x1 + x2 + 1 into x1*x3 yields x1*x3 + x2*x3 + x3,
        // so the x3 row picks up c3, not c4 as in the printed matrix. Every
        // other entry agrees with the print.
        let space = QuotientSpace::full(3).unwrap();
        let tau = tau_matrix(&example_g(), space).unwrap();
        let printed = BitMatrix::parse_rows(&WORKED_EXAMPLE).unwrap();
        let diff = tau.matrix().add(&printed).unwrap();
        let differing: Vec<(usize, usize)> = (0..8)
            .flat_map(|r| (0..8).map(move |c| (r, c)))
            .filter(|&(r, c)| diff.get(r, c))
            .collect();
        assert_eq!(differing, vec![(6, 2), (6, 3)]);
        assert!(tau.matrix().get(6, 2));
        assert_eq!(rho_matrix(&example_g()), *tau.matrix());
    }

    #[test]
    fn printed_worked_example_is_not_a_representation_matrix() {
        let printed = BitMatrix::parse_rows(&WORKED_EXAMPLE).unwrap();
        assert!(enumerate_elements(3).all(|g| rho_matrix(&g) != printed));
    }

    #[test]
    fn identity_acts_trivially() {
        for n in 1..=5 {
            let id = AffineElement::identity(n);
            for space in QuotientSpace::all(n).unwrap() {
                let tau = tau_matrix(&id, space).unwrap();
                assert_eq!(*tau.matrix(), BitMatrix::identity(space.dimension()));
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(3, 3, -1).unwrap(), 8);
        assert_eq!(dimension(7, 7, 1).unwrap(), 120);
        assert_eq!(dimension(6, 6, -1).unwrap(), 64);
        assert!(dimension(3, 1, 1).is_err());
    }

    #[test]
    fn columns_match_substitute_then_project() {
        for g in enumerate_elements(3).step_by(7) {
            for space in QuotientSpace::all(3).unwrap() {
                let basis = MonomialBasis::new(space);
                let tau = tau_matrix(&g, space).unwrap();
                for (j, &m) in basis.monomials().iter().enumerate() {
                    let col = project(&substitute(m, g.matrix(), g.shift()), space).unwrap();
                    assert_eq!(tau.matrix().column(j), *col.bits());
                }
            }
        }
    }

    #[test]
    fn mismatched_degree_is_rejected() {
        let space = QuotientSpace::full(4).unwrap();
        assert!(tau_matrix(&example_g(), space).is_err());
    }

    proptest! {
        #[test]
        fn action_fidelity(
            (g, space, seed) in (1usize..=5).prop_flat_map(|n| (element_strategy_exact(n), space_strategy(n), any::<u64>()))
        ) {
            let d = space.dimension();
            let bits = BitVector::from_bools(&(0..d).map(|i| seed.rotate_left(i as u32 * 7) & 1 == 1).collect::<Vec<_>>());
            let v = CoefficientVector::new(space, bits).unwrap();
            let tau = tau_matrix(&g, space).unwrap();
            prop_assert!(tau.matrix().is_invertible());
            let moved = tau.matrix().mul_vec(v.bits()).unwrap();
            let expected = project(&image_via_truth_table(&v.decode(), &g), space).unwrap();
            prop_assert_eq!(&moved, expected.bits());
        }

        #[test]
        fn quotient_is_well_defined(
            (g, space, seed, noise) in (1usize..=5).prop_flat_map(|n| (element_strategy_exact(n), space_strategy(n), any::<u64>(), any::<u64>()))
        ) {
            // Adding a function of degree <= k must not change the image.
            let n = g.n();
            let bits = BitVector::from_bools(&(0..space.dimension()).map(|i| seed >> (i % 64) & 1 == 1).collect::<Vec<_>>());
            let f = CoefficientVector::new(space, bits).unwrap().decode();
            let mut g_f = f.clone();
            if space.k() >= 0 {
                let low = QuotientSpace::new(n, space.k() as usize, -1).unwrap();
                let lbits = BitVector::from_bools(&(0..low.dimension()).map(|i| noise >> (i % 64) & 1 == 1).collect::<Vec<_>>());
                g_f.xor_assign(&CoefficientVector::new(low, lbits).unwrap().decode());
            }
            let a = project(&image_via_truth_table(&f, &g), space).unwrap();
            let b = project(&image_via_truth_table(&g_f, &g), space).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn composition_is_contravariant(
            (g1, g2, space) in (1usize..=4).prop_flat_map(|n| (element_strategy_exact(n), element_strategy_exact(n), space_strategy(n)))
        ) {
            let lhs = tau_matrix(&g2.compose(&g1), space).unwrap().into_matrix();
            let t1 = tau_matrix(&g1, space).unwrap().into_matrix();
            let t2 = tau_matrix(&g2, space).unwrap().into_matrix();
            prop_assert_eq!(lhs, t1.mul(&t2).unwrap());
        }
    }
}
