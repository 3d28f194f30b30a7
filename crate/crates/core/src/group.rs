//! The affine group `AGL(n,2)` and its permutation image on `{0, ..., 2^n - 1}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::MAX_N;

/// `B(i)`: the vector of a point index, coordinate 1 being the most
/// significant bit.
pub fn point_to_vector(n: usize, point: usize) -> BitVector {
    let mut v = BitVector::zeros(n);
    for j in 0..n {
        if point >> (n - 1 - j) & 1 == 1 {
            v.set(j, true);
        }
    }
    v
}

/// `I(v)`: inverse of [`point_to_vector`].
pub fn vector_to_point(v: &BitVector) -> usize {
    (0..v.len()).fold(0, |acc, j| acc << 1 | v.get(j) as usize)
}

/// An element `x -> Ax + b` of `AGL(n,2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    a: BitMatrix,
    b: BitVector,
}

impl AffineElement {
    pub fn new(a: BitMatrix, b: BitVector) -> Result<Self> {
        if !a.is_square() || a.rows() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix {}x{} with translation of length {}",
                a.rows(),
                a.cols(),
                b.len()
            )));
        }
        if !a.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self { a, b })
    }

    /// Skips the invertibility check; callers guarantee `a` is invertible.
    pub(crate) fn new_unchecked(a: BitMatrix, b: BitVector) -> Self {
        debug_assert!(a.is_invertible() && a.rows() == b.len());
        Self { a, b }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            a: BitMatrix::identity(n),
            b: BitVector::zeros(n),
        }
    }

    pub fn translation(b: BitVector) -> Self {
        Self {
            a: BitMatrix::identity(b.len()),
            b,
        }
    }

    pub fn linear(a: BitMatrix) -> Result<Self> {
        let n = a.rows();
        Self::new(a, BitVector::zeros(n))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.b.len()
    }

    #[inline]
    pub fn matrix(&self) -> &BitMatrix {
        &self.a
    }

    #[inline]
    pub fn shift(&self) -> &BitVector {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.a == BitMatrix::identity(self.n())
    }

    /// `Ax + b`.
    pub fn apply(&self, x: &BitVector) -> BitVector {
        let mut y = self.a.mul_vec(x).expect("vector length matches element dimension");
        y.xor_assign(&self.b);
        y
    }

    /// The action on point indices, `I(g(B(i)))`.
    pub fn apply_point(&self, point: usize) -> usize {
        vector_to_point(&self.apply(&point_to_vector(self.n(), point)))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &Self) -> Self {
        assert_eq!(self.n(), first.n(), "composing elements of different degree");
        let a = self.a.mul(&first.a).expect("square matrices of equal size");
        let mut b = self.a.mul_vec(&first.b).expect("matching lengths");
        b.xor_assign(&self.b);
        Self { a, b }
    }

    pub fn inverse(&self) -> Self {
        let a = self.a.inverse().expect("affine elements have invertible matrices");
        let b = a.mul_vec(&self.b).expect("matching lengths");
        Self { a, b }
    }

    /// `h g h^-1` by the closed form: for `h = (C, d)` and `g = (A, b)` this is
    /// `(CAC^-1, (CAC^-1 + I) d + Cb)`.
    pub fn conjugate(h: &Self, g: &Self) -> Self {
        assert_eq!(h.n(), g.n(), "conjugating elements of different degree");
        let c_inv = h.a.inverse().expect("affine elements have invertible matrices");
        let a = h.a.mul(&g.a).and_then(|ca| ca.mul(&c_inv)).expect("square matrices");
        let mut b = a.add_identity().and_then(|m| m.mul_vec(&h.b)).expect("square matrices");
        b.xor_assign(&h.a.mul_vec(&g.b).expect("matching lengths"));
        Self { a, b }
    }

    /// `σ_g` with `σ_g(i) = I(g(B(i)))`.
    pub fn to_permutation(&self) -> Permutation {
        let n = self.n();
        // Affine: image of i is b + sum of the columns selected by B(i).
        let columns: Vec<usize> = (0..n).map(|j| vector_to_point(&self.a.column(j))).collect();
        let offset = vector_to_point(&self.b);
        let images = (0..1usize << n)
            .map(|i| {
                let image = (0..n)
                    .filter(|&j| i >> (n - 1 - j) & 1 == 1)
                    .fold(offset, |acc, j| acc ^ columns[j]);
                image as u32
            })
            .collect();
        Permutation { n, images }
    }

    /// `φ^-1`: recovers `(A, b)` from an affine permutation by `b = B(σ(0))`
    /// and column `j` of `A` equal to `B(σ(I(e_j))) + b` with
    /// `I(e_j) = 2^(n-j)`.
    pub fn from_permutation(sigma: &Permutation) -> Result<Self> {
        let n = sigma.n();
        let b = point_to_vector(n, sigma.apply(0));
        let mut a = BitMatrix::zeros(n, n);
        for j in 0..n {
            let mut col = point_to_vector(n, sigma.apply(1 << (n - 1 - j)));
            col.xor_assign(&b);
            for r in col.iter_ones() {
                a.set(r, j, true);
            }
        }
        if !a.is_invertible() {
            return Err(Error::NotAffine);
        }
        let g = Self { a, b };
        if g.to_permutation() != *sigma {
            return Err(Error::NotAffine);
        }
        Ok(g)
    }
}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineElement {{ A: {:?}, b: {} }}", self.a, self.b)
    }
}

impl fmt::Display for AffineElement {
    /// `n`, then the rows of `A`, then `b`, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n())?;
        writeln!(f, "{}", self.a)?;
        write!(f, "{}", self.b)
    }
}

impl FromStr for AffineElement {
    type Err = Error;

    /// Whitespace-separated tokens: `n`, `n` rows of `A`, then `b`.
    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let (first, rest) = tokens
            .split_first()
            .ok_or_else(|| Error::Parse("empty element".into()))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension {first:?}")))?;
        if n == 0 || n > MAX_N {
            return Err(Error::Parse(format!("dimension {n} outside 1..={MAX_N}")));
        }
        if rest.len() != n + 1 {
            return Err(Error::Parse(format!(
                "expected {} rows after the dimension, found {}",
                n + 1,
                rest.len()
            )));
        }
        let a = BitMatrix::parse_rows(&rest[..n])?;
        let b: BitVector = rest[n].parse()?;
        if a.cols() != n || b.len() != n {
            return Err(Error::Parse(format!("rows and translation must have {n} bits")));
        }
        Self::new(a, b)
    }
}

/// A permutation of `{0, ..., 2^n - 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    n: usize,
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(n: usize, images: Vec<u32>) -> Result<Self> {
        if n > MAX_N || images.len() != 1 << n {
            return Err(Error::InvalidParameters(format!(
                "permutation of {} points for n = {n}",
                images.len()
            )));
        }
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| Error::InvalidParameters(format!("image {i} out of range")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidParameters(format!("image {i} repeated")));
            }
        }
        Ok(Self { n, images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            images: (0..1u32 << n).collect(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Self) -> Self {
        assert_eq!(self.n, first.n);
        Self {
            n: self.n,
            images: first.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    /// Cycle lengths, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut lengths = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }
}

/// `(|GL(n,2)|, |AGL(n,2)|)`.
pub fn group_orders(n: usize) -> (BigUint, BigUint) {
    let two_n = BigUint::one() << n;
    let gl = (0..n).fold(BigUint::one(), |acc, i| acc * (&two_n - (BigUint::one() << i)));
    let agl = &gl * &two_n;
    (gl, agl)
}

/// Every element of `AGL(n,2)`, for small `n`.
pub fn enumerate_elements(n: usize) -> impl Iterator<Item = AffineElement> {
    assert!(n <= 4, "exhaustive enumeration is limited to n <= 4");
    let matrices: Vec<BitMatrix> = (0u32..1 << (n * n))
        .map(move |bits| {
            let mut a = BitMatrix::zeros(n, n);
            for u in 0..n * n {
                if bits >> u & 1 == 1 {
                    a.set(u / n, u % n, true);
                }
            }
            a
        })
        .filter(BitMatrix::is_invertible)
        .collect();
    matrices.into_iter().flat_map(move |a| {
        (0..1usize << n).map(move |p| AffineElement::new_unchecked(a.clone(), point_to_vector(n, p)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn example_g() -> AffineElement {
        AffineElement::new(
            BitMatrix::parse_rows(&["110", "010", "001"]).unwrap(),
            "100".parse().unwrap(),
        )
        .unwrap()
    }

    fn element_strategy(max_n: usize) -> impl Strategy<Value = AffineElement> {
        (1..=max_n).prop_flat_map(element_strategy_exact)
    }

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

    #[test]
    fn point_conventions() {
        assert_eq!(point_to_vector(3, 4).to_string(), "100");
        assert_eq!(point_to_vector(3, 1).to_string(), "001");
        for p in 0..16 {
            assert_eq!(vector_to_point(&point_to_vector(4, p)), p);
        }
    }

    #[test]
    fn apply_examples() {
        let id = AffineElement::identity(3);
        let x: BitVector = "101".parse().unwrap();
        assert_eq!(id.apply(&x), x);
        let g = example_g();
        assert_eq!(g.apply(&"000".parse().unwrap()).to_string(), "100");
        assert_eq!(g.apply(&"110".parse().unwrap()).to_string(), "110");
    }

    #[test]
    fn compose_examples() {
        let g = example_g();
        assert_eq!(AffineElement::identity(3).compose(&g), g);
        assert!(g.compose(&g.inverse()).is_identity());
        let gg = g.compose(&g);
        for p in 0..8 {
            let x = point_to_vector(3, p);
            assert_eq!(gg.apply(&x), g.apply(&g.apply(&x)));
            assert_eq!(gg.apply(&x), x);
        }
        assert!(gg.is_identity());
    }

    #[test]
    fn conjugate_examples() {
        let g = example_g();
        let id = AffineElement::identity(3);
        assert_eq!(AffineElement::conjugate(&id, &g), g);
        assert!(AffineElement::conjugate(&g, &id).is_identity());
    }

    #[test]
    fn conjugate_closed_form_exhaustive_n2() {
        let all: Vec<_> = enumerate_elements(2).collect();
        assert_eq!(all.len(), 24);
        for h in &all {
            for g in &all {
                let composed = h.compose(g).compose(&h.inverse());
                assert_eq!(AffineElement::conjugate(h, g), composed);
            }
        }
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(AffineElement::identity(3).to_permutation(), Permutation::identity(3));
        let swap = AffineElement::translation("1".parse().unwrap()).to_permutation();
        assert_eq!(swap.images(), &[1, 0]);
        let sigma = example_g().to_permutation();
        assert_eq!(sigma.apply(0), 4);
        assert_eq!(AffineElement::from_permutation(&sigma).unwrap(), example_g());
        assert!(AffineElement::from_permutation(&Permutation::identity(3))
            .unwrap()
            .is_identity());
    }

    #[test]
    fn non_affine_permutation_is_rejected() {
        // 3-cycle on {1, 2, 4} fixing every other point.
        let mut images: Vec<u32> = (0..8).collect();
        images[1] = 2;
        images[2] = 4;
        images[4] = 1;
        let sigma = Permutation::new(3, images).unwrap();
        assert!(matches!(AffineElement::from_permutation(&sigma), Err(Error::NotAffine)));
        // A transposition maps basis points consistently but is still not affine.
        let mut images: Vec<u32> = (0..8).collect();
        images.swap(6, 7);
        let sigma = Permutation::new(3, images).unwrap();
        assert!(matches!(AffineElement::from_permutation(&sigma), Err(Error::NotAffine)));
    }

    #[test]
    fn permutation_roundtrip_exhaustive() {
        for n in 1..=3 {
            let mut count = 0usize;
            for g in enumerate_elements(n) {
                let sigma = g.to_permutation();
                assert_eq!(AffineElement::from_permutation(&sigma).unwrap(), g);
                for p in 0..1 << n {
                    assert_eq!(sigma.apply(p), g.apply_point(p));
                }
                count += 1;
            }
            assert_eq!(BigUint::from(count), group_orders(n).1);
        }
    }

    #[test]
    fn group_order_examples() {
        assert_eq!(group_orders(1), (1u32.into(), 2u32.into()));
        assert_eq!(group_orders(3), (168u32.into(), 1344u32.into()));
        let direct: u128 = (0..7).map(|i| (1u128 << 7) - (1u128 << i)).product::<u128>() << 7;
        assert_eq!(group_orders(7).1, BigUint::from(direct));
    }

    #[test]
    fn text_roundtrip() {
        let g = example_g();
        let text = g.to_string();
        assert_eq!(text, "3\n110\n010\n001\n100");
        assert_eq!(text.parse::<AffineElement>().unwrap(), g);
        assert!("3 110 010 000 100".parse::<AffineElement>().is_err());
        assert!("3 110 010".parse::<AffineElement>().is_err());
        assert!("".parse::<AffineElement>().is_err());
    }

    proptest! {
        #[test]
        fn phi_is_a_homomorphism((g1, g2) in (1usize..=4).prop_flat_map(|n| (element_strategy_exact(n), element_strategy_exact(n)))) {
            let lhs = g2.compose(&g1).to_permutation();
            let rhs = g2.to_permutation().compose(&g1.to_permutation());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn conjugation_closed_form((h, g) in (1usize..=4).prop_flat_map(|n| (element_strategy_exact(n), element_strategy_exact(n)))) {
            let closed = AffineElement::conjugate(&h, &g);
            prop_assert_eq!(&closed, &h.compose(&g).compose(&h.inverse()));
            prop_assert_eq!(closed.to_permutation().cycle_type(), g.to_permutation().cycle_type());
            let h_inv = h.inverse();
            for p in 0..1usize << g.n() {
                let x = point_to_vector(g.n(), p);
                prop_assert_eq!(closed.apply(&x), h.apply(&g.apply(&h_inv.apply(&x))));
            }
        }

        #[test]
        fn inverse_roundtrip(g in element_strategy(6)) {
            prop_assert!(g.compose(&g.inverse()).is_identity());
            prop_assert!(g.inverse().compose(&g).is_identity());
        }
    }
}
