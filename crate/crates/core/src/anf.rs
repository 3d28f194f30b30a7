//! Boolean polynomials in algebraic normal form.
//!
//! A polynomial over `n` variables is stored densely as a set of monomials,
//! one bit per subset of `{x1, ..., xn}`. Monomial masks use bit `j - 1` for
//! variable `xj`. Points of `F_2^n` use the integer convention
//! `i = sum_k b_k 2^(n-k)`, so coordinate `x1` is the most significant bit
//! of a point index.
//!
//! Coefficient vectors list the monomials of degree `k+1..=s` by descending
//! degree and, within a degree, by ascending lexicographic order of the
//! sorted variable indices (`x1x2, x1x3, x2x3`).

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::MAX_N;

/// The parameters `(n, s, k)` of the quotient space `R(s,n)/R(k,n)`, with
/// `k = -1` meaning no quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientSpace {
    n: usize,
    s: usize,
    k: i32,
}

impl QuotientSpace {
    pub fn new(n: usize, s: usize, k: i32) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidParameters(format!("n = {n} must lie in 1..={MAX_N}")));
        }
        if k < -1 || s > n || (s as i64) <= i64::from(k) {
            return Err(Error::InvalidParameters(format!(
                "need -1 <= k < s <= n, got n = {n}, s = {s}, k = {k}"
            )));
        }
        Ok(Self { n, s, k })
    }

    /// The full coefficient space `R(n,n)`.
    pub fn full(n: usize) -> Result<Self> {
        Self::new(n, n, -1)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn s(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn k(&self) -> i32 {
        self.k
    }

    /// Lowest retained degree, `k + 1`.
    #[inline]
    pub fn min_degree(&self) -> usize {
        (self.k + 1) as usize
    }

    #[inline]
    pub fn contains_degree(&self, degree: usize) -> bool {
        degree >= self.min_degree() && degree <= self.s
    }

    /// `sum_{i=k+1}^{s} C(n, i)`.
    pub fn dimension(&self) -> usize {
        (self.min_degree()..=self.s).map(|i| binomial(self.n, i)).sum()
    }

    /// Position range of this space's basis inside the full order for `n`.
    /// Because the full order lists degrees from `n` down to `0`, every
    /// quotient basis is a contiguous slice of it.
    pub fn full_range(&self) -> std::ops::Range<usize> {
        let start: usize = (self.s + 1..=self.n).map(|i| binomial(self.n, i)).sum();
        start..start + self.dimension()
    }

    /// The dual space `R(n-1-k, n)/R(n-1-s, n)`.
    pub fn mirror(&self) -> Self {
        Self {
            n: self.n,
            s: (self.n as i32 - 1 - self.k) as usize,
            k: self.n as i32 - 1 - self.s as i32,
        }
    }

    /// Every valid `(s, k)` for this `n`, ordered by `k` then `s`.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        QuotientSpace::full(n)?;
        Ok((-1..n as i32)
            .flat_map(|k| ((k + 1) as usize..=n).map(move |s| Self { n, s, k }))
            .collect())
    }
}

impl fmt::Display for QuotientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({},{})/R({},{})", self.s, self.n, self.k, self.n)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// A monomial `x^I`, with bit `j - 1` of `mask` set when `xj` divides it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    n: usize,
    mask: u32,
}

impl Monomial {
    pub fn new(n: usize, mask: u32) -> Result<Self> {
        if n > MAX_N || (mask as u64) >> n != 0 {
            return Err(Error::InvalidParameters(format!(
                "mask {mask:#b} is not a subset of {n} variables"
            )));
        }
        Ok(Self { n, mask })
    }

    pub fn one(n: usize) -> Self {
        Self { n, mask: 0 }
    }

    /// Builds `x_{i1} x_{i2} ...` from 1-based variable indices.
    pub fn from_vars(n: usize, vars: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &v in vars {
            if v == 0 || v > n {
                return Err(Error::InvalidParameters(format!(
                    "variable x{v} out of range for n = {n}"
                )));
            }
            mask |= 1 << (v - 1);
        }
        Ok(Self { n, mask })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mask(&self) -> u32 {
        self.mask
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// 1-based indices of the variables in this monomial, ascending.
    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|j| self.mask >> j & 1 == 1).map(|j| j + 1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return f.write_str("1");
        }
        let text = self.vars().map(|v| format!("x{v}")).join("*");
        f.write_str(&text)
    }
}

/// The ordered basis monomials of `CF^n_{s,k}`.
pub fn monomial_order(space: QuotientSpace) -> Vec<Monomial> {
    let n = space.n();
    (space.min_degree()..=space.s())
        .rev()
        .flat_map(|deg| {
            (0..n).combinations(deg).map(move |vars| Monomial {
                n,
                mask: vars.iter().fold(0u32, |m, &v| m | 1 << v),
            })
        })
        .collect()
}

/// Basis monomials of a space together with the inverse lookup
/// mask -> position.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    space: QuotientSpace,
    monomials: Vec<Monomial>,
    position: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl MonomialBasis {
    pub fn new(space: QuotientSpace) -> Self {
        let monomials = monomial_order(space);
        let mut position = vec![ABSENT; 1 << space.n()];
        for (p, m) in monomials.iter().enumerate() {
            position[m.mask as usize] = p as u32;
        }
        Self {
            space,
            monomials,
            position,
        }
    }

    #[inline]
    pub fn space(&self) -> QuotientSpace {
        self.space
    }

    #[inline]
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Position of a monomial mask, or `None` if its degree is outside
    /// the space.
    #[inline]
    pub fn position(&self, mask: u32) -> Option<usize> {
        match self.position[mask as usize] {
            ABSENT => None,
            p => Some(p as usize),
        }
    }
}

/// `cv_{s,k}(f)`: coefficients of `f` in the basis of a quotient space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientVector {
    space: QuotientSpace,
    bits: BitVector,
}

impl CoefficientVector {
    pub fn new(space: QuotientSpace, bits: BitVector) -> Result<Self> {
        if bits.len() != space.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient vector of length {} for {space} of dimension {}",
                bits.len(),
                space.dimension()
            )));
        }
        Ok(Self { space, bits })
    }

    #[inline]
    pub fn space(&self) -> QuotientSpace {
        self.space
    }

    #[inline]
    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn into_bits(self) -> BitVector {
        self.bits
    }

    /// The polynomial whose terms are the basis monomials selected by the
    /// set coefficients.
    pub fn decode(&self) -> Anf {
        let order = monomial_order(self.space);
        let mut f = Anf::zero(self.space.n());
        for p in self.bits.iter_ones() {
            f.toggle(order[p]);
        }
        f
    }
}

/// A Boolean polynomial over `n` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    n: usize,
    terms: BitVector,
}

// In-word masks of the monomial slots whose mask contains bit j, j < 6.
const HAS_BIT: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

impl Anf {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_N, "at most {MAX_N} variables supported");
        Self {
            n,
            terms: BitVector::zeros(1 << n),
        }
    }

    pub fn one(n: usize) -> Self {
        let mut f = Self::zero(n);
        f.terms.set(0, true);
        f
    }

    pub fn from_monomials(n: usize, monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut f = Self::zero(n);
        for m in monomials {
            assert_eq!(m.n, n, "monomial over a different variable count");
            f.toggle(m);
        }
        f
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Membership bits indexed by monomial mask.
    #[inline]
    pub fn term_bits(&self) -> &BitVector {
        &self.terms
    }

    #[inline]
    pub fn contains(&self, m: Monomial) -> bool {
        self.terms.get(m.mask as usize)
    }

    /// Adds (XORs) a monomial.
    #[inline]
    pub fn toggle(&mut self, m: Monomial) {
        self.terms.toggle(m.mask as usize);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        let n = self.n;
        self.terms
            .iter_ones()
            .map(move |mask| Monomial { n, mask: mask as u32 })
    }

    /// Number of monomials.
    pub fn weight(&self) -> usize {
        self.terms.count_ones()
    }

    /// Algebraic degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms().map(|m| m.degree()).max()
    }

    pub fn xor_assign(&mut self, other: &Anf) {
        assert_eq!(self.n, other.n, "polynomials over different variable counts");
        self.terms.xor_assign(&other.terms);
    }

    /// Multiplies in place by the variable with 0-based index `var`, using
    /// `x^2 = x`: monomial `m` moves to `m | var`, colliding terms cancel.
    pub fn mul_var(&mut self, var: usize) {
        assert!(var < self.n, "variable index out of range");
        let words = words_mut(&mut self.terms);
        if let Some(&has) = HAS_BIT.get(var) {
            let shift = 1u32 << var;
            for w in words.iter_mut() {
                *w = (*w & has) ^ ((*w & !has) << shift);
            }
        } else {
            let bit = 1usize << (var - 6);
            for lo in (0..words.len()).filter(|w| w & bit == 0) {
                let moved = std::mem::take(&mut words[lo]);
                words[lo | bit] ^= moved;
            }
        }
    }

    /// Product with the affine form `sum_l coeffs_l x_{l+1} + constant`.
    pub fn mul_affine_form(&self, coeffs: &BitVector, constant: bool) -> Anf {
        assert_eq!(coeffs.len(), self.n, "affine form over a different variable count");
        let mut acc = if constant { self.clone() } else { Anf::zero(self.n) };
        for var in coeffs.iter_ones() {
            let mut term = self.clone();
            term.mul_var(var);
            acc.xor_assign(&term);
        }
        acc
    }

    /// General product by pairwise mask union.
    pub fn mul(&self, other: &Anf) -> Anf {
        assert_eq!(self.n, other.n, "polynomials over different variable counts");
        let mut out = Anf::zero(self.n);
        for a in self.terms.iter_ones() {
            for b in other.terms.iter_ones() {
                out.terms.toggle(a | b);
            }
        }
        out
    }

    /// Value at the point with index `point` (coordinate `x1` is the most
    /// significant of the `n` bits).
    pub fn evaluate(&self, point: usize) -> bool {
        let support = point_to_mask(self.n, point);
        self.terms.iter_ones().filter(|&m| m as u32 & !support == 0).count() % 2 == 1
    }

    /// Truth table indexed by point index.
    pub fn truth_table(&self) -> BitVector {
        let by_mask = subset_transform(self.terms.clone(), self.n);
        reindex_mask_to_point(&by_mask, self.n)
    }

    /// Inverse of [`Anf::truth_table`] (binary Möbius transform).
    pub fn from_truth_table(table: &BitVector) -> Result<Anf> {
        let len = table.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidParameters(format!(
                "truth table length {len} is not a power of two"
            )));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_N {
            return Err(Error::InvalidParameters(format!(
                "truth table over {n} > {MAX_N} variables"
            )));
        }
        let by_mask = reindex_point_to_mask(table, n);
        Ok(Anf {
            n,
            terms: subset_transform(by_mask, n),
        })
    }

    /// Parses `x1*x2*x3 + x3 + 1`. `+` is XOR, so repeated terms cancel.
    pub fn parse(n: usize, text: &str) -> Result<Anf> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidParameters(format!("n = {n} must lie in 1..={MAX_N}")));
        }
        let mut f = Anf::zero(n);
        if text.trim().is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        for term in text.split('+').map(str::trim) {
            match term {
                "0" => continue,
                "1" => f.toggle(Monomial::one(n)),
                _ => {
                    let mut vars = Vec::new();
                    for factor in term.split('*').map(str::trim) {
                        let index = factor
                            .strip_prefix('x')
                            .and_then(|d| d.parse::<usize>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad factor {factor:?} in term {term:?}")))?;
                        vars.push(index);
                    }
                    let m = Monomial::from_vars(n, &vars).map_err(|e| Error::Parse(e.to_string()))?;
                    f.toggle(m);
                }
            }
        }
        Ok(f)
    }
}

impl fmt::Display for Anf {
    /// Terms in coefficient-vector order, e.g. `x1*x2*x3 + x1*x3 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let full = QuotientSpace {
            n: self.n,
            s: self.n,
            k: -1,
        };
        let text = monomial_order(full)
            .into_iter()
            .filter(|m| self.contains(*m))
            .map(|m| m.to_string())
            .join(" + ");
        f.write_str(&text)
    }
}

impl fmt::Debug for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Anf(n={}, {self})", self.n)
    }
}

fn words_mut(v: &mut BitVector) -> &mut [u64] {
    v.words_mut()
}

/// Mask (bit `j-1` for `xj`) of the coordinates set in a point index.
#[inline]
pub fn point_to_mask(n: usize, point: usize) -> u32 {
    if n == 0 {
        return 0;
    }
    (point as u32).reverse_bits() >> (32 - n as u32)
}

#[inline]
pub fn mask_to_point(n: usize, mask: u32) -> usize {
    point_to_mask(n, mask as usize) as usize
}

fn reindex_mask_to_point(by_mask: &BitVector, n: usize) -> BitVector {
    let mut out = BitVector::zeros(1 << n);
    for m in by_mask.iter_ones() {
        out.set(mask_to_point(n, m as u32), true);
    }
    out
}

fn reindex_point_to_mask(by_point: &BitVector, n: usize) -> BitVector {
    let mut out = BitVector::zeros(1 << n);
    for p in by_point.iter_ones() {
        out.set(point_to_mask(n, p) as usize, true);
    }
    out
}

/// In-place subset-sum butterfly over GF(2): `out[x] = sum_{m ⊆ x} in[m]`.
/// It is an involution, so it maps ANF to truth table and back.
fn subset_transform(mut v: BitVector, n: usize) -> BitVector {
    for var in 0..n {
        let words = words_mut(&mut v);
        if let Some(&has) = HAS_BIT.get(var) {
            let shift = 1u32 << var;
            for w in words.iter_mut() {
                *w ^= (*w & !has) << shift;
            }
        } else {
            let bit = 1usize << (var - 6);
            for lo in (0..words.len()).filter(|w| w & bit == 0) {
                let src = words[lo];
                words[lo | bit] ^= src;
            }
        }
    }
    v
}

/// `cv_{s,k}(f)`; fails if `f` has a term whose degree is outside `(k, s]`.
pub fn cv(f: &Anf, space: QuotientSpace) -> Result<CoefficientVector> {
    encode(f, space, true)
}

/// Reduces `f` modulo `R(k, n)` and encodes it; fails only on terms of
/// degree above `s`.
pub fn project(f: &Anf, space: QuotientSpace) -> Result<CoefficientVector> {
    encode(f, space, false)
}

fn encode(f: &Anf, space: QuotientSpace, strict_low: bool) -> Result<CoefficientVector> {
    if f.n() != space.n() {
        return Err(Error::DimensionMismatch(format!(
            "polynomial over {} variables, space over {}",
            f.n(),
            space.n()
        )));
    }
    let basis = MonomialBasis::new(space);
    encode_with(f, &basis, strict_low)
}

pub(crate) fn encode_with(f: &Anf, basis: &MonomialBasis, strict_low: bool) -> Result<CoefficientVector> {
    let space = basis.space();
    let mut bits = BitVector::zeros(basis.len());
    for m in f.terms() {
        let degree = m.degree();
        let out_of_range = degree > space.s() || (strict_low && degree < space.min_degree());
        if out_of_range {
            return Err(Error::DegreeOutOfRange {
                degree,
                low: space.k(),
                high: space.s(),
            });
        }
        if let Some(p) = basis.position(m.mask) {
            bits.set(p, true);
        }
    }
    Ok(CoefficientVector { space, bits })
}

/// The ANF of `x -> m(Ax + b)` for `g = (A, b)`.
pub fn substitute(m: Monomial, a: &BitMatrix, b: &BitVector) -> Anf {
    let n = m.n();
    assert!(
        a.rows() == n && a.cols() == n && b.len() == n,
        "dimension mismatch in substitute"
    );
    let mut acc = Anf::one(n);
    for var in 0..n {
        if m.mask >> var & 1 == 1 {
            acc = acc.mul_affine_form(&a.row(var), b.get(var));
        }
    }
    acc
}
