//! Dense linear algebra over GF(2).
//!
//! Vectors and matrices are packed 64 coefficients per `u64` word. Bit `i` of
//! a vector lives in word `i / 64` at position `i % 64`. Matrices are stored
//! row-major with every row padded to a whole number of words; padding bits
//! are always zero.
//!
//! Every operation here is pure: elimination runs on a private copy and the
//! inputs are never mutated.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Unit vector with a single coefficient set.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of at most 64 coefficients from the low bits of `bits`.
    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= WORD_BITS, "from_u64 supports at most 64 coefficients");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = bits & tail_mask(len);
        }
        v
    }

    /// Wraps packed words. Padding bits beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Self { len, words }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Mutable packed words. Callers keep the padding bits zero.
    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// The coefficients as a single word. Only valid for `len <= 64`.
    pub fn as_u64(&self) -> u64 {
        assert!(self.len <= WORD_BITS, "as_u64 requires at most 64 coefficients");
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD_BITS] ^= 1u64 << (index % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Indices of the set coefficients, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }
}

impl std::ops::BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: Self) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses a string of `0`/`1` characters, coefficient 0 first.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit character {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bools(&bits))
    }
}

/// A dense `rows x cols` matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks row vectors. All rows must share one length, which becomes
    /// the column count; `cols` is used when `rows` is empty.
    pub fn from_rows(rows: &[BitVector], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            m.row_words_mut(i).copy_from_slice(row.words());
        }
        Ok(m)
    }

    /// Parses rows written as `0`/`1` strings.
    pub fn parse_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.as_ref().parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        let cols = parsed.first().map_or(0, BitVector::len);
        Self::from_rows(&parsed, cols)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        let w = &mut self.data[r * self.stride + c / WORD_BITS];
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        self.data[r * self.stride + c / WORD_BITS] ^= 1u64 << (c % WORD_BITS);
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in BitVector::from_words(self.cols, self.row_words(r).to_vec()).iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let (lhs_row, dst) = (self.row_words(r), r * out.stride);
            for (wi, &w) in lhs_row.iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let k = wi * WORD_BITS + w.trailing_zeros() as usize;
                    w &= w - 1;
                    let src = rhs.row_words(k);
                    for (d, s) in out.data[dst..dst + out.stride].iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a ^= b;
        }
        Ok(out)
    }

    /// `self ⊕ I` for a square matrix.
    pub fn add_identity(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.toggle(i, i);
        }
        Ok(out)
    }

    /// The square block on rows and columns `start..end`.
    pub fn principal_block(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.rows && end <= self.cols);
        let size = end - start;
        let mut out = Self::zeros(size, size);
        if start.is_multiple_of(WORD_BITS) {
            let first = start / WORD_BITS;
            for r in 0..size {
                let src = &self.row_words(start + r)[first..first + out.stride];
                out.row_words_mut(r).copy_from_slice(src);
            }
            if let Some(mask) = (!size.is_multiple_of(WORD_BITS)).then(|| tail_mask(size)) {
                for r in 0..size {
                    let last = r * out.stride + out.stride - 1;
                    out.data[last] &= mask;
                }
            }
        } else {
            for r in 0..size {
                for c in 0..size {
                    if self.get(start + r, start + c) {
                        out.set(r, c, true);
                    }
                }
            }
        }
        out
    }

    /// Rank by forward Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        let stride = self.stride;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (wi, mask) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(pivot) = (rank..self.rows).find(|&r| data[r * stride + wi] & mask != 0) else {
                continue;
            };
            if pivot != rank {
                for w in 0..stride {
                    data.swap(pivot * stride + w, rank * stride + w);
                }
            }
            let (head, tail) = data.split_at_mut((rank + 1) * stride);
            let pivot_row = &head[rank * stride + wi..(rank + 1) * stride];
            for row in tail.chunks_exact_mut(stride) {
                if row[wi] & mask != 0 {
                    for (d, s) in row[wi..].iter_mut().zip(pivot_row) {
                        *d ^= s;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Reduced row-echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let stride = m.stride;
        let mut pivots = Vec::new();
        for col in 0..m.cols {
            let r = pivots.len();
            if r == m.rows {
                break;
            }
            let (wi, mask) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let Some(pivot) = (r..m.rows).find(|&i| m.data[i * stride + wi] & mask != 0) else {
                continue;
            };
            if pivot != r {
                for w in 0..stride {
                    m.data.swap(pivot * stride + w, r * stride + w);
                }
            }
            let pivot_row = m.row_words(r).to_vec();
            for i in (0..m.rows).filter(|&i| i != r) {
                let row = m.row_words_mut(i);
                if row[wi] & mask != 0 {
                    for (d, s) in row.iter_mut().zip(&pivot_row) {
                        *d ^= s;
                    }
                }
            }
            pivots.push(col);
        }
        (m, pivots)
    }

    /// Inverse of a square matrix by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut left = self.clone();
        let mut right = Self::identity(n);
        let stride = left.stride;
        for col in 0..n {
            let (wi, mask) = (col / WORD_BITS, 1u64 << (col % WORD_BITS));
            let pivot = (col..n)
                .find(|&r| left.data[r * stride + wi] & mask != 0)
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for w in 0..stride {
                    left.data.swap(pivot * stride + w, col * stride + w);
                    right.data.swap(pivot * stride + w, col * stride + w);
                }
            }
            let lp = left.row_words(col).to_vec();
            let rp = right.row_words(col).to_vec();
            for r in (0..n).filter(|&r| r != col) {
                if left.data[r * stride + wi] & mask != 0 {
                    for (d, s) in left.row_words_mut(r).iter_mut().zip(&lp) {
                        *d ^= s;
                    }
                    for (d, s) in right.row_words_mut(r).iter_mut().zip(&rp) {
                        *d ^= s;
                    }
                }
            }
        }
        Ok(right)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the null space `{x : Mx = 0}`, in reduced row-echelon form.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let raw: Vec<BitVector> = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (row, &p) in pivots.iter().enumerate() {
                    if r.get(row, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        echelon_basis(&raw, self.cols)
    }

    /// Basis of the column space, in reduced row-echelon form.
    pub fn image_basis(&self) -> Vec<BitVector> {
        let (r, pivots) = self.transpose().rref();
        (0..pivots.len()).map(|i| r.row(i)).collect()
    }
}

/// Reduces a list of vectors to the nonzero rows of their reduced
/// row-echelon form, a canonical basis of their span.
pub fn echelon_basis(vectors: &[BitVector], len: usize) -> Vec<BitVector> {
    let Ok(m) = BitMatrix::from_rows(vectors, len) else {
        panic!("echelon_basis: vectors must all have length {len}");
    };
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// Basis of the commutant `{X : XA = AX}` of a square matrix, computed as
/// the kernel of the linear map `X -> XA + AX` on `n*n` unknowns. Each
/// basis matrix corresponds to a kernel vector in reduced row-echelon form,
/// with unknown `i*n + j` holding entry `(i, j)`.
pub fn solve_commutant(a: &BitMatrix) -> Result<Vec<BitMatrix>> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut system = BitMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let eq = i * n + j;
            for l in 0..n {
                // (XA)_ij = sum_l X_il A_lj
                if a.get(l, j) {
                    system.toggle(eq, i * n + l);
                }
                // (AX)_ij = sum_l A_il X_lj
                if a.get(i, l) {
                    system.toggle(eq, l * n + j);
                }
            }
        }
    }
    Ok(system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut x = BitMatrix::zeros(n, n);
            for u in v.iter_ones() {
                x.set(u / n, u % n, true);
            }
            x
        })
        .collect())
}

impl fmt::Display for BitMatrix {
    /// One row per line as `0`/`1` strings.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "{}{}", if r == 0 { "" } else { " " }, self.row(r))?;
        }
        write!(f, "]")
    }
}
