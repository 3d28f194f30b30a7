//! Conjugacy classes of `AGL(n,2)` for `n <= 4` by enumerating the group.
//!
//! Elements are packed into a small integer (rows of `A`, then `b`) so the
//! whole group fits in a flat lookup table; classes are orbits of the
//! conjugation action of a generating set (transvections and unit
//! translations).

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::group::AffineElement;

use super::ConjCell;

pub const EXHAUSTIVE_MAX_N: usize = 4;

/// `A` as `n` row bitmasks (bit `j` = column `j`) and `b` as a bitmask
/// (bit `i` = coordinate `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Small {
    rows: [u8; EXHAUSTIVE_MAX_N],
    b: u8,
}

#[inline]
fn parity(x: u8) -> u8 {
    (x.count_ones() & 1) as u8
}

impl Small {
    fn mat_vec(rows: &[u8; EXHAUSTIVE_MAX_N], n: usize, x: u8) -> u8 {
        (0..n).fold(0, |acc, i| acc | parity(rows[i] & x) << i)
    }

    fn mat_mul(lhs: &[u8; EXHAUSTIVE_MAX_N], rhs: &[u8; EXHAUSTIVE_MAX_N], n: usize) -> [u8; EXHAUSTIVE_MAX_N] {
        let mut out = [0u8; EXHAUSTIVE_MAX_N];
        for (row, &l) in out.iter_mut().zip(lhs).take(n) {
            for (j, &r) in rhs.iter().enumerate().take(n) {
                if l >> j & 1 == 1 {
                    *row ^= r;
                }
            }
        }
        out
    }

    /// `self ∘ first`.
    fn compose(&self, first: &Small, n: usize) -> Small {
        Small {
            rows: Self::mat_mul(&self.rows, &first.rows, n),
            b: Self::mat_vec(&self.rows, n, first.b) ^ self.b,
        }
    }

    fn code(&self, n: usize) -> usize {
        let a = (0..n).fold(0usize, |acc, i| acc | (self.rows[i] as usize) << (i * n));
        a << n | self.b as usize
    }

    fn from_code(code: usize, n: usize) -> Small {
        let b = (code & ((1 << n) - 1)) as u8;
        let a = code >> n;
        let mut rows = [0u8; EXHAUSTIVE_MAX_N];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            *row = (a >> (i * n) & ((1 << n) - 1)) as u8;
        }
        Small { rows, b }
    }

    fn to_matrix(self, n: usize) -> BitMatrix {
        let mut a = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if self.rows[i] >> j & 1 == 1 {
                    a.set(i, j, true);
                }
            }
        }
        a
    }

    fn to_element(self, n: usize) -> AffineElement {
        let b = BitVector::from_u64(n, self.b as u64);
        AffineElement::new_unchecked(self.to_matrix(n), b)
    }
}

struct SmallGroup {
    n: usize,
    /// Element codes in enumeration order (matrix code, then `b`).
    elements: Vec<usize>,
    /// Inverse of each element, indexed by code.
    inverse: Vec<u32>,
    generators: Vec<Small>,
}

const NONE: u32 = u32::MAX;

impl SmallGroup {
    fn new(n: usize, with_translations: bool) -> Self {
        let matrices: Vec<[u8; EXHAUSTIVE_MAX_N]> = (0usize..1 << (n * n))
            .map(|code| Small::from_code(code << n, n).rows)
            .filter(|rows| Small { rows: *rows, b: 0 }.to_matrix(n).is_invertible())
            .collect();
        let shifts: Vec<u8> = if with_translations {
            (0..1u8 << n).collect()
        } else {
            vec![0]
        };
        let elements: Vec<usize> = matrices
            .iter()
            .flat_map(|rows| shifts.iter().map(move |&b| Small { rows: *rows, b }.code(n)))
            .collect();

        let mut inverse = vec![NONE; 1 << (n * n + n)];
        let mut mat_inverse = vec![NONE; 1 << (n * n)];
        for rows in &matrices {
            let code = Small { rows: *rows, b: 0 }.code(n) >> n;
            if mat_inverse[code] != NONE {
                continue;
            }
            let inv = Small { rows: *rows, b: 0 }
                .to_matrix(n)
                .inverse()
                .expect("enumerated matrices are invertible");
            let mut inv_rows = [0u8; EXHAUSTIVE_MAX_N];
            for (i, row) in inv_rows.iter_mut().enumerate().take(n) {
                *row = (0..n).fold(0u8, |acc, j| acc | (inv.get(i, j) as u8) << j);
            }
            mat_inverse[code] = (Small { rows: inv_rows, b: 0 }.code(n) >> n) as u32;
        }
        for &code in &elements {
            let g = Small::from_code(code, n);
            let inv_rows = Small::from_code((mat_inverse[code >> n] as usize) << n, n).rows;
            let inv = Small {
                rows: inv_rows,
                b: Small::mat_vec(&inv_rows, n, g.b),
            };
            inverse[code] = inv.code(n) as u32;
        }

        let mut generators = Vec::new();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let mut rows = [0u8; EXHAUSTIVE_MAX_N];
                for (r, row) in rows.iter_mut().enumerate().take(n) {
                    *row = 1 << r;
                }
                rows[i] |= 1 << j;
                generators.push(Small { rows, b: 0 });
            }
        }
        if with_translations {
            let mut identity = [0u8; EXHAUSTIVE_MAX_N];
            for (r, row) in identity.iter_mut().enumerate().take(n) {
                *row = 1 << r;
            }
            for i in 0..n {
                generators.push(Small {
                    rows: identity,
                    b: 1 << i,
                });
            }
        }
        Self {
            n,
            elements,
            inverse,
            generators,
        }
    }

    /// Conjugacy classes as (representative, size), representatives in
    /// enumeration order.
    fn classes(&self) -> Vec<(Small, usize)> {
        let n = self.n;
        let mut visited = vec![false; self.inverse.len()];
        let mut classes = Vec::new();
        let mut stack = Vec::new();
        for &start in &self.elements {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            stack.push(start);
            let mut size = 0usize;
            while let Some(code) = stack.pop() {
                size += 1;
                let x = Small::from_code(code, n);
                for h in &self.generators {
                    let h_inv = Small::from_code(self.inverse[h.code(n)] as usize, n);
                    let y = h.compose(&x, n).compose(&h_inv, n).code(n);
                    if !visited[y] {
                        visited[y] = true;
                        stack.push(y);
                    }
                }
            }
            classes.push((Small::from_code(start, n), size));
        }
        classes
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge {
            n,
            limit: EXHAUSTIVE_MAX_N,
        });
    }
    Ok(())
}

/// True conjugacy classes of `AGL(n,2)`, one cell per class.
pub fn exhaustive_cells(n: usize) -> Result<Vec<ConjCell>> {
    check_n(n)?;
    let group = SmallGroup::new(n, true);
    Ok(group
        .classes()
        .into_iter()
        .map(|(rep, size)| ConjCell::new_unchecked(rep.to_element(n), BigUint::from(size)))
        .collect())
}

/// Conjugacy classes of `GL(n,2)` as (representative, size).
pub fn exhaustive_gl_classes(n: usize) -> Result<Vec<(BitMatrix, BigUint)>> {
    check_n(n)?;
    let group = SmallGroup::new(n, false);
    Ok(group
        .classes()
        .into_iter()
        .map(|(rep, size)| (rep.to_matrix(n), BigUint::from(size)))
        .collect())
}
