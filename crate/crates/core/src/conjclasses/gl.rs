//! Conjugacy classes of `GL(n,2)` by rational canonical form.
//!
//! A class is an assignment of an integer partition `λ_p` to each monic
//! irreducible `p ≠ x` with `sum_p deg(p)·|λ_p| = n`. Its representative is
//! the direct sum of companion matrices of the elementary divisors
//! `p^{λ_i}`, and its centralizer has order
//! `prod_p q^{sum (λ'_i)^2} prod_k prod_{j=1}^{m_k} (1 - q^{-j})` with
//! `q = 2^{deg p}`.

use std::fmt;
use std::ops::{Mul, Rem};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::gf2::BitMatrix;
use crate::group::group_orders;

/// A polynomial over GF(2); bit `i` is the coefficient of `x^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly2(pub u64);

impl Poly2 {
    pub const X: Poly2 = Poly2(0b10);

    pub fn degree(self) -> usize {
        assert!(self.0 != 0, "degree of the zero polynomial");
        63 - self.0.leading_zeros() as usize
    }

    pub fn pow(self, e: usize) -> Poly2 {
        (0..e).fold(Poly2(1), |acc, _| acc * self)
    }

    /// Trial division by every polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(self) -> bool {
        let d = self.degree();
        if d == 0 {
            return false;
        }
        (2u64..1 << (d / 2 + 1)).all(|q| (self % Poly2(q)).0 != 0)
    }

    /// Companion matrix: ones on the subdiagonal, coefficients in the last
    /// column.
    pub fn companion(self) -> BitMatrix {
        let m = self.degree();
        let mut c = BitMatrix::zeros(m, m);
        for i in 1..m {
            c.set(i, i - 1, true);
        }
        for i in 0..m {
            if self.0 >> i & 1 == 1 {
                c.set(i, m - 1, true);
            }
        }
        c
    }
}

impl Mul for Poly2 {
    type Output = Poly2;

    fn mul(self, other: Poly2) -> Poly2 {
        let mut acc = 0u64;
        let mut a = self.0;
        let mut shift = 0;
        while a != 0 {
            if a & 1 == 1 {
                acc ^= other.0 << shift;
            }
            a >>= 1;
            shift += 1;
        }
        Poly2(acc)
    }
}

impl Rem for Poly2 {
    type Output = Poly2;

    fn rem(self, divisor: Poly2) -> Poly2 {
        let dd = divisor.degree();
        let mut r = self.0;
        while r != 0 && (63 - r.leading_zeros() as usize) >= dd {
            let shift = (63 - r.leading_zeros() as usize) - dd;
            r ^= divisor.0 << shift;
        }
        Poly2(r)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..64)
            .rev()
            .filter(|i| self.0 >> i & 1 == 1)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

/// Monic irreducibles of degree `1..=max_degree` other than `x`, ordered by
/// degree and then by coefficient bits.
pub fn irreducibles(max_degree: usize) -> Vec<Poly2> {
    (1..=max_degree)
        .flat_map(|d| (1u64 << d..1 << (d + 1)).map(Poly2))
        .filter(|&p| p != Poly2::X && p.is_irreducible())
        .collect()
}

/// Partitions of `m` with parts in descending order, listed in reverse
/// lexicographic order (`[m]` first).
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max_part)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

fn conjugate_partition(parts: &[usize]) -> Vec<usize> {
    let largest = parts.first().copied().unwrap_or(0);
    (1..=largest)
        .map(|i| parts.iter().filter(|&&p| p >= i).count())
        .collect()
}

/// Order of the centralizer in `GL` of the primary component with
/// irreducible of degree `degree` and partition `parts`.
pub fn primary_centralizer_order(degree: usize, parts: &[usize]) -> BigUint {
    // q^{sum λ'^2} prod_k prod_{j<=m_k} (1 - q^-j)
    //   = q^{sum λ'^2 - sum_k m_k(m_k+1)/2} prod_k prod_{j<=m_k} (q^j - 1)
    let q_bits = degree;
    let exponent: usize = conjugate_partition(parts).iter().map(|c| c * c).sum();
    let mut multiplicities = std::collections::BTreeMap::<usize, usize>::new();
    for &p in parts {
        *multiplicities.entry(p).or_default() += 1;
    }
    let mut cleared = 0usize;
    let mut product = BigUint::one();
    for &m in multiplicities.values() {
        cleared += m * (m + 1) / 2;
        for j in 1..=m {
            product *= (BigUint::one() << (q_bits * j)) - 1u32;
        }
    }
    assert!(exponent >= cleared, "centralizer exponent went negative");
    product << (q_bits * (exponent - cleared))
}

/// One conjugacy class of `GL(n,2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlClassDescriptor {
    assignment: Vec<(Poly2, Vec<usize>)>,
    rep: BitMatrix,
    size: BigUint,
}

impl GlClassDescriptor {
    /// Irreducible polynomials with their partitions, in canonical order.
    pub fn assignment(&self) -> &[(Poly2, Vec<usize>)] {
        &self.assignment
    }

    pub fn rep(&self) -> &BitMatrix {
        &self.rep
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    pub fn centralizer_order(&self) -> BigUint {
        self.assignment
            .iter()
            .map(|(p, parts)| primary_centralizer_order(p.degree(), parts))
            .product()
    }

    /// Elementary divisors `p^{λ_i}` in block order.
    pub fn elementary_divisors(&self) -> Vec<Poly2> {
        self.assignment
            .iter()
            .flat_map(|(p, parts)| parts.iter().map(move |&e| p.pow(e)))
            .collect()
    }
}

impl fmt::Display for GlClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.assignment.iter().map(|(p, l)| format!("({p})^{l:?}")).collect();
        write!(f, "{} size {}", parts.join(" "), self.size)
    }
}

fn block_diagonal(blocks: &[BitMatrix], n: usize) -> BitMatrix {
    let mut out = BitMatrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                if b.get(r, c) {
                    out.set(offset + r, offset + c, true);
                }
            }
        }
        offset += b.rows();
    }
    assert_eq!(offset, n, "blocks do not fill the matrix");
    out
}

/// Every conjugacy class of `GL(n,2)`.
pub fn gl_classes(n: usize) -> Vec<GlClassDescriptor> {
    let polys = irreducibles(n);
    let (gl_order, _) = group_orders(n);
    let mut assignments = Vec::new();
    enumerate_assignments(&polys, 0, n, &mut Vec::new(), &mut assignments);
    assignments
        .into_iter()
        .map(|assignment| {
            let blocks: Vec<BitMatrix> = assignment
                .iter()
                .flat_map(|(p, parts): &(Poly2, Vec<usize>)| parts.iter().map(move |&e| p.pow(e).companion()))
                .collect();
            let rep = block_diagonal(&blocks, n);
            let centralizer: BigUint = assignment
                .iter()
                .map(|(p, parts)| primary_centralizer_order(p.degree(), parts))
                .product();
            let size = &gl_order / &centralizer;
            let remainder = &gl_order % &centralizer;
            assert!(remainder.is_zero(), "|GL({n},2)| not divisible by centralizer order");
            GlClassDescriptor { assignment, rep, size }
        })
        .collect()
}

fn enumerate_assignments(
    polys: &[Poly2],
    index: usize,
    remaining: usize,
    prefix: &mut Vec<(Poly2, Vec<usize>)>,
    out: &mut Vec<Vec<(Poly2, Vec<usize>)>>,
) {
    if remaining == 0 {
        out.push(prefix.clone());
        return;
    }
    let Some(&p) = polys.get(index) else {
        return;
    };
    let d = p.degree();
    if d > remaining {
        return;
    }
    // Skip p entirely.
    enumerate_assignments(polys, index + 1, remaining, prefix, out);
    for m in 1..=remaining / d {
        for parts in partitions(m) {
            prefix.push((p, parts));
            enumerate_assignments(polys, index + 1, remaining - m * d, prefix, out);
            prefix.pop();
        }
    }
}
