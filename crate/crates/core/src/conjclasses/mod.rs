//! Conjugacy cells of `AGL(n,2)`.
//!
//! A cell is a representative `(A, b)` together with the number of group
//! elements it stands for. Every element of a cell is conjugate to its
//! representative, so any class function (such as a fixed-point count) may be
//! summed cell by cell. Cells may be finer than conjugacy classes.
//!
//! The canonical provider walks the classes of `GL(n,2)` and splits the
//! fiber `{(A', b)}` over each class by orbits of the centralizer of `A`
//! acting on `b`: conjugating `(A, b)` by `(C, d)` with `CA = AC` gives
//! `(A, Cb + (A + I)d)`. The orbits are computed by union-find under an
//! explicit generating set; a generating set that misses part of the
//! centralizer only over-refines the cells, which leaves sums unchanged.

mod cellfile;
mod exhaustive;
mod gl;

use std::path::PathBuf;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{solve_commutant, BitMatrix, BitVector};
use crate::group::{group_orders, point_to_vector, vector_to_point, AffineElement};
use crate::MAX_N;

pub use cellfile::{read_cells, write_cells, CELL_FILE_MAGIC};
pub use exhaustive::{exhaustive_cells, exhaustive_gl_classes, EXHAUSTIVE_MAX_N};
pub use gl::{gl_classes, irreducibles, partitions, primary_centralizer_order, GlClassDescriptor, Poly2};

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5eed_2b0f_a11c_e115;

/// A representative element and the number of group elements it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjCell {
    rep: AffineElement,
    size: BigUint,
}

impl ConjCell {
    pub fn new(rep: AffineElement, size: BigUint) -> Result<Self> {
        if size == BigUint::ZERO {
            return Err(Error::Validation("cell size must be positive".into()));
        }
        Ok(Self { rep, size })
    }

    pub(crate) fn new_unchecked(rep: AffineElement, size: BigUint) -> Self {
        Self { rep, size }
    }

    #[inline]
    pub fn rep(&self) -> &AffineElement {
        &self.rep
    }

    #[inline]
    pub fn size(&self) -> &BigUint {
        &self.size
    }
}

/// Where conjugacy cells come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provider {
    /// Enumerate the whole group (`n <= 4`).
    Exhaustive,
    /// Rational canonical forms plus fiber orbits.
    Canonical,
    /// Read cells from a file written by [`write_cells`].
    Import(PathBuf),
}

impl Provider {
    pub fn tag(&self) -> &'static str {
        match self {
            Provider::Exhaustive => "exhaustive",
            Provider::Canonical => "canonical",
            Provider::Import(_) => "import",
        }
    }

    pub fn cells(&self, n: usize, seed: u64) -> Result<Vec<ConjCell>> {
        match self {
            Provider::Exhaustive => exhaustive_cells(n),
            Provider::Canonical => affine_cells(n, seed),
            Provider::Import(path) => {
                let text = std::fs::read_to_string(path)?;
                let cells = read_cells(&text)?;
                let found = cells.first().map(|c| c.rep().n()).unwrap_or(0);
                if found != n {
                    return Err(Error::Validation(format!(
                        "cell file is for n = {found}, expected n = {n}"
                    )));
                }
                Ok(cells)
            }
        }
    }
}

/// Checks that every cell lives in `AGL(n,2)` and that sizes add up to the
/// group order.
pub fn validate_cells(n: usize, cells: &[ConjCell]) -> Result<()> {
    for (i, cell) in cells.iter().enumerate() {
        if cell.rep().n() != n {
            return Err(Error::Validation(format!(
                "cell {i} has degree {}, expected {n}",
                cell.rep().n()
            )));
        }
        if !cell.rep().matrix().is_invertible() {
            return Err(Error::Validation(format!("cell {i} has a singular matrix")));
        }
        if *cell.size() == BigUint::ZERO {
            return Err(Error::Validation(format!("cell {i} has size 0")));
        }
    }
    let total: BigUint = cells.iter().map(|c| c.size()).sum();
    let (_, agl) = group_orders(n);
    if total != agl {
        return Err(Error::Validation(format!(
            "cell sizes sum to {total}, expected |AGL({n},2)| = {agl}"
        )));
    }
    Ok(())
}

/// A map on the fiber over `A`, with the conjugating element that induces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberMap {
    /// `b -> Cb`, induced by conjugation with `(C, 0)`.
    Linear(BitMatrix),
    /// `b -> b + (A + I)d`, induced by conjugation with `(I, d)`.
    Translate { offset: BitVector, witness: BitVector },
}

impl FiberMap {
    pub fn apply(&self, b: &BitVector) -> BitVector {
        match self {
            FiberMap::Linear(c) => c.mul_vec(b).expect("fiber map has matching size"),
            FiberMap::Translate { offset, .. } => b ^ offset,
        }
    }

    /// The group element whose conjugation action realises this map.
    pub fn conjugator(&self, n: usize) -> AffineElement {
        match self {
            FiberMap::Linear(c) => AffineElement::linear(c.clone()).expect("fiber maps are invertible"),
            FiberMap::Translate { witness, .. } => {
                debug_assert_eq!(witness.len(), n);
                AffineElement::translation(witness.clone())
            }
        }
    }

    /// Action on point indices as a lookup table.
    fn point_table(&self, n: usize) -> Vec<u32> {
        match self {
            FiberMap::Linear(c) => {
                // Point bit t is coordinate n-1-t, so its image is column n-1-t.
                let cols: Vec<u32> = (0..n).map(|t| vector_to_point(&c.column(n - 1 - t)) as u32).collect();
                let mut table = vec![0u32; 1 << n];
                for p in 1..1usize << n {
                    let t = p.trailing_zeros() as usize;
                    table[p] = table[p & (p - 1)] ^ cols[t];
                }
                table
            }
            FiberMap::Translate { offset, .. } => {
                let v = vector_to_point(offset) as u32;
                (0..1u32 << n).map(|p| p ^ v).collect()
            }
        }
    }
}

fn class_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Generators of (a subgroup of) the centralizer action on the fiber over
/// `a`: invertible commutant elements and translations by a basis of the
/// image of `A + I`.
pub fn fiber_generators(a: &BitMatrix, seed: u64) -> Result<Vec<FiberMap>> {
    let n = a.rows();
    let commutant = solve_commutant(a)?;
    let identity = BitMatrix::identity(n);
    let mut maps = Vec::new();
    let push_linear = |c: BitMatrix, maps: &mut Vec<FiberMap>| {
        if c.is_invertible() && c != identity {
            maps.push(FiberMap::Linear(c));
        }
    };
    for b in &commutant {
        push_linear(b.clone(), &mut maps);
        push_linear(b.add(&identity)?, &mut maps);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4 * n * n {
        let mut c = BitMatrix::zeros(n, n);
        for b in &commutant {
            if rng.random::<bool>() {
                c = c.add(b)?;
            }
        }
        push_linear(c, &mut maps);
    }
    // Columns of A + I that extend the span seen so far form a basis of its
    // image, each with a unit witness.
    let shift = a.add_identity()?;
    let mut span: Vec<BitVector> = Vec::new();
    for j in 0..n {
        let col = shift.column(j);
        let mut candidate = span.clone();
        candidate.push(col.clone());
        if BitMatrix::from_rows(&candidate, n)?.rank() > span.len() {
            span.push(col.clone());
            maps.push(FiberMap::Translate {
                offset: col,
                witness: BitVector::unit(n, j),
            });
        }
    }
    Ok(maps)
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        Self {
            parent: (0..len as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, x: u32, y: u32) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            // The smaller index becomes the root, so roots are orbit minima.
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Orbits of the fiber maps on point indices, as `(smallest point, size)`
/// sorted by smallest point.
pub fn fiber_orbits(n: usize, maps: &[FiberMap]) -> Vec<(usize, usize)> {
    let mut uf = UnionFind::new(1 << n);
    for map in maps {
        for (p, &q) in map.point_table(n).iter().enumerate() {
            uf.union(p as u32, q);
        }
    }
    let mut sizes = vec![0usize; 1 << n];
    for p in 0..1u32 << n {
        sizes[uf.find(p) as usize] += 1;
    }
    sizes.into_iter().enumerate().filter(|&(_, s)| s > 0).collect()
}

/// Cells of `AGL(n,2)` from canonical `GL` classes and fiber orbits.
pub fn affine_cells(n: usize, seed: u64) -> Result<Vec<ConjCell>> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidParameters(format!("n must be in 1..={MAX_N}, got {n}")));
    }
    let classes = gl_classes(n);
    let per_class: Vec<Result<Vec<ConjCell>>> = classes
        .par_iter()
        .enumerate()
        .map(|(index, class)| {
            let maps = fiber_generators(class.rep(), class_seed(seed, index))?;
            Ok(fiber_orbits(n, &maps)
                .into_iter()
                .map(|(point, size)| {
                    let rep = AffineElement::new_unchecked(class.rep().clone(), point_to_vector(n, point));
                    ConjCell::new_unchecked(rep, class.size() * BigUint::from(size))
                })
                .collect())
        })
        .collect();
    let mut cells = Vec::new();
    for chunk in per_class {
        cells.extend(chunk?);
    }
    Ok(cells)
}
