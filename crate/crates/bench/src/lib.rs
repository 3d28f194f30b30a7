//! Shared fixtures for the benchmarks.

use rmclass::{affine_cells, AffineElement, BitMatrix, DEFAULT_SEED};

/// Cell representatives of `AGL(n,2)`, a realistic mix of elements.
pub fn representatives(n: usize) -> Vec<AffineElement> {
    affine_cells(n, DEFAULT_SEED)
        .expect("n is in range")
        .into_iter()
        .map(|c| c.rep().clone())
        .collect()
}

/// A dense pseudo-random square matrix from a fixed xorshift stream.
pub fn dense_matrix(size: usize) -> BitMatrix {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    let mut m = BitMatrix::zeros(size, size);
    for r in 0..size {
        for c in 0..size {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            m.set(r, c, state & 1 == 1);
        }
    }
    m
}
