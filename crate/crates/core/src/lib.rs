//! Counting affine equivalence classes of Boolean functions.
//!
//! The group `AGL(n,2)` acts on Boolean functions of degree at most `s` in
//! `n` variables, taken modulo functions of degree at most `k`. This crate
//! counts the orbits of that action exactly, for `n <= 10`, by summing fixed
//! points over conjugacy cells of the group.
//!
//! ```
//! use rmclass::{count, Provider, QuotientSpace, DEFAULT_SEED};
//!
//! let space = QuotientSpace::new(4, 4, 1).unwrap();
//! let result = count(space, &Provider::Canonical, DEFAULT_SEED).unwrap();
//! assert_eq!(result.count, 8u32.into());
//! ```

pub mod anf;
pub mod burnside;
pub mod conjclasses;
pub mod error;
pub mod gf2;
pub mod group;
pub mod oracle;
pub mod repr;

/// Largest supported number of variables.
pub const MAX_N: usize = 10;

pub use anf::{Anf, CoefficientVector, Monomial, MonomialBasis, QuotientSpace};
pub use burnside::{count, count_all, count_with_cells, fix_count, symmetry_check, CountResult, SymmetryPair};
pub use conjclasses::{
    affine_cells, exhaustive_cells, gl_classes, read_cells, validate_cells, write_cells, ConjCell, GlClassDescriptor,
    Provider, DEFAULT_SEED,
};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use group::{group_orders, AffineElement, Permutation};
pub use oracle::{verify, OracleEntry, OracleTable, Verdict};
pub use repr::{rho_matrix, tau_matrix, Representation, TauMatrix};
