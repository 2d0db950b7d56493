//! Exact mixed moments of products of complex Gaussian (Ginibre) matrices.
//!
//! The crate is `no_std` and only needs an allocator. Everything here is exact:
//! counts are arbitrary-precision integers, `N` is a formal symbol and every
//! moment is a Laurent polynomial in `N` with rational coefficients.
//!
//! - [`combinatorics`]: Catalan and Fuss-Catalan numbers, necklaces,
//!   partitions and the closed-form planar coefficients `tc_{1^m,1^m}`.
//! - [`word`]: cyclic words over `{X, X†}`.
//! - [`wick`]: pairing enumeration and index contraction with a spectator
//!   variance matrix `W`, producing a [`TracePolynomial`].
//! - [`wishart`]: exact finite-`N` multi-trace moments of the square complex
//!   Wishart ensemble.
//! - [`moments`]: the large-`N` Fuss-Catalan master formula, the exact
//!   finite-`N` pipeline for two factors and the multi-Wishart recursion.
//!
//! ```
//! use ginibre_core::{moments, EnsembleSpec, Limits, Word};
//!
//! let word: Word = "xdxdxd".parse().unwrap();
//! let spec = EnsembleSpec::new(2).unwrap();
//! let result = moments::large_n_moment(&word, &spec, &Limits::default()).unwrap();
//! assert_eq!(result.large_n_value().unwrap().to_integer(), 12.into());
//! ```

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod combinatorics;
pub mod laurent;
pub mod moments;
pub mod num;
pub mod wick;
pub mod wishart;
pub mod word;

pub use combinatorics::Partition;
pub use laurent::Laurent;
pub use moments::{EnsembleSpec, MomentError, MomentMode, MomentResult, TcSource};
pub use wick::{Diagram, Pairing, Position, TraceMonomial, TracePolynomial};
pub use wishart::WishartTable;
pub use word::{Letter, Word, WordParseError};

/// Enumeration limits shared by every evaluator that walks pairings.
///
/// Full Wick enumeration visits `m!` pairings of a weight-`m` word; the planar
/// enumerator visits only the Catalan-many non-crossing ones and therefore
/// reaches further.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest weight accepted by full (all-genus) enumeration.
    pub max_weight: usize,
    /// Largest weight accepted by the non-crossing enumerator.
    pub max_planar_weight: usize,
}

impl Limits {
    pub const DEFAULT_MAX_WEIGHT: usize = 8;
    pub const DEFAULT_MAX_PLANAR_WEIGHT: usize = 12;

    pub fn with_max_weight(max_weight: usize) -> Self {
        Self {
            max_weight,
            max_planar_weight: Self::DEFAULT_MAX_PLANAR_WEIGHT.max(max_weight),
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_weight: Self::DEFAULT_MAX_WEIGHT,
            max_planar_weight: Self::DEFAULT_MAX_PLANAR_WEIGHT,
        }
    }
}

/// A weight exceeded the configured enumeration cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityError {
    pub weight: usize,
    pub cap: usize,
}

impl core::fmt::Display for CapacityError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "weight {} exceeds the enumeration cap of {} (raise the cap explicitly)",
            self.weight, self.cap
        )
    }
}
