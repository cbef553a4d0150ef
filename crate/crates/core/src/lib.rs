//! Exact verification of nonvanishing-minor theorems for Fourier matrices of
//! prime size.
//!
//! The crate covers three settings:
//!
//! * characteristic zero, where every minor of `F_p` is nonzero (Chebotarëv);
//! * the real subfield `Q(2cos(2π/p))`, where the Vandermonde matrix on the
//!   nodes `2cos(2πj/p)` and the cosine matrix `(2cos(2πkj/p))` have no
//!   vanishing minors;
//! * characteristic `q`, where minors can vanish and explicit lower bounds on
//!   `q` guarantee they do not.
//!
//! Everything is computed with exact arithmetic. Minors of `F_p` are decided
//! through Schur polynomials: with `A` the row set and `B` the column set,
//! `det(F_p[A, B]) = 0` exactly when `s_A(ω^{b_1}, …, ω^{b_k}) = 0`, and the
//! right-hand side is the univariate polynomial `α_B(s_A)` evaluated at `ω`.
//! [`schur::jacobi_trudi_spec`] computes `α_B(s_A) mod (X^p − 1)`.

pub mod bounds;
pub mod cyclo_factor;
pub mod enumerate;
mod error;
pub mod identities;
pub mod minors;
pub mod real_cheb;
pub mod rings;
pub mod schur;

pub use error::{Error, Result};

pub use bounds::{BoundMethod, BoundReport, TableRow};
pub use cyclo_factor::{CosetTable, FieldSetup, TraceTable};
pub use minors::{Context, MinorReport};
pub use real_cheb::CosineField;
pub use rings::cyclo::CycloVec;
pub use rings::fq::{ExtField, FqElem, FqExtElem};
pub use rings::numfield::{NumFieldElem, NumberField};
pub use rings::poly::DensePoly;
pub use schur::{IndexSet, Partition, SchurSpec};

/// Crate version recorded in reports and cache files.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Options shared by the long-running enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; `1` runs inline on the calling thread.
    pub threads: usize,
    /// Allow the extended (slow) size range.
    pub extended: bool,
    /// Ignore every size guard.
    pub force: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { threads: 1, extended: false, force: false }
    }
}

impl RunOptions {
    pub fn with_threads(threads: usize) -> Self {
        RunOptions { threads, ..Self::default() }
    }

    /// Runs `f` on a pool with the configured number of threads.
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        let threads = self.threads.max(1);
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}
