//! Exact arithmetic for zeta functions of varieties over finite fields.
//!
//! The crate reconstructs the Weil factorization of `Z(X,t)` from point
//! counts, extracts the special value at `t = q^{-r}` as an exact rational,
//! assembles the cohomological side of the special-value identity from
//! Frobenius eigenvalue data, and provides a constructive calculus on a
//! closed class of abelian groups (Smith normal form, multiplicative
//! kernel/cokernel indices, completions, summand complements, idempotent
//! lifting).
//!
//! Everything is `no_std` + `alloc`; numeric results are arbitrary-precision
//! integers and rationals throughout. Floating point appears only in the
//! root-modulus checks that assign weights to irreducible factors.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abelian;
pub mod finite_field;
pub mod frob_cohomology;
pub mod hodge;
pub mod poly;
pub mod rng;
pub mod special_value;
pub mod variety;
pub mod zeta;

/// Desk-scale resource guard shared by field construction and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    /// Maximum number of points an enumeration is allowed to visit, and the
    /// maximum cardinality of a constructed field.
    pub max_points: u64,
}

impl SizeGuard {
    pub const DEFAULT_MAX_POINTS: u64 = 100_000_000;

    pub fn new(max_points: u64) -> Self {
        SizeGuard { max_points }
    }

    /// Checks that a search space of `points` elements is admissible.
    pub fn admit(&self, points: u128) -> Result<(), SizeExceeded> {
        if points > self.max_points as u128 {
            Err(SizeExceeded {
                needed: points,
                bound: self.max_points,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_points: Self::DEFAULT_MAX_POINTS,
        }
    }
}

/// A computation would visit more points than the configured guard allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeExceeded {
    pub needed: u128,
    pub bound: u64,
}

impl core::fmt::Display for SizeExceeded {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "search space of {} points exceeds the configured bound of {}",
            self.needed, self.bound
        )
    }
}
