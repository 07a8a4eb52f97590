//! Exact computer algebra for the nonholomorphic discrete series of `SU(2,1)`.
//!
//! Everything here is exact rational arithmetic over sparse data: the Lie
//! algebra `sl(3)` with its Cartan decomposition, the Clifford algebra `C(p)`
//! and spin module, the enveloping algebra in PBW normal form, the algebra
//! `A = U(g) ⊗ C(p)`, truncated discrete series modules, their Dirac
//! cohomology, and the reduction engine for the induced module `A ⊗_B W`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod check;
pub mod clifford;
pub mod cohomology;
pub mod enveloping;
pub mod induction;
pub mod lie;
pub mod linalg;
pub mod module;
pub mod rational;

pub use check::{CheckFailure, CheckResult, CheckStats};
pub use rational::Rational;

#[doc(hidden)]
pub mod __private {
    pub use alloc::format;
}
