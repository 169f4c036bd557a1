//! Exact-arithmetic certificates for the kernel group acting on a
//! generalized Kummer manifold.
//!
//! For a level `n >= 3`, the automorphisms acting trivially on degree-2
//! cohomology form the group `K = T(n)·⟨ι⟩`: the `(Z/n)^4` of n-torsion
//! translations extended by the inversion involution. This crate certifies
//! mechanically that no nontrivial element of `K` acts trivially on the
//! *total* cohomology, by two independent devices:
//!
//! * [`exterior`] — an exact sparse exterior algebra on the coordinate
//!   1-forms of the summand-zero torus, modulo its two linear relations.
//!   The invariant (2,1)-form built by [`exterior::build_tau_tilde`] is
//!   nonzero and is negated by every inversion-type element.
//! * [`lefschetz`] — fixed-point arithmetic driven by the Euler-number
//!   formula `n^3·σ(n)`. Every nontrivial torsion translation has Lefschetz
//!   number `n^3·σ(d)` with `d = n/p < n`, strictly below the Euler number,
//!   so it cannot act trivially.
//!
//! [`symplectic`] checks the supporting linear-algebra fact over exact
//! rationals: the fixed space of a finite-order symplectic map is
//! even-dimensional with nondegenerate restricted form.

pub mod arith;
pub mod autgroup;
pub mod exterior;
pub mod lefschetz;
pub mod symplectic;

// re-exported so downstream crates stay on the same numeric types
pub use num_bigint;
pub use num_rational;
pub use num_traits;

pub use arith::{ArithError, Level};
pub use autgroup::{AutElement, GroupError, Sign, TorsionElement};
pub use exterior::{ExteriorError, Form, Generator, Monomial, Permutation};
pub use lefschetz::{
    CertificateReport, FixedLocusDecomposition, LefschetzError, LefschetzReport, Verdict,
};
pub use symplectic::{FixedSubspaceReport, RationalMatrix, SymplecticError, SymplecticSpace};
