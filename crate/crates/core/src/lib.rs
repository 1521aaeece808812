//! GKM classes of regular semisimple Hessenberg varieties in type A.
//!
//! The crate is organised bottom-up:
//!
//! * [`permutation`]: one-line permutations, roots, Young subgroups, coset
//!   representatives and Bruhat order.
//! * [`poly`]: exact sparse polynomials over `Z[t_1, ..., t_n]`.
//! * [`hessenberg`]: Hessenberg functions and their GKM graphs.
//! * [`class`]: GKM classes, their verification and the two constructions
//!   (top-coset classes and the two-part family `f_λ^(k)`).
//! * [`dot`]: the dot action, orbits and stabilizers.
//! * [`linalg`] and [`independence`]: rank certificates over `Z[t]` and the
//!   hypothesis checkers for the orbit independence theorems.

pub mod class;
pub mod dot;
pub mod error;
pub mod hessenberg;
pub mod independence;
pub mod linalg;
pub mod permutation;
pub mod poly;

pub use class::{GkmClass, VerificationCertificate, Violation};
pub use dot::Orbit;
pub use error::{Error, Result};
pub use hessenberg::{Edge, GkmGraph, HessenbergFunction};
pub use independence::{IndependenceCertificate, IndependenceOptions, TheoremHypothesisReport, Verdict};
pub use permutation::{Composition, Permutation, Root, Side};
pub use poly::MultiPoly;
