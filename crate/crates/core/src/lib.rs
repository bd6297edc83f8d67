//! Exact computation of lattice kissing numbers and of the number of lattice
//! vectors in the annulus `4 <= |v|^2 <= hi2` around a packing lattice.
//!
//! * [`exact`]: rationals, rational matrices, fraction-free determinants.
//! * [`lattice`]: Gram-matrix lattices and the catalog of named lattices.
//! * [`shells`]: exact shell enumeration with node budgets.
//! * [`structure`]: classes modulo `2Λ`, midpoint triples, collinear points,
//!   the integer system on class profiles.
//! * [`theta`]: closed-form theta coefficients of `E8` and the Leech lattice.
//! * [`polytope`]: inradius/circumradius verdicts for three-dimensional bodies.
//! * [`verify`]: the claims manifest and report generation.
//!
//! ```
//! use kissing::exact::Rational;
//! use kissing::lattice::catalog;
//! use kissing::shells::{enumerate_shell, ShellQuery};
//!
//! let l = catalog("E7:2").unwrap();
//! let set = enumerate_shell(&l, &ShellQuery::new(Rational::from(4), Rational::from(8)).unwrap()).unwrap();
//! assert_eq!(set.total, 882);
//! ```
//!
//! The guide in `book/` walks through each module; its code blocks run as
//! doc-tests of this crate.

pub mod exact;
pub mod lattice;
pub mod polytope;
pub mod shells;
pub mod structure;
pub mod theta;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/shells.md")]
    mod shells {}
    #[doc = include_str!("../../../book/src/structure.md")]
    mod structure {}
    #[doc = include_str!("../../../book/src/theta.md")]
    mod theta {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
