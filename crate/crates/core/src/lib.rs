//! Exact computer algebra for finite-dimensional pointed Hopf algebras of
//! diagonal type built from linking data over finite abelian groups, their
//! duals, their Drinfeld doubles, and the simple modules of both.

pub mod checks;
pub mod cyclo;
pub mod datum;
pub mod group;
pub mod linalg;
pub mod lincomb;
pub mod rewrite;
pub mod hopf;
pub mod dual;
pub mod double;
pub mod modtheory;
pub mod report;
pub mod verma;
