//! Skew-polynomial arithmetic over small finite fields, and the
//! rank-metric codes and semifields it produces.
//!
//! The layers, bottom up:
//!
//! * [`gf`]: tabulated arithmetic in `F_{p^m}` with integer-encoded
//!   elements and Frobenius helpers.
//! * [`poly`]: ordinary (commutative) polynomials over such a field, used
//!   for centre computations and residue fields.
//! * [`skewpoly`]: the twisted ring `L[x; sigma]` — both one-sided
//!   divisions, gcrd, minimal central left multiples, irreducibility.
//! * [`quotient`]: the quotient by a central `F(x^n)`, its rank function,
//!   inverses, and matrix representations over the residue field.
//! * [`codes`]: the twisted code family, exhaustive/sampled minimum-rank
//!   verification, idealiser-based invariants, known-family comparison.
//! * [`semifield`]: the `k = 1` multiplications and spread-set displays.
//! * [`reproduce`]: fixed worked examples rendered as stable JSON.

pub mod codes;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod poly;
pub mod quotient;
pub mod reproduce;
pub mod semifield;
pub mod skewpoly;

pub use codes::{Code, NuclearParams, VerifyMode, VerifyOutcome};
pub use error::{Error, Result};
pub use gf::{Automorphism, FieldCtx};
pub use poly::Poly;
pub use quotient::{MatrixRep, QuotientCtx};
pub use semifield::SemifieldCtx;
pub use skewpoly::{SkewPoly, SkewRing};
