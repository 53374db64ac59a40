//! Exact-arithmetic toolkit for Cameron-Liebler line classes in PG(3,q).
//!
//! The crate is organised around the flow of the feasibility pipeline:
//!
//! * [`galois`] — arithmetic in GF(q) for the small orders q <= 9, via full
//!   lookup tables.
//! * [`projgeom`] — incidence models of PG(2,q) and PG(3,q): points, lines,
//!   planes, pencils, polarity and quotient geometries.
//! * [`exact`] — arbitrary-precision rationals, degree-<=2 polynomials in the
//!   weight-count indeterminates, and row reduction of linear systems whose
//!   right-hand sides are such polynomials.
//! * [`patterns`] — the modular existence gate, admissible point/plane weight
//!   sets, and generation of admissible line patterns.
//! * [`countsys`] — the global counting identities and the full linear system
//!   over the per-pattern line counts `z_i`.
//! * [`feasibility`] — enumeration of feasible weight distributions and exact
//!   non-negative integer solving of the reduced systems.
//! * [`classes`] — line-class representation, Cameron-Liebler verification,
//!   complement/dual/switching transforms, cap recognition, projective
//!   equivalence, the class catalog and two-intersection set parameters.
//! * [`reconstruct`] — the search machinery: completion of a class from the
//!   lines meeting a fixed base line, classification of planar sections in
//!   PG(2,5), the quotient-plane point-set search, and the x=12
//!   reconstruction driver.
//! * [`pipeline`] — the batch driver tying the stages together into one
//!   report per (q, x).
//!
//! Everything is exact: no floating point is used anywhere.

pub mod bitset;
pub mod classes;
pub mod countsys;
pub mod exact;
pub mod feasibility;
pub mod galois;
pub mod patterns;
pub mod pipeline;
pub mod projgeom;
pub mod reconstruct;
pub mod tables;
