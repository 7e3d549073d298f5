//! Exact-arithmetic toolkit for certifying lower bounds on the p-part of the
//! class group of the division field Q(E[p^n]) of an elliptic curve E/Q.
//!
//! Everything is computed over exact rationals; no floating point enters any
//! certified statement.  The pipeline in [`job`] ties the pieces together:
//!
//! * [`arith`] — arbitrary-precision integers/rationals, p-adic valuations,
//!   factorization with bounded effort, primality.
//! * [`curve`] — Weierstrass models over Q, the group law, torsion.
//! * [`finite_field`] — reductions over F_q (q ≤ 10^6), point counts, group
//!   structure of the p-primary part.
//! * [`local`] — Tate's algorithm at every prime (including 2 and 3), minimal
//!   models, Kodaira types, Tamagawa numbers.
//! * [`formal`] — the formal group of E, its logarithm, and membership of a
//!   rational point in p^n·E_1(Q_p).
//! * [`criteria`] — the global conditions, witness certification, independence
//!   ranks, and the assembled bounds.
//! * [`job`] — JSON jobs, the report data model, and the bundled reference
//!   examples.
//!
//! Every certified inequality is one-sided: the tool may fail to prove a true
//! bound, but a report field that says "proved" is backed by an exact
//! computation described in the accompanying certificate.

pub mod arith;
pub mod criteria;
pub mod curve;
pub mod finite_field;
pub mod formal;
pub mod job;
pub mod local;

pub use arith::{factorize, is_prime, vp, FactorEffort, Factorization, Int, Rat, Valuation};
pub use curve::{IsomorphismData, RationalPoint, WeierstrassModel};
