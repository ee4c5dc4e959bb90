//! Toolkit for Fermat quotients q_p(u) = ((u^(p-1) - 1)/p) mod p and the
//! structures built on top of them: the sets of arguments where the quotient
//! vanishes, counts of power-residue classes, generalized divisor functions,
//! Ihara-type sums of Λ(n)/n over vanishing arguments, the logarithm of the
//! index of the degree-p subfield of the p²-th cyclotomic field, and a
//! diagnostic harness comparing all of these against their classical explicit
//! bounds at desk scale.
//!
//! Conventions used throughout:
//! - p is an odd prime; 3 ≤ p < 2^32 on the fast path (see [`modarith`]), with
//!   arbitrary-precision fallbacks in [`bigint`].
//! - q_p(u) = 0 for every multiple of p, so all multiples of p belong to the
//!   vanishing set; reports carry an `include_p_term`/`includes_multiples_of_p`
//!   flag so both conventions stay recoverable.

pub mod bigint;
pub mod bounds;
pub mod divisor;
mod error;
pub mod fermatq;
pub mod ihara;
pub mod index;
pub mod modarith;
pub mod parallel;
pub mod primes;
mod util;

pub use error::{Error, Result};
pub use modarith::{make_context, modexp_p2, PrimeContext};
