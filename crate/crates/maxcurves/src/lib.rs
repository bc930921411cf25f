//! Exact machinery for deciding when an elliptic-curve isogeny class over
//! F_q attains the Hasse upper bound over F_{q^n}, and for enumerating all
//! such (q, a1, n) triples over ranges of prime powers.
//!
//! The library works at the level of isogeny classes, i.e. integer pairs
//! (q, a1) with q >= 2 and a1^2 <= 4q: maximality over F_{q^n} is the
//! integer statement `-a_n = floor(2 sqrt(q)^n)` on the trace sequence
//! a_{n+1} = a1 a_n - q a_{n-1}. All decisions are exact; floating-point
//! style computations (the degree bound, Frobenius angles) are carried out
//! in certified fixed-point arithmetic with explicit error enclosures.

pub mod bound;
pub mod cli;
pub mod cubic;
pub mod diophantine;
pub mod error;
pub mod exact;
pub mod fixed;
pub mod output;
pub mod primes;
pub mod search;
pub mod supersingular;

pub use error::{Error, Result};
pub use exact::{
    classify, is_maximal, isqrt, trace, Classification, MaximalTriple, TracePair, TraceSequence,
    TripleSource,
};
pub use supersingular::{supersingular_degrees, DegreeProgression};
