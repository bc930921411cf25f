//! Exact arbitrary-precision arithmetic: integer square roots, trace
//! sequences, the floor-of-surd maximality test and pair classification.
//!
//! Everything here is integer-only. The defining equation
//! `-a_n = floor(2 sqrt(q)^n)` is decided through the equivalent statement
//! `m = floor(sqrt(4 q^n))` for `m = -a_n`, i.e. `m^2 <= 4 q^n < (m+1)^2`,
//! so no floating point is ever involved.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A pair (q, a1) with q >= 2 and a1^2 <= 4q.
///
/// This is the atom of the whole system: q is the (prospective) field size
/// and a1 the Frobenius trace. The constructor enforces the Hasse
/// constraint exactly in integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TracePair {
    q: u64,
    a1: i64,
}

impl TracePair {
    pub fn new(q: u64, a1: i64) -> Result<Self> {
        let a2 = (a1 as i128) * (a1 as i128);
        if q < 2 || a2 > 4 * q as i128 {
            return Err(Error::InvalidTracePair { q, a1 });
        }
        Ok(TracePair { q, a1 })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a1(&self) -> i64 {
        self.a1
    }

    pub fn classify(&self) -> Classification {
        classify(*self)
    }
}

/// Ordinary vs. supersingular, with the multiplicative order of the
/// normalized Frobenius eigenvalue in the supersingular case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Ordinary,
    /// `order` is the order of beta = alpha/sqrt(q) as a root of unity;
    /// always one of 1, 2, 3, 4, 6, 8, 12.
    Supersingular { order: u8 },
}

impl Classification {
    pub fn is_ordinary(&self) -> bool {
        matches!(self, Classification::Ordinary)
    }

    pub fn is_supersingular(&self) -> bool {
        !self.is_ordinary()
    }

    pub fn order(&self) -> Option<u8> {
        match self {
            Classification::Ordinary => None,
            Classification::Supersingular { order } => Some(*order),
        }
    }
}

/// Where an emitted triple came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TripleSource {
    OrdinarySearch,
    SupersingularProgression,
    DirectCheck,
}

impl std::fmt::Display for TripleSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TripleSource::OrdinarySearch => "OrdinarySearch",
            TripleSource::SupersingularProgression => "SupersingularProgression",
            TripleSource::DirectCheck => "DirectCheck",
        };
        f.write_str(s)
    }
}

/// A triple (q, a1, n) satisfying `-a_n = floor(2 sqrt(q)^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MaximalTriple {
    pub q: u64,
    pub a1: i64,
    pub n: u64,
    pub source: TripleSource,
}

/// Integer square root: returns r with r^2 <= n < (r+1)^2.
///
/// Newton iteration starting from a power-of-two overestimate; the
/// sequence decreases strictly until it stabilizes at floor(sqrt(n)),
/// and a final correction step makes the postcondition self-evident.
pub fn isqrt(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    let bits = n.bits();
    if bits <= 52 {
        // Exact in f64 for inputs below 2^52.
        let r = (u64::try_from(n.clone()).unwrap() as f64).sqrt() as u64;
        let mut r = BigUint::from(r);
        correct_isqrt(&mut r, n);
        return r;
    }
    // x0 = 2^ceil(bits/2) >= sqrt(n)
    let mut x: BigUint = BigUint::one() << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    correct_isqrt(&mut x, n);
    x
}

/// Monotone final correction: at most one step in either direction is
/// ever taken after Newton has stabilized, but both loops are kept so the
/// postcondition r^2 <= n < (r+1)^2 holds no matter what the seed was.
fn correct_isqrt(r: &mut BigUint, n: &BigUint) {
    while &*r * &*r > *n {
        *r -= 1u32;
    }
    loop {
        let next = &*r + 1u32;
        if &next * &next > *n {
            break;
        }
        *r = next;
    }
}

/// Integer square root of a signed input; errors on negative values.
pub fn isqrt_checked(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::NegativeInput("isqrt of a negative integer"));
    }
    Ok(BigInt::from(isqrt(n.magnitude())))
}

/// floor(sqrt(n)) for machine-sized inputs.
pub fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    // sqrt(u128::MAX) < 2^64, and the f64 seed can round up past it
    let mut r = ((n as f64).sqrt() as u128).clamp(1, (1 << 64) - 1);
    // f64 sqrt of a 128-bit value can be off by a few thousand ulps; two
    // Newton steps restore full accuracy before the +-1 correction.
    for _ in 0..2 {
        r = ((r + n / r) / 2).clamp(1, (1 << 64) - 1);
    }
    while r > 0 && r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// floor(2 sqrt(q)) computed exactly as isqrt(4q).
pub fn floor_2sqrt(q: u64) -> u64 {
    isqrt_u128(4 * q as u128) as u64
}

/// Whether q is a perfect square, decided exactly.
pub fn is_perfect_square(q: u64) -> bool {
    let r = isqrt_u128(q as u128);
    r * r == q as u128
}

/// Iterator over the trace sequence a_0 = 2, a_1, a_2, ... of a pair.
///
/// Yields a_n starting from n = 0; each step costs one small-by-big
/// multiplication pair, so scanning a prefix of the sequence (as the
/// brute-force oracles do) is much cheaper than recomputing from scratch.
pub struct TraceSequence {
    q: BigInt,
    a1: BigInt,
    prev: BigInt, // a_{k-1}
    cur: BigInt,  // a_k
    k: u64,
}

impl TraceSequence {
    pub fn new(pair: TracePair) -> Self {
        TraceSequence {
            q: BigInt::from(pair.q()),
            a1: BigInt::from(pair.a1()),
            prev: BigInt::zero(),
            cur: BigInt::zero(),
            k: 0,
        }
    }
}

impl Iterator for TraceSequence {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let out = match self.k {
            0 => BigInt::from(2),
            1 => self.a1.clone(),
            _ => &self.a1 * &self.cur - &self.q * &self.prev,
        };
        self.prev = std::mem::replace(&mut self.cur, out.clone());
        self.k += 1;
        Some(out)
    }
}

/// The Frobenius trace a_n over the degree-n extension, from the
/// recurrence a_{n+1} = a1 a_n - q a_{n-1} with a_0 = 2.
pub fn trace(pair: TracePair, n: u64) -> BigInt {
    TraceSequence::new(pair).nth(n as usize).unwrap()
}

/// 4 q^n as an unsigned big integer (binary exponentiation).
pub fn four_q_pow(q: u64, n: u64) -> BigUint {
    let n32 = u32::try_from(n).expect("extension degree exceeds u32");
    BigUint::from(q).pow(n32) << 2
}

/// Whether -a_n = floor(2 sqrt(q)^n), i.e. the pair is maximal in degree n.
///
/// Decided as m = -a_n >= 0 and m^2 <= 4 q^n < (m+1)^2, which is the exact
/// meaning of m = floor(sqrt(4 q^n)).
pub fn is_maximal(pair: TracePair, n: u64) -> bool {
    assert!(n >= 1, "degree must be positive");
    let m = -trace(pair, n);
    is_maximal_with_trace(pair.q(), n, &m)
}

/// Same test when the caller already has m = -a_n at hand.
pub(crate) fn is_maximal_with_trace(q: u64, n: u64, m: &BigInt) -> bool {
    if m.is_negative() {
        return false;
    }
    let m = m.magnitude();
    let s = four_q_pow(q, n);
    if m * m > s {
        return false;
    }
    let m1 = m + 1u32;
    &m1 * &m1 > s
}

/// Classify a pair as ordinary or supersingular (with the order of beta).
///
/// Supersingularity is equivalent to a1^2 in {0, q, 2q, 3q, 4q}; the order
/// follows from which cyclotomic polynomial beta satisfies:
/// a1 = 2 sqrt(q) -> 1, -2 sqrt(q) -> 2, -sqrt(q) -> 3, 0 -> 4,
/// sqrt(q) -> 6, a1^2 = 2q -> 8, a1^2 = 3q -> 12.
pub fn classify(pair: TracePair) -> Classification {
    let s = (pair.a1() as i128) * (pair.a1() as i128);
    let s = s as u128;
    let q = pair.q() as u128;
    let order = if s == 0 {
        4
    } else if s == q {
        if pair.a1() > 0 {
            6
        } else {
            3
        }
    } else if s == 2 * q {
        8
    } else if s == 3 * q {
        12
    } else if s == 4 * q {
        if pair.a1() > 0 {
            1
        } else {
            2
        }
    } else {
        return Classification::Ordinary;
    };
    Classification::Supersingular { order }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(q: u64, a1: i64) -> TracePair {
        TracePair::new(q, a1).unwrap()
    }

    #[test]
    fn trace_pair_rejects_hasse_violations() {
        assert!(TracePair::new(2, 3).is_err());
        assert!(TracePair::new(1, 0).is_err());
        assert!(TracePair::new(0, 0).is_err());
        assert!(TracePair::new(2, 2).is_ok()); // a1^2 = 4 = 4q/2... 4 <= 8
        assert!(TracePair::new(4, 4).is_ok()); // equality a1^2 = 4q
        assert!(TracePair::new(4, 5).is_err());
    }

    #[test]
    fn isqrt_small_values() {
        assert_eq!(isqrt(&BigUint::from(0u32)), BigUint::from(0u32));
        assert_eq!(isqrt(&BigUint::from(32u32)), BigUint::from(5u32));
        // 4 * 5^7 = 312500: smallest r with (r+1)^2 > 312500 is 559
        assert_eq!(isqrt(&BigUint::from(312500u32)), BigUint::from(559u32));
    }

    #[test]
    fn isqrt_checked_rejects_negative() {
        assert_eq!(
            isqrt_checked(&BigInt::from(-1)),
            Err(Error::NegativeInput("isqrt of a negative integer"))
        );
        assert_eq!(isqrt_checked(&BigInt::from(17)).unwrap(), BigInt::from(4));
    }

    #[test]
    fn trace_matches_hand_computed_values() {
        assert_eq!(trace(pair(2, 1), 3), BigInt::from(-5));
        assert_eq!(trace(pair(7, 0), 0), BigInt::from(2));
        assert_eq!(trace(pair(2, -1), 5), BigInt::from(-11));
        // a_1 is just a1
        assert_eq!(trace(pair(11, -2), 1), BigInt::from(-2));
    }

    #[test]
    fn trace_sequence_agrees_with_trace() {
        let seq: Vec<BigInt> = TraceSequence::new(pair(3, 2)).take(20).collect();
        for (n, v) in seq.iter().enumerate() {
            assert_eq!(*v, trace(pair(3, 2), n as u64), "mismatch at n={n}");
        }
    }

    #[test]
    fn is_maximal_known_cases() {
        assert!(is_maximal(pair(2, 1), 3));
        assert!(!is_maximal(pair(2, 1), 2));
        assert!(is_maximal(pair(5, 1), 7));
        assert!(is_maximal(pair(2, 1), 13));
        // cross-check the two routes: squaring vs explicit isqrt
        for &(q, a1, n) in &[(2u64, 1i64, 3u64), (5, 1, 7), (2, 1, 13), (31, 9, 5)] {
            let m = -trace(pair(q, a1), n);
            let r = BigInt::from(isqrt(&four_q_pow(q, n)));
            assert_eq!(is_maximal(pair(q, a1), n), m == r, "routes disagree at ({q},{a1},{n})");
        }
    }

    #[test]
    fn classify_known_cases() {
        assert_eq!(classify(pair(2, 0)), Classification::Supersingular { order: 4 });
        assert_eq!(classify(pair(9, 3)), Classification::Supersingular { order: 6 });
        assert_eq!(classify(pair(2, 1)), Classification::Ordinary);
        assert_eq!(classify(pair(2, 2)), Classification::Supersingular { order: 8 });
        assert_eq!(classify(pair(9, -3)), Classification::Supersingular { order: 3 });
        assert_eq!(classify(pair(4, -4)), Classification::Supersingular { order: 2 });
        assert_eq!(classify(pair(4, 4)), Classification::Supersingular { order: 1 });
        assert_eq!(classify(pair(3, 3)), Classification::Supersingular { order: 12 });
        assert_eq!(classify(pair(2, -2)), Classification::Supersingular { order: 8 });
    }

    #[test]
    fn classify_kind_is_sign_symmetric() {
        for q in 2u64..=60 {
            let b = floor_2sqrt(q) as i64;
            for a1 in -b..=b {
                let k1 = classify(pair(q, a1)).is_ordinary();
                let k2 = classify(pair(q, -a1)).is_ordinary();
                assert_eq!(k1, k2, "kind differs between ({q},{a1}) and ({q},{})", -a1);
            }
        }
    }

    #[test]
    fn floor_2sqrt_examples() {
        assert_eq!(floor_2sqrt(2), 2);
        assert_eq!(floor_2sqrt(17), 8);
        assert_eq!(floor_2sqrt(16), 8);
        assert_eq!(floor_2sqrt(5), 4);
    }

    #[test]
    fn perfect_square_detection() {
        let squares: Vec<u64> = (0..2000u64).map(|k| k * k).collect();
        for q in 0..1000u64 {
            assert_eq!(is_perfect_square(q), squares.binary_search(&q).is_ok(), "q={q}");
        }
    }

    proptest! {
        #[test]
        fn isqrt_postcondition(bytes in proptest::collection::vec(any::<u8>(), 0..40)) {
            let n = BigUint::from_bytes_be(&bytes);
            let r = isqrt(&n);
            prop_assert!(&r * &r <= n);
            let r1 = &r + 1u32;
            prop_assert!(&r1 * &r1 > n);
        }

        #[test]
        fn isqrt_matches_num_integer(n in any::<u128>()) {
            let big = BigUint::from(n);
            prop_assert_eq!(isqrt(&big), num_integer::Roots::sqrt(&big));
        }

        #[test]
        fn isqrt_u128_postcondition(n in any::<u128>()) {
            let r = isqrt_u128(n);
            prop_assert!(r.checked_mul(r).is_some_and(|s| s <= n));
            prop_assert!((r + 1).checked_mul(r + 1).is_none_or(|s| s > n));
        }

        #[test]
        fn hasse_bound_along_sequence(q in 2u64..200, f in 0f64..1f64) {
            let b = floor_2sqrt(q) as i64;
            let a1 = (-b as f64 + f * (2 * b) as f64).round() as i64;
            let p = pair(q, a1.clamp(-b, b));
            let mut seq = TraceSequence::new(p);
            let mut qn = BigUint::from(1u32);
            for _ in 0..=60u64 {
                let a = seq.next().unwrap();
                let m = a.magnitude();
                prop_assert!(m * m <= (&qn << 2), "Hasse violated");
                qn *= q;
            }
        }
    }
}
