//! Degree-3 maximality: the two-candidate trace restriction, the
//! square-q exclusion, the sufficient condition q = a1^2 + b with
//! b^2 <= a1, and the desk-scale enumeration of Gaussian primes in thin
//! sectors that manufactures infinitely many degree-3 maximal pairs.

use num_bigint::BigUint;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::exact::{
    floor_2sqrt, is_maximal, isqrt_u128, MaximalTriple, TracePair, TripleSource,
};
use crate::primes::is_prime;

/// Nearest integer to sqrt(q), computed exactly as
/// floor((floor(2 sqrt q) + 1) / 2); ties cannot occur (2 sqrt q is
/// irrational for nonsquare q, and exact for squares).
pub fn round_sqrt(q: u64) -> u64 {
    floor_2sqrt(q).div_ceil(2)
}

/// The only trace values that can satisfy `-a_3 = floor(2 sqrt(q)^3)` for
/// q >= 3: -floor(2 sqrt q) and round(sqrt q).
pub fn cubic_candidates(q: u64) -> Result<Vec<i64>> {
    if q < 3 {
        return Err(Error::InvalidArgument("cubic_candidates requires q >= 3"));
    }
    Ok(vec![-(floor_2sqrt(q) as i64), round_sqrt(q) as i64])
}

/// Whether the candidate a1 = -floor(2 sqrt q) actually attains degree-3
/// maximality; only ever true when q is a perfect square.
pub fn square_exclusion_check(q: u64) -> bool {
    debug_assert!(q >= 2);
    let a1 = -(floor_2sqrt(q) as i64);
    is_maximal(TracePair::new(q, a1).expect("valid by construction"), 3)
}

/// The sufficient condition: q = a1^2 + b with a1 >= 2 and b^2 <= a1
/// guarantees (q, a1, 3) is maximal. Returns None when b is out of range;
/// the produced triple is re-verified exactly, and a verification failure
/// is reported as an internal error rather than silently accepted.
pub fn soomro_test(a1: i64, b: i64) -> Result<Option<MaximalTriple>> {
    if a1 < 2 {
        return Err(Error::InvalidArgument("soomro_test requires a1 >= 2"));
    }
    let a1u = a1 as u64;
    if (b as i128) * (b as i128) > a1 as i128 {
        return Ok(None);
    }
    let q = (a1u * a1u).checked_add_signed(b).expect("q = a1^2 + b overflows u64");
    let pair = TracePair::new(q, a1)?;
    if !is_maximal(pair, 3) {
        return Err(Error::GuaranteeViolated("q = a1^2 + b with b^2 <= a1 must be 3-maximal"));
    }
    Ok(Some(MaximalTriple { q, a1, n: 3, source: TripleSource::DirectCheck }))
}

/// Relaxed admission b^2 <= (4/3) a1 / (1 + epsilon) for 0 < epsilon <= 1/3.
/// That wider window only guarantees maximality for large enough a1, so a
/// qualifying candidate is decided by the exact test: Some when it holds,
/// None when b is out of range or the candidate fails.
pub fn soomro_test_relaxed(a1: i64, b: i64, epsilon: Rational64) -> Result<Option<MaximalTriple>> {
    if a1 < 2 {
        return Err(Error::InvalidArgument("soomro_test_relaxed requires a1 >= 2"));
    }
    if epsilon <= Rational64::new(0, 1) || epsilon > Rational64::new(1, 3) {
        return Err(Error::InvalidArgument("epsilon must lie in (0, 1/3]"));
    }
    // b^2 * 3 * (ed + en) <= 4 * a1 * ed  <=>  b^2 <= (4/3) a1 / (1 + epsilon)
    let (en, ed) = (*epsilon.numer() as i128, *epsilon.denom() as i128);
    let b2 = b as i128 * b as i128;
    if b2 * 3 * (ed + en) > 4 * a1 as i128 * ed {
        return Ok(None);
    }
    let q = (a1 as u64 * a1 as u64).checked_add_signed(b).expect("q = a1^2 + b overflows u64");
    let pair = TracePair::new(q, a1)?;
    if is_maximal(pair, 3) {
        Ok(Some(MaximalTriple { q, a1, n: 3, source: TripleSource::DirectCheck }))
    } else {
        Ok(None)
    }
}

/// A Gaussian-sector point: p = a^2 + c^2 prime with 0 < a and
/// c <= a^(1/4), tagged with exact membership in the proof's sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SectorPrime {
    pub p: u64,
    pub a: u64,
    pub c: u64,
    /// c^4 <= a (the enumeration universe; recorded for cross-checks)
    pub in_s3: bool,
    /// c < p^theta
    pub in_s4: bool,
    /// c < p^theta and a >= p^(4 theta)
    pub in_s5: bool,
    /// c < p^theta and a < p^(4 theta)
    pub in_s6: bool,
}

/// The sector exponent used by the infinitude argument; any theta < 1/8
/// keeps the complement set finite.
pub fn default_sector_theta() -> Rational64 {
    Rational64::new(119, 1000)
}

pub fn floor_4th_root(a: u64) -> u64 {
    isqrt_u128(isqrt_u128(a as u128)) as u64
}

/// c < p^theta decided exactly as c^den < p^num for theta = num/den.
fn below_power(c: u64, p: u64, num: i64, den: i64) -> bool {
    if c == 0 {
        return true;
    }
    BigUint::from(c).pow(den as u32) < BigUint::from(p).pow(num as u32)
}

/// a >= p^(4 theta) decided exactly as a^den >= p^(4 num).
fn at_least_power4(a: u64, p: u64, num: i64, den: i64) -> bool {
    BigUint::from(a).pow(den as u32) >= BigUint::from(p).pow(4 * num as u32)
}

/// All (p, a, c) with 0 < a <= a_max, 0 <= c <= floor(a^(1/4)) and
/// p = a^2 + c^2 prime, tagged with exact set membership, ordered by
/// (a, c). theta must lie in (0, 1/8).
pub fn sector_enumerate(a_max: u64, theta: Rational64) -> Result<Vec<SectorPrime>> {
    if a_max < 1 {
        return Err(Error::InvalidArgument("sector_enumerate requires a_max >= 1"));
    }
    if theta <= Rational64::new(0, 1) || theta >= Rational64::new(1, 8) {
        return Err(Error::InvalidArgument("theta must lie strictly between 0 and 1/8"));
    }
    let (num, den) = (*theta.numer(), *theta.denom());
    let mut out = Vec::new();
    for a in 1..=a_max {
        for c in 0..=floor_4th_root(a) {
            let p = a * a + c * c;
            if !is_prime(p) {
                continue;
            }
            let in_s4 = below_power(c, p, num, den);
            let big_a = at_least_power4(a, p, num, den);
            out.push(SectorPrime {
                p,
                a,
                c,
                in_s3: c * c * c * c <= a,
                in_s4,
                in_s5: in_s4 && big_a,
                in_s6: in_s4 && !big_a,
            });
        }
    }
    Ok(out)
}

/// The degree-3 maximal family: every sector prime p = a^2 + c^2 yields
/// the triple (p, a, 3) via b = c^2, each re-verified exactly before
/// emission. Output grows monotonically with a_max.
pub fn cubic_prime_family(a_max: u64) -> Result<Vec<MaximalTriple>> {
    let sector = sector_enumerate(a_max.max(1), default_sector_theta())?;
    let mut out = Vec::new();
    for sp in sector {
        let pair = TracePair::new(sp.p, sp.a as i64)?;
        if is_maximal(pair, 3) {
            out.push(MaximalTriple {
                q: sp.p,
                a1: sp.a as i64,
                n: 3,
                source: TripleSource::DirectCheck,
            });
        } else {
            // b = c^2 <= sqrt(a) qualifies under the sufficient condition
            // whenever a >= 2, so a failure there is a real bug.
            if sp.a >= 2 {
                return Err(Error::GuaranteeViolated("sector prime failed degree-3 verification"));
            }
        }
    }
    out.sort_unstable_by_key(|t| (t.q, t.a1));
    Ok(out)
}
