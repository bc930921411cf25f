//! The full search pipeline: for an ordinary pair, every degree n > 1
//! with `-a_n = floor(2 sqrt(q)^n)`, and a range enumerator over prime
//! powers producing the triple tables.
//!
//! Candidate degrees come from odd/odd convergents of the certified angle
//! (complete up to the cutoff N_q); each candidate chain is extended by
//! odd prime multiples while the defining equation keeps holding. Every
//! candidate is screened by the cheap angular prefilter before the exact
//! big-integer test runs.

use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::bound::max_degree;
use crate::diophantine::{convergents, frobenius_angle, prefilter, required_eps, AngleApprox};
use crate::error::{Error, Result};
use crate::exact::{
    classify, floor_2sqrt, is_maximal, is_perfect_square, MaximalTriple, TracePair, TripleSource,
};
use crate::primes::{is_prime_power, odd_primes_up_to};
use crate::supersingular::supersingular_degrees;

/// Configuration of a range search over prime powers.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub q_min: u64,
    pub q_max: u64,
    pub include_supersingular: bool,
    /// Smallest degree to report (default 2: degrees n > 1).
    pub n_floor: u64,
    /// Worker threads; 0 uses the rayon default.
    pub parallelism: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            q_min: 2,
            q_max: 2,
            include_supersingular: false,
            n_floor: 2,
            parallelism: 0,
        }
    }
}

impl SearchConfig {
    pub fn range(q_min: u64, q_max: u64) -> Self {
        SearchConfig { q_min, q_max, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q_min < 2 || self.q_min > self.q_max {
            return Err(Error::InvalidArgument("search range requires 2 <= q_min <= q_max"));
        }
        Ok(())
    }
}

/// A monotonically grown shared cache of the odd-prime table.
static ODD_PRIMES: Lazy<Mutex<Arc<Vec<u64>>>> = Lazy::new(|| Mutex::new(Arc::new(Vec::new())));

fn odd_primes(limit: u64) -> Arc<Vec<u64>> {
    let mut guard = ODD_PRIMES.lock().unwrap();
    let have = guard.last().copied().unwrap_or(0);
    if have < limit {
        *guard = Arc::new(odd_primes_up_to(limit.max(1 << 16)));
    }
    guard.clone()
}

/// The angle precision used by the pipeline: a further 2^-20 below the
/// convergent-capture budget, shrinking the prefilter's slack term n*eps
/// at negligible extra cost.
fn pipeline_eps(q: u64, n_cap: u64) -> BigRational {
    required_eps(q, n_cap) / BigRational::from_integer(BigInt::from(1u64 << 20))
}

/// Exactly the set {n > 1 : -a_n = floor(2 sqrt(q)^n)} for an ordinary
/// pair, complete by the degree cutoff N_q.
///
/// Square q short-circuits to the empty set (no ordinary solutions exist
/// there). For q = 2 the degrees {3, 5, 7, 9, 11} are tested directly;
/// everything else flows from odd/odd convergent denominators, extended
/// through odd prime multiples while the equation keeps holding.
pub fn ordinary_degrees(q: u64, a1: i64) -> Result<Vec<u64>> {
    let pair = TracePair::new(q, a1)?;
    if classify(pair).is_supersingular() {
        return Err(Error::ExpectedOrdinary { q, a1 });
    }
    if is_perfect_square(q) {
        return Ok(Vec::new());
    }
    let n_cap = max_degree(q)?.n_max;
    let angle = frobenius_angle(q, a1, &pipeline_eps(q, n_cap))?;

    let mut found = BTreeSet::new();
    if q == 2 {
        for n in [3u64, 5, 7, 9, 11] {
            if is_maximal(pair, n) {
                found.insert(n);
            }
        }
    }
    let mut visited = std::collections::HashSet::new();
    for c in convergents(&angle.x(), n_cap) {
        if c.is_odd_odd() {
            convergents_to_solutions(pair, n_cap, c.n, &angle, &mut visited, &mut found)?;
        }
    }
    Ok(found.into_iter().collect())
}

/// The candidate-chain recursion: if n satisfies the defining equation,
/// report it (when n > 1) and try all odd prime multiples p*n <= n_cap;
/// a failing n kills its branch.
pub fn convergents_to_solutions(
    pair: TracePair,
    n_cap: u64,
    n: u64,
    angle: &AngleApprox,
    visited: &mut std::collections::HashSet<u64>,
    found: &mut BTreeSet<u64>,
) -> Result<()> {
    if n > n_cap || !visited.insert(n) {
        return Ok(());
    }
    if !prefilter(pair.q(), pair.a1(), n, angle)? {
        return Ok(());
    }
    if !is_maximal(pair, n) {
        return Ok(());
    }
    if n > 1 {
        found.insert(n);
    }
    let limit = n_cap / n;
    if limit < 3 {
        return Ok(());
    }
    let primes = odd_primes(limit);
    let end = primes.partition_point(|&p| p <= limit);
    for &p in &primes[..end] {
        convergents_to_solutions(pair, n_cap, p * n, angle, visited, found)?;
    }
    Ok(())
}

/// The supersingular trace values possible for q, ascending.
pub fn supersingular_traces(q: u64) -> Vec<i64> {
    let mut out = vec![0i64];
    let mut push_if_square = |m: u64| {
        let r = crate::exact::isqrt_u128(m as u128) as u64;
        if r * r == m {
            out.push(r as i64);
            out.push(-(r as i64));
        }
    };
    push_if_square(q); // +-sqrt(q)
    push_if_square(2 * q);
    push_if_square(3 * q);
    push_if_square(4 * q); // +-2 sqrt(q); a square exactly when q is
    out.sort_unstable();
    out.dedup();
    out
}

fn search_one_q(q: u64, cfg: &SearchConfig) -> Result<Vec<MaximalTriple>> {
    let mut out = Vec::new();
    if !is_perfect_square(q) {
        let b = floor_2sqrt(q) as i64;
        for a1 in -b..=b {
            if num_integer::gcd(q, a1.unsigned_abs()) != 1 {
                continue;
            }
            let pair = TracePair::new(q, a1)?;
            if classify(pair).is_supersingular() {
                continue;
            }
            for n in ordinary_degrees(q, a1)? {
                if n >= cfg.n_floor {
                    debug_assert!(is_maximal(pair, n));
                    out.push(MaximalTriple { q, a1, n, source: TripleSource::OrdinarySearch });
                }
            }
        }
    }
    if cfg.include_supersingular {
        for a1 in supersingular_traces(q) {
            let pair = TracePair::new(q, a1)?;
            let prog = supersingular_degrees(pair)?;
            if let Some(n) = prog.first_at_least(cfg.n_floor.max(1)) {
                if !is_maximal(pair, n) {
                    return Err(Error::GuaranteeViolated(
                        "supersingular progression member failed exact re-verification",
                    ));
                }
                out.push(MaximalTriple { q, a1, n, source: TripleSource::SupersingularProgression });
            }
        }
    }
    out.sort_unstable_by_key(|t| (t.a1, t.n));
    Ok(out)
}

/// Enumerate all maximal triples over the prime powers in the configured
/// range: ordinary triples for nonsquare q over every trace with
/// gcd(q, a1) = 1, plus (optionally) the first representative degree of
/// each non-empty supersingular progression. Output is sorted by
/// (q, a1, n) and is bytewise independent of the parallelism setting;
/// every triple re-verifies under the exact test before being emitted.
pub fn enumerate_triples(cfg: &SearchConfig) -> Result<Vec<MaximalTriple>> {
    cfg.validate()?;
    let qs: Vec<u64> = (cfg.q_min..=cfg.q_max).filter(|&q| is_prime_power(q)).collect();
    let work = |q: &u64| search_one_q(*q, cfg);
    let per_q: Vec<Vec<MaximalTriple>> = if cfg.parallelism == 1 {
        qs.iter().map(work).collect::<Result<_>>()?
    } else if cfg.parallelism == 0 {
        qs.par_iter().map(work).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallelism)
            .build()
            .map_err(|_| Error::InvalidArgument("could not build worker pool"))?;
        pool.install(|| qs.par_iter().map(work).collect::<Result<_>>())?
    };
    Ok(per_q.into_iter().flatten().collect())
}
