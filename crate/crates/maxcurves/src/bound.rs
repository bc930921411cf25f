//! The explicit degree cutoff N_q: every ordinary maximal degree n
//! satisfies n < N_q, where N_q is the unique zero larger than 8007 of
//!
//!   f(q, n) = (n/4) ln q - 8.87 (10.98 pi + ln(q)/2) (2 ln n + 3.27)^2
//!             - ln(pi/3).
//!
//! The zero is located by doubling then bisection, with every sign
//! certified by interval evaluation; precision is raised (never guessed)
//! when an enclosure straddles zero.

use num_bigint::BigInt;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::fixed::{self, Ival};

/// A certified search ceiling for one q: any n with
/// `-a_n = floor(2 sqrt(q)^n)` for an ordinary pair satisfies
/// n < N_q <= n_max + 1, hence n <= n_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeBound {
    pub q: u64,
    /// ceil(N_q), the inclusive search ceiling.
    pub n_max: u64,
    /// A bracket (lo, hi) with f(q, lo) < 0 < f(q, hi) and hi - lo < 1.
    pub bracket: (f64, f64),
}

/// The value of f(q, n) with a certified enclosure, n a dyadic point
/// n_num / 2^n_scale >= 1.
pub fn bound_fn_at(q: u64, n_num: &BigInt, n_scale: u32, s: u32) -> Ival {
    assert!(q >= 2);
    assert!(n_num >= &(BigInt::from(1) << n_scale), "bound_fn requires n >= 1");
    let ln_q = fixed::ln_int(q, s);
    let ln_n = fixed::ln_dyadic(n_num, n_scale, s);
    let n_iv = Ival::point(n_num << s >> n_scale);
    let term1 = n_iv.mul(&ln_q, s).div_uint(4);
    let c887 = Ival::from_ratio(887, 100, s);
    let c1098 = Ival::from_ratio(1098, 100, s);
    let c327 = Ival::from_ratio(327, 100, s);
    let inner = c1098.mul(&fixed::pi(s), s).add(&ln_q.div_uint(2));
    let lg = ln_n.mul_int(2).add(&c327);
    let lg2 = lg.mul(&lg, s);
    let term2 = c887.mul(&inner, s).mul(&lg2, s);
    term1.sub(&term2).sub(&ln_pi_over_3(s))
}

/// Convenience wrapper at integer n (certified enclosure at 192 bits,
/// comfortably past 30 significant decimal digits for this function's
/// magnitudes).
pub fn bound_fn(q: u64, n: u64) -> Result<Ival> {
    if n < 1 {
        return Err(Error::InvalidArgument("bound_fn requires n >= 1"));
    }
    Ok(bound_fn_at(q, &BigInt::from(n), 0, DEFAULT_SCALE))
}

pub const DEFAULT_SCALE: u32 = 192;
const MAX_SCALE: u32 = 3072;

static LN_PI_3_CACHE: Lazy<Mutex<HashMap<u32, Ival>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static BOUND_CACHE: Lazy<Mutex<HashMap<u64, DegreeBound>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn ln_pi_over_3(s: u32) -> Ival {
    if let Some(v) = LN_PI_3_CACHE.lock().unwrap().get(&s) {
        return v.clone();
    }
    let pi = fixed::pi(s);
    // ln is monotone, so the enclosure of ln(pi) comes from the endpoints.
    let ln_pi = Ival {
        lo: fixed::ln_dyadic(&pi.lo, s, s).lo,
        hi: fixed::ln_dyadic(&pi.hi, s, s).hi,
    };
    let v = ln_pi.sub(&fixed::ln_int(3, s));
    LN_PI_3_CACHE.lock().unwrap().insert(s, v.clone());
    v
}

enum Sign {
    Negative,
    Positive,
    Undecided,
}

fn sign_at(q: u64, n_num: &BigInt, n_scale: u32, s: u32) -> Sign {
    let iv = bound_fn_at(q, n_num, n_scale, s);
    if iv.is_positive() {
        Sign::Positive
    } else if iv.is_negative() {
        Sign::Negative
    } else {
        Sign::Undecided
    }
}

/// Compute ceil(N_q) with a certified sub-unit bracket; results are
/// memoized (population is idempotent, so concurrent callers are fine).
pub fn max_degree(q: u64) -> Result<DegreeBound> {
    if q < 2 {
        return Err(Error::InvalidArgument("max_degree requires q >= 2"));
    }
    if let Some(b) = BOUND_CACHE.lock().unwrap().get(&q) {
        return Ok(*b);
    }
    let mut s = DEFAULT_SCALE;
    loop {
        match try_max_degree(q, s) {
            Some(b) => {
                BOUND_CACHE.lock().unwrap().insert(q, b);
                return Ok(b);
            }
            None => {
                s *= 2;
                if s > MAX_SCALE {
                    return Err(Error::PrecisionExhausted { q, n: 0 });
                }
            }
        }
    }
}

fn try_max_degree(q: u64, s: u32) -> Option<DegreeBound> {
    let int_sign = |n: u64| -> Sign { sign_at(q, &BigInt::from(n), 0, s) };
    // f(q, 8007) < 0 for every q; verified rather than assumed.
    match int_sign(8007) {
        Sign::Negative => {}
        _ => return None,
    }
    let mut lo = 8007u64;
    let mut hi = 8008u64;
    loop {
        match int_sign(hi) {
            Sign::Positive => break,
            Sign::Negative => {
                lo = hi;
                hi *= 2;
            }
            Sign::Undecided => return None,
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match int_sign(mid) {
            Sign::Positive => hi = mid,
            Sign::Negative => lo = mid,
            Sign::Undecided => return None,
        }
    }
    let n_max = hi;
    // Two dyadic refinement steps narrow the bracket to width 1/4.
    let mut bl = BigInt::from(lo) << 2; // quarters
    let mut bh = BigInt::from(hi) << 2;
    for _ in 0..2 {
        let mid = (&bl + &bh) >> 1;
        match sign_at(q, &mid, 2, s) {
            Sign::Positive => bh = mid,
            Sign::Negative => bl = mid,
            Sign::Undecided => return None,
        }
    }
    let quarters_to_f64 = |v: &BigInt| -> f64 {
        use num_traits::ToPrimitive;
        v.to_f64().unwrap() / 4.0
    };
    Some(DegreeBound { q, n_max, bracket: (quarters_to_f64(&bl), quarters_to_f64(&bh)) })
}
