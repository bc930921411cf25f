//! Certified rational approximation of the normalized Frobenius angle,
//! continued-fraction convergents under a denominator cap, the precision
//! budget that makes convergent capture sound, and the cheap necessary
//! condition used to reject candidate degrees before exact testing.
//!
//! Throughout, x denotes a rational approximation of theta/pi where
//! a1 = 2 sqrt(q) cos(theta), theta in [0, pi].

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{classify, isqrt, Classification, TracePair};
use crate::fixed::{self, ceil_div, floor_div, Ival};

/// A rational x with a certified bound |x - theta/pi| <= eps.
#[derive(Debug, Clone)]
pub struct AngleApprox {
    q: u64,
    a1: i64,
    x_num: BigInt,
    x_den: BigInt, // > 0
    eps_num: BigInt,
    eps_den: BigInt, // > 0
}

impl AngleApprox {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a1(&self) -> i64 {
        self.a1
    }

    /// The approximation itself, in lowest terms.
    pub fn x(&self) -> BigRational {
        BigRational::new(self.x_num.clone(), self.x_den.clone())
    }

    /// The certified error bound.
    pub fn eps(&self) -> BigRational {
        BigRational::new(self.eps_num.clone(), self.eps_den.clone())
    }
}

/// The eps budget of the convergent-capture criterion: if
/// |x - theta/pi| <= required_eps(q, N), every maximal degree
/// 3 <= n <= N (with n >= 13 when q = 2) appears as the denominator of an
/// odd/odd convergent of x.
///
/// Returns a rational strictly below the exact budget
///   1/(2N^2) * (1 - (2/3) * 13 / 2^(13/4))      if q = 2
///   1/(2N^2) * (1 - (2/3) *  3 / q^(3/4))       if q >= 3
/// (the irrational factor is rounded down), so the guarantee is preserved.
pub fn required_eps(q: u64, n_cap: u64) -> BigRational {
    assert!(q >= 2 && n_cap >= 1);
    const S: u32 = 32;
    let scale = BigInt::one() << S;
    let factor = if q == 2 {
        // t <= 2^(1/4) * 2^S exactly via two integer square roots
        let t = BigInt::from(isqrt(&isqrt(&(BigUint::from(2u32) << (4 * S)))));
        // 1 - 13/(12 * 2^(1/4)) >= 1 - 13*2^S/(12 t) = (12t - 13*2^S)/(12t)
        let t12 = BigInt::from(12) * &t;
        BigRational::new(&t12 - BigInt::from(13) * &scale, t12)
    } else {
        // t <= q^(3/4) * 2^S
        let q3 = BigUint::from(q).pow(3) << (4 * S);
        let t = BigInt::from(isqrt(&isqrt(&q3)));
        BigRational::new(&t - BigInt::from(2) * &scale, t)
    };
    let two_n2 = BigInt::from(2) * BigInt::from(n_cap) * BigInt::from(n_cap);
    factor / BigRational::from_integer(two_n2)
}

/// Largest dyadic below (or at) a positive rational, as a mantissa at scale s.
fn dyadic_floor(r: &BigRational, s: u32) -> BigInt {
    floor_div(&(r.numer() << s), r.denom())
}

/// Certified x ~ theta/pi for the pair, with |x - theta/pi| <= eps_target.
///
/// Supersingular pairs get their exact rational angle. Ordinary pairs are
/// solved from cos(pi x) = a1 / (2 sqrt q): a plain Newton iteration in
/// fixed point is polished from an f64 seed, then the claimed interval is
/// certified by enclosure evaluations of cos at its endpoints; if that
/// fails the root is re-bracketed by certified bisection at a higher scale.
pub fn frobenius_angle(q: u64, a1: i64, eps_target: &BigRational) -> Result<AngleApprox> {
    let pair = TracePair::new(q, a1)?;
    if !eps_target.is_positive() {
        return Err(Error::InvalidArgument("eps_target must be positive"));
    }
    if let Classification::Supersingular { order } = classify(pair) {
        let (num, den): (i64, i64) = match order {
            1 => (0, 1),
            2 => (1, 1),
            3 => (2, 3),
            4 => (1, 2),
            6 => (1, 3),
            8 => {
                if a1 > 0 {
                    (1, 4)
                } else {
                    (3, 4)
                }
            }
            _ => {
                if a1 > 0 {
                    (1, 6)
                } else {
                    (5, 6)
                }
            }
        };
        return Ok(AngleApprox {
            q,
            a1,
            x_num: BigInt::from(num),
            x_den: BigInt::from(den),
            eps_num: eps_target.numer().clone(),
            eps_den: eps_target.denom().clone(),
        });
    }

    // bits needed to resolve eps_target, with generous guard room
    let eps_bits =
        (eps_target.denom().bits() as i64 - eps_target.numer().bits() as i64).max(8) as u32;
    let mut s = fixed::quantize_scale(eps_bits + 64);
    loop {
        if let Some(approx) = angle_at_scale(q, a1, eps_target, s) {
            return Ok(approx);
        }
        s *= 2;
        if s > 4096 {
            return Err(Error::PrecisionExhausted { q, n: 0 });
        }
    }
}

fn angle_at_scale(q: u64, a1: i64, eps_target: &BigRational, s: u32) -> Option<AngleApprox> {
    let e_num = dyadic_floor(eps_target, s);
    if e_num.is_zero() {
        return None;
    }
    let y = y_enclosure(q, a1, s);
    let one = BigInt::one() << s;

    // f64 seed, clamped well inside (0, 1)
    let y_f = a1 as f64 / (2.0 * (q as f64).sqrt());
    let seed = y_f.clamp(-1.0, 1.0).acos() / std::f64::consts::PI;
    let mut x = BigInt::from((seed.clamp(1e-9, 1.0 - 1e-9) * 2f64.powi(62)) as i128) << (s - 62);

    // Newton on cos(pi x) = y; plain fixed-point arithmetic, certified after.
    let pi_mid = fixed::pi(s).midpoint();
    let y_mid = (&y.lo + &y.hi) >> 1;
    for _ in 0..3 {
        let (c, sn) = fixed::cos_sin_pi_plain(&x, s, s);
        if sn.bits() + 16 < s as u64 {
            break; // derivative too small; leave it to bisection
        }
        let den = (&pi_mid * &sn) >> s;
        if !den.is_positive() {
            break;
        }
        let corr = floor_div(&(&(&c - &y_mid) << s), &den);
        x += corr;
        if !x.is_positive() || x >= one {
            x = one.clone() >> 1; // wandered out of range; bisection will handle it
            break;
        }
    }

    if certify(&x, &e_num, &y, s) {
        return Some(pack(q, a1, x, &e_num, s));
    }
    bisect(q, a1, &y, &e_num, s)
}

/// Enclosure of a1 / (2 sqrt q) at scale s.
fn y_enclosure(q: u64, a1: i64, s: u32) -> Ival {
    let r = fixed::sqrt_int_mantissa(q, s); // sqrt(q) in [r, r+1] ulps
    let r1 = &r + 1;
    let num = BigInt::from(a1) << (2 * s - 1); // a1 * 2^(2s) / 2
    if a1 >= 0 {
        Ival { lo: floor_div(&num, &r1), hi: ceil_div(&num, &r) }
    } else {
        Ival { lo: floor_div(&num, &r), hi: ceil_div(&num, &r1) }
    }
}

/// Does [x - e, x + e] certifiably contain the root of cos(pi t) = y?
fn certify(x: &BigInt, e: &BigInt, y: &Ival, s: u32) -> bool {
    let one = BigInt::one() << s;
    let left = x - e;
    if left.is_positive() {
        let c = fixed::cos_pi(&left, s, s);
        if c.lo < y.hi {
            return false;
        }
    }
    let right = x + e;
    if right < one {
        let c = fixed::cos_pi(&right, s, s);
        if c.hi > y.lo {
            return false;
        }
    }
    true
}

fn bisect(q: u64, a1: i64, y: &Ival, e_num: &BigInt, s: u32) -> Option<AngleApprox> {
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one() << s;
    while (&hi - &lo) > *e_num {
        let mid = (&lo + &hi) >> 1;
        let c = fixed::cos_pi(&mid, s, s);
        if c.lo > y.hi {
            lo = mid; // cos too large: mid is left of the root
        } else if c.hi < y.lo {
            hi = mid;
        } else {
            return None; // undecidable at this scale
        }
    }
    let x = (&lo + &hi) >> 1;
    Some(pack(q, a1, x, e_num, s))
}

fn pack(q: u64, a1: i64, x: BigInt, e_num: &BigInt, s: u32) -> AngleApprox {
    AngleApprox {
        q,
        a1,
        x_num: x,
        x_den: BigInt::one() << s,
        eps_num: e_num.clone(),
        eps_den: BigInt::one() << s,
    }
}

/// One convergent m/n of a continued-fraction expansion, in lowest terms.
/// Angles lie in [0, 1], so numerators are nonnegative and m <= n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convergent {
    pub m: u64,
    pub n: u64,
}

impl Convergent {
    pub fn is_odd_odd(&self) -> bool {
        self.m % 2 == 1 && self.n % 2 == 1
    }
}

/// All convergents of x (0 <= x <= 1) with denominator <= cap, in emission
/// order. When the expansion terminates within the cap and its final
/// quotient exceeds 1, the last step is also emitted in split form (the
/// representation [.., a-1, 1]), so e.g. x = 1/2 yields 0/1, 1/1, 1/2.
pub fn convergents(x: &BigRational, cap: u64) -> Vec<Convergent> {
    assert!(!x.is_negative() && *x <= BigRational::one(), "x must lie in [0, 1]");
    assert!(cap >= 1);
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let cap_big = BigInt::from(cap);

    let mut out: Vec<Convergent> = Vec::new();
    // p/q recurrences seeded with the virtual convergents 0/1 and 1/0
    let (mut p_prev, mut q_prev) = (BigInt::zero(), BigInt::one());
    let (mut p_cur, mut q_cur) = (BigInt::one(), BigInt::zero());
    let mut first = true;
    while !den.is_zero() {
        let (a, rem) = num_integer::Integer::div_rem(&num, &den);
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        if q_next > cap_big {
            break;
        }
        let terminal = rem.is_zero();
        if terminal && !first && a >= BigInt::from(2) {
            // split the last quotient: the extra convergent of [.., a-1, 1]
            let ps = &p_next - &p_cur;
            let qs = &q_next - &q_cur;
            if qs <= cap_big {
                out.push(Convergent {
                    m: ps.to_u64().expect("convergent numerator fits u64"),
                    n: qs.to_u64().expect("convergent denominator fits u64"),
                });
            }
        }
        out.push(Convergent {
            m: p_next.to_u64().expect("convergent numerator fits u64"),
            n: q_next.to_u64().expect("convergent denominator fits u64"),
        });
        (p_prev, q_prev) = (p_cur, q_cur);
        (p_cur, q_cur) = (p_next, q_next);
        num = den;
        den = rem;
        first = false;
    }
    out
}

/// Cheap necessary condition for `-a_n = floor(2 sqrt(q)^n)`: some odd m
/// with |m| <= n must satisfy |m + n x| < (1/3) q^(-n/4) + n eps (in units
/// of pi). Returns false only when no such m exists, with the threshold
/// rounded up so angle uncertainty can never reject a true solution:
/// false implies the degree is not maximal.
pub fn prefilter(q: u64, a1: i64, n: u64, angle: &AngleApprox) -> Result<bool> {
    if angle.q != q || angle.a1 != a1 {
        return Err(Error::InvalidArgument("angle belongs to a different pair"));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("degree must be positive"));
    }
    let n_big = BigInt::from(n);
    // the test is vacuous (and the angle useless) once n*eps reaches 1/4
    if &n_big * &angle.eps_num * BigInt::from(4) >= angle.eps_den {
        return Err(Error::InsufficientAnglePrecision { n });
    }

    // threshold t = up(1/3 q^(-n/4)) + n*eps as t_num/t_den:
    // q^(-n/4) <= 2^-k for k = floor(n * floor(2^20 log2 q) / 2^22),
    // capped so the power-of-two denominator stays small once the surd
    // term is negligible against n*eps anyway.
    let lfix = ((q as f64).log2() * (1u64 << 20) as f64).floor() as u128 - 1;
    let k_raw = (n as u128 * lfix) >> 22;
    let k_cap = angle.eps_den.bits() as u128 + 16;
    let k = k_raw.min(k_cap) as u32;
    // t = 1/(3*2^k) + n*e_num/e_den over the common denominator 3*2^k*e_den
    let three_2k = BigInt::from(3) << k;
    let t_den = &three_2k * &angle.eps_den;
    let t_num = &angle.eps_den + &n_big * &angle.eps_num * &three_2k;

    // odd integers bracketing -n*x
    let u = &n_big * &angle.x_num; // n*x = u / d
    let d = &angle.x_den;
    let j = floor_div(&(d - &u), &(d << 1));
    let m_lo: BigInt = (&j << 1) - 1;
    let m_hi: BigInt = &m_lo + 2;
    for m in [m_lo, m_hi] {
        if m.magnitude() > n_big.magnitude() {
            continue;
        }
        // |m + n x| < t  <=>  |m d + u| * t_den < t_num * d
        let lhs = (&m * d + &u).magnitude() * t_den.magnitude();
        let rhs = t_num.magnitude() * d.magnitude();
        if lhs < rhs {
            return Ok(true);
        }
    }
    Ok(false)
}
