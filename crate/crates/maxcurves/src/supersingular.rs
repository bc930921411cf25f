//! Maximal degrees of supersingular pairs as arithmetic progressions.
//!
//! For a supersingular pair the normalized eigenvalue beta is a root of
//! unity of order d in {1, 2, 3, 4, 6, 8, 12}. beta^n = -1 forces
//! `-a_n = floor(2 sqrt(q)^n)`, which gives no degrees when d is odd and
//! the odd multiples {k, 3k, 5k, ...} of k = d/2 when d is even.
//!
//! The converse is almost, but not quite, true: `|beta^n + 1| < q^(-n/4)`
//! (the exact translation of maximality) also admits beta^n != -1 when
//! q^(n/4) is small enough. Enumerating the finitely many root-of-unity
//! values of |beta^n + 1| shows this happens only at n = 1, for the three
//! pairs (2, -2), (3, -3) and (12, -6). The lone extra degree is detected
//! here by the exact integer test rather than hard-coded.

use crate::error::{Error, Result};
use crate::exact::{classify, is_maximal, Classification, TracePair};

/// The set of maximal degrees of a supersingular pair: the odd multiples
/// {k, 3k, 5k, ...} of the offset k (all n with n = offset (mod modulus),
/// modulus = 2k), possibly empty, plus at most one exceptional member
/// below the progression (always n = 1 when present).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeProgression {
    pub offset: u64,
    pub modulus: u64,
    pub empty: bool,
    /// A lone degree satisfying the defining equation without beta^n = -1.
    pub exceptional: Option<u64>,
}

impl DegreeProgression {
    pub fn empty() -> Self {
        DegreeProgression { offset: 0, modulus: 0, empty: true, exceptional: None }
    }

    /// The progression of all odd multiples of k.
    pub fn odd_multiples_of(k: u64) -> Self {
        assert!(k >= 1);
        DegreeProgression { offset: k, modulus: 2 * k, empty: false, exceptional: None }
    }

    fn with_exceptional(mut self, n: u64) -> Self {
        self.exceptional = Some(n);
        self
    }

    /// Whether the full degree set (progression plus exception) is empty.
    pub fn is_empty_set(&self) -> bool {
        self.empty && self.exceptional.is_none()
    }

    pub fn contains(&self, n: u64) -> bool {
        if self.exceptional == Some(n) {
            return true;
        }
        !self.empty && n % self.modulus == self.offset
    }

    /// The smallest member that is >= floor, if any.
    pub fn first_at_least(&self, floor: u64) -> Option<u64> {
        if let Some(e) = self.exceptional {
            if e >= floor {
                return Some(e.min(self.progression_first_at_least(floor).unwrap_or(e)));
            }
        }
        self.progression_first_at_least(floor)
    }

    fn progression_first_at_least(&self, floor: u64) -> Option<u64> {
        if self.empty {
            return None;
        }
        let k = self.offset;
        if floor <= k {
            return Some(k);
        }
        // smallest odd j with j*k >= floor
        let j = floor.div_ceil(k) | 1;
        Some(j * k)
    }

    /// The first `count` members of the full set, ascending.
    pub fn members(&self, count: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(count);
        if let Some(e) = self.exceptional {
            out.push(e);
        }
        if !self.empty {
            let mut j = 0u64;
            while out.len() < count {
                out.push((2 * j + 1) * self.offset);
                j += 1;
            }
        }
        out.truncate(count);
        out
    }
}

/// The exact set of degrees n with `-a_n = floor(2 sqrt(q)^n)` for a
/// supersingular pair.
///
/// The progression part is empty exactly when the order of beta is odd
/// (1 or 3, i.e. a1 = 2 sqrt(q) or a1 = -sqrt(q)); otherwise it holds the
/// odd multiples of order/2. The exceptional n = 1 member is added when
/// the defining equation holds there without beta being -1.
pub fn supersingular_degrees(pair: TracePair) -> Result<DegreeProgression> {
    let base = match classify(pair) {
        Classification::Ordinary => {
            return Err(Error::ExpectedSupersingular { q: pair.q(), a1: pair.a1() })
        }
        Classification::Supersingular { order } => {
            if order % 2 == 1 {
                DegreeProgression::empty()
            } else {
                DegreeProgression::odd_multiples_of(order as u64 / 2)
            }
        }
    };
    if !base.contains(1) && is_maximal(pair, 1) {
        Ok(base.with_exceptional(1))
    } else {
        Ok(base)
    }
}
