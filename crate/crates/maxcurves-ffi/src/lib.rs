//! C ABI for the maxcurves library.
//!
//! Conventions: every function returns an `McStatus` code and writes its
//! result through out-pointers; list results are opaque handles released
//! with the matching `_free` function. No exceptions or panics cross the
//! boundary.

use std::os::raw::c_int;

use maxcurves::cubic;
use maxcurves::search::{enumerate_triples, ordinary_degrees, SearchConfig};
use maxcurves::supersingular::supersingular_degrees;
use maxcurves::{classify, is_maximal, Classification, Error, TracePair, TripleSource};

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    /// Arguments violate a documented precondition (Hasse bound, ranges).
    InvalidArgument = 1,
    /// The pair has the wrong classification for this operation.
    WrongClassification = 2,
    /// A certified computation ran out of precision.
    PrecisionExhausted = 3,
    /// A proved guarantee failed re-verification (library bug).
    InternalError = 4,
    /// A required pointer argument was null.
    NullPointer = 5,
}

fn status_of(e: &Error) -> McStatus {
    match e {
        Error::InvalidTracePair { .. } | Error::NegativeInput(_) | Error::InvalidArgument(_) => {
            McStatus::InvalidArgument
        }
        Error::ExpectedOrdinary { .. } | Error::ExpectedSupersingular { .. } => {
            McStatus::WrongClassification
        }
        Error::PrecisionExhausted { .. } | Error::InsufficientAnglePrecision { .. } => {
            McStatus::PrecisionExhausted
        }
        Error::GuaranteeViolated(_) | Error::Io(_) => McStatus::InternalError,
    }
}

fn catch(f: impl FnOnce() -> McStatus + std::panic::UnwindSafe) -> McStatus {
    std::panic::catch_unwind(f).unwrap_or(McStatus::InternalError)
}

/// Classification of a pair: kind plus the root-of-unity order of the
/// normalized eigenvalue (0 for ordinary pairs).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McClassification {
    /// 0 = ordinary, 1 = supersingular
    pub supersingular: u8,
    /// order of beta in {1,2,3,4,6,8,12}; 0 when ordinary
    pub order: u8,
}

/// The degree set of a supersingular pair.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McProgression {
    /// 1 when the progression part is empty
    pub empty: u8,
    /// progression offset k (degrees k, 3k, 5k, ...); 0 when empty
    pub offset: u64,
    /// progression modulus 2k; 0 when empty
    pub modulus: u64,
    /// 1 when the lone extra degree n = 1 applies
    pub has_exceptional: u8,
}

/// One maximal triple.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McTriple {
    pub q: u64,
    pub a1: i64,
    pub n: u64,
    /// 0 = ordinary search, 1 = supersingular progression, 2 = direct check
    pub source: u8,
}

/// Opaque list of u64 degrees.
pub struct McU64List(Vec<u64>);

/// Opaque list of maximal triples.
pub struct McTripleList(Vec<McTriple>);

/// Whether -a_n = floor(2 sqrt(q)^n); writes 1 or 0 to `out`.
///
/// # Safety
/// `out` must be a valid pointer to a writable int.
#[no_mangle]
pub unsafe extern "C" fn mc_is_maximal(q: u64, a1: i64, n: u64, out: *mut c_int) -> McStatus {
    if out.is_null() {
        return McStatus::NullPointer;
    }
    catch(|| {
        if n < 1 {
            return McStatus::InvalidArgument;
        }
        match TracePair::new(q, a1) {
            Ok(pair) => {
                unsafe { *out = is_maximal(pair, n) as c_int };
                McStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Classify (q, a1) as ordinary or supersingular-with-order.
///
/// # Safety
/// `out` must be a valid pointer to a writable McClassification.
#[no_mangle]
pub unsafe extern "C" fn mc_classify(q: u64, a1: i64, out: *mut McClassification) -> McStatus {
    if out.is_null() {
        return McStatus::NullPointer;
    }
    catch(|| match TracePair::new(q, a1) {
        Ok(pair) => {
            let c = match classify(pair) {
                Classification::Ordinary => McClassification { supersingular: 0, order: 0 },
                Classification::Supersingular { order } => {
                    McClassification { supersingular: 1, order }
                }
            };
            unsafe { *out = c };
            McStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// The exact degree set of a supersingular pair.
///
/// # Safety
/// `out` must be a valid pointer to a writable McProgression.
#[no_mangle]
pub unsafe extern "C" fn mc_supersingular_degrees(
    q: u64,
    a1: i64,
    out: *mut McProgression,
) -> McStatus {
    if out.is_null() {
        return McStatus::NullPointer;
    }
    catch(|| {
        let pair = match TracePair::new(q, a1) {
            Ok(p) => p,
            Err(e) => return status_of(&e),
        };
        match supersingular_degrees(pair) {
            Ok(p) => {
                unsafe {
                    *out = McProgression {
                        empty: p.empty as u8,
                        offset: p.offset,
                        modulus: p.modulus,
                        has_exceptional: p.exceptional.is_some() as u8,
                    }
                };
                McStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// ceil(N_q): ordinary maximal degrees for q satisfy n <= this value.
///
/// # Safety
/// `out` must be a valid pointer to a writable u64.
#[no_mangle]
pub unsafe extern "C" fn mc_max_degree(q: u64, out: *mut u64) -> McStatus {
    if out.is_null() {
        return McStatus::NullPointer;
    }
    catch(|| match maxcurves::bound::max_degree(q) {
        Ok(b) => {
            unsafe { *out = b.n_max };
            McStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// The two candidate traces for degree-3 maximality over q >= 3.
///
/// # Safety
/// `out2` must point to an array of at least two writable i64 values.
#[no_mangle]
pub unsafe extern "C" fn mc_cubic_candidates(q: u64, out2: *mut i64) -> McStatus {
    if out2.is_null() {
        return McStatus::NullPointer;
    }
    catch(|| match cubic::cubic_candidates(q) {
        Ok(c) => {
            unsafe {
                *out2 = c[0];
                *out2.add(1) = c[1];
            }
            McStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// All degrees n > 1 with -a_n = floor(2 sqrt(q)^n) for an ordinary pair,
/// as an opaque list (release with mc_u64_list_free).
///
/// # Safety
/// `out` must be a valid pointer to a writable list-handle slot.
#[no_mangle]
pub unsafe extern "C" fn mc_ordinary_degrees(
    q: u64,
    a1: i64,
    out: *mut *mut McU64List,
) -> McStatus {
    if out.is_null() {
        return McStatus::NullPointer;
    }
    catch(|| match ordinary_degrees(q, a1) {
        Ok(v) => {
            unsafe { *out = Box::into_raw(Box::new(McU64List(v))) };
            McStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// # Safety
/// `list` must be a handle returned by this library (or null).
#[no_mangle]
pub unsafe extern "C" fn mc_u64_list_len(list: *const McU64List) -> usize {
    if list.is_null() {
        return 0;
    }
    unsafe { (*list).0.len() }
}

/// Fetch one element; writes to `out` and returns Ok when in range.
///
/// # Safety
/// `list` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_u64_list_get(
    list: *const McU64List,
    index: usize,
    out: *mut u64,
) -> McStatus {
    if list.is_null() || out.is_null() {
        return McStatus::NullPointer;
    }
    let items = unsafe { &(*list).0 };
    match items.get(index) {
        Some(v) => {
            unsafe { *out = *v };
            McStatus::Ok
        }
        None => McStatus::InvalidArgument,
    }
}

/// # Safety
/// `list` must be a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_u64_list_free(list: *mut McU64List) {
    if !list.is_null() {
        drop(unsafe { Box::from_raw(list) });
    }
}

/// Enumerate maximal triples for prime powers in [q_min, q_max]; set
/// `include_supersingular` to also get the first degree of each non-empty
/// supersingular progression. Release the handle with mc_triple_list_free.
///
/// # Safety
/// `out` must be a valid pointer to a writable list-handle slot.
#[no_mangle]
pub unsafe extern "C" fn mc_search(
    q_min: u64,
    q_max: u64,
    include_supersingular: c_int,
    out: *mut *mut McTripleList,
) -> McStatus {
    if out.is_null() {
        return McStatus::NullPointer;
    }
    catch(|| {
        let cfg = SearchConfig {
            q_min,
            q_max,
            include_supersingular: include_supersingular != 0,
            ..Default::default()
        };
        match enumerate_triples(&cfg) {
            Ok(ts) => {
                let rows = ts
                    .into_iter()
                    .map(|t| McTriple {
                        q: t.q,
                        a1: t.a1,
                        n: t.n,
                        source: match t.source {
                            TripleSource::OrdinarySearch => 0,
                            TripleSource::SupersingularProgression => 1,
                            TripleSource::DirectCheck => 2,
                        },
                    })
                    .collect();
                unsafe { *out = Box::into_raw(Box::new(McTripleList(rows))) };
                McStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `list` must be a handle returned by this library (or null).
#[no_mangle]
pub unsafe extern "C" fn mc_triple_list_len(list: *const McTripleList) -> usize {
    if list.is_null() {
        return 0;
    }
    unsafe { (*list).0.len() }
}

/// Fetch one triple; writes to `out` and returns Ok when in range.
///
/// # Safety
/// `list` must be a live handle from this library; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_triple_list_get(
    list: *const McTripleList,
    index: usize,
    out: *mut McTriple,
) -> McStatus {
    if list.is_null() || out.is_null() {
        return McStatus::NullPointer;
    }
    let items = unsafe { &(*list).0 };
    match items.get(index) {
        Some(t) => {
            unsafe { *out = *t };
            McStatus::Ok
        }
        None => McStatus::InvalidArgument,
    }
}

/// # Safety
/// `list` must be a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_triple_list_free(list: *mut McTripleList) {
    if !list.is_null() {
        drop(unsafe { Box::from_raw(list) });
    }
}
