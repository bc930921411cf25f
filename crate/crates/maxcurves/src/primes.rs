//! Primality, prime sieves and prime-power decomposition.

/// Deterministic Miller-Rabin for u64 inputs.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known
/// to be exact for all n < 3.3 * 10^24, far beyond the 64-bit range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// If q = p^k for a prime p and k >= 1, returns (p, k).
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    // extract the smallest prime factor by trial division
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1)); // q itself is prime
    }
    let mut rest = q;
    let mut k = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest == 1 {
        Some((p, k))
    } else {
        None
    }
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

/// All odd primes <= limit, ascending (sieve of Eratosthenes on odds).
pub fn odd_primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    // index i represents the odd number 2i + 3
    let m = (n - 1) / 2;
    let mut composite = vec![false; m];
    let mut i = 0usize;
    loop {
        let p = 2 * i + 3;
        if p * p > n {
            break;
        }
        if !composite[i] {
            let mut j = (p * p - 3) / 2;
            while j < m {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    (0..m)
        .filter(|&i| !composite[i])
        .map(|i| (2 * i + 3) as u64)
        .collect()
}
