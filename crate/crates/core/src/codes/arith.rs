//! Integer helpers behind the reduced-fraction enumeration.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// Distinct prime factors of `n` by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n % 2 == 0 {
        out.push(2);
        while n % 2 == 0 {
            n /= 2;
        }
    }
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Euler's totient by trial division.
pub(crate) fn totient(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Number of `j ∈ [1, x]` coprime to the product of `primes`
/// (inclusion–exclusion over squarefree divisors).
pub(crate) fn coprime_count(x: u64, primes: &[u64]) -> u64 {
    let mut total: i128 = 0;
    for mask in 0u32..(1u32 << primes.len()) {
        let mut d: u128 = 1;
        for (i, p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d *= *p as u128;
            }
        }
        let term = (x as u128 / d) as i128;
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u64
}

/// The `rank`-th (1-based) integer in `[1, d)` coprime to `d`.
pub(crate) fn nth_coprime(d: u64, rank: u64) -> u64 {
    let primes = prime_factors(d);
    let (mut lo, mut hi) = (1u64, d - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if coprime_count(mid, &primes) >= rank {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

pub(crate) fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Newton iteration from an overestimate.
    let mut x = 1u128 << ((128 - n.leading_zeros()).div_ceil(2));
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

fn icbrt(n: u64) -> u64 {
    let (mut lo, mut hi) = (0u64, 1u64 << 22);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if (mid as u128).pow(3) <= n as u128 {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Totients `φ(0..=limit)` by sieving over primes.
fn totient_table(limit: usize) -> Vec<u32> {
    let mut phi: Vec<u32> = (0..=limit as u32).collect();
    for i in 2..=limit {
        if phi[i] as usize == i {
            let mut j = i;
            while j <= limit {
                phi[j] -= phi[j] / i as u32;
                j += i;
            }
        }
    }
    phi
}

/// Prefix sums `Φ(0..=SHARED_LIMIT)`, built once and shared by all callers.
const SHARED_LIMIT: usize = 1 << 21;

static SHARED: spin::Once<Vec<u64>> = spin::Once::new();

/// Recent `Φ(n)` results above the shared table; cleared when full.
static MEMO: spin::Mutex<BTreeMap<u64, u128>> = spin::Mutex::new(BTreeMap::new());
const MEMO_CAPACITY: usize = 4096;

fn prefix_table(limit: usize) -> Vec<u64> {
    let phi = totient_table(limit);
    let mut small = vec![0u64; limit + 1];
    for i in 1..=limit {
        small[i] = small[i - 1] + phi[i] as u64;
    }
    small
}

/// `(m, Φ(m))` for some `m` within `window` of `n`, reusing a remembered
/// value when one is close enough.
pub(crate) fn totient_sum_near(n: u64, window: u64) -> (u64, u128) {
    let range = n.saturating_sub(window)..=n.saturating_add(window);
    let hit = MEMO.lock().range(range).min_by_key(|(&m, _)| m.abs_diff(n)).map(|(&m, &v)| (m, v));
    hit.unwrap_or_else(|| (n, totient_sum(n)))
}

/// Totient summatory `Φ(n) = Σ_{d=1}^{n} φ(d)`.
///
/// Uses `Φ(n) = n(n+1)/2 − Σ_{k=2}^{n} Φ(⌊n/k⌋)` over the distinct quotients,
/// with a sieve below `max(n^{2/3}, 2^21)`.
pub(crate) fn totient_sum(n: u64) -> u128 {
    if n == 0 {
        return 0;
    }
    let c = icbrt(n);
    let local;
    let small: &[u64] = if (c * c) as usize <= SHARED_LIMIT {
        SHARED.call_once(|| prefix_table(SHARED_LIMIT))
    } else {
        local = prefix_table((c * c).min(n) as usize);
        &local
    };
    let limit = small.len() - 1;
    if n as usize <= limit {
        return small[n as usize] as u128;
    }
    if let Some(&v) = MEMO.lock().get(&n) {
        return v;
    }
    // big[k] = Φ(n / k) for the k with n / k > limit.
    let kmax = (n / (limit as u64 + 1)) as usize + 1;
    let mut big = vec![0u128; kmax + 1];
    for k in (1..=kmax).rev() {
        let v = n / k as u64;
        if v as usize <= limit {
            continue;
        }
        let vv = v as u128;
        let lookup = |q: u64, i: u64| if q as usize <= limit { small[q as usize] as u128 } else { big[k * i as usize] };
        let mut s = vv * (vv + 1) / 2;
        let mut i = 2u64;
        if let Ok(v32) = u32::try_from(v) {
            // 32-bit division is markedly faster on common hardware.
            while i <= v {
                let q = v32 / i as u32;
                let next = (v32 / q) as u64 + 1;
                s -= (next - i) as u128 * lookup(q as u64, i);
                i = next;
            }
        } else {
            while i <= v {
                let q = v / i;
                let next = v / q + 1;
                s -= (next - i) as u128 * lookup(q, i);
                i = next;
            }
        }
        big[k] = s;
    }
    let mut memo = MEMO.lock();
    if memo.len() >= MEMO_CAPACITY {
        memo.clear();
    }
    memo.insert(n, big[1]);
    big[1]
}
