//! Segmented sieve of Eratosthenes, prime counts per block, Möbius values and
//! partial Euler products.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::realnum::{Precision, Real};

/// Largest argument accepted by [`prime_pi`].
pub const PI_LIMIT: u64 = 100_000_000;
pub const MOBIUS_LIMIT: usize = 1_000_000;
pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 18;
pub const SEGMENT_SIZES: [u64; 3] = [1 << 15, 1 << 18, 1 << 20];
pub const CHILIAD: u64 = 1_000;
pub const MYRIAD: u64 = 10_000;

const CACHE_MAGIC: &[u8; 8] = b"LGPRIME1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountingConvention {
    Modern,
    /// Counts 1 as a prime, as the 1810 tables did.
    Bessel1810,
}

impl CountingConvention {
    pub fn tag(self) -> &'static str {
        match self {
            CountingConvention::Modern => "modern",
            CountingConvention::Bessel1810 => "bessel1810",
        }
    }

    fn offset(self) -> u64 {
        match self {
            CountingConvention::Modern => 0,
            CountingConvention::Bessel1810 => 1,
        }
    }
}

/// Primes up to `n` by a plain sieve, used for the base primes.
pub fn small_primes(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Composite flags for the odd integers of `[lo, hi)`.
#[derive(Debug, Clone)]
pub struct SieveSegment {
    lo: u64,
    hi: u64,
    first_odd: u64,
    bits: Vec<u64>,
    odd_count: usize,
}

impl SieveSegment {
    /// Sieves `[lo, hi)` with `base_primes`, which must cover `√hi`.
    pub fn new(lo: u64, hi: u64, base_primes: &[u64]) -> Self {
        let first_odd = if lo % 2 == 1 { lo } else { lo + 1 };
        let odd_count = if hi > first_odd { ((hi - first_odd + 1) / 2) as usize } else { 0 };
        let mut bits = vec![0u64; odd_count.div_ceil(64)];
        for &p in base_primes.iter().skip_while(|&&p| p == 2) {
            if p * p >= hi {
                break;
            }
            let mut m = (p * p).max(first_odd.div_ceil(p) * p);
            if m % 2 == 0 {
                m += p;
            }
            while m < hi {
                let i = ((m - first_odd) / 2) as usize;
                bits[i / 64] |= 1 << (i % 64);
                m += 2 * p;
            }
        }
        if first_odd == 1 && odd_count > 0 {
            bits[0] |= 1;
        }
        SieveSegment { lo, hi, first_odd, bits, odd_count }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    fn contains_two(&self) -> bool {
        self.lo <= 2 && 2 < self.hi
    }

    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n >= self.lo && n < self.hi, "{n} outside segment [{}, {})", self.lo, self.hi);
        if n == 2 {
            return true;
        }
        if n < 2 || n % 2 == 0 {
            return false;
        }
        let i = ((n - self.first_odd) / 2) as usize;
        self.bits[i / 64] & (1 << (i % 64)) == 0
    }

    pub fn count(&self) -> u64 {
        let marked: u32 = self.bits.iter().map(|w| w.count_ones()).sum();
        let odd_primes = self.odd_count as u64 - marked as u64;
        odd_primes + self.contains_two() as u64
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        let two = self.contains_two().then_some(2);
        let odds = (0..self.odd_count)
            .filter(move |i| self.bits[i / 64] & (1 << (i % 64)) == 0)
            .map(move |i| self.first_odd + 2 * i as u64);
        two.into_iter().chain(odds)
    }
}

/// Half-open segments of `segment_size` covering `[2, end)`.
pub fn segments(end: u64, segment_size: u64) -> impl Iterator<Item = SieveSegment> {
    assert!(segment_size >= 2, "segment size must be at least 2");
    let base = small_primes(isqrt(end.max(1)));
    let mut lo = 2;
    std::iter::from_fn(move || {
        if lo >= end {
            return None;
        }
        let hi = (lo + segment_size).min(end);
        let seg = SieveSegment::new(lo, hi, &base);
        lo = hi;
        Some(seg)
    })
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    segments(n + 1, DEFAULT_SEGMENT_SIZE)
        .flat_map(|s| s.primes().collect::<Vec<_>>())
        .collect()
}

/// `π(x)` for each of `points` (modern convention) from a single sieve pass.
pub fn prime_pi_many(points: &[u64]) -> Result<Vec<u64>> {
    for &x in points {
        check_pi_domain(x)?;
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| points[i]);
    let mut out = vec![0; points.len()];
    let Some(&top) = order.last().map(|&i| &points[i]) else {
        return Ok(out);
    };
    let mut pending = order.into_iter().peekable();
    let mut count = 0;
    for seg in segments(top + 1, DEFAULT_SEGMENT_SIZE) {
        while let Some(&i) = pending.peek() {
            if points[i] >= seg.hi() {
                break;
            }
            // finish the partial segment by enumeration
            let below = seg.primes().take_while(|&p| p <= points[i]).count() as u64;
            out[i] = count + below;
            pending.next();
        }
        count += seg.count();
    }
    Ok(out)
}

fn check_pi_domain(x: u64) -> Result<()> {
    if x < 2 {
        return Err(Error::Domain(format!("prime_pi requires x >= 2, got {x}")));
    }
    if x > PI_LIMIT {
        return Err(Error::LimitExceeded { value: x, limit: PI_LIMIT });
    }
    Ok(())
}

pub fn prime_pi(x: u64, conv: CountingConvention) -> Result<u64> {
    prime_pi_with_segment(x, conv, DEFAULT_SEGMENT_SIZE)
}

pub fn prime_pi_with_segment(x: u64, conv: CountingConvention, segment_size: u64) -> Result<u64> {
    check_pi_domain(x)?;
    let n: u64 = segments(x + 1, segment_size).map(|s| s.count()).sum();
    Ok(n + conv.offset())
}

/// Primes per block of `block_size` integers, with `π` at every boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCounts {
    pub limit: u64,
    pub block_size: u64,
    pub block_counts: Vec<u64>,
    pub pi_checkpoints: BTreeMap<u64, u64>,
}

impl PrimeCounts {
    fn from_blocks(limit: u64, block_size: u64, block_counts: Vec<u64>) -> Self {
        let mut pi_checkpoints = BTreeMap::new();
        let mut total = 0;
        for (k, c) in block_counts.iter().enumerate() {
            total += c;
            pi_checkpoints.insert((k as u64 + 1) * block_size, total);
        }
        PrimeCounts { limit, block_size, block_counts, pi_checkpoints }
    }

    pub fn total(&self) -> u64 {
        self.block_counts.iter().sum()
    }

    /// `π(x)` for a block boundary `x`.
    pub fn pi_at(&self, x: u64, conv: CountingConvention) -> Option<u64> {
        self.pi_checkpoints.get(&x).map(|n| n + conv.offset())
    }

    /// Restriction to a smaller `limit` aligned to the same blocks.
    pub fn truncated(&self, limit: u64) -> Option<Self> {
        if limit > self.limit || limit % self.block_size != 0 {
            return None;
        }
        let k = (limit / self.block_size) as usize;
        Some(Self::from_blocks(limit, self.block_size, self.block_counts[..k].to_vec()))
    }
}

fn check_blocks(limit: u64, block_size: u64) -> Result<()> {
    if !(block_size == CHILIAD || block_size == MYRIAD) || limit == 0 || limit % block_size != 0 {
        return Err(Error::Alignment { limit, block_size });
    }
    if limit > PI_LIMIT {
        return Err(Error::LimitExceeded { value: limit, limit: PI_LIMIT });
    }
    Ok(())
}

/// Chiliad or myriad counts over `[0, limit)`.
pub fn block_counts(limit: u64, block_size: u64) -> Result<PrimeCounts> {
    check_blocks(limit, block_size)?;
    let mut counts = vec![0u64; (limit / block_size) as usize];
    for seg in segments(limit, DEFAULT_SEGMENT_SIZE) {
        for p in seg.primes() {
            counts[(p / block_size) as usize] += 1;
        }
    }
    Ok(PrimeCounts::from_blocks(limit, block_size, counts))
}

/// Like [`block_counts`], reusing or refreshing a cache file when given.
pub fn block_counts_cached(limit: u64, block_size: u64, cache: Option<&Path>) -> Result<PrimeCounts> {
    check_blocks(limit, block_size)?;
    let Some(path) = cache else {
        return block_counts(limit, block_size);
    };
    if path.exists() {
        let stored = load_counts(path)?;
        if stored.block_size == block_size {
            if let Some(c) = stored.truncated(limit) {
                return Ok(c);
            }
        }
    }
    let counts = block_counts(limit, block_size)?;
    save_counts(path, &counts)?;
    Ok(counts)
}

/// Writes magic, limit, block size, block count and the counts, little-endian `u64`.
pub fn save_counts(path: &Path, counts: &PrimeCounts) -> Result<()> {
    let mut buf = Vec::with_capacity(32 + 8 * counts.block_counts.len());
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&counts.limit.to_le_bytes());
    buf.extend_from_slice(&counts.block_size.to_le_bytes());
    buf.extend_from_slice(&(counts.block_counts.len() as u64).to_le_bytes());
    for c in &counts.block_counts {
        buf.extend_from_slice(&c.to_le_bytes());
    }
    fs::write(path, buf)?;
    Ok(())
}

pub fn load_counts(path: &Path) -> Result<PrimeCounts> {
    let bytes = fs::read(path)?;
    let bad = |why: &str| Error::Cache(format!("{}: {why}", path.display()));
    if bytes.len() < 32 || &bytes[..8] != CACHE_MAGIC {
        return Err(bad("not a sieve cache file"));
    }
    let word = |i: usize| u64::from_le_bytes(bytes[8 * i..8 * i + 8].try_into().expect("8 bytes"));
    let (limit, block_size, n) = (word(1), word(2), word(3));
    if bytes.len() as u64 != 32 + 8 * n {
        return Err(bad("truncated counts"));
    }
    if block_size == 0 || limit != n * block_size {
        return Err(bad("inconsistent header"));
    }
    let counts = (0..n as usize).map(|i| word(4 + i)).collect();
    Ok(PrimeCounts::from_blocks(limit, block_size, counts))
}

/// `μ(k)` for `0 ≤ k ≤ n` by a linear sieve; index 0 holds 0.
pub fn mobius_upto(n: usize) -> Result<Vec<i8>> {
    if n > MOBIUS_LIMIT {
        return Err(Error::LimitExceeded { value: n as u64, limit: MOBIUS_LIMIT as u64 });
    }
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return Ok(mu);
    }
    mu[1] = 1;
    let mut is_composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !is_composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > n {
                break;
            }
            is_composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    Ok(mu)
}

fn neg_power(base: u64, s: &Real, integral: Option<i64>) -> Result<Real> {
    let b = Real::from_u64(base, s.precision());
    Ok(match integral {
        Some(k) => Real::one(s.precision()) / b.powi(k),
        None => b.pow(&-s)?,
    })
}

/// `(Σ_{n≤N} n^−s, Π_{p≤N} 1/(1 − p^−s))`.
pub fn euler_product_partial(s: &Real, n: u64) -> Result<(Real, Real)> {
    if *s <= 1 {
        return Err(Error::Domain("Euler product requires s > 1".into()));
    }
    if n < 2 {
        return Err(Error::Domain("Euler product requires N >= 2".into()));
    }
    if n > PI_LIMIT {
        return Err(Error::LimitExceeded { value: n, limit: PI_LIMIT });
    }
    let prec: Precision = s.precision();
    let k = s.round_to_i64();
    let integral = (*s == k).then_some(k);
    let one = Real::one(prec);

    let mut sum = Real::zero(prec);
    for m in (1..=n).rev() {
        sum = sum + neg_power(m, s, integral)?;
    }
    let mut product = one.clone();
    for p in primes_upto(n) {
        product = product / (&one - neg_power(p, s, integral)?);
    }
    Ok((sum, product))
}
