//! Sieves: a full primality table for bounded scans and a segmented,
//! constant-memory stream of prime powers in increasing order.

use crate::arith::isqrt;

/// Bit table of primality on `[0, bound]` plus the sorted prime-power list.
#[derive(Debug, Clone)]
pub struct SieveTable {
    bound: u64,
    bits: Vec<u64>,
    prime_powers: Vec<u64>,
    prime_count: usize,
}

impl SieveTable {
    /// Eratosthenes up to `bound` inclusive.
    pub fn build(bound: u64) -> SieveTable {
        let n = bound as usize + 1;
        let mut composite = vec![0u64; n.div_ceil(64)];
        let set = |v: &mut Vec<u64>, i: usize| v[i / 64] |= 1 << (i % 64);
        set(&mut composite, 0);
        if n > 1 {
            set(&mut composite, 1);
        }
        let r = isqrt(bound as u128) as usize;
        for i in 2..=r {
            if composite[i / 64] >> (i % 64) & 1 == 0 {
                let mut j = i * i;
                while j < n {
                    set(&mut composite, j);
                    j += i;
                }
            }
        }
        let bits: Vec<u64> = composite.iter().map(|w| !w).collect();
        let mut table = SieveTable { bound, bits, prime_powers: Vec::new(), prime_count: 0 };
        let mut powers = Vec::new();
        let mut count = 0;
        for p in 2..=bound {
            if table.is_prime(p) {
                count += 1;
                powers.push(p);
                if p <= bound / p {
                    let mut pk = p * p;
                    loop {
                        powers.push(pk);
                        match pk.checked_mul(p) {
                            Some(next) if next <= bound => pk = next,
                            _ => break,
                        }
                    }
                }
            }
        }
        powers.sort_unstable();
        table.prime_powers = powers;
        table.prime_count = count;
        table
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        n <= self.bound && self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn prime_count(&self) -> usize {
        self.prime_count
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.bound).filter(|&n| self.is_prime(n))
    }

    /// Prime powers `p^a`, `a >= 1`, in increasing order.
    pub fn prime_powers(&self) -> &[u64] {
        &self.prime_powers
    }

    /// Number of primes in the closed interval `[lo, hi]`.
    pub fn count_primes_in(&self, lo: u64, hi: u64) -> usize {
        (lo.max(2)..=hi.min(self.bound)).filter(|&n| self.is_prime(n)).count()
    }
}

const SEGMENT: u64 = 1 << 18;

/// Increasing stream of prime powers `2 <= q <= max`, built from a
/// segmented sieve so memory stays proportional to `sqrt(max)`.
pub struct PrimePowerStream {
    max: u64,
    base_primes: Vec<u64>,
    /// higher powers `p^k`, `k >= 2`, sorted descending so `pop` yields the next
    higher: Vec<u64>,
    seg_lo: u64,
    seg: Vec<u64>,
    seg_pos: usize,
}

impl PrimePowerStream {
    pub fn new(max: u64) -> PrimePowerStream {
        let root = isqrt(max as u128) as u64;
        let small = SieveTable::build(root.max(2));
        let base_primes: Vec<u64> = small.primes().filter(|&p| p <= root).collect();
        let mut higher = Vec::new();
        for &p in &base_primes {
            let mut pk = p * p;
            while pk <= max {
                higher.push(pk);
                match pk.checked_mul(p) {
                    Some(v) => pk = v,
                    None => break,
                }
            }
        }
        higher.sort_unstable_by(|a, b| b.cmp(a));
        PrimePowerStream { max, base_primes, higher, seg_lo: 2, seg: Vec::new(), seg_pos: 0 }
    }

    fn fill_segment(&mut self) -> bool {
        if self.seg_lo > self.max {
            return false;
        }
        let lo = self.seg_lo;
        let hi = lo.saturating_add(SEGMENT - 1).min(self.max);
        let len = (hi - lo + 1) as usize;
        let mut is_p = vec![true; len];
        for &p in &self.base_primes {
            if p * p > hi {
                break;
            }
            let start = (p * p).max(lo.div_ceil(p) * p);
            let mut m = start;
            while m <= hi {
                is_p[(m - lo) as usize] = false;
                m += p;
            }
        }
        self.seg = (0..len).filter(|&i| is_p[i]).map(|i| lo + i as u64).collect();
        self.seg_pos = 0;
        self.seg_lo = hi.saturating_add(1);
        if hi == u64::MAX {
            self.max = 0;
        }
        true
    }
}

impl Iterator for PrimePowerStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.seg_pos >= self.seg.len() {
            if !self.fill_segment() {
                return self.higher.pop();
            }
        }
        let prime = self.seg[self.seg_pos];
        match self.higher.last() {
            Some(&h) if h < prime => {
                self.higher.pop();
                Some(h)
            }
            _ => {
                self.seg_pos += 1;
                Some(prime)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;

    #[test]
    fn small_tables() {
        let t = SieveTable::build(10);
        assert_eq!(t.primes().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(t.prime_powers(), &[2, 3, 4, 5, 7, 8, 9]);
        assert_eq!(SieveTable::build(100).prime_count(), 25);
        assert_eq!(SieveTable::build(1_000_000).prime_count(), 78498);
    }

    #[test]
    fn agrees_with_miller_rabin() {
        use rand::{Rng, SeedableRng};
        let t = SieveTable::build(2_000_000);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(0..=2_000_000u64);
            assert_eq!(t.is_prime(n), is_prime(n), "{n}");
        }
    }

    #[test]
    fn stream_matches_table() {
        for max in [2u64, 3, 10, 1000, 300_000, 600_001] {
            let t = SieveTable::build(max);
            let s: Vec<u64> = PrimePowerStream::new(max).collect();
            assert_eq!(s, t.prime_powers(), "max={max}");
        }
    }
}
