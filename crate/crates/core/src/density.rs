//! Prime and prime-power statistics: Andrica-type gap scans, Hasse partner
//! counts of primes and their comparison with `sqrt(p) / (2 log p)`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::isqrt;
use crate::sieve::SieveTable;

/// Largest sieve bound accepted by [`sieve`].
pub const SIEVE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("sieve bound {0} exceeds {SIEVE_LIMIT}")]
    BoundTooLarge(u64),
    #[error("sieve bound {0} is below 2")]
    BoundTooSmall(u64),
    #[error("table bound {bound} is below the required {needed}")]
    TableTooSmall { bound: u64, needed: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Primality table and prime-power list up to `x`.
pub fn sieve(x: u64) -> Result<SieveTable, DensityError> {
    if x > SIEVE_LIMIT {
        return Err(DensityError::BoundTooLarge(x));
    }
    if x < 2 {
        return Err(DensityError::BoundTooSmall(x));
    }
    Ok(SieveTable::build(x))
}

/// Sequence scanned by [`andrica_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Over {
    Primes,
    PrimePowers,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AndricaReport {
    /// Number of consecutive pairs examined.
    pub checked: usize,
    /// Consecutive `(q, q')` with `sqrt(q') - sqrt(q) > 1`.
    pub violations: Vec<(u64, u64)>,
    /// Consecutive `(q, q')` with `sqrt(q') - sqrt(q) = 1`.
    pub equalities: Vec<(u64, u64)>,
}

/// Compares consecutive members `q < q'` through `(q' - q - 1)^2` against `4q`.
pub fn andrica_scan(table: &SieveTable, over: Over) -> AndricaReport {
    let seq: Vec<u64> = match over {
        Over::Primes => table.primes().collect(),
        Over::PrimePowers => table.prime_powers().to_vec(),
    };
    let mut report = AndricaReport { checked: 0, violations: Vec::new(), equalities: Vec::new() };
    for w in seq.windows(2) {
        let (q, next) = (w[0], w[1]);
        let gap = (next - q - 1) as u128;
        let bound = 4 * q as u128;
        report.checked += 1;
        if gap * gap > bound {
            report.violations.push((q, next));
        } else if gap * gap == bound {
            report.equalities.push((q, next));
        }
    }
    report
}

/// Closed interval `[(sqrt(q) - 1)^2, (sqrt(q) + 1)^2]` of Hasse partners of `q`, rounded inward.
pub fn hasse_window(q: u64) -> (u64, u64) {
    let r = isqrt(4 * q as u128) as u64;
    ((q + 1).saturating_sub(r), q + 1 + r)
}

/// Number of primes `l != p` forming a Hasse pair with the prime `p`.
pub fn hasse_partner_count(p: u64, table: &SieveTable) -> Result<u64, DensityError> {
    let (lo, hi) = hasse_window(p);
    if hi > table.bound() {
        return Err(DensityError::TableTooSmall { bound: table.bound(), needed: hi });
    }
    if !table.is_prime(p) {
        return Err(DensityError::NotPrime(p));
    }
    Ok(table.count_primes_in(lo, hi) as u64 - 1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdEntry {
    pub p: u64,
    pub count: u64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub checked: usize,
    /// Primes whose partner count is below `sqrt(p) / (2 log p)`.
    pub exceptions: Vec<ThresholdEntry>,
    /// Primes whose count equals the threshold as a float.
    pub ties: Vec<ThresholdEntry>,
}

/// Partner counts of all primes `p <= x` against `sqrt(p) / (2 log p)`.
pub fn threshold_report(table: &SieveTable, x: u64) -> Result<ThresholdReport, DensityError> {
    let needed = hasse_window(x).1;
    if needed > table.bound() {
        return Err(DensityError::TableTooSmall { bound: table.bound(), needed });
    }
    let primes: Vec<u64> = table.primes().take_while(|&p| p <= x).collect();
    let entries: Vec<ThresholdEntry> = primes
        .par_iter()
        .map(|&p| {
            let count = hasse_partner_count(p, table).expect("window inside the table");
            let pf = p as f64;
            ThresholdEntry { p, count, threshold: 0.5 * pf.sqrt() / pf.ln() }
        })
        .collect();
    let mut report = ThresholdReport { checked: entries.len(), exceptions: Vec::new(), ties: Vec::new() };
    for e in entries {
        let c = e.count as f64;
        if c < e.threshold {
            report.exceptions.push(e);
        } else if c == e.threshold {
            report.ties.push(e);
        }
    }
    Ok(report)
}

/// Prime powers `q <= x` without a prime-power Hasse partner (restricted to
/// odd partners for odd `q` when `odd_only` is set).
pub fn unpaired_prime_powers(table: &SieveTable, x: u64, odd_only: bool) -> Result<Vec<u64>, DensityError> {
    let needed = hasse_window(x).1;
    if needed > table.bound() {
        return Err(DensityError::TableTooSmall { bound: table.bound(), needed });
    }
    let pps = table.prime_powers();
    let eligible = |q: u64| !odd_only || q % 2 == 1;
    let mut out = Vec::new();
    for (i, &q) in pps.iter().enumerate().take_while(|(_, &q)| q <= x) {
        if odd_only && q % 2 == 0 {
            continue;
        }
        let (lo, hi) = hasse_window(q);
        let below = pps[..i].iter().rev().take_while(|&&r| r >= lo).any(|&r| eligible(r));
        let above = pps[i + 1..].iter().take_while(|&&r| r <= hi).any(|&r| eligible(r));
        if !below && !above {
            out.push(q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairs::{enumerate_hasse_pairs, is_hasse};

    #[test]
    fn sieve_bounds() {
        assert_eq!(sieve(SIEVE_LIMIT + 1).unwrap_err(), DensityError::BoundTooLarge(SIEVE_LIMIT + 1));
        assert_eq!(sieve(1).unwrap_err(), DensityError::BoundTooSmall(1));
        let t = sieve(10).unwrap();
        assert_eq!(t.primes().collect::<Vec<_>>(), vec![2, 3, 5, 7]);
        assert_eq!(t.prime_powers(), &[2, 3, 4, 5, 7, 8, 9]);
    }

    #[test]
    fn partner_counts() {
        let t = sieve(1000).unwrap();
        assert_eq!(hasse_partner_count(101, &t).unwrap(), 7);
        assert_eq!(hasse_partner_count(2, &t).unwrap(), 2);
        assert_eq!(hasse_partner_count(3, &t).unwrap(), 3);
        assert_eq!(hasse_partner_count(100, &t), Err(DensityError::NotPrime(100)));
        assert!(matches!(hasse_partner_count(997, &t), Err(DensityError::TableTooSmall { .. })));
    }

    #[test]
    fn partner_counts_match_pair_enumeration() {
        let t = sieve(2000).unwrap();
        let mut counts = std::collections::BTreeMap::<u64, u64>::new();
        for r in enumerate_hasse_pairs(1100, false).unwrap() {
            if r.q1.a == 1 && r.q2.a == 1 {
                *counts.entry(r.q1.q).or_default() += 1;
                *counts.entry(r.q2.q).or_default() += 1;
            }
        }
        for p in t.primes().take_while(|&p| p <= 1000) {
            assert_eq!(hasse_partner_count(p, &t).unwrap(), counts.get(&p).copied().unwrap_or(0), "p={p}");
        }
    }

    #[test]
    fn window_is_exact() {
        for q in 2..5000u64 {
            let (lo, hi) = hasse_window(q);
            for l in lo.saturating_sub(3).max(1)..hi + 3 {
                if l != q {
                    assert_eq!(is_hasse(q, l).unwrap(), lo <= l && l <= hi, "q={q} l={l}");
                }
            }
        }
    }

    #[test]
    fn andrica_small() {
        let t = sieve(1_000_000).unwrap();
        for over in [Over::Primes, Over::PrimePowers] {
            let r = andrica_scan(&t, over);
            assert!(r.violations.is_empty());
            assert!(r.equalities.is_empty());
        }
        let t = sieve(10).unwrap();
        assert_eq!(andrica_scan(&t, Over::PrimePowers).checked, 6);
    }

    #[test]
    fn thresholds_small() {
        let t = sieve(20_000).unwrap();
        for x in [10, 100, 10_000] {
            let r = threshold_report(&t, x).unwrap();
            assert!(r.exceptions.is_empty(), "x={x}");
        }
    }

    #[test]
    fn every_prime_power_has_a_partner() {
        let t = sieve(1_002_100).unwrap();
        assert!(unpaired_prime_powers(&t, 1_000_000, false).unwrap().is_empty());
        assert!(unpaired_prime_powers(&t, 1_000_000, true).unwrap().is_empty());
    }
}
