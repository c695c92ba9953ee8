//! Hasse pairs of prime powers: the defining predicate, trace and
//! discriminant invariants, the Waterhouse classification of both sides,
//! splitting of the base primes in `Q(sqrt(D))`, and the special-case
//! detectors for supersingular and exceptional configurations.

mod record;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, checked_pow_u128, is_prime, iroot, isqrt};
use crate::sieve::PrimePowerStream;

pub use record::{PairJson, SideJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("the two prime powers are equal")]
    EqualInputs,
    #[error("({0}, {1}) is not a Hasse pair")]
    NotHasse(u64, u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("discriminant {0} is not negative")]
    NonNegative(i128),
    #[error("{0} is not a discriminant (must be 0 or 1 mod 4)")]
    NotDiscriminant(i128),
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i128),
    #[error("trace {t} violates the Hasse bound for q = {q}")]
    HasseBoundViolated { q: u64, t: i128 },
    #[error("pair has an even member")]
    NotOddPair,
    #[error("pair is not (even, supersingular) on the first side")]
    NotEvenSupersingular,
    #[error("bound {0} exceeds 2^32")]
    BoundTooLarge(u64),
    #[error("malformed record: {0}")]
    Malformed(String),
}

/// `q = p^a` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub q: u64,
    pub p: u64,
    pub a: u32,
}

impl PrimePower {
    pub fn is_odd(&self) -> bool {
        self.p != 2
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.a)
        }
    }
}

/// Writes `n` as `p^a` with `p` prime, if possible.
pub fn factor_prime_power(n: u64) -> Option<PrimePower> {
    if n < 2 {
        return None;
    }
    if is_prime(n) {
        return Some(PrimePower { q: n, p: n, a: 1 });
    }
    for a in 2..64u32 {
        let r = iroot(n, a);
        if r < 2 {
            break;
        }
        if checked_pow_u128(r as u128, a) == Some(n as u128) && is_prime(r) {
            return Some(PrimePower { q: n, p: r, a });
        }
    }
    None
}

/// `(q2 + 1 - q1)^2 <= 4 q2`, equivalently `|sqrt(q1) - sqrt(q2)| <= 1`.
pub fn is_hasse(q1: u64, q2: u64) -> Result<bool, PairError> {
    if q1 == q2 {
        return Err(PairError::EqualInputs);
    }
    let t = q2 as i128 + 1 - q1 as i128;
    Ok(t.unsigned_abs() * t.unsigned_abs() <= 4 * q2 as u128)
}

/// `(t1, t2, delta)` with `t_i = q_i + 1 - q_j` and `delta = t1^2 - 4 q1`.
pub fn pair_invariants(q1: u64, q2: u64) -> Result<(i128, i128, i128), PairError> {
    if !is_hasse(q1, q2)? {
        return Err(PairError::NotHasse(q1, q2));
    }
    let (a, b) = (q1 as i128, q2 as i128);
    let t1 = a + 1 - b;
    let t2 = b + 1 - a;
    let delta = (a - b) * (a - b) - 2 * (a + b) + 1;
    debug_assert_eq!(delta, t1 * t1 - 4 * a);
    debug_assert_eq!(delta, t2 * t2 - 4 * b);
    Ok((t1, t2, delta))
}

/// Whether `d` is a fundamental discriminant (negative or positive, `d != 1`).
pub fn is_fundamental(d: i128) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let squarefree = |m: u128| -> bool {
        let m = u64::try_from(m).expect("64-bit discriminant");
        arith::factor(m).iter().all(|&(_, e)| e == 1)
    };
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Writes a negative discriminant as `f^2 D` with `D` fundamental.
pub fn decompose_discriminant(delta: i128) -> Result<(u64, i128), PairError> {
    if delta >= 0 {
        return Err(PairError::NonNegative(delta));
    }
    if !matches!(delta.rem_euclid(4), 0 | 1) {
        return Err(PairError::NotDiscriminant(delta));
    }
    let n = u64::try_from(delta.unsigned_abs()).map_err(|_| PairError::NotDiscriminant(delta))?;
    let mut core = 1i128;
    let mut f = 1u64;
    for (p, e) in arith::factor(n) {
        if e % 2 == 1 {
            core *= p as i128;
        }
        f *= p.pow(e / 2);
    }
    let d0 = -core;
    if d0.rem_euclid(4) == 1 {
        Ok((f, d0))
    } else {
        debug_assert!(f % 2 == 0);
        Ok((f / 2, 4 * d0))
    }
}

/// Public three-way status of a set `E_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ordinary,
    Supersingular,
    Empty,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Ordinary => "ordinary",
            Status::Supersingular => "supersingular",
            Status::Empty => "empty",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        match s {
            "ordinary" => Some(Status::Ordinary),
            "supersingular" => Some(Status::Supersingular),
            "empty" => Some(Status::Empty),
            _ => None,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which branch of the Waterhouse list realizes a trace, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaterhouseCase {
    /// (a) `gcd(t, p) = 1`.
    Coprime,
    /// (b) `t = ±2 sqrt(q)`, `a` even.
    TwiceRoot,
    /// (c) `t = ±sqrt(q)`, `a` even, `p ≢ 1 (mod 3)`.
    Root,
    /// (d) `t^2 = p^{a+1}`, `p ∈ {2, 3}`, `a` odd.
    RamifiedRoot,
    /// (e) `t = 0`, `a` odd.
    ZeroOddDegree,
    /// (e) `t = 0`, `a` even, `p ≢ 1 (mod 4)`.
    ZeroEvenDegree,
    /// No curve has this trace.
    Unrealized,
}

impl WaterhouseCase {
    pub fn status(&self) -> Status {
        match self {
            WaterhouseCase::Coprime => Status::Ordinary,
            WaterhouseCase::Unrealized => Status::Empty,
            _ => Status::Supersingular,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            WaterhouseCase::Coprime => "coprime",
            WaterhouseCase::TwiceRoot => "twice_root",
            WaterhouseCase::Root => "root",
            WaterhouseCase::RamifiedRoot => "ramified_root",
            WaterhouseCase::ZeroOddDegree => "zero_odd_degree",
            WaterhouseCase::ZeroEvenDegree => "zero_even_degree",
            WaterhouseCase::Unrealized => "unrealized",
        }
    }

    pub fn parse(s: &str) -> Option<WaterhouseCase> {
        use WaterhouseCase::*;
        [Coprime, TwiceRoot, Root, RamifiedRoot, ZeroOddDegree, ZeroEvenDegree, Unrealized]
            .into_iter()
            .find(|c| c.as_str() == s)
    }
}

/// Classifies a trace `t` over `F_q` against the Waterhouse list.
pub fn waterhouse_case(q: PrimePower, t: i128) -> Result<WaterhouseCase, PairError> {
    let t_abs = t.unsigned_abs();
    if t_abs * t_abs > 4 * q.q as u128 {
        return Err(PairError::HasseBoundViolated { q: q.q, t });
    }
    let (p, a) = (q.p, q.a);
    if t_abs % p as u128 != 0 {
        return Ok(WaterhouseCase::Coprime);
    }
    let even = a % 2 == 0;
    let root = isqrt(q.q as u128);
    if even && t_abs == 2 * root {
        return Ok(WaterhouseCase::TwiceRoot);
    }
    if even && t_abs == root && p % 3 != 1 {
        return Ok(WaterhouseCase::Root);
    }
    if !even && (p == 2 || p == 3) && Some(t_abs * t_abs) == checked_pow_u128(p as u128, a + 1) {
        return Ok(WaterhouseCase::RamifiedRoot);
    }
    if t == 0 {
        if !even {
            return Ok(WaterhouseCase::ZeroOddDegree);
        }
        if p % 4 != 1 {
            return Ok(WaterhouseCase::ZeroEvenDegree);
        }
    }
    Ok(WaterhouseCase::Unrealized)
}

pub fn waterhouse_status(q: PrimePower, t: i128) -> Result<Status, PairError> {
    Ok(waterhouse_case(q, t)?.status())
}

/// A cell of the (E1 status, E2 status) configuration table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableCell(pub Status, pub Status);

impl fmt::Display for TableCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl std::str::FromStr for TableCell {
    type Err = PairError;

    fn from_str(s: &str) -> Result<Self, PairError> {
        let bad = || PairError::Malformed(format!("table cell {s:?}"));
        let (a, b) = s.split_once('-').ok_or_else(bad)?;
        Ok(TableCell(Status::parse(a).ok_or_else(bad)?, Status::parse(b).ok_or_else(bad)?))
    }
}

/// Behavior of a rational prime in an imaginary quadratic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Split,
    Inert,
    Ramified,
    Undefined,
}

impl Split {
    pub fn as_str(&self) -> &'static str {
        match self {
            Split::Split => "split",
            Split::Inert => "inert",
            Split::Ramified => "ramified",
            Split::Undefined => "undefined",
        }
    }
}

/// Splitting type of `p` in the field of fundamental discriminant `d < 0`.
pub fn split_type(d: i128, p: u64) -> Result<Split, PairError> {
    if d >= 0 || !is_fundamental(d) {
        return Err(PairError::NotFundamental(d));
    }
    if d.rem_euclid(p as i128) == 0 {
        return Ok(Split::Ramified);
    }
    let d64 = i64::try_from(d).map_err(|_| PairError::NotFundamental(d))?;
    Ok(if arith::kronecker(d64, p) == 1 { Split::Split } else { Split::Inert })
}

/// Every invariant of a Hasse pair in one record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRecord {
    pub q1: PrimePower,
    pub q2: PrimePower,
    pub t1: i128,
    pub t2: i128,
    pub delta: i128,
    /// Zero when `delta = 0`.
    pub conductor_f: u64,
    /// Zero when `delta = 0`.
    pub fundamental_d: i128,
    pub e1_case: WaterhouseCase,
    pub e2_case: WaterhouseCase,
    pub e1_status: Status,
    pub e2_status: Status,
    pub table_cell: TableCell,
    pub split1: Split,
    pub split2: Split,
}

impl PairRecord {
    pub fn is_odd(&self) -> bool {
        self.q1.is_odd() && self.q2.is_odd()
    }

    /// `(q, t, status)` of side `i ∈ {1, 2}`.
    pub fn side(&self, i: u8) -> (PrimePower, i128, Status) {
        match i {
            1 => (self.q1, self.t1, self.e1_status),
            2 => (self.q2, self.t2, self.e2_status),
            _ => panic!("side index must be 1 or 2"),
        }
    }

    /// Same pair with the two sides exchanged.
    pub fn swapped(&self) -> PairRecord {
        PairRecord {
            q1: self.q2,
            q2: self.q1,
            t1: self.t2,
            t2: self.t1,
            e1_case: self.e2_case,
            e2_case: self.e1_case,
            e1_status: self.e2_status,
            e2_status: self.e1_status,
            table_cell: TableCell(self.e2_status, self.e1_status),
            split1: self.split2,
            split2: self.split1,
            ..self.clone()
        }
    }
}

pub fn classify_pair(q1: PrimePower, q2: PrimePower) -> Result<PairRecord, PairError> {
    let (t1, t2, delta) = pair_invariants(q1.q, q2.q)?;
    let e1_case = waterhouse_case(q1, t1)?;
    let e2_case = waterhouse_case(q2, t2)?;
    let (conductor_f, fundamental_d, split1, split2) = if delta == 0 {
        (0, 0, Split::Undefined, Split::Undefined)
    } else {
        let (f, d) = decompose_discriminant(delta)?;
        (f, d, split_type(d, q1.p)?, split_type(d, q2.p)?)
    };
    Ok(PairRecord {
        q1,
        q2,
        t1,
        t2,
        delta,
        conductor_f,
        fundamental_d,
        e1_case,
        e2_case,
        e1_status: e1_case.status(),
        e2_status: e2_case.status(),
        table_cell: TableCell(e1_case.status(), e2_case.status()),
        split1,
        split2,
    })
}

/// Factors both integers and classifies the pair.
pub fn classify(q1: u64, q2: u64) -> Result<PairRecord, PairError> {
    let a = factor_prime_power(q1).ok_or(PairError::NotPrimePower(q1))?;
    let b = factor_prime_power(q2).ok_or(PairError::NotPrimePower(q2))?;
    classify_pair(a, b)
}

/// Largest bound accepted by [`enumerate_hasse_pairs`].
pub const ENUMERATION_LIMIT: u64 = 1 << 32;

/// Hasse pairs `q1 < q2 <= max_q`, sorted by `(q1, q2)`, streamed with a
/// window of lookahead proportional to `sqrt(max_q)`.
pub fn enumerate_hasse_pairs(max_q: u64, odd_only: bool) -> Result<HassePairs, PairError> {
    if max_q > ENUMERATION_LIMIT {
        return Err(PairError::BoundTooLarge(max_q));
    }
    Ok(HassePairs { source: PrimePowerStream::new(max_q), window: VecDeque::new(), pending: VecDeque::new(), odd_only })
}

/// Iterator returned by [`enumerate_hasse_pairs`].
pub struct HassePairs {
    source: PrimePowerStream,
    window: VecDeque<u64>,
    pending: VecDeque<PairRecord>,
    odd_only: bool,
}

impl Iterator for HassePairs {
    type Item = PairRecord;

    fn next(&mut self) -> Option<PairRecord> {
        loop {
            if let Some(r) = self.pending.pop_front() {
                return Some(r);
            }
            if self.window.is_empty() {
                self.window.push_back(self.source.next()?);
            }
            let q1 = self.window[0];
            // partners satisfy q2 <= q1 + 2 sqrt(q1) + 1
            let reach = q1 + 2 * isqrt(q1 as u128) as u64 + 2;
            while *self.window.back().unwrap() <= reach {
                match self.source.next() {
                    Some(q) => self.window.push_back(q),
                    None => break,
                }
            }
            self.window.pop_front();
            if self.odd_only && q1 % 2 == 0 {
                continue;
            }
            let a = factor_prime_power(q1).expect("stream yields prime powers");
            for &q2 in &self.window {
                if q2 > reach {
                    break;
                }
                if self.odd_only && q2 % 2 == 0 {
                    continue;
                }
                if is_hasse(q1, q2).expect("distinct") {
                    let b = factor_prime_power(q2).expect("stream yields prime powers");
                    self.pending.push_back(classify_pair(a, b).expect("Hasse pair"));
                }
            }
        }
    }
}

/// `t = k p^b` with `p ∤ k`; `b = 0` when `p ∤ t`.
fn trace_valuation(t: i128, p: u64) -> u32 {
    if t == 0 {
        return u32::MAX;
    }
    arith::valuation(t, p).0
}

/// True iff both sides have `b_i >= 1`, `a_i > 2 b_i` and `p_i^{2 b_i} || delta`,
/// the configuration where the conductor may fail to be coprime to `p_i`.
pub fn exceptional_flag(record: &PairRecord) -> Result<bool, PairError> {
    if !record.is_odd() {
        return Err(PairError::NotOddPair);
    }
    let side_flag = |q: PrimePower, t: i128| -> bool {
        if q.a <= 2 {
            return false;
        }
        let b = trace_valuation(t, q.p);
        if b == 0 || b == u32::MAX || q.a <= 2 * b {
            return false;
        }
        arith::valuation(record.delta, q.p).0 == 2 * b
    };
    Ok(side_flag(record.q1, record.t1) && side_flag(record.q2, record.t2))
}

/// Shapes of pairs `(2^m, q2)` whose first side is supersingular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvenSsCase {
    /// `(2^6, 3^4)`.
    Special64_81,
    /// `q2 = p^2`, `p = 2^k + 1` a Fermat prime, `q1 = (p - 1)^2`.
    FermatSquare,
    /// `q2 = p^2`, `p = 2^m - 1` a Mersenne prime, `q1 = (p + 1)^2`.
    MersenneSquare,
    /// `(4, 3)`.
    Pair4_3,
    /// Every other case; the second side is then ordinary.
    OrdinaryOtherSide,
}

impl EvenSsCase {
    /// Whether the shape forces a supersingular second side.
    pub fn both_supersingular(&self) -> bool {
        !matches!(self, EvenSsCase::OrdinaryOtherSide)
    }
}

/// Shape tag of an (even, supersingular) pair, read from `(q1, q2)` alone.
pub fn even_ss_case(record: &PairRecord) -> Result<EvenSsCase, PairError> {
    if record.q1.p != 2 || record.e1_status != Status::Supersingular {
        return Err(PairError::NotEvenSupersingular);
    }
    let (q1, q2) = (record.q1.q, record.q2);
    Ok(match (q1, q2.q) {
        (64, 81) => EvenSsCase::Special64_81,
        (4, 3) => EvenSsCase::Pair4_3,
        _ if q2.a == 2 && (q2.p - 1).is_power_of_two() && q1 == (q2.p - 1) * (q2.p - 1) => EvenSsCase::FermatSquare,
        _ if q2.a == 2 && (q2.p + 1).is_power_of_two() && q1 == (q2.p + 1) * (q2.p + 1) => EvenSsCase::MersenneSquare,
        _ => EvenSsCase::OrdinaryOtherSide,
    })
}

/// Consecutive integers `2^α` and `p^β` (either order), `α, β >= 2`, both `<= bound`.
pub fn consecutive_prime_power_scan(bound: u64) -> Result<Vec<(u64, u64)>, PairError> {
    if bound > ENUMERATION_LIMIT {
        return Err(PairError::BoundTooLarge(bound));
    }
    let mut out = Vec::new();
    let mut two_pow = 4u64;
    while two_pow <= bound {
        for n in [two_pow - 1, two_pow + 1] {
            if n > bound {
                continue;
            }
            if let Some(pp) = factor_prime_power(n) {
                if pp.a >= 2 {
                    out.push((two_pow, n));
                }
            }
        }
        two_pow *= 2;
    }
    Ok(out)
}

/// Prime-power pairs `(q1, q2)`, `q1 <= bound`, with `sqrt(q1) - sqrt(q2) = 1`
/// exactly; both members are then squares of consecutive prime powers.
pub fn hasse_equality_pairs(bound: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let top = isqrt(bound as u128) as u64;
    for m in 2..top {
        let (lo, hi) = (m * m, (m + 1) * (m + 1));
        if factor_prime_power(lo).is_some() && factor_prime_power(hi).is_some() {
            out.push((hi, lo));
        }
    }
    out
}

#[cfg(test)]
mod tests;
