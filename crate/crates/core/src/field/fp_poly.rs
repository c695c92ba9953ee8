//! Dense polynomials over a prime field, constant term first.
//!
//! Only what irreducible-modulus selection needs: reduction, products
//! modulo a fixed polynomial, and gcd.

use crate::arith::{add_mod, inv_mod, mul_mod, sub_mod};

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo `m` (m nonzero, any leading coefficient).
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mul_mod(r[top], lead_inv, p);
        if c != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = sub_mod(r[shift + i], mul_mod(c, mi, p), p);
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

/// `base^exp mod m`.
pub(crate) fn pow_rem(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_rem(&acc, &b, m, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul_rem(&b, &b, m, p);
        }
    }
    acc
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or test: a monic `f` of degree `a` is irreducible iff
/// `gcd(f, x^{p^k} - x) = 1` for every `k <= a/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut xpk = x.clone();
    for _ in 1..=deg / 2 {
        xpk = pow_rem(&xpk, p as u128, f, p);
        let mut diff = xpk.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = sub_mod(diff[1], 1, p);
        trim(&mut diff);
        let g = gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_over_f2() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2)); // (x^2+x+1)^2
    }

    #[test]
    fn remainder() {
        // x^3 mod (x^2 + 1) over F_7 = -x
        assert_eq!(rem(&[0, 0, 0, 1], &[1, 0, 1], 7), vec![0, 6]);
    }
}
