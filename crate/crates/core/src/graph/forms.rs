//! Class numbers of imaginary quadratic orders by counting reduced forms.

use super::GraphError;
use crate::arith::{divisors, gcd};
use crate::pairs::decompose_discriminant;

/// Largest `|discriminant|` accepted by [`reduced_forms`].
pub const FORMS_LIMIT: i128 = 100_000_000;

/// Reduced primitive forms `(a, b, c)` with `b^2 - 4ac = d`: `|b| <= a <= c`
/// and `b >= 0` whenever `|b| = a` or `a = c`.
pub fn reduced_forms(d: i128) -> Result<Vec<(i64, i64, i64)>, GraphError> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(GraphError::BadDiscriminant(d));
    }
    if -d > FORMS_LIMIT {
        return Err(GraphError::DiscriminantTooLarge(d));
    }
    let d = d as i64;
    let mut out = Vec::new();
    let mut b = d.rem_euclid(2);
    // a reduced form has 3 b^2 <= |d|
    while 3 * b * b <= -d {
        let m = (b * b - d) / 4;
        let mut a = b.max(1);
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                if gcd(gcd(a as u64, b as u64), c as u64) == 1 {
                    out.push((a, b, c));
                    if b != 0 && b != a && a != c {
                        out.push((a, -b, c));
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort_unstable();
    Ok(out)
}

/// Class number `h(d)` of the order of discriminant `d < 0`.
pub fn class_number(d: i128) -> Result<u64, GraphError> {
    Ok(reduced_forms(d)?.len() as u64)
}

/// `sum over g | f of h(g^2 D)` for `delta = f^2 D`: the number of
/// j-invariants whose endomorphism ring contains the order of discriminant `delta`.
pub fn kronecker_class_number(delta: i128) -> Result<u64, GraphError> {
    let (f, d) = decompose_discriminant(delta)?;
    divisors(f).into_iter().map(|g| class_number((g as i128) * (g as i128) * d)).sum()
}
