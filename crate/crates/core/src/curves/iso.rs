//! Deciding `F_q`-isomorphism of two Weierstrass models by solving for an
//! admissible change of variables `x = u^2 x' + r`, `y = u^3 y' + u^2 s x' + t`.

use super::{CurveError, CurveModel};
use crate::field::{FieldElement, FieldOps, TableField, TABLE_LIMIT};

/// Whether the two models are isomorphic over their common field.
///
/// Cost is `O(q)` field operations in the worst case.
pub fn is_isomorphic(e1: &CurveModel, e2: &CurveModel) -> Result<bool, CurveError> {
    if **e1.field() != **e2.field() {
        return Err(crate::field::FieldError::FieldMismatch.into());
    }
    if e1.j_invariant() != e2.j_invariant() {
        return Ok(false);
    }
    let field = e1.field();
    if field.characteristic() >= 5 {
        return Ok(short_isomorphic(e1, e2));
    }
    Ok(if field.order() <= TABLE_LIMIT {
        let t = TableField::get(field)?;
        small_char_isomorphic(&*t, &codes(&*t, e1), &codes(&*t, e2))
    } else {
        small_char_isomorphic(field, &codes(field, e1), &codes(field, e2))
    })
}

pub(crate) fn codes<F: FieldOps>(ops: &F, e: &CurveModel) -> [F::Elem; 5] {
    e.coeffs().clone().map(|c| ops.lift(&c))
}

/// Characteristic at least 5: compare `(c4, c6)` up to `(u^4, u^6)` scaling.
fn short_isomorphic(e1: &CurveModel, e2: &CurveModel) -> bool {
    let (i1, i2) = (e1.invariants(), e2.invariants());
    let q = e1.field().order();
    let solvable = |w: &FieldElement, k: u128| -> bool {
        // w is a k-th power iff w^{(q-1)/gcd(k, q-1)} = 1
        let g = crate::arith::gcd_i128(k as i128, (q - 1) as i128);
        w.pow((q - 1) / g).is_one()
    };
    match (i1.c4.is_zero(), i1.c6.is_zero()) {
        (true, _) => solvable(&i1.c6.div(&i2.c6).expect("nonsingular"), 6),
        (_, true) => solvable(&i1.c4.div(&i2.c4).expect("nonsingular"), 4),
        _ => {
            // u^2 = (c6 c4') / (c6' c4) must be a square
            let lambda = (&i1.c6 * &i2.c4).div(&(&i2.c6 * &i1.c4)).expect("nonsingular");
            lambda.legendre() == 1
        }
    }
}

/// Characteristic 2 or 3, on coefficient codes `[a1, a2, a3, a4, a6]`.
pub(crate) fn small_char_isomorphic<F: FieldOps>(ops: &F, a: &[F::Elem; 5], b: &[F::Elem; 5]) -> bool {
    if ops.characteristic() == 3 {
        char3_isomorphic(ops, a, b)
    } else {
        char2_isomorphic(ops, a, b)
    }
}

/// `y^2 = x^3 + A2 x^2 + A4 x + A6` obtained by completing the square.
fn char3_reduced<F: FieldOps>(ops: &F, c: &[F::Elem; 5]) -> [F::Elem; 3] {
    let [a1, a2, a3, a4, a6] = c;
    // in characteristic 3: A2 = b2, A4 = -b4, A6 = b6
    let b2 = ops.add(&ops.mul(a1, a1), a2);
    let b4 = ops.add(&ops.add(a4, a4), &ops.mul(a1, a3));
    let b6 = ops.add(&ops.mul(a3, a3), a6);
    [b2, ops.neg(&b4), b6]
}

fn char3_isomorphic<F: FieldOps>(ops: &F, a: &[F::Elem; 5], b: &[F::Elem; 5]) -> bool {
    let [p2, p4, p6] = char3_reduced(ops, a);
    let [q2, q4, q6] = char3_reduced(ops, b);
    let n = ops.order();
    if !ops.is_zero(&p2) {
        // u^2 q2 = p2, then r is forced by the x coefficient
        let two_p2_inv = ops.inv(&ops.add(&p2, &p2)).expect("nonzero");
        for i in 1..n {
            let u = ops.raw_element(i);
            let u2 = ops.mul(&u, &u);
            if ops.mul(&u2, &q2) != p2 {
                continue;
            }
            let u4 = ops.mul(&u2, &u2);
            let u6 = ops.mul(&u4, &u2);
            let r = ops.mul(&ops.sub(&ops.mul(&u4, &q4), &p4), &two_p2_inv);
            let rhs = ops.add(&ops.add(&p6, &ops.mul(&r, &p4)), &ops.add(&ops.mul(&ops.mul(&r, &r), &p2), &ops.pow(&r, 3)));
            if ops.mul(&u6, &q6) == rhs {
                return true;
            }
        }
        return false;
    }
    // j = 0: u^4 q4 = p4 and r^3 + p4 r + p6 = u^6 q6
    for i in 1..n {
        let u = ops.raw_element(i);
        let u2 = ops.mul(&u, &u);
        let u4 = ops.mul(&u2, &u2);
        if ops.mul(&u4, &q4) != p4 {
            continue;
        }
        let target = ops.sub(&ops.mul(&ops.mul(&u4, &u2), &q6), &p6);
        for k in 0..n {
            let r = ops.raw_element(k);
            if ops.add(&ops.pow(&r, 3), &ops.mul(&p4, &r)) == target {
                return true;
            }
        }
    }
    false
}

fn char2_isomorphic<F: FieldOps>(ops: &F, a: &[F::Elem; 5], b: &[F::Elem; 5]) -> bool {
    let [a1, a2, a3, a4, a6] = a;
    let [b1, b2, b3, b4, b6] = b;
    let n = ops.order();
    if ops.is_zero(a1) != ops.is_zero(b1) {
        return false;
    }
    let sq = |x: &F::Elem| ops.mul(x, x);
    if !ops.is_zero(a1) {
        let u = ops.mul(a1, &ops.inv(b1).expect("nonzero"));
        let u2 = sq(&u);
        let u3 = ops.mul(&u2, &u);
        let u4 = sq(&u2);
        let u6 = sq(&u3);
        let a1_inv = ops.inv(a1).expect("nonzero");
        let r = ops.mul(&ops.add(&ops.mul(&u3, b3), a3), &a1_inv);
        let s_rhs = ops.add(&ops.add(&ops.mul(&u2, b2), a2), &r);
        for k in 0..n {
            let s = ops.raw_element(k);
            if ops.add(&sq(&s), &ops.mul(a1, &s)) != s_rhs {
                continue;
            }
            let t_num = [ops.mul(&u4, b4), a4.clone(), ops.mul(&s, a3), ops.mul(&ops.mul(&r, &s), a1), sq(&r)]
                .iter()
                .fold(ops.zero(), |acc, v| ops.add(&acc, v));
            let t = ops.mul(&t_num, &a1_inv);
            let rhs = [
                a6.clone(),
                ops.mul(&r, a4),
                ops.mul(&sq(&r), a2),
                ops.mul(&sq(&r), &r),
                ops.mul(&t, a3),
                sq(&t),
                ops.mul(&ops.mul(&r, &t), a1),
            ]
            .iter()
            .fold(ops.zero(), |acc, v| ops.add(&acc, v));
            if ops.mul(&u6, b6) == rhs {
                return true;
            }
        }
        return false;
    }
    // a1 = 0: u^3 b3 = a3, r = u^2 b2 + a2 + s^2, u^4 b4 = a4 + s a3 + r^2,
    // and t^2 + a3 t = u^6 b6 + a6 + r a4 + r^2 a2 + r^3 must be solvable
    let a3_inv2 = {
        let i = ops.inv(a3).expect("nonsingular");
        ops.mul(&i, &i)
    };
    for i in 1..n {
        let u = ops.raw_element(i);
        let u2 = sq(&u);
        let u3 = ops.mul(&u2, &u);
        if ops.mul(&u3, b3) != *a3 {
            continue;
        }
        let u4 = sq(&u2);
        let u6 = sq(&u3);
        for k in 0..n {
            let s = ops.raw_element(k);
            let r = ops.add(&ops.add(&ops.mul(&u2, b2), a2), &sq(&s));
            if ops.mul(&u4, b4) != ops.add(&ops.add(a4, &ops.mul(&s, a3)), &sq(&r)) {
                continue;
            }
            let c = [ops.mul(&u6, b6), a6.clone(), ops.mul(&r, a4), ops.mul(&sq(&r), a2), ops.mul(&sq(&r), &r)]
                .iter()
                .fold(ops.zero(), |acc, v| ops.add(&acc, v));
            if ops.trace_bit(&ops.mul(&c, &a3_inv2)) == 0 {
                return true;
            }
        }
    }
    false
}
