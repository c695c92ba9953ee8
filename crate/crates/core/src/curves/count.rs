use rayon::prelude::*;

use super::{CurveError, CurveModel};
use crate::field::{FieldOps, TableField, TABLE_LIMIT};

/// Largest field order accepted by the exhaustive point count.
pub const COUNT_LIMIT: u128 = 1 << 24;

const PARALLEL_THRESHOLD: u128 = 1 << 15;

/// Number of points including the point at infinity.
pub fn count_points(curve: &CurveModel) -> Result<u128, CurveError> {
    let field = curve.field();
    let q = field.order();
    if q > COUNT_LIMIT {
        return Err(CurveError::FieldTooLarge { order: q, limit: COUNT_LIMIT });
    }
    Ok(if q <= TABLE_LIMIT {
        let table = TableField::get(field)?;
        Counter::new(&*table).count(curve)
    } else {
        Counter::new(field).count(curve)
    })
}

/// Trace of Frobenius `q + 1 - #E(F_q)`.
pub fn trace_of(curve: &CurveModel) -> Result<i128, CurveError> {
    Ok(curve.field().order() as i128 + 1 - count_points(curve)? as i128)
}

/// Exhaustive point counter with per-field tables of `x`, `x^2`, `x^3`.
pub(crate) struct Counter<'a, F: FieldOps> {
    ops: &'a F,
    powers: Vec<[F::Elem; 3]>,
}

impl<'a, F: FieldOps> Counter<'a, F> {
    pub(crate) fn new(ops: &'a F) -> Self {
        let powers = (0..ops.order())
            .map(|i| {
                let x = ops.raw_element(i);
                let x2 = ops.mul(&x, &x);
                let x3 = ops.mul(&x2, &x);
                [x, x2, x3]
            })
            .collect();
        Counter { ops, powers }
    }

    pub(crate) fn count(&self, curve: &CurveModel) -> u128 {
        let q = self.ops.order();
        (q as i128 + 1 - self.trace(curve)) as u128
    }

    pub(crate) fn trace(&self, curve: &CurveModel) -> i128 {
        let ops = self.ops;
        if ops.characteristic() == 2 {
            let c: Vec<F::Elem> = curve.coeffs().iter().map(|e| ops.lift(e)).collect();
            self.trace_char2(&c[0], &c[1], &c[2], &c[3], &c[4])
        } else if curve.a1().is_zero() && curve.a2().is_zero() && curve.a3().is_zero() {
            self.trace_short(&ops.lift(curve.a4()), &ops.lift(curve.a6()))
        } else {
            let inv = curve.invariants();
            let b2 = ops.lift(&inv.b2);
            let b4 = ops.lift(&inv.b4.scale(2));
            let b6 = ops.lift(&inv.b6);
            let four = ops.of_int(4);
            self.trace_odd(&four, &b2, &b4, &b6)
        }
    }

    fn sum<G>(&self, f: G) -> i128
    where
        G: Fn(&[F::Elem; 3]) -> i128 + Sync + Send,
    {
        if self.powers.len() as u128 > PARALLEL_THRESHOLD {
            self.powers.par_chunks(1 << 12).map(|chunk| chunk.iter().map(&f).sum::<i128>()).sum()
        } else {
            self.powers.iter().map(f).sum()
        }
    }

    /// `-sum_x chi(c3 x^3 + c2 x^2 + c1 x + c0)` in odd characteristic.
    pub(crate) fn trace_odd(&self, c3: &F::Elem, c2: &F::Elem, c1: &F::Elem, c0: &F::Elem) -> i128 {
        let ops = self.ops;
        let s = self.sum(|[x, x2, x3]| {
            let v = ops.add(&ops.add(&ops.mul(c3, x3), &ops.mul(c2, x2)), &ops.add(&ops.mul(c1, x), c0));
            ops.legendre(&v) as i128
        });
        -s
    }

    /// Trace of `y^2 = x^3 + a x + b` in odd characteristic.
    pub(crate) fn trace_short(&self, a: &F::Elem, b: &F::Elem) -> i128 {
        let ops = self.ops;
        let s = self.sum(|[x, _, x3]| ops.legendre(&ops.add(&ops.add(x3, &ops.mul(a, x)), b)) as i128);
        -s
    }

    /// Trace in characteristic 2: for each `x`, `y^2 + A y = B` has one
    /// solution when `A = 0`, else two or none by the trace of `B / A^2`.
    pub(crate) fn trace_char2(&self, a1: &F::Elem, a2: &F::Elem, a3: &F::Elem, a4: &F::Elem, a6: &F::Elem) -> i128 {
        let ops = self.ops;
        let affine = self.sum(|[x, x2, x3]| {
            let lin = ops.add(&ops.mul(a1, x), a3);
            let rhs = ops.add(&ops.add(x3, &ops.mul(a2, x2)), &ops.add(&ops.mul(a4, x), a6));
            match ops.inv(&lin) {
                None => 1,
                Some(inv) => {
                    let c = ops.mul(&rhs, &ops.mul(&inv, &inv));
                    if ops.trace_bit(&c) == 0 {
                        2
                    } else {
                        0
                    }
                }
            }
        });
        self.ops.order() as i128 - affine
    }
}
