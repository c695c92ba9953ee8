//! Complete lists of isomorphism-class representatives with a given j.

use super::iso::small_char_isomorphic;
use super::{CurveError, CurveModel};
use crate::field::{smallest_non_residue, smallest_trace_one, Field, FieldElement, FieldOps, TableField, TABLE_LIMIT};

/// One model with the given j-invariant.
pub fn standard_model(field: &Field, j: &FieldElement) -> Result<CurveModel, CurveError> {
    let z = || FieldElement::zero(field);
    let one = || FieldElement::one(field);
    match field.characteristic() {
        2 if j.is_zero() => CurveModel::new(field, [z(), z(), one(), z(), z()]),
        2 => CurveModel::new(field, [one(), z(), z(), z(), j.inv().expect("nonzero")]),
        3 if j.is_zero() => CurveModel::new(field, [z(), z(), z(), one(), z()]),
        3 => CurveModel::new(field, [z(), one(), z(), z(), j.inv().expect("nonzero").neg()]),
        _ => {
            let k = FieldElement::from_int(field, 1728);
            if j.is_zero() {
                CurveModel::short(field, z(), one())
            } else if *j == k {
                CurveModel::short(field, one(), z())
            } else {
                let m = &k - j;
                CurveModel::short(field, (j * &m).scale(3), (j * &m.square()).scale(2))
            }
        }
    }
}

/// Whether the j-invariant has automorphism group `{±1}` (so its classes
/// are a model and its quadratic twist with opposite traces).
pub(crate) fn is_generic_j(field: &Field, j: &FieldElement) -> bool {
    match field.characteristic() {
        2 | 3 => !j.is_zero(),
        _ => !j.is_zero() && *j != FieldElement::from_int(field, 1728),
    }
}

/// Quadratic twist of a model with generic j.
pub(crate) fn quadratic_twist(model: &CurveModel) -> CurveModel {
    let field = model.field();
    let [a1, a2, a3, a4, a6] = model.coeffs();
    let coeffs = if field.characteristic() == 2 {
        let w = smallest_trace_one(field).expect("characteristic 2");
        [a1.clone(), a2 + &(&a1.square() * &w), a3.clone(), a4.clone(), a6.clone()]
    } else if field.characteristic() == 3 {
        // d y^2 = f(x) rewritten as y^2 = x^3 + d a2 x^2 + d^2 a4 x + d^3 a6
        let d = smallest_non_residue(field).expect("odd characteristic");
        [a1.clone(), &d * a2, a3.clone(), &d.square() * a4, &d.pow(3) * a6]
    } else {
        let d = smallest_non_residue(field).expect("odd characteristic");
        [a1.clone(), a2.clone(), a3.clone(), &d.square() * a4, &d.pow(3) * a6]
    };
    CurveModel::new(field, coeffs).expect("twist of a nonsingular model")
}

/// Smallest representative (canonical order) of each coset of the
/// subgroup of `k`-th powers in `F_q^*`, `k | q - 1`.
pub(crate) fn power_coset_reps(field: &Field, k: u128) -> Vec<FieldElement> {
    let q = field.order();
    let e = (q - 1) / k;
    let mut seen: Vec<FieldElement> = Vec::new();
    let mut reps = Vec::new();
    let mut idx = 1;
    while reps.len() < k as usize {
        let x = FieldElement::from_index(field, idx);
        let id = x.pow(e);
        if !seen.contains(&id) {
            seen.push(id);
            reps.push(x);
        }
        idx += 1;
    }
    reps
}

/// All classes with the given j, sorted canonically.
pub fn curves_with_j(field: &Field, j: &FieldElement) -> Result<Vec<CurveModel>, CurveError> {
    let base = standard_model(field, j)?;
    let mut out = if is_generic_j(field, j) {
        vec![base.clone(), quadratic_twist(&base)]
    } else {
        special_j_models(field, j)?
    };
    out.sort();
    Ok(out)
}

fn special_j_models(field: &Field, j: &FieldElement) -> Result<Vec<CurveModel>, CurveError> {
    let q = field.order();
    let z = || FieldElement::zero(field);
    match field.characteristic() {
        2 | 3 => {
            if q > TABLE_LIMIT {
                return Err(CurveError::FieldTooLarge { order: q, limit: TABLE_LIMIT });
            }
            let table = TableField::get(field)?;
            let codes = if field.characteristic() == 2 { char2_j0_family(&*table) } else { char3_j0_family(&*table) };
            codes
                .into_iter()
                .map(|c| CurveModel::new(field, c.map(|x| table.to_element(&x))))
                .collect()
        }
        _ if j.is_zero() => {
            let k = crate::arith::gcd_i128(6, (q - 1) as i128);
            power_coset_reps(field, k).into_iter().map(|b| CurveModel::short(field, z(), b)).collect()
        }
        _ => {
            let k = crate::arith::gcd_i128(4, (q - 1) as i128);
            power_coset_reps(field, k).into_iter().map(|a| CurveModel::short(field, a, z())).collect()
        }
    }
}

/// Coset representatives of `F_q / image` for an additive subgroup given by
/// a membership table over canonical indices; the smallest element of each
/// coset is chosen.
fn additive_coset_reps<F: FieldOps>(ops: &F, image: &[F::Elem]) -> Vec<F::Elem> {
    let q = ops.order() as usize;
    let mut covered = vec![false; q];
    let mut reps = Vec::new();
    for idx in 0..q as u128 {
        if covered[idx as usize] {
            continue;
        }
        let x = ops.elem_at(idx);
        for v in image {
            covered[ops.index(&ops.add(&x, v)) as usize] = true;
        }
        reps.push(x);
    }
    reps
}

/// Distinct values of an additive map over the whole field.
fn additive_image<F: FieldOps>(ops: &F, f: impl Fn(&F::Elem) -> F::Elem) -> Vec<F::Elem> {
    let q = ops.order() as usize;
    let mut hit = vec![false; q];
    let mut out = Vec::new();
    for i in 0..q as u128 {
        let v = f(&ops.raw_element(i));
        let k = ops.index(&v) as usize;
        if !hit[k] {
            hit[k] = true;
            out.push(v);
        }
    }
    out
}

/// Keeps the first model of each isomorphism class, after sorting by index.
fn dedupe<F: FieldOps>(ops: &F, mut cands: Vec<[F::Elem; 5]>) -> Vec<[F::Elem; 5]> {
    cands.sort_by_key(|c| c.iter().map(|x| ops.index(x)).collect::<Vec<_>>());
    let mut kept: Vec<[F::Elem; 5]> = Vec::new();
    for c in cands {
        if !kept.iter().any(|k| small_char_isomorphic(ops, k, &c)) {
            kept.push(c);
        }
    }
    kept
}

/// Characteristic 2, j = 0: `y^2 + a3 y = x^3 + a4 x + a6` with `a3` over
/// cube classes, `a4` over `F_q / {s^4 + a3 s}` and `a6 ∈ {0, a3^2 w}`.
fn char2_j0_family<F: FieldOps>(ops: &F) -> Vec<[F::Elem; 5]> {
    let field = ops.field();
    let k = crate::arith::gcd_i128(3, (field.order() - 1) as i128);
    let w = ops.lift(&smallest_trace_one(field).expect("characteristic 2"));
    let mut cands = Vec::new();
    for a3 in power_coset_reps(field, k) {
        let a3 = ops.lift(&a3);
        let image = additive_image(ops, |s| ops.add(&ops.pow(s, 4), &ops.mul(&a3, s)));
        for a4 in additive_coset_reps(ops, &image) {
            for a6 in [ops.zero(), ops.mul(&ops.mul(&a3, &a3), &w)] {
                cands.push([ops.zero(), ops.zero(), a3.clone(), a4.clone(), a6]);
            }
        }
    }
    dedupe(ops, cands)
}

/// Characteristic 3, j = 0: `y^2 = x^3 + a4 x + a6` with `a4` over quartic
/// classes and `a6` over `F_q / {r^3 + a4 r}`.
fn char3_j0_family<F: FieldOps>(ops: &F) -> Vec<[F::Elem; 5]> {
    let field = ops.field();
    let k = crate::arith::gcd_i128(4, (field.order() - 1) as i128);
    let mut cands = Vec::new();
    for a4 in power_coset_reps(field, k) {
        let a4 = ops.lift(&a4);
        let image = additive_image(ops, |r| ops.add(&ops.pow(r, 3), &ops.mul(&a4, r)));
        for a6 in additive_coset_reps(ops, &image) {
            cands.push([ops.zero(), ops.zero(), ops.zero(), a4.clone(), a6]);
        }
    }
    dedupe(ops, cands)
}
