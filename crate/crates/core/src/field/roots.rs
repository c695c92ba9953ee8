use std::collections::BTreeMap;

use super::{Field, FieldElement, FieldError, FieldOps, TableField};

/// Largest field order accepted by the exhaustive root scan.
pub const ROOT_SCAN_LIMIT: u128 = 1 << 20;

const MAX_DEGREE: usize = 64;

/// Multiplicity of `r` as a root of `poly` (constant term first), by
/// repeated synthetic division. Zero when `r` is not a root.
pub fn root_multiplicity<F: FieldOps>(ops: &F, poly: &[F::Elem], r: &F::Elem) -> u32 {
    let mut cur: Vec<F::Elem> = poly.to_vec();
    while cur.last().is_some_and(|c| ops.is_zero(c)) {
        cur.pop();
    }
    let mut mult = 0;
    while cur.len() > 1 {
        // divide by (Y - r): quotient coefficients from the top down
        let n = cur.len() - 1;
        let mut quot = vec![ops.zero(); n];
        let mut carry = ops.zero();
        for i in (0..=n).rev() {
            let v = ops.add(&cur[i], &ops.mul(&carry, r));
            if i == 0 {
                carry = v;
            } else {
                quot[i - 1] = v.clone();
                carry = v;
            }
        }
        if !ops.is_zero(&carry) {
            break;
        }
        mult += 1;
        cur = quot;
    }
    mult
}

/// Roots of `poly` among `candidates`, with multiplicities, in candidate order.
pub fn roots_among<F: FieldOps>(ops: &F, poly: &[F::Elem], candidates: &[F::Elem]) -> Vec<(F::Elem, u32)> {
    candidates
        .iter()
        .filter(|c| ops.is_zero(&ops.eval(poly, c)))
        .map(|c| (c.clone(), root_multiplicity(ops, poly, c)))
        .collect()
}

/// All roots of a polynomial (constant term first) with multiplicities,
/// found by evaluating at every field element.
pub fn poly_roots(coeffs: &[FieldElement], field: &Field) -> Result<BTreeMap<FieldElement, u32>, FieldError> {
    if coeffs.iter().any(|c| **c.field() != **field) {
        return Err(FieldError::FieldMismatch);
    }
    let mut poly = coeffs.to_vec();
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    if poly.is_empty() {
        return Err(FieldError::ZeroPolynomial);
    }
    if poly.len() - 1 > MAX_DEGREE {
        return Err(FieldError::DegreeTooLarge(poly.len() - 1));
    }
    if field.order() > ROOT_SCAN_LIMIT {
        return Err(FieldError::FieldTooLarge { order: field.order(), limit: ROOT_SCAN_LIMIT });
    }
    let table = TableField::get(field)?;
    let codes: Vec<u32> = poly.iter().map(|c| table.lift(c)).collect();
    let mut out = BTreeMap::new();
    for i in 0..field.order() {
        let x = table.elem_at(i);
        if table.is_zero(&table.eval(&codes, &x)) {
            out.insert(table.to_element(&x), root_multiplicity(&*table, &codes, &x));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn ints(field: &Field, v: &[i128]) -> Vec<FieldElement> {
        v.iter().map(|&n| FieldElement::from_int(field, n)).collect()
    }

    #[test]
    fn examples() {
        let f7 = make_field(7, 1).unwrap();
        let r = poly_roots(&ints(&f7, &[-1, 0, 1]), &f7).unwrap();
        let got: Vec<_> = r.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        assert_eq!(got, vec![("1".into(), 1), ("6".into(), 1)]);
        let r = poly_roots(&ints(&f7, &[9, -6, 1]), &f7).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[&FieldElement::from_int(&f7, 3)], 2);
        assert_eq!(poly_roots(&ints(&f7, &[0, 0]), &f7).unwrap_err(), FieldError::ZeroPolynomial);
        let big = make_field(1_048_583, 1).unwrap();
        assert!(matches!(poly_roots(&ints(&big, &[1, 1]), &big), Err(FieldError::FieldTooLarge { .. })));
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        let f5 = make_field(5, 1).unwrap();
        assert!(poly_roots(&ints(&f5, &[3]), &f5).unwrap().is_empty());
    }

    #[test]
    fn generic_backend_multiplicity() {
        let f9 = make_field(3, 2).unwrap();
        let g = FieldElement::generator(&f9);
        // (Y - g)^3 = Y^3 - g^3 in characteristic 3
        let poly = vec![g.pow(3).neg(), FieldElement::zero(&f9), FieldElement::zero(&f9), FieldElement::one(&f9)];
        assert_eq!(root_multiplicity(&f9, &poly, &g), 3);
        assert_eq!(poly_roots(&poly, &f9).unwrap().into_iter().collect::<Vec<_>>(), vec![(g, 3)]);
    }
}
