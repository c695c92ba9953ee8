//! Elliptic curves over `F_{p^a}` in long Weierstrass form: invariants,
//! exact point counts, twist families per j-invariant, isomorphism tests
//! and the enumeration of all classes with a prescribed number of points.

mod count;
mod enumerate;
mod iso;
mod twists;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};

pub use count::{count_points, trace_of, COUNT_LIMIT};
pub use enumerate::{enumerate_set, field_classes, CurveSet, SUPERSINGULAR_LIMIT};
pub use iso::is_isomorphic;
pub use twists::{curves_with_j, standard_model};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("singular Weierstrass model")]
    SingularModel,
    #[error("field of order {order} exceeds the limit {limit}")]
    FieldTooLarge { order: u128, limit: u128 },
    #[error("target order {order} lies outside the Hasse window of q = {q}")]
    TargetOutOfHasseWindow { q: u128, order: u128 },
}

/// Model family, determined by the characteristic and by `a1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    ShortW,
    Char3,
    Char2Ordinary,
    Char2Supersingular,
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`, nonsingular.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CurveModel {
    field: Field,
    /// `[a1, a2, a3, a4, a6]`
    coeffs: [FieldElement; 5],
    shape: Shape,
}

/// Standard auxiliary quantities of a long Weierstrass model.
#[derive(Debug, Clone)]
pub struct Invariants {
    pub b2: FieldElement,
    pub b4: FieldElement,
    pub b6: FieldElement,
    pub b8: FieldElement,
    pub c4: FieldElement,
    pub c6: FieldElement,
    pub discriminant: FieldElement,
}

impl CurveModel {
    /// Builds a model from `[a1, a2, a3, a4, a6]`, rejecting singular ones.
    pub fn new(field: &Field, coeffs: [FieldElement; 5]) -> Result<CurveModel, CurveError> {
        if coeffs.iter().any(|c| **c.field() != **field) {
            return Err(FieldError::FieldMismatch.into());
        }
        let shape = match field.characteristic() {
            2 if coeffs[0].is_zero() => Shape::Char2Supersingular,
            2 => Shape::Char2Ordinary,
            3 => Shape::Char3,
            _ => Shape::ShortW,
        };
        let model = CurveModel { field: field.clone(), coeffs, shape };
        if model.invariants().discriminant.is_zero() {
            return Err(CurveError::SingularModel);
        }
        Ok(model)
    }

    /// Builds a model from integer coefficients `[a1, a2, a3, a4, a6]`
    /// reduced into the prime subfield.
    pub fn from_ints(field: &Field, a: [i128; 5]) -> Result<CurveModel, CurveError> {
        CurveModel::new(field, a.map(|v| FieldElement::from_int(field, v)))
    }

    /// `y^2 = x^3 + a x + b`.
    pub fn short(field: &Field, a: FieldElement, b: FieldElement) -> Result<CurveModel, CurveError> {
        let z = FieldElement::zero(field);
        CurveModel::new(field, [z.clone(), z.clone(), z, a, b])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// `[a1, a2, a3, a4, a6]`.
    pub fn coeffs(&self) -> &[FieldElement; 5] {
        &self.coeffs
    }

    pub fn a1(&self) -> &FieldElement {
        &self.coeffs[0]
    }
    pub fn a2(&self) -> &FieldElement {
        &self.coeffs[1]
    }
    pub fn a3(&self) -> &FieldElement {
        &self.coeffs[2]
    }
    pub fn a4(&self) -> &FieldElement {
        &self.coeffs[3]
    }
    pub fn a6(&self) -> &FieldElement {
        &self.coeffs[4]
    }

    pub fn invariants(&self) -> Invariants {
        let [a1, a2, a3, a4, a6] = &self.coeffs;
        let b2 = &a1.square() + &a2.scale(4);
        let b4 = &a4.scale(2) + &(a1 * a3);
        let b6 = &a3.square() + &a6.scale(4);
        let b8 = {
            let t1 = &a1.square() * a6;
            let t2 = (a2 * a6).scale(4);
            let t3 = &(a1 * a3) * a4;
            let t4 = a2 * &a3.square();
            let t5 = a4.square();
            &(&(&(&t1 + &t2) - &t3) + &t4) - &t5
        };
        let c4 = &b2.square() - &b4.scale(24);
        let c6 = &(&b2.pow(3).neg() + &(&b2 * &b4).scale(36)) - &b6.scale(216);
        let discriminant = {
            let t1 = (&b2.square() * &b8).neg();
            let t2 = b4.pow(3).scale(8);
            let t3 = b6.square().scale(27);
            let t4 = (&(&b2 * &b4) * &b6).scale(9);
            &(&(&t1 - &t2) - &t3) + &t4
        };
        Invariants { b2, b4, b6, b8, c4, c6, discriminant }
    }

    /// `c4^3 / discriminant`.
    pub fn j_invariant(&self) -> FieldElement {
        let inv = self.invariants();
        inv.c4.pow(3).div(&inv.discriminant).expect("nonsingular model")
    }
}

/// j-invariant of a model; the model type already guarantees nonsingularity.
pub fn j_invariant(curve: &CurveModel) -> Result<FieldElement, CurveError> {
    Ok(curve.j_invariant())
}

impl PartialOrd for CurveModel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CurveModel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Debug for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.coeffs;
        write!(f, "[{a1}, {a2}, {a3}, {a4}, {a6}]")
    }
}

/// One `F_q`-isomorphism class with its invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    pub model: CurveModel,
    pub j: FieldElement,
    pub order: u128,
    pub trace: i128,
}

impl CurveClass {
    pub fn from_model(model: CurveModel) -> Result<CurveClass, CurveError> {
        let order = count_points(&model)?;
        Ok(CurveClass::with_order(model, order))
    }

    pub(crate) fn with_order(model: CurveModel, order: u128) -> CurveClass {
        let q = model.field().order();
        let trace = q as i128 + 1 - order as i128;
        debug_assert!(trace.unsigned_abs() * trace.unsigned_abs() <= 4 * q);
        CurveClass { j: model.j_invariant(), model, order, trace }
    }
}

impl PartialOrd for CurveClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by j, then by model coefficients.
impl Ord for CurveClass {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.j, &self.model).cmp(&(&other.j, &other.model))
    }
}

/// Supersingular iff `p` divides the trace.
pub fn is_supersingular(class: &CurveClass) -> bool {
    class.trace.rem_euclid(class.model.field().characteristic() as i128) == 0
}

#[cfg(test)]
mod tests;
