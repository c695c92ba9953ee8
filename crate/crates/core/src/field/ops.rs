use std::fmt::Debug;

use super::{Field, FieldElement};

/// Arithmetic interface shared by the general and the table-driven backends.
///
/// Every backend enumerates elements in the same canonical order, so
/// `elem_at`/`index` agree with [`FieldElement::from_index`].
pub trait FieldOps: Sync + Send {
    type Elem: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn field(&self) -> &Field;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn elem_at(&self, index: u128) -> Self::Elem;
    fn index(&self, x: &Self::Elem) -> u128;
    fn lift(&self, x: &FieldElement) -> Self::Elem;
    fn to_element(&self, x: &Self::Elem) -> FieldElement;
    /// Quadratic character (odd characteristic), `0` at zero.
    fn legendre(&self, x: &Self::Elem) -> i8;
    /// Absolute trace parity in characteristic 2.
    fn trace_bit(&self, x: &Self::Elem) -> u8;

    fn order(&self) -> u128 {
        super::FieldDescriptor::order(self.field())
    }

    fn characteristic(&self) -> u64 {
        super::FieldDescriptor::characteristic(self.field())
    }

    fn of_int(&self, n: i128) -> Self::Elem {
        self.lift(&FieldElement::from_int(self.field(), n))
    }

    fn square(&self, x: &Self::Elem) -> Self::Elem {
        self.mul(x, x)
    }

    fn pow(&self, x: &Self::Elem, mut exp: u128) -> Self::Elem {
        let mut acc = self.one();
        let mut base = x.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Evaluates a polynomial given constant term first.
    fn eval(&self, poly: &[Self::Elem], x: &Self::Elem) -> Self::Elem {
        poly.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// Every element exactly once as `i` ranges over `0..q`, in an order
    /// chosen by the backend (the canonical order unless overridden).
    fn raw_element(&self, i: u128) -> Self::Elem {
        self.elem_at(i)
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_> {
        Box::new((0..self.order()).map(move |i| self.elem_at(i)))
    }
}

impl FieldOps for Field {
    type Elem = FieldElement;

    fn field(&self) -> &Field {
        self
    }
    fn zero(&self) -> FieldElement {
        FieldElement::zero(self)
    }
    fn one(&self) -> FieldElement {
        FieldElement::one(self)
    }
    fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        x.add(y)
    }
    fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        x.sub(y)
    }
    fn neg(&self, x: &FieldElement) -> FieldElement {
        x.neg()
    }
    fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        x.mul(y)
    }
    fn inv(&self, x: &FieldElement) -> Option<FieldElement> {
        x.inv()
    }
    fn is_zero(&self, x: &FieldElement) -> bool {
        x.is_zero()
    }
    fn elem_at(&self, index: u128) -> FieldElement {
        FieldElement::from_index(self, index)
    }
    fn index(&self, x: &FieldElement) -> u128 {
        x.index()
    }
    fn lift(&self, x: &FieldElement) -> FieldElement {
        x.clone()
    }
    fn to_element(&self, x: &FieldElement) -> FieldElement {
        x.clone()
    }
    fn legendre(&self, x: &FieldElement) -> i8 {
        x.legendre()
    }
    fn trace_bit(&self, x: &FieldElement) -> u8 {
        (x.absolute_trace() & 1) as u8
    }
    fn pow(&self, x: &FieldElement, exp: u128) -> FieldElement {
        x.pow(exp)
    }
}
