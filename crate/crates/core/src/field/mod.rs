//! Exact arithmetic in finite fields `F_{p^a}`.
//!
//! Elements are stored in polynomial basis over a deterministic monic
//! irreducible modulus: the one whose coefficient sequence, read as a base-p
//! integer with the constant term least significant, is smallest. A field of
//! degree one uses the modulus `x` and its elements are plain residues.
//!
//! Two arithmetic backends share the [`FieldOps`] interface: the general
//! [`Field`] handle (any `p < 2^64`, `p^a < 2^128`) and the log-table
//! [`TableField`] used by exhaustive loops on small fields.

mod fp_poly;
mod ops;
mod roots;
mod table;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use smallvec::SmallVec;
use thiserror::Error;

use crate::arith::{self, add_mod, mul_mod, sub_mod};

pub use ops::FieldOps;
pub use roots::{poly_roots, root_multiplicity, roots_among, ROOT_SCAN_LIMIT};
pub use table::{TableField, TABLE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrimeBase(u64),
    #[error("{p}^{a} does not fit in 128 bits")]
    Overflow { p: u64, a: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("linear coefficient is zero; use a square root instead")]
    ZeroLinearCoefficient,
    #[error("operation requires characteristic 2")]
    NotCharacteristicTwo,
    #[error("field of order {order} exceeds the limit {limit}")]
    FieldTooLarge { order: u128, limit: u128 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial degree {0} exceeds 64")]
    DegreeTooLarge(usize),
    #[error("malformed decimal literal {0:?}")]
    MalformedDecimal(String),
}

/// Immutable description of `F_{p^a}`.
pub struct FieldDescriptor {
    p: u64,
    degree: u32,
    order: u128,
    /// Monic modulus, constant term first, length `degree + 1`.
    modulus: Vec<u64>,
    /// `p^{degree-1}`: weight of the constant coefficient in an element index.
    lead_weight: u128,
    non_residue: OnceLock<Option<Vec<u64>>>,
    trace_one: OnceLock<Vec<u64>>,
}

/// Shared handle to a field; cheap to clone.
pub type Field = Arc<FieldDescriptor>;

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDescriptor")
            .field("p", &self.p)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree
    }
}
impl Eq for FieldDescriptor {}

impl Hash for FieldDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.degree.hash(state);
    }
}

static FIELDS: OnceLock<Mutex<HashMap<(u64, u32), Field>>> = OnceLock::new();

/// Builds (or fetches from the process-wide cache) the field `F_{p^a}`.
pub fn make_field(p: u64, a: u32) -> Result<Field, FieldError> {
    if a == 0 {
        return Err(FieldError::ZeroDegree);
    }
    if !arith::is_prime(p) {
        return Err(FieldError::NonPrimeBase(p));
    }
    let order = arith::checked_pow_u128(p as u128, a).ok_or(FieldError::Overflow { p, a })?;
    let cache = FIELDS.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&(p, a)) {
        return Ok(f.clone());
    }
    let modulus = if a == 1 { vec![0, 1] } else { minimal_irreducible(p, a) };
    let field = Arc::new(FieldDescriptor {
        p,
        degree: a,
        order,
        modulus,
        lead_weight: order / p as u128,
        non_residue: OnceLock::new(),
        trace_one: OnceLock::new(),
    });
    Ok(cache.lock().unwrap().entry((p, a)).or_insert(field).clone())
}

/// Smallest monic irreducible of degree `a` in the base-p order.
fn minimal_irreducible(p: u64, a: u32) -> Vec<u64> {
    let a = a as usize;
    let mut low = vec![0u64; a];
    loop {
        let mut f = low.clone();
        f.push(1);
        if f[0] != 0 && fp_poly::is_irreducible(&f, p) {
            return f;
        }
        // increment, constant term least significant
        let mut i = 0;
        loop {
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            i += 1;
            assert!(i < a, "no irreducible polynomial of degree {a} over F_{p}");
        }
    }
}

type Coeffs = SmallVec<[u64; 4]>;

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements `q = p^a`.
    pub fn order(&self) -> u128 {
        self.order
    }

    /// Modulus coefficients, constant term first (monic, length `a + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn mul_coeffs(&self, x: &[u64], y: &[u64]) -> Coeffs {
        let p = self.p;
        let a = self.degree as usize;
        if a == 1 {
            return SmallVec::from_slice(&[mul_mod(x[0], y[0], p)]);
        }
        let mut prod: SmallVec<[u64; 8]> = SmallVec::from_elem(0, 2 * a - 1);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(xi, yj, p), p);
            }
        }
        for k in (a..2 * a - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..a {
                let m = self.modulus[i];
                if m != 0 {
                    prod[k - a + i] = sub_mod(prod[k - a + i], mul_mod(c, m, p), p);
                }
            }
        }
        SmallVec::from_slice(&prod[..a])
    }
}

/// Element of `F_{p^a}` in polynomial basis.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Coeffs,
}

impl FieldElement {
    pub fn zero(field: &Field) -> Self {
        FieldElement { field: field.clone(), coeffs: SmallVec::from_elem(0, field.degree as usize) }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(field: &Field, n: i128) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = n.rem_euclid(field.p as i128) as u64;
        e
    }

    /// Builds an element from coordinates (constant term first); missing
    /// trailing coordinates are zero and every entry is reduced mod `p`.
    pub fn from_coeffs(field: &Field, coeffs: &[u64]) -> Self {
        let mut e = Self::zero(field);
        assert!(coeffs.len() <= field.degree as usize, "too many coordinates");
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c % field.p;
        }
        e
    }

    /// The generator `x` of the polynomial basis (equals `0` for prime fields).
    pub fn generator(field: &Field) -> Self {
        if field.degree == 1 {
            return Self::zero(field);
        }
        Self::from_coeffs(field, &[0, 1])
    }

    /// Element with the given position in the canonical (lexicographic) order.
    pub fn from_index(field: &Field, mut index: u128) -> Self {
        let mut e = Self::zero(field);
        let p = field.p as u128;
        for slot in e.coeffs.iter_mut().rev() {
            *slot = (index % p) as u64;
            index /= p;
        }
        e
    }

    /// Position in the canonical order: coordinates read with the constant
    /// term most significant.
    pub fn index(&self) -> u128 {
        let p = self.field.p as u128;
        self.coeffs.iter().fold(0u128, |acc, &c| acc * p + c as u128)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// `Some(n)` when the element lies in the prime subfield.
    pub fn as_prime_subfield(&self) -> Option<u64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    pub fn same_field(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field
    }

    fn check(&self, other: &FieldElement) {
        assert!(self.same_field(other), "operands belong to different fields");
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check(other);
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&x, &y)| add_mod(x, y, p)).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.check(other);
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&x, &y)| sub_mod(x, y, p)).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check(other);
        FieldElement { field: self.field.clone(), coeffs: self.field.mul_coeffs(&self.coeffs, &other.coeffs) }
    }

    pub fn square(&self) -> FieldElement {
        self.mul(self)
    }

    /// Multiplication by an integer.
    pub fn scale(&self, n: i128) -> FieldElement {
        let p = self.field.p;
        let k = n.rem_euclid(p as i128) as u64;
        let coeffs = self.coeffs.iter().map(|&x| mul_mod(x, k, p)).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, mut exp: u128) -> FieldElement {
        let mut acc = FieldElement::one(&self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        if self.field.degree == 1 {
            let v = arith::inv_mod(self.coeffs[0], self.field.p)?;
            return Some(FieldElement::from_int(&self.field, v as i128));
        }
        Some(self.pow(self.field.order - 2))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        if !self.same_field(other) {
            return Err(FieldError::FieldMismatch);
        }
        let inv = other.inv().ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    /// Absolute Frobenius `x -> x^p`.
    pub fn frobenius(&self) -> FieldElement {
        self.pow(self.field.p as u128)
    }

    /// Inverse Frobenius `x -> x^{p^{a-1}}`.
    pub fn inverse_frobenius(&self) -> FieldElement {
        self.pow(self.field.lead_weight)
    }

    /// Absolute trace down to `F_p`.
    pub fn absolute_trace(&self) -> u64 {
        let mut acc = self.clone();
        let mut sum = self.clone();
        for _ in 1..self.field.degree {
            acc = acc.frobenius();
            sum = sum.add(&acc);
        }
        debug_assert!(sum.as_prime_subfield().is_some());
        sum.coeffs[0]
    }

    /// Quadratic character: `0` at zero, `1` on nonzero squares, `-1` otherwise.
    /// Characteristic 2 has no non-squares.
    pub fn legendre(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        if self.field.p == 2 {
            return 1;
        }
        if self.pow((self.field.order - 1) / 2).is_one() {
            1
        } else {
            -1
        }
    }

    /// Square root with the lexicographically smaller coordinates, if any.
    pub fn sqrt(&self) -> Option<FieldElement> {
        fe_sqrt(self)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coordinates, constant term first.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.field.p, self.field.degree, &self.coeffs[..]).cmp(&(other.field.p, other.field.degree, &other.coeffs[..]))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prime-field elements print as integers; extension elements as a
/// polynomial in the basis generator `g`, highest degree first.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("g")?,
                (1, c) => write!(f, "{c}g")?,
                (i, 1) => write!(f, "g^{i}")?,
                (i, c) => write!(f, "{c}g^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl FieldDescriptor {
    /// Smallest non-residue in the canonical order (odd characteristic only).
    pub(crate) fn non_residue_coeffs(self: &Field) -> Option<Vec<u64>> {
        self.non_residue
            .get_or_init(|| {
                if self.p == 2 {
                    return None;
                }
                let mut idx = 1u128;
                loop {
                    let e = FieldElement::from_index(self, idx);
                    if e.legendre() == -1 {
                        return Some(e.coeffs.to_vec());
                    }
                    idx += 1;
                }
            })
            .clone()
    }

    /// Smallest element of absolute trace one (characteristic 2 only).
    pub(crate) fn trace_one_coeffs(self: &Field) -> Vec<u64> {
        self.trace_one
            .get_or_init(|| {
                let mut idx = 1u128;
                loop {
                    let e = FieldElement::from_index(self, idx);
                    if e.absolute_trace() == 1 {
                        return e.coeffs.to_vec();
                    }
                    idx += 1;
                }
            })
            .clone()
    }
}

/// Smallest quadratic non-residue of an odd-characteristic field.
pub fn smallest_non_residue(field: &Field) -> Option<FieldElement> {
    field.non_residue_coeffs().map(|c| FieldElement::from_coeffs(field, &c))
}

/// Smallest element of absolute trace one in characteristic 2.
pub fn smallest_trace_one(field: &Field) -> Result<FieldElement, FieldError> {
    if field.p != 2 {
        return Err(FieldError::NotCharacteristicTwo);
    }
    Ok(FieldElement::from_coeffs(field, &field.trace_one_coeffs()))
}

/// Arithmetic operations exposed through [`fe_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Eq,
}

/// Second operand of [`fe_arith`]: an element, or an exponent for `Pow`.
#[derive(Debug, Clone)]
pub enum Operand {
    Element(FieldElement),
    Integer(u128),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithValue {
    Element(FieldElement),
    Bool(bool),
}

/// Checked element arithmetic. `Neg` ignores its second operand.
pub fn fe_arith(op: ArithOp, x: &FieldElement, y: &Operand) -> Result<ArithValue, FieldError> {
    let elem = |y: &Operand| -> Result<FieldElement, FieldError> {
        match y {
            Operand::Element(e) if e.same_field(x) => Ok(e.clone()),
            Operand::Element(_) => Err(FieldError::FieldMismatch),
            Operand::Integer(n) => Ok(FieldElement::from_int(x.field(), *n as i128)),
        }
    };
    Ok(match op {
        ArithOp::Add => ArithValue::Element(x.add(&elem(y)?)),
        ArithOp::Sub => ArithValue::Element(x.sub(&elem(y)?)),
        ArithOp::Mul => ArithValue::Element(x.mul(&elem(y)?)),
        ArithOp::Div => ArithValue::Element(x.div(&elem(y)?)?),
        ArithOp::Neg => ArithValue::Element(x.neg()),
        ArithOp::Eq => ArithValue::Bool(*x == elem(y)?),
        ArithOp::Pow => match y {
            Operand::Integer(n) => ArithValue::Element(x.pow(*n)),
            Operand::Element(e) => {
                let n = e.as_prime_subfield().ok_or(FieldError::FieldMismatch)?;
                ArithValue::Element(x.pow(n as u128))
            }
        },
    })
}

/// Square root, choosing the root with lexicographically minimal coordinates.
/// Characteristic 2 always has exactly one root, `x^{q/2}`.
pub fn fe_sqrt(x: &FieldElement) -> Option<FieldElement> {
    let field = x.field();
    if x.is_zero() {
        return Some(x.clone());
    }
    if field.p == 2 {
        return Some(x.pow(field.order / 2));
    }
    if x.legendre() != 1 {
        return None;
    }
    let q = field.order;
    let mut s = 0u32;
    let mut m = q - 1;
    while m % 2 == 0 {
        m /= 2;
        s += 1;
    }
    let z = smallest_non_residue(field).expect("odd characteristic");
    let mut c = z.pow(m);
    let mut t = x.pow(m);
    let mut r = x.pow(m.div_ceil(2));
    let mut big_m = s;
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = tt.square();
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(big_m - i - 1) {
            b = b.square();
        }
        big_m = i;
        c = b.square();
        t = t.mul(&c);
        r = r.mul(&b);
    }
    let neg = r.neg();
    Some(if neg < r { neg } else { r })
}

/// All `y` with `y^2 + a*y = b` in characteristic 2, sorted.
pub fn solve_artin_schreier(a: &FieldElement, b: &FieldElement) -> Result<Vec<FieldElement>, FieldError> {
    let field = a.field();
    if field.p != 2 {
        return Err(FieldError::NotCharacteristicTwo);
    }
    if !a.same_field(b) {
        return Err(FieldError::FieldMismatch);
    }
    if a.is_zero() {
        return Err(FieldError::ZeroLinearCoefficient);
    }
    // y = a z turns the equation into z^2 + z = c
    let c = b.div(&a.square())?;
    if c.absolute_trace() == 1 {
        return Ok(Vec::new());
    }
    let z = half_trace(&c);
    debug_assert_eq!(z.square().add(&z), c);
    let y0 = a.mul(&z);
    let y1 = y0.add(a);
    let mut out = vec![y0, y1];
    out.sort();
    Ok(out)
}

/// A solution of `z^2 + z = c` for `c` of trace zero.
fn half_trace(c: &FieldElement) -> FieldElement {
    let field = c.field();
    let n = field.degree;
    if n % 2 == 1 {
        let mut acc = c.clone();
        let mut term = c.clone();
        for _ in 0..(n - 1) / 2 {
            term = term.square().square();
            acc = acc.add(&term);
        }
        return acc;
    }
    // z = sum_{i<n} (sum_{j>i} d^{2^j}) c^{2^i} with Tr(d) = 1
    let d = smallest_trace_one(field).expect("characteristic 2");
    let mut d_pows = Vec::with_capacity(n as usize);
    let mut cur = d;
    for _ in 0..n {
        d_pows.push(cur.clone());
        cur = cur.square();
    }
    let mut z = FieldElement::zero(field);
    let mut c_pow = c.clone();
    for i in 0..n as usize {
        let mut inner = FieldElement::zero(field);
        for dp in &d_pows[i + 1..] {
            inner = inner.add(dp);
        }
        z = z.add(&inner.mul(&c_pow));
        c_pow = c_pow.square();
    }
    z
}

/// Reduces a signed decimal literal modulo `p` digit by digit.
pub fn decimal_mod(s: &str, p: u64) -> Result<u64, FieldError> {
    let malformed = || FieldError::MalformedDecimal(s.to_string());
    let (neg, digits) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    if digits.is_empty() || p == 0 {
        return Err(malformed());
    }
    let mut acc = 0u64;
    for ch in digits.bytes() {
        if !ch.is_ascii_digit() {
            return Err(malformed());
        }
        acc = add_mod(mul_mod(acc, 10 % p, p), (ch - b'0') as u64 % p, p);
    }
    Ok(if neg && acc != 0 { p - acc } else { acc })
}
