use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{Field, FieldElement, FieldError, FieldOps};
use crate::arith;

/// Largest field order for which log tables are built.
pub const TABLE_LIMIT: u128 = 1 << 22;

/// Log/Zech-log backend for small fields.
///
/// An element is a `u32` code: `0` is zero and `k + 1` stands for `g^k`,
/// where `g` is the smallest primitive element in the canonical order.
pub struct TableField {
    field: Field,
    /// `q - 1`
    n: u32,
    /// canonical index of `g^k`
    exp: Vec<u32>,
    /// discrete log of the element with a given canonical index
    log: Vec<u32>,
    /// code of `1 + g^k`
    zech: Vec<u32>,
    neg_one: u32,
    trace_mask: u32,
}

type Tables = Mutex<HashMap<(u64, u32), Arc<TableField>>>;
static TABLES: OnceLock<Tables> = OnceLock::new();

impl TableField {
    /// Table backend for `field`, built once per process.
    pub fn get(field: &Field) -> Result<Arc<TableField>, FieldError> {
        if field.order() > TABLE_LIMIT {
            return Err(FieldError::FieldTooLarge { order: field.order(), limit: TABLE_LIMIT });
        }
        let key = (field.characteristic(), field.degree());
        let cache = TABLES.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let built = Arc::new(Self::build(field));
        Ok(cache.lock().unwrap().entry(key).or_insert(built).clone())
    }

    fn build(field: &Field) -> TableField {
        let q = field.order() as u32;
        let n = q - 1;
        let g = primitive_element(field);
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![0u32; q as usize];
        let mut cur = FieldElement::one(field);
        for k in 0..n {
            let idx = cur.index() as u32;
            exp.push(idx);
            log[idx as usize] = k;
            cur = cur.mul(&g);
        }
        let p = field.characteristic() as u32;
        let lead = (field.order() / p as u128) as u32;
        let zech = exp
            .iter()
            .map(|&idx| {
                let c0 = idx / lead;
                let shifted = idx - c0 * lead + ((c0 + 1) % p) * lead;
                if shifted == 0 {
                    0
                } else {
                    log[shifted as usize] + 1
                }
            })
            .collect();
        let neg_one = if p == 2 { 1 } else { n / 2 + 1 };
        let mut trace_mask = 0u32;
        if p == 2 {
            let a = field.degree();
            for i in 0..a {
                let mut c = vec![0u64; a as usize];
                c[i as usize] = 1;
                if FieldElement::from_coeffs(field, &c).absolute_trace() == 1 {
                    trace_mask |= 1 << (a - 1 - i);
                }
            }
        }
        TableField { field: field.clone(), n, exp, log, zech, neg_one, trace_mask }
    }

    #[inline]
    fn add_logs(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    /// Discrete log of a nonzero code.
    #[inline]
    pub fn log_of(&self, code: u32) -> Option<u32> {
        code.checked_sub(1)
    }

    /// Code of `g^k`.
    #[inline]
    pub fn code_of_power(&self, k: u64) -> u32 {
        (k % self.n as u64) as u32 + 1
    }

    /// `q - 1`.
    pub fn unit_order(&self) -> u32 {
        self.n
    }
}

fn primitive_element(field: &Field) -> FieldElement {
    let n = field.order() - 1;
    let primes: Vec<u64> = arith::factor(n as u64).into_iter().map(|(r, _)| r).collect();
    (1..field.order())
        .map(|i| FieldElement::from_index(field, i))
        .find(|g| primes.iter().all(|&r| !g.pow(n / r as u128).is_one()))
        .expect("multiplicative group is cyclic")
}

impl FieldOps for TableField {
    type Elem = u32;

    fn field(&self) -> &Field {
        &self.field
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn add(&self, x: &u32, y: &u32) -> u32 {
        let (x, y) = (*x, *y);
        if x == 0 {
            return y;
        }
        if y == 0 {
            return x;
        }
        let (lx, ly) = (x - 1, y - 1);
        let d = if ly >= lx { ly - lx } else { ly + self.n - lx };
        let z = self.zech[d as usize];
        if z == 0 {
            0
        } else {
            self.add_logs(lx, z - 1) + 1
        }
    }
    #[inline]
    fn neg(&self, x: &u32) -> u32 {
        if *x == 0 {
            0
        } else {
            self.mul(x, &self.neg_one)
        }
    }
    #[inline]
    fn sub(&self, x: &u32, y: &u32) -> u32 {
        self.add(x, &self.neg(y))
    }
    #[inline]
    fn mul(&self, x: &u32, y: &u32) -> u32 {
        if *x == 0 || *y == 0 {
            0
        } else {
            self.add_logs(x - 1, y - 1) + 1
        }
    }
    #[inline]
    fn inv(&self, x: &u32) -> Option<u32> {
        match *x {
            0 => None,
            1 => Some(1),
            c => Some(self.n - (c - 1) + 1),
        }
    }
    #[inline]
    fn is_zero(&self, x: &u32) -> bool {
        *x == 0
    }
    #[inline]
    fn elem_at(&self, index: u128) -> u32 {
        if index == 0 {
            0
        } else {
            self.log[index as usize] + 1
        }
    }
    #[inline]
    fn index(&self, x: &u32) -> u128 {
        if *x == 0 {
            0
        } else {
            self.exp[(*x - 1) as usize] as u128
        }
    }
    fn lift(&self, x: &FieldElement) -> u32 {
        assert!(**x.field() == *self.field, "operands belong to different fields");
        self.elem_at(x.index())
    }
    fn to_element(&self, x: &u32) -> FieldElement {
        FieldElement::from_index(&self.field, self.index(x))
    }
    #[inline]
    fn legendre(&self, x: &u32) -> i8 {
        match *x {
            0 => 0,
            _ if self.field.characteristic() == 2 => 1,
            c if (c - 1) % 2 == 0 => 1,
            _ => -1,
        }
    }
    #[inline]
    fn trace_bit(&self, x: &u32) -> u8 {
        ((self.index(x) as u32 & self.trace_mask).count_ones() & 1) as u8
    }
    #[inline]
    fn raw_element(&self, i: u128) -> u32 {
        i as u32
    }
    fn pow(&self, x: &u32, exp: u128) -> u32 {
        if *x == 0 {
            return if exp == 0 { 1 } else { 0 };
        }
        let e = (exp % self.n as u128) as u64;
        self.code_of_power((x - 1) as u64 * e)
    }
}
