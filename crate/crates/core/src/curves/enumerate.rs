use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::count::{Counter, COUNT_LIMIT};
use super::twists::{curves_with_j, is_generic_j, quadratic_twist, standard_model};
use super::{CurveClass, CurveError};
use crate::pairs::{waterhouse_status, PrimePower, Status};
use crate::field::{Field, FieldElement, FieldOps, TableField, TABLE_LIMIT};

/// Largest order of a characteristic-2 or -3 field whose j = 0 classes are
/// enumerated exactly.
pub const SUPERSINGULAR_LIMIT: u128 = TABLE_LIMIT;

/// The curve classes of one field with a fixed number of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSet {
    pub field: Field,
    pub order: u128,
    pub trace: i128,
    /// Canonically sorted; empty when `complete` is false.
    pub classes: Vec<CurveClass>,
    /// False only for a nonempty supersingular set in characteristic 2 or 3
    /// beyond [`SUPERSINGULAR_LIMIT`]: its j-set is `{0}` but its classes
    /// are not listed.
    pub complete: bool,
}

impl CurveSet {
    /// Distinct j-invariants in canonical order.
    pub fn js(&self) -> Vec<FieldElement> {
        if !self.complete {
            return vec![FieldElement::zero(&self.field)];
        }
        let mut js: Vec<FieldElement> = self.classes.iter().map(|c| c.j.clone()).collect();
        js.dedup();
        js
    }
}

/// Every isomorphism class over one field, sorted canonically.
#[derive(Debug)]
pub struct FieldClasses {
    pub field: Field,
    pub classes: Vec<CurveClass>,
    /// Whether the j = 0 classes of characteristic 2 or 3 are included.
    pub supersingular_complete: bool,
}

type Slot = Arc<Mutex<Option<Arc<FieldClasses>>>>;
type Catalog = Mutex<HashMap<(u64, u32), Slot>>;
static CATALOG: OnceLock<Catalog> = OnceLock::new();

/// All classes over `field`, computed once per process.
pub fn field_classes(field: &Field) -> Result<Arc<FieldClasses>, CurveError> {
    let q = field.order();
    if q > COUNT_LIMIT {
        return Err(CurveError::FieldTooLarge { order: q, limit: COUNT_LIMIT });
    }
    let key = (field.characteristic(), field.degree());
    // one slot per field: concurrent callers wait for a single build
    let slot = CATALOG.get_or_init(Default::default).lock().unwrap().entry(key).or_default().clone();
    let mut entry = slot.lock().unwrap();
    if let Some(c) = entry.as_ref() {
        return Ok(c.clone());
    }
    let built = Arc::new(if q <= TABLE_LIMIT {
        let table = TableField::get(field)?;
        build_classes(&*table)?
    } else {
        build_classes(field)?
    });
    *entry = Some(built.clone());
    Ok(built)
}

fn build_classes<F: FieldOps>(ops: &F) -> Result<FieldClasses, CurveError> {
    let field = ops.field().clone();
    let q = field.order();
    let counter = Counter::new(ops);
    let small_char = field.characteristic() <= 3;
    let supersingular_complete = !small_char || q <= SUPERSINGULAR_LIMIT;
    let per_j: Vec<Result<Vec<CurveClass>, CurveError>> = (0..q)
        .into_par_iter()
        .map(|idx| {
            let j = FieldElement::from_index(&field, idx);
            if is_generic_j(&field, &j) {
                let base = standard_model(&field, &j)?;
                let t = counter.trace(&base);
                let twist = quadratic_twist(&base);
                let order = |t: i128| (q as i128 + 1 - t) as u128;
                let mut v = vec![CurveClass::with_order(base, order(t)), CurveClass::with_order(twist, order(-t))];
                v.sort();
                Ok(v)
            } else if small_char && !supersingular_complete {
                Ok(Vec::new())
            } else {
                curves_with_j(&field, &j)?
                    .into_iter()
                    .map(|m| {
                        let n = counter.count(&m);
                        Ok(CurveClass::with_order(m, n))
                    })
                    .collect()
            }
        })
        .collect();
    let mut classes = Vec::new();
    for r in per_j {
        classes.extend(r?);
    }
    Ok(FieldClasses { field, classes, supersingular_complete })
}

/// All classes over `field` with exactly `target_order` points.
pub fn enumerate_set(field: &Field, target_order: u128) -> Result<CurveSet, CurveError> {
    let q = field.order();
    let trace = q as i128 + 1 - target_order as i128;
    if trace.unsigned_abs() * trace.unsigned_abs() > 4 * q {
        return Err(CurveError::TargetOutOfHasseWindow { q, order: target_order });
    }
    let all = field_classes(field)?;
    let p = field.characteristic() as i128;
    let complete = all.supersingular_complete || p > 3 || trace % p != 0;
    let classes: Vec<CurveClass> = all.classes.iter().filter(|c| c.trace == trace).cloned().collect();
    if !complete {
        // j = 0 is the only supersingular j-invariant in characteristic 2 and 3
        let pp = PrimePower { q: q as u64, p: field.characteristic(), a: field.degree() };
        let realized = waterhouse_status(pp, trace).is_ok_and(|s| s != Status::Empty);
        return Ok(CurveSet { field: field.clone(), order: target_order, trace, classes: Vec::new(), complete: !realized });
    }
    Ok(CurveSet { field: field.clone(), order: target_order, trace, classes, complete: true })
}
