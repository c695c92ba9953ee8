use super::{build_graph, build_supersingular_graph, GraphError, IsogenyGraph, ModpolyStore};
use crate::curves::{enumerate_set, CurveSet};
use crate::field::make_field;
use crate::pairs::PairRecord;

/// Degree set used when none is given.
pub const DEFAULT_DEGREES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// The set `E_i` of curves over `F_{q_i}` with `q_j` points.
pub fn side_set(record: &PairRecord, side: u8) -> Result<CurveSet, GraphError> {
    let (q, _, _) = record.side(side);
    let other = if side == 1 { record.q2.q } else { record.q1.q };
    let field = make_field(q.p, q.a)?;
    Ok(enumerate_set(&field, other as u128)?)
}

/// Graphs of both sides of a pair. Supersingular sides are built only when
/// `allow_supersingular` is set.
pub fn pair_graphs(
    record: &PairRecord,
    degrees: &[u64],
    store: &ModpolyStore,
    allow_supersingular: bool,
) -> Result<[IsogenyGraph; 2], GraphError> {
    let build = |side: u8| -> Result<IsogenyGraph, GraphError> {
        let set = side_set(record, side)?;
        if !set.complete {
            return Err(GraphError::Supersingular);
        }
        let g = match build_graph(&set.classes, degrees, store) {
            Err(GraphError::Supersingular) if allow_supersingular => build_supersingular_graph(&set.classes, degrees, store)?,
            other => other?,
        };
        Ok(g.with_side(side))
    };
    Ok([build(1)?, build(2)?])
}
