//! Elliptic curves over finite fields with the point count of a neighbouring
//! field: Hasse pairs of prime powers, their curve sets, the isogeny graphs on
//! both sides and the density questions around them.

pub mod arith;
pub mod curves;
pub mod density;
pub mod field;
pub mod graph;
pub mod oracle;
pub mod pairs;
pub mod sieve;

pub use curves::{enumerate_set, CurveClass, CurveError, CurveModel, CurveSet};
pub use density::DensityError;
pub use field::{make_field, Field, FieldElement, FieldError};
pub use graph::{graphs_isomorphic, pair_graphs, GraphError, IsogenyGraph, ModpolyStore};
pub use pairs::{classify, enumerate_hasse_pairs, PairError, PairJson, PairRecord, PrimePower, Split, Status, TableCell};
