//! Colored isogeny multigraphs on sets of j-invariants, exact graph
//! isomorphism, Frobenius cycle structure and class numbers of imaginary
//! quadratic orders.

mod build;
mod dot;
mod forms;
mod iso;
mod modpoly;
mod pair;

use std::collections::BTreeMap;
use std::path::PathBuf;

use thiserror::Error;

use crate::curves::CurveError;
use crate::field::{Field, FieldElement, FieldError};
use crate::pairs::PairError;

pub use build::{build_graph, build_supersingular_graph, characteristic_edges, edge_multiplicities, frobenius_cycle_lengths, frobenius_cycles, frobenius_edges};
pub use dot::{color_of, to_dot};
pub use forms::{class_number, kronecker_class_number, reduced_forms, FORMS_LIMIT};
pub use iso::graphs_isomorphic;
pub use pair::{pair_graphs, side_set, DEFAULT_DEGREES};
pub use modpoly::{load_modpoly, ModpolyStore, ModularPolynomial, MODPOLY_DEGREES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("modular polynomial file {0} not found")]
    MissingFile(PathBuf),
    #[error("{path}:{line}: malformed coefficient line")]
    MalformedLine { path: PathBuf, line: usize },
    #[error("Phi_{0} table lacks the monic leading entry")]
    NonMonic(u64),
    #[error("no modular polynomial of degree {0}")]
    UnknownDegree(u64),
    #[error("degree {0} equals the characteristic; use Frobenius edges")]
    CharacteristicDegree(u64),
    #[error("j = {0} maps outside the vertex set under Frobenius")]
    VertexEscapes(String),
    #[error("empty vertex set")]
    EmptySet,
    #[error("vertex set mixes ordinary and supersingular classes")]
    MixedTypes,
    #[error("supersingular vertex set passed to the ordinary graph builder")]
    Supersingular,
    #[error("degree sets differ: {0:?} vs {1:?}")]
    DegreeSetMismatch(Vec<u64>, Vec<u64>),
    #[error("degree {0} is unsupported on supersingular class graphs")]
    SupersingularDegree(u64),
    #[error("Frobenius cycles have unequal lengths {0:?}")]
    UnequalCycles(Vec<usize>),
    #[error("{0} is not a negative discriminant")]
    BadDiscriminant(i128),
    #[error("|discriminant| {0} exceeds the forms limit")]
    DiscriminantTooLarge(i128),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Pair(#[from] PairError),
}

/// Directed multigraph with one color per degree `l`: `edges[(u, v, l)]`
/// is the multiplicity of `j_v` as a root of `Phi_l(j_u, Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsogenyGraph {
    pub field: Field,
    /// j-invariant of each vertex in canonical order; distinct except in
    /// supersingular graphs, whose vertices are isomorphism classes.
    pub vertices: Vec<FieldElement>,
    /// Display label per vertex: the j-invariant, suffixed `_A`, `_B`, ...
    /// when several classes share it.
    pub labels: Vec<String>,
    /// Image of each vertex under the `p`-power Frobenius.
    pub frobenius: Vec<usize>,
    /// Sorted degree set.
    pub degrees: Vec<u64>,
    pub edges: BTreeMap<(usize, usize, u64), u32>,
    /// 1 or 2 when the graph belongs to a side of a pair, else 0.
    pub side: u8,
    pub supersingular: bool,
}

impl IsogenyGraph {
    pub fn with_side(mut self, side: u8) -> IsogenyGraph {
        self.side = side;
        self
    }

    pub fn multiplicity(&self, u: usize, v: usize, ell: u64) -> u32 {
        self.edges.get(&(u, v, ell)).copied().unwrap_or(0)
    }

    /// Total color-`l` multiplicity leaving `u`.
    pub fn out_degree(&self, u: usize, ell: u64) -> u32 {
        self.edges.range((u, 0, 0)..(u + 1, 0, 0)).filter(|((_, _, l), _)| *l == ell).map(|(_, m)| m).sum()
    }

    pub fn index_of(&self, j: &FieldElement) -> Option<usize> {
        self.vertices.binary_search(j).ok()
    }
}

#[cfg(test)]
mod tests;
