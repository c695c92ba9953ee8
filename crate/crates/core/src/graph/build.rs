use std::collections::BTreeMap;

use super::{GraphError, IsogenyGraph, ModpolyStore};
use crate::curves::{is_isomorphic, is_supersingular, CurveClass, CurveModel};
use crate::field::{roots_among, Field, FieldElement, FieldOps, TableField, TABLE_LIMIT};

/// Roots of `Phi_l(j, Y)` inside `vertices` with their multiplicities.
pub fn edge_multiplicities(
    j: &FieldElement,
    ell: u64,
    field: &Field,
    vertices: &[FieldElement],
    store: &ModpolyStore,
) -> Result<BTreeMap<FieldElement, u32>, GraphError> {
    if ell == field.characteristic() {
        return Err(GraphError::CharacteristicDegree(ell));
    }
    let phi = store.reduced(ell, field.characteristic())?;
    Ok(if field.order() <= TABLE_LIMIT {
        let t = TableField::get(field)?;
        roots_in_set(&*t, &phi, j, vertices)
    } else {
        roots_in_set(field, &phi, j, vertices)
    })
}

pub(super) fn roots_in_set<F: FieldOps>(ops: &F, phi: &[Vec<u64>], j: &FieldElement, vertices: &[FieldElement]) -> BTreeMap<FieldElement, u32> {
    let poly = specialize(ops, phi, &ops.lift(j));
    let cands: Vec<F::Elem> = vertices.iter().map(|v| ops.lift(v)).collect();
    roots_among(ops, &poly, &cands).into_iter().map(|(r, m)| (ops.to_element(&r), m)).collect()
}

/// `Phi(j, Y)` as a polynomial in `Y`, constant term first.
fn specialize<F: FieldOps>(ops: &F, phi: &[Vec<u64>], j: &F::Elem) -> Vec<F::Elem> {
    let n = phi.len();
    let mut powers = vec![ops.one()];
    for i in 1..n {
        powers.push(ops.mul(&powers[i - 1], j));
    }
    (0..n)
        .map(|k| {
            (0..n).fold(ops.zero(), |acc, i| {
                ops.add(&acc, &ops.mul(&ops.of_int(phi[i][k] as i128), &powers[i]))
            })
        })
        .collect()
}

/// `j -> j^p` on a Frobenius-stable vertex set, as an index permutation.
pub fn frobenius_edges(vertices: &[FieldElement], field: &Field) -> Result<Vec<usize>, GraphError> {
    if vertices.iter().any(|v| **v.field() != **field) {
        return Err(crate::field::FieldError::FieldMismatch.into());
    }
    vertices
        .iter()
        .map(|j| {
            let image = j.frobenius();
            vertices.binary_search(&image).map_err(|_| GraphError::VertexEscapes(j.to_string()))
        })
        .collect()
}

/// Color-`p` edges in characteristic `p`: the Frobenius isogeny `j -> j^p`
/// and its dual `j^p -> j`, one edge each. The inseparable root of
/// `Phi_p(j, Y) = (j^p - Y)(j^(1/p) - Y)^p mod p` is counted once.
pub fn characteristic_edges(vertices: &[FieldElement], field: &Field) -> Result<BTreeMap<(usize, usize), u32>, GraphError> {
    let fwd = frobenius_edges(vertices, field)?;
    let mut out = BTreeMap::new();
    for (u, &v) in fwd.iter().enumerate() {
        *out.entry((u, v)).or_insert(0) += 1;
        *out.entry((v, u)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Sorted lengths of the cycles of the Frobenius permutation.
pub fn frobenius_cycle_lengths(graph: &IsogenyGraph) -> Result<Vec<usize>, GraphError> {
    let perm = &graph.frobenius;
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        if len > 0 {
            lengths.push(len);
        }
    }
    lengths.sort_unstable();
    Ok(lengths)
}

/// `(l, n)` where the Frobenius permutation consists of `n` cycles of
/// common length `l`.
pub fn frobenius_cycles(graph: &IsogenyGraph) -> Result<(usize, usize), GraphError> {
    let lengths = frobenius_cycle_lengths(graph)?;
    let first = *lengths.first().ok_or(GraphError::EmptySet)?;
    if lengths.iter().any(|&l| l != first) {
        return Err(GraphError::UnequalCycles(lengths));
    }
    Ok((first, lengths.len()))
}

/// Graph on the j-invariants of a set of ordinary classes.
pub fn build_graph(classes: &[CurveClass], degrees: &[u64], store: &ModpolyStore) -> Result<IsogenyGraph, GraphError> {
    let first = classes.first().ok_or(GraphError::EmptySet)?;
    let ss = is_supersingular(first);
    if classes.iter().any(|c| is_supersingular(c) != ss) {
        return Err(GraphError::MixedTypes);
    }
    if ss {
        return Err(GraphError::Supersingular);
    }
    build(classes, degrees, store)
}

/// Graph of an all-supersingular set with one vertex per class and only
/// the own-characteristic color, where Frobenius acts on models.
pub fn build_supersingular_graph(classes: &[CurveClass], degrees: &[u64], _store: &ModpolyStore) -> Result<IsogenyGraph, GraphError> {
    let first = classes.first().ok_or(GraphError::EmptySet)?;
    if classes.iter().any(|c| !is_supersingular(c)) {
        return Err(if is_supersingular(first) { GraphError::MixedTypes } else { GraphError::Supersingular });
    }
    let field = first.model.field().clone();
    let p = field.characteristic();
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    if let Some(&ell) = degrees.iter().find(|&&l| l != p) {
        return Err(GraphError::SupersingularDegree(ell));
    }
    let mut classes = classes.to_vec();
    classes.sort();
    let mut frobenius = Vec::with_capacity(classes.len());
    for c in &classes {
        let conj = CurveModel::new(&field, c.model.coeffs().clone().map(|a| a.frobenius()))?;
        let mut image = None;
        for (v, d) in classes.iter().enumerate() {
            if is_isomorphic(&d.model, &conj)? {
                image = Some(v);
                break;
            }
        }
        frobenius.push(image.ok_or_else(|| GraphError::VertexEscapes(c.model.to_string()))?);
    }
    let mut edges = BTreeMap::new();
    for &ell in &degrees {
        for (u, &v) in frobenius.iter().enumerate() {
            *edges.entry((u, v, ell)).or_insert(0) += 1;
            *edges.entry((v, u, ell)).or_insert(0) += 1;
        }
    }
    let vertices: Vec<FieldElement> = classes.iter().map(|c| c.j.clone()).collect();
    let labels = class_labels(&vertices);
    Ok(IsogenyGraph { field, vertices, labels, frobenius, degrees, edges, side: 0, supersingular: true })
}

/// `j`, or `j_A`, `j_B`, ... when `j` repeats.
fn class_labels(js: &[FieldElement]) -> Vec<String> {
    let mut out = Vec::with_capacity(js.len());
    for (i, j) in js.iter().enumerate() {
        let same = js.iter().filter(|k| *k == j).count();
        if same == 1 {
            out.push(j.to_string());
        } else {
            let rank = js[..i].iter().filter(|k| *k == j).count();
            out.push(format!("{j}_{}", (b'A' + rank as u8) as char));
        }
    }
    out
}

fn build(classes: &[CurveClass], degrees: &[u64], store: &ModpolyStore) -> Result<IsogenyGraph, GraphError> {
    let field = classes[0].model.field().clone();
    let mut vertices: Vec<FieldElement> = classes.iter().map(|c| c.j.clone()).collect();
    vertices.sort();
    vertices.dedup();
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    degrees.dedup();
    let mut edges = BTreeMap::new();
    for &ell in &degrees {
        if ell == field.characteristic() {
            for ((u, v), m) in characteristic_edges(&vertices, &field)? {
                edges.insert((u, v, ell), m);
            }
            continue;
        }
        for (u, j) in vertices.iter().enumerate() {
            for (r, m) in edge_multiplicities(j, ell, &field, &vertices, store)? {
                let v = vertices.binary_search(&r).expect("root taken from the vertex set");
                edges.insert((u, v, ell), m);
            }
        }
    }
    let frobenius = frobenius_edges(&vertices, &field)?;
    let labels = vertices.iter().map(|j| j.to_string()).collect();
    Ok(IsogenyGraph { field, vertices, labels, frobenius, degrees, edges, side: 0, supersingular: false })
}
