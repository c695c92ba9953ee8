use std::path::PathBuf;

use super::build::roots_in_set;
use super::*;
use crate::curves::enumerate_set;
use crate::field::{make_field, TableField};

fn store() -> ModpolyStore {
    ModpolyStore::new(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/modpoly"))
}

fn side(q: (u64, u32), order: u128) -> Vec<crate::curves::CurveClass> {
    let f = make_field(q.0, q.1).unwrap();
    enumerate_set(&f, order).unwrap().classes
}

fn ints(f: &Field, v: &[i128]) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> = v.iter().map(|&x| FieldElement::from_int(f, x)).collect();
    out.sort();
    out
}

#[test]
fn load_tables() {
    let s = store();
    let phi2 = s.get(2).unwrap();
    assert_eq!(phi2.coeffs.len(), 4);
    assert_eq!(phi2.coeffs[0][0], "-157464000000000");
    assert_eq!(phi2.coeffs[1][2], "1488");
    assert_eq!(phi2.coeffs[3][0], "1");
    assert_eq!(phi2.coeffs[0][3], "1");
    let phi3 = s.get(3).unwrap();
    assert_eq!(phi3.coeffs.len(), 5);
    assert_eq!(phi3.coeffs[4][0], "1");
    for ell in MODPOLY_DEGREES {
        let m = s.get(ell).unwrap();
        for i in 0..m.coeffs.len() {
            for j in 0..m.coeffs.len() {
                assert_eq!(m.coeffs[i][j], m.coeffs[j][i]);
            }
        }
    }
}

#[test]
fn load_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(load_modpoly(2, dir.path()), Err(GraphError::MissingFile(_))));
    assert_eq!(load_modpoly(23, dir.path()), Err(GraphError::UnknownDegree(23)));
    std::fs::write(dir.path().join("phi_2.txt"), "# header\n3 0 1\n2 x 5\n").unwrap();
    assert!(matches!(load_modpoly(2, dir.path()), Err(GraphError::MalformedLine { line: 3, .. })));
    std::fs::write(dir.path().join("phi_2.txt"), "0 1 5\n").unwrap();
    assert!(matches!(load_modpoly(2, dir.path()), Err(GraphError::MalformedLine { line: 1, .. })));
    std::fs::write(dir.path().join("phi_2.txt"), "2 2 -1\n").unwrap();
    assert_eq!(load_modpoly(2, dir.path()), Err(GraphError::NonMonic(2)));
}

#[test]
fn triple_root_at_zero_mod7() {
    let f = make_field(7, 1).unwrap();
    let vs = ints(&f, &[0, 2]);
    let m = edge_multiplicities(&vs[0], 2, &f, &vs, &store()).unwrap();
    assert_eq!(m.into_iter().map(|(k, v)| (k.index(), v)).collect::<Vec<_>>(), vec![(2, 3)]);
    assert_eq!(edge_multiplicities(&vs[0], 7, &f, &vs, &store()), Err(GraphError::CharacteristicDegree(7)));
}

#[test]
fn fixture_587_adjacency() {
    let f = make_field(587, 1).unwrap();
    let vs = ints(&f, &[22, 203, 279, 354, 415, 427, 477, 576]);
    let j = FieldElement::from_int(&f, 415);
    let s = store();
    let idx = |m: std::collections::BTreeMap<FieldElement, u32>| m.into_iter().map(|(k, v)| (k.index(), v)).collect::<Vec<_>>();
    assert_eq!(idx(edge_multiplicities(&j, 5, &f, &vs, &s).unwrap()), vec![(22, 1), (279, 1)]);
    assert_eq!(idx(edge_multiplicities(&j, 7, &f, &vs, &s).unwrap()), vec![(203, 1), (354, 1)]);
}

/// Cycle lengths of the color-`l` subgraph, which must be 2-regular.
fn cycle_lengths(g: &IsogenyGraph, ell: u64) -> Vec<usize> {
    let n = g.vertices.len();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|u| (0..n).filter(|&v| g.multiplicity(u, v, ell) > 0).collect()).collect();
    assert!(nbrs.iter().all(|x| x.len() == 2), "color {ell} not 2-regular");
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let (mut prev, mut cur, mut len) = (usize::MAX, s, 0);
        while !seen[cur] {
            seen[cur] = true;
            len += 1;
            let next = if nbrs[cur][0] != prev { nbrs[cur][0] } else { nbrs[cur][1] };
            prev = cur;
            cur = next;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

#[test]
fn fixture_625_587_graphs() {
    let s = store();
    let g2 = build_graph(&side((587, 1), 625), &[5, 7, 11], &s).unwrap();
    assert_eq!(g2.vertices.len(), 8);
    assert_eq!(cycle_lengths(&g2, 5), vec![4, 4]);
    assert_eq!(cycle_lengths(&g2, 7), vec![8]);
    for u in 0..8 {
        let partners: Vec<usize> = (0..8).filter(|&v| g2.multiplicity(u, v, 11) > 0).collect();
        assert_eq!(partners.len(), 1);
        assert_ne!(partners[0], u);
        assert_eq!(g2.multiplicity(u, partners[0], 11), 1);
    }

    let b = [2, 3, 5, 7, 11];
    let g1 = build_graph(&side((5, 4), 587), &b, &s).unwrap();
    let g2 = build_graph(&side((587, 1), 625), &b, &s).unwrap();
    let map = graphs_isomorphic(&g1, &g2).unwrap().expect("isomorphic");
    for (&(u, v, l), &m) in &g1.edges {
        assert_eq!(g2.multiplicity(map[u], map[v], l), m);
    }
    let (iota, n) = frobenius_cycles(&g1).unwrap();
    assert_eq!(iota * n, 8);
    assert_eq!(4 % iota, 0);
}

#[test]
fn fixture_1021_1069_triple_edges() {
    let g = build_graph(&side((1021, 1), 1069), &[3, 5], &store()).unwrap();
    assert_eq!(g.vertices.len(), 13);
    let f = &g.field;
    let zero = g.index_of(&FieldElement::zero(f)).unwrap();
    for target in [89, 277] {
        let v = g.index_of(&FieldElement::from_int(f, target)).unwrap();
        assert!(g.degrees.iter().any(|&l| g.multiplicity(zero, v, l) == 3), "0 -> {target}");
    }
}

#[test]
fn small_pairs() {
    let s = store();
    // (4, 7): F_4 side is supersingular
    let ss = side((2, 2), 7);
    assert_eq!(build_graph(&ss, &[2], &s), Err(GraphError::Supersingular));
    let g1 = build_supersingular_graph(&ss, &[2], &s).unwrap();
    let g2 = build_graph(&side((7, 1), 4), &[2], &s).unwrap();
    assert!(g1.supersingular);
    assert_eq!(g1.labels, vec!["0_A", "0_B"]);
    assert_eq!(g1.frobenius, vec![1, 0]);
    assert_eq!(build_supersingular_graph(&ss, &[3], &s), Err(GraphError::SupersingularDegree(3)));
    assert_eq!(graphs_isomorphic(&g1, &g2).unwrap(), None);
    assert_eq!(g2.multiplicity(0, 1, 2), 3);

    // (2, 4): one vertex j = 1 on each side
    let a = build_graph(&side((2, 1), 4), &[2], &s).unwrap();
    let b = build_graph(&side((2, 2), 2), &[2], &s).unwrap();
    assert_eq!(a.vertices.len(), 1);
    assert!(a.vertices[0].is_one());
    assert_eq!(frobenius_cycles(&a).unwrap(), (1, 1));
    assert_eq!(frobenius_cycles(&b).unwrap(), (1, 1));
}

#[test]
fn fixture_22801_fixed_by_frobenius() {
    let g = build_graph(&side((151, 2), 22501), &[2], &store()).unwrap();
    assert_eq!(g.vertices.len(), 5);
    assert_eq!(frobenius_edges(&g.vertices, &g.field).unwrap(), (0..5).collect::<Vec<_>>());
    assert_eq!(frobenius_cycles(&g).unwrap(), (1, 5));
}

#[test]
fn graph_isomorphic_to_itself() {
    let g = build_graph(&side((1021, 1), 1069), &[2, 3, 5], &store()).unwrap();
    assert!(graphs_isomorphic(&g, &g).unwrap().is_some());
    let h = build_graph(&side((1021, 1), 1069), &[3, 5], &store()).unwrap();
    assert!(matches!(graphs_isomorphic(&g, &h), Err(GraphError::DegreeSetMismatch(..))));
}

#[test]
fn characteristic_edges_follow_kronecker_congruence() {
    let s = store();
    for (p, a) in [(2, 2), (2, 3), (3, 2), (5, 2), (7, 2)] {
        let f = make_field(p, a).unwrap();
        let t = TableField::get(&f).unwrap();
        let all: Vec<FieldElement> = (0..f.order()).map(|i| FieldElement::from_index(&f, i)).collect();
        let edges = characteristic_edges(&all, &f).unwrap();
        let phi = s.reduced(p, p).unwrap();
        for (u, j) in all.iter().enumerate() {
            let fwd = j.frobenius();
            let back = j.inverse_frobenius();
            let mut want = vec![(fwd.clone(), 1u32), (back.clone(), p as u32)];
            if fwd == back {
                want = vec![(fwd.clone(), p as u32 + 1)];
            }
            want.sort();
            assert_eq!(roots_in_set(&*t, &phi, j, &all).into_iter().collect::<Vec<_>>(), want, "p={p} j={j}");
            let mut got: Vec<(usize, u32)> = edges.range((u, 0)..(u + 1, 0)).map(|(&(_, v), &m)| (v, m)).collect();
            got.sort();
            let mut expect = vec![(fwd.index() as usize, 1), (back.index() as usize, 1)];
            if fwd == back {
                expect = vec![(fwd.index() as usize, 2)];
            }
            expect.sort();
            assert_eq!(got, expect);
        }
    }
}

#[test]
fn class_numbers() {
    assert_eq!(class_number(-3).unwrap(), 1);
    assert_eq!(class_number(-4).unwrap(), 1);
    assert_eq!(class_number(-979).unwrap(), 8);
    assert_eq!(reduced_forms(-75).unwrap(), vec![(1, 1, 19), (3, 3, 7)]);
    assert_eq!(class_number(-1875).unwrap() + 3, 13);
    assert_eq!(kronecker_class_number(-1875).unwrap(), 13);
    assert_eq!(kronecker_class_number(-979).unwrap(), 8);
    assert_eq!(kronecker_class_number(-3).unwrap(), 1);
    assert_eq!(class_number(-5), Err(GraphError::BadDiscriminant(-5)));
    assert_eq!(class_number(8), Err(GraphError::BadDiscriminant(8)));
    for (d, h) in [(-7, 1), (-8, 1), (-11, 1), (-15, 2), (-20, 2), (-23, 3), (-47, 5), (-163, 1), (-71, 7)] {
        assert_eq!(class_number(d).unwrap(), h, "d={d}");
    }
    for (a, b, c) in reduced_forms(-5000 * 4 + 1).unwrap() {
        assert!(b.abs() <= a && a <= c);
        if b.abs() == a || a == c {
            assert!(b >= 0);
        }
    }
}

#[test]
fn dot_output() {
    let f = make_field(2, 1).unwrap();
    let g = IsogenyGraph {
        field: f.clone(),
        vertices: vec![FieldElement::one(&f)],
        labels: vec!["1".into()],
        frobenius: vec![0],
        degrees: vec![2],
        edges: [((0, 0, 2), 1)].into_iter().collect(),
        side: 0,
        supersingular: false,
    };
    assert_eq!(to_dot(&g), "digraph G {\n  v0 [label=\"1\"];\n  v0 -> v0 [color=black, label=\"2\"];\n}\n");

    let g = build_graph(&side((7, 1), 4), &[2], &store()).unwrap();
    let dot = to_dot(&g);
    assert_eq!(dot.matches("v0 -> v1 [color=black, label=\"2\", dir=none]").count(), 1);
    assert_eq!(dot.matches("v0 -> v1 [color=black, label=\"2\"];").count(), 2);
    assert_eq!(dot, to_dot(&g));
}
