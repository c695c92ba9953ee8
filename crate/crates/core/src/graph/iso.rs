//! Exact colored-multigraph isomorphism by partition refinement with
//! individualization and backtracking.

use std::collections::BTreeMap;

use super::{GraphError, IsogenyGraph};

/// Both graphs as one vertex set `0..n1+n2`, so that refined colors are
/// directly comparable between the halves.
struct Union {
    n1: usize,
    /// `(neighbor, color index, multiplicity)`
    out: Vec<Vec<(usize, usize, u32)>>,
    inc: Vec<Vec<(usize, usize, u32)>>,
}

impl Union {
    fn new(g1: &IsogenyGraph, g2: &IsogenyGraph) -> Union {
        let n1 = g1.vertices.len();
        let n = n1 + g2.vertices.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (g, shift) in [(g1, 0), (g2, n1)] {
            for (&(u, v, ell), &m) in &g.edges {
                let c = g.degrees.binary_search(&ell).expect("edge color in degree set");
                out[u + shift].push((v + shift, c, m));
                inc[v + shift].push((u + shift, c, m));
            }
        }
        Union { n1, out, inc }
    }

    /// Refines `colors` to the coarsest equitable partition below it.
    /// New colors are ranks of sorted signatures, hence canonical.
    fn refine(&self, colors: &mut Vec<usize>) {
        let mut classes = count_distinct(colors);
        loop {
            let sigs: Vec<_> = (0..colors.len())
                .map(|v| {
                    let mut o: Vec<_> = self.out[v].iter().map(|&(w, c, m)| (c, colors[w], m)).collect();
                    let mut i: Vec<_> = self.inc[v].iter().map(|&(w, c, m)| (c, colors[w], m)).collect();
                    o.sort_unstable();
                    i.sort_unstable();
                    (colors[v], o, i)
                })
                .collect();
            let ranks: BTreeMap<_, usize> = {
                let mut s: Vec<_> = sigs.iter().collect();
                s.sort();
                s.dedup();
                s.into_iter().enumerate().map(|(k, sig)| (sig, k)).collect()
            };
            let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
            let n = ranks.len();
            *colors = next;
            if n == classes {
                return;
            }
            classes = n;
        }
    }

    /// Whether every color occurs equally often in both halves.
    fn balanced(&self, colors: &[usize]) -> bool {
        let mut diff: BTreeMap<usize, i64> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            *diff.entry(c).or_default() += if v < self.n1 { 1 } else { -1 };
        }
        diff.values().all(|&d| d == 0)
    }

    fn search(&self, colors: Vec<usize>, g1: &IsogenyGraph, g2: &IsogenyGraph) -> Option<Vec<usize>> {
        if !self.balanced(&colors) {
            return None;
        }
        let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            cells.entry(c).or_default().push(v);
        }
        // smallest non-singleton cell; each cell holds equally many vertices of each half
        let Some(cell) = cells.values().filter(|c| c.len() > 2).min_by_key(|c| c.len()) else {
            let mut map = vec![0; self.n1];
            for cell in cells.values() {
                map[cell[0]] = cell[1] - self.n1;
            }
            return preserves_edges(g1, g2, &map).then_some(map);
        };
        let v = cell[0];
        let fresh = colors.iter().max().unwrap() + 1;
        for &w in cell.iter().filter(|&&w| w >= self.n1) {
            let mut next = colors.clone();
            next[v] = fresh;
            next[w] = fresh;
            self.refine(&mut next);
            if let Some(map) = self.search(next, g1, g2) {
                return Some(map);
            }
        }
        None
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn preserves_edges(g1: &IsogenyGraph, g2: &IsogenyGraph, map: &[usize]) -> bool {
    g1.edges.len() == g2.edges.len()
        && g1.edges.iter().all(|(&(u, v, ell), &m)| g2.multiplicity(map[u], map[v], ell) == m)
}

/// A bijection `map` with `mult_1(u -> v, l) = mult_2(map[u] -> map[v], l)`
/// for all vertices and colors, if one exists.
pub fn graphs_isomorphic(g1: &IsogenyGraph, g2: &IsogenyGraph) -> Result<Option<Vec<usize>>, GraphError> {
    if g1.degrees != g2.degrees {
        return Err(GraphError::DegreeSetMismatch(g1.degrees.clone(), g2.degrees.clone()));
    }
    if g1.vertices.len() != g2.vertices.len() {
        return Ok(None);
    }
    let u = Union::new(g1, g2);
    let mut colors = vec![0; g1.vertices.len() + g2.vertices.len()];
    u.refine(&mut colors);
    Ok(u.search(colors, g1, g2))
}
