//! Simple undirected graphs with bitset adjacency rows.

mod cliques;
mod io;
mod iso;

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use cliques::{maximal_cliques, DEFAULT_CLIQUE_CAP, MAX_CLIQUE_VERTICES};
pub use io::{parse_edge_list, write_edge_list};
pub use iso::{isomorphic, ISOMORPHISM_LIMIT};

/// Vertex subset as a bitset over `0..n_vertices`.
pub type VertexSet = FixedBitSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n_vertices())
            .field("m", &self.edge_count())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for (v, row) in g.rows.iter_mut().enumerate() {
            row.insert_range(..);
            row.set(v, false);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::new(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    /// Perfect matching `{2i, 2i+1}` on `2k` vertices.
    pub fn matching(k: usize) -> Self {
        let mut g = Graph::new(2 * k);
        for i in 0..k {
            g.add_edge(2 * i, 2 * i + 1);
        }
        g
    }

    /// Adds `{u, v}`; self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.rows[u].insert(v);
            self.rows[v].insert(u);
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u].set(v, false);
        self.rows[v].set(u, false);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.rows[u].toggle(v);
            self.rows[v].toggle(u);
        }
    }

    #[inline]
    pub fn n_vertices(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Open neighbourhood of `v` as a bitset.
    #[inline]
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n_vertices()).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, r)| r.ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// `N(v) ∪ {v}` as a bitset.
    pub fn closed_row(&self, v: usize) -> FixedBitSet {
        let mut r = self.rows[v].clone();
        r.insert(v);
        r
    }

    pub fn vertex_set(&self, vertices: impl IntoIterator<Item = usize>) -> VertexSet {
        let mut s = FixedBitSet::with_capacity(self.n_vertices());
        s.extend(vertices);
        s
    }
}

pub fn closed_neighborhood(x: &Graph, v: usize) -> Vec<usize> {
    x.closed_row(v).ones().collect()
}

/// Vertices adjacent to every other vertex.
pub fn dominant_vertices(x: &Graph) -> Vec<usize> {
    let n = x.n_vertices();
    (0..n).filter(|&v| x.degree(v) + 1 == n).collect()
}

/// Partition of a vertex subset by equality of closed neighbourhoods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPartition {
    /// Classes in order of their smallest vertex; each class ascending.
    pub classes: Vec<Vec<usize>>,
}

impl TwinPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Multiset of class sizes as `(size, count)` pairs, ascending by size.
    pub fn size_profile(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for c in &self.classes {
            *counts.entry(c.len()).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }
}

/// Groups the vertices of `s` by their closed neighbourhood in `x`.
pub fn closed_twin_classes(x: &Graph, s: &[usize]) -> TwinPartition {
    let mut order: Vec<usize> = s.to_vec();
    order.sort_unstable();
    order.dedup();
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in order {
        let key = x.closed_row(v);
        match index.get(&key) {
            Some(&c) => classes[c].push(v),
            None => {
                index.insert(key, classes.len());
                classes.push(vec![v]);
            }
        }
    }
    TwinPartition { classes }
}

/// Components in order of their smallest vertex; each component ascending.
pub fn connected_components(x: &Graph) -> Vec<Vec<usize>> {
    let n = x.n_vertices();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut out = Vec::new();
    for start in 0..n {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start);
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in x.neighbors(u) {
                if !seen.put(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Subgraph induced by `s`; vertex `s[i]` becomes vertex `i`.
pub fn induced_subgraph(x: &Graph, s: &[usize]) -> Graph {
    let mut g = Graph::new(s.len());
    for (i, &u) in s.iter().enumerate() {
        for (j, &v) in s.iter().enumerate().skip(i + 1) {
            if x.has_edge(u, v) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Deletes `s`; the remaining vertices keep their relative order.
pub fn remove_vertices(x: &Graph, s: &[usize]) -> Graph {
    let drop = x.vertex_set(s.iter().copied());
    let keep: Vec<usize> = (0..x.n_vertices()).filter(|v| !drop.contains(*v)).collect();
    induced_subgraph(x, &keep)
}

pub fn is_complete(x: &Graph) -> bool {
    let n = x.n_vertices();
    n == 0 || 2 * x.edge_count() == n * (n - 1)
}

/// Relabels `x` so that vertex `v` becomes `pi[v]`.
pub fn permute(x: &Graph, pi: &[usize]) -> Result<Graph> {
    let n = x.n_vertices();
    check_permutation(pi, n)?;
    let mut g = Graph::new(n);
    for (u, v) in x.edges() {
        g.add_edge(pi[u], pi[v]);
    }
    Ok(g)
}

pub(crate) fn check_permutation(pi: &[usize], n: usize) -> Result<()> {
    if pi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: pi.len(),
        });
    }
    let mut seen = FixedBitSet::with_capacity(n);
    for &v in pi {
        if v >= n || seen.put(v) {
            return Err(Error::invalid("map is not a permutation"));
        }
    }
    Ok(())
}

/// Uniformly random permutation of `0..n`, reproducible from `seed`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pi: Vec<usize> = (0..n).collect();
    pi.shuffle(&mut rng);
    pi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commuting::build_commuting_graph;
    use crate::group::{make_dihedral, make_quaternion};

    #[test]
    fn closed_neighborhoods() {
        assert_eq!(closed_neighborhood(&Graph::complete(4), 2), vec![0, 1, 2, 3]);
        assert_eq!(closed_neighborhood(&Graph::path(3), 0), vec![0, 1]);
        let (x, _) = build_commuting_graph(&make_dihedral(3).unwrap());
        assert_eq!(closed_neighborhood(&x, 0), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn dominants() {
        assert_eq!(dominant_vertices(&Graph::complete(5)).len(), 5);
        assert!(dominant_vertices(&Graph::matching(2)).is_empty());
        let (q, _) = build_commuting_graph(&make_quaternion());
        assert_eq!(dominant_vertices(&q), vec![0, 1]);
    }

    #[test]
    fn twins_in_complete_graph() {
        let k4 = Graph::complete(4);
        let t = closed_twin_classes(&k4, &[0, 1, 2, 3]);
        assert_eq!(t.classes, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn twin_refinement_never_merges() {
        let (x, _) = build_commuting_graph(&make_dihedral(4).unwrap());
        let all: Vec<usize> = (0..8).collect();
        let full = closed_twin_classes(&x, &all);
        let sub = closed_twin_classes(&x, &[1, 3, 4, 6, 7]);
        for c in &sub.classes {
            assert!(full.classes.iter().any(|f| c.iter().all(|v| f.contains(v))));
        }
    }

    #[test]
    fn components_and_subgraphs() {
        assert_eq!(connected_components(&Graph::matching(2)).len(), 2);
        assert_eq!(induced_subgraph(&Graph::complete(5), &[0, 1]), Graph::complete(2));
        let (d15, _) = build_commuting_graph(&make_dihedral(15).unwrap());
        let rest = remove_vertices(&d15, &[0]);
        let mut sizes: Vec<usize> = connected_components(&rest).iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes.len(), 16);
        assert_eq!(sizes[15], 14);
        assert!(sizes[..15].iter().all(|&s| s == 1));
        assert!(is_complete(&Graph::complete(3)));
        assert!(!is_complete(&Graph::path(3)));
        assert!(is_complete(&Graph::new(1)));
    }

    #[test]
    fn permute_identity_and_twin_swap() {
        let x = Graph::petersen_for_tests();
        let id: Vec<usize> = (0..10).collect();
        assert_eq!(permute(&x, &id).unwrap(), x);
        let k4 = Graph::complete(4);
        assert_eq!(permute(&k4, &[1, 0, 2, 3]).unwrap(), k4);
        assert!(permute(&k4, &[0, 0, 1, 2]).is_err());
        assert!(permute(&k4, &[0, 1]).is_err());
    }

    #[test]
    fn permutations_are_reproducible() {
        assert_eq!(random_permutation(50, 7), random_permutation(50, 7));
        assert_ne!(random_permutation(50, 7), random_permutation(50, 8));
    }

    impl Graph {
        fn petersen_for_tests() -> Graph {
            let mut g = Graph::new(10);
            for i in 0..5 {
                g.add_edge(i, (i + 1) % 5);
                g.add_edge(i, i + 5);
                g.add_edge(i + 5, (i + 2) % 5 + 5);
            }
            g
        }
    }
}
