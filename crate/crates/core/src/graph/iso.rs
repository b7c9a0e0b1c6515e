//! Desk-scale isomorphism search: colour refinement on the disjoint union of
//! both graphs, then individualisation with backtracking.

use std::collections::HashMap;

use super::Graph;
use crate::error::{Error, Result};

pub const ISOMORPHISM_LIMIT: usize = 256;

/// Returns `pi` with `permute(a, pi) == b`, or `None` if the graphs are not isomorphic.
pub fn isomorphic(a: &Graph, b: &Graph) -> Result<Option<Vec<usize>>> {
    let n = a.n_vertices();
    if n > ISOMORPHISM_LIMIT || b.n_vertices() > ISOMORPHISM_LIMIT {
        return Err(Error::limit(
            "vertex count",
            ISOMORPHISM_LIMIT,
            n.max(b.n_vertices()),
        ));
    }
    if n != b.n_vertices() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let union = Union { a, b, n };
    let colors: Vec<usize> = (0..2 * n).map(|v| union.degree(v)).collect();
    Ok(union.search(colors))
}

struct Union<'g> {
    a: &'g Graph,
    b: &'g Graph,
    n: usize,
}

impl Union<'_> {
    fn neighbors(&self, v: usize) -> Box<dyn Iterator<Item = usize> + '_> {
        if v < self.n {
            Box::new(self.a.neighbors(v))
        } else {
            Box::new(self.b.neighbors(v - self.n).map(move |w| w + self.n))
        }
    }

    fn degree(&self, v: usize) -> usize {
        if v < self.n {
            self.a.degree(v)
        } else {
            self.b.degree(v - self.n)
        }
    }

    /// Refines until stable. Returns `None` if some colour is unbalanced between the sides.
    fn refine(&self, mut colors: Vec<usize>) -> Option<Vec<usize>> {
        let mut n_colors = count_distinct(&colors);
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..2 * self.n)
                .map(|v| {
                    let mut ns: Vec<usize> = self.neighbors(v).map(|w| colors[w]).collect();
                    ns.sort_unstable();
                    (colors[v], ns)
                })
                .collect();
            let mut uniq: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
            uniq.sort();
            uniq.dedup();
            let rank: HashMap<&(usize, Vec<usize>), usize> =
                uniq.iter().enumerate().map(|(i, s)| (*s, i)).collect();
            colors = sigs.iter().map(|s| rank[s]).collect();
            let mut balance = vec![0isize; uniq.len()];
            for (v, &c) in colors.iter().enumerate() {
                balance[c] += if v < self.n { 1 } else { -1 };
            }
            if balance.iter().any(|&x| x != 0) {
                return None;
            }
            if uniq.len() == n_colors {
                return Some(colors);
            }
            n_colors = uniq.len();
        }
    }

    fn search(&self, colors: Vec<usize>) -> Option<Vec<usize>> {
        let colors = self.refine(colors)?;
        let n = self.n;
        let mut cell_size: HashMap<usize, usize> = HashMap::new();
        for &c in &colors[..n] {
            *cell_size.entry(c).or_insert(0) += 1;
        }
        let target = cell_size
            .iter()
            .filter(|(_, &s)| s > 1)
            .min_by_key(|(&c, &s)| (s, c))
            .map(|(&c, _)| c);
        match target {
            None => {
                let mut pos_b: HashMap<usize, usize> = HashMap::new();
                for v in n..2 * n {
                    pos_b.insert(colors[v], v - n);
                }
                let pi: Vec<usize> = (0..n).map(|v| pos_b[&colors[v]]).collect();
                let ok = self
                    .a
                    .edges()
                    .all(|(u, v)| self.b.has_edge(pi[u], pi[v]));
                ok.then_some(pi)
            }
            Some(c) => {
                let u = (0..n).find(|&v| colors[v] == c).expect("cell is non-empty");
                let fresh = colors.iter().max().copied().unwrap_or(0) + 1;
                for w in (n..2 * n).filter(|&v| colors[v] == c) {
                    let mut next = colors.clone();
                    next[u] = fresh;
                    next[w] = fresh;
                    if let Some(pi) = self.search(next) {
                        return Some(pi);
                    }
                }
                None
            }
        }
    }
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commuting::build_commuting_graph;
    use crate::graph::{permute, random_permutation};
    use crate::group::{make_dihedral, make_extraspecial, make_quaternion, ExtraspecialVariant};

    #[test]
    fn triangle_relabelled() {
        let mut t = Graph::new(3);
        t.add_edge(2, 0);
        t.add_edge(0, 1);
        t.add_edge(1, 2);
        let pi = isomorphic(&Graph::complete(3), &t).unwrap().unwrap();
        assert_eq!(permute(&Graph::complete(3), &pi).unwrap(), t);
    }

    #[test]
    fn triangle_vs_path() {
        assert!(isomorphic(&Graph::complete(3), &Graph::path(3)).unwrap().is_none());
    }

    #[test]
    fn d4_and_q8_share_a_commuting_graph() {
        let (d4, _) = build_commuting_graph(&make_dihedral(4).unwrap());
        let (q8, _) = build_commuting_graph(&make_quaternion());
        let pi = isomorphic(&d4, &q8).unwrap().unwrap();
        assert_eq!(permute(&d4, &pi).unwrap(), q8);
    }

    #[test]
    fn regular_non_isomorphic_pair() {
        // C6 vs two triangles: same degree sequence, refinement alone cannot separate
        let mut two_triangles = Graph::new(6);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            two_triangles.add_edge(u, v);
        }
        assert!(isomorphic(&Graph::cycle(6), &two_triangles).unwrap().is_none());
    }

    #[test]
    fn permuted_extraspecial_27() {
        let g = make_extraspecial(3, 1, ExtraspecialVariant::ExponentP).unwrap();
        let (x, _) = build_commuting_graph(&g);
        let pi = random_permutation(27, 3);
        let y = permute(&x, &pi).unwrap();
        assert_ne!(x, y);
        let found = isomorphic(&x, &y).unwrap().unwrap();
        assert_eq!(permute(&x, &found).unwrap(), y);
    }

    #[test]
    fn size_limit() {
        let big = Graph::new(300);
        assert!(matches!(isomorphic(&big, &big), Err(Error::SizeLimit { .. })));
    }
}
