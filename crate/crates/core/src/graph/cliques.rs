use fixedbitset::FixedBitSet;

use super::Graph;
use crate::error::{Error, Result};

/// Default cap on the number of maximal cliques reported.
pub const DEFAULT_CLIQUE_CAP: usize = 1_000_000;

pub const MAX_CLIQUE_VERTICES: usize = 4096;

/// All maximal cliques, by pivoting Bron–Kerbosch on bitsets.
///
/// Returns [`Error::SizeLimit`] if the graph has more than
/// [`MAX_CLIQUE_VERTICES`] vertices or more than `cap` maximal cliques.
/// Each clique is ascending.
pub fn maximal_cliques(x: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = x.n_vertices();
    if n > MAX_CLIQUE_VERTICES {
        return Err(Error::limit("vertex count", MAX_CLIQUE_VERTICES, n));
    }
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x_set = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    expand(x, &mut r, p, x_set, cap, &mut out)?;
    Ok(out)
}

fn expand(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if p.is_clear() {
        if x.is_clear() {
            if out.len() >= cap {
                return Err(Error::limit("maximal clique count", cap, out.len() + 1));
            }
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
        }
        return Ok(());
    }
    // pivot maximising |P ∩ N(u)|
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection_count(g.row(u)))
        .expect("P is non-empty");
    let candidates: Vec<usize> = p.difference(g.row(pivot)).collect();
    for v in candidates {
        let row = g.row(v);
        let mut np = p.clone();
        np.intersect_with(row);
        let mut nx = x.clone();
        nx.intersect_with(row);
        r.push(v);
        expand(g, r, np, nx, cap, out)?;
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commuting::build_commuting_graph;
    use crate::group::{make_extraspecial, make_quaternion, ExtraspecialVariant};

    fn is_clique(g: &Graph, c: &[usize]) -> bool {
        c.iter()
            .enumerate()
            .all(|(i, &u)| c[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    }

    #[test]
    fn triangle() {
        assert_eq!(maximal_cliques(&Graph::complete(3), 10).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn isolated_vertices_are_cliques() {
        let mut c = maximal_cliques(&Graph::new(3), 10).unwrap();
        c.sort();
        assert_eq!(c, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn quaternion_has_three_cliques_of_four() {
        let (x, _) = build_commuting_graph(&make_quaternion());
        let c = maximal_cliques(&x, 10).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|s| s.len() == 4 && is_clique(&x, s)));
    }

    #[test]
    fn extraspecial_243_has_forty_cliques() {
        let g = make_extraspecial(3, 2, ExtraspecialVariant::ExponentP).unwrap();
        let (x, _) = build_commuting_graph(&g);
        let c = maximal_cliques(&x, DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(c.len(), 40);
        assert!(c.iter().all(|s| s.len() == 27));
    }

    #[test]
    fn cap_is_enforced() {
        // 5 disjoint edges: 5 maximal cliques
        assert!(matches!(
            maximal_cliques(&Graph::matching(5), 4),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn output_is_an_antichain_covering_every_edge() {
        let mut g = Graph::cycle(7);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        g.add_edge(4, 6);
        let c = maximal_cliques(&g, 100).unwrap();
        for (i, a) in c.iter().enumerate() {
            assert!(is_clique(&g, a));
            for (j, b) in c.iter().enumerate() {
                if i != j {
                    assert!(!a.iter().all(|v| b.contains(v)));
                }
            }
        }
        for (u, v) in g.edges() {
            assert!(c.iter().any(|s| s.contains(&u) && s.contains(&v)));
        }
    }
}
