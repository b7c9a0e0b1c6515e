//! The commuting graph of a group and what can be read off it directly:
//! the class count `k = (2m + n)/n`, the cheap necessary-condition screens,
//! the maximal-abelian hypergraph, and the labeling checker.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{check_permutation, dominant_vertices, is_complete, maximal_cliques, Graph};
use crate::group::{GroupFile, GroupTable};
use crate::verdict::{Rejection, Verdict};

/// A vertex → group element assignment claimed to realise a graph as `Γ(group)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub group: GroupTable,
    pub map: Vec<usize>,
}

/// A [`Labeling`] that has passed [`verify_labeling`] against some graph.
///
/// There is no public constructor; the only way to obtain one is through the
/// checker, so every accept carrying this type has been certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedLabeling {
    inner: Labeling,
}

impl CertifiedLabeling {
    pub fn group(&self) -> &GroupTable {
        &self.inner.group
    }

    pub fn map(&self) -> &[usize] {
        &self.inner.map
    }

    pub fn labeling(&self) -> &Labeling {
        &self.inner
    }

    pub fn into_labeling(self) -> Labeling {
        self.inner
    }
}

/// `Γ(g)` with the identity labeling: vertex `i` is element `i`.
pub fn build_commuting_graph(g: &GroupTable) -> (Graph, Labeling) {
    let n = g.order();
    let mut x = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if g.commute(a, b) {
                x.add_edge(a, b);
            }
        }
    }
    let labeling = Labeling {
        group: g.clone(),
        map: (0..n).collect(),
    };
    (x, labeling)
}

/// `(2m + n, n)`; their quotient is the class count when `x` is a commuting graph.
pub fn class_count_ratio(x: &Graph) -> (usize, usize) {
    let n = x.n_vertices();
    (2 * x.edge_count() + n, n)
}

/// Number of conjugacy classes implied by `x`, or a rejection if `(2m+n)/n`
/// is not an integer.
pub fn conjugacy_count_from_graph(x: &Graph) -> Result<Verdict<usize>> {
    let (num, den) = class_count_ratio(x);
    if den == 0 {
        return Err(Error::invalid("graph has no vertices"));
    }
    if num % den != 0 {
        return Ok(Verdict::reject(
            "class-count",
            format!("non-integral class count {num}/{den}"),
        ));
    }
    Ok(Verdict::Accept(num / den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Screen {
    Dominant,
    IntegralClassCount,
    LogLog,
    FiveEighths,
}

impl Screen {
    pub const ALL: [Screen; 4] = [
        Screen::Dominant,
        Screen::IntegralClassCount,
        Screen::LogLog,
        Screen::FiveEighths,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Screen::Dominant => "dominant-vertex",
            Screen::IntegralClassCount => "class-count",
            Screen::LogLog => "loglog",
            Screen::FiveEighths => "five-eighths",
        }
    }

    /// Runs this screen alone.
    pub fn check(self, x: &Graph) -> std::result::Result<(), Rejection> {
        let n = x.n_vertices();
        let (num, den) = class_count_ratio(x);
        match self {
            Screen::Dominant => {
                if dominant_vertices(x).is_empty() {
                    return Err(Rejection::new(self.name(), "no dominant vertex"));
                }
            }
            Screen::IntegralClassCount => {
                if num % den != 0 {
                    return Err(Rejection::new(
                        self.name(),
                        format!("non-integral class count {num}/{den}"),
                    ));
                }
            }
            Screen::LogLog => {
                // k < log2 log2 n  <=>  2^(2^k) < n, compared in integers with k = floor((2m+n)/n)
                let k = num / den;
                if n >= 4 && k < 7 {
                    let bound = 1u128 << (1u32 << k);
                    if bound < n as u128 {
                        return Err(Rejection::new(
                            self.name(),
                            format!("class count {k} is below log2 log2 {n}"),
                        ));
                    }
                }
            }
            Screen::FiveEighths => {
                if !is_complete(x) && 8 * num as u128 > 5 * (n as u128) * (n as u128) {
                    return Err(Rejection::new(
                        self.name(),
                        format!("2m+n = {num} exceeds 5n²/8 = {}/8 on an incomplete graph", 5 * n * n),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// What a passing screen learned about the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenSummary {
    pub class_count: usize,
    pub dominant: Vec<usize>,
}

/// Applies the screens in order and reports the first failure.
pub fn screen(x: &Graph) -> Result<Verdict<ScreenSummary>> {
    if x.n_vertices() == 0 {
        return Err(Error::invalid("graph has no vertices"));
    }
    for s in Screen::ALL {
        if let Err(r) = s.check(x) {
            return Ok(Verdict::Reject(r));
        }
    }
    let (num, den) = class_count_ratio(x);
    Ok(Verdict::Accept(ScreenSummary {
        class_count: num / den,
        dominant: dominant_vertices(x),
    }))
}

/// Every screen's individual outcome, in order.
pub fn screen_all(x: &Graph) -> Vec<(Screen, std::result::Result<(), Rejection>)> {
    Screen::ALL.iter().map(|&s| (s, s.check(x))).collect()
}

/// The hypergraph of maximal cliques (for a commuting graph: maximal abelian subgroups).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianHypergraph {
    pub n_vertices: usize,
    pub hyperedges: Vec<Vec<usize>>,
}

pub fn hypergraph_from_graph(x: &Graph, cap: usize) -> Result<AbelianHypergraph> {
    let mut hyperedges = maximal_cliques(x, cap)?;
    hyperedges.sort();
    Ok(AbelianHypergraph {
        n_vertices: x.n_vertices(),
        hyperedges,
    })
}

/// Joins every pair of vertices that share a hyperedge.
pub fn graph_from_hypergraph(h: &AbelianHypergraph) -> Result<Graph> {
    let mut x = Graph::new(h.n_vertices);
    for e in &h.hyperedges {
        for (i, &u) in e.iter().enumerate() {
            for &v in &e[i + 1..] {
                if u >= h.n_vertices || v >= h.n_vertices {
                    return Err(Error::invalid(format!("hyperedge vertex out of range 0..{}", h.n_vertices)));
                }
                if u != v {
                    x.add_edge(u, v);
                }
            }
        }
    }
    Ok(x)
}

/// Checks `edge(u,v) ⟺ ℓ(u)ℓ(v) = ℓ(v)ℓ(u)` for every pair `u ≠ v`.
///
/// Errors on a size mismatch or a non-bijective map; a failing pair is a
/// rejection whose witness is `[u, v]`.
pub fn verify_labeling(x: &Graph, labeling: Labeling) -> Result<Verdict<CertifiedLabeling>> {
    let n = x.n_vertices();
    if labeling.group.order() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: labeling.group.order(),
        });
    }
    if labeling.map.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: labeling.map.len(),
        });
    }
    check_permutation(&labeling.map, n)?;
    let g = &labeling.group;
    let map = &labeling.map;
    for u in 0..n {
        for v in u + 1..n {
            if x.has_edge(u, v) != g.commute(map[u], map[v]) {
                let what = if x.has_edge(u, v) {
                    "adjacent vertices carry non-commuting elements"
                } else {
                    "non-adjacent vertices carry commuting elements"
                };
                return Ok(Verdict::Reject(
                    Rejection::new("verify", what).with_witness(vec![u, v]),
                ));
            }
        }
    }
    Ok(Verdict::Accept(CertifiedLabeling { inner: labeling }))
}

/// On-disk labeling: the group either inline or as a path to a group file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabelingFile {
    pub group_file: GroupRef,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(String),
    Inline(GroupFile),
}

impl LabelingFile {
    /// Resolves the group, reading relative paths against `base`.
    pub fn resolve(self, base: Option<&Path>) -> Result<Labeling> {
        let group = match self.group_file {
            GroupRef::Inline(f) => GroupTable::from_file(f)?,
            GroupRef::Path(p) => {
                let path = match base {
                    Some(b) if Path::new(&p).is_relative() => b.join(&p),
                    _ => Path::new(&p).to_path_buf(),
                };
                GroupTable::from_json_str(&std::fs::read_to_string(path)?)?
            }
        };
        Ok(Labeling {
            group,
            map: self.map,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{permute, random_permutation, DEFAULT_CLIQUE_CAP};
    use crate::group::{
        centralizer, conjugacy_classes, make_cyclic, make_dihedral, make_extraspecial,
        make_quaternion, ExtraspecialVariant,
    };

    fn e27() -> GroupTable {
        make_extraspecial(3, 1, ExtraspecialVariant::ExponentP).unwrap()
    }

    #[test]
    fn abelian_gives_complete_graph() {
        let (x, _) = build_commuting_graph(&make_cyclic(7).unwrap());
        assert!(is_complete(&x));
    }

    #[test]
    fn s3_graph() {
        let (x, _) = build_commuting_graph(&make_dihedral(3).unwrap());
        assert_eq!(x.n_vertices(), 6);
        assert_eq!(x.edge_count(), 6);
        assert_eq!(dominant_vertices(&x), vec![0]);
        assert!(x.has_edge(1, 2));
        assert_eq!((3..6).map(|v| x.degree(v)).collect::<Vec<_>>(), vec![1, 1, 1]);
    }

    #[test]
    fn extraspecial_27_counts() {
        let (x, _) = build_commuting_graph(&e27());
        assert_eq!(x.edge_count(), 135);
        let mut d = x.degrees();
        d.sort_unstable();
        assert_eq!(&d[..24], &[8; 24]);
        assert_eq!(&d[24..], &[26; 3]);
        assert_eq!(conjugacy_count_from_graph(&x).unwrap(), Verdict::Accept(11));
    }

    #[test]
    fn class_count_examples() {
        assert_eq!(conjugacy_count_from_graph(&Graph::complete(5)).unwrap(), Verdict::Accept(5));
        let (d15, _) = build_commuting_graph(&make_dihedral(15).unwrap());
        assert_eq!(d15.edge_count(), 120);
        assert_eq!(conjugacy_count_from_graph(&d15).unwrap(), Verdict::Accept(9));
        assert!(conjugacy_count_from_graph(&Graph::star(5)).unwrap().is_reject());
    }

    #[test]
    fn degree_plus_one_is_centralizer_order() {
        let g = make_dihedral(5).unwrap();
        let (x, _) = build_commuting_graph(&g);
        for v in 0..g.order() {
            assert_eq!(x.degree(v) + 1, centralizer(&g, v).len());
        }
        assert_eq!(
            conjugacy_count_from_graph(&x).unwrap().accepted(),
            Some(conjugacy_classes(&g).len())
        );
    }

    #[test]
    fn screens() {
        assert!(screen(&Graph::complete(6)).unwrap().is_accept());
        let r = screen(&Graph::matching(16)).unwrap();
        assert_eq!(r.rejection().unwrap().stage, "dominant-vertex");
        // matching alone also fails the loglog screen: k = 2, 2^4 < 32
        assert!(Screen::LogLog.check(&Graph::matching(16)).is_err());
        let (q8, _) = build_commuting_graph(&make_quaternion());
        assert_eq!(2 * q8.edge_count() + 8, 40);
        assert!(screen(&q8).unwrap().is_accept());
    }

    #[test]
    fn k27_minus_edge_fails_class_count_first() {
        let mut x = Graph::complete(27);
        x.remove_edge(0, 1);
        let r = screen(&x).unwrap();
        assert_eq!(r.rejection().unwrap().stage, "class-count");
        assert!(Screen::FiveEighths.check(&x).is_err());
    }

    #[test]
    fn hypergraph_round_trip() {
        let (x, _) = build_commuting_graph(&e27());
        let h = hypergraph_from_graph(&x, DEFAULT_CLIQUE_CAP).unwrap();
        assert_eq!(h.hyperedges.len(), 4);
        assert!(h.hyperedges.iter().all(|e| e.len() == 9));
        assert_eq!(graph_from_hypergraph(&h).unwrap(), x);
        let path = AbelianHypergraph {
            n_vertices: 3,
            hyperedges: vec![vec![0, 1], vec![1, 2]],
        };
        assert_eq!(graph_from_hypergraph(&path).unwrap(), Graph::path(3));
    }

    #[test]
    fn verify_natural_and_broken() {
        let g = make_dihedral(3).unwrap();
        let (x, l) = build_commuting_graph(&g);
        assert!(verify_labeling(&x, l.clone()).unwrap().is_accept());
        // swap b (1) and a (3): edge 1-2 now carries a, b^2 which do not commute
        let mut bad = l;
        bad.map.swap(1, 3);
        let r = verify_labeling(&x, bad).unwrap();
        assert_eq!(r.rejection().unwrap().witness.len(), 2);
    }

    #[test]
    fn verify_permuted_with_composed_labeling() {
        let (x, l) = build_commuting_graph(&e27());
        let pi = random_permutation(27, 11);
        let y = permute(&x, &pi).unwrap();
        let mut map = vec![0; 27];
        for v in 0..27 {
            map[pi[v]] = l.map[v];
        }
        let lab = Labeling { group: l.group, map };
        assert!(verify_labeling(&y, lab).unwrap().is_accept());
    }

    #[test]
    fn verify_errors() {
        let (x, mut l) = build_commuting_graph(&make_cyclic(4).unwrap());
        l.map[0] = 1;
        assert!(verify_labeling(&x, l).is_err());
        let (_, l) = build_commuting_graph(&make_cyclic(3).unwrap());
        assert!(matches!(
            verify_labeling(&Graph::complete(4), l),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn labeling_file_inline() {
        let g = make_cyclic(2).unwrap();
        let f = LabelingFile {
            group_file: GroupRef::Inline(g.to_file()),
            map: vec![1, 0],
        };
        let s = serde_json::to_string(&f).unwrap();
        let back: LabelingFile = serde_json::from_str(&s).unwrap();
        let l = back.resolve(None).unwrap();
        assert_eq!(l.group, g);
        assert_eq!(l.map, vec![1, 0]);
    }
}
