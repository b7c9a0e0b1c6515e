//! Recognition of orthogonality graphs of the standard symplectic form.
//!
//! The non-dominant vertices fall into closed-twin classes of size `p − 1`,
//! one per projective point. A symplectic basis `e_i, f_i` is picked greedily
//! among the classes, then a few anchor points (`e_1 + f_1` and
//! `f_i + e_{i+1}`) pin down the remaining gauge freedom, after which the
//! labeling of every other class is determined. It is found by linear
//! propagation: each labeled class `w` adjacent to an unlabeled class `c`
//! contributes the equation `⟨c, w⟩ = 0`, and a class whose equations have
//! rank `2n − 1` has a unique candidate point. When no class is forced, the
//! most constrained one is branched on, with non-adjacency (`⟨c, w⟩ ≠ 0`)
//! pruning the candidates.
//!
//! Choosing the scalar on each class independently, as in the textbook
//! inductive argument, is not enough for `p > 2`: cross-class adjacency
//! couples the scalars (`⟨αe_1 + u, βf_1 + w⟩ = αβ + ⟨u, w⟩`). For `p ≥ 5`
//! even the labeling of the 2-dimensional layers cannot be chosen freely once
//! `n ≥ 2`, so this module does not recurse on layers.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use super::linalg::{normalize, projective_points, Echelon};
use super::{check_ortho_limits, check_prime, form_raw, half_dimension, vector_index, OrthoLabeling, SympVector};
use crate::error::Result;
use crate::graph::{closed_twin_classes, dominant_vertices, Graph};
use crate::verdict::{Rejection, Verdict};

/// Upper bound on class assignments (including those undone by backtracking).
const SEARCH_BUDGET: usize = 5_000_000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct SearchStats {
    pub assignments: usize,
    pub branch_points: usize,
    pub dead_ends: usize,
}

/// Recognizes `x` as the orthogonality graph of a non-degenerate symplectic
/// form over GF(`p`). On accept, the returned labeling has passed the full
/// vertex-pair check.
pub fn recognize_orthogonality_graph(x: &Graph, p: u32) -> Result<Verdict<OrthoLabeling>> {
    recognize_with_stats(x, p).map(|(v, _)| v)
}

pub(crate) fn recognize_with_stats(x: &Graph, p: u32) -> Result<(Verdict<OrthoLabeling>, SearchStats)> {
    check_prime(p)?;
    let size = x.n_vertices();
    let Some(n) = half_dimension(size, p) else {
        return Ok((
            Verdict::reject("size", format!("{size} vertices is not a power of {}", p * p)),
            SearchStats::default(),
        ));
    };
    check_ortho_limits(n, p)?;
    let classes = match class_structure(x, p) {
        Ok(c) => c,
        Err(r) => return Ok((Verdict::Reject(r), SearchStats::default())),
    };
    let mut search = Search {
        p,
        n,
        dim: 2 * n,
        cg: &classes.graph,
        stats: SearchStats::default(),
    };
    let mut state = State::new(p, 2 * n, classes.graph.n_vertices());
    if let Err(r) = search.seed(&mut state) {
        return Ok((Verdict::Reject(r), search.stats));
    }
    let solved = search.solve(state);
    let stats = search.stats;
    let labels = match solved {
        Outcome::Solved(s) => s.labels,
        Outcome::Failed => {
            return Ok((
                Verdict::reject("labeling", "no consistent assignment of points to twin classes"),
                stats,
            ))
        }
        Outcome::Budget => {
            return Ok((
                Verdict::Unsupported(format!(
                    "labeling search exceeded {SEARCH_BUDGET} assignments"
                )),
                stats,
            ))
        }
    };
    let mut map = vec![SympVector::zero(p, n); size];
    for (c, members) in classes.members.iter().enumerate() {
        let base = labels[c].as_ref().expect("solved state labels every class");
        for (k, &v) in members.iter().enumerate() {
            let coords = base.iter().map(|&a| a * (k as u32 + 1) % p).collect();
            map[v] = SympVector::from_raw(p, coords);
        }
    }
    Ok((OrthoLabeling::certify(x, p, n, map)?, stats))
}

pub(crate) struct ClassStructure {
    /// Twin classes of the non-dominant vertices, by smallest vertex.
    pub members: Vec<Vec<usize>>,
    /// Adjacency between classes.
    pub graph: Graph,
}

/// Checks the dominant vertex and twin-class counts and builds the class graph.
pub(crate) fn class_structure(x: &Graph, p: u32) -> std::result::Result<ClassStructure, Rejection> {
    let size = x.n_vertices();
    let dom = dominant_vertices(x);
    if dom.len() != 1 {
        return Err(Rejection::new(
            "dominant-vertex",
            format!("expected exactly one dominant vertex, found {}", dom.len()),
        )
        .with_witness(dom));
    }
    let zero = dom[0];
    let rest: Vec<usize> = (0..size).filter(|&v| v != zero).collect();
    let twins = closed_twin_classes(x, &rest);
    let p = p as usize;
    let expected = (size - 1) / (p - 1);
    if twins.len() != expected {
        return Err(Rejection::new(
            "twin-classes",
            format!("expected {expected} twin classes, found {}", twins.len()),
        ));
    }
    if let Some(c) = twins.classes.iter().find(|c| c.len() != p - 1) {
        return Err(Rejection::new(
            "twin-classes",
            format!("twin class of size {} (expected {})", c.len(), p - 1),
        )
        .with_witness(c.clone()));
    }
    let members = twins.classes;
    let mut graph = Graph::new(members.len());
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            if x.has_edge(members[a][0], members[b][0]) {
                graph.add_edge(a, b);
            }
        }
    }
    Ok(ClassStructure {
        members,
        graph,
    })
}

#[derive(Clone)]
struct State {
    labels: Vec<Option<Vec<u32>>>,
    systems: Vec<Echelon>,
    used: FixedBitSet,
    queue: VecDeque<usize>,
    unlabeled: usize,
}

impl State {
    fn new(p: u32, dim: usize, classes: usize) -> Self {
        State {
            labels: vec![None; classes],
            systems: vec![Echelon::new(p, dim); classes],
            used: FixedBitSet::with_capacity((p as usize).pow(dim as u32)),
            queue: VecDeque::new(),
            unlabeled: classes,
        }
    }
}

enum Outcome {
    Solved(State),
    Failed,
    Budget,
}

struct Search<'a> {
    p: u32,
    n: usize,
    dim: usize,
    cg: &'a Graph,
    stats: SearchStats,
}

impl Search<'_> {
    fn unit(&self, coord: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[coord] = 1;
        v
    }

    /// Picks the symplectic basis and the anchors, and labels them.
    fn seed(&mut self, st: &mut State) -> std::result::Result<(), Rejection> {
        let (p, n) = (self.p as usize, self.n);
        let c = self.cg.n_vertices();
        let mut s = FixedBitSet::with_capacity(c);
        s.insert_range(..);
        let mut e_cls = Vec::with_capacity(n);
        let mut f_cls = Vec::with_capacity(n);
        for i in 0..n {
            let Some(e) = s.ones().next() else {
                return Err(Rejection::new("basis", format!("no candidate for e_{}", i + 1)));
            };
            let Some(f) = s.ones().find(|&f| f != e && !self.cg.has_edge(e, f)) else {
                return Err(Rejection::new(
                    "basis",
                    format!("no class outside the neighbourhood of e_{}", i + 1),
                ));
            };
            s.set(e, false);
            s.set(f, false);
            s.intersect_with(self.cg.row(e));
            s.intersect_with(self.cg.row(f));
            let want = (p.pow(2 * (n - i - 1) as u32) - 1) / (p - 1);
            if s.count_ones(..) != want {
                return Err(Rejection::new(
                    "basis",
                    format!(
                        "common neighbourhood of e_{0}, f_{0} has {1} classes, expected {want}",
                        i + 1,
                        s.count_ones(..)
                    ),
                ));
            }
            e_cls.push(e);
            f_cls.push(f);
        }
        let mut is_basis = FixedBitSet::with_capacity(c);
        for i in 0..n {
            is_basis.insert(e_cls[i]);
            is_basis.insert(f_cls[i]);
        }
        for i in 0..n {
            if !self.assign(st, e_cls[i], self.unit(i)) || !self.assign(st, f_cls[i], self.unit(n + i)) {
                return Err(Rejection::new("basis", "basis classes are inconsistent"));
            }
        }
        // anchors: e_1 + f_1, then f_i + e_{i+1}
        for i in 0..n {
            let (off_a, off_b, coord_a, coord_b) = if i == 0 {
                (e_cls[0], f_cls[0], 0, n)
            } else {
                (e_cls[i - 1], f_cls[i], n + i - 1, i)
            };
            let anchor = (0..c).find(|&w| {
                !is_basis.contains(w)
                    && st.labels[w].is_none()
                    && (0..n).all(|j| {
                        let adj_e = self.cg.has_edge(w, e_cls[j]);
                        let adj_f = self.cg.has_edge(w, f_cls[j]);
                        adj_e == (e_cls[j] != off_a) && adj_f == (f_cls[j] != off_b)
                    })
            });
            let Some(w) = anchor else {
                return Err(Rejection::new("anchor", format!("no class with the support of anchor {}", i + 1)));
            };
            let mut v = vec![0; self.dim];
            v[coord_a] = 1;
            v[coord_b] = 1;
            if !self.assign(st, w, v) {
                return Err(Rejection::new("anchor", format!("anchor {} is inconsistent", i + 1)));
            }
        }
        Ok(())
    }

    /// Whether `v` can label class `c` given the classes labeled so far.
    fn consistent(&self, st: &State, c: usize, v: &[u32]) -> bool {
        if st.used.contains(vector_index(v, self.p)) {
            return false;
        }
        st.labels.iter().enumerate().all(|(d, l)| match l {
            Some(w) => (form_raw(self.p, v, w) == 0) == self.cg.has_edge(c, d),
            None => true,
        })
    }

    /// Labels class `c` with `v` and pushes the new equations. Returns false
    /// on any inconsistency.
    fn assign(&mut self, st: &mut State, c: usize, v: Vec<u32>) -> bool {
        self.stats.assignments += 1;
        if !self.consistent(st, c, &v) {
            return false;
        }
        let (p, n) = (self.p, self.n);
        // ⟨y, v⟩ as a functional in y
        let mut row = vec![0u32; self.dim];
        for i in 0..n {
            row[i] = v[n + i];
            row[n + i] = (p - v[i]) % p;
        }
        st.used.insert(vector_index(&v, p));
        st.labels[c] = Some(v);
        st.unlabeled -= 1;
        for d in self.cg.neighbors(c) {
            if st.labels[d].is_some() {
                continue;
            }
            let sys = &mut st.systems[d];
            if sys.insert(row.clone()) {
                if sys.rank() == self.dim {
                    return false;
                }
                if sys.rank() == self.dim - 1 {
                    st.queue.push_back(d);
                }
            }
        }
        true
    }

    fn solve(&mut self, mut st: State) -> Outcome {
        loop {
            if self.stats.assignments > SEARCH_BUDGET {
                return Outcome::Budget;
            }
            while let Some(c) = st.queue.pop_front() {
                if st.labels[c].is_some() {
                    continue;
                }
                let mut v = st.systems[c].kernel().pop().expect("rank 2n-1 leaves a line");
                normalize(&mut v, self.p);
                if !self.assign(&mut st, c, v) {
                    self.stats.dead_ends += 1;
                    return Outcome::Failed;
                }
            }
            if st.unlabeled == 0 {
                return Outcome::Solved(st);
            }
            let c = (0..st.labels.len())
                .filter(|&c| st.labels[c].is_none())
                .max_by_key(|&c| (st.systems[c].rank(), std::cmp::Reverse(c)))
                .expect("some class is unlabeled");
            let kernel = st.systems[c].kernel();
            let candidates: Vec<Vec<u32>> = projective_points(&kernel, self.p, self.dim)
                .into_iter()
                .filter(|v| self.consistent(&st, c, v))
                .collect();
            match candidates.len() {
                0 => {
                    self.stats.dead_ends += 1;
                    return Outcome::Failed;
                }
                1 => {
                    let v = candidates.into_iter().next().expect("one candidate");
                    if !self.assign(&mut st, c, v) {
                        self.stats.dead_ends += 1;
                        return Outcome::Failed;
                    }
                }
                _ => {
                    self.stats.branch_points += 1;
                    for v in candidates {
                        let mut next = st.clone();
                        if !self.assign(&mut next, c, v) {
                            self.stats.dead_ends += 1;
                            continue;
                        }
                        match self.solve(next) {
                            Outcome::Failed => continue,
                            other => return other,
                        }
                    }
                    return Outcome::Failed;
                }
            }
        }
    }
}
