//! Strong products, their factorization at desk scale, and recognition of
//! direct products from recognizable factors.
//!
//! Vertex `(u, v)` of `a ⊠ b` has index `u·|b| + v`, matching
//! [`crate::group::direct_product`], so `Γ(G × H) = Γ(G) ⊠ Γ(H)` holds as
//! equality of graphs rather than just isomorphism.

use crate::commuting::{verify_labeling, CertifiedLabeling, Labeling};
use crate::error::{Error, Result};
use crate::extraspecial::{recognize_extraspecial, recognize_p3};
use crate::graph::{connected_components, is_complete, isomorphic, Graph};
use crate::group::{direct_product, make_cyclic, GroupTable};
use crate::structure::recognize_dihedral_odd;
use crate::verdict::{Rejection, Verdict};

pub const DEFAULT_FACTOR_LIMIT: usize = 64;
pub const MAX_PRODUCT_VERTICES: usize = 1 << 15;
/// Search nodes allowed per split attempt before giving up with an error.
const SPLIT_NODE_BUDGET: usize = 50_000_000;

pub fn strong_product(a: &Graph, b: &Graph) -> Result<Graph> {
    let (na, nb) = (a.n_vertices(), b.n_vertices());
    let n = na
        .checked_mul(nb)
        .filter(|&n| n <= MAX_PRODUCT_VERTICES)
        .ok_or(Error::SizeLimit {
            what: "strong product vertex count",
            limit: MAX_PRODUCT_VERTICES,
            actual: na.saturating_mul(nb),
        })?;
    let mut x = Graph::new(n);
    for u in 0..na {
        let cu = a.closed_row(u);
        for v in 0..nb {
            let cv = b.closed_row(v);
            let w = u * nb + v;
            for u2 in cu.ones() {
                for v2 in cv.ones() {
                    let w2 = u2 * nb + v2;
                    if w2 > w {
                        x.add_edge(w, w2);
                    }
                }
            }
        }
    }
    Ok(x)
}

/// `factors[0] ⊠ factors[1] ⊠ …`; the empty product is `K_1`.
pub fn strong_product_all(factors: &[Graph]) -> Result<Graph> {
    factors
        .iter()
        .try_fold(Graph::new(1), |acc, f| strong_product(&acc, f))
}

/// Prime factors of a connected graph together with the isomorphism onto
/// their product: `embedding[w]` is the index of `w` in
/// `strong_product_all(&factors)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Graph>,
    pub embedding: Vec<usize>,
}

impl Factorization {
    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1
    }
}

/// Complete factorization into strong-prime factors by exhaustive search.
/// `K_1` has no factors.
pub fn factor_strong(x: &Graph, limit: usize) -> Result<Factorization> {
    let n = x.n_vertices();
    if n > limit {
        return Err(Error::limit("vertex count", limit, n));
    }
    if n == 0 {
        return Err(Error::invalid("cannot factor the empty graph"));
    }
    if connected_components(x).len() != 1 {
        return Err(Error::invalid("strong-product factorization needs a connected graph"));
    }
    factor_rec(x)
}

fn factor_rec(x: &Graph) -> Result<Factorization> {
    let n = x.n_vertices();
    if n == 1 {
        return Ok(Factorization {
            factors: Vec::new(),
            embedding: vec![0],
        });
    }
    let Some(split) = find_split(x)? else {
        return Ok(Factorization {
            factors: vec![x.clone()],
            embedding: (0..n).collect(),
        });
    };
    let fa = factor_rec(&split.a)?;
    let fb = factor_rec(&split.b)?;
    let nb = split.b.n_vertices();
    let embedding = split
        .cell
        .iter()
        .map(|&(r, c)| fa.embedding[r] * nb + fb.embedding[c])
        .collect();
    let mut factors = fa.factors;
    factors.extend(fb.factors);
    Ok(Factorization { factors, embedding })
}

pub fn is_prime_strong(x: &Graph, limit: usize) -> Result<bool> {
    Ok(factor_strong(x, limit)?.is_prime())
}

struct Split {
    a: Graph,
    b: Graph,
    /// `(row, column)` of every vertex: its coordinates in `a ⊠ b`.
    cell: Vec<(usize, usize)>,
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Some nontrivial split `x ≅ a ⊠ b`, if one exists.
fn find_split(x: &Graph) -> Result<Option<Split>> {
    let n = x.n_vertices();
    let deg: Vec<usize> = (0..n).map(|v| x.degree(v) + 1).collect();
    let mut twin_prev = vec![None; n];
    let mut last_of_class = std::collections::HashMap::new();
    for v in 0..n {
        if let Some(u) = last_of_class.insert(x.closed_row(v), v) {
            twin_prev[v] = Some(u);
        }
    }
    for d in divisors(n).into_iter().filter(|&d| d >= 2 && d * d <= n) {
        let e = n / d;
        for delta in divisors(deg[0]).into_iter().filter(|&t| t <= e && deg[0] / t <= d) {
            let mut s = SplitSearch::new(x, d, e, delta, &deg, &twin_prev);
            if s.run(0)? {
                return Ok(Some(s.into_split()));
            }
        }
    }
    Ok(None)
}

/// Fills a `d × e` grid column by column with the vertices of `x`, keeping
/// the row graph `a` and column graph `b` consistent with
/// `adj((r,c),(r',c')) = [r=r' or a(r,r')] and [c=c' or b(c,c')]`.
///
/// Column 0 determines `a` and row 0 determines `b`. Closed degrees factor
/// as `deg(r,c) = deg_a(r)·deg_b(c)`, with `deg_b(0) = delta` fixed up front.
/// Symmetry breaking: vertex 0 sits at `(0,0)`, column 0 and row 0 increase,
/// and closed twins appear in fill order.
struct SplitSearch<'a> {
    x: &'a Graph,
    d: usize,
    e: usize,
    delta: usize,
    deg: &'a [usize],
    twin_prev: &'a [Option<usize>],
    at: Vec<usize>,
    placed: Vec<bool>,
    a: Vec<Option<bool>>,
    b: Vec<Option<bool>>,
    da: Vec<usize>,
    db: Vec<usize>,
    a_cnt: Vec<(usize, usize)>,
    b_cnt: Vec<(usize, usize)>,
    nodes: usize,
}

enum Undo {
    A(usize, usize),
    B(usize, usize),
}

impl<'a> SplitSearch<'a> {
    fn new(x: &'a Graph, d: usize, e: usize, delta: usize, deg: &'a [usize], twin_prev: &'a [Option<usize>]) -> Self {
        let n = d * e;
        let mut db = vec![0; e];
        db[0] = delta;
        SplitSearch {
            x,
            d,
            e,
            delta,
            deg,
            twin_prev,
            at: Vec::with_capacity(n),
            placed: vec![false; n],
            a: vec![None; d * d],
            b: vec![None; e * e],
            da: vec![0; d],
            db,
            a_cnt: vec![(0, 0); d],
            b_cnt: vec![(0, 0); e],
            nodes: 0,
        }
    }

    fn into_split(self) -> Split {
        let (d, e) = (self.d, self.e);
        let mut a = Graph::new(d);
        for r in 0..d {
            for r2 in r + 1..d {
                if self.a[r * d + r2] == Some(true) {
                    a.add_edge(r, r2);
                }
            }
        }
        let mut b = Graph::new(e);
        for c in 0..e {
            for c2 in c + 1..e {
                if self.b[c * e + c2] == Some(true) {
                    b.add_edge(c, c2);
                }
            }
        }
        let mut cell = vec![(0, 0); d * e];
        for (t, &w) in self.at.iter().enumerate() {
            cell[w] = (t % d, t / d);
        }
        Split { a, b, cell }
    }

    fn run(&mut self, t: usize) -> Result<bool> {
        let n = self.d * self.e;
        if t == n {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > SPLIT_NODE_BUDGET {
            return Err(Error::limit("factorization search nodes", SPLIT_NODE_BUDGET, self.nodes));
        }
        let (r, c) = (t % self.d, t / self.d);
        let lower = if t == 0 {
            0
        } else if c == 0 {
            self.at[t - 1] + 1
        } else if r == 0 {
            self.at[t - self.d] + 1
        } else {
            0
        };
        let upper = if t == 0 { 1 } else { n };
        for w in lower..upper {
            if self.placed[w] || self.twin_prev[w].is_some_and(|u| !self.placed[u]) {
                continue;
            }
            let mut log = Vec::new();
            let saved_da = self.da[r];
            let saved_db = self.db[c];
            if self.place(t, w, &mut log) {
                self.placed[w] = true;
                self.at.push(w);
                if self.run(t + 1)? {
                    return Ok(true);
                }
                self.at.pop();
                self.placed[w] = false;
            }
            self.undo(log);
            self.da[r] = saved_da;
            self.db[c] = saved_db;
        }
        Ok(false)
    }

    fn undo(&mut self, log: Vec<Undo>) {
        for u in log.into_iter().rev() {
            match u {
                Undo::A(i, j) => {
                    let v = self.a[i * self.d + j].take().expect("logged entry is set");
                    self.a[j * self.d + i] = None;
                    for k in [i, j] {
                        if v {
                            self.a_cnt[k].0 -= 1;
                        } else {
                            self.a_cnt[k].1 -= 1;
                        }
                    }
                }
                Undo::B(i, j) => {
                    let v = self.b[i * self.e + j].take().expect("logged entry is set");
                    self.b[j * self.e + i] = None;
                    for k in [i, j] {
                        if v {
                            self.b_cnt[k].0 -= 1;
                        } else {
                            self.b_cnt[k].1 -= 1;
                        }
                    }
                }
            }
        }
    }

    fn set_a(&mut self, i: usize, j: usize, v: bool, log: &mut Vec<Undo>) -> bool {
        let d = self.d;
        self.a[i * d + j] = Some(v);
        self.a[j * d + i] = Some(v);
        log.push(Undo::A(i, j));
        for k in [i, j] {
            if v {
                self.a_cnt[k].0 += 1;
            } else {
                self.a_cnt[k].1 += 1;
            }
        }
        [i, j].into_iter().all(|k| {
            let (t, f) = self.a_cnt[k];
            t < self.da[k] && f <= d - self.da[k]
        })
    }

    fn set_b(&mut self, i: usize, j: usize, v: bool, log: &mut Vec<Undo>) -> bool {
        let e = self.e;
        self.b[i * e + j] = Some(v);
        self.b[j * e + i] = Some(v);
        log.push(Undo::B(i, j));
        for k in [i, j] {
            if v {
                self.b_cnt[k].0 += 1;
            } else {
                self.b_cnt[k].1 += 1;
            }
        }
        [i, j].into_iter().all(|k| {
            let (t, f) = self.b_cnt[k];
            t < self.db[k] && f <= e - self.db[k]
        })
    }

    fn place(&mut self, t: usize, w: usize, log: &mut Vec<Undo>) -> bool {
        let (d, e) = (self.d, self.e);
        let (r, c) = (t % d, t / d);
        let dw = self.deg[w];
        if c == 0 {
            if dw % self.delta != 0 || dw / self.delta > d {
                return false;
            }
            self.da[r] = dw / self.delta;
        } else if r == 0 {
            if dw % self.da[0] != 0 || dw / self.da[0] > e {
                return false;
            }
            self.db[c] = dw / self.da[0];
        } else if dw != self.da[r] * self.db[c] {
            return false;
        }
        if c == 0 {
            for r2 in 0..r {
                let adj = self.x.has_edge(w, self.at[r2]);
                if !self.set_a(r, r2, adj, log) {
                    return false;
                }
            }
            return true;
        }
        if r == 0 {
            for c2 in 0..c {
                let adj = self.x.has_edge(w, self.at[c2 * d]);
                if !self.set_b(c, c2, adj, log) {
                    return false;
                }
            }
        }
        for (t2, &w2) in self.at.iter().enumerate() {
            let (r2, c2) = (t2 % d, t2 / d);
            let expect = if r2 == r {
                self.b[c * e + c2] == Some(true)
            } else if c2 == c {
                self.a[r * d + r2] == Some(true)
            } else {
                self.a[r * d + r2] == Some(true) && self.b[c * e + c2] == Some(true)
            };
            if expect != self.x.has_edge(w, w2) {
                return false;
            }
        }
        true
    }
}

/// A group recognizer used at the leaves of [`product_reduction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Oracle {
    Extraspecial,
    P3,
    /// Complete graphs, witnessed by the cyclic group.
    Complete,
    DihedralOdd,
}

impl Oracle {
    pub fn name(self) -> &'static str {
        match self {
            Oracle::Extraspecial => "extraspecial",
            Oracle::P3 => "p3",
            Oracle::Complete => "complete",
            Oracle::DihedralOdd => "dihedral-odd",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Oracle::Extraspecial, Oracle::P3, Oracle::Complete, Oracle::DihedralOdd]
            .into_iter()
            .find(|o| o.name() == s)
    }

    /// Runs the recognizer; inputs outside its domain count as not recognized.
    pub fn recognize(self, x: &Graph) -> Result<Option<Labeling>> {
        let n = x.n_vertices();
        let verdict = match self {
            Oracle::Extraspecial => recognize_extraspecial(x)?,
            Oracle::P3 => recognize_p3(x)?,
            Oracle::Complete => {
                if n == 0 || !is_complete(x) {
                    return Ok(None);
                }
                let labeling = Labeling {
                    group: make_cyclic(n)?,
                    map: (0..n).collect(),
                };
                verify_labeling(x, labeling)?
            }
            Oracle::DihedralOdd => {
                if n < 6 || n % 4 != 2 {
                    return Ok(None);
                }
                recognize_dihedral_odd(x)?
            }
        };
        Ok(verdict.accepted().map(CertifiedLabeling::into_labeling))
    }
}

/// Tries each oracle in turn.
pub fn oracle_chain(oracles: &[Oracle]) -> impl Fn(&Graph) -> Result<Option<Labeling>> + '_ {
    move |x| {
        for o in oracles {
            if let Some(l) = o.recognize(x)? {
                return Ok(Some(l));
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCertificate {
    pub labeling: CertifiedLabeling,
    pub factor_sizes: Vec<usize>,
    /// Factor-index subsets the oracle recognized directly, as bitmasks.
    pub recognized_directly: Vec<u32>,
    pub oracle_calls: usize,
}

/// Factors `x`, asks the oracle about every product of a subset of factors
/// (once per isomorphism type), and combines recognized disjoint subsets
/// into direct products until the full set is covered.
pub fn product_reduction<F>(x: &Graph, oracle: F, limit: usize) -> Result<Verdict<ProductCertificate>>
where
    F: Fn(&Graph) -> Result<Option<Labeling>>,
{
    let n = x.n_vertices();
    if n == 0 {
        return Err(Error::invalid("empty graph"));
    }
    if n > limit {
        return Err(Error::limit("vertex count", limit, n));
    }
    if connected_components(x).len() != 1 {
        return Ok(Verdict::reject("connected", "commuting graphs are connected"));
    }
    let fact = factor_strong(x, limit)?;
    let k = fact.factors.len();
    let full: u32 = if k == 0 { 0 } else { (1u32 << k) - 1 };
    let sizes: Vec<usize> = fact.factors.iter().map(Graph::n_vertices).collect();

    let subset_graph = |s: u32| -> Result<Graph> {
        let parts: Vec<Graph> = (0..k).filter(|i| s >> i & 1 == 1).map(|i| fact.factors[i].clone()).collect();
        strong_product_all(&parts)
    };

    let mut labels: Vec<Option<Labeling>> = vec![None; (full as usize) + 1];
    let mut queried: Vec<(Graph, Option<Labeling>)> = Vec::new();
    let mut recognized_directly = Vec::new();
    let mut oracle_calls = 0;

    if k == 0 {
        let group = make_cyclic(1)?;
        labels[0] = Some(Labeling { group, map: vec![0] });
    }
    for s in 1..=full {
        let xs = subset_graph(s)?;
        let mut found = None;
        for (prev, lab) in &queried {
            if prev.n_vertices() != xs.n_vertices() || prev.edge_count() != xs.edge_count() {
                continue;
            }
            if let Some(pi) = isomorphic(prev, &xs)? {
                found = Some(lab.as_ref().map(|l| {
                    let mut map = vec![0; l.map.len()];
                    for (v, &g) in l.map.iter().enumerate() {
                        map[pi[v]] = g;
                    }
                    Labeling { group: l.group.clone(), map }
                }));
                break;
            }
        }
        let lab = match found {
            Some(l) => l,
            None => {
                oracle_calls += 1;
                let l = match oracle(&xs)? {
                    Some(l) => verify_labeling(&xs, l)?.accepted().map(CertifiedLabeling::into_labeling),
                    None => None,
                };
                queried.push((xs, l.clone()));
                l
            }
        };
        if lab.is_some() {
            recognized_directly.push(s);
        }
        labels[s as usize] = lab;
    }

    let mut order: Vec<u32> = (1..=full).collect();
    order.sort_by_key(|s| (s.count_ones(), *s));
    for &s in &order {
        if labels[s as usize].is_some() {
            continue;
        }
        let low = s & s.wrapping_neg();
        // s1 contains the lowest factor of s, s2 = s \ s1
        let mut s1 = (s - 1) & s;
        while s1 > 0 {
            if s1 & low != 0 && s1 != s {
                let s2 = s & !s1;
                if let (Some(l1), Some(l2)) = (&labels[s1 as usize], &labels[s2 as usize]) {
                    labels[s as usize] = Some(combine(s, s1, s2, &sizes, l1, l2));
                    break;
                }
            }
            s1 = (s1 - 1) & s;
        }
    }

    let Some(top) = labels[full as usize].take() else {
        return Ok(Verdict::Reject(Rejection::new(
            "product",
            format!(
                "no cover of the {k} factor(s) (sizes {sizes:?}) by recognized subsets"
            ),
        )));
    };
    let map = fact.embedding.iter().map(|&i| top.map[i]).collect();
    let verdict = verify_labeling(x, Labeling { group: top.group, map })?;
    Ok(verdict.map(|labeling| ProductCertificate {
        labeling,
        factor_sizes: sizes,
        recognized_directly,
        oracle_calls,
    }))
}

/// Labeling of `X_s` from labelings of `X_s1` and `X_s2` (`s = s1 ⊔ s2`),
/// with group `G_s1 × G_s2`.
fn combine(s: u32, s1: u32, s2: u32, sizes: &[usize], l1: &Labeling, l2: &Labeling) -> Labeling {
    let members: Vec<usize> = (0..sizes.len()).filter(|i| s >> i & 1 == 1).collect();
    let total: usize = members.iter().map(|&i| sizes[i]).product();
    let group: GroupTable = direct_product(&l1.group, &l2.group);
    let m2 = l2.group.order();
    let mut map = vec![0; total];
    for (w, slot) in map.iter_mut().enumerate() {
        // mixed-radix digits of w, most significant factor first
        let mut rem = w;
        let mut digits = vec![0; members.len()];
        for (pos, &i) in members.iter().enumerate().rev() {
            digits[pos] = rem % sizes[i];
            rem /= sizes[i];
        }
        let (mut u, mut v) = (0, 0);
        for (pos, &i) in members.iter().enumerate() {
            if s1 >> i & 1 == 1 {
                u = u * sizes[i] + digits[pos];
            } else {
                debug_assert!(s2 >> i & 1 == 1);
                v = v * sizes[i] + digits[pos];
            }
        }
        *slot = l1.map[u] * m2 + l2.map[v];
    }
    Labeling { group, map }
}
