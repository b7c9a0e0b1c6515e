//! GF(p) arithmetic, the standard symplectic space `V(2n, p)`, and its
//! orthogonality graph.
//!
//! Coordinates of a vector are ordered `(α_1..α_n, β_1..β_n)` against the
//! basis `e_1..e_n, f_1..f_n`, and the standard form is
//! `⟨u, v⟩ = Σ_i (u.α_i v.β_i − u.β_i v.α_i)`. A vector's index is the
//! base-`p` number whose digits are its coordinates, least significant first,
//! so the zero vector has index 0.

mod linalg;
mod naive;
mod recognize;

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{center, is_prime, GroupTable};
use crate::verdict::{Rejection, Verdict};

pub use naive::recognize_orthogonality_graph_naive;
pub use recognize::recognize_orthogonality_graph;

use linalg::Echelon;

/// Largest `n` accepted by the orthogonality-graph routines.
pub const MAX_HALF_DIMENSION: usize = 6;
/// Largest vertex count `p^(2n)` accepted by the orthogonality-graph routines.
pub const MAX_ORTHO_VERTICES: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(FpScalar {
            value: value.rem_euclid(p as i64) as u32,
            p,
        })
    }

    fn raw(value: u32, p: u32) -> Self {
        FpScalar { value: value % p, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| FpScalar::raw(linalg::inv_mod(self.value, self.p), self.p))
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, o: Self) -> Self {
        assert_eq!(self.p, o.p, "modulus mismatch");
        FpScalar::raw(self.value + o.value, self.p)
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, o: Self) -> Self {
        assert_eq!(self.p, o.p, "modulus mismatch");
        FpScalar::raw(self.value + self.p - o.value, self.p)
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, o: Self) -> Self {
        assert_eq!(self.p, o.p, "modulus mismatch");
        FpScalar::raw(((self.value as u64 * o.value as u64) % self.p as u64) as u32, self.p)
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> Self {
        FpScalar::raw(self.p - self.value, self.p)
    }
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::invalid(format!("modulus {p} is not prime")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SympVector {
    p: u32,
    coords: Vec<u32>,
}

impl SympVector {
    pub fn new(p: u32, coords: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if coords.is_empty() || coords.len() % 2 != 0 {
            return Err(Error::invalid(format!(
                "symplectic vector needs an even positive number of coordinates, got {}",
                coords.len()
            )));
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= p) {
            return Err(Error::invalid(format!("coordinate {c} is not reduced modulo {p}")));
        }
        Ok(SympVector { p, coords })
    }

    pub(crate) fn from_raw(p: u32, coords: Vec<u32>) -> Self {
        SympVector { p, coords }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        SympVector {
            p,
            coords: vec![0; 2 * n],
        }
    }

    /// `e_i`, 1-based as in the usual notation.
    pub fn e(p: u32, n: usize, i: usize) -> Self {
        let mut v = SympVector::zero(p, n);
        v.coords[i - 1] = 1;
        v
    }

    /// `f_i`, 1-based.
    pub fn f(p: u32, n: usize, i: usize) -> Self {
        let mut v = SympVector::zero(p, n);
        v.coords[n + i - 1] = 1;
        v
    }

    pub fn from_index(p: u32, n: usize, mut idx: usize) -> Self {
        let coords = (0..2 * n)
            .map(|_| {
                let c = (idx % p as usize) as u32;
                idx /= p as usize;
                c
            })
            .collect();
        SympVector { p, coords }
    }

    pub fn index(&self) -> usize {
        vector_index(&self.coords, self.p)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Half the dimension.
    pub fn n(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> FpScalar {
        FpScalar::raw(self.coords[i], self.p)
    }

    pub fn alpha(&self, i: usize) -> FpScalar {
        self.coord(i - 1)
    }

    pub fn beta(&self, i: usize) -> FpScalar {
        self.coord(self.n() + i - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, lambda: u32) -> Self {
        SympVector {
            p: self.p,
            coords: self.coords.iter().map(|&c| c * lambda % self.p).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        SympVector {
            p: self.p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) % self.p)
                .collect(),
        }
    }
}

pub(crate) fn vector_index(coords: &[u32], p: u32) -> usize {
    coords
        .iter()
        .rev()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// The standard form on raw coordinate slices of equal even length.
pub(crate) fn form_raw(p: u32, u: &[u32], v: &[u32]) -> u32 {
    let n = u.len() / 2;
    let p64 = p as u64;
    let mut s = 0u64;
    for i in 0..n {
        s += u[i] as u64 * v[n + i] as u64;
        s += (p64 - u[n + i] as u64) * v[i] as u64;
    }
    (s % p64) as u32
}

pub fn eval_form(u: &SympVector, v: &SympVector) -> Result<FpScalar> {
    if u.coords.len() != v.coords.len() {
        return Err(Error::DimensionMismatch {
            expected: u.coords.len(),
            found: v.coords.len(),
        });
    }
    if u.p != v.p {
        return Err(Error::invalid(format!("modulus mismatch: {} vs {}", u.p, v.p)));
    }
    Ok(FpScalar::raw(form_raw(u.p, &u.coords, &v.coords), u.p))
}

/// `n` with `p^(2n) = order`, if one exists.
pub fn half_dimension(order: usize, p: u32) -> Option<usize> {
    let q = (p as usize).checked_mul(p as usize)?;
    let mut acc = 1usize;
    let mut n = 0;
    while acc < order {
        acc = acc.checked_mul(q)?;
        n += 1;
    }
    (acc == order && n >= 1).then_some(n)
}

pub(crate) fn check_ortho_limits(n: usize, p: u32) -> Result<usize> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::invalid("half dimension n must be at least 1"));
    }
    if n > MAX_HALF_DIMENSION {
        return Err(Error::limit("half dimension", MAX_HALF_DIMENSION, n));
    }
    let size = (p as usize)
        .checked_pow(2 * n as u32)
        .filter(|&s| s <= MAX_ORTHO_VERTICES)
        .ok_or(Error::SizeLimit {
            what: "orthogonality graph vertex count",
            limit: MAX_ORTHO_VERTICES,
            actual: usize::MAX,
        })?;
    Ok(size)
}

/// The commutator pairing of an extraspecial group, on chosen coset representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationForm {
    pub p: u32,
    pub n: usize,
    /// Element indices whose images form a basis of `G/Z(G)`.
    pub representatives: Vec<usize>,
    /// The central element identified with `1 ∈ GF(p)`.
    pub center_generator: usize,
    /// `gram[i][j] = t` where `[r_i, r_j] = z^t`.
    pub gram: Vec<Vec<FpScalar>>,
}

/// Gram matrix of the commutator map of `g`, after checking that `g` has
/// centre of prime order `p`, that `G/Z` is elementary abelian of even rank,
/// and that the resulting alternating form is non-degenerate.
///
/// Representatives are chosen greedily: the lowest-index element outside the
/// subgroup generated so far (modulo the centre).
pub fn commutation_form(g: &GroupTable) -> Result<Verdict<CommutationForm>> {
    let order = g.order();
    let z = center(g);
    let pz = z.len();
    if pz < 2 || !is_prime(pz as u64) {
        return Ok(Verdict::reject(
            "centre",
            format!("centre has order {pz}, not a prime"),
        ));
    }
    let p = pz as u32;
    let inv = g.inverses();
    let comm = |a: usize, b: usize| g.mul(g.mul(inv[a], inv[b]), g.mul(a, b));
    let zgen = z[1];
    // discrete log base zgen on the centre
    let mut dlog = vec![usize::MAX; order];
    let mut cur = 0;
    for t in 0..pz {
        dlog[cur] = t;
        cur = g.mul(cur, zgen);
    }
    let mut in_span = vec![false; order];
    for &c in &z {
        in_span[c] = true;
    }
    let mut span: Vec<usize> = z.clone();
    let mut reps = Vec::new();
    while let Some(r) = (0..order).find(|&x| !in_span[x]) {
        if dlog[g.pow(r, p as usize)] == usize::MAX {
            return Ok(Verdict::reject(
                "exponent",
                format!("element {r} has p-th power outside the centre"),
            ));
        }
        // new span = span · {r^k}
        let mut next = Vec::with_capacity(span.len() * pz);
        let mut rk = 0;
        for _ in 0..pz {
            for &s in &span {
                let e = g.mul(s, rk);
                if !in_span[e] {
                    in_span[e] = true;
                    next.push(e);
                }
            }
            rk = g.mul(rk, r);
        }
        if next.len() != span.len() * (pz - 1) {
            return Ok(Verdict::reject(
                "quotient",
                format!("G/Z is not elementary abelian (element {r})"),
            ));
        }
        span.extend(next);
        reps.push(r);
    }
    let mut gram = vec![vec![FpScalar::raw(0, p); reps.len()]; reps.len()];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            let c = comm(a, b);
            if dlog[c] == usize::MAX {
                return Ok(Verdict::reject(
                    "commutator",
                    format!("[{a},{b}] is not central"),
                ));
            }
            gram[i][j] = FpScalar::raw(dlog[c] as u32, p);
        }
    }
    if reps.len() % 2 != 0 {
        return Ok(Verdict::reject(
            "rank",
            format!("G/Z has odd rank {}", reps.len()),
        ));
    }
    let mut ech = Echelon::new(p, reps.len());
    for row in &gram {
        ech.insert(row.iter().map(|s| s.value()).collect());
    }
    if ech.rank() != reps.len() {
        return Ok(Verdict::reject("degenerate", "commutator form is degenerate"));
    }
    Ok(Verdict::Accept(CommutationForm {
        p,
        n: reps.len() / 2,
        representatives: reps,
        center_generator: zgen,
        gram,
    }))
}

/// A vertex → vector assignment checked to satisfy `edge(u,v) ⟺ ⟨ℓ(u),ℓ(v)⟩ = 0`.
///
/// Only obtainable through [`OrthoLabeling::certify`], which runs the full
/// vertex-pair check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoLabeling {
    p: u32,
    n: usize,
    map: Vec<SympVector>,
}

/// On-disk form: `{"p": p, "n": n, "map": [[2n coords] per vertex]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrthoLabelingFile {
    pub p: u32,
    pub n: usize,
    pub map: Vec<Vec<u32>>,
}

impl OrthoLabeling {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn map(&self) -> &[SympVector] {
        &self.map
    }

    /// Vertex carrying the zero vector.
    pub fn zero_vertex(&self) -> usize {
        self.map
            .iter()
            .position(|v| v.is_zero())
            .expect("a certified labeling is a bijection onto V(2n,p)")
    }

    /// Checks bijectivity onto `V(2n,p)` and every vertex pair.
    pub fn certify(x: &Graph, p: u32, n: usize, map: Vec<SympVector>) -> Result<Verdict<Self>> {
        let size = check_ortho_limits(n, p)?;
        if x.n_vertices() != size || map.len() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                found: if map.len() != size { map.len() } else { x.n_vertices() },
            });
        }
        let mut seen = vec![false; size];
        for v in &map {
            if v.p != p || v.coords.len() != 2 * n || v.coords.iter().any(|&c| c >= p) {
                return Err(Error::invalid("vector does not belong to V(2n,p)"));
            }
            let i = v.index();
            if seen[i] {
                return Err(Error::invalid(format!("vector index {i} assigned twice")));
            }
            seen[i] = true;
        }
        for u in 0..size {
            for w in u + 1..size {
                let zero = form_raw(p, &map[u].coords, &map[w].coords) == 0;
                if zero != x.has_edge(u, w) {
                    let what = if zero {
                        "orthogonal vectors on non-adjacent vertices"
                    } else {
                        "adjacent vertices carry non-orthogonal vectors"
                    };
                    return Ok(Verdict::Reject(
                        Rejection::new("verify", what).with_witness(vec![u, w]),
                    ));
                }
            }
        }
        Ok(Verdict::Accept(OrthoLabeling { p, n, map }))
    }

    pub fn to_file(&self) -> OrthoLabelingFile {
        OrthoLabelingFile {
            p: self.p,
            n: self.n,
            map: self.map.iter().map(|v| v.coords.clone()).collect(),
        }
    }

    pub fn from_file(x: &Graph, f: OrthoLabelingFile) -> Result<Verdict<Self>> {
        check_prime(f.p)?;
        let map = f
            .map
            .into_iter()
            .map(|c| SympVector::new(f.p, c))
            .collect::<Result<Vec<_>>>()?;
        OrthoLabeling::certify(x, f.p, f.n, map)
    }
}

/// The orthogonality graph of the standard form on `V(2n,p)`; vertex `i` is
/// the vector with index `i`.
pub fn orthogonality_graph(n: usize, p: u32) -> Result<(Graph, OrthoLabeling)> {
    let size = check_ortho_limits(n, p)?;
    let vecs: Vec<SympVector> = (0..size).map(|i| SympVector::from_index(p, n, i)).collect();
    let mut x = Graph::new(size);
    for u in 0..size {
        for w in u + 1..size {
            if form_raw(p, &vecs[u].coords, &vecs[w].coords) == 0 {
                x.add_edge(u, w);
            }
        }
    }
    let lab = OrthoLabeling { p, n, map: vecs };
    Ok((x, lab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{closed_twin_classes, dominant_vertices};
    use crate::group::{make_cyclic, make_extraspecial, ExtraspecialVariant};
    use proptest::prelude::*;

    #[test]
    fn scalar_ops() {
        let a = FpScalar::new(-1, 5).unwrap();
        assert_eq!(a.value(), 4);
        assert_eq!((a * a).value(), 1);
        assert_eq!((a + FpScalar::new(3, 5).unwrap()).value(), 2);
        assert_eq!(a.inv().unwrap().value(), 4);
        assert!(FpScalar::new(0, 5).unwrap().inv().is_none());
        assert!(FpScalar::new(1, 6).is_err());
    }

    #[test]
    fn basis_relations() {
        let (p, n) = (5, 2);
        for i in 1..=n {
            for j in 1..=n {
                let ef = eval_form(&SympVector::e(p, n, i), &SympVector::f(p, n, j)).unwrap();
                assert_eq!(ef.value(), u32::from(i == j));
                let ee = eval_form(&SympVector::e(p, n, i), &SympVector::e(p, n, j)).unwrap();
                assert!(ee.is_zero());
                let ff = eval_form(&SympVector::f(p, n, i), &SympVector::f(p, n, j)).unwrap();
                assert!(ff.is_zero());
            }
        }
    }

    #[test]
    fn form_example_mod_three() {
        let u = SympVector::new(3, vec![1, 1]).unwrap();
        let v = SympVector::new(3, vec![1, 2]).unwrap();
        assert_eq!(eval_form(&u, &v).unwrap().value(), 1);
    }

    #[test]
    fn form_mismatch_errors() {
        let u = SympVector::zero(3, 1);
        assert!(eval_form(&u, &SympVector::zero(3, 2)).is_err());
        assert!(eval_form(&u, &SympVector::zero(5, 1)).is_err());
    }

    #[test]
    fn commutation_form_of_e27() {
        for variant in [ExtraspecialVariant::ExponentP, ExtraspecialVariant::ExponentP2] {
            let g = make_extraspecial(3, 1, variant).unwrap();
            let f = commutation_form(&g).unwrap().accepted().unwrap();
            let vals: Vec<Vec<u32>> = f.gram.iter().map(|r| r.iter().map(|s| s.value()).collect()).collect();
            assert_eq!(vals, vec![vec![0, 1], vec![2, 0]]);
        }
        assert!(commutation_form(&make_cyclic(27).unwrap()).unwrap().is_reject());
    }

    #[test]
    fn commutation_form_nondegenerate_everywhere() {
        for (p, n) in [(3, 1), (3, 2), (5, 1), (5, 2)] {
            for variant in [ExtraspecialVariant::ExponentP, ExtraspecialVariant::ExponentP2] {
                let g = make_extraspecial(p, n, variant).unwrap();
                let f = commutation_form(&g).unwrap().accepted().unwrap();
                assert_eq!(f.n, n);
                for i in 0..2 * n {
                    assert!(f.gram[i][i].is_zero());
                    for j in 0..2 * n {
                        assert_eq!(f.gram[i][j], -f.gram[j][i]);
                    }
                }
            }
        }
    }

    #[test]
    fn small_orthogonality_graphs() {
        let (x, _) = orthogonality_graph(1, 3).unwrap();
        assert_eq!(x.n_vertices(), 9);
        assert_eq!(dominant_vertices(&x), vec![0]);
        assert_eq!(x.edge_count(), 8 + 4);
        let rest: Vec<usize> = (1..9).collect();
        assert!(closed_twin_classes(&x, &rest).classes.iter().all(|c| c.len() == 2));

        let (y, _) = orthogonality_graph(1, 2).unwrap();
        assert_eq!(y.edge_count(), 3);

        let (z, _) = orthogonality_graph(2, 3).unwrap();
        assert_eq!(z.n_vertices(), 81);
        assert!((1..81).all(|v| z.degree(v) == 26));
    }

    #[test]
    fn ground_truth_certifies() {
        let (x, lab) = orthogonality_graph(2, 3).unwrap();
        let again = OrthoLabeling::certify(&x, 3, 2, lab.map().to_vec()).unwrap();
        assert!(again.is_accept());
        let file = lab.to_file();
        let s = serde_json::to_string(&file).unwrap();
        let back: OrthoLabelingFile = serde_json::from_str(&s).unwrap();
        assert!(OrthoLabeling::from_file(&x, back).unwrap().is_accept());
    }

    #[test]
    fn limits() {
        assert!(orthogonality_graph(7, 2).is_err());
        assert!(orthogonality_graph(3, 7).is_err());
        assert!(orthogonality_graph(1, 4).is_err());
        assert_eq!(half_dimension(81, 3), Some(2));
        assert_eq!(half_dimension(27, 3), None);
        assert_eq!(half_dimension(1, 3), None);
    }

    #[test]
    fn non_degenerate_on_grid() {
        for (n, p) in [(1, 2), (1, 3), (2, 2), (2, 3), (1, 5)] {
            let size = (p as usize).pow(2 * n as u32);
            for i in 1..size {
                let v = SympVector::from_index(p, n, i);
                assert!((0..size).any(|j| !eval_form(&v, &SympVector::from_index(p, n, j)).unwrap().is_zero()));
            }
        }
    }

    proptest! {
        #[test]
        fn form_is_alternating_and_bilinear(
            a in proptest::collection::vec(0u32..5, 4),
            b in proptest::collection::vec(0u32..5, 4),
            c in proptest::collection::vec(0u32..5, 4),
            s in 0u32..5,
        ) {
            let (u, v, w) = (
                SympVector::new(5, a).unwrap(),
                SympVector::new(5, b).unwrap(),
                SympVector::new(5, c).unwrap(),
            );
            prop_assert!(eval_form(&u, &u).unwrap().is_zero());
            prop_assert_eq!(eval_form(&u, &v).unwrap(), -eval_form(&v, &u).unwrap());
            let lhs = eval_form(&u.scale(s).add(&v), &w).unwrap();
            let rhs = FpScalar::new(s as i64, 5).unwrap() * eval_form(&u, &w).unwrap() + eval_form(&v, &w).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
