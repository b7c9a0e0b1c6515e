//! The inductive layer-by-layer labeling with independently chosen scalars.
//!
//! Kept as a baseline: it recurses on the common neighbourhood of `e_1, f_1`,
//! then labels each vertex of `V[e_1]`, `V[f_1]`, `V[e_1 + βf_1]` by matching
//! its neighbourhood in the lower layer, with the `p − 1` scalar multiples
//! handed out in ascending vertex order. The scalar choices on different
//! classes are not coordinated, so for `p > 2` the result usually fails the
//! final check. [`super::recognize_orthogonality_graph`] is the real recognizer.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{check_ortho_limits, check_prime, half_dimension, OrthoLabeling, SympVector};
use crate::error::Result;
use crate::graph::{closed_twin_classes, dominant_vertices, Graph};
use crate::verdict::{Rejection, Verdict};

/// Runs the uncoordinated labeling and then the full vertex-pair check.
pub fn recognize_orthogonality_graph_naive(x: &Graph, p: u32) -> Result<Verdict<OrthoLabeling>> {
    check_prime(p)?;
    let size = x.n_vertices();
    let Some(n) = half_dimension(size, p) else {
        return Ok(Verdict::reject("size", format!("{size} vertices is not a power of {}", p * p)));
    };
    check_ortho_limits(n, p)?;
    let dom = dominant_vertices(x);
    if dom.len() != 1 {
        return Ok(Verdict::Reject(
            Rejection::new("dominant-vertex", format!("found {} dominant vertices", dom.len()))
                .with_witness(dom),
        ));
    }
    let mut labels: Vec<Option<Vec<u32>>> = vec![None; size];
    let layer = Layer { x, p, n, zero: dom[0] };
    let all: Vec<usize> = (0..size).collect();
    if let Err(r) = layer.label(&all, 0, &mut labels) {
        return Ok(Verdict::Reject(r));
    }
    let map = labels
        .into_iter()
        .map(|l| SympVector::from_raw(p, l.expect("every vertex labeled")))
        .collect();
    OrthoLabeling::certify(x, p, n, map)
}

struct Layer<'a> {
    x: &'a Graph,
    p: u32,
    n: usize,
    zero: usize,
}

fn structure(msg: impl Into<String>) -> Rejection {
    Rejection::new("layer-structure", msg)
}

impl Layer<'_> {
    /// Labels `s` (which contains the zero vertex) with vectors supported on
    /// coordinates `i..n` and `n+i..2n`.
    fn label(&self, s: &[usize], i: usize, labels: &mut [Option<Vec<u32>>]) -> std::result::Result<(), Rejection> {
        let (x, p, n) = (self.x, self.p, self.n);
        labels[self.zero] = Some(vec![0; 2 * n]);
        if i == n {
            return if s.len() == 1 {
                Ok(())
            } else {
                Err(structure(format!("innermost layer has {} vertices", s.len())))
            };
        }
        let e = *s
            .iter()
            .find(|&&v| v != self.zero)
            .ok_or_else(|| structure("layer has no nonzero vertex"))?;
        let f = *s
            .iter()
            .find(|&&v| v != e && !x.has_edge(e, v))
            .ok_or_else(|| structure("no vertex outside the neighbourhood of e"))?;
        let inner: Vec<usize> = s
            .iter()
            .copied()
            .filter(|&v| x.has_edge(v, e) && x.has_edge(v, f))
            .collect();
        self.label(&inner, i + 1, labels)?;

        let inner_set = x.vertex_set(inner.iter().copied());
        // neighbourhood inside the lower layer; closed for vertices of that layer
        let key = |v: usize| -> FixedBitSet {
            let mut k = x.row(v).clone();
            k.intersect_with(&inner_set);
            if inner_set.contains(v) {
                k.insert(v);
            }
            k
        };
        // projective twins λu share a key
        let mut by_key: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
        for &u in &inner {
            by_key.entry(key(u)).or_default().push(u);
        }

        let unit = |t: usize| {
            let mut v = vec![0u32; 2 * n];
            v[t] = 1;
            v
        };
        let outer: Vec<usize> = s.iter().copied().filter(|v| !inner_set.contains(*v)).collect();
        let near = |v: usize, a: usize| v == a || x.has_edge(v, a);

        let sector_e: Vec<usize> = outer.iter().copied().filter(|&v| near(v, e) && !near(v, f)).collect();
        self.label_sector(&sector_e, &unit(i), &by_key, &key, labels)?;
        let sector_f: Vec<usize> = outer.iter().copied().filter(|&v| near(v, f) && !near(v, e)).collect();
        self.label_sector(&sector_f, &unit(n + i), &by_key, &key, labels)?;

        let mixed: Vec<usize> = outer.iter().copied().filter(|&v| !near(v, e) && !near(v, f)).collect();
        let pure: Vec<usize> = mixed.iter().copied().filter(|&v| key(v) == inner_set).collect();
        let lines = closed_twin_classes(x, &pure);
        if lines.len() != p as usize - 1 {
            return Err(structure(format!(
                "expected {} points e+βf, found {}",
                p - 1,
                lines.len()
            )));
        }
        let mut covered = 0;
        for (b, class) in lines.classes.iter().enumerate() {
            let rep = class[0];
            let mut dir = unit(i);
            dir[n + i] = b as u32 + 1;
            let sector: Vec<usize> = mixed.iter().copied().filter(|&v| near(v, rep)).collect();
            covered += sector.len();
            self.label_sector(&sector, &dir, &by_key, &key, labels)?;
        }
        if covered != mixed.len() {
            return Err(structure("points off e, f are not covered by the lines e+βf"));
        }
        Ok(())
    }

    /// Labels a sector `{αd + u}`. Vertices matching the twin class of
    /// lower-layer vertex `u` are handed the pairs `(α, u')` for `u'` in the
    /// class in ascending order, `α` major.
    fn label_sector(
        &self,
        sector: &[usize],
        dir: &[u32],
        by_key: &HashMap<FixedBitSet, Vec<usize>>,
        key: &dyn Fn(usize) -> FixedBitSet,
        labels: &mut [Option<Vec<u32>>],
    ) -> std::result::Result<(), Rejection> {
        let p = self.p;
        let mut groups: HashMap<FixedBitSet, Vec<usize>> = HashMap::new();
        for &v in sector {
            let k = key(v);
            if !by_key.contains_key(&k) {
                return Err(structure(format!("vertex {v} matches no lower-layer vertex")));
            }
            groups.entry(k).or_default().push(v);
        }
        if groups.len() != by_key.len() {
            return Err(structure("sector does not cover the lower layer"));
        }
        for (k, mut vs) in groups {
            let class = &by_key[&k];
            if vs.len() != (p as usize - 1) * class.len() {
                return Err(structure(format!("sector group of size {}", vs.len())));
            }
            vs.sort_unstable();
            let mut class = class.clone();
            class.sort_unstable();
            for (t, v) in vs.into_iter().enumerate() {
                let a = (t / class.len()) as u32 + 1;
                let base = labels[class[t % class.len()]].clone().expect("lower layer labeled first");
                let coords = base.iter().zip(dir).map(|(&b, &d)| (b + a * d) % p).collect();
                labels[v] = Some(coords);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{permute, random_permutation};
    use crate::symplectic::orthogonality_graph;

    #[test]
    fn works_when_scalars_are_trivial() {
        for n in 1..=2 {
            let (x, _) = orthogonality_graph(n, 2).unwrap();
            let y = permute(&x, &random_permutation(x.n_vertices(), 5)).unwrap();
            assert!(recognize_orthogonality_graph_naive(&y, 2).unwrap().is_accept());
        }
    }

    #[test]
    fn single_layer_always_works() {
        let (x, _) = orthogonality_graph(1, 5).unwrap();
        for seed in 0..5 {
            let y = permute(&x, &random_permutation(25, seed)).unwrap();
            assert!(recognize_orthogonality_graph_naive(&y, 5).unwrap().is_accept());
        }
    }
}
