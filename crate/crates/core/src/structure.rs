//! Frobenius groups and odd dihedral groups, read off component structure.
//!
//! In `Γ(N ⋊ H)` for a Frobenius group with kernel of order `n` and
//! complement of order `k`, the identity is the only dominant vertex, and
//! deleting it leaves the kernel's non-identity elements as one component and
//! the `n` conjugates of the complement as components of size `k − 1`.

use crate::commuting::{verify_labeling, CertifiedLabeling, Labeling};
use crate::error::{Error, Result};
use crate::graph::{connected_components, dominant_vertices, Graph};
use crate::group::{gcd, make_dihedral};
use crate::verdict::{Rejection, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusCertificate {
    /// Kernel order.
    pub n: usize,
    /// Complement order.
    pub k: usize,
    pub dominant_vertex: usize,
    pub kernel_component: Vec<usize>,
    pub complement_components: Vec<Vec<usize>>,
    /// One vertex per component (kernel first) adjacent to the rest of it.
    pub component_dominants: Vec<usize>,
}

/// Tests the Frobenius criterion for kernel order `n` and complement order `k`.
///
/// Errors unless `|x| = nk`, `n, k > 1` and `gcd(n, k) = 1`.
pub fn recognize_frobenius(x: &Graph, n: usize, k: usize) -> Result<Verdict<FrobeniusCertificate>> {
    if n < 2 || k < 2 {
        return Err(Error::invalid(format!("kernel and complement orders must exceed 1, got {n}, {k}")));
    }
    if gcd(n, k) != 1 {
        return Err(Error::invalid(format!("gcd({n}, {k}) != 1")));
    }
    if n.checked_mul(k) != Some(x.n_vertices()) {
        return Err(Error::DimensionMismatch {
            expected: n * k,
            found: x.n_vertices(),
        });
    }
    let dom = dominant_vertices(x);
    if dom.len() != 1 {
        return Ok(Verdict::Reject(
            Rejection::new(
                "dominant-vertex",
                format!("expected one dominant vertex, found {}", dom.len()),
            )
            .with_witness(dom),
        ));
    }
    let d = dom[0];
    let keep: Vec<usize> = (0..x.n_vertices()).filter(|&v| v != d).collect();
    let mut comps: Vec<Vec<usize>> = connected_components(&crate::graph::induced_subgraph(x, &keep))
        .into_iter()
        .map(|c| c.into_iter().map(|i| keep[i]).collect())
        .collect();
    let kernel_pos = comps.iter().position(|c| c.len() == n - 1);
    let complements = comps.iter().filter(|c| c.len() == k - 1).count();
    if kernel_pos.is_none() || complements != n || comps.len() != n + 1 {
        let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        return Ok(Verdict::reject(
            "components",
            format!(
                "expected one component of size {} and {n} of size {}, found sizes {sizes:?}",
                n - 1,
                k - 1
            ),
        ));
    }
    let kernel = comps.remove(kernel_pos.expect("checked above"));
    let mut component_dominants = Vec::with_capacity(n + 1);
    for c in std::iter::once(&kernel).chain(comps.iter()) {
        let centre = c
            .iter()
            .copied()
            .find(|&v| c.iter().all(|&w| w == v || x.has_edge(v, w)));
        match centre {
            Some(v) => component_dominants.push(v),
            None => {
                return Ok(Verdict::Reject(
                    Rejection::new("component-dominant", "a component has no vertex adjacent to all of it")
                        .with_witness(c.clone()),
                ))
            }
        }
    }
    Ok(Verdict::Accept(FrobeniusCertificate {
        n,
        k,
        dominant_vertex: d,
        kernel_component: kernel,
        complement_components: comps,
        component_dominants,
    }))
}

/// Every coprime split `|x| = nk` that passes [`recognize_frobenius`].
pub fn frobenius_splits(x: &Graph) -> Vec<(usize, usize)> {
    let total = x.n_vertices();
    if total < 4 {
        return Vec::new();
    }
    (2..total)
        .filter(|&n| total % n == 0)
        .map(|n| (n, total / n))
        .filter(|&(n, k)| k > 1 && gcd(n, k) == 1)
        .filter(|&(n, k)| matches!(recognize_frobenius(x, n, k), Ok(Verdict::Accept(_))))
        .collect()
}

/// Recognizes `Γ(D_m)` for odd `m`: one dominant vertex, `m` pendants, and
/// an `m`-clique through the dominant vertex.
///
/// Errors unless `|x| = 2m` with `m` odd and at least 3.
pub fn recognize_dihedral_odd(x: &Graph) -> Result<Verdict<CertifiedLabeling>> {
    let total = x.n_vertices();
    if total % 2 != 0 || total < 6 || (total / 2) % 2 == 0 {
        return Err(Error::invalid(format!(
            "{total} vertices is not 2m with m odd and m >= 3"
        )));
    }
    let m = total / 2;
    let dom = dominant_vertices(x);
    if dom.len() != 1 {
        return Ok(Verdict::Reject(
            Rejection::new(
                "dominant-vertex",
                format!("expected one dominant vertex, found {}", dom.len()),
            )
            .with_witness(dom),
        ));
    }
    let d = dom[0];
    let pendants: Vec<usize> = (0..total).filter(|&v| v != d && x.degree(v) == 1).collect();
    if pendants.len() != m {
        return Ok(Verdict::reject(
            "pendants",
            format!("expected {m} pendant vertices, found {}", pendants.len()),
        ));
    }
    let pset = x.vertex_set(pendants.iter().copied());
    let rotations: Vec<usize> = (0..total).filter(|&v| v != d && !pset.contains(v)).collect();
    for (i, &u) in rotations.iter().enumerate() {
        if let Some(&v) = rotations[i + 1..].iter().find(|&&v| !x.has_edge(u, v)) {
            return Ok(Verdict::Reject(
                Rejection::new("rotation-clique", format!("no {m}-clique through the dominant vertex"))
                    .with_witness(vec![u, v]),
            ));
        }
    }
    let group = make_dihedral(m)?;
    // make_dihedral orders elements 1, b, .., b^(m-1), a, ab, .., ab^(m-1)
    let mut map = vec![0; total];
    map[d] = 0;
    for (i, &v) in rotations.iter().enumerate() {
        map[v] = i + 1;
    }
    for (i, &v) in pendants.iter().enumerate() {
        map[v] = m + i;
    }
    verify_labeling(x, Labeling { group, map })
}
