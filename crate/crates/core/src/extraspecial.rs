//! Recognizing commuting graphs of extraspecial groups.
//!
//! For `|V| = p^(2n+1)` the `p` dominant vertices are the centre, and every
//! other twin class has `p² − p` vertices: the non-central part of a coset
//! family `⟨x⟩Z`. Collapsing the classes and splitting each into `p − 1`
//! copies gives the orthogonality graph of the commutator form on `G/Z`; once
//! that is labeled by vectors, class members are labeled by the group elements
//! `(j; w)` of the exponent-`p` group.

use crate::commuting::{build_commuting_graph, verify_labeling, CertifiedLabeling, Labeling};
use crate::error::{Error, Result};
use crate::graph::{closed_twin_classes, dominant_vertices, Graph};
use crate::group::{extraspecial_index, is_prime, make_dihedral, make_extraspecial, ExtraspecialVariant, GroupTable};
use crate::symplectic::{check_ortho_limits, recognize_orthogonality_graph};
use crate::verdict::{Rejection, Verdict};

/// The collapsed graph and, for each of its vertices, the input vertices it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    pub p: u32,
    pub n: usize,
    pub ortho_graph: Graph,
    /// `back_map[0]` is the centre; copy `j` of class `c` is ortho vertex
    /// `1 + c(p−1) + j` and stands for the `j`-th run of `p` vertices of the
    /// class in ascending order.
    pub back_map: Vec<Vec<usize>>,
    pub zero_vertex: usize,
}

/// `(p, k)` with `n = p^k`, `p` prime, if `n` is a prime power.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|&d| n % d == 0)?;
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Builds the orthogonality graph `X_o` from a candidate commuting graph on
/// `p^(2n+1)` vertices.
pub fn quotient_to_ortho(x: &Graph, p: u32, n: usize) -> Result<Verdict<QuotientMap>> {
    if !is_prime(p as u64) || n == 0 {
        return Err(Error::invalid(format!("need a prime p and n >= 1, got p={p}, n={n}")));
    }
    let pu = p as usize;
    let order = pu
        .checked_pow(2 * n as u32 + 1)
        .ok_or_else(|| Error::invalid("p^(2n+1) overflows"))?;
    if x.n_vertices() != order {
        return Err(Error::DimensionMismatch {
            expected: order,
            found: x.n_vertices(),
        });
    }
    let z = dominant_vertices(x);
    if z.len() != pu {
        return Ok(Verdict::Reject(
            Rejection::new(
                "dominant-vertex",
                format!("expected {p} dominant vertices, found {}", z.len()),
            )
            .with_witness(z),
        ));
    }
    let zset = x.vertex_set(z.iter().copied());
    let rest: Vec<usize> = (0..order).filter(|&v| !zset.contains(v)).collect();
    let twins = closed_twin_classes(x, &rest);
    let want_classes = (pu.pow(2 * n as u32) - 1) / (pu - 1);
    if twins.len() != want_classes {
        return Ok(Verdict::reject(
            "twin-classes",
            format!("expected {want_classes} twin classes, found {}", twins.len()),
        ));
    }
    if let Some(c) = twins.classes.iter().find(|c| c.len() != pu * pu - pu) {
        return Ok(Verdict::Reject(
            Rejection::new(
                "twin-classes",
                format!("twin class of size {}, expected {}", c.len(), pu * pu - pu),
            )
            .with_witness(c.clone()),
        ));
    }
    let copies = pu - 1;
    let size = 1 + want_classes * copies;
    let mut xo = Graph::new(size);
    let mut back_map = Vec::with_capacity(size);
    back_map.push(z);
    for class in &twins.classes {
        for chunk in class.chunks(pu) {
            back_map.push(chunk.to_vec());
        }
    }
    for v in 1..size {
        xo.add_edge(0, v);
    }
    let reps: Vec<usize> = twins.classes.iter().map(|c| c[0]).collect();
    for (a, &ra) in reps.iter().enumerate() {
        let base_a = 1 + a * copies;
        for j in 0..copies {
            for k in j + 1..copies {
                xo.add_edge(base_a + j, base_a + k);
            }
        }
        for (b, &rb) in reps.iter().enumerate().skip(a + 1) {
            if x.has_edge(ra, rb) {
                let base_b = 1 + b * copies;
                for j in 0..copies {
                    for k in 0..copies {
                        xo.add_edge(base_a + j, base_b + k);
                    }
                }
            }
        }
    }
    Ok(Verdict::Accept(QuotientMap {
        p,
        n,
        ortho_graph: xo,
        back_map,
        zero_vertex: 0,
    }))
}

/// Decides whether `x` is the commuting graph of an extraspecial group and,
/// if so, labels it with elements of the exponent-`p` group of that order.
///
/// Orders `p³` go to [`recognize_p3`] (any prime). For `p = 2` and larger
/// orders the answer is `Unsupported`.
pub fn recognize_extraspecial(x: &Graph) -> Result<Verdict<CertifiedLabeling>> {
    let order = x.n_vertices();
    let Some((p, k)) = prime_power(order).filter(|&(_, k)| k >= 3 && k % 2 == 1) else {
        return Ok(Verdict::reject(
            "order",
            format!("{order} is not p^(2n+1) with n >= 1"),
        ));
    };
    if k == 3 {
        return recognize_p3(x);
    }
    if p == 2 {
        return Ok(Verdict::Unsupported(
            "2-groups of order 2^(2n+1) with n >= 2 are outside this recognizer".into(),
        ));
    }
    let n = (k as usize - 1) / 2;
    check_ortho_limits(n, p as u32)?;
    let q = match quotient_to_ortho(x, p as u32, n)? {
        Verdict::Accept(q) => q,
        Verdict::Reject(r) => return Ok(Verdict::Reject(r)),
        Verdict::Unsupported(s) => return Ok(Verdict::Unsupported(s)),
    };
    let ortho = match recognize_orthogonality_graph(&q.ortho_graph, p as u32)? {
        Verdict::Accept(l) => l,
        Verdict::Reject(r) => {
            return Ok(Verdict::Reject(Rejection {
                stage: format!("ortho/{}", r.stage),
                reason: r.reason,
                witness: Vec::new(),
            }))
        }
        Verdict::Unsupported(s) => return Ok(Verdict::Unsupported(s)),
    };
    let group = make_extraspecial(p, n, ExtraspecialVariant::ExponentP)?;
    let mut map = vec![0; order];
    for (v, members) in q.back_map.iter().enumerate() {
        let w = &ortho.map()[v];
        for (j, &u) in members.iter().enumerate() {
            map[u] = extraspecial_index(p, j, w.coords());
        }
    }
    verify_labeling(x, Labeling { group, map })
}

/// Order-`p³` case: a sunflower of `p + 1` cliques of size `p²` over a
/// `p`-element core. The witness is the exponent-`p` group for odd `p` and
/// `D_4` for `p = 2`.
pub fn recognize_p3(x: &Graph) -> Result<Verdict<CertifiedLabeling>> {
    let order = x.n_vertices();
    let Some((p, 3)) = prime_power(order) else {
        return Ok(Verdict::reject("order", format!("{order} is not a prime cube")));
    };
    let z = dominant_vertices(x);
    if z.len() != p {
        return Ok(Verdict::Reject(
            Rejection::new(
                "dominant-vertex",
                format!("expected {p} dominant vertices, found {}", z.len()),
            )
            .with_witness(z),
        ));
    }
    let zset = x.vertex_set(z.iter().copied());
    let rest: Vec<usize> = (0..order).filter(|&v| !zset.contains(v)).collect();
    let twins = closed_twin_classes(x, &rest);
    if twins.len() != p + 1 || twins.classes.iter().any(|c| c.len() != p * p - p) {
        return Ok(Verdict::reject(
            "twin-classes",
            format!(
                "expected {} twin classes of size {}, found sizes {:?}",
                p + 1,
                p * p - p,
                twins.size_profile()
            ),
        ));
    }
    for (a, ca) in twins.classes.iter().enumerate() {
        for cb in &twins.classes[a + 1..] {
            if x.has_edge(ca[0], cb[0]) {
                return Ok(Verdict::Reject(
                    Rejection::new("petals", "two petals are adjacent").with_witness(vec![ca[0], cb[0]]),
                ));
            }
        }
    }
    let group = if p == 2 {
        make_dihedral(4)?
    } else {
        make_extraspecial(p, 1, ExtraspecialVariant::ExponentP)?
    };
    let map = match_sunflower(&group, &z, &twins.classes)?;
    verify_labeling(x, Labeling { group, map })
}

/// Sends the input core to the witness centre and the `i`-th input petal to
/// the `i`-th petal of the witness graph, both in ascending order.
fn match_sunflower(group: &GroupTable, core: &[usize], petals: &[Vec<usize>]) -> Result<Vec<usize>> {
    let (w, _) = build_commuting_graph(group);
    let wz = dominant_vertices(&w);
    let wset = w.vertex_set(wz.iter().copied());
    let wrest: Vec<usize> = (0..w.n_vertices()).filter(|&v| !wset.contains(v)).collect();
    let wpetals = closed_twin_classes(&w, &wrest);
    if wz.len() != core.len() || wpetals.len() != petals.len() {
        return Err(Error::invalid("witness group does not have the expected sunflower shape"));
    }
    let mut map = vec![0; group.order()];
    for (&v, &g) in core.iter().zip(&wz) {
        map[v] = g;
    }
    for (pin, pw) in petals.iter().zip(&wpetals.classes) {
        for (&v, &g) in pin.iter().zip(pw) {
            map[v] = g;
        }
    }
    Ok(map)
}
