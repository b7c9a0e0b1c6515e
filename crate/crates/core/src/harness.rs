//! Test corpus, negative fixtures, and brute-force oracles.
//!
//! The oracles work straight from the multiplication table and share no
//! helpers with the main code paths, so agreement between the two means
//! something.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commuting::build_commuting_graph;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::{
    direct_product, make_alternating, make_cyclic, make_dihedral, make_extraspecial, make_quaternion,
    make_semidirect_cyclic, ExtraspecialVariant, GroupTable,
};

pub const CONJUGACY_ORACLE_LIMIT: usize = 4096;
pub const ORACLE_LIMIT: usize = 512;

type Builder = Box<dyn Fn() -> Result<GroupTable>>;

fn extraspecial(p: usize, n: usize, v: u8) -> Result<GroupTable> {
    make_extraspecial(p, n, ExtraspecialVariant::from_number(v)?)
}

/// Base (non-product) corpus entries with their orders, built lazily.
fn base_entries() -> Vec<(String, usize, Builder)> {
    let mut out: Vec<(String, usize, Builder)> = Vec::new();
    for n in 1..=32 {
        out.push((format!("C{n}"), n, Box::new(move || make_cyclic(n))));
    }
    for m in [3, 4, 5, 15] {
        out.push((format!("D{m}"), 2 * m, Box::new(move || make_dihedral(m))));
    }
    out.push(("Q8".into(), 8, Box::new(|| Ok(make_quaternion()))));
    for p in [3usize, 5] {
        for n in [1usize, 2] {
            for v in [1u8, 2] {
                let order = p.pow(2 * n as u32 + 1);
                out.push((format!("E{order}v{v}"), order, Box::new(move || extraspecial(p, n, v))));
            }
        }
    }
    for (q, k, r) in [(7, 3, 2), (5, 4, 2), (15, 2, 14)] {
        out.push((
            format!("C{q}:C{k}[{r}]"),
            q * k,
            Box::new(move || make_semidirect_cyclic(q, k, r)),
        ));
    }
    out.push(("A4".into(), 12, Box::new(|| make_alternating(4))));
    out
}

/// Pairs of base entries whose direct products join the corpus.
pub const PRODUCT_PAIRS: [(&str, &str); 16] = [
    ("D3", "C2"),
    ("D3", "C4"),
    ("D4", "C2"),
    ("Q8", "C2"),
    ("Q8", "C3"),
    ("D5", "C3"),
    ("A4", "C2"),
    ("D3", "D3"),
    ("D4", "Q8"),
    ("E27v1", "C2"),
    ("E27v2", "C3"),
    ("D15", "C2"),
    ("C7:C3[2]", "C3"),
    ("A4", "A4"),
    ("E125v1", "C2"),
    ("C5:C4[2]", "D3"),
];

/// Named groups of order at most `max_order`: the base families plus the
/// products in [`PRODUCT_PAIRS`].
pub fn corpus(max_order: usize) -> Result<Vec<(String, GroupTable)>> {
    let base = base_entries();
    let mut out = Vec::new();
    for (name, order, build) in &base {
        if *order <= max_order {
            out.push((name.clone(), build()?));
        }
    }
    for (a, b) in PRODUCT_PAIRS {
        let find = |name: &str| base.iter().find(|e| e.0 == name).expect("pair names a base entry");
        let (ea, eb) = (find(a), find(b));
        if ea.1 * eb.1 <= max_order {
            out.push((format!("{a}x{b}"), direct_product(&(ea.2)()?, &(eb.2)()?)));
        }
    }
    Ok(out)
}

/// One group by corpus name (products as `AxB`).
pub fn corpus_group(name: &str) -> Result<GroupTable> {
    let base = base_entries();
    let lookup = |n: &str| {
        base.iter()
            .find(|e| e.0 == n)
            .ok_or_else(|| Error::invalid(format!("no corpus group named {n}")))
            .and_then(|e| (e.2)())
    };
    if base.iter().any(|e| e.0 == name) {
        return lookup(name);
    }
    // base names never contain 'x'
    let (a, b) = name
        .split_once('x')
        .ok_or_else(|| Error::invalid(format!("no corpus group named {name}")))?;
    Ok(direct_product(&lookup(a)?, &lookup(b)?))
}

fn check_size(g: &GroupTable, limit: usize) -> Result<usize> {
    let n = g.order();
    if n > limit {
        return Err(Error::limit("oracle group order", limit, n));
    }
    Ok(n)
}

fn identity(g: &GroupTable) -> usize {
    (0..g.order()).find(|&e| g.mul(e, e) == e).expect("a group has an idempotent")
}

/// Number of conjugacy classes, by orbit enumeration.
pub fn oracle_conjugacy_count(g: &GroupTable) -> Result<usize> {
    let n = check_size(g, CONJUGACY_ORACLE_LIMIT)?;
    let e = identity(g);
    let inv: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| g.mul(a, b) == e).expect("inverse exists"))
        .collect();
    let mut seen = vec![false; n];
    let mut count = 0;
    for x in 0..n {
        if seen[x] {
            continue;
        }
        count += 1;
        for h in 0..n {
            seen[g.mul(g.mul(h, x), inv[h])] = true;
        }
    }
    Ok(count)
}

/// Maximal abelian subgroups as sorted element lists, in sorted order.
///
/// Grows abelian subgroups from the centre one element at a time (subgroup
/// closure), stopping where nothing outside commutes with everything inside.
pub fn oracle_max_abelian(g: &GroupTable) -> Result<Vec<Vec<usize>>> {
    let n = check_size(g, ORACLE_LIMIT)?;
    let commute = |a: usize, b: usize| g.mul(a, b) == g.mul(b, a);
    let closure = |gens: &BTreeSet<usize>| -> BTreeSet<usize> {
        let mut s = gens.clone();
        s.insert(identity(g));
        loop {
            let prods: Vec<usize> = s
                .iter()
                .flat_map(|&a| s.iter().map(move |&b| g.mul(a, b)))
                .filter(|c| !s.contains(c))
                .collect();
            if prods.is_empty() {
                return s;
            }
            s.extend(prods);
        }
    };
    let centre: BTreeSet<usize> = (0..n).filter(|&a| (0..n).all(|b| commute(a, b))).collect();
    let mut stack = vec![closure(&centre)];
    let mut visited: HashSet<BTreeSet<usize>> = HashSet::new();
    let mut maximal = BTreeSet::new();
    while let Some(a) = stack.pop() {
        if !visited.insert(a.clone()) {
            continue;
        }
        let extend: Vec<usize> = (0..n)
            .filter(|x| !a.contains(x) && a.iter().all(|&y| commute(*x, y)))
            .collect();
        if extend.is_empty() {
            maximal.insert(a.into_iter().collect::<Vec<_>>());
            continue;
        }
        for x in extend {
            let mut gens = a.clone();
            gens.insert(x);
            stack.push(closure(&gens));
        }
    }
    Ok(maximal.into_iter().collect())
}

/// Commuting graph by the definition: `u ~ v` iff `u ≠ v` and `uv = vu`.
pub fn oracle_commute_graph(g: &GroupTable) -> Result<Graph> {
    let n = check_size(g, CONJUGACY_ORACLE_LIMIT)?;
    let mut x = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if g.mul(u, v) == g.mul(v, u) {
                x.add_edge(u, v);
            }
        }
    }
    Ok(x)
}

/// Which check a negative fixture is expected to fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegativeCheck {
    /// The necessary-condition screens, first failure reported.
    Screen,
    Extraspecial,
}

impl NegativeCheck {
    pub fn name(self) -> &'static str {
        match self {
            NegativeCheck::Screen => "screen",
            NegativeCheck::Extraspecial => "extraspecial",
        }
    }
}

#[derive(Debug, Clone)]
pub struct NegativeInstance {
    pub name: &'static str,
    pub graph: Graph,
    pub check: NegativeCheck,
    pub stage: &'static str,
}

pub fn petersen() -> Graph {
    let mut x = Graph::new(10);
    for i in 0..5 {
        x.add_edge(i, (i + 1) % 5);
        x.add_edge(5 + i, 5 + (i + 2) % 5);
        x.add_edge(i, 5 + i);
    }
    x
}

pub const FLIP_SEED: u64 = 11;

/// `Γ(E27)` with one edge between non-central vertices toggled, chosen by
/// `seed`.
pub fn flipped_extraspecial_27(seed: u64) -> Result<Graph> {
    let g = make_extraspecial(3, 1, ExtraspecialVariant::ExponentP)?;
    let (mut x, _) = build_commuting_graph(&g);
    let central: Vec<usize> = (0..27).filter(|&v| x.degree(v) == 26).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let u = rng.gen_range(0..27);
        let v = rng.gen_range(0..27);
        if u != v && !central.contains(&u) && !central.contains(&v) {
            x.toggle_edge(u, v);
            return Ok(x);
        }
    }
}

pub fn negative_instances() -> Result<Vec<NegativeInstance>> {
    let mut k27 = Graph::complete(27);
    k27.remove_edge(0, 1);
    Ok(vec![
        NegativeInstance {
            name: "cycle-5",
            graph: Graph::cycle(5),
            check: NegativeCheck::Screen,
            stage: "dominant-vertex",
        },
        NegativeInstance {
            name: "petersen",
            graph: petersen(),
            check: NegativeCheck::Screen,
            stage: "dominant-vertex",
        },
        NegativeInstance {
            name: "k27-minus-edge",
            graph: k27,
            check: NegativeCheck::Screen,
            stage: "class-count",
        },
        NegativeInstance {
            name: "e27-edge-flip",
            graph: flipped_extraspecial_27(FLIP_SEED)?,
            check: NegativeCheck::Extraspecial,
            stage: "twin-classes",
        },
        NegativeInstance {
            name: "matching-4",
            graph: Graph::matching(4),
            check: NegativeCheck::Screen,
            stage: "dominant-vertex",
        },
        NegativeInstance {
            name: "matching-6",
            graph: Graph::matching(6),
            check: NegativeCheck::Screen,
            stage: "dominant-vertex",
        },
        NegativeInstance {
            name: "star-9",
            graph: Graph::star(9),
            check: NegativeCheck::Screen,
            stage: "class-count",
        },
        NegativeInstance {
            name: "star-4",
            graph: Graph::star(4),
            check: NegativeCheck::Screen,
            stage: "class-count",
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::validate_table;

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_conjugacy_count(&make_dihedral(15).unwrap()).unwrap(), 9);
        let e243 = make_extraspecial(3, 2, ExtraspecialVariant::ExponentP).unwrap();
        assert_eq!(oracle_conjugacy_count(&e243).unwrap(), 81 + 3 - 1);
        let q8 = oracle_max_abelian(&make_quaternion()).unwrap();
        assert_eq!(q8.len(), 3);
        assert!(q8.iter().all(|a| a.len() == 4));
    }

    #[test]
    fn oracle_limits() {
        let big = make_cyclic(600).unwrap();
        assert!(oracle_max_abelian(&big).is_err());
        assert!(oracle_conjugacy_count(&big).is_ok());
    }

    #[test]
    fn abelian_has_one_maximal() {
        let g = make_cyclic(12).unwrap();
        assert_eq!(oracle_max_abelian(&g).unwrap(), vec![(0..12).collect::<Vec<_>>()]);
    }

    #[test]
    fn corpus_tables_are_valid() {
        let c = corpus(256).unwrap();
        assert!(c.len() > 50);
        for (name, g) in &c {
            assert!(validate_table(g).is_accept(), "{name}");
        }
        assert_eq!(corpus_group("D3xC4").unwrap().order(), 24);
        assert_eq!(corpus_group("C12").unwrap().order(), 12);
    }

    #[test]
    fn fixtures_are_distinct_shapes() {
        let neg = negative_instances().unwrap();
        assert_eq!(neg.len(), 8);
        assert_eq!(petersen().edge_count(), 15);
        assert!(petersen().degrees().iter().all(|&d| d == 3));
        let flipped = flipped_extraspecial_27(FLIP_SEED).unwrap();
        let (orig, _) = build_commuting_graph(&make_extraspecial(3, 1, ExtraspecialVariant::ExponentP).unwrap());
        assert_eq!(orig.edges().filter(|&(u, v)| !flipped.has_edge(u, v)).count()
            + flipped.edges().filter(|&(u, v)| !orig.has_edge(u, v)).count(), 1);
    }
}
