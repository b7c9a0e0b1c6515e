//! Finite groups as multiplication tables.
//!
//! Every table keeps the identity at index 0. The constructors below cover
//! the families the recognizers emit as witnesses (cyclic, dihedral,
//! extraspecial, cyclic-by-cyclic semidirect products, direct products) plus
//! a few hardcoded tables used by the test corpus.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::commuting::build_commuting_graph;
use crate::error::{Error, Result};
use crate::graph::{maximal_cliques, DEFAULT_CLIQUE_CAP};
use crate::verdict::{Rejection, Verdict};

/// Associativity is checked by default only up to this order (the check is cubic).
pub const ASSOC_CHECK_DEFAULT_LIMIT: usize = 512;

/// Oracle-scale limit for [`maximal_abelian_subgroups`].
pub const MAX_ABELIAN_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<u32>,
    names: Option<Vec<String>>,
}

/// On-disk form of a group: `{"order": n, "names": [...], "table": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    /// Builds a table from rows, checking only the shape and entry range.
    /// Use [`validate_table`] for the group axioms.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::invalid("group table must be non-empty"));
        }
        if order > u32::MAX as usize {
            return Err(Error::limit("group order", u32::MAX as usize, order));
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::invalid(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &e in row {
                if e >= order {
                    return Err(Error::invalid(format!(
                        "row {i} contains entry {e} outside 0..{order}"
                    )));
                }
                table.push(e as u32);
            }
        }
        Ok(GroupTable {
            order,
            table,
            names: None,
        })
    }

    /// Builds a table from a product closure. The closure must return indices below `order`.
    pub fn from_fn(order: usize, mut mul: impl FnMut(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                debug_assert!(c < order);
                table.push(c as u32);
            }
        }
        GroupTable {
            order,
            table,
            names: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element, falling back to its index.
    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Inverse of every element, found by scanning rows for the identity.
    pub fn inverses(&self) -> Vec<usize> {
        (0..self.order)
            .map(|a| {
                (0..self.order)
                    .find(|&b| self.mul(a, b) == 0)
                    .expect("valid group table has inverses")
            })
            .collect()
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.mul(a, b) == 0)
            .expect("valid group table has inverses")
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            order: self.order,
            names: self.names.clone(),
            table: self.rows(),
        }
    }

    /// Loads a group file, rejecting anything that is not a valid group with identity 0.
    pub fn from_file(file: GroupFile) -> Result<Self> {
        if file.order != file.table.len() {
            return Err(Error::invalid(format!(
                "declared order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        let mut g = GroupTable::from_rows(file.table)?;
        if let Some(names) = file.names {
            g = g.with_names(names)?;
        }
        match validate_table(&g) {
            Verdict::Accept(()) => Ok(g),
            Verdict::Reject(r) => Err(Error::invalid(format!("not a group table: {r}"))),
            Verdict::Unsupported(s) => Err(Error::invalid(s)),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_file())?)
    }
}

/// Checks identity at index 0, the Latin-square property, and associativity
/// (the last only up to [`ASSOC_CHECK_DEFAULT_LIMIT`]; see [`validate_table_with`]).
pub fn validate_table(t: &GroupTable) -> Verdict<()> {
    validate_table_with(t, t.order() <= ASSOC_CHECK_DEFAULT_LIMIT)
}

pub fn validate_table_with(t: &GroupTable, check_associativity: bool) -> Verdict<()> {
    let n = t.order();
    for j in 0..n {
        if t.mul(0, j) != j {
            return Rejection::new("identity", format!("0·{j} = {} ≠ {j}", t.mul(0, j)))
                .with_witness([0, j, t.mul(0, j)])
                .into();
        }
        if t.mul(j, 0) != j {
            return Rejection::new("identity", format!("{j}·0 = {} ≠ {j}", t.mul(j, 0)))
                .with_witness([j, 0, t.mul(j, 0)])
                .into();
        }
    }
    let mut seen = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            let c = t.mul(i, j);
            if seen[c] != usize::MAX && seen[c] >= i * n {
                let k = seen[c] - i * n;
                return Rejection::new(
                    "latin-square",
                    format!("row {i} is not a permutation: {i}·{k} = {i}·{j} = {c}"),
                )
                .with_witness([i, k, j])
                .into();
            }
            seen[c] = i * n + j;
        }
    }
    seen.fill(usize::MAX);
    for j in 0..n {
        for i in 0..n {
            let c = t.mul(i, j);
            if seen[c] != usize::MAX && seen[c] >= j * n {
                let k = seen[c] - j * n;
                return Rejection::new(
                    "latin-square",
                    format!("column {j} is not a permutation: {k}·{j} = {i}·{j} = {c}"),
                )
                .with_witness([k, i, j])
                .into();
            }
            seen[c] = j * n + i;
        }
    }
    if check_associativity {
        for i in 0..n {
            for j in 0..n {
                let ij = t.mul(i, j);
                for k in 0..n {
                    if t.mul(ij, k) != t.mul(i, t.mul(j, k)) {
                        return Rejection::new(
                            "associativity",
                            format!("({i}·{j})·{k} ≠ {i}·({j}·{k})"),
                        )
                        .with_witness([i, j, k])
                        .into();
                    }
                }
            }
        }
    }
    Verdict::Accept(())
}

pub fn make_cyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::invalid("cyclic group order must be positive"));
    }
    Ok(GroupTable::from_fn(n, |a, b| (a + b) % n))
}

/// Dihedral group of order `2m`, elements ordered `1, b, …, b^(m-1), a, ab, …, ab^(m-1)`.
pub fn make_dihedral(m: usize) -> Result<GroupTable> {
    if m < 3 {
        return Err(Error::invalid(format!("dihedral parameter m={m} must be at least 3")));
    }
    // a^s b^i · a^t b^j = a^(s+t) b^((-1)^t i + j)
    let g = GroupTable::from_fn(2 * m, |x, y| {
        let (s, i) = (x / m, x % m);
        let (t, j) = (y / m, y % m);
        let i = if t == 1 { (m - i) % m } else { i };
        ((s + t) % 2) * m + (i + j) % m
    });
    let names = (0..2 * m)
        .map(|x| {
            let (s, i) = (x / m, x % m);
            match (s, i) {
                (0, 0) => "1".to_string(),
                (0, 1) => "b".to_string(),
                (0, i) => format!("b^{i}"),
                (_, 0) => "a".to_string(),
                (_, 1) => "ab".to_string(),
                (_, i) => format!("ab^{i}"),
            }
        })
        .collect();
    g.with_names(names)
}

/// The two extraspecial groups of order `p^(2n+1)` for odd `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtraspecialVariant {
    /// `x_i^p = y_i^p = z^p = 1` (exponent `p`).
    ExponentP,
    /// `x_i^p = z^p = 1`, `y_i^p = z` (exponent `p^2`).
    ExponentP2,
}

impl ExtraspecialVariant {
    pub fn from_number(v: u8) -> Result<Self> {
        match v {
            1 => Ok(ExtraspecialVariant::ExponentP),
            2 => Ok(ExtraspecialVariant::ExponentP2),
            _ => Err(Error::invalid(format!("extraspecial variant must be 1 or 2, got {v}"))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            ExtraspecialVariant::ExponentP => 1,
            ExtraspecialVariant::ExponentP2 => 2,
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Index of `z^j · ∏ x_i^{α_i} · ∏ y_i^{β_i}` in [`make_extraspecial`]'s table,
/// with `coords = (α_1..α_n, β_1..β_n)`.
///
/// The index is the base-`p` number with digits `(j, α_1, …, α_n, β_1, …, β_n)`,
/// least significant first, so the centre occupies indices `0..p`.
pub fn extraspecial_index(p: usize, j: usize, coords: &[u32]) -> usize {
    let mut idx = 0;
    for &c in coords.iter().rev() {
        idx = idx * p + c as usize;
    }
    idx * p + j
}

/// Inverse of [`extraspecial_index`]: returns `(j, coords)`.
pub fn extraspecial_coords(p: usize, n: usize, mut idx: usize) -> (usize, Vec<u32>) {
    let j = idx % p;
    idx /= p;
    let coords = (0..2 * n)
        .map(|_| {
            let c = (idx % p) as u32;
            idx /= p;
            c
        })
        .collect();
    (j, coords)
}

/// Extraspecial group of order `p^(2n+1)` for an odd prime `p`, with
/// `[x_i, y_i] = z` (commutator `a⁻¹b⁻¹ab`) and all other generator pairs commuting.
///
/// Normal form is `z^j X^α Y^β`; moving `Y^β` past `X^α'` contributes
/// `z^(-β·α')`, and in the exponent-`p²` variant each carry in `β_i + β'_i`
/// contributes one `z`.
pub fn make_extraspecial(p: usize, n: usize, variant: ExtraspecialVariant) -> Result<GroupTable> {
    if p % 2 == 0 || !is_prime(p as u64) {
        return Err(Error::invalid(format!("extraspecial construction needs an odd prime, got p={p}")));
    }
    if n == 0 {
        return Err(Error::invalid("extraspecial rank n must be at least 1"));
    }
    let order = p
        .checked_pow(2 * n as u32 + 1)
        .filter(|&o| o <= u32::MAX as usize)
        .ok_or_else(|| Error::invalid("extraspecial order overflows"))?;
    let decoded: Vec<(usize, Vec<u32>)> = (0..order).map(|i| extraspecial_coords(p, n, i)).collect();
    let p32 = p as u32;
    let mut coords = vec![0u32; 2 * n];
    let g = GroupTable::from_fn(order, |a, b| {
        let (ja, ca) = &decoded[a];
        let (jb, cb) = &decoded[b];
        let mut j = ja + jb;
        // -Σ β_i α'_i
        let mut cross = 0usize;
        for i in 0..n {
            cross += (ca[n + i] * cb[i]) as usize;
        }
        j += (p - cross % p) % p;
        for t in 0..2 * n {
            let s = ca[t] + cb[t];
            if t >= n && variant == ExtraspecialVariant::ExponentP2 && s >= p32 {
                j += 1;
            }
            coords[t] = s % p32;
        }
        extraspecial_index(p, j % p, &coords)
    });
    Ok(g)
}

/// `C_q ⋊ C_k` where the generator of `C_k` acts by `x ↦ x^r`. Element
/// `(x, h)` has index `h·q + x`, so the normal subgroup occupies `0..q`.
pub fn make_semidirect_cyclic(q: usize, k: usize, r: usize) -> Result<GroupTable> {
    if q == 0 || k == 0 {
        return Err(Error::invalid("semidirect factors must have positive order"));
    }
    if gcd(r % q.max(1), q) != 1 && q > 1 {
        return Err(Error::invalid(format!("r={r} is not a unit modulo q={q}")));
    }
    let mut powers = vec![1 % q; k + 1];
    for h in 1..=k {
        powers[h] = powers[h - 1] * r % q;
    }
    if powers[k] != 1 % q {
        return Err(Error::invalid(format!("r^k = {r}^{k} is not 1 modulo {q}")));
    }
    // (x1, h1)(x2, h2) = (x1 + r^h1 x2, h1 + h2)
    Ok(GroupTable::from_fn(q * k, |a, b| {
        let (x1, h1) = (a % q, a / q);
        let (x2, h2) = (b % q, b / q);
        ((h1 + h2) % k) * q + (x1 + powers[h1] * x2) % q
    }))
}

/// `G × H` with `(a, b) ↦ a·|H| + b`.
pub fn direct_product(g: &GroupTable, h: &GroupTable) -> GroupTable {
    let m = h.order();
    let prod = GroupTable::from_fn(g.order() * m, |x, y| {
        g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
    });
    match (g.names(), h.names()) {
        (Some(gn), Some(hn)) => {
            let names = (0..prod.order())
                .map(|x| format!("({},{})", gn[x / m], hn[x % m]))
                .collect();
            prod.with_names(names).expect("name count matches order")
        }
        _ => prod,
    }
}

/// Quaternion group `{±1, ±i, ±j, ±k}`.
pub fn make_quaternion() -> GroupTable {
    // unit u ∈ {1,i,j,k} as 0..4, sign s; index = 2u + s
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let g = GroupTable::from_fn(8, |a, b| {
        let (u, s) = UNIT_MUL[a / 2][b / 2];
        2 * u + (s + a % 2 + b % 2) % 2
    });
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    g.with_names(names).expect("eight names")
}

/// Alternating group on `k` points, identity first, remaining even permutations
/// in lexicographic order of their images.
pub fn make_alternating(k: usize) -> Result<GroupTable> {
    if !(2..=7).contains(&k) {
        return Err(Error::invalid(format!("alternating group degree {k} outside 2..=7")));
    }
    let mut perms = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        if permutation_is_even(&cur) {
            perms.push(cur.clone());
        }
        if !next_permutation(&mut cur) {
            break;
        }
    }
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // (a·b)(x) = a(b(x)), i.e. apply b first
    let g = GroupTable::from_fn(perms.len(), |a, b| {
        let c: Vec<usize> = (0..k).map(|x| perms[a][perms[b][x]]).collect();
        index[&c]
    });
    Ok(g)
}

fn permutation_is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn center(g: &GroupTable) -> Vec<usize> {
    (0..g.order())
        .filter(|&x| (0..g.order()).all(|y| g.commute(x, y)))
        .collect()
}

pub fn centralizer(g: &GroupTable, x: usize) -> Vec<usize> {
    (0..g.order()).filter(|&y| g.commute(x, y)).collect()
}

/// Orbits of the conjugation action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyPartition {
    pub classes: Vec<Vec<usize>>,
}

impl ConjugacyPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&x))
            .expect("classes cover the group")
    }
}

/// Conjugacy classes in order of their smallest element; each class is sorted.
pub fn conjugacy_classes(g: &GroupTable) -> ConjugacyPartition {
    let n = g.order();
    let inv = g.inverses();
    let mut class_id = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_id[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = BTreeSet::new();
        for h in 0..n {
            members.insert(g.mul(g.mul(inv[h], x), h));
        }
        for &y in &members {
            class_id[y] = id;
        }
        classes.push(members.into_iter().collect());
    }
    ConjugacyPartition { classes }
}

/// Maximal abelian subgroups, as the maximal cliques of the commuting graph
/// (a maximal commuting set is closed under products). Each subgroup is sorted;
/// the list is sorted lexicographically.
pub fn maximal_abelian_subgroups(g: &GroupTable) -> Result<Vec<Vec<usize>>> {
    if g.order() > MAX_ABELIAN_LIMIT {
        return Err(Error::limit("group order", MAX_ABELIAN_LIMIT, g.order()));
    }
    let (x, _) = build_commuting_graph(g);
    let mut out = maximal_cliques(&x, DEFAULT_CLIQUE_CAP)?;
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accepts(g: &GroupTable) -> bool {
        validate_table_with(g, true).is_accept()
    }

    #[test]
    fn cyclic_three_is_valid() {
        let g = make_cyclic(3).unwrap();
        assert!(accepts(&g));
        assert_eq!(g.mul(1, 2), 0);
    }

    #[test]
    fn trivial_group() {
        let g = make_cyclic(1).unwrap();
        assert_eq!(g.rows(), vec![vec![0]]);
        assert!(make_cyclic(0).is_err());
    }

    #[test]
    fn rejects_non_latin_square() {
        let g = GroupTable::from_rows(vec![vec![0, 1], vec![1, 1]]).unwrap();
        let r = validate_table(&g).rejection().cloned().unwrap();
        assert_eq!(r.stage, "latin-square");
        assert_eq!(r.witness.len(), 3);
    }

    #[test]
    fn rejects_missing_identity() {
        let g = GroupTable::from_rows(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(validate_table(&g).rejection().unwrap().stage, "identity");
    }

    #[test]
    fn rejects_non_associative_loop() {
        // a Latin square with identity 0 that is not associative (order-5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let g = GroupTable::from_rows(rows).unwrap();
        let r = validate_table(&g).rejection().cloned().unwrap();
        assert_eq!(r.stage, "associativity");
        let (i, j, k) = (r.witness[0], r.witness[1], r.witness[2]);
        assert_ne!(g.mul(g.mul(i, j), k), g.mul(i, g.mul(j, k)));
    }

    #[test]
    fn shape_errors_are_errors() {
        assert!(GroupTable::from_rows(vec![vec![0, 1], vec![1]]).is_err());
        assert!(GroupTable::from_rows(vec![vec![0, 2], vec![1, 0]]).is_err());
        assert!(GroupTable::from_rows(vec![]).is_err());
    }

    #[test]
    fn cyclic_six_element_orders() {
        let g = make_cyclic(6).unwrap();
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.element_order(1), 6);
    }

    #[test]
    fn dihedral_presentation_relations() {
        for m in [3, 4, 5, 15] {
            let g = make_dihedral(m).unwrap();
            assert!(accepts(&g));
            let (a, b) = (m, 1);
            assert_eq!(g.element_order(a), 2);
            assert_eq!(g.element_order(b), m);
            // a b a^-1 = b^-1
            assert_eq!(g.mul(g.mul(a, b), g.inverse(a)), g.inverse(b));
            // ordering 1, b, ..., b^(m-1), a, ab, ...
            for i in 0..m {
                assert_eq!(g.pow(b, i), i);
                assert_eq!(g.mul(a, g.pow(b, i)), m + i);
            }
        }
        assert!(make_dihedral(2).is_err());
    }

    #[test]
    fn dihedral_small_facts() {
        let d3 = make_dihedral(3).unwrap();
        assert!(!d3.commute(1, 4)); // b, ab
        assert_eq!(conjugacy_classes(&d3).len(), 3);
        assert_eq!(center(&d3), vec![0]);
        let d4 = make_dihedral(4).unwrap();
        assert_eq!(center(&d4), vec![0, 2]);
    }

    #[test]
    fn extraspecial_27_facts() {
        let g = make_extraspecial(3, 1, ExtraspecialVariant::ExponentP).unwrap();
        assert_eq!(g.order(), 27);
        assert!(accepts(&g));
        assert_eq!(center(&g), vec![0, 1, 2]);
        for x in 1..27 {
            assert_eq!(g.element_order(x), 3);
        }
        let g2 = make_extraspecial(3, 1, ExtraspecialVariant::ExponentP2).unwrap();
        assert!(accepts(&g2));
        let y1 = extraspecial_index(3, 0, &[0, 1]);
        assert_eq!(g2.element_order(y1), 9);
        assert_eq!(g2.pow(y1, 3), 1); // y^p = z
    }

    #[test]
    fn extraspecial_commutator_is_z() {
        for variant in [ExtraspecialVariant::ExponentP, ExtraspecialVariant::ExponentP2] {
            let g = make_extraspecial(5, 1, variant).unwrap();
            let inv = g.inverses();
            let x = extraspecial_index(5, 0, &[1, 0]);
            let y = extraspecial_index(5, 0, &[0, 1]);
            let comm = g.mul(g.mul(inv[x], inv[y]), g.mul(x, y));
            assert_eq!(comm, 1);
        }
    }

    #[test]
    fn extraspecial_243_is_valid() {
        for variant in [ExtraspecialVariant::ExponentP, ExtraspecialVariant::ExponentP2] {
            let g = make_extraspecial(3, 2, variant).unwrap();
            assert_eq!(g.order(), 243);
            assert!(accepts(&g));
            assert_eq!(center(&g).len(), 3);
        }
    }

    #[test]
    fn extraspecial_rejects_bad_prime() {
        assert!(make_extraspecial(2, 1, ExtraspecialVariant::ExponentP).is_err());
        assert!(make_extraspecial(9, 1, ExtraspecialVariant::ExponentP).is_err());
    }

    #[test]
    fn extraspecial_index_round_trip() {
        for idx in 0..243 {
            let (j, c) = extraspecial_coords(3, 2, idx);
            assert_eq!(extraspecial_index(3, j, &c), idx);
        }
    }

    #[test]
    fn semidirect_order_21_is_fixed_point_free() {
        let g = make_semidirect_cyclic(7, 3, 2).unwrap();
        assert_eq!(g.order(), 21);
        assert!(accepts(&g));
        // r^j != 1 mod 7 for j = 1, 2
        assert_ne!(2 % 7, 1);
        assert_ne!(4 % 7, 1);
        assert_eq!(center(&g), vec![0]);
    }

    #[test]
    fn semidirect_trivial_action_is_abelian() {
        let g = make_semidirect_cyclic(5, 4, 1).unwrap();
        assert!(accepts(&g));
        assert!(g.is_abelian());
        assert!((0..20).any(|x| g.element_order(x) == 20));
    }

    #[test]
    fn semidirect_inversion_is_dihedral() {
        let s = make_semidirect_cyclic(15, 2, 14).unwrap();
        let d = make_dihedral(15).unwrap();
        // (x, h) = (x,0)(0,h) ↦ b^x a^h; b^x a = a b^{-x}
        let phi = |e: usize| {
            let (x, h) = (e % 15, e / 15);
            if h == 0 {
                x
            } else {
                15 + (15 - x) % 15
            }
        };
        let images: BTreeSet<usize> = (0..30).map(phi).collect();
        assert_eq!(images.len(), 30);
        for a in 0..30 {
            for b in 0..30 {
                assert_eq!(phi(s.mul(a, b)), d.mul(phi(a), phi(b)));
            }
        }
    }

    #[test]
    fn semidirect_rejects_bad_action() {
        assert!(make_semidirect_cyclic(7, 2, 2).is_err());
        assert!(make_semidirect_cyclic(6, 2, 3).is_err());
    }

    #[test]
    fn direct_products() {
        let c2 = make_cyclic(2).unwrap();
        let c3 = make_cyclic(3).unwrap();
        let v4 = direct_product(&c2, &c2);
        assert!(accepts(&v4));
        assert!((1..4).all(|x| v4.element_order(x) == 2));
        let c6 = direct_product(&c2, &c3);
        assert_eq!(c6.element_order(3 + 1), 6);
        let s3c2 = direct_product(&make_dihedral(3).unwrap(), &c2);
        assert!(accepts(&s3c2));
        assert_eq!(center(&s3c2).len(), 2);
    }

    #[test]
    fn quaternion_and_alternating() {
        let q = make_quaternion();
        assert!(accepts(&q));
        assert_eq!(center(&q), vec![0, 1]);
        assert_eq!(maximal_abelian_subgroups(&q).unwrap().len(), 3);
        let a4 = make_alternating(4).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(accepts(&a4));
        assert_eq!(center(&a4), vec![0]);
        assert_eq!(conjugacy_classes(&a4).len(), 4);
        let a5 = make_alternating(5).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(accepts(&a5));
        assert_eq!(conjugacy_classes(&a5).len(), 5);
    }

    #[test]
    fn centralizer_of_identity_is_everything() {
        let g = make_dihedral(5).unwrap();
        assert_eq!(centralizer(&g, 0), (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn extraspecial_27_maximal_abelian_subgroups() {
        let g = make_extraspecial(3, 1, ExtraspecialVariant::ExponentP).unwrap();
        let subs = maximal_abelian_subgroups(&g).unwrap();
        assert_eq!(subs.len(), 4);
        assert!(subs.iter().all(|s| s.len() == 9));
    }

    #[test]
    fn maximal_abelian_size_limit() {
        let g = make_cyclic(600).unwrap();
        assert!(matches!(maximal_abelian_subgroups(&g), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn json_round_trip_and_identity_check() {
        let g = make_dihedral(3).unwrap();
        let s = g.to_json_string().unwrap();
        let back = GroupTable::from_json_str(&s).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"order": 2, "table": [[1,0],[0,1]]}"#;
        assert!(GroupTable::from_json_str(bad).is_err());
    }
}
