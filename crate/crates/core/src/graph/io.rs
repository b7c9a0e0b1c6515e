//! Edge-list text format: a header line `n m`, then `m` lines `u v`.

use std::collections::HashSet;
use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

/// Serialises with `u < v` and edges in ascending lexicographic order.
pub fn write_edge_list(x: &Graph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", x.n_vertices(), x.edge_count());
    for (u, v) in x.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Parses an edge list. Blank lines are skipped; duplicates (in either
/// orientation), self-loops, out-of-range endpoints, and a wrong edge count
/// are errors.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header line `n m`".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;
    let mut g = Graph::new(n);
    let mut seen = HashSet::with_capacity(m);
    let mut count = 0;
    for (line, l) in lines {
        let (u, v) = parse_pair(line, l)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("vertex out of range 0..{n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                msg: format!("self-loop at {u}"),
            });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate edge {u} {v}"),
            });
        }
        g.add_edge(u, v);
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {m} edges but {count} were listed"),
        });
    }
    Ok(g)
}

fn parse_pair(line: usize, l: &str) -> Result<(usize, usize)> {
    let mut it = l.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line,
                msg: "expected two integers".into(),
            })?
            .parse()
            .map_err(|e| Error::Parse {
                line,
                msg: format!("{e}"),
            })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn writes_sorted() {
        let mut g = Graph::new(4);
        g.add_edge(3, 1);
        g.add_edge(2, 0);
        g.add_edge(0, 1);
        assert_eq!(write_edge_list(&g), "4 3\n0 1\n0 2\n1 3\n");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_edge_list("3 1\n0 0\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n1 0\n").is_err());
        assert!(parse_edge_list("3 1\n0 3\n").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 x\n").is_err());
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("2 1\n0 1 1\n").is_err());
    }

    #[test]
    fn accepts_empty_graph() {
        let g = parse_edge_list("5 0\n").unwrap();
        assert_eq!(g.n_vertices(), 5);
        assert_eq!(g.edge_count(), 0);
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..30, bits in proptest::collection::vec(any::<bool>(), 435)) {
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k % bits.len()] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            let text = write_edge_list(&g);
            prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
        }
    }
}
