use commgraph::commuting::build_commuting_graph;
use commgraph::graph::{connected_components, isomorphic, permute, random_permutation, Graph};
use commgraph::group::direct_product;
use commgraph::harness::{corpus, corpus_group, PRODUCT_PAIRS};
use commgraph::products::{factor_strong, strong_product, strong_product_all};
use proptest::prelude::*;

#[test]
fn product_identity_on_corpus_pairs() {
    let mut checked = 0;
    for (a, b) in PRODUCT_PAIRS {
        let (g, h) = (corpus_group(a).unwrap(), corpus_group(b).unwrap());
        if g.order() * h.order() > 256 {
            continue;
        }
        let lhs = build_commuting_graph(&direct_product(&g, &h)).0;
        let rhs = strong_product(&build_commuting_graph(&g).0, &build_commuting_graph(&h).0).unwrap();
        assert_eq!(lhs, rhs, "{a} x {b}");
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn product_identity_small_cross_pairs() {
    let small: Vec<_> = corpus(12).unwrap();
    for (na, g) in &small {
        for (nb, h) in small.iter().filter(|(_, h)| h.order() <= 6) {
            let lhs = build_commuting_graph(&direct_product(g, h)).0;
            let rhs = strong_product(&build_commuting_graph(g).0, &build_commuting_graph(h).0).unwrap();
            assert_eq!(lhs, rhs, "{na} x {nb}");
        }
    }
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut x = Graph::path(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        x.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            x
        })
    })
}

fn sizes(f: &[Graph]) -> Vec<usize> {
    let mut s: Vec<usize> = f.iter().map(Graph::n_vertices).collect();
    s.sort_unstable();
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_remultiplies(a in connected_graph(5), b in connected_graph(5), seed in 0u64..1000) {
        let x = strong_product(&a, &b).unwrap();
        prop_assert_eq!(connected_components(&x).len(), 1);
        let y = permute(&x, &random_permutation(x.n_vertices(), seed)).unwrap();
        let f = factor_strong(&y, 64).unwrap();
        prop_assert!(f.factors.len() >= 2);
        let back = strong_product_all(&f.factors).unwrap();
        prop_assert_eq!(permute(&y, &f.embedding).unwrap(), back);
        // unique factorization: same multiset as factoring the pieces
        let mut expect = factor_strong(&a, 64).unwrap().factors;
        expect.extend(factor_strong(&b, 64).unwrap().factors);
        prop_assert_eq!(sizes(&f.factors), sizes(&expect));
        let g = factor_strong(&x, 64).unwrap();
        prop_assert_eq!(sizes(&g.factors), sizes(&f.factors));
        for q in &g.factors {
            prop_assert!(f.factors.iter().any(|r| isomorphic(r, q).unwrap().is_some()));
        }
    }

    #[test]
    fn product_commutative_and_associative(a in connected_graph(4), b in connected_graph(4), c in connected_graph(3)) {
        let ab = strong_product(&a, &b).unwrap();
        let ba = strong_product(&b, &a).unwrap();
        prop_assert!(isomorphic(&ab, &ba).unwrap().is_some());
        let left = strong_product(&ab, &c).unwrap();
        let right = strong_product(&a, &strong_product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
