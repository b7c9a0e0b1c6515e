use commgraph::commuting::{build_commuting_graph, conjugacy_count_from_graph};
use commgraph::graph::maximal_cliques;
use commgraph::group::{conjugacy_classes, maximal_abelian_subgroups};
use commgraph::harness::{corpus, oracle_commute_graph, oracle_conjugacy_count, oracle_max_abelian};

#[test]
fn commuting_graph_matches_definition() {
    for (name, g) in corpus(256).unwrap() {
        let (x, lab) = build_commuting_graph(&g);
        assert_eq!(x, oracle_commute_graph(&g).unwrap(), "{name}");
        assert_eq!(lab.map, (0..g.order()).collect::<Vec<_>>());
    }
}

#[test]
fn class_count_identity() {
    for (name, g) in corpus(256).unwrap() {
        let (x, _) = build_commuting_graph(&g);
        let k = conjugacy_count_from_graph(&x).unwrap().accepted().unwrap();
        assert_eq!(k, oracle_conjugacy_count(&g).unwrap(), "{name}");
        assert_eq!(k, conjugacy_classes(&g).len(), "{name}");
    }
}

#[test]
fn cliques_are_maximal_abelian_subgroups() {
    for (name, g) in corpus(256).unwrap() {
        let (x, _) = build_commuting_graph(&g);
        let mut cliques = maximal_cliques(&x, 1_000_000).unwrap();
        for c in &mut cliques {
            c.sort_unstable();
        }
        cliques.sort();
        let oracle = oracle_max_abelian(&g).unwrap();
        assert_eq!(cliques, oracle, "{name}");
        let mut main = maximal_abelian_subgroups(&g).unwrap();
        main.sort();
        assert_eq!(main, oracle, "{name}");
    }
}
