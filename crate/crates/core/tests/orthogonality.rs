use commgraph::graph::{permute, random_permutation};
use commgraph::symplectic::{
    eval_form, orthogonality_graph, recognize_orthogonality_graph, recognize_orthogonality_graph_naive,
};

#[test]
fn naive_scalars_fail_where_propagation_succeeds() {
    let (x, _) = orthogonality_graph(2, 3).unwrap();
    for seed in 0..20 {
        let y = permute(&x, &random_permutation(81, seed)).unwrap();
        let naive = recognize_orthogonality_graph_naive(&y, 3).unwrap();
        assert_eq!(naive.rejection().map(|r| r.stage.as_str()), Some("verify"), "seed {seed}");
        let lab = recognize_orthogonality_graph(&y, 3).unwrap().accepted().unwrap();
        for (u, v) in y.edges() {
            assert!(eval_form(&lab.map()[u], &lab.map()[v]).unwrap().is_zero());
        }
    }
}

#[test]
fn naive_agrees_for_binary_field() {
    for n in 1..=3 {
        let (x, _) = orthogonality_graph(n, 2).unwrap();
        let y = permute(&x, &random_permutation(x.n_vertices(), 1)).unwrap();
        assert!(recognize_orthogonality_graph_naive(&y, 2).unwrap().is_accept());
    }
}
