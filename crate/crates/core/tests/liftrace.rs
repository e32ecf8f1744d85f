use std::sync::Arc;

use asymhecke::coxeter::{CoxeterMatrix, CoxeterOps, ElemId, FiniteGroup, Gen, Realization, DEFAULT_ELEMENT_BOUND};
use asymhecke::hecke::KlTable;
use asymhecke::liftrace::*;
use asymhecke::Scalar;

fn setup(name: &str) -> (Arc<KlTable>, Realization) {
    let cm = CoxeterMatrix::preset(name).unwrap();
    let real = Realization::default_for(&cm).unwrap();
    let g = FiniteGroup::from_matrix(cm, DEFAULT_ELEMENT_BOUND).unwrap();
    (Arc::new(KlTable::new(Arc::new(g))), real)
}

fn id(kl: &KlTable, w: &[Gen]) -> ElemId {
    kl.group().id_from_word(w).unwrap()
}

/// Every recursible triple (x, i, y) with l(x) <= max_len.
fn recursible_triples(kl: &KlTable, max_len: usize) -> Vec<(ElemId, Gen, ElemId)> {
    let g = kl.group();
    let mut out = Vec::new();
    for x in g.elements().filter(|&x| g.len_of(x) <= max_len) {
        for i in g.system().matrix().generators() {
            for (y, _) in out_edges(kl, x, i) {
                if recursible_j(kl, x, i, y).is_some() {
                    out.push((x, i, y));
                }
            }
        }
    }
    out
}

#[test]
fn closed_and_recursive_agree() {
    for (name, max_len) in [("B2", 4), ("A3", 6), ("H3", 10), ("G2", 6), ("B3", 9)] {
        let (kl, real) = setup(name);
        let triples = recursible_triples(&kl, max_len);
        assert!(!triples.is_empty());
        for (x, i, y) in triples {
            let closed = lif_closed(&kl, &real, x, i, y).unwrap();
            let rec = lif_recursive(&kl, &real, x, i, y).unwrap();
            assert_eq!(closed, rec, "{name}: ({}, {i}, {})", kl.group().word(x), kl.group().word(y));
            assert!(!closed.is_zero());
        }
    }
}

#[test]
fn lif_is_invariant_under_dihedral_cosets() {
    let (kl, real) = setup("H3");
    let g = kl.group();
    for (x, i, y) in recursible_triples(&kl, 10) {
        let j = recursible_j(&kl, x, i, y).unwrap();
        let (_, tail) = g.dihedral_coset_decompose(&x, i, j);
        let x2 = g.id_from_word(tail.letters()).unwrap();
        let y2 = g.rmul(x2, j);
        assert_eq!(lif_closed(&kl, &real, x, i, y).unwrap(), lif_closed(&kl, &real, x2, i, y2).unwrap());
    }
}

#[test]
fn quantum_number_sequences() {
    let (_, g2) = setup("G2");
    // [k]_{1,2} for k odd, [k]_{2,1} for k even, as in 1, [2]_{1,2}, [3]_{2,1}, ...
    let (i, j) = if g2.quantum(2, 1, 2) == Scalar::from_int(3) { (1, 2) } else { (2, 1) };
    let seq: Vec<String> = (1..=5).map(|k| two_colored_quantum(&g2, k, if k % 2 == 0 { i } else { j }, if k % 2 == 0 { j } else { i }).to_string()).collect();
    assert_eq!(seq, ["1", "3", "2", "3", "1"]);
    assert!(two_colored_quantum(&g2, 6, i, j).is_zero());
    assert!(two_colored_quantum(&g2, 0, i, j).is_zero());

    let (_, h2) = setup("H2");
    let phi = Scalar::golden_ratio();
    let seq: Vec<Scalar> = (1..=5).map(|k| two_colored_quantum(&h2, k, 1, 2)).collect();
    assert_eq!(seq, [Scalar::one(), phi.clone(), phi, Scalar::one(), Scalar::zero()]);
}

#[test]
fn m3_edges_are_minus_one() {
    let (kl, real) = setup("A3");
    for (x, i, y) in recursible_triples(&kl, 6) {
        assert_eq!(lif(&kl, &real, x, i, y, LifMethod::Recursive).unwrap(), Scalar::from_int(-1));
    }
}

#[test]
fn up_edges_have_lif_one_and_others_error() {
    let (kl, real) = setup("G2");
    assert_eq!(lif(&kl, &real, id(&kl, &[1]), 2, id(&kl, &[1, 2]), LifMethod::Closed).unwrap(), Scalar::one());
    let err = lif(&kl, &real, id(&kl, &[1, 2]), 2, id(&kl, &[1]), LifMethod::Closed).unwrap_err();
    assert_eq!(err.category(), asymhecke::error::Category::Domain);
    let (d4, real) = setup("D4");
    // (d234, 1, d) spans a length gap of 3.
    let d = [1, 4, 3];
    let x = id(&d4, &[1, 4, 3, 2, 3, 4]);
    assert_eq!(recursible_j(&d4, x, 1, id(&d4, &d)), None);
    assert!(lif(&d4, &real, x, 1, id(&d4, &d), LifMethod::Recursive).is_err());
}

#[test]
fn sources_have_no_descent() {
    // A vertex y is the source of an i-colored edge iff yi > y.
    for name in ["H3", "D4"] {
        let (kl, _) = setup(name);
        let g = kl.group();
        let word = g.word(g.w0()).letters().to_vec();
        let graph = branching_graph(&kl, &word, BranchMode::Full, 0).unwrap();
        for e in &graph.edges {
            assert!(!g.has_right_descent(e.source, e.color));
            assert!(e.target == g.rmul(e.source, e.color) || (g.has_right_descent(e.target, e.color) && kl.mu(e.source, e.target) == e.mu));
        }
        assert_eq!(graph.spine.len(), word.len() + 1);
        assert_eq!(*graph.spine.last().unwrap(), g.w0());
    }
}

#[test]
fn h3_232123_is_linear() {
    let (kl, real) = setup("H3");
    let c = classify_expression(&kl, &real, &[2, 3, 2, 1, 2, 3], 0).unwrap();
    assert_eq!(c.shape, Shape::Linear);
    for e in c.graph.off_spine_edges() {
        let k = c.graph.spine.iter().position(|&x| x == e.source).unwrap();
        assert_eq!(c.graph.spine[k - 1], e.target);
        assert!(e.lif.is_some());
    }
}

#[test]
fn h3_long_word_is_recursible_not_linear() {
    let (kl, real) = setup("H3");
    let g = kl.group();
    let word = [1, 2, 1, 2, 1, 3, 2, 1, 2, 1, 3, 2, 1, 2];
    let c = classify_expression(&kl, &real, &word, 0).unwrap();
    assert_eq!(c.shape, Shape::Recursible);
    assert!(c.offending.is_empty());
    assert!(c.graph.off_spine_edges().all(|e| e.lif.is_some()));
    // The branch vertex: the first nine letters followed by 3.
    let x = id(&kl, &[1, 2, 1, 2, 1, 3, 2, 1, 2, 3]);
    let eleven = c.graph.spine[11];
    assert!(c.graph.edges.iter().any(|e| e.source == eleven && e.target == x && e.color == 2 && !e.spine));
    assert!(!c.graph.edges.iter().any(|e| e.source == x && e.target == eleven));
    // Prefixes of a recursible word stay recursible.
    for k in 1..word.len() {
        assert_ne!(classify_expression(&kl, &real, &word[..k], 0).unwrap().shape, Shape::Neither);
    }
    assert_eq!(g.len_of(x), 10);
}

#[test]
fn long_edges_are_neither() {
    let (d5, real) = setup("D5");
    let c = classify_expression(&d5, &real, &[1, 5, 3, 5, 4, 3, 5, 2, 3, 4, 5, 3, 1], 7).unwrap();
    assert_eq!(c.shape, Shape::Neither);
    assert!(c.offending.iter().any(|o| o.reason.contains("length gap")));

    let (d4, real) = setup("D4");
    let c = classify_expression(&d4, &real, &[1, 4, 3, 2, 3, 4, 1], 3).unwrap();
    assert_eq!(c.shape, Shape::Neither);
}

#[test]
fn dihedral_line() {
    let (kl, real) = setup("H2");
    let c = classify_expression(&kl, &real, &[1, 2, 1, 2, 1], 0).unwrap();
    assert_eq!(c.shape, Shape::Linear);
    let phi = Scalar::golden_ratio();
    let labels: Vec<Scalar> = c.graph.off_spine_edges().map(|e| e.lif.clone().unwrap()).collect();
    assert_eq!(labels.len(), 3);
    assert_eq!(labels[0], -&phi);
}

#[test]
fn reduced_words_required_for_superspine() {
    let (kl, real) = setup("A2");
    assert!(classify_expression(&kl, &real, &[1, 1], 0).is_err());
    assert!(branching_graph(&kl, &[1, 1], BranchMode::Superspine, 0).is_err());
    let full = branching_graph(&kl, &[1, 1], BranchMode::Full, 0).unwrap();
    assert!(full.spine.is_empty());
    assert!(branching_graph(&kl, &[1, 2], BranchMode::Full, 3).is_err());
}

#[test]
fn dot_output_marks_spine_and_labels() {
    let (kl, real) = setup("G2");
    let c = classify_expression(&kl, &real, &[1, 2, 1, 2, 1], 0).unwrap();
    let dot = c.graph.to_dot(kl.group());
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("dashed"));
    assert!(dot.contains(generator_color(1)) && dot.contains(generator_color(2)));
    assert!(dot.contains("-3/2") && dot.contains("-2/3"));
    let json = c.to_json(kl.group());
    assert_eq!(json["shape"], "linear");
}
