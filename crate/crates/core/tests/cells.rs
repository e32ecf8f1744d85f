mod common;

use asymhecke::cells::Side;
use asymhecke::coxeter::ElemId;
use common::{cells, check_cell_identities};

#[test]
fn gamma_and_duflo_rules_b2() {
    check_cell_identities("B2");
}

#[test]
fn gamma_and_duflo_rules_a3() {
    check_cell_identities("A3");
}

#[test]
fn gamma_and_duflo_rules_h3() {
    check_cell_identities("H3");
}

#[test]
fn b2_cells_and_duality() {
    let c = cells("B2");
    let g = c.group().clone();
    let two = c.cells(Side::Two);
    assert_eq!(two.len(), 3);
    let mid = c.cell_of(Side::Two, g.id_from_word(&[1]).unwrap());
    let words: Vec<String> = two[mid].iter().map(|&w| g.word(w).to_string()).collect();
    assert_eq!(words, ["1", "2", "12", "21", "121", "212"]);
    assert_eq!(c.a_value(mid), 1);
    assert_eq!(c.w0_dual(Side::Two, mid), mid);
    let top = c.cell_of(Side::Two, ElemId::IDENTITY);
    assert_eq!(c.a_value(top), 0);
    assert_eq!(two[c.w0_dual(Side::Two, top)], vec![g.w0()]);
    let alg = c.asymptotic_algebra(mid);
    let id = |w: &[u8]| g.id_from_word(w).unwrap();
    assert_eq!(alg.gamma(id(&[1, 2, 1]), id(&[1, 2, 1]), id(&[1])).unwrap(), 1);
    assert!(alg.multiply(id(&[1, 2]), id(&[1])).unwrap().is_empty());
    assert!(alg.gamma(id(&[1]), id(&[1]), g.w0()).is_err());
}

#[test]
fn two_sided_order_reverses_under_w0() {
    for name in ["A3", "B3"] {
        let c = cells(name);
        let n = c.cells(Side::Two).len();
        for i in 0..n {
            for j in 0..n {
                let (di, dj) = (c.w0_dual(Side::Two, i), c.w0_dual(Side::Two, j));
                assert_eq!(c.two_sided_leq(i, j), c.two_sided_leq(dj, di), "{name}");
            }
        }
        // Diagonal cells and their w0-duals have equal size.
        let g = c.group().clone();
        for w in g.elements() {
            if g.inverse(w) == w {
                assert_eq!(c.diagonal_cell(w).len(), c.w0_dual_diagonal(w).len());
            }
        }
    }
}

#[test]
fn s4_cell_is_self_dual() {
    let c = cells("A3");
    let g = c.group().clone();
    let mid = c.cell_of(Side::Two, g.id_from_word(&[1, 3]).unwrap());
    assert_eq!(c.w0_dual(Side::Two, mid), mid);
}
