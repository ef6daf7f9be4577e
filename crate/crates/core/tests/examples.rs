use dendcat::categorify::{build_m, check_relations, decategorify, ProductKind};
use dendcat::export::hasse_dot;
use dendcat::projective::projective_table;
use dendcat::{
    apply_tau, apply_theta, compose, diese, enumerate_ncp, enumerate_nct, enumerate_trees, star, DendElem, PosetView,
    Tree,
};

fn t(s: &str) -> Tree {
    s.parse().unwrap()
}

#[test]
fn small_trees() {
    let y2: Vec<String> = enumerate_trees(2).unwrap().iter().map(Tree::to_string).collect();
    assert_eq!(y2, ["((o o) o)", "(o (o o))"]);
    assert_eq!(enumerate_trees(1).unwrap(), [Tree::unit()]);
    assert!("(o o".parse::<Tree>().is_err());
    assert!("(o o) o".parse::<Tree>().is_err());
}

#[test]
fn hasse_edge_counts() {
    let counts: Vec<usize> = (1..=5)
        .map(|n| PosetView::build(n).unwrap().hasse_edges().len())
        .collect();
    assert_eq!(counts, [0, 1, 5, 21, 84]);
    assert_eq!(hasse_dot(3).unwrap().matches(" -> ").count(), 5);
}

#[test]
fn mobius_on_the_pentagon() {
    let view = PosetView::build(3).unwrap();
    let (lo, hi) = (
        view.index_of(view.minimum()).unwrap(),
        view.index_of(view.maximum()).unwrap(),
    );
    assert_eq!(view.mobius_idx(lo, hi), 1);
    assert_eq!(view.mobius_values().into_iter().collect::<Vec<_>>(), [-1, 0, 1]);
}

#[test]
fn products_of_units() {
    let unit = DendElem::unit();
    assert_eq!(star(&unit, &unit).unwrap(), DendElem::sum_all(2).unwrap());
    assert_eq!(compose(&unit, 1, &unit).unwrap(), unit);
    let s2 = DendElem::sum_all(2).unwrap();
    assert_eq!(diese(&s2, &s2).unwrap(), DendElem::sum_all(3).unwrap());
    assert_eq!(diese(&unit, &s2).unwrap(), s2);
}

#[test]
fn transforms_in_low_degree() {
    let unit = DendElem::unit();
    assert_eq!(apply_tau(&unit).unwrap(), unit.scale(-1));
    assert_eq!(apply_theta(&unit).unwrap(), unit.scale(-1));
    let gauche = DendElem::basis(t("((o o) o)"));
    let mut x = gauche.clone();
    for _ in 0..3 {
        x = apply_tau(&x).unwrap();
    }
    assert_eq!(x, gauche);
    assert_ne!(apply_tau(&gauche).unwrap(), gauche);
}

#[test]
fn noncrossing_counts() {
    let nct: Vec<usize> = (1..=5).map(|n| enumerate_nct(n).unwrap().len()).collect();
    assert_eq!(nct, [1, 3, 12, 55, 273]);
    assert_eq!(enumerate_ncp(3).unwrap().len(), 14);
}

#[test]
fn projectives_of_degree_three() {
    let table = projective_table(3).unwrap();
    assert_eq!(table.len(), 5);
    for p in &table {
        assert_eq!(p.nct.angle_counts().unwrap().d, 0);
        assert!(p.nct.contains_side(1));
    }
    let top = table.last().unwrap();
    assert_eq!(top.elem, DendElem::sum_all(3).unwrap());
}

#[test]
fn tri_module_on_pentagons() {
    let m = build_m(ProductKind::Star, 2, 2).unwrap();
    assert_eq!(m.degrees(), (2, 2, 4));
    assert!(check_relations(&m).passed);

    let m = build_m(ProductKind::Circ1, 2, 2).unwrap();
    let (x, y) = (t("((o o) o)"), t("(o (o o))"));
    let expected = compose(
        &dendcat::projective_element(&x).unwrap().elem,
        1,
        &dendcat::projective_element(&y).unwrap().elem,
    )
    .unwrap();
    assert_eq!(decategorify(&m, &x, &y).unwrap(), expected);
}
