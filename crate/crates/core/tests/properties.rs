use proptest::prelude::*;

use dendcat::anticyclic::{apply_tau, apply_theta, apply_theta_inv, diese};
use dendcat::dendriform::star_interval;
use dendcat::noncrossing::{compose_ncp, ncp_to_dend};
use dendcat::projective::projective_element;
use dendcat::tamari::{lower_covers, PosetView};
use dendcat::{catalan, compose, enumerate_ncp, enumerate_trees, leq, simple_nct, star, DendElem, NcPlant, Tree};

fn tree_of(n: usize, k: u64) -> Tree {
    enumerate_trees(n).unwrap()[k as usize].clone()
}

fn tree(max: usize) -> impl Strategy<Value = Tree> {
    (1..=max).prop_flat_map(|n| (0..catalan(n)).prop_map(move |k| tree_of(n, k)))
}

fn element_of_degree(n: usize) -> impl Strategy<Value = DendElem> {
    prop::collection::vec((0..catalan(n), -3i64..=3), 0..6)
        .prop_map(move |terms| DendElem::from_terms(n, terms.into_iter().map(|(k, c)| (tree_of(n, k), c))).unwrap())
}

fn element(max: usize) -> impl Strategy<Value = DendElem> {
    (1..=max).prop_flat_map(element_of_degree)
}

fn plant(max: usize) -> impl Strategy<Value = NcPlant> {
    (1..=max).prop_flat_map(|n| {
        let all = enumerate_ncp(n).unwrap();
        (0..all.len()).prop_map(move |k| all[k])
    })
}

// Slow reference for the order: search down the lower covers.
fn down_set(t: &Tree) -> Vec<Tree> {
    let mut seen = vec![t.clone()];
    let mut i = 0;
    while i < seen.len() {
        for c in lower_covers(&seen[i]) {
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        i += 1;
    }
    seen
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tree_text_round_trip(t in tree(9)) {
        prop_assert_eq!(t.to_string().parse::<Tree>().unwrap(), t.clone());
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<Tree>(&json).unwrap(), t);
    }

    #[test]
    fn reversal_is_an_involution(t in tree(9)) {
        prop_assert_eq!(t.reverse().reverse(), t.clone());
        prop_assert_eq!(t.reverse().degree(), t.degree());
    }

    #[test]
    fn grafting_adds_degrees(x in tree(5), y in tree(4)) {
        prop_assert_eq!(x.over(&y).degree(), x.degree() + y.degree());
        prop_assert_eq!(x.under(&y).reverse(), y.reverse().over(&x.reverse()));
    }

    #[test]
    fn element_arithmetic(a in element_of_degree(4), b in element_of_degree(4)) {
        prop_assert_eq!(a.try_add(&b).unwrap().try_sub(&b).unwrap(), a.clone());
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.scale(3), a.try_add(&a).unwrap().try_add(&a).unwrap());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<DendElem>(&json).unwrap(), a);
    }

    #[test]
    fn element_json_rejects_mixed_degrees(n in 1usize..4) {
        let json = format!(r#"{{"degree": {}, "terms": [{{"tree": "(o o)", "coeff": 1}}]}}"#, n + 1);
        prop_assert!(serde_json::from_str::<DendElem>(&json).is_err());
    }

    #[test]
    fn compose_units(a in element(5), i in 1usize..=5) {
        let unit = DendElem::unit();
        prop_assert_eq!(compose(&unit, 1, &a).unwrap(), a.clone());
        let i = 1 + (i - 1) % a.degree();
        prop_assert_eq!(compose(&a, i, &unit).unwrap(), a);
    }

    #[test]
    fn compose_is_bilinear(
        a in element_of_degree(3),
        b in element_of_degree(3),
        c in element(3),
        i in 1usize..=3,
    ) {
        let lhs = compose(&a.try_add(&b).unwrap(), i, &c).unwrap();
        let rhs = compose(&a, i, &c).unwrap().try_add(&compose(&b, i, &c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = compose(&c, 1, &a.scale(-2)).unwrap();
        prop_assert_eq!(lhs, compose(&c, 1, &a).unwrap().scale(-2));
    }

    #[test]
    fn star_is_an_interval(x in tree(4), y in tree(3)) {
        let s = star(&DendElem::basis(x.clone()), &DendElem::basis(y.clone())).unwrap();
        prop_assert_eq!(&s, &star_interval(&x, &y).unwrap());
        prop_assert!(s.is_multiplicity_free());
        let lo = x.over(&y);
        let hi = x.under(&y);
        let view = PosetView::shared(lo.degree()).unwrap();
        for t in s.support() {
            prop_assert!(view.leq(&lo, t).unwrap() && view.leq(t, &hi).unwrap());
        }
    }

    #[test]
    fn order_matches_cover_search(x in tree(6), k in any::<prop::sample::Index>()) {
        let all = enumerate_trees(x.degree()).unwrap();
        let y = k.get(&all);
        prop_assert_eq!(leq(y, &x).unwrap(), down_set(&x).contains(y));
    }

    #[test]
    fn projective_is_a_down_set(x in tree(6)) {
        let p = projective_element(&x).unwrap();
        let expected = DendElem::sum_of(x.degree(), down_set(&x)).unwrap();
        prop_assert_eq!(p.elem, expected);
        prop_assert!(p.nct.is_tree());
    }

    #[test]
    fn theta_inverts(a in element(6)) {
        prop_assert_eq!(apply_theta_inv(&apply_theta(&a).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(apply_theta(&apply_theta_inv(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn tau_has_finite_order(a in element(5)) {
        let mut b = a.clone();
        for _ in 0..=a.degree() {
            b = apply_tau(&b).unwrap();
        }
        prop_assert_eq!(b, a);
    }

    #[test]
    fn diese_is_associative(a in element(2), b in element(2), c in element(2)) {
        let l = diese(&diese(&a, &b).unwrap(), &c).unwrap();
        let r = diese(&a, &diese(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn plants_map_compositions(p in plant(3), q in plant(3), i in 1usize..=3) {
        let i = 1 + (i - 1) % p.degree();
        let pq = compose_ncp(&p, i, &q).unwrap();
        prop_assert_eq!(pq.degree(), p.degree() + q.degree() - 1);
        let image = compose(&ncp_to_dend(&p).unwrap(), i, &ncp_to_dend(&q).unwrap()).unwrap();
        prop_assert_eq!(ncp_to_dend(&pq).unwrap(), image);
    }

    #[test]
    fn simple_trees_round_trip(x in tree(7)) {
        let p = simple_nct(&x).unwrap();
        prop_assert_eq!(p.angle_counts().unwrap().m, 0);
        prop_assert_eq!(p.tree_of_simple().unwrap(), x);
    }
}
