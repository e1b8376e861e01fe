mod common;

use common::{chromatic_index as reference_index, colorable, degrees, edge_list};
use hz4::graph::{families, Graph};
use hz4::harness::small_graphs;
use hz4::oracle::{
    check_val, chromatic_index, is_class_one, is_critical, vizing_color, OracleBudget,
};
use proptest::prelude::*;

fn budget() -> OracleBudget {
    OracleBudget::default()
}

#[test]
fn index_matches_brute_force_on_all_small_graphs() {
    let mut checked = 0;
    for g in small_graphs(5) {
        let el = edge_list(&g);
        let r = chromatic_index(&g, &budget()).unwrap();
        assert_eq!(r.value, reference_index(g.n(), &el), "{el:?}");
        assert!(common::proper(g.n(), &el, r.witness.as_slice()));
        assert!(r.witness.is_total());
        assert!(r.witness.colors_used().len() <= r.value);
        checked += 1;
    }
    assert_eq!(checked, 1 + 7 + 63 + 1023);
}

#[test]
fn named_families() {
    let b = budget();
    assert_eq!(chromatic_index(&families::petersen(), &b).unwrap().value, 4);
    assert_eq!(
        chromatic_index(&families::petersen_minus_vertex(), &b)
            .unwrap()
            .value,
        4
    );
    assert_eq!(
        chromatic_index(&families::k5_minus_e(), &b).unwrap().value,
        5
    );
    assert_eq!(
        chromatic_index(&families::complete(6), &b).unwrap().value,
        5
    );
    assert_eq!(
        chromatic_index(&families::complete(5), &b).unwrap().value,
        5
    );
    assert_eq!(chromatic_index(&families::cycle(7), &b).unwrap().value, 3);
    assert_eq!(chromatic_index(&families::star(6), &b).unwrap().value, 6);
    assert!(chromatic_index(&Graph::empty(3), &b).is_err());
    assert!(is_class_one(&Graph::empty(3), &b).is_err());
}

#[test]
fn criticality_matches_definition() {
    for g in small_graphs(5).into_iter().filter(|g| g.m() > 0) {
        let el = edge_list(&g);
        let delta = degrees(g.n(), &el).into_iter().max().unwrap();
        let class2 = !colorable(g.n(), &el, delta as u8);
        // class 2 and every edge deletion drops the index
        let want = class2
            && (0..el.len()).all(|i| {
                let rest: Vec<_> = el
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, p)| *p)
                    .collect();
                colorable(g.n(), &rest, delta as u8)
            });
        assert_eq!(is_critical(&g, &budget()).unwrap(), want, "{el:?}");
        if want {
            assert!(check_val(&g), "{el:?}");
        }
    }
    assert!(is_critical(&families::petersen_minus_vertex(), &budget()).unwrap());
    assert!(check_val(&families::petersen_minus_vertex()));
}

proptest! {
    #![proptest_config(common::prop_config(200))]

    #[test]
    fn vizing_uses_at_most_delta_plus_one(n in 2usize..40, density in 0.05f64..0.6, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(density))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        let c = vizing_color(&g);
        prop_assert!(c.is_total());
        prop_assert!(common::proper(n, &edge_list(&g), c.as_slice()));
        prop_assert!(c.colors_used().len() <= g.max_degree() + 1);
    }
}
