mod common;

use common::{chromatic_index, corpus, degrees, edge_list, is_k5_minus_e, proper};
use hz4::graph::{families, Graph};
use hz4::harness::{
    classify, feasible_heavy_counts, in_scope, random_h4, Certificate, HarnessError, RunConfig,
    Verdict,
};
use hz4::structure::in_h_k;
use proptest::prelude::*;

fn cfg(seed: u64) -> RunConfig {
    RunConfig {
        seed,
        ..RunConfig::default()
    }
}

#[test]
fn small_connected_graphs_match_brute_force() {
    let mut class2 = 0;
    for (g6, g) in corpus("conn_d4_n", 5..=8) {
        let el = edge_list(&g);
        if !in_scope(&g) {
            assert!(
                matches!(classify(&g, &cfg(0)), Err(HarnessError::OutOfScope(_))),
                "{g6}"
            );
            continue;
        }
        let r = classify(&g, &cfg(1)).unwrap();
        let want = chromatic_index(g.n(), &el);
        assert_eq!(r.verdict == Verdict::Class1, want == 4, "{g6}");
        assert_eq!(
            r.verdict == Verdict::Class2,
            is_k5_minus_e(g.n(), &el),
            "{g6}"
        );
        match r.verdict {
            Verdict::Class1 => {
                let c = r.coloring.unwrap();
                assert!(
                    c.as_slice().iter().all(|x| matches!(x, Some(0..=3))),
                    "{g6}"
                );
                assert!(proper(g.n(), &el, c.as_slice()), "{g6}");
            }
            Verdict::Class2 => {
                class2 += 1;
                assert!(r.coloring.is_none());
                assert!(r.certificate.is_some());
            }
        }
    }
    assert_eq!(class2, 1);
}

#[test]
fn k5_minus_e_is_class_two() {
    let g = families::k5_minus_e();
    let r = classify(&g, &cfg(0)).unwrap();
    assert_eq!(r.verdict, Verdict::Class2);
    assert!(matches!(
        r.certificate,
        Some(Certificate::K5MinusE | Certificate::Overfull { .. })
    ));
    assert_eq!(r.to_json(false)["verdict"], "class2");
}

#[test]
fn out_of_scope_inputs_are_rejected() {
    let two_triangles =
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
    for g in [
        families::complete(5),
        families::cycle(6),
        families::petersen(),
        families::star(5),
        two_triangles,
    ] {
        assert!(matches!(
            classify(&g, &cfg(0)),
            Err(HarnessError::OutOfScope(_))
        ));
    }
}

#[test]
fn feasible_orders_admit_instances() {
    for n in 5..=16 {
        let orders = feasible_heavy_counts(n);
        assert_eq!(orders.is_empty(), random_h4(n, 3).is_err(), "n = {n}");
    }
}

proptest! {
    #![proptest_config(common::prop_config(96))]

    #[test]
    fn generated_hosts_are_class_one(n in 7usize..=48, seed in any::<u64>(), run_seed in any::<u64>()) {
        let Ok(g) = random_h4(n, seed) else { return Ok(()) };
        let el = edge_list(&g);
        let d = degrees(n, &el);
        prop_assert!(in_h_k(&g, 4));
        prop_assert!(d.iter().all(|&x| x == 3 || x == 4));
        prop_assert!(common::connected(n, &el));

        let r = classify(&g, &cfg(run_seed)).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Class1);
        let c = r.coloring.unwrap();
        prop_assert!(c.is_total());
        prop_assert!(proper(n, &el, c.as_slice()));
        prop_assert!(c.as_slice().iter().all(|x| matches!(x, Some(0..=3))));
        prop_assert_eq!(random_h4(n, seed).unwrap(), g);
    }
}
