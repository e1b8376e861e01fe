mod common;

use std::collections::BTreeSet;

use common::{core_max_degree, corpus, degrees, edge_list, Pair};
use hz4::graph::{families, Graph};
use hz4::structure::{
    enumerate_configurations, find_configuration, find_configuration_at, in_g_k, in_h_k,
    ConfigKind, StructureError,
};

/// Role degrees and edges written out independently of the library tables.
/// The first edge is the one the extension colors.
fn shape(kind: ConfigKind) -> (&'static [usize], &'static [Pair]) {
    match kind {
        // v z w x y
        ConfigKind::A => (&[4, 3, 4, 3, 3], &[(0, 1), (0, 2), (0, 3), (2, 3), (2, 4)]),
        // u v w x y z
        ConfigKind::B => (
            &[3, 4, 3, 4, 4, 3],
            &[(0, 3), (1, 0), (1, 2), (3, 2), (3, 4), (4, 5)],
        ),
        // s t u v w x y z
        ConfigKind::C => (
            &[4, 3, 3, 4, 4, 3, 3, 3],
            &[(0, 1), (0, 2), (0, 3), (0, 4), (3, 5), (3, 6), (4, 7)],
        ),
    }
}

fn has(el: &[Pair], a: usize, b: usize) -> bool {
    el.contains(&(a.min(b), a.max(b)))
}

fn reference_valid(n: usize, el: &[Pair], kind: ConfigKind, roles: &[usize]) -> bool {
    let (deg, edges) = shape(kind);
    let d = degrees(n, el);
    let distinct: BTreeSet<_> = roles.iter().collect();
    roles.len() == deg.len()
        && distinct.len() == roles.len()
        && roles.iter().zip(deg).all(|(&v, &k)| d[v] == k)
        && edges.iter().all(|&(a, b)| has(el, roles[a], roles[b]))
}

/// Every injective role assignment satisfying the shape.
fn reference_matches(n: usize, el: &[Pair], kind: ConfigKind) -> BTreeSet<Vec<usize>> {
    let (deg, _) = shape(kind);
    let mut out = BTreeSet::new();
    let mut cur = Vec::new();
    fn go(
        n: usize,
        el: &[Pair],
        kind: ConfigKind,
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if cur.len() == k {
            if reference_valid(n, el, kind, cur) {
                out.insert(cur.clone());
            }
            return;
        }
        for v in 0..n {
            if !cur.contains(&v) && degrees(n, el)[v] == shape(kind).0[cur.len()] {
                cur.push(v);
                go(n, el, kind, k, cur, out);
                cur.pop();
            }
        }
    }
    go(n, el, kind, deg.len(), &mut cur, &mut out);
    out
}

fn reference_in_h4(n: usize, el: &[Pair]) -> bool {
    let d = degrees(n, el);
    let heavy = |v: usize| {
        el.iter()
            .filter(|&&(a, b)| (a == v && d[b] == 4) || (b == v && d[a] == 4))
            .count()
    };
    n > 0
        && d.iter().all(|&x| x == 3 || x == 4)
        && d.contains(&4)
        && d.contains(&3)
        && (0..n).all(|v| heavy(v) >= 1 && (d[v] == 3 || heavy(v) == 2))
}

#[test]
fn class_predicates_match_reference() {
    for (g6, g) in corpus("all_n", 1..=7)
        .into_iter()
        .chain(corpus("conn_d4_n", 5..=8))
    {
        let el = edge_list(&g);
        let delta = degrees(g.n(), &el).into_iter().max().unwrap_or(0);
        assert_eq!(
            in_g_k(&g, 4),
            delta == 4 && core_max_degree(g.n(), &el) <= 2,
            "{g6}"
        );
        assert_eq!(in_h_k(&g, 4), reference_in_h4(g.n(), &el), "{g6}");
    }
}

#[test]
fn enumeration_matches_brute_force() {
    let hosts: Vec<_> = corpus("conn_d4_n", 5..=9)
        .into_iter()
        .filter(|(_, g)| in_h_k(g, 4))
        .collect();
    assert!(hosts.len() > 10);
    let mut seen = [0usize; 3];
    for (g6, g) in &hosts {
        let el = edge_list(g);
        let all = enumerate_configurations(g);
        for (k, kind) in ConfigKind::ALL.into_iter().enumerate() {
            let got: BTreeSet<Vec<usize>> = all
                .iter()
                .filter(|m| m.kind == kind)
                .map(|m| m.roles.clone())
                .collect();
            let want = reference_matches(g.n(), &el, kind);
            assert_eq!(got, want, "{g6} kind {kind}");
            seen[k] += got.len();
        }
    }
    assert!(seen.iter().all(|&s| s > 0), "{seen:?}");
}

#[test]
fn locator_returns_valid_matches() {
    for (g6, g) in corpus("conn_d4_n", 5..=10)
        .into_iter()
        .filter(|(_, g)| in_h_k(g, 4))
    {
        let el = edge_list(&g);
        if g.is_k5_minus_e() {
            assert_eq!(find_configuration(&g), Err(StructureError::IsK5MinusE));
            continue;
        }
        let m = find_configuration(&g).unwrap();
        assert!(reference_valid(g.n(), &el, m.kind, &m.roles), "{g6}: {m}");
        for v in (0..g.n()).filter(|&v| g.degree(v) == 4) {
            let m = find_configuration_at(&g, v).unwrap();
            assert!(
                reference_valid(g.n(), &el, m.kind, &m.roles),
                "{g6} at {v}: {m}"
            );
        }
    }
}

#[test]
fn locator_rejects_inputs_outside_the_class() {
    assert!(find_configuration(&families::complete(5)).is_err());
    assert!(find_configuration(&families::petersen()).is_err());
    let two = Graph::from_edges(
        10,
        edge_list(&families::k5_minus_e())
            .into_iter()
            .flat_map(|(a, b)| [(a, b), (a + 5, b + 5)]),
    )
    .unwrap();
    assert_eq!(find_configuration(&two), Err(StructureError::NotConnected));
}
