mod common;

use common::edge_list;
use hz4::graph::{emit_edge_list, emit_graph6, families, parse_edge_list, parse_graph6, Graph};
use proptest::prelude::*;

/// Straight transcription of the format: size prefix, then the bits
/// x(0,1) x(0,2) x(1,2) x(0,3) ... six per byte, zero-padded.
fn reference_encode(n: usize, edges: &[(usize, usize)]) -> String {
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(edges.contains(&(i, j)));
        }
    }
    for chunk in bits.chunks(6) {
        let mut b = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                b |= 1 << (5 - k);
            }
        }
        out.push(b + 63);
    }
    String::from_utf8(out).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        let len = pairs.len();
        (Just(n), proptest::collection::vec(any::<bool>(), len)).prop_map(move |(n, keep)| {
            let edges = pairs
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(p, _)| *p)
                .collect();
            (n, edges)
        })
    })
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

fn sorted(mut v: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    v.sort();
    v
}

proptest! {
    #![proptest_config(common::prop_config(256))]

    #[test]
    fn emit_matches_reference((n, edges) in arb_graph(70)) {
        let g = build(n, &edges);
        prop_assert_eq!(emit_graph6(&g), reference_encode(n, &edges));
    }

    #[test]
    fn parse_inverts_reference((n, edges) in arb_graph(70)) {
        let g = parse_graph6(&reference_encode(n, &edges)).unwrap();
        prop_assert_eq!(g.n(), n);
        prop_assert_eq!(sorted(edge_list(&g)), sorted(edges));
    }

    #[test]
    fn edge_list_round_trip((n, edges) in arb_graph(20)) {
        prop_assume!(!edges.is_empty());
        let g = build(n, &edges);
        let back = parse_edge_list(&emit_edge_list(&g)).unwrap();
        prop_assert_eq!(sorted(edge_list(&back)), sorted(edges));
    }

    #[test]
    fn arbitrary_bytes_never_panic(s in "[?-~]{0,12}") {
        if let Ok(g) = parse_graph6(&s) {
            prop_assert_eq!(emit_graph6(&g), s);
        }
    }
}

#[test]
fn known_strings() {
    assert_eq!(emit_graph6(&families::complete(5)), "D~{");
    assert_eq!(emit_graph6(&families::k5_minus_e()).len(), 3);
    assert_eq!(emit_graph6(&Graph::empty(0)), "?");
    assert_eq!(
        emit_graph6(&families::petersen()),
        reference_encode(10, &sorted(edge_list(&families::petersen())))
    );
}

#[test]
fn header_is_accepted() {
    let g = parse_graph6(">>graph6<<D~{").unwrap();
    assert_eq!(g.m(), 10);
}

#[test]
fn malformed_input_is_rejected() {
    for bad in ["", "D~", "D~{?", "D~|", "\u{7f}", "D ~{"] {
        assert!(parse_graph6(bad).is_err(), "{bad:?} parsed");
    }
}

#[test]
fn edge_list_errors_name_the_line() {
    let err = parse_edge_list("0 1\n1 1\n").unwrap_err().to_string();
    assert!(err.contains('2'), "{err}");
    assert!(parse_edge_list("0 1 2\n").is_err());
    assert!(parse_edge_list("0 x\n").is_err());
    let g = parse_edge_list("# comment\n0 1\n\n1 2 # tail\n").unwrap();
    assert_eq!((g.n(), g.m()), (3, 2));
}
