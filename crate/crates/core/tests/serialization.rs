use proptest::prelude::*;

use symgraph::combiner::{Schedule, ScheduleSpec};
use symgraph::{Alphabet, DirectedGraph, GraphSpec};

const POOL: [&str; 8] = ["X", "Y", "Z", "W", "up", "down", "q7", "A_1"];

fn graph_strategy() -> impl Strategy<Value = DirectedGraph> {
    (1usize..=5)
        .prop_flat_map(|k| {
            (
                proptest::sample::subsequence(POOL.to_vec(), k),
                proptest::collection::vec(any::<bool>(), k * k),
                proptest::option::of("[a-z]{1,8}"),
            )
        })
        .prop_map(|(symbols, bits, name)| {
            let k = symbols.len();
            let alphabet = Alphabet::new(symbols).unwrap();
            let edges = (0..k * k).filter(|&b| bits[b]).map(|b| (b / k, b % k));
            let g = DirectedGraph::new(alphabet, edges).unwrap();
            match name {
                Some(n) => g.with_name(n),
                None => g,
            }
        })
}

proptest! {
    #[test]
    fn graph_json_round_trips(g in graph_strategy()) {
        let text = g.to_json();
        let back = DirectedGraph::parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn edge_order_does_not_matter(g in graph_strategy(), seed in any::<u64>()) {
        let mut spec: GraphSpec = g.to_spec();
        let len = spec.edges.len();
        if len > 1 {
            spec.edges.rotate_left((seed as usize) % len);
            spec.edges.reverse();
        }
        let text = serde_json::to_string(&spec).unwrap();
        prop_assert_eq!(DirectedGraph::parse(&text).unwrap(), g);
    }

    #[test]
    fn words_render_and_parse(g in graph_strategy(), picks in proptest::collection::vec(any::<u8>(), 1..12)) {
        let alphabet = g.alphabet();
        let word: Vec<usize> = picks.iter().map(|&p| p as usize % alphabet.len()).collect();
        let text = alphabet.render(&word);
        prop_assert_eq!(alphabet.parse_word(&text).unwrap(), word);
    }

    #[test]
    fn schedules_round_trip(stints in proptest::collection::vec(1u64..50, 1..20)) {
        let from_s = Schedule::from_stints(stints.clone()).unwrap();
        let g: Vec<u64> = from_s.boundaries()[1..].to_vec();
        let doc = serde_json::json!({ "g": g }).to_string();
        let from_g = ScheduleSpec::parse(&doc).unwrap();
        prop_assert_eq!(&from_g, &from_s);
        for (i, s) in stints.iter().enumerate() {
            prop_assert_eq!(from_g.s(i + 1), *s);
        }
    }
}

#[test]
fn rejects_unknown_fields_and_bad_documents() {
    for bad in [
        r#"{"alphabet":["X"],"edges":[],"extra":1}"#,
        r#"{"alphabet":["X","X"],"edges":[]}"#,
        r#"{"alphabet":[],"edges":[]}"#,
        r#"{"alphabet":["X"],"edges":[["X","X"],["X","X"]]}"#,
        r#"{"alphabet":["X"]}"#,
        "[]",
    ] {
        assert!(DirectedGraph::parse(bad).is_err(), "{bad}");
    }
    for bad in [
        r#"{"g":[3,3]}"#,
        r#"{"s":[0]}"#,
        r#"{"g":[1],"s":[1]}"#,
        "{}",
    ] {
        assert!(ScheduleSpec::parse(bad).is_err(), "{bad}");
    }
}
