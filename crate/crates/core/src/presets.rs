//! Built-in graphs used by the reference experiments.

use crate::graph::{Alphabet, DirectedGraph};

fn xyz() -> Alphabet {
    Alphabet::new(["X", "Y", "Z"]).expect("valid alphabet")
}

/// Three letters, absorbing `Y`, Fibonacci-type growth.
pub fn g1() -> DirectedGraph {
    DirectedGraph::from_rows(xyz(), &[&[1, 1, 1], &[0, 1, 0], &[1, 1, 0]])
        .expect("valid preset")
        .with_name("G1")
}

/// Three letters, absorbing `Y`, linear growth `2n + 1`.
pub fn g2() -> DirectedGraph {
    DirectedGraph::from_rows(xyz(), &[&[0, 1, 0], &[0, 1, 0], &[1, 1, 1]])
        .expect("valid preset")
        .with_name("G2")
}

/// Complete graph with self-loops. For `k == 3` the letters are `X, Y, Z`.
pub fn complete(k: usize) -> DirectedGraph {
    let alphabet = if k == 3 { xyz() } else { Alphabet::letters(k) };
    let edges = (0..k).flat_map(|i| (0..k).map(move |j| (i, j)));
    DirectedGraph::new(alphabet, edges)
        .expect("valid preset")
        .with_name(format!("K{k}"))
}

/// `X -> Y -> X`.
pub fn two_cycle() -> DirectedGraph {
    DirectedGraph::from_rows(
        Alphabet::new(["X", "Y"]).expect("valid alphabet"),
        &[&[0, 1], &[1, 0]],
    )
    .expect("valid preset")
    .with_name("C2")
}

/// Two looped 2-cliques joined by a single arrow; counts grow like `n 2^n`.
pub fn clique_chain() -> DirectedGraph {
    DirectedGraph::from_rows(
        Alphabet::letters(4),
        &[&[1, 1, 1, 0], &[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 1]],
    )
    .expect("valid preset")
    .with_name("CHAIN")
}

/// Looks up a preset by case-insensitive name.
pub fn by_name(name: &str) -> Option<DirectedGraph> {
    match name.to_ascii_lowercase().as_str() {
        "g1" => Some(g1()),
        "g2" => Some(g2()),
        "k3" => Some(complete(3)),
        "c2" | "two-cycle" => Some(two_cycle()),
        "chain" => Some(clique_chain()),
        _ => None,
    }
}

pub const NAMES: [&str; 5] = ["G1", "G2", "K3", "C2", "CHAIN"];
