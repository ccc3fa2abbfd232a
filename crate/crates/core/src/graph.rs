//! Alphabets, directed graphs and derived graphs.
//!
//! A [`DirectedGraph`] is a 0/1 adjacency relation over an ordered
//! [`Alphabet`]. Graphs are immutable once built.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// An ordered list of distinct symbols `X_1..X_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet must not be empty".into()));
        }
        let mut seen = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c.is_control()) {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol {s:?} is not a printable token"
                )));
            }
            if seen.insert(s.as_str(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Self { symbols })
    }

    /// Alphabet of single-letter symbols `A, B, C, ...` (then `S<i>` past 26).
    pub fn letters(k: usize) -> Self {
        let symbols = (0..k)
            .map(|i| {
                if i < 26 {
                    char::from(b'A' + i as u8).to_string()
                } else {
                    format!("S{i}")
                }
            })
            .collect();
        Self { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.symbols[index]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    /// Renders a word given as letter indices.
    pub fn render(&self, letters: &[usize]) -> String {
        let sep = if self.symbols.iter().all(|s| s.chars().count() == 1) {
            ""
        } else {
            " "
        };
        letters
            .iter()
            .map(|&i| self.symbols[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a rendered word back into letter indices.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        if self.symbols.iter().all(|s| s.chars().count() == 1) && !text.contains(' ') {
            text.chars()
                .map(|c| {
                    let s = c.to_string();
                    self.index_of(&s).ok_or(Error::UnknownSymbol(s))
                })
                .collect()
        } else {
            text.split_whitespace()
                .map(|s| {
                    self.index_of(s)
                        .ok_or_else(|| Error::UnknownSymbol(s.into()))
                })
                .collect()
        }
    }
}

/// A directed graph with at most one arrow per ordered pair of letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    alphabet: Alphabet,
    adjacency: Vec<bool>,
    successors: Vec<Vec<usize>>,
    name: Option<String>,
}

/// Structural report produced by [`DirectedGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDiagnostics {
    pub weakly_connected: bool,
    pub strongly_connected: bool,
    pub absorbing_states: Vec<String>,
    pub edge_count: usize,
}

/// On-disk graph document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub alphabet: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl DirectedGraph {
    /// Builds a graph from index pairs. Repeated pairs are rejected.
    pub fn new(
        alphabet: Alphabet,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let k = alphabet.len();
        let mut adjacency = vec![false; k * k];
        for (i, j) in edges {
            if i >= k || j >= k {
                return Err(Error::InvalidArgument(format!(
                    "edge ({i}, {j}) out of range for alphabet of size {k}"
                )));
            }
            if std::mem::replace(&mut adjacency[i * k + j], true) {
                return Err(Error::DuplicateEdge(
                    alphabet.symbol(i).into(),
                    alphabet.symbol(j).into(),
                ));
            }
        }
        Ok(Self::from_parts(alphabet, adjacency, None))
    }

    /// Builds a graph from 0/1 adjacency rows.
    pub fn from_rows(alphabet: Alphabet, rows: &[&[u8]]) -> Result<Self> {
        let k = alphabet.len();
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidArgument(format!("adjacency must be {k}x{k}")));
        }
        let mut adjacency = Vec::with_capacity(k * k);
        for row in rows {
            for &v in row.iter() {
                match v {
                    0 => adjacency.push(false),
                    1 => adjacency.push(true),
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "adjacency entry {v} is not 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(Self::from_parts(alphabet, adjacency, None))
    }

    /// Decodes a graph on the letter alphabet from a bitmask where bit
    /// `i * k + j` is the arrow `i -> j`.
    pub fn from_mask(k: usize, mask: u64) -> Self {
        assert!(k * k <= 64, "mask encoding supports k <= 8");
        let adjacency = (0..k * k).map(|b| mask >> b & 1 == 1).collect();
        Self::from_parts(Alphabet::letters(k), adjacency, None)
    }

    fn from_parts(alphabet: Alphabet, adjacency: Vec<bool>, name: Option<String>) -> Self {
        let k = alphabet.len();
        let successors = (0..k)
            .map(|i| (0..k).filter(|&j| adjacency[i * k + j]).collect())
            .collect();
        Self {
            alphabet,
            adjacency,
            successors,
            name,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn k(&self) -> usize {
        self.alphabet.len()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.adjacency[from * self.k() + to]
    }

    pub fn successors(&self, from: usize) -> &[usize] {
        &self.successors[from]
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.k();
        (0..k * k)
            .filter(|&b| self.adjacency[b])
            .map(move |b| (b / k, b % k))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().filter(|&&b| b).count()
    }

    /// Bitmask encoding, bit `i * k + j` set iff `i -> j`.
    pub fn mask(&self) -> u64 {
        assert!(self.k() * self.k() <= 64, "mask encoding supports k <= 8");
        self.adjacency
            .iter()
            .enumerate()
            .fold(0u64, |m, (b, &e)| if e { m | 1 << b } else { m })
    }

    /// The adjacency matrix `M` over any integer type.
    pub fn matrix<T: Clone + Zero + One>(&self) -> SquareMatrix<T> {
        SquareMatrix::from_fn(self.k(), |i, j| {
            if self.has_edge(i, j) {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// Same arrows, letters renamed by `perm` (letter `i` becomes `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let k = self.k();
        assert_eq!(perm.len(), k);
        let mut adjacency = vec![false; k * k];
        for (i, j) in self.edges() {
            adjacency[perm[i] * k + perm[j]] = true;
        }
        let mut symbols = vec![String::new(); k];
        for (i, s) in self.alphabet.symbols.iter().enumerate() {
            symbols[perm[i]] = s.clone();
        }
        Self::from_parts(Alphabet { symbols }, adjacency, self.name.clone())
    }

    pub fn validate(&self) -> GraphDiagnostics {
        let k = self.k();
        let absorbing_states = (0..k)
            .filter(|&i| self.successors(i).iter().all(|&j| j == i))
            .map(|i| self.alphabet.symbol(i).to_string())
            .collect();
        GraphDiagnostics {
            weakly_connected: self.reach_all(true, false),
            strongly_connected: self.reach_all(false, false) && self.reach_all(false, true),
            absorbing_states,
            edge_count: self.edge_count(),
        }
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.reach_all(true, false)
    }

    fn reach_all(&self, undirected: bool, reversed: bool) -> bool {
        let k = self.k();
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (w, seen_w) in seen.iter_mut().enumerate() {
                let linked = if undirected {
                    self.has_edge(v, w) || self.has_edge(w, v)
                } else if reversed {
                    self.has_edge(w, v)
                } else {
                    self.has_edge(v, w)
                };
                if linked && !*seen_w {
                    *seen_w = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The graph whose vertices are the edges `ij` of `self`, with an arrow
    /// `ij -> jk` for every path `i -> j -> k`.
    pub fn higher_order_graph(&self) -> Result<Self> {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        if edges.is_empty() {
            return Err(Error::EdgelessGraph);
        }
        let sep = label_separator(&self.alphabet);
        let labels = edges.iter().map(|&(i, j)| {
            format!(
                "{}{sep}{}",
                self.alphabet.symbol(i),
                self.alphabet.symbol(j)
            )
        });
        let alphabet = Alphabet::new(labels)?;
        let m = edges.len();
        let mut adjacency = vec![false; m * m];
        for (a, &(_, j)) in edges.iter().enumerate() {
            for (b, &(j2, _)) in edges.iter().enumerate() {
                if j == j2 {
                    adjacency[a * m + b] = true;
                }
            }
        }
        let name = self.name.as_ref().map(|n| format!("{n}^(2)"));
        Ok(Self::from_parts(alphabet, adjacency, name))
    }

    pub fn to_spec(&self) -> GraphSpec {
        let mut edges: Vec<[String; 2]> = self
            .edges()
            .map(|(i, j)| {
                [
                    self.alphabet.symbol(i).to_string(),
                    self.alphabet.symbol(j).to_string(),
                ]
            })
            .collect();
        edges.sort();
        GraphSpec {
            alphabet: self.alphabet.symbols.clone(),
            edges,
            name: self.name.clone(),
        }
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let alphabet = Alphabet::new(spec.alphabet.iter().cloned())?;
        let mut pairs = Vec::with_capacity(spec.edges.len());
        for [from, to] in &spec.edges {
            let i = alphabet
                .index_of(from)
                .ok_or_else(|| Error::UnknownSymbol(from.clone()))?;
            let j = alphabet
                .index_of(to)
                .ok_or_else(|| Error::UnknownSymbol(to.clone()))?;
            pairs.push((i, j));
        }
        let mut g = Self::new(alphabet, pairs)?;
        g.name = spec.name.clone();
        Ok(g)
    }

    /// Parses a graph-spec JSON document.
    pub fn parse(text: &str) -> Result<Self> {
        let spec: GraphSpec =
            serde_json::from_str(text).map_err(|e| Error::MalformedGraph(e.to_string()))?;
        Self::from_spec(&spec)
    }

    /// Serializes to the graph-spec JSON document, edges sorted.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("graph spec serializes")
    }
}

impl fmt::Display for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k();
        for i in 0..k {
            let row: Vec<&str> = (0..k)
                .map(|j| if self.has_edge(i, j) { "1" } else { "0" })
                .collect();
            writeln!(f, "{} [{}]", self.alphabet.symbol(i), row.join(" "))?;
        }
        Ok(())
    }
}

/// Separator for higher-order labels: empty when every symbol is a single
/// character, otherwise the first candidate that occurs in no symbol.
fn label_separator(alphabet: &Alphabet) -> &'static str {
    if alphabet.symbols.iter().all(|s| s.chars().count() == 1) {
        return "";
    }
    const CANDIDATES: [&str; 6] = ["-", "_", ":", "|", "/", "+"];
    CANDIDATES
        .into_iter()
        .find(|c| alphabet.symbols.iter().all(|s| !s.contains(c)))
        .unwrap_or("\u{b7}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn parse_g1_rows() {
        let g = DirectedGraph::parse(
            r#"{"alphabet":["X","Y","Z"],"edges":[["X","X"],["X","Y"],["X","Z"],["Y","Y"],["Z","X"],["Z","Y"]]}"#,
        )
        .unwrap();
        let rows: Vec<Vec<bool>> = (0..3)
            .map(|i| (0..3).map(|j| g.has_edge(i, j)).collect())
            .collect();
        assert_eq!(
            rows,
            vec![
                vec![true, true, true],
                vec![false, true, false],
                vec![true, true, false]
            ]
        );
    }

    #[test]
    fn parse_is_order_independent() {
        let a = DirectedGraph::parse(
            r#"{"alphabet":["X","Y","Z"],"edges":[["X","Y"],["Y","Y"],["Z","X"],["Z","Y"],["Z","Z"]]}"#,
        )
        .unwrap();
        let b = DirectedGraph::parse(
            r#"{"alphabet":["X","Y","Z"],"edges":[["Z","Z"],["Z","Y"],["Z","X"],["Y","Y"],["X","Y"]]}"#,
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a, presets::g2().with_name_cleared());
    }

    #[test]
    fn single_letter_without_edges() {
        let g = DirectedGraph::parse(r#"{"alphabet":["X"],"edges":[]}"#).unwrap();
        assert_eq!(g.k(), 1);
        assert!(g.matrix::<u32>().is_zero());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            DirectedGraph::parse(r#"{"alphabet":["X","X"],"edges":[]}"#),
            Err(Error::DuplicateSymbol(_))
        ));
        assert!(matches!(
            DirectedGraph::parse(r#"{"alphabet":["X"],"edges":[["X","Q"]]}"#),
            Err(Error::UnknownSymbol(s)) if s == "Q"
        ));
        assert!(matches!(
            DirectedGraph::parse(r#"{"alphabet":["X"],"edges":[["X","X"],["X","X"]]}"#),
            Err(Error::DuplicateEdge(..))
        ));
        assert!(matches!(
            DirectedGraph::parse(r#"{"alphabet":["X"],"edges":[["X"]]}"#),
            Err(Error::MalformedGraph(_))
        ));
        assert!(matches!(
            DirectedGraph::parse(r#"{"alphabet":[],"edges":[]}"#),
            Err(Error::InvalidAlphabet(_))
        ));
    }

    #[test]
    fn diagnostics() {
        let d = presets::g1().validate();
        assert_eq!(d.absorbing_states, vec!["Y".to_string()]);
        assert!(d.weakly_connected);
        assert!(!d.strongly_connected);

        let d = presets::complete(3).validate();
        assert!(d.absorbing_states.is_empty());
        assert!(d.strongly_connected);

        let d = presets::two_cycle().validate();
        assert!(d.strongly_connected);
        assert_eq!(d.edge_count, 2);

        let d = presets::g2().validate();
        assert!(d.weakly_connected && !d.strongly_connected);
    }

    #[test]
    fn higher_order_two_cycle() {
        let h = presets::two_cycle().higher_order_graph().unwrap();
        assert_eq!(h.alphabet().symbols(), ["XY", "YX"]);
        assert!(h.has_edge(0, 1) && h.has_edge(1, 0));
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn higher_order_counts() {
        let h = presets::g1().higher_order_graph().unwrap();
        assert_eq!((h.k(), h.edge_count()), (6, 11));
        let h = presets::complete(3).higher_order_graph().unwrap();
        assert_eq!((h.k(), h.edge_count()), (9, 27));
    }

    #[test]
    fn higher_order_rejects_edgeless() {
        let g = DirectedGraph::from_mask(1, 0);
        assert!(matches!(g.higher_order_graph(), Err(Error::EdgelessGraph)));
    }

    #[test]
    fn higher_order_labels_use_separator_for_long_symbols() {
        let a = Alphabet::new(["a", "ab", "b"]).unwrap();
        let g = DirectedGraph::new(a, [(0, 2), (1, 0), (2, 1)]).unwrap();
        let h = g.higher_order_graph().unwrap();
        assert_eq!(h.alphabet().symbols(), ["a-b", "ab-a", "b-ab"]);
    }

    #[test]
    fn mask_round_trip() {
        for mask in 0..512u64 {
            assert_eq!(DirectedGraph::from_mask(3, mask).mask(), mask);
        }
    }

    impl DirectedGraph {
        fn with_name_cleared(mut self) -> Self {
            self.name = None;
            self
        }
    }
}
