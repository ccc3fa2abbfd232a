//! Exact counting and explicit enumeration of admissible words.

use std::io::Write;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Alphabet, DirectedGraph};
use crate::matrix::SquareMatrix;

/// Default upper bound on the number of words an enumeration may produce.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_ENV: &str = "SYMGRAPH_ENUM_CAP";

/// The enumeration cap in effect: `SYMGRAPH_ENUM_CAP` if set and valid,
/// otherwise [`DEFAULT_ENUM_CAP`].
pub fn enumeration_cap() -> u64 {
    std::env::var(ENUM_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

/// A finite word as a sequence of letter indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("words have length >= 1".into()));
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subword(&self, start: usize, len: usize) -> Word {
        Word {
            letters: self.letters[start..start + len].to_vec(),
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render(&self.letters)
    }
}

/// Words of one common length, stored contiguously in lexicographic
/// (letter-index) order without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSet {
    length: usize,
    letters: Vec<usize>,
}

impl WordSet {
    /// The length-1 words: the alphabet itself.
    pub(crate) fn alphabet(k: usize) -> Self {
        Self {
            length: 1,
            letters: (0..k).collect(),
        }
    }

    /// Applies one 1-letter extension step using `graph`.
    pub(crate) fn extend(&self, graph: &DirectedGraph) -> Self {
        let n = self.length;
        let mut letters = Vec::new();
        for w in self.iter() {
            let last = w[n - 1];
            for &next in graph.successors(last) {
                letters.extend_from_slice(w);
                letters.push(next);
            }
        }
        Self {
            length: n + 1,
            letters,
        }
    }

    pub fn word_length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.letters.len() / self.length
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.letters.chunks_exact(self.length)
    }

    pub fn words(&self) -> Vec<Word> {
        self.iter()
            .map(|w| Word {
                letters: w.to_vec(),
            })
            .collect()
    }

    pub fn contains(&self, word: &[usize]) -> bool {
        if word.len() != self.length {
            return false;
        }
        let n = self.len();
        let (mut lo, mut hi) = (0, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            let w = &self.letters[mid * self.length..(mid + 1) * self.length];
            match w.cmp(word) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn render(&self, alphabet: &Alphabet) -> Vec<String> {
        self.iter().map(|w| alphabet.render(w)).collect()
    }
}

/// `ω^n(X_i, X_j)` for all letter pairs at one word length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    pub n: u64,
    pub entries: SquareMatrix<BigUint>,
}

impl CountMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &BigUint {
        self.entries.get(i, j)
    }

    pub fn total(&self) -> BigUint {
        self.entries.total()
    }
}

/// One row of a [`CountSeries`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountPoint {
    pub n: u64,
    #[serde(serialize_with = "crate::decimal::ser")]
    pub total: BigUint,
    #[serde(serialize_with = "crate::decimal::ser_vec")]
    pub rows: Vec<BigUint>,
    #[serde(serialize_with = "crate::decimal::ser_vec")]
    pub cols: Vec<BigUint>,
}

/// Totals, row sums and column sums for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSeries {
    pub symbols: Vec<String>,
    pub points: Vec<CountPoint>,
}

impl CountSeries {
    pub fn totals(&self) -> Vec<(u64, BigUint)> {
        self.points.iter().map(|p| (p.n, p.total.clone())).collect()
    }

    pub fn csv_header(&self) -> Vec<String> {
        let mut header = vec!["n".to_string(), "omega_total".to_string()];
        header.extend(self.symbols.iter().map(|s| format!("omega_row_{s}")));
        header.extend(self.symbols.iter().map(|s| format!("omega_col_{s}")));
        header
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.csv_header())?;
        for p in &self.points {
            let mut rec = vec![p.n.to_string(), p.total.to_string()];
            rec.extend(p.rows.iter().map(ToString::to_string));
            rec.extend(p.cols.iter().map(ToString::to_string));
            w.write_record(rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("word length must be >= 1".into()));
    }
    Ok(())
}

/// `M^(n-1)`, whose `(i, j)` entry counts admissible words of length `n`
/// from `X_i` to `X_j`.
pub fn count_matrix(graph: &DirectedGraph, n: u64) -> Result<CountMatrix> {
    check_n(n)?;
    Ok(CountMatrix {
        n,
        entries: graph.matrix::<BigUint>().pow(n - 1),
    })
}

/// `ω^n`, the number of admissible words of length `n`.
pub fn total_count(graph: &DirectedGraph, n: u64) -> Result<BigUint> {
    Ok(count_matrix(graph, n)?.total())
}

/// Totals, row sums and column sums for every `n` in `1..=n_max`.
pub fn count_series(graph: &DirectedGraph, n_max: u64) -> Result<CountSeries> {
    check_n(n_max)?;
    let m = graph.matrix::<BigUint>();
    let mut power = SquareMatrix::<BigUint>::identity(graph.k());
    let mut points = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        if n > 1 {
            power = power.mul(&m);
        }
        points.push(CountPoint {
            n,
            total: power.total(),
            rows: power.row_sums(),
            cols: power.col_sums(),
        });
    }
    Ok(CountSeries {
        symbols: graph.alphabet().symbols().to_vec(),
        points,
    })
}

/// Totals `ω^n` for `n = 1..=n_max`.
pub fn total_series(graph: &DirectedGraph, n_max: u64) -> Result<Vec<BigUint>> {
    check_n(n_max)?;
    let m = graph.matrix::<BigUint>();
    let mut v = vec![BigUint::one(); graph.k()];
    let mut out = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        if n > 1 {
            v = m.left_mul_vec(&v);
        }
        out.push(v.iter().sum());
    }
    Ok(out)
}

/// Iterated 1-letter extension from the alphabet, with the default cap.
pub fn enumerate_words(graph: &DirectedGraph, n: u64) -> Result<WordSet> {
    enumerate_words_capped(graph, n, enumeration_cap())
}

pub fn enumerate_words_capped(graph: &DirectedGraph, n: u64, cap: u64) -> Result<WordSet> {
    check_n(n)?;
    let count = total_count(graph, n)?;
    if count > BigUint::from(cap) {
        return Err(Error::EnumerationCap { count, cap });
    }
    let mut set = WordSet::alphabet(graph.k());
    for _ in 1..n {
        set = set.extend(graph);
    }
    Ok(set)
}

/// True iff every adjacent pair of letters is an arrow of `graph`.
pub fn is_admissible(graph: &DirectedGraph, word: &[usize]) -> bool {
    word.windows(2).all(|p| graph.has_edge(p[0], p[1]))
}
