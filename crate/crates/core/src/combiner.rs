//! Scheduled combinations of graphs over one alphabet.
//!
//! A [`CombinedSystem`] cycles through its graphs; graph `r` governs the
//! extensions producing word lengths in one stint `(g_{i-1}, g_i]` of the
//! [`Schedule`]. The first stint therefore contributes `s_1 - 1` extension
//! steps (lengths `2..=g_1`), every later stint `s_i` steps.

use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::census::{enumeration_cap, Word, WordSet};
use crate::entropy::ln_big;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::matrix::SquareMatrix;
use crate::presets;

/// Increasing sequence `0 = g_0 < g_1 < g_2 < ...` of stint boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Schedule {
    g: Vec<u64>,
}

impl Schedule {
    /// From boundaries `g_1, g_2, ...`; a leading `0` is taken as `g_0`.
    pub fn from_boundaries(g: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut g: Vec<u64> = g.into_iter().collect();
        if g.first() != Some(&0) {
            g.insert(0, 0);
        }
        if g.len() < 2 {
            return Err(Error::InvalidSchedule(
                "schedule needs at least one stint".into(),
            ));
        }
        if let Some(w) = g.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSchedule(format!(
                "boundaries must increase strictly ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Self { g })
    }

    /// From stint lengths `s_1, s_2, ...`, all positive.
    pub fn from_stints(s: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut g = vec![0u64];
        for st in s {
            if st == 0 {
                return Err(Error::InvalidSchedule("stint lengths must be >= 1".into()));
            }
            let last = *g.last().expect("non-empty");
            g.push(
                last.checked_add(st)
                    .ok_or_else(|| Error::InvalidSchedule("boundary overflow".into()))?,
            );
        }
        Self::from_boundaries(g)
    }

    /// `s_1 = 4`, `s_{2t-1} = 2t + 1` for `t >= 2`, and
    /// `s_{2t} = (t+1)^4 - t^4 + t^2 - (t+1)^2`, for `t = 1..=t_max`.
    /// Then `g_{2t} = (t+1)^4` and `s_1 + s_3 + ... + s_{2t-1} = (t+1)^2`.
    pub fn paper(t_max: u64) -> Result<Self> {
        if t_max == 0 {
            return Err(Error::InvalidArgument("t_max must be >= 1".into()));
        }
        let mut s = Vec::with_capacity(2 * t_max as usize);
        for t in 1..=t_max {
            s.push(if t == 1 { 4 } else { 2 * t + 1 });
            let (a, b) = (t + 1, t);
            s.push(a.pow(4) - b.pow(4) + b * b - a * a);
        }
        Self::from_stints(s)
    }

    /// Stints of length one: the active graph changes at every extension.
    pub fn alternating(stints: u64) -> Result<Self> {
        Self::from_stints(std::iter::repeat_n(1, stints as usize))
    }

    /// `g_i`, with `g_0 = 0`.
    pub fn g(&self, i: usize) -> u64 {
        self.g[i]
    }

    /// `s_i = g_i - g_{i-1}` for `i >= 1`.
    pub fn s(&self, i: usize) -> u64 {
        self.g[i] - self.g[i - 1]
    }

    pub fn boundaries(&self) -> &[u64] {
        &self.g
    }

    /// Number of stints.
    pub fn len(&self) -> usize {
        self.g.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Longest word length the schedule determines.
    pub fn covered(&self) -> u64 {
        *self.g.last().expect("non-empty")
    }

    /// Stint index `i >= 1` with `g_{i-1} < j <= g_i`.
    pub fn stint_of(&self, j: u64) -> Result<usize> {
        if j == 0 || j > self.covered() {
            return Err(Error::ScheduleExhausted {
                requested: j,
                covered: self.covered(),
            });
        }
        // first index with g_i >= j
        Ok(self.g.partition_point(|&b| b < j))
    }
}

/// Schedule document: either boundaries `g` or stints `s`.
#[derive(Debug, Clone, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSpec {
    #[serde(default)]
    pub g: Option<Vec<u64>>,
    #[serde(default)]
    pub s: Option<Vec<u64>>,
}

impl ScheduleSpec {
    pub fn parse(text: &str) -> Result<Schedule> {
        let spec: ScheduleSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidSchedule(e.to_string()))?;
        match (spec.g, spec.s) {
            (Some(g), None) => Schedule::from_boundaries(g),
            (None, Some(s)) => Schedule::from_stints(s),
            _ => Err(Error::InvalidSchedule(
                "exactly one of `g` or `s` must be given".into(),
            )),
        }
    }
}

/// `ℓ >= 2` graphs over one ordered alphabet, driven by a schedule.
#[derive(Debug, Clone)]
pub struct CombinedSystem {
    graphs: Vec<DirectedGraph>,
    schedule: Schedule,
}

impl CombinedSystem {
    pub fn new(graphs: Vec<DirectedGraph>, schedule: Schedule) -> Result<Self> {
        if graphs.len() < 2 {
            return Err(Error::InvalidArgument(
                "a combined system needs at least two graphs".into(),
            ));
        }
        let alphabet = graphs[0].alphabet();
        if graphs.iter().any(|g| g.alphabet() != alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(Self { graphs, schedule })
    }

    /// `(G1, G2)` with the reference schedule up to `t_max` stint pairs.
    pub fn example_one(t_max: u64) -> Result<Self> {
        Self::new(vec![presets::g1(), presets::g2()], Schedule::paper(t_max)?)
    }

    /// `(K3, G2)` with the reference schedule up to `t_max` stint pairs.
    pub fn example_two(t_max: u64) -> Result<Self> {
        Self::new(
            vec![presets::complete(3), presets::g2()],
            Schedule::paper(t_max)?,
        )
    }

    pub fn graphs(&self) -> &[DirectedGraph] {
        &self.graphs
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn k(&self) -> usize {
        self.graphs[0].k()
    }

    /// Zero-based index of the graph performing the extension that produces
    /// words of length `j >= 2`.
    pub fn active_graph(&self, j: u64) -> Result<usize> {
        if j < 2 {
            return Err(Error::InvalidArgument(
                "extensions produce lengths >= 2".into(),
            ));
        }
        let stint = self.schedule.stint_of(j)?;
        Ok((stint - 1) % self.graphs.len())
    }

    fn check_covered(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("word length must be >= 1".into()));
        }
        if n > 1 && n > self.schedule.covered() {
            return Err(Error::ScheduleExhausted {
                requested: n,
                covered: self.schedule.covered(),
            });
        }
        Ok(())
    }

    /// `ω_F^n`: sum of the entries of the ordered product of the active
    /// adjacency matrices for the steps `j = 2..=n`.
    pub fn count(&self, n: u64) -> Result<BigUint> {
        Ok(self.counts_at(&[n])?.pop().expect("one requested length").1)
    }

    /// Counts at several lengths in one sweep; `lengths` need not be sorted.
    pub fn counts_at(&self, lengths: &[u64]) -> Result<Vec<(u64, BigUint)>> {
        let mut wanted: Vec<u64> = lengths.to_vec();
        wanted.sort_unstable();
        wanted.dedup();
        let Some(&max) = wanted.last() else {
            return Ok(Vec::new());
        };
        self.check_covered(max)?;
        if wanted[0] == 0 {
            return Err(Error::InvalidArgument("word length must be >= 1".into()));
        }
        let matrices: Vec<SquareMatrix<BigUint>> = self.graphs.iter().map(|g| g.matrix()).collect();
        let mut v = vec![BigUint::one(); self.k()];
        let mut out = Vec::with_capacity(wanted.len());
        let mut next = wanted.iter().peekable();
        for j in 1..=max {
            if j >= 2 {
                v = matrices[self.active_graph(j)?].left_mul_vec(&v);
            }
            if next.peek() == Some(&&j) {
                out.push((j, v.iter().sum()));
                next.next();
            }
        }
        let mut by_request = Vec::with_capacity(lengths.len());
        for &n in lengths {
            let idx = out.binary_search_by_key(&n, |(m, _)| *m).expect("computed");
            by_request.push(out[idx].clone());
        }
        Ok(by_request)
    }

    /// The ordered product of active matrices for lengths `2..=n`, grouped
    /// into powers per stint.
    pub fn ordered_product(&self, n: u64) -> Result<SquareMatrix<BigUint>> {
        self.check_covered(n)?;
        let matrices: Vec<SquareMatrix<BigUint>> = self.graphs.iter().map(|g| g.matrix()).collect();
        let mut acc = SquareMatrix::<BigUint>::identity(self.k());
        let mut j = 2;
        while j <= n {
            let stint = self.schedule.stint_of(j)?;
            let end = self.schedule.g(stint).min(n);
            let steps = end - j + 1;
            let m = &matrices[(stint - 1) % self.graphs.len()];
            acc = acc.mul(&m.pow(steps));
            j = end + 1;
        }
        Ok(acc)
    }

    /// `W_F^n` by iterating the scheduled 1-letter extensions from the
    /// alphabet, with the default cap.
    pub fn enumerate(&self, n: u64) -> Result<WordSet> {
        self.enumerate_capped(n, enumeration_cap())
    }

    pub fn enumerate_capped(&self, n: u64, cap: u64) -> Result<WordSet> {
        let count = self.count(n)?;
        if count > BigUint::from(cap) {
            return Err(Error::EnumerationCap { count, cap });
        }
        let mut set = WordSet::alphabet(self.k());
        for j in 2..=n {
            set = set.extend(&self.graphs[self.active_graph(j)?]);
        }
        Ok(set)
    }

    /// Membership in `W_F^{|word|}`: the transition producing length `j`
    /// must be an arrow of the graph active at `j`.
    pub fn is_admissible(&self, word: &[usize]) -> Result<bool> {
        if word.is_empty() {
            return Ok(false);
        }
        self.check_covered(word.len() as u64)?;
        for (idx, pair) in word.windows(2).enumerate() {
            let j = idx as u64 + 2;
            if !self.graphs[self.active_graph(j)?].has_edge(pair[0], pair[1]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First admissible word (by length, then letter order) containing a
    /// contiguous subword of length `>= 2` that is itself not admissible.
    /// Among the subwords of that word the shortest, then leftmost, is
    /// reported.
    pub fn find_inadmissible_subword(&self, n_max: u64) -> Result<Option<SubwordWitness>> {
        for len in 2..=n_max {
            let words = self.enumerate(len)?;
            for w in words.iter() {
                for m in 2..len as usize {
                    for start in 0..=(w.len() - m) {
                        let sub = &w[start..start + m];
                        if !self.is_admissible(sub)? {
                            return Ok(Some(SubwordWitness {
                                word: Word::new(w.to_vec())?,
                                subword: Word::new(sub.to_vec())?,
                                start,
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubwordWitness {
    pub word: Word,
    pub subword: Word,
    pub start: usize,
}

/// Lower bound, exact count and upper bound at `n = g_{2t}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub t: u64,
    pub n: u64,
    #[serde(serialize_with = "crate::decimal::ser")]
    pub lower: BigUint,
    #[serde(serialize_with = "crate::decimal::ser")]
    pub actual: BigUint,
    #[serde(serialize_with = "crate::decimal::ser")]
    pub upper: BigUint,
    pub holds: bool,
}

impl BoundReport {
    fn new(t: u64, n: u64, lower: BigUint, actual: BigUint, upper: BigUint) -> Self {
        let holds = lower < actual && actual < upper;
        Self {
            t,
            n,
            lower,
            actual,
            upper,
            holds,
        }
    }

    pub fn log_lower(&self) -> f64 {
        ln_big(&self.lower)
    }

    pub fn log_actual(&self) -> f64 {
        ln_big(&self.actual)
    }

    pub fn log_upper(&self) -> f64 {
        ln_big(&self.upper)
    }
}

/// Writes `t,n,log_lower,log_actual,log_upper,holds,actual`.
pub fn write_bounds_csv<W: Write>(reports: &[BoundReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "t",
        "n",
        "log_lower",
        "log_actual",
        "log_upper",
        "holds",
        "actual",
    ])?;
    for r in reports {
        w.write_record([
            r.t.to_string(),
            r.n.to_string(),
            r.log_lower().to_string(),
            r.log_actual().to_string(),
            r.log_upper().to_string(),
            r.holds.to_string(),
            r.actual.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Fibonacci numbers with `F_1 = F_2 = 1`.
pub fn fibonacci(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// Bounds for `(G1, G2)` at `n = g_{2t}`:
/// `Π F_{s_{2i-1}} < ω_F^n < ω_1^{s_1 + s_3 + ... + s_{2t-1}} (1 + 2 Σ s_{2i})`,
/// where `F_s = 5^{-1/2} (μ^s - (1-μ)^s)` keeps the lower bound exact.
pub fn example_one_bounds(t: u64) -> Result<BoundReport> {
    let system = CombinedSystem::example_one(t)?;
    let sched = system.schedule();
    let mut lower = BigUint::one();
    let mut odd_sum = 0u64;
    let mut even_sum = 0u64;
    for i in 1..=t as usize {
        let odd = sched.s(2 * i - 1);
        lower *= fibonacci(odd);
        odd_sum += odd;
        even_sum += sched.s(2 * i);
    }
    let upper =
        crate::census::total_count(&presets::g1(), odd_sum)? * BigUint::from(1 + 2 * even_sum);
    let n = sched.g(2 * t as usize);
    let actual = system.count(n)?;
    Ok(BoundReport::new(t, n, lower, actual, upper))
}

/// Bounds for `(K3, G2)` at `n = g_{2t}`:
/// `3^{s_1 + s_3 + ... + s_{2t-1}} < ω_F^n < 3^{s_1 + ... + s_{2t-1}} Π (2 s_{2i} + 1)`.
pub fn example_two_bounds(t: u64) -> Result<BoundReport> {
    let system = CombinedSystem::example_two(t)?;
    let sched = system.schedule();
    let mut odd_sum = 0u64;
    let mut product = BigUint::one();
    for i in 1..=t as usize {
        odd_sum += sched.s(2 * i - 1);
        product *= BigUint::from(2 * sched.s(2 * i) + 1);
    }
    let lower = BigUint::from(3u32).pow(odd_sum as u32);
    let upper = &lower * product;
    let n = sched.g(2 * t as usize);
    let actual = system.count(n)?;
    Ok(BoundReport::new(t, n, lower, actual, upper))
}

/// Bound reports for both reference systems, `t = 1..=t_max`.
pub fn bound_series(example: u8, t_max: u64) -> Result<Vec<BoundReport>> {
    let f = match example {
        1 => example_one_bounds,
        2 => example_two_bounds,
        _ => return Err(Error::InvalidArgument(format!("unknown example {example}"))),
    };
    (1..=t_max).map(f).collect()
}

/// Natural logs of the asymptotic lower and upper envelopes `(f1, f2)` of
/// the reference systems at `n = (t+1)^4`.
///
/// Example 1: `f1 ≍ 5^{-(n^{1/4} - 1)/2} μ^{√n}`, `f2 ≍ n μ^{√n}`.
/// Example 2: `f1 = 3^{√n}`,
/// `f2 ≍ n^{3/8} 3^{√n + (3/4) n^{1/4} ln n ln 3}`.
pub fn asymptotic_envelopes(example: u8, n: u64) -> Result<(f64, f64)> {
    let r = fourth_root(n)
        .ok_or_else(|| Error::InvalidArgument(format!("{n} is not a fourth power >= 16")))?;
    if r < 2 {
        return Err(Error::InvalidArgument(format!(
            "{n} is not a fourth power >= 16"
        )));
    }
    let nf = n as f64;
    let sqrt_n = (r * r) as f64;
    let quart = r as f64;
    match example {
        1 => {
            let ln_mu = ((1.0 + 5f64.sqrt()) / 2.0).ln();
            let f1 = -(quart - 1.0) / 2.0 * 5f64.ln() + sqrt_n * ln_mu;
            let f2 = nf.ln() + sqrt_n * ln_mu;
            Ok((f1, f2))
        }
        2 => {
            let ln3 = 3f64.ln();
            let f1 = sqrt_n * ln3;
            let f2 = 3.0 / 8.0 * nf.ln() + ln3 * (sqrt_n + 0.75 * quart * nf.ln() * ln3);
            Ok((f1, f2))
        }
        _ => Err(Error::InvalidArgument(format!("unknown example {example}"))),
    }
}

fn fourth_root(n: u64) -> Option<u64> {
    let guess = (n as f64).powf(0.25).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|r| r.checked_pow(4) == Some(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_schedule_values() {
        let s = Schedule::paper(3).unwrap();
        assert_eq!(s.s(1), 4);
        assert_eq!(s.s(2), 12);
        assert_eq!(s.g(2), 16);
        assert_eq!(s.s(1) + s.s(3), 9);
        assert_eq!(s.g(4), 81);
        assert_eq!(s.s(4), 60);
        for t in 1..=3 {
            assert_eq!(s.g(2 * t), (t as u64 + 1).pow(4));
        }
    }

    #[test]
    fn schedule_validation() {
        assert!(Schedule::from_boundaries([0, 3, 3]).is_err());
        assert!(Schedule::from_stints([2, 0]).is_err());
        assert!(Schedule::from_boundaries([0]).is_err());
        assert_eq!(
            Schedule::from_boundaries([4, 16]).unwrap(),
            Schedule::from_stints([4, 12]).unwrap()
        );
        assert!(ScheduleSpec::parse(r#"{"g":[0,4,16]}"#).is_ok());
        assert_eq!(
            ScheduleSpec::parse(r#"{"s":[4,12]}"#).unwrap().covered(),
            16
        );
        assert!(ScheduleSpec::parse(r#"{"g":[4],"s":[4]}"#).is_err());
        assert!(ScheduleSpec::parse(r#"{}"#).is_err());
    }

    #[test]
    fn active_graph_convention() {
        let sys = CombinedSystem::example_one(2).unwrap();
        assert_eq!(sys.active_graph(2).unwrap(), 0);
        assert_eq!(sys.active_graph(4).unwrap(), 0);
        assert_eq!(sys.active_graph(5).unwrap(), 1);
        assert_eq!(sys.active_graph(16).unwrap(), 1);
        assert_eq!(sys.active_graph(17).unwrap(), 0);
        assert!(matches!(
            sys.active_graph(82),
            Err(Error::ScheduleExhausted {
                requested: 82,
                covered: 81
            })
        ));
        assert!(sys.active_graph(1).is_err());
    }

    #[test]
    fn combined_counts() {
        let ex1 = CombinedSystem::example_one(1).unwrap();
        assert_eq!(ex1.count(1).unwrap(), BigUint::from(3u32));
        assert_eq!(ex1.count(4).unwrap(), BigUint::from(19u32));
        assert_eq!(ex1.count(5).unwrap(), BigUint::from(25u32));
        assert_eq!(ex1.count(16).unwrap(), BigUint::from(91u32));
        let ex2 = CombinedSystem::example_two(1).unwrap();
        assert_eq!(ex2.count(16).unwrap(), BigUint::from(729u32));
    }

    #[test]
    fn alphabet_mismatch() {
        let r = CombinedSystem::new(
            vec![presets::g1(), presets::two_cycle()],
            Schedule::paper(1).unwrap(),
        );
        assert!(matches!(r, Err(Error::AlphabetMismatch)));
        let r = CombinedSystem::new(vec![presets::g1()], Schedule::paper(1).unwrap());
        assert!(r.is_err());
    }

    #[test]
    fn enumeration_contains_mixed_word() {
        let ex1 = CombinedSystem::example_one(1).unwrap();
        let words = ex1.enumerate(5).unwrap();
        assert_eq!(words.len(), 25);
        let w = presets::g1().alphabet().parse_word("XXXZZ").unwrap();
        assert!(words.contains(&w));
        assert_eq!(ex1.enumerate(1).unwrap().len(), 3);
    }

    #[test]
    fn subword_witness() {
        let ex1 = CombinedSystem::example_one(1).unwrap();
        let wit = ex1.find_inadmissible_subword(5).unwrap().unwrap();
        let a = presets::g1();
        assert_eq!(wit.word.render(a.alphabet()), "XXXZZ");
        assert_eq!(wit.subword.render(a.alphabet()), "ZZ");
        assert_eq!(wit.start, 3);

        let same = CombinedSystem::new(
            vec![presets::g1(), presets::g1()],
            Schedule::paper(1).unwrap(),
        )
        .unwrap();
        assert_eq!(same.find_inadmissible_subword(8).unwrap(), None);
    }

    #[test]
    fn bound_reports() {
        let r = example_one_bounds(1).unwrap();
        assert_eq!(
            (r.lower.clone(), r.actual.clone(), r.upper.clone()),
            (3u32.into(), 91u32.into(), 475u32.into())
        );
        assert!(r.holds);
        let r = example_two_bounds(1).unwrap();
        assert_eq!(
            (r.lower.clone(), r.actual.clone(), r.upper.clone()),
            (81u32.into(), 729u32.into(), 2025u32.into())
        );
        assert!(r.holds);
        assert!(example_one_bounds(2).unwrap().holds);
        assert!(example_two_bounds(2).unwrap().holds);
    }

    #[test]
    fn fibonacci_binet() {
        let mu = (1.0 + 5f64.sqrt()) / 2.0;
        for s in 1..40u64 {
            let binet = (mu.powi(s as i32) - (1.0 - mu).powi(s as i32)) / 5f64.sqrt();
            assert_eq!(fibonacci(s), BigUint::from(binet.round() as u64));
        }
    }

    #[test]
    fn envelopes() {
        let (f1, _) = asymptotic_envelopes(2, 16).unwrap();
        assert!((f1 - 4.0 * 3f64.ln()).abs() < 1e-12);
        let (f1, f2) = asymptotic_envelopes(1, 16).unwrap();
        assert!((f2 - 4.698).abs() < 1e-3);
        assert!((f1 - 1.120).abs() < 1e-3);
        assert!(asymptotic_envelopes(1, 17).is_err());
        assert!(asymptotic_envelopes(1, 1).is_err());
        assert!(asymptotic_envelopes(3, 16).is_err());
    }
}
