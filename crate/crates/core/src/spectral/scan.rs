//! Exhaustive classification of small digraphs.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::spectral::closed_form::{classify_growth, GrowthKind};

/// Largest alphabet the exhaustive scan accepts.
pub const MAX_SCAN_K: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub mask: u64,
    pub k: usize,
    pub strongly_connected: bool,
    pub kind: GrowthKind,
    pub rho: f64,
    pub poly_degree: usize,
}

/// Per-alphabet-size candidate accounting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanStratum {
    pub k: usize,
    pub candidates: u64,
    pub connected: u64,
    pub strongly_connected: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanFailure {
    pub mask: u64,
    pub k: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub k_max: usize,
    pub strata: Vec<ScanStratum>,
    pub rows: Vec<ScanRow>,
    pub failures: Vec<ScanFailure>,
}

impl ScanReport {
    pub fn candidates(&self) -> u64 {
        self.strata.iter().map(|s| s.candidates).sum()
    }

    pub fn mixed(&self, strongly_connected: bool) -> impl Iterator<Item = &ScanRow> {
        self.rows.iter().filter(move |r| {
            r.kind == GrowthKind::MixedPolynomialExponential
                && r.strongly_connected == strongly_connected
        })
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "mask",
            "k",
            "strongly_connected",
            "kind",
            "rho",
            "poly_degree",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.mask.to_string(),
                r.k.to_string(),
                r.strongly_connected.to_string(),
                r.kind.to_string(),
                format!("{:.12}", r.rho),
                r.poly_degree.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

enum Outcome {
    Skipped,
    Row(ScanRow),
    Failed(ScanFailure),
}

/// Classifies every weakly connected digraph with at least one arrow on
/// `k <= k_max` labeled letters. Rows are ordered by `k` then mask.
pub fn conjecture_scan(k_max: usize) -> Result<ScanReport> {
    if !(1..=MAX_SCAN_K).contains(&k_max) {
        return Err(Error::InvalidArgument(format!(
            "k_max must be in 1..={MAX_SCAN_K}, got {k_max}"
        )));
    }
    let mut strata = Vec::new();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for k in 1..=k_max {
        let candidates = 1u64 << (k * k);
        let outcomes: Vec<Outcome> = (0..candidates)
            .into_par_iter()
            .map(|mask| {
                let g = DirectedGraph::from_mask(k, mask);
                if mask == 0 || !g.is_weakly_connected() {
                    return Outcome::Skipped;
                }
                let strongly_connected = g.validate().strongly_connected;
                match classify_growth(&g) {
                    Ok(c) => Outcome::Row(ScanRow {
                        mask,
                        k,
                        strongly_connected,
                        kind: c.kind,
                        rho: c.rho,
                        poly_degree: c.poly_degree,
                    }),
                    Err(e) => Outcome::Failed(ScanFailure {
                        mask,
                        k,
                        message: e.to_string(),
                    }),
                }
            })
            .collect();
        let mut stratum = ScanStratum {
            k,
            candidates,
            connected: 0,
            strongly_connected: 0,
        };
        for o in outcomes {
            match o {
                Outcome::Skipped => {}
                Outcome::Row(r) => {
                    stratum.connected += 1;
                    stratum.strongly_connected += u64::from(r.strongly_connected);
                    rows.push(r);
                }
                Outcome::Failed(f) => {
                    stratum.connected += 1;
                    failures.push(f);
                }
            }
        }
        strata.push(stratum);
    }
    Ok(ScanReport {
        k_max,
        strata,
        rows,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_letter() {
        let r = conjecture_scan(1).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].mask, 1);
        assert_eq!(r.rows[0].kind, GrowthKind::Polynomial);
        assert_eq!(r.rows[0].poly_degree, 0);
        assert_eq!(r.mixed(true).count() + r.mixed(false).count(), 0);
    }

    #[test]
    fn two_letters_have_no_strong_mixed_growth() {
        let r = conjecture_scan(2).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.mixed(true).count(), 0);
        assert_eq!(r.strata[1].candidates, 16);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(conjecture_scan(0).is_err());
        assert!(conjecture_scan(5).is_err());
    }
}
