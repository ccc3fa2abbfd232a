use std::collections::VecDeque;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::matrix::SquareMatrix;
use crate::spectral::charpoly::char_poly;

/// First place the characteristic recurrence failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceFailure {
    pub n: u64,
    /// `None` for the total count, otherwise the `(i, j)` entry.
    pub entry: Option<(usize, usize)>,
    #[serde(serialize_with = "crate::decimal::ser")]
    pub expected: BigInt,
    #[serde(serialize_with = "crate::decimal::ser")]
    pub got: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceReport {
    pub holds: bool,
    pub n_max: u64,
    pub failure: Option<RecurrenceFailure>,
}

/// Checks `ω^n = -Σ_r a_r ω^(n-k+r)` for every `n` in `(k, n_max]`, for the
/// total and for every entry `ω^n(X_i, X_j)`, in exact arithmetic.
pub fn verify_recurrence(graph: &DirectedGraph, n_max: u64) -> Result<RecurrenceReport> {
    let k = graph.k();
    if n_max <= k as u64 {
        return Err(Error::InvalidArgument(format!(
            "n_max must exceed the alphabet size {k}"
        )));
    }
    let poly = char_poly(graph);
    let m = graph.matrix::<BigInt>();
    // window holds M^(n-k-1) ..= M^(n-2), i.e. counts at lengths n-k ..= n-1
    let mut window: VecDeque<SquareMatrix<BigInt>> = VecDeque::with_capacity(k + 1);
    let mut power = SquareMatrix::<BigInt>::identity(k);
    for _ in 0..k {
        window.push_back(power.clone());
        power = power.mul(&m);
    }
    for n in (k as u64 + 1)..=n_max {
        // power == M^(n-1)
        let mut predicted = SquareMatrix::<BigInt>::zeros(k);
        for (r, past) in window.iter().enumerate() {
            let a = poly.coeff(r);
            for i in 0..k {
                for j in 0..k {
                    let v = predicted.get(i, j) - a * past.get(i, j);
                    predicted.set(i, j, v);
                }
            }
        }
        let expected_total = predicted.total();
        let got_total = power.total();
        if expected_total != got_total {
            return Ok(failed(n_max, n, None, expected_total, got_total));
        }
        for i in 0..k {
            for j in 0..k {
                if predicted.get(i, j) != power.get(i, j) {
                    return Ok(failed(
                        n_max,
                        n,
                        Some((i, j)),
                        predicted.get(i, j).clone(),
                        power.get(i, j).clone(),
                    ));
                }
            }
        }
        window.pop_front();
        window.push_back(power.clone());
        power = power.mul(&m);
    }
    Ok(RecurrenceReport {
        holds: true,
        n_max,
        failure: None,
    })
}

fn failed(
    n_max: u64,
    n: u64,
    entry: Option<(usize, usize)>,
    expected: BigInt,
    got: BigInt,
) -> RecurrenceReport {
    RecurrenceReport {
        holds: false,
        n_max,
        failure: Some(RecurrenceFailure {
            n,
            entry,
            expected,
            got,
        }),
    }
}
