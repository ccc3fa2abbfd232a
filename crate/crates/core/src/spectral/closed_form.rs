use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::census::count_series;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::spectral::charpoly::char_poly;
use crate::spectral::roots::{fmt_complex, nonzero_roots};

/// Coefficient systems with a 1-norm condition estimate above this are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// Relative coefficient modulus below which a term does not take part in
/// growth classification.
pub const COEFF_TOL: f64 = 1e-8;

/// Slack when comparing root moduli against 1 and against each other.
const MODULUS_TOL: f64 = 1e-9;

/// Which count sequence a closed form describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountTarget {
    Total,
    Entry(usize, usize),
    Row(usize),
    Col(usize),
}

/// `Σ_q c_q n^(q-1) μ^n` for one distinct nonzero root `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormTerm {
    pub root: Complex64,
    pub multiplicity: usize,
    /// `coefficients[q - 1]` multiplies `n^(q-1) μ^n`.
    pub coefficients: Vec<Complex64>,
}

/// Exponential-polynomial closed form of a count sequence, exact for
/// `n >= validity_floor`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub terms: Vec<ClosedFormTerm>,
    pub zero_multiplicity: usize,
    pub validity_floor: u64,
    pub condition: f64,
}

impl ClosedForm {
    pub fn eval(&self, n: u64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let base = t.root.powu(n as u32);
                let nf = n as f64;
                t.coefficients
                    .iter()
                    .enumerate()
                    .map(|(q, c)| c * nf.powi(q as i32) * base)
                    .sum::<Complex64>()
            })
            .sum()
    }

    pub fn eval_real(&self, n: u64) -> f64 {
        self.eval(n).re
    }

    /// Coefficient of `n^power μ^n` for the root closest to `root`.
    pub fn coefficient_near(&self, root: Complex64, power: usize) -> Option<Complex64> {
        self.terms
            .iter()
            .filter(|t| (t.root - root).norm() < 1e-6)
            .find_map(|t| t.coefficients.get(power).copied())
    }

    fn max_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .flat_map(|t| t.coefficients.iter())
            .fold(0.0f64, |m, c| m.max(c.norm()))
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for t in &self.terms {
            for (q, c) in t.coefficients.iter().enumerate() {
                let poly = match q {
                    0 => String::new(),
                    1 => "n ".into(),
                    _ => format!("n^{q} "),
                };
                parts.push(format!(
                    "({}) {poly}({})^n",
                    fmt_complex(*c),
                    fmt_complex(t.root)
                ));
            }
        }
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        write!(f, "  [n >= {}]", self.validity_floor)
    }
}

/// The growth trichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GrowthKind {
    Exponential,
    Polynomial,
    MixedPolynomialExponential,
}

impl fmt::Display for GrowthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthKind::Exponential => "Exponential",
            GrowthKind::Polynomial => "Polynomial",
            GrowthKind::MixedPolynomialExponential => "MixedPolynomialExponential",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthClass {
    pub kind: GrowthKind,
    pub rho: f64,
    pub poly_degree: usize,
}

/// Closed form of the total count `ω^n`.
pub fn closed_form(graph: &DirectedGraph) -> Result<ClosedForm> {
    closed_form_for(graph, CountTarget::Total)
}

/// Closed form of any count sequence of `graph`.
///
/// Roots come from the characteristic polynomial; the coefficients solve
/// the linear system against exact counts at `n = z+1 ..= z+u`, where `z`
/// is the multiplicity of the zero root and `u` the number of unknowns.
pub fn closed_form_for(graph: &DirectedGraph, target: CountTarget) -> Result<ClosedForm> {
    let k = graph.k();
    let out_of_range = match target {
        CountTarget::Total => false,
        CountTarget::Entry(i, j) => i >= k || j >= k,
        CountTarget::Row(i) | CountTarget::Col(i) => i >= k,
    };
    if out_of_range {
        return Err(Error::InvalidArgument(format!(
            "letter index out of range for alphabet of size {k}"
        )));
    }
    let poly = char_poly(graph);
    let zero_multiplicity = poly.zero_multiplicity();
    let roots = nonzero_roots(&poly)?;
    let unknowns: usize = roots.iter().map(|r| r.multiplicity).sum();
    let validity_floor = zero_multiplicity as u64 + 1;

    if unknowns == 0 {
        return Ok(ClosedForm {
            terms: Vec::new(),
            zero_multiplicity,
            validity_floor,
            condition: 1.0,
        });
    }

    let last_n = zero_multiplicity as u64 + unknowns as u64;
    let first_n = zero_multiplicity as u64 + 1;
    let rhs = target_values(graph, target, first_n, last_n)?;

    let mut a = vec![vec![Complex64::zero(); unknowns]; unknowns];
    for (row, n) in (zero_multiplicity as u64 + 1..=last_n).enumerate() {
        let mut col = 0;
        for r in &roots {
            let base = r.value.powu(n as u32);
            for q in 0..r.multiplicity {
                a[row][col] = base * (n as f64).powi(q as i32);
                col += 1;
            }
        }
    }
    let (solution, condition) = solve(a, rhs)?;
    if condition.is_nan() || condition > MAX_CONDITION {
        return Err(Error::IllConditioned { condition });
    }
    let mut it = solution.into_iter();
    let terms = roots
        .iter()
        .map(|r| ClosedFormTerm {
            root: r.value,
            multiplicity: r.multiplicity,
            coefficients: it.by_ref().take(r.multiplicity).collect(),
        })
        .collect();
    Ok(ClosedForm {
        terms,
        zero_multiplicity,
        validity_floor,
        condition,
    })
}

/// Exact values of the target sequence for `n` in `from..=to`, as floats.
fn target_values(
    graph: &DirectedGraph,
    target: CountTarget,
    from: u64,
    to: u64,
) -> Result<Vec<Complex64>> {
    let as_complex = |v: &BigUint| Complex64::new(v.to_f64().unwrap_or(f64::INFINITY), 0.0);
    if let CountTarget::Entry(i, j) = target {
        let m = graph.matrix::<BigUint>();
        let mut power = m.pow(from - 1);
        let mut out = Vec::new();
        for n in from..=to {
            if n > from {
                power = power.mul(&m);
            }
            out.push(as_complex(power.get(i, j)));
        }
        return Ok(out);
    }
    let series = count_series(graph, to)?;
    Ok(series.points[from as usize - 1..]
        .iter()
        .map(|p| {
            as_complex(match target {
                CountTarget::Row(i) => &p.rows[i],
                CountTarget::Col(j) => &p.cols[j],
                _ => &p.total,
            })
        })
        .collect())
}

/// Gaussian elimination with partial pivoting; also returns the 1-norm
/// condition estimate `‖A‖₁ ‖A⁻¹‖₁` from the explicit inverse.
fn solve(a: Vec<Vec<Complex64>>, b: Vec<Complex64>) -> Result<(Vec<Complex64>, f64)> {
    let n = b.len();
    let norm_a = (0..n)
        .map(|j| (0..n).map(|i| a[i][j].norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    // Augment with the identity to get the inverse alongside the solution.
    let mut aug: Vec<Vec<Complex64>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.push(b[i]);
            row.extend((0..n).map(|j| {
                if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::zero()
                }
            }));
            row
        })
        .collect();
    let width = 2 * n + 1;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| aug[x][col].norm().total_cmp(&aug[y][col].norm()))
            .expect("non-empty");
        if aug[pivot][col].norm() == 0.0 || !aug[pivot][col].norm().is_finite() {
            return Err(Error::IllConditioned {
                condition: f64::INFINITY,
            });
        }
        aug.swap(col, pivot);
        let p = aug[col][col];
        for x in &mut aug[col][col..width] {
            *x /= p;
        }
        for row in 0..n {
            if row != col {
                let factor = aug[row][col];
                if factor.is_zero() {
                    continue;
                }
                let pivot = aug[col].clone();
                for (x, v) in aug[row][col..width].iter_mut().zip(&pivot[col..width]) {
                    *x -= factor * v;
                }
            }
        }
    }
    let x = aug.iter().map(|row| row[n]).collect();
    let norm_inv = (0..n)
        .map(|j| (0..n).map(|i| aug[i][n + 1 + j].norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    Ok((x, norm_a * norm_inv))
}

/// Classifies the growth of `ω^n` from its closed form.
pub fn classify_growth(graph: &DirectedGraph) -> Result<GrowthClass> {
    Ok(classify_closed_form(&closed_form(graph)?))
}

/// Among terms whose coefficient exceeds [`COEFF_TOL`] relative to the
/// largest one, `rho` is the largest root modulus and the polynomial degree
/// is the highest power of `n` attached to a root of that modulus.
pub fn classify_closed_form(form: &ClosedForm) -> GrowthClass {
    let scale = form.max_coefficient();
    let mut live: Vec<(f64, usize)> = Vec::new();
    if scale > 0.0 {
        for t in &form.terms {
            for (q, c) in t.coefficients.iter().enumerate() {
                if c.norm() / scale > COEFF_TOL {
                    live.push((t.root.norm(), q));
                }
            }
        }
    }
    let rho = live.iter().map(|&(m, _)| m).fold(0.0f64, f64::max);
    let poly_degree = live
        .iter()
        .filter(|&&(m, _)| m >= rho - MODULUS_TOL * rho.max(1.0))
        .map(|&(_, q)| q)
        .max()
        .unwrap_or(0);
    let kind = if rho > 1.0 + MODULUS_TOL {
        if poly_degree == 0 {
            GrowthKind::Exponential
        } else {
            GrowthKind::MixedPolynomialExponential
        }
    } else {
        GrowthKind::Polynomial
    };
    GrowthClass {
        kind,
        rho,
        poly_degree,
    }
}
