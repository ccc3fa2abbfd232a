//! Roots of integer polynomials with exact multiplicities.
//!
//! Multiplicities come from an exact square-free decomposition over the
//! rationals, so numerically split multiple roots never occur; each
//! square-free factor is then solved with Aberth iteration and polished
//! by Newton steps.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::spectral::charpoly::CharPoly;

/// Distinct roots closer than this are reported as a clustering ambiguity.
pub const CLUSTER_TOL: f64 = 1e-7;

/// A distinct nonzero root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Dense polynomial over the rationals, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn from_ints(low_first: &[BigInt]) -> Self {
        let mut p = RatPoly(
            low_first
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        );
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn monic(mut self) -> Self {
        if let Some(lead) = self.0.last().cloned() {
            for c in &mut self.0 {
                *c = &*c / &lead;
            }
        }
        self
    }

    fn derivative(&self) -> Self {
        let mut p = RatPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        );
        p.trim();
        p
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        let mut p = RatPoly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        );
        p.trim();
        p
    }

    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.0[dd].clone();
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lead;
            let shift = top - dd;
            for (i, d) in divisor.0.iter().enumerate() {
                rem[shift + i] = &rem[shift + i] - &c * d;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        let mut q = RatPoly(quot);
        q.trim();
        let mut r = RatPoly(rem);
        r.trim();
        (q, r)
    }

    fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn to_f64(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|c| c.to_f64().expect("finite coefficient"))
            .collect()
    }
}

/// Yun's square-free decomposition: pairs `(factor, multiplicity)` with
/// pairwise coprime square-free monic factors.
fn squarefree_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let b = RatPoly::gcd(p, &dp);
    let mut c = p.div_exact(&b);
    let mut d = dp.div_exact(&b).sub(&c.derivative());
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = RatPoly::gcd(&c, &d);
        c = c.div_exact(&a);
        d = d.div_exact(&a).sub(&c.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn horner(coeffs_low: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs_low.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of a square-free real polynomial (lowest degree first).
fn aberth(coeffs_low: &[f64]) -> Vec<Complex64> {
    let deg = coeffs_low.len() - 1;
    let lead = coeffs_low[deg];
    let monic: Vec<f64> = coeffs_low.iter().map(|c| c / lead).collect();
    if deg == 1 {
        return vec![Complex64::new(-monic[0], 0.0)];
    }
    // Cauchy bound for the initial circle.
    let radius = 1.0 + monic[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..deg)
        .map(|i| {
            let theta = std::f64::consts::TAU * (i as f64 + 0.25) / deg as f64 + 0.4;
            Complex64::from_polar(radius * 0.9, theta)
        })
        .collect();
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let (p, dp) = horner(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zi in &mut z {
        for _ in 0..3 {
            let (p, dp) = horner(&monic, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            *zi -= p / dp;
        }
    }
    z
}

/// Distinct nonzero roots of `poly` with multiplicities, sorted by
/// decreasing modulus then decreasing real part then decreasing imaginary
/// part.
pub fn nonzero_roots(poly: &CharPoly) -> Result<Vec<Root>> {
    let z = poly.zero_multiplicity();
    let low_first: Vec<BigInt> = poly.coefficients().iter().rev().skip(z).cloned().collect();
    let reduced = RatPoly::from_ints(&low_first);
    let mut roots = Vec::new();
    for (factor, multiplicity) in squarefree_decomposition(&reduced) {
        let coeffs = factor.to_f64();
        for mut value in aberth(&coeffs) {
            if value.im.abs() <= 1e-12 * value.re.abs().max(1.0) {
                value.im = 0.0;
            }
            roots.push(Root {
                value,
                multiplicity,
            });
        }
    }
    for (a, ra) in roots.iter().enumerate() {
        for rb in &roots[a + 1..] {
            if (ra.value - rb.value).norm() < CLUSTER_TOL {
                return Err(Error::RootClustering(
                    fmt_complex(ra.value),
                    fmt_complex(rb.value),
                ));
            }
        }
    }
    roots.sort_by(|a, b| {
        b.value
            .norm()
            .total_cmp(&a.value.norm())
            .then(b.value.re.total_cmp(&a.value.re))
            .then(b.value.im.total_cmp(&a.value.im))
    });
    Ok(roots)
}

pub(crate) fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
