use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::graph::DirectedGraph;
use crate::matrix::SquareMatrix;

/// Monic integer characteristic polynomial `det(λI - M)`.
///
/// Coefficients are stored highest degree first: `[1, a_{k-1}, ..., a_0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coefficients: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coefficients(coefficients: Vec<BigInt>) -> Self {
        assert!(
            coefficients.first().is_some_and(One::is_one),
            "characteristic polynomials are monic"
        );
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `a_r`, the coefficient of `λ^r`.
    pub fn coeff(&self, r: usize) -> &BigInt {
        &self.coefficients[self.degree() - r]
    }

    /// Multiplicity of `0` as a root.
    pub fn zero_multiplicity(&self) -> usize {
        self.coefficients
            .iter()
            .rev()
            .take_while(|c| c.is_zero())
            .count()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `P(M)` by Horner's rule over exact integer matrices.
    pub fn eval_matrix(&self, m: &SquareMatrix<BigInt>) -> SquareMatrix<BigInt> {
        let k = m.dim();
        let mut acc = SquareMatrix::<BigInt>::zeros(k);
        for c in &self.coefficients {
            acc = acc.mul(m);
            for i in 0..k {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (idx, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = d - idx;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if !mag.is_one() || power == 0 {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("λ")?,
                p => write!(f, "λ^{p}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Characteristic polynomial by the Berkowitz algorithm, which is
/// division-free and so stays in exact integer arithmetic.
pub fn char_poly(graph: &DirectedGraph) -> CharPoly {
    char_poly_of(&graph.matrix::<BigInt>())
}

pub fn char_poly_of(a: &SquareMatrix<BigInt>) -> CharPoly {
    let n = a.dim();
    let mut v: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // Leading r x r block A_r, row R = a[r][0..r], column C = a[0..r][r].
        // q = [1, -a_rr, -R C, -R A_r C, ..., -R A_r^{r-1} C]
        let mut q = Vec::with_capacity(r + 2);
        q.push(BigInt::one());
        q.push(-a.get(r, r).clone());
        let mut col: Vec<BigInt> = (0..r).map(|i| a.get(i, r).clone()).collect();
        for step in 0..r {
            if step > 0 {
                col = (0..r)
                    .map(|i| (0..r).map(|j| a.get(i, j) * &col[j]).sum())
                    .collect();
            }
            let rc: BigInt = (0..r).map(|j| a.get(r, j) * &col[j]).sum();
            q.push(-rc);
        }
        // v <- T v, T the (r+2) x (r+1) lower Toeplitz matrix with column q.
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                if i - j < q.len() {
                    *slot += &q[i - j] * vj;
                }
            }
        }
        v = next;
    }
    CharPoly::from_coefficients(v)
}
