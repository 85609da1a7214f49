//! Dense univariate polynomials, interpolation nodes, Lagrange interpolation
//! and least-squares fitting.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{ExprError, Expression};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("node set is empty")]
    EmptyNodes,
    #[error("node {index} is not finite ({value})")]
    NonFiniteNode { index: usize, value: f64 },
    #[error("nodes must be strictly increasing: x[{index}] = {value} does not exceed {previous}")]
    UnorderedNodes {
        index: usize,
        value: f64,
        previous: f64,
    },
    #[error("cannot evaluate the interpolated function at node {node}: {source}")]
    Evaluation { node: f64, source: ExprError },
    #[error("least-squares fit of degree {degree} needs at least {needed} distinct abscissae, got {distinct}")]
    RankDeficient {
        degree: usize,
        needed: usize,
        distinct: usize,
    },
    #[error("sample {index} is not finite")]
    NonFiniteSample { index: usize },
}

/// A polynomial stored by ascending coefficients: `coeffs[k]` multiplies `x^k`.
///
/// Trailing zeros are trimmed; the zero polynomial is `[0.0]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// `x - root`
    pub fn linear_factor(root: f64) -> Self {
        Polynomial::new(vec![-root, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Monic product of `(x - r)` over `roots`.
    pub fn from_roots(roots: &[f64]) -> Polynomial {
        roots
            .iter()
            .fold(Polynomial::constant(1.0), |acc, &r| &acc * &Polynomial::linear_factor(r))
    }
}

impl From<Vec<f64>> for Polynomial {
    fn from(coeffs: Vec<f64>) -> Self {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<f64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..len)
                .map(|k| self.coeffs.get(k).unwrap_or(&0.0) + rhs.coeffs.get(k).unwrap_or(&0.0))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 && !(k == 0 && first) {
                continue;
            }
            if !first {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                f.write_str("-")?;
            }
            let mag = c.abs();
            match (k, mag == 1.0) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Strictly increasing, finite interpolation nodes `x_0 < ... < x_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeSet {
    nodes: Vec<f64>,
}

impl NodeSet {
    pub fn new(nodes: Vec<f64>) -> Result<Self, PolyError> {
        if nodes.is_empty() {
            return Err(PolyError::EmptyNodes);
        }
        for (index, &value) in nodes.iter().enumerate() {
            if !value.is_finite() {
                return Err(PolyError::NonFiniteNode { index, value });
            }
            if index > 0 && value <= nodes[index - 1] {
                return Err(PolyError::UnorderedNodes {
                    index,
                    value,
                    previous: nodes[index - 1],
                });
            }
        }
        Ok(NodeSet { nodes })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.nodes
    }

    /// Interpolation degree `n` (one less than the node count).
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn first(&self) -> f64 {
        self.nodes[0]
    }

    pub fn last(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Nodes strictly between the endpoints.
    pub fn interior(&self) -> &[f64] {
        if self.nodes.len() <= 2 {
            &[]
        } else {
            &self.nodes[1..self.nodes.len() - 1]
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.nodes.contains(&x)
    }
}

/// Interpolating polynomial of `f` on `nodes`, built from Newton divided
/// differences and expanded to monomial coefficients.
pub fn lagrange_interpolate(f: &Expression, nodes: &NodeSet) -> Result<Polynomial, PolyError> {
    let xs = nodes.as_slice();
    let mut table = xs
        .iter()
        .map(|&x| f.eval(x).map_err(|source| PolyError::Evaluation { node: x, source }))
        .collect::<Result<Vec<f64>, _>>()?;
    // in-place divided differences: table[k] becomes f[x_0, ..., x_k]
    for level in 1..xs.len() {
        for k in (level..xs.len()).rev() {
            table[k] = (table[k] - table[k - 1]) / (xs[k] - xs[k - level]);
        }
    }
    // nested expansion c_0 + (x - x_0)(c_1 + (x - x_1)(c_2 + ...))
    let mut p = Polynomial::constant(table[xs.len() - 1]);
    for k in (0..xs.len() - 1).rev() {
        p = &(&p * &Polynomial::linear_factor(xs[k])) + &Polynomial::constant(table[k]);
    }
    Ok(p)
}

/// The node polynomial `prod (x - x_k)` and its derivative.
pub fn node_polynomial(nodes: &NodeSet) -> (Polynomial, Polynomial) {
    let pi = Polynomial::from_roots(nodes.as_slice());
    let pi_prime = pi.derivative();
    (pi, pi_prime)
}

/// Degree-`degree` least-squares polynomial through `samples`.
///
/// The design matrix is built in the Chebyshev basis mapped onto the sample
/// range and solved by Householder QR; the result is converted back to
/// monomial coefficients.
pub fn least_squares_fit(samples: &[(f64, f64)], degree: usize) -> Result<Polynomial, PolyError> {
    if let Some(index) = samples
        .iter()
        .position(|(x, y)| !x.is_finite() || !y.is_finite())
    {
        return Err(PolyError::NonFiniteSample { index });
    }
    let mut xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let cols = degree + 1;
    if xs.len() < cols {
        return Err(PolyError::RankDeficient {
            degree,
            needed: cols,
            distinct: xs.len(),
        });
    }
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    if lo == hi {
        // a single abscissa with degree 0
        let mean = samples.iter().map(|s| s.1).sum::<f64>() / samples.len() as f64;
        return Ok(Polynomial::constant(mean));
    }
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);

    let design = DMatrix::from_fn(samples.len(), cols, |i, j| {
        chebyshev(j, (samples[i].0 - mid) / half)
    });
    let rhs = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.1));
    let qr = design.qr();
    let r = qr.r();
    let scale = r.diagonal().amax();
    if r.diagonal().iter().any(|d| d.abs() <= 1e-13 * scale) {
        return Err(PolyError::RankDeficient {
            degree,
            needed: cols,
            distinct: xs.len(),
        });
    }
    let qty = qr.q().transpose() * rhs;
    let cheb = r
        .solve_upper_triangular(&qty)
        .expect("triangular factor has a nonzero diagonal");

    // T_k(t) with t = (x - mid)/half, expanded in x
    let t = Polynomial::new(vec![-mid / half, 1.0 / half]);
    let mut prev = Polynomial::constant(1.0);
    let mut cur = t.clone();
    let mut out = Polynomial::constant(cheb[0]);
    for (k, &c) in cheb.iter().enumerate().skip(1) {
        if k > 1 {
            let next = &(&t * &cur).scale(2.0) - &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        out = &out + &cur.scale(c);
    }
    Ok(out)
}

fn chebyshev(k: usize, t: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => t,
        _ => {
            let (mut a, mut b) = (1.0, t);
            for _ in 1..k {
                let c = 2.0 * t * b - a;
                a = b;
                b = c;
            }
            b
        }
    }
}

/// Sum of squared residuals of `p` over `samples`.
pub fn residual_sum_of_squares(p: &Polynomial, samples: &[(f64, f64)]) -> f64 {
    samples.iter().map(|&(x, y)| (p.eval(x) - y).powi(2)).sum()
}
