//! Gauss–Jacobi quadrature by the Golub–Welsch construction.

use serde::{Deserialize, Serialize};

use crate::error::{check_alpha, check_dimension, Error, Result};
use crate::jacobi::OrthonormalJacobi01;
use crate::tridiag::{eig_tridiag, TridiagSym};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interval {
    /// [−1, 1] with weight (1 + x)^left (1 − x)^right
    Symmetric,
    /// [0, 1] with weight t^left (1 − t)^right
    Unit,
}

/// Nodes and weights of a Gauss rule for a Jacobi-type weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// exponent of the weight factor vanishing at the left endpoint
    pub exponent_left: f64,
    /// exponent of the weight factor vanishing at the right endpoint
    pub exponent_right: f64,
    pub interval: Interval,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ w_i f(x_i).
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Total mass of the weight function.
    pub fn mass(&self) -> f64 {
        let fam = OrthonormalJacobi01 { a: self.exponent_right, b: self.exponent_left };
        match self.interval {
            Interval::Unit => fam.mass(),
            Interval::Symmetric => fam.mass() * 2f64.powf(self.exponent_left + self.exponent_right + 1.0),
        }
    }
}

fn golub_welsch(npts: usize, a: f64, b: f64, interval: Interval) -> Result<QuadRule> {
    if npts == 0 {
        return Err(Error::InvalidParameter("quadrature needs at least one node".into()));
    }
    let fam = OrthonormalJacobi01::new(a, b)?;
    let coeffs = |n: usize| match interval {
        Interval::Unit => fam.coeffs(n),
        Interval::Symmetric => fam.symmetric_coeffs(n),
    };
    let diag: Vec<f64> = (0..npts).map(|n| coeffs(n).0).collect();
    let off: Vec<f64> = (1..npts).map(|n| coeffs(n).1).collect();
    let t = TridiagSym::new(diag, off)?;
    let pairs = eig_tridiag(&t)?;
    let mass = match interval {
        Interval::Unit => fam.mass(),
        Interval::Symmetric => fam.mass() * 2f64.powf(a + b + 1.0),
    };
    let nodes = pairs.iter().map(|p| p.value).collect();
    let weights = pairs.iter().map(|p| mass * p.vector[0] * p.vector[0]).collect();
    Ok(QuadRule { nodes, weights, exponent_left: b, exponent_right: a, interval })
}

/// Gauss rule on [−1, 1] for the weight (1 − x)^a (1 + x)^b, exact for
/// polynomials of degree ≤ 2·npts − 1.
pub fn gauss_jacobi_rule(npts: usize, a: f64, b: f64) -> Result<QuadRule> {
    golub_welsch(npts, a, b, Interval::Symmetric)
}

/// Gauss rule on [0, 1] for the weight t^b (1 − t)^a.
///
/// Built from the recurrence on [0, 1] directly rather than by mapping the
/// symmetric rule, so nodes near t = 0 keep their relative accuracy.
pub fn gauss_jacobi_rule_01(npts: usize, a: f64, b: f64) -> Result<QuadRule> {
    golub_welsch(npts, a, b, Interval::Unit)
}

/// ∫₀¹ f(t) t^b (1 − t)^a dt.
pub fn weighted_integral_01<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, npts: usize) -> Result<f64> {
    Ok(gauss_jacobi_rule_01(npts, a, b)?.integrate(f))
}

/// ∫₀¹ f(t) t^(k+m/2−1) (1 − t)^α dt.
pub fn weighted_radial_integral<F: FnMut(f64) -> f64>(
    f: F,
    k: u32,
    m: u32,
    alpha: f64,
    npts: usize,
) -> Result<f64> {
    check_alpha(alpha)?;
    check_dimension(m)?;
    let b = k as f64 + m as f64 / 2.0 - 1.0;
    weighted_integral_01(f, alpha, b, npts)
}

/// Node count that integrates products of polynomials of the given degree exactly, with headroom.
pub fn default_npts(max_degree: usize) -> usize {
    2 * max_degree + 10
}
