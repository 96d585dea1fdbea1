//! Real Clifford algebra arithmetic in the plane and the radial Dirac calculus.
//!
//! [`Multivector2`] is a dense element of R_2 on the blades {1, e1, e2, e12}
//! with e1² = e2² = -1 and e1 e2 = -e2 e1. Everything in higher dimension is
//! handled through [`RadialElement`], which stores coefficients of the
//! Clifford powers x^s Y_k of the vector variable and never needs an explicit
//! spherical monogenic.

use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Element of R_2.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Multivector2 {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c12: f64,
}

impl Multivector2 {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const E12: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(c0: f64, c1: f64, c2: f64, c12: f64) -> Self {
        Self { c0, c1, c2, c12 }
    }

    pub const fn scalar(s: f64) -> Self {
        Self::new(s, 0.0, 0.0, 0.0)
    }

    /// The Clifford vector x1 e1 + x2 e2.
    pub const fn vector(x1: f64, x2: f64) -> Self {
        Self::new(0.0, x1, x2, 0.0)
    }

    /// Vector variable at polar coordinates (r, θ).
    pub fn polar_vector(r: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::vector(r * c, r * s)
    }

    /// Hermitian conjugation: reverses products and negates each generator.
    pub fn conj(self) -> Self {
        Self::new(self.c0, -self.c1, -self.c2, -self.c12)
    }

    /// Scalar part [a]_0.
    pub fn scalar_part(self) -> f64 {
        self.c0
    }

    /// |a|² = [conj(a) a]_0.
    pub fn norm_sq(self) -> f64 {
        self.c0 * self.c0 + self.c1 * self.c1 + self.c2 * self.c2 + self.c12 * self.c12
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Real inner product (a, b) = [conj(a) b]_0.
    pub fn inner(self, other: Self) -> f64 {
        (self.conj() * other).scalar_part()
    }

    pub fn components(self) -> [f64; 4] {
        [self.c0, self.c1, self.c2, self.c12]
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        self.components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Add for Multivector2 {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self::new(self.c0 + b.c0, self.c1 + b.c1, self.c2 + b.c2, self.c12 + b.c12)
    }
}

impl AddAssign for Multivector2 {
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl Sub for Multivector2 {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self::new(self.c0 - b.c0, self.c1 - b.c1, self.c2 - b.c2, self.c12 - b.c12)
    }
}

impl Neg for Multivector2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c0, -self.c1, -self.c2, -self.c12)
    }
}

impl Mul<f64> for Multivector2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.c0 * s, self.c1 * s, self.c2 * s, self.c12 * s)
    }
}

impl Mul<Multivector2> for f64 {
    type Output = Multivector2;
    fn mul(self, a: Multivector2) -> Multivector2 {
        a * self
    }
}

impl Mul for Multivector2 {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.c0 * b.c0 - a.c1 * b.c1 - a.c2 * b.c2 - a.c12 * b.c12,
            a.c0 * b.c1 + a.c1 * b.c0 + a.c2 * b.c12 - a.c12 * b.c2,
            a.c0 * b.c2 + a.c2 * b.c0 - a.c1 * b.c12 + a.c12 * b.c1,
            a.c0 * b.c12 + a.c12 * b.c0 + a.c1 * b.c2 - a.c2 * b.c1,
        )
    }
}

/// Clifford product.
pub fn mv_mul(a: Multivector2, b: Multivector2) -> Multivector2 {
    a * b
}

/// Hermitian conjugate.
pub fn mv_conj(a: Multivector2) -> Multivector2 {
    a.conj()
}

/// Spherical monogenic of degree k in the plane,
/// Y_k(r cos θ, r sin θ) = r^k / √(2π) · (e1 cos kθ − e2 sin kθ).
///
/// These are orthonormal on the unit circle.
pub fn y_k_eval(k: u32, r: f64, theta: f64) -> Multivector2 {
    let scale = r.powi(k as i32) / (2.0 * PI).sqrt();
    let (s, c) = (k as f64 * theta).sin_cos();
    Multivector2::vector(scale * c, -scale * s)
}

/// Parity of a radial element or profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl std::str::FromStr for Parity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(format!("unknown parity '{other}' (expected even|odd)")),
        }
    }
}

/// Σ_s coeffs[s] · x^s Y_k(x) in dimension m, for a fixed spherical monogenic Y_k.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialElement {
    pub k: u32,
    pub m: u32,
    pub coeffs: Vec<f64>,
}

impl RadialElement {
    pub fn new(k: u32, m: u32, coeffs: Vec<f64>) -> Self {
        Self { k, m, coeffs }
    }

    /// The single term x^s Y_k.
    pub fn monomial(k: u32, m: u32, s: usize) -> Self {
        let mut coeffs = vec![0.0; s + 1];
        coeffs[s] = 1.0;
        Self { k, m, coeffs }
    }

    /// Parity of the nonzero powers, or `None` if the element mixes parities.
    /// The zero element reports even.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen = None;
        for (s, &c) in self.coeffs.iter().enumerate() {
            if c != 0.0 {
                let p = Parity::of(s);
                match seen {
                    None => seen = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Coefficients over t = |x|². Even elements give F with Σ F_l t^l Y_k,
    /// odd ones give G with Σ G_l t^l x Y_k, using x^(2l) = (-1)^l t^l.
    pub fn to_t_basis(&self) -> (Parity, Vec<f64>) {
        let parity = self.parity().unwrap_or(Parity::Even);
        let start = match parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        let t = self
            .coeffs
            .iter()
            .skip(start)
            .step_by(2)
            .enumerate()
            .map(|(l, &c)| if l % 2 == 0 { c } else { -c })
            .collect();
        (parity, t)
    }

    /// Inverse of [`RadialElement::to_t_basis`].
    pub fn from_t_basis(k: u32, m: u32, parity: Parity, tcoeffs: &[f64]) -> Self {
        let offset = match parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        let len = if tcoeffs.is_empty() { 0 } else { 2 * (tcoeffs.len() - 1) + offset + 1 };
        let mut coeffs = vec![0.0; len];
        for (l, &c) in tcoeffs.iter().enumerate() {
            coeffs[2 * l + offset] = if l % 2 == 0 { c } else { -c };
        }
        Self { k, m, coeffs }
    }
}

/// Dirac operator applied term by term:
/// ∂_x[x^s Y_k] = −s x^(s−1) Y_k for even s and −(s + 2k + m − 1) x^(s−1) Y_k for odd s.
pub fn dirac_radial(e: &RadialElement) -> RadialElement {
    let (k, m) = (e.k as f64, e.m as f64);
    let len = e.coeffs.len().saturating_sub(1);
    let mut out = vec![0.0; len];
    for (s, &c) in e.coeffs.iter().enumerate().skip(1) {
        let sf = s as f64;
        let factor = if s % 2 == 0 { -sf } else { -(sf + 2.0 * k + m - 1.0) };
        out[s - 1] = factor * c;
    }
    RadialElement { k: e.k, m: e.m, coeffs: out }
}

/// Laplacian through Δ = −∂_x².
pub fn laplacian_radial(e: &RadialElement) -> RadialElement {
    let mut d2 = dirac_radial(&dirac_radial(e));
    d2.coeffs.iter_mut().for_each(|c| *c = -*c);
    d2
}
