//! Classical Jacobi polynomials P_n^(α,β) and their orthonormal variants.
//!
//! The primary evaluator is the three-term degree recurrence. The explicit
//! binomial-sum representation is kept as an independent reference path
//! ([`jacobi_eval_explicit`]) and is summed in double-double so that it stays
//! usable as an oracle at moderate degree.

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::special::{ln_beta, ln_gamma};

pub use crate::special::pochhammer;

/// Degree and parameters of P_n^(α,β).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiIndex {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiIndex {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "Jacobi parameters must exceed -1 (alpha = {alpha}, beta = {beta})"
            )));
        }
        Ok(Self { n, alpha, beta })
    }

    fn unchecked(n: usize, alpha: f64, beta: f64) -> Self {
        Self { n, alpha, beta }
    }
}

/// P_n^(α,β)(x) by the standard degree recurrence.
pub fn jacobi_eval(idx: JacobiIndex, x: f64) -> f64 {
    let JacobiIndex { n, alpha: a, beta: b } = idx;
    if n == 0 {
        return 1.0;
    }
    let mut p_prev = 1.0;
    let mut p = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let kf = k as f64;
        let s = 2.0 * kf + a + b;
        let c1 = 2.0 * kf * (kf + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (kf + a - 1.0) * (kf + b - 1.0) * s;
        let next = (c2 * p - c3 * p_prev) / c1;
        p_prev = p;
        p = next;
    }
    p
}

/// P_n^(α,β)(x) from the explicit sum
/// Γ(α+n+1)/(n! Γ(α+β+n+1)) Σ_s C(n,s) Γ(α+β+n+s+1)/Γ(α+s+1) ((x−1)/2)^s.
///
/// Successive terms are generated by their exact ratio and accumulated in
/// double-double; the Γ prefactor is the only f64-rounded quantity.
pub fn jacobi_eval_explicit(idx: JacobiIndex, x: f64) -> f64 {
    let JacobiIndex { n, alpha: a, beta: b } = idx;
    let z = Dd::new(x) + Dd::new(-1.0);
    let z = Dd { hi: z.hi * 0.5, lo: z.lo * 0.5 };
    // term_0 = Γ(α+β+n+1)/Γ(α+1); fold it into the prefactor.
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    for s in 0..n {
        let sf = s as f64;
        // a, b are arbitrary doubles: form the shifted sums without rounding
        let shifted = Dd::new(a) + Dd::new(b) + Dd::new(n as f64 + sf + 1.0);
        let num = shifted.mul_f64(n as f64 - sf);
        let den = (Dd::new(a) + Dd::new(sf + 1.0)).mul_f64(sf + 1.0);
        term = (term * z * num).div(den);
        sum = sum + term;
    }
    // Γ(α+n+1)/(n! Γ(α+1)), as a running product
    let prefactor = (1..=n).fold(1.0, |acc, j| acc * (a + j as f64) / j as f64);
    sum.to_f64() * prefactor
}

/// First or second derivative of P_n^(α,β) at x.
///
/// Uses d/dx P_n^(α,β) = (n+α+β+1)/2 · P_{n−1}^(α+1,β+1).
pub fn jacobi_deriv(idx: JacobiIndex, x: f64, order: u8) -> Result<f64> {
    let JacobiIndex { n, alpha: a, beta: b } = idx;
    let nf = n as f64;
    match order {
        1 => {
            if n == 0 {
                return Ok(0.0);
            }
            let inner = JacobiIndex::unchecked(n - 1, a + 1.0, b + 1.0);
            Ok(0.5 * (nf + a + b + 1.0) * jacobi_eval(inner, x))
        }
        2 => {
            if n < 2 {
                return Ok(0.0);
            }
            let inner = JacobiIndex::unchecked(n - 2, a + 2.0, b + 2.0);
            Ok(0.25 * (nf + a + b + 1.0) * (nf + a + b + 2.0) * jacobi_eval(inner, x))
        }
        _ => Err(Error::InvalidParameter(format!("derivative order must be 1 or 2, got {order}"))),
    }
}

/// Left side of (1−x²)y'' + [β−α−(α+β+2)x]y' + n(n+α+β+1)y with y = P_n^(α,β).
pub fn jacobi_ode_residual(idx: JacobiIndex, x: f64) -> f64 {
    let (terms, _) = jacobi_ode_terms(idx, x);
    terms.iter().sum()
}

/// The three terms of the Jacobi ODE and the sum of their magnitudes (for scaling residuals).
pub fn jacobi_ode_terms(idx: JacobiIndex, x: f64) -> ([f64; 3], f64) {
    let JacobiIndex { n, alpha: a, beta: b } = idx;
    let nf = n as f64;
    let y = jacobi_eval(idx, x);
    let d1 = jacobi_deriv(idx, x, 1).expect("order 1");
    let d2 = jacobi_deriv(idx, x, 2).expect("order 2");
    let terms = [
        (1.0 - x * x) * d2,
        (b - a - (a + b + 2.0) * x) * d1,
        nf * (nf + a + b + 1.0) * y,
    ];
    let scale = terms.iter().map(|t| t.abs()).sum();
    (terms, scale)
}

/// ∫_{−1}^{1} (1−x)^α (1+x)^β [P_n^(α,β)(x)]² dx.
pub fn jacobi_norm_sq(idx: JacobiIndex) -> f64 {
    ln_jacobi_norm_sq(idx).exp()
}

/// Log of [`jacobi_norm_sq`], safe for large n.
pub fn ln_jacobi_norm_sq(idx: JacobiIndex) -> f64 {
    let JacobiIndex { n, alpha: a, beta: b } = idx;
    let nf = n as f64;
    if n == 0 {
        // avoids Γ(α+β+1)·(α+β+1) when α+β+1 = 0
        return (a + b + 1.0) * std::f64::consts::LN_2 + ln_beta(a + 1.0, b + 1.0);
    }
    (a + b + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + nf + 1.0) + ln_gamma(b + nf + 1.0)
        - ln_gamma(nf + 1.0)
        - (a + b + 1.0 + 2.0 * nf).ln()
        - ln_gamma(a + b + nf + 1.0)
}

/// Three-term recurrence of the polynomials orthonormal on [0, 1] against
/// t^b (1−t)^a:
///
/// t p_n = off(n+1) p_{n+1} + diag(n) p_n + off(n) p_{n−1}.
///
/// The same coefficients form the Jacobi matrix used for Gauss–Jacobi rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthonormalJacobi01 {
    /// exponent of (1 − t)
    pub a: f64,
    /// exponent of t
    pub b: f64,
}

impl OrthonormalJacobi01 {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > -1.0 && b > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "weight exponents must exceed -1 (got {a}, {b})"
            )));
        }
        Ok(Self { a, b })
    }

    /// Recurrence coefficients on [−1, 1] for (1−x)^a (1+x)^b: (A_n, B_n).
    /// B_0 is reported as 0.
    pub fn symmetric_coeffs(&self, n: usize) -> (f64, f64) {
        let (a, b) = (self.a, self.b);
        let nf = n as f64;
        let s = 2.0 * nf + a + b;
        let diag = if n == 0 { (b - a) / (a + b + 2.0) } else { (b * b - a * a) / (s * (s + 2.0)) };
        let off = match n {
            0 => 0.0,
            1 => 2.0 / (2.0 + a + b) * ((1.0 + a) * (1.0 + b) / (3.0 + a + b)).sqrt(),
            _ => {
                2.0 / s
                    * (nf * (nf + a) * (nf + b) * (nf + a + b) / ((s - 1.0) * (s + 1.0))).sqrt()
            }
        };
        (diag, off)
    }

    /// Coefficients (diag_n, off_n) of the recurrence on [0, 1].
    pub fn coeffs(&self, n: usize) -> (f64, f64) {
        let (d, o) = self.symmetric_coeffs(n);
        (0.5 * (1.0 + d), 0.5 * o)
    }

    /// ∫_0^1 t^b (1−t)^a dt.
    pub fn mass(&self) -> f64 {
        ln_beta(self.b + 1.0, self.a + 1.0).exp()
    }

    /// Values and first two derivatives of p_0 … p_{len−1} at t.
    pub fn eval_with_derivs(&self, t: f64, len: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let mut p = vec![0.0; len];
        let mut dp = vec![0.0; len];
        let mut d2p = vec![0.0; len];
        if len == 0 {
            return (p, dp, d2p);
        }
        p[0] = 1.0 / self.mass().sqrt();
        for n in 0..len - 1 {
            let (diag, _) = self.coeffs(n);
            let (_, off_next) = self.coeffs(n + 1);
            let (_, off) = self.coeffs(n);
            let (pm, dpm, d2pm) = if n > 0 { (p[n - 1], dp[n - 1], d2p[n - 1]) } else { (0.0, 0.0, 0.0) };
            let w = t - diag;
            p[n + 1] = (w * p[n] - off * pm) / off_next;
            dp[n + 1] = (w * dp[n] + p[n] - off * dpm) / off_next;
            d2p[n + 1] = (w * d2p[n] + 2.0 * dp[n] - off * d2pm) / off_next;
        }
        (p, dp, d2p)
    }

    /// Values of p_0 … p_{len−1} at t.
    pub fn eval(&self, t: f64, len: usize) -> Vec<f64> {
        let mut p = vec![0.0; len];
        if len == 0 {
            return p;
        }
        p[0] = 1.0 / self.mass().sqrt();
        for n in 0..len - 1 {
            let (diag, off) = self.coeffs(n);
            let (_, off_next) = self.coeffs(n + 1);
            let pm = if n > 0 { p[n - 1] } else { 0.0 };
            p[n + 1] = ((t - diag) * p[n] - off * pm) / off_next;
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: usize, a: f64, b: f64) -> JacobiIndex {
        JacobiIndex::new(n, a, b).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(jacobi_eval(idx(0, 0.3, 2.0), 0.77), 1.0);
        assert!((jacobi_eval(idx(2, 0.0, 0.0), 1.0) - 1.0).abs() < 1e-15);
        assert!((jacobi_eval(idx(1, 0.5, -0.5), 0.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_integrable_parameters() {
        assert!(JacobiIndex::new(3, -1.0, 0.0).is_err());
        assert!(JacobiIndex::new(3, 0.0, -1.5).is_err());
    }

    #[test]
    fn legendre_closed_form() {
        // P_3 = (5x³ − 3x)/2
        for &x in &[-0.9, -0.2, 0.4, 1.0] {
            let p3: f64 = (5.0 * x * x * x - 3.0 * x) / 2.0;
            assert!((jacobi_eval(idx(3, 0.0, 0.0), x) - p3).abs() < 1e-15);
        }
    }

    #[test]
    fn recurrence_agrees_with_explicit_sum() {
        for n in 0..=15 {
            for &(a, b) in &[(0.0, 0.0), (-0.5, 1.0), (2.0, 0.3), (-0.9, -0.9), (3.5, 1.25)] {
                for i in 0..=20 {
                    let x = -1.0 + 0.1 * i as f64;
                    let r = jacobi_eval(idx(n, a, b), x);
                    let e = jacobi_eval_explicit(idx(n, a, b), x);
                    let scale = jacobi_eval(idx(n, a, b), 1.0).abs().max(jacobi_eval(idx(n, a, b), -1.0).abs());
                    assert!((r - e).abs() <= 1e-11 * scale.max(1.0), "n={n} a={a} b={b} x={x}: {r} vs {e}");
                }
            }
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(jacobi_deriv(idx(0, 0.1, 0.2), 0.3, 1).unwrap(), 0.0);
        assert_eq!(jacobi_deriv(idx(0, 0.1, 0.2), 0.3, 2).unwrap(), 0.0);
        assert!((jacobi_deriv(idx(1, 0.0, 0.0), -0.4, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!(jacobi_deriv(idx(2, 0.0, 0.0), 0.0, 3).is_err());
    }

    #[test]
    fn derivatives_match_central_differences() {
        let id = idx(3, 0.3, 1.2);
        let (x, h) = (0.4, 1e-5);
        let fd1 = (jacobi_eval(id, x + h) - jacobi_eval(id, x - h)) / (2.0 * h);
        let d1 = jacobi_deriv(id, x, 1).unwrap();
        assert!((fd1 - d1).abs() <= 1e-7 * d1.abs());
        let h2 = 1e-4;
        let fd2 = (jacobi_eval(id, x + h2) - 2.0 * jacobi_eval(id, x) + jacobi_eval(id, x - h2)) / (h2 * h2);
        let d2 = jacobi_deriv(id, x, 2).unwrap();
        assert!((fd2 - d2).abs() <= 1e-5 * d2.abs());
    }

    #[test]
    fn ode_residual_vanishes() {
        assert_eq!(jacobi_ode_residual(idx(0, 0.4, 0.1), 0.2), 0.0);
        for &(n, a, b, x) in &[(5, 0.0, 0.0, 0.37), (4, -0.5, 1.0, -0.8), (12, 2.5, -0.3, 0.91)] {
            let (terms, scale) = jacobi_ode_terms(idx(n, a, b), x);
            let r: f64 = terms.iter().sum();
            assert!(r.abs() <= 1e-10 * scale, "n={n}: residual {r} scale {scale}");
        }
    }

    #[test]
    fn reflection_symmetry() {
        for n in 0..=20 {
            for &z in &[-0.7, 0.1, 0.55] {
                let lhs = jacobi_eval(idx(n, 0.7, -0.4), -z);
                let rhs = if n % 2 == 0 { 1.0 } else { -1.0 } * jacobi_eval(idx(n, -0.4, 0.7), z);
                assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
            }
        }
    }

    #[test]
    fn orthonormal_recurrence_matches_scaled_jacobi() {
        let fam = OrthonormalJacobi01::new(1.5, 0.5).unwrap();
        let t = 0.3;
        let p = fam.eval(t, 12);
        for (n, &pn) in p.iter().enumerate() {
            let id = idx(n, 1.5, 0.5);
            // ∫_0^1 P_n(2t−1)² t^b (1−t)^a dt = h_n / 2^(a+b+1)
            let norm = (jacobi_norm_sq(id) / 2f64.powf(3.0)).sqrt();
            let expected = jacobi_eval(id, 2.0 * t - 1.0) / norm;
            assert!((pn - expected).abs() <= 1e-12 * expected.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn orthonormal_derivatives_match_finite_differences() {
        let fam = OrthonormalJacobi01::new(-0.5, 2.0).unwrap();
        let (t, h) = (0.62, 1e-5);
        let (_, dp, d2p) = fam.eval_with_derivs(t, 9);
        let plus = fam.eval(t + h, 9);
        let minus = fam.eval(t - h, 9);
        let mid = fam.eval(t, 9);
        for n in 0..9 {
            let fd1 = (plus[n] - minus[n]) / (2.0 * h);
            assert!((fd1 - dp[n]).abs() <= 1e-6 * dp[n].abs().max(1.0));
            let fd2 = (plus[n] - 2.0 * mid[n] + minus[n]) / (h * h);
            assert!((fd2 - d2p[n]).abs() <= 1e-3 * d2p[n].abs().max(1.0));
        }
    }
}
