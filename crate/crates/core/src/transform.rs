//! The weighted Fourier transform
//! F_α f(ξ) = ∫_{B(1)} e^{−2πi⟨x,ξ⟩} f(x) (1 − |x|²)^α dx
//! of CGPs and CPSWFs, and the finite operator G_{c,α} f(x) = F_α f(−c x).
//!
//! Complex values are pairs (re, im) of multivectors; the complex unit
//! commutes with every blade.

use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_kernel_ratio, ln_bessel_kernel_limit, BesselOrder};
use crate::cgp::{cgp_eval_2d, ln_cgp_norm_sq, CgpSpec};
use crate::cliffalg::{mv_mul, y_k_eval, Multivector2, Parity};
use crate::cpswf::{cpswf_evaluator, CpswfEigenpair};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_jacobi_rule_01, QuadRule};
use crate::special::ln_gamma;

/// Complex-valued multivector re + i·im.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexMv {
    pub re: Multivector2,
    pub im: Multivector2,
}

impl ComplexMv {
    pub const ZERO: ComplexMv = ComplexMv { re: Multivector2::ZERO, im: Multivector2::ZERO };

    /// i^p · v for a real multivector v.
    pub fn unit_power(p: usize, v: Multivector2) -> Self {
        match p % 4 {
            0 => Self { re: v, im: Multivector2::ZERO },
            1 => Self { re: Multivector2::ZERO, im: v },
            2 => Self { re: -v, im: Multivector2::ZERO },
            _ => Self { re: Multivector2::ZERO, im: -v },
        }
    }

    /// Modulus Σ over blades of |re|² + |im|², square-rooted.
    pub fn norm(&self) -> f64 {
        (self.re.norm_sq() + self.im.norm_sq()).sqrt()
    }

    pub fn max_abs_diff(&self, other: &ComplexMv) -> f64 {
        self.re.max_abs_diff(other.re).max(self.im.max_abs_diff(other.im))
    }
}

impl std::ops::Add for ComplexMv {
    type Output = ComplexMv;
    fn add(self, o: ComplexMv) -> ComplexMv {
        ComplexMv { re: self.re + o.re, im: self.im + o.im }
    }
}

impl std::ops::Sub for ComplexMv {
    type Output = ComplexMv;
    fn sub(self, o: ComplexMv) -> ComplexMv {
        ComplexMv { re: self.re - o.re, im: self.im - o.im }
    }
}

impl std::ops::Mul<f64> for ComplexMv {
    type Output = ComplexMv;
    fn mul(self, s: f64) -> ComplexMv {
        ComplexMv { re: self.re * s, im: self.im * s }
    }
}

/// Radial factor of the transform of a CGP at one |ξ|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformSample {
    pub xi_modulus: f64,
    /// 2^n Γ(n+α+1) J_ν(2π|ξ|) / (π^α |ξ|^ν), ν = α + k + m/2 + n
    pub radial_value: f64,
    pub order: BesselOrder,
    /// F_α(C_n)(ξ) = (−1)^k i^{n+k} · radial_value · ξ^n Y_k(ξ)
    pub n: usize,
    pub k: u32,
}

fn ln_radial_prefactor(n: usize, alpha: f64) -> f64 {
    n as f64 * std::f64::consts::LN_2 + ln_gamma(n as f64 + alpha + 1.0) - alpha * std::f64::consts::PI.ln()
}

fn order(spec: &CgpSpec) -> f64 {
    spec.alpha + spec.mu() + spec.n as f64
}

/// Closed-form radial factor of F_α(C_{n,m}^α(Y_k)) at |ξ|.
pub fn ft_cgp_closed(spec: CgpSpec, xi_modulus: f64) -> Result<TransformSample> {
    let spec = CgpSpec::new(spec.n, spec.m, spec.k, spec.alpha)?;
    if !(xi_modulus >= 0.0) {
        return Err(Error::InvalidParameter(format!("|ξ| must be non-negative, got {xi_modulus}")));
    }
    let nu = order(&spec);
    let radial_value = (ln_radial_prefactor(spec.n, spec.alpha) + ln_bessel_kernel_limit(nu)).exp()
        * bessel_kernel_ratio(nu, xi_modulus);
    Ok(TransformSample { xi_modulus, radial_value, order: BesselOrder::new(nu)?, n: spec.n, k: spec.k })
}

/// ξ̂^n for the unit vector ξ̂ at angle φ (Clifford power).
fn unit_vector_power(n: usize, phi: f64) -> Multivector2 {
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    if n % 2 == 0 {
        Multivector2::scalar(sign)
    } else {
        Multivector2::polar_vector(1.0, phi) * sign
    }
}

/// Σ_j w_j F_α(C_{n_j}) at ξ = (ρ cos φ, ρ sin φ), each term
/// (−1)^k i^{n+k} 2^n Γ(n+α+1) J_ν(2πρ)/(π^α ρ^ν) ξ^n Y_k(ξ),
/// with the weights given in log-magnitude form to avoid overflow.
fn closed_sum_2d(k: u32, alpha: f64, terms: &[(usize, f64, f64)], rho: f64, phi: f64) -> ComplexMv {
    // terms: (n, coefficient, ln of extra positive scale)
    let y = y_k_eval(k, rho, phi);
    let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut acc = ComplexMv::ZERO;
    for &(n, coeff, ln_scale) in terms {
        if coeff == 0.0 || (rho == 0.0 && n > 0) {
            continue;
        }
        let nu = alpha + k as f64 + 1.0 + n as f64;
        let ln_rho_n = if n == 0 { 0.0 } else { n as f64 * rho.ln() };
        let mag = (ln_radial_prefactor(n, alpha) + ln_bessel_kernel_limit(nu) + ln_rho_n + ln_scale).exp()
            * bessel_kernel_ratio(nu, rho);
        let v = mv_mul(unit_vector_power(n, phi), y) * (sign_k * coeff * mag);
        acc = acc + ComplexMv::unit_power(n + k as usize, v);
    }
    acc
}

/// Closed-form F_α(C_{n,2}^α(Y_k)) at the point ξ = (ξ1, ξ2), including phase.
pub fn ft_cgp_closed_2d(spec: CgpSpec, xi: [f64; 2], normalized: bool) -> Result<ComplexMv> {
    if spec.m != 2 {
        return Err(Error::UnsupportedDimension(spec.m));
    }
    let spec = CgpSpec::new(spec.n, spec.m, spec.k, spec.alpha)?;
    let (rho, phi) = polar(xi);
    let ln_scale = if normalized { -0.5 * ln_cgp_norm_sq(spec.n, spec.alpha, spec.k, spec.m) } else { 0.0 };
    Ok(closed_sum_2d(spec.k, spec.alpha, &[(spec.n, 1.0, ln_scale)], rho, phi))
}

fn polar(p: [f64; 2]) -> (f64, f64) {
    (p[0].hypot(p[1]), p[1].atan2(p[0]))
}

/// Tensor polar rule on the unit disk for ∫ g(x) (1 − |x|²)^α dx.
///
/// Radially Gauss–Jacobi in r for r (1 − r)^α, with the smooth factor
/// (1 + r)^α folded into the weights; trapezoid in θ.
#[derive(Debug, Clone)]
pub struct DiskRule {
    radial: QuadRule,
    alpha: f64,
    n_angular: usize,
}

impl DiskRule {
    pub fn new(alpha: f64, n_radial: usize, n_angular: usize) -> Result<Self> {
        if n_angular == 0 {
            return Err(Error::InvalidParameter("angular node count must be positive".into()));
        }
        Ok(Self { radial: gauss_jacobi_rule_01(n_radial, alpha, 1.0)?, alpha, n_angular })
    }

    /// Nodes (r, θ) with their weights.
    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        let dtheta = 2.0 * std::f64::consts::PI / self.n_angular as f64;
        let mut out = Vec::with_capacity(self.radial.len() * self.n_angular);
        for (&r, &w) in self.radial.nodes.iter().zip(&self.radial.weights) {
            let wr = w * (1.0 + r).powf(self.alpha) * dtheta;
            for j in 0..self.n_angular {
                out.push((r, j as f64 * dtheta, wr));
            }
        }
        out
    }
}

/// ∫_{B(1)} e^{−2πi⟨x,ξ⟩} f(x) (1 − |x|²)^α dx by quadrature. The real
/// part is the cosine integral and the imaginary part is minus the sine integral.
pub fn ft_direct_fn<F>(f: F, rule: &DiskRule, xi: [f64; 2]) -> Result<ComplexMv>
where
    F: Fn(f64, f64) -> Result<Multivector2>,
{
    let mut re = Multivector2::ZERO;
    let mut im = Multivector2::ZERO;
    for (r, theta, w) in rule.points() {
        let (s, c) = theta.sin_cos();
        let phase = 2.0 * std::f64::consts::PI * r * (c * xi[0] + s * xi[1]);
        let v = f(r, theta)? * w;
        let (sp, cp) = phase.sin_cos();
        re += v * cp;
        im += v * (-sp);
    }
    Ok(ComplexMv { re, im })
}

/// Direct-quadrature F_α(C_{n,2}^α(Y_k))(ξ).
pub fn ft_direct(spec: CgpSpec, xi: [f64; 2], n_radial: usize, n_angular: usize) -> Result<ComplexMv> {
    if spec.m != 2 {
        return Err(Error::UnsupportedDimension(spec.m));
    }
    let rule = DiskRule::new(spec.alpha, n_radial, n_angular)?;
    ft_direct_fn(|r, th| cgp_eval_2d(spec, r, th, false), &rule, xi)
}

/// ∫_{B(1)} |C(x)| (1 − |x|²)^α dx, an upper bound for |F_α C| at every ξ.
pub fn weighted_l1_norm(spec: CgpSpec, n_radial: usize, n_angular: usize) -> Result<f64> {
    let rule = DiskRule::new(spec.alpha, n_radial, n_angular)?;
    let mut s = 0.0;
    for (r, th, w) in rule.points() {
        s += w * cgp_eval_2d(spec, r, th, false)?.norm();
    }
    Ok(s)
}

/// How G_{c,α} is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GRoute {
    /// sum of closed-form CGP transforms
    Closed,
    /// polar quadrature of the defining integral
    Direct { n_radial: usize, n_angular: usize },
}

/// G_{c,α}ψ at each sample point (inside the unit disk).
pub fn apply_g(pair: &CpswfEigenpair, c: f64, points: &[[f64; 2]], route: GRoute) -> Result<Vec<ComplexMv>> {
    if pair.m != 2 {
        return Err(Error::UnsupportedDimension(pair.m));
    }
    if points.iter().any(|p| p[0].hypot(p[1]) > 1.0 + 1e-12) {
        return Err(Error::InvalidParameter("sample points must lie in the closed unit disk".into()));
    }
    match route {
        GRoute::Closed => {
            let shift = if pair.parity == Parity::Odd { 1 } else { 0 };
            let terms: Vec<(usize, f64, f64)> = pair
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let n = 2 * i + shift;
                    (n, a, -0.5 * ln_cgp_norm_sq(n, pair.alpha, pair.k, pair.m))
                })
                .collect();
            Ok(points
                .iter()
                .map(|p| {
                    let (rho, phi) = polar([-c * p[0], -c * p[1]]);
                    closed_sum_2d(pair.k, pair.alpha, &terms, rho, phi)
                })
                .collect())
        }
        GRoute::Direct { n_radial, n_angular } => {
            let rule = DiskRule::new(pair.alpha, n_radial, n_angular)?;
            let eval = cpswf_evaluator(pair)?;
            points.iter().map(|p| ft_direct_fn(|r, th| eval.eval(r, th), &rule, [-c * p[0], -c * p[1]])).collect()
        }
    }
}

/// Sampling grid for eigen-quality fits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_radial: usize,
    pub n_angular: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n_radial: 24, n_angular: 32 }
    }
}

/// Least-squares fit G_{c,α}ψ ≈ μ ψ over a weighted polar grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenQuality {
    pub mu_re: f64,
    pub mu_im: f64,
    pub mu_modulus: f64,
    /// ‖Gψ − μψ‖ / ‖ψ‖ on the grid
    pub residual_rel: f64,
    pub grid: GridSpec,
}

pub fn eigen_quality(pair: &CpswfEigenpair, c: f64, grid: GridSpec) -> Result<EigenQuality> {
    if pair.m != 2 {
        return Err(Error::UnsupportedDimension(pair.m));
    }
    let rule = DiskRule::new(pair.alpha, grid.n_radial, grid.n_angular)?;
    let pts = rule.points();
    let eval = cpswf_evaluator(pair)?;
    let xy: Vec<[f64; 2]> = pts.iter().map(|&(r, th, _)| [r * th.cos(), r * th.sin()]).collect();
    let g = apply_g(pair, c, &xy, GRoute::Closed)?;
    let mut ff = 0.0;
    let mut fg_re = 0.0;
    let mut fg_im = 0.0;
    let mut fvals = Vec::with_capacity(pts.len());
    for (&(r, th, w), gv) in pts.iter().zip(&g) {
        let f = eval.eval(r, th)?;
        ff += w * f.norm_sq();
        fg_re += w * f.inner(gv.re);
        fg_im += w * f.inner(gv.im);
        fvals.push(f);
    }
    if ff == 0.0 {
        return Err(Error::DegenerateParameters("eigenfunction vanishes on the grid".into()));
    }
    let (mu_re, mu_im) = (fg_re / ff, fg_im / ff);
    let mut res = 0.0;
    for ((&(_, _, w), gv), f) in pts.iter().zip(&g).zip(&fvals) {
        res += w * ((gv.re - *f * mu_re).norm_sq() + (gv.im - *f * mu_im).norm_sq());
    }
    Ok(EigenQuality {
        mu_re,
        mu_im,
        mu_modulus: mu_re.hypot(mu_im),
        residual_rel: (res / ff).sqrt(),
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpswf::{cpswf_solve, solve_truncated};
    use std::f64::consts::PI;

    fn spec(n: usize, k: u32, alpha: f64) -> CgpSpec {
        CgpSpec::new(n, 2, k, alpha).unwrap()
    }

    #[test]
    fn closed_value_at_origin() {
        let s = ft_cgp_closed(spec(0, 0, 0.0), 0.0).unwrap();
        assert!((s.radial_value - PI).abs() < 1e-14);
        assert!((s.order.nu - 1.0).abs() < 1e-15);
        // disk integral of Y_0 is π e1/√(2π)
        let full = ft_cgp_closed_2d(spec(0, 0, 0.0), [0.0, 0.0], false).unwrap();
        let want = Multivector2::new(0.0, PI / (2.0 * PI).sqrt(), 0.0, 0.0);
        assert!(full.re.max_abs_diff(want) < 1e-14 && full.im.norm() == 0.0);
    }

    #[test]
    fn transform_vanishes_at_origin_for_positive_k() {
        let v = ft_cgp_closed_2d(spec(2, 1, 0.5), [0.0, 0.0], false).unwrap();
        assert_eq!(v.norm(), 0.0);
        let d = ft_direct(spec(0, 1, 0.0), [0.0, 0.0], 20, 64).unwrap();
        assert!(d.norm() < 1e-14);
    }

    #[test]
    fn direct_at_origin_is_disk_integral() {
        let d = ft_direct(spec(0, 0, 0.0), [0.0, 0.0], 20, 64).unwrap();
        let want = Multivector2::new(0.0, PI / (2.0 * PI).sqrt(), 0.0, 0.0);
        assert!(d.re.max_abs_diff(want) < 1e-14 && d.im.norm() < 1e-15);
    }

    #[test]
    fn continuity_at_origin() {
        let s = spec(3, 2, 1.0);
        let a = ft_cgp_closed(s, 0.0).unwrap().radial_value;
        let b = ft_cgp_closed(s, 1e-6).unwrap().radial_value;
        assert!((a - b).abs() <= 1e-8 * a.abs());
    }

    #[test]
    fn closed_form_matches_direct_quadrature() {
        for &(n, k, alpha, xi) in &[(2, 1, 0.5, [1.3 * 0.6, 1.3 * 0.8]), (5, 0, 0.0, [-0.4, 2.1]), (3, 2, 0.5, [0.9, -0.2])] {
            let s = spec(n, k, alpha);
            let closed = ft_cgp_closed_2d(s, xi, false).unwrap();
            let direct = ft_direct(s, xi, 80, 256).unwrap();
            let scale = weighted_l1_norm(s, 40, 128).unwrap();
            assert!((closed.norm() - direct.norm()).abs() <= 1e-7 * scale);
            assert!(closed.max_abs_diff(&direct) <= 1e-7 * scale, "n={n} k={k}");
        }
    }

    #[test]
    fn g_routes_agree() {
        let pair = solve_truncated(Parity::Even, 1, 2, 0.5, 1.0, 2, 40).unwrap().remove(1);
        let pts: Vec<[f64; 2]> = (0..5).map(|j| [0.15 * j as f64, -0.1 * j as f64]).collect();
        let a = apply_g(&pair, 1.0, &pts, GRoute::Closed).unwrap();
        let b = apply_g(&pair, 1.0, &pts, GRoute::Direct { n_radial: 60, n_angular: 128 }).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(x.max_abs_diff(y) <= 1e-7 * x.norm().max(1.0));
        }
        assert!(apply_g(&pair, 1.0, &[[1.5, 0.0]], GRoute::Closed).is_err());
    }

    #[test]
    fn g_at_zero_bandwidth_is_constant() {
        let pair = cpswf_solve(Parity::Even, 0, 2, 0.0, 0.5, 2, 1e-14).unwrap().remove(0);
        let pts = [[0.0, 0.0], [0.3, 0.4], [-0.9, 0.1]];
        let v = apply_g(&pair, 0.0, &pts, GRoute::Closed).unwrap();
        let mean = apply_g(&pair, 0.0, &pts, GRoute::Direct { n_radial: 40, n_angular: 64 }).unwrap();
        for x in &v {
            assert!(x.max_abs_diff(&v[0]) < 1e-14);
            assert!(x.max_abs_diff(&mean[0]) < 1e-12);
        }
    }

    #[test]
    fn cpswfs_are_eigenfunctions_of_g() {
        for parity in [Parity::Even, Parity::Odd] {
            let pairs = cpswf_solve(parity, 1, 2, 0.0, 1.0, 3, 1e-14).unwrap();
            let mut last = f64::INFINITY;
            for p in &pairs {
                let q = eigen_quality(p, 1.0, GridSpec::default()).unwrap();
                assert!(q.residual_rel <= 1e-6, "{parity} N={}: {}", p.big_n, q.residual_rel);
                assert!(q.mu_modulus < last);
                last = q.mu_modulus;
            }
        }
    }
}
