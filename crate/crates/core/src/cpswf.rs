//! Weighted Clifford prolate spheroidal wave functions.
//!
//! In each parity class the eigenfunctions of L_{c,α} are expanded in the
//! normalized CGPs of fixed k. The expansion coefficients are eigenvectors
//! of the symmetric tridiagonal matrices M^e_{k,m,α} and M^o_{k,m,α}.

use serde::{Deserialize, Serialize};

use crate::cgp::{
    cgp_eigenvalue, mu, normalized_basis_sign, radial_weight_exponent, sl_radial_terms, xsq_action, RadialPoly,
    RadialRepr,
};
use crate::cliffalg::{mv_mul, y_k_eval, Multivector2, Parity};
use crate::error::{check_alpha, check_dimension, Error, Result};
use crate::quadrature::{gauss_jacobi_rule_01, weighted_integral_01};
use crate::tridiag::{eig_tridiag_lowest, TridiagSym};

pub use crate::tridiag::{eig_tridiag, EigenPair};

/// Hard cap on the truncation size.
pub const TRUNCATION_CAP: usize = 4096;
/// Default tolerance on the tail coefficients.
pub const DEFAULT_TOL: f64 = 1e-14;

const FOUR_PI_SQ: f64 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;

/// One computed weighted CPSWF: ψ = Σ_i coeffs[i] C̄_{2i(+1)}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CpswfEigenpair {
    pub parity: Parity,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub k: u32,
    pub m: u32,
    pub alpha: f64,
    pub c: f64,
    pub chi: f64,
    pub coeffs: Vec<f64>,
    pub trunc: usize,
}

impl CpswfEigenpair {
    /// Global degree label n = 2N or 2N + 1.
    pub fn n(&self) -> usize {
        match self.parity {
            Parity::Even => 2 * self.big_n,
            Parity::Odd => 2 * self.big_n + 1,
        }
    }

    /// Largest magnitude among the last two coefficients.
    pub fn tail(&self) -> f64 {
        self.coeffs.iter().rev().take(2).fold(0.0, |m, x| m.max(x.abs()))
    }
}

fn check_family(k: u32, m: u32, alpha: f64, c: f64) -> Result<()> {
    let _ = k;
    check_alpha(alpha)?;
    check_dimension(m)?;
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::InvalidParameter(format!("c must be a non-negative number, got {c}")));
    }
    Ok(())
}

fn check_size(size: usize) -> Result<()> {
    if size < 2 {
        return Err(Error::InvalidParameter(format!("matrix size must be at least 2, got {size}")));
    }
    Ok(())
}

fn positive(x: f64, what: &str) -> Result<f64> {
    if x.abs() < 1e-12 {
        Err(Error::DegenerateParameters(format!("{what} vanishes")))
    } else {
        Ok(x)
    }
}

/// Truncation of M^e_{k,m,α} from its closed-form entries.
pub fn build_matrix_even(k: u32, m: u32, alpha: f64, c: f64, size: usize) -> Result<TridiagSym> {
    check_family(k, m, alpha, c)?;
    check_size(size)?;
    let mu = mu(k, m);
    let a = alpha;
    let s = FOUR_PI_SQ * c * c;
    let mut diag = Vec::with_capacity(size);
    let mut off = Vec::with_capacity(size - 1);
    for i in 0..size {
        let f = i as f64;
        let d0 = positive(a + mu + 2.0 * f, "α+μ+2i")?;
        let d1 = positive(a + mu + 2.0 * f + 1.0, "α+μ+2i+1")?;
        let lower = if i == 0 { 0.0 } else { f * (a + f) / positive(a + mu + 2.0 * f - 1.0, "α+μ+2i−1")? };
        diag.push(4.0 * f * (a + mu + f) + s / d0 * ((a + mu + f) * (mu + f) / d1 + lower));
        if i + 1 < size {
            let d2 = a + mu + 2.0 * f + 2.0;
            let num = ((a + f + 1.0) * (f + 1.0) * (mu + f) * (a + mu + f)).sqrt();
            off.push(-s * num / (d1 * (d2 * d0).sqrt()));
        }
    }
    TridiagSym::new(diag, off)
}

/// Truncation of M^o_{k,m,α} from its closed-form entries.
pub fn build_matrix_odd(k: u32, m: u32, alpha: f64, c: f64, size: usize) -> Result<TridiagSym> {
    check_family(k, m, alpha, c)?;
    check_size(size)?;
    let mu = mu(k, m);
    let a = alpha;
    let s = FOUR_PI_SQ * c * c;
    let mut diag = Vec::with_capacity(size);
    let mut off = Vec::with_capacity(size - 1);
    for i in 0..size {
        let f = i as f64;
        let d0 = positive(a + mu + 2.0 * f, "α+μ+2i")?;
        let d1 = positive(a + mu + 2.0 * f + 1.0, "α+μ+2i+1")?;
        let d2 = positive(a + mu + 2.0 * f + 2.0, "α+μ+2i+2")?;
        diag.push(
            4.0 * (a + f + 1.0) * (mu + f) + s / d1 * ((a + mu + f) * (mu + f) / d0 + (f + 1.0) * (a + f + 1.0) / d2),
        );
        if i + 1 < size {
            let d3 = a + mu + 2.0 * f + 3.0;
            let num = ((a + f + 1.0) * (f + 1.0) * (mu + f + 1.0) * (a + mu + f + 1.0)).sqrt();
            off.push(-s * num / (d2 * (d1 * d3).sqrt()));
        }
    }
    TridiagSym::new(diag, off)
}

pub fn build_matrix(parity: Parity, k: u32, m: u32, alpha: f64, c: f64, size: usize) -> Result<TridiagSym> {
    match parity {
        Parity::Even => build_matrix_even(k, m, alpha, c, size),
        Parity::Odd => build_matrix_odd(k, m, alpha, c, size),
    }
}

/// The same truncation assembled from the |x|² action on normalized CGPs:
/// diagonal C(α,n,m,k) + 4π²c² b_i, off-diagonal 4π²c² a_i.
pub fn build_matrix_bonnet(parity: Parity, k: u32, m: u32, alpha: f64, c: f64, size: usize) -> Result<TridiagSym> {
    check_family(k, m, alpha, c)?;
    check_size(size)?;
    let s = FOUR_PI_SQ * c * c;
    let shift = if parity == Parity::Odd { 1 } else { 0 };
    let mut diag = Vec::with_capacity(size);
    let mut off = Vec::with_capacity(size - 1);
    for i in 0..size {
        let (a_i, b_i, _) = xsq_action(i, alpha, k, m, parity)?;
        diag.push(cgp_eigenvalue(alpha, 2 * i + shift, m, k) + s * b_i);
        if i + 1 < size {
            off.push(s * a_i);
        }
    }
    TridiagSym::new(diag, off)
}

/// Eigenpairs of a fixed-size truncation, ascending in χ.
pub fn solve_truncated(
    parity: Parity,
    k: u32,
    m: u32,
    alpha: f64,
    c: f64,
    count: usize,
    size: usize,
) -> Result<Vec<CpswfEigenpair>> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    if count > size {
        return Err(Error::InvalidParameter(format!("count {count} exceeds truncation size {size}")));
    }
    let t = build_matrix(parity, k, m, alpha, c, size)?;
    let pairs = eig_tridiag_lowest(&t, count)?;
    Ok(pairs
        .into_iter()
        .enumerate()
        .map(|(big_n, p)| CpswfEigenpair {
            parity,
            big_n,
            k,
            m,
            alpha,
            c,
            chi: p.value,
            coeffs: p.vector,
            trunc: size,
        })
        .collect())
}

/// Initial truncation size for `count` pairs at bandwidth c.
pub fn initial_truncation(count: usize, c: f64) -> usize {
    let grow = (2.0 * std::f64::consts::E * c).ceil() as usize;
    (2 * count + grow + 16).max(24)
}

/// The first `count` eigenpairs of one (parity, k) family, with the
/// truncation doubled until every tail coefficient is at most `tol`.
pub fn cpswf_solve(
    parity: Parity,
    k: u32,
    m: u32,
    alpha: f64,
    c: f64,
    count: usize,
    tol: f64,
) -> Result<Vec<CpswfEigenpair>> {
    check_family(k, m, alpha, c)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let mut size = initial_truncation(count, c).min(TRUNCATION_CAP);
    loop {
        let pairs = solve_truncated(parity, k, m, alpha, c, count, size)?;
        let tail = pairs.iter().map(CpswfEigenpair::tail).fold(0.0, f64::max);
        if tail <= tol {
            return Ok(pairs);
        }
        if size >= TRUNCATION_CAP {
            return Err(Error::TruncationCapExceeded { cap: TRUNCATION_CAP, tail, tol });
        }
        size = (2 * size).min(TRUNCATION_CAP);
    }
}

/// Radial profile P (even) or Q (odd) of the eigenfunction.
pub fn cpswf_radial(pair: &CpswfEigenpair) -> RadialPoly {
    let coeffs = pair
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| a * normalized_basis_sign(pair.parity, i) * std::f64::consts::SQRT_2)
        .collect();
    RadialPoly { parity: pair.parity, k: pair.k, m: pair.m, alpha: pair.alpha, repr: RadialRepr::Orthonormal { coeffs } }
}

/// ψ at the polar point (r, θ) in the plane.
pub fn cpswf_eval_2d(pair: &CpswfEigenpair, r: f64, theta: f64) -> Result<Multivector2> {
    cpswf_evaluator(pair)?.eval(r, theta)
}

/// Reusable evaluator of ψ in the plane.
pub struct CpswfEvaluator {
    radial: RadialPoly,
    k: u32,
}

impl CpswfEvaluator {
    pub fn eval(&self, r: f64, theta: f64) -> Result<Multivector2> {
        let p = self.radial.eval(r * r);
        let y = y_k_eval(self.k, r, theta);
        Ok(match self.radial.parity {
            Parity::Even => y * p,
            Parity::Odd => mv_mul(Multivector2::polar_vector(r, theta), y) * p,
        })
    }

    pub fn radial(&self) -> &RadialPoly {
        &self.radial
    }
}

pub fn cpswf_evaluator(pair: &CpswfEigenpair) -> Result<CpswfEvaluator> {
    if pair.m != 2 {
        return Err(Error::UnsupportedDimension(pair.m));
    }
    Ok(CpswfEvaluator { radial: cpswf_radial(pair), k: pair.k })
}

/// Terms of the radial Sturm–Liouville equation for the eigenfunction's
/// profile. Odd profiles are tested against the even equation with k + 1
/// and χ − 4(α+1)(k+m/2).
pub fn sl_residual_terms(pair: &CpswfEigenpair, t: f64) -> ([f64; 4], f64) {
    let poly = cpswf_radial(pair);
    let (p, dp, d2p) = poly.eval_with_derivs(t);
    let (k, chi) = match pair.parity {
        Parity::Even => (pair.k, pair.chi),
        Parity::Odd => (pair.k + 1, pair.chi - 4.0 * (pair.alpha + 1.0) * mu(pair.k, pair.m)),
    };
    sl_radial_terms(t, p, dp, d2p, k, pair.m, pair.alpha, pair.c, chi)
}

pub fn sl_residual_even(pair: &CpswfEigenpair, t: f64) -> Result<f64> {
    if pair.parity != Parity::Even {
        return Err(Error::InvalidParameter("sl_residual_even needs an even eigenpair".into()));
    }
    Ok(sl_residual_terms(pair, t).0.iter().sum())
}

pub fn sl_residual_odd(pair: &CpswfEigenpair, t: f64) -> Result<f64> {
    if pair.parity != Parity::Odd {
        return Err(Error::InvalidParameter("sl_residual_odd needs an odd eigenpair".into()));
    }
    Ok(sl_residual_terms(pair, t).0.iter().sum())
}

/// Max |residual| over interior points t_j = j/(npts+1), relative to the
/// largest term magnitude seen on the grid.
pub fn sl_residual_max(pair: &CpswfEigenpair, npts: usize) -> f64 {
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for j in 1..=npts {
        let t = j as f64 / (npts + 1) as f64;
        let (terms, s) = sl_residual_terms(pair, t);
        worst = worst.max(terms.iter().sum::<f64>().abs());
        scale = scale.max(s);
    }
    if scale == 0.0 {
        0.0
    } else {
        worst / scale
    }
}

fn same_family(pairs: &[CpswfEigenpair]) -> Result<()> {
    if let Some(first) = pairs.first() {
        for p in pairs {
            if p.m != first.m || p.alpha != first.alpha || p.c != first.c {
                return Err(Error::InvalidParameter("Gram matrix needs pairs sharing m, alpha and c".into()));
            }
        }
    }
    Ok(())
}

/// Weighted inner products ⟨ψ_a, ψ_b⟩_α.
///
/// Entries with equal parity and k are radial integrals; all others vanish
/// identically (different angular or parity spaces) and are set to 0.
pub fn gram_matrix(pairs: &[CpswfEigenpair], npts: usize) -> Result<Vec<Vec<f64>>> {
    same_family(pairs)?;
    let n = pairs.len();
    let radials: Vec<RadialPoly> = pairs.iter().map(cpswf_radial).collect();
    let mut g = vec![vec![0.0; n]; n];
    for a in 0..n {
        for b in a..n {
            let (pa, pb) = (&pairs[a], &pairs[b]);
            if pa.parity != pb.parity || pa.k != pb.k {
                continue;
            }
            let beta = radial_weight_exponent(pa.parity, pa.k, pa.m);
            let v = 0.5 * weighted_integral_01(|t| radials[a].eval(t) * radials[b].eval(t), pa.alpha, beta, npts)?;
            g[a][b] = v;
            g[b][a] = v;
        }
    }
    Ok(g)
}

/// Weighted inner products computed by 2D polar quadrature in the plane:
/// ∫_{B(1)} [conj(ψ_a) ψ_b]_0 (1 − |x|²)^α dx.
pub fn gram_matrix_2d(pairs: &[CpswfEigenpair], n_radial: usize, n_angular: usize) -> Result<Vec<Vec<f64>>> {
    same_family(pairs)?;
    if pairs.iter().any(|p| p.m != 2) {
        return Err(Error::UnsupportedDimension(pairs.iter().map(|p| p.m).find(|&m| m != 2).unwrap_or(2)));
    }
    let n = pairs.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let alpha = pairs[0].alpha;
    // dx = r dr dθ = ½ dt dθ with t = r²
    let rule = gauss_jacobi_rule_01(n_radial, alpha, 0.0)?;
    let evals: Vec<CpswfEvaluator> = pairs.iter().map(cpswf_evaluator).collect::<Result<_>>()?;
    let dtheta = 2.0 * std::f64::consts::PI / n_angular as f64;
    let mut g = vec![vec![0.0; n]; n];
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let r = t.sqrt();
        for j in 0..n_angular {
            let theta = j as f64 * dtheta;
            let vals: Vec<Multivector2> = evals.iter().map(|e| e.eval(r, theta)).collect::<Result<_>>()?;
            for a in 0..n {
                for b in a..n {
                    g[a][b] += 0.5 * w * dtheta * vals[a].inner(vals[b]);
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..a {
            g[a][b] = g[b][a];
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgp::{cgp_radial_normalized, CgpSpec};
    use std::f64::consts::PI;

    #[test]
    fn c_zero_matrices_are_diagonal() {
        let e = build_matrix_even(1, 2, 0.5, 0.0, 6).unwrap();
        assert!(e.off.iter().all(|&x| x == 0.0));
        for (i, d) in e.diag.iter().enumerate() {
            let f = i as f64;
            assert!((d - 4.0 * f * (0.5 + 2.0 + f)).abs() < 1e-12);
        }
        let o = build_matrix_odd(0, 2, 0.0, 0.0, 3).unwrap();
        assert_eq!(o.diag[0], 4.0);
    }

    #[test]
    fn even_corner_entry() {
        let e = build_matrix_even(0, 2, 0.0, 1.0, 4).unwrap();
        assert!((e.diag[0] - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_matrix_even(0, 2, -1.0, 1.0, 4).is_err());
        assert!(build_matrix_even(0, 2, 0.0, -1.0, 4).is_err());
        assert!(build_matrix_odd(0, 2, 0.0, 1.0, 1).is_err());
        assert!(cpswf_solve(Parity::Even, 0, 2, 0.0, 1.0, 0, 1e-14).is_err());
    }

    #[test]
    fn closed_form_matches_bonnet_assembly() {
        for parity in [Parity::Even, Parity::Odd] {
            for &(m, k, alpha, c) in &[(2, 0, 0.0, 1.0), (2, 3, -0.9, 2.0), (3, 1, 2.0, 0.5), (4, 0, -0.5, 5.0)] {
                let closed = build_matrix(parity, k, m, alpha, c, 21).unwrap();
                let bonnet = build_matrix_bonnet(parity, k, m, alpha, c, 21).unwrap();
                for i in 0..21 {
                    let d = (closed.diag[i] - bonnet.diag[i]).abs();
                    assert!(d <= 1e-11 * closed.diag[i].abs().max(1.0), "{parity} i={i}");
                }
                for i in 0..20 {
                    let d = (closed.off[i] - bonnet.off[i]).abs();
                    assert!(d <= 1e-11 * closed.off[i].abs().max(1.0));
                    let (_, _, c_next) = xsq_action(i + 1, alpha, k, m, parity).unwrap();
                    let (a_i, _, _) = xsq_action(i, alpha, k, m, parity).unwrap();
                    assert!((a_i - c_next).abs() <= 1e-12 * a_i.abs());
                }
            }
        }
    }

    #[test]
    fn odd_matrix_is_shifted_even_matrix() {
        let (k, m, alpha, c) = (1, 2, 0.7, 1.3);
        let o = build_matrix_odd(k, m, alpha, c, 30).unwrap();
        let e = build_matrix_even(k + 1, m, alpha, c, 30).unwrap();
        let b = 4.0 * (alpha + 1.0) * (k as f64 + 1.0);
        for i in 0..30 {
            assert!((o.diag[i] - e.diag[i] - b).abs() <= 1e-12 * o.diag[i].abs().max(1.0));
        }
        for i in 0..29 {
            assert!((o.off[i] - e.off[i]).abs() <= 1e-12 * o.off[i].abs());
        }
    }

    #[test]
    fn c_zero_gives_cgps() {
        for parity in [Parity::Even, Parity::Odd] {
            let pairs = cpswf_solve(parity, 2, 3, 0.4, 0.0, 5, 1e-14).unwrap();
            for p in &pairs {
                let n = p.n();
                assert!((p.chi - cgp_eigenvalue(0.4, n, 3, 2)).abs() <= 1e-12 * p.chi.abs().max(1.0));
                for (i, &a) in p.coeffs.iter().enumerate() {
                    assert_eq!(a, if i == p.big_n { 1.0 } else { 0.0 });
                }
            }
        }
    }

    #[test]
    fn truncation_convergence() {
        let a = solve_truncated(Parity::Even, 0, 2, 0.0, 1.0, 1, 40).unwrap();
        let b = solve_truncated(Parity::Even, 0, 2, 0.0, 1.0, 1, 60).unwrap();
        assert!((a[0].chi - b[0].chi).abs() <= 1e-12 * a[0].chi.abs());
    }

    #[test]
    fn solve_respects_tolerance_and_ordering() {
        let pairs = cpswf_solve(Parity::Odd, 1, 2, 2.0, 5.0, 6, 1e-14).unwrap();
        for w in pairs.windows(2) {
            assert!(w[0].chi < w[1].chi);
        }
        for p in &pairs {
            assert!(p.tail() <= 1e-14);
            let norm: f64 = p.coeffs.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn radial_profile_at_c_zero_is_normalized_cgp() {
        let pairs = cpswf_solve(Parity::Odd, 0, 2, 0.5, 0.0, 3, 1e-14).unwrap();
        let cgp = cgp_radial_normalized(CgpSpec::new(5, 2, 0, 0.5).unwrap()).unwrap();
        let p = cpswf_radial(&pairs[2]);
        for &t in &[0.1, 0.5, 0.9] {
            assert!((p.eval(t) - cgp.eval(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn odd_profile_is_negated_even_profile_of_next_k() {
        let (alpha, c) = (0.5, 2.0);
        let odd = solve_truncated(Parity::Odd, 1, 2, alpha, c, 4, 60).unwrap();
        let even = solve_truncated(Parity::Even, 2, 2, alpha, c, 4, 60).unwrap();
        for (o, e) in odd.iter().zip(&even) {
            let (q, p) = (cpswf_radial(o), cpswf_radial(e));
            for j in 0..=10 {
                let t = j as f64 / 10.0;
                assert!((q.eval(t) + p.eval(t)).abs() <= 1e-10 * p.eval(t).abs().max(1.0));
            }
        }
    }

    #[test]
    fn radial_normalization_constant() {
        let pairs = cpswf_solve(Parity::Even, 0, 2, 0.0, 1.0, 3, 1e-14).unwrap();
        for p in &pairs {
            let poly = cpswf_radial(p);
            let v = weighted_integral_01(|t| poly.eval(t).powi(2), 0.0, 0.0, 80).unwrap();
            assert!((v - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sl_residuals_small() {
        for parity in [Parity::Even, Parity::Odd] {
            let pairs = solve_truncated(parity, 0, 2, 0.0, 1.0, 3, 60).unwrap();
            for p in &pairs {
                assert!(sl_residual_max(p, 9) <= 1e-8);
            }
            let wrong = if parity == Parity::Even { sl_residual_odd(&pairs[0], 0.5) } else { sl_residual_even(&pairs[0], 0.5) };
            assert!(wrong.is_err());
        }
    }

    #[test]
    fn gram_identity_and_cross_parity_zero() {
        let mut pairs = cpswf_solve(Parity::Even, 0, 2, 0.0, 1.0, 3, 1e-14).unwrap();
        pairs.extend(cpswf_solve(Parity::Odd, 0, 2, 0.0, 1.0, 2, 1e-14).unwrap());
        let g = gram_matrix(&pairs, 80).unwrap();
        let g2 = gram_matrix_2d(&pairs, 60, 64).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((g[a][b] - want).abs() <= 1e-9);
                assert!((g2[a][b] - want).abs() <= 1e-9, "2d {a} {b}: {}", g2[a][b]);
            }
        }
        let single = gram_matrix(&pairs[..1], 40).unwrap();
        assert_eq!(single.len(), 1);
        assert!((single[0][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let p = cpswf_solve(Parity::Odd, 1, 2, 0.3, 1.5, 2, 1e-14).unwrap().remove(1);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"N\":1") && s.contains("\"parity\":\"odd\""));
        let back: CpswfEigenpair = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
