//! Clifford Gegenbauer polynomials C_{n,m}^α(Y_k).
//!
//! With t = |x|² and μ = k + m/2, every CGP factors as
//! C_{2N} = P_N(t) Y_k and C_{2N+1} = Q_N(t) x Y_k. This module builds the
//! radial profiles P_N and Q_N, their norms in L²_α(B(1)), the Bonnet
//! coefficients, and the three-term action of |x|² on the normalized basis.

use serde::{Deserialize, Serialize};

use crate::cliffalg::{mv_mul, y_k_eval, Multivector2, Parity};
use crate::dd::Dd;
use crate::error::{check_alpha, check_dimension, Error, Result};
use crate::jacobi::{jacobi_eval, JacobiIndex, OrthonormalJacobi01};
use crate::special::{ln_gamma, ln_pochhammer};

/// Highest CGP degree accepted.
pub const MAX_DEGREE: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CgpSpec {
    pub n: usize,
    pub m: u32,
    pub k: u32,
    pub alpha: f64,
}

impl CgpSpec {
    pub fn new(n: usize, m: u32, k: u32, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        check_dimension(m)?;
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge { degree: n, max: MAX_DEGREE });
        }
        Ok(Self { n, m, k, alpha })
    }

    /// μ = k + m/2.
    pub fn mu(&self) -> f64 {
        mu(self.k, self.m)
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.n)
    }

    /// N with n = 2N or n = 2N + 1.
    pub fn half_degree(&self) -> usize {
        self.n / 2
    }
}

pub(crate) fn mu(k: u32, m: u32) -> f64 {
    k as f64 + m as f64 / 2.0
}

/// Exponent β of t in the radial weight t^β (1 − t)^α for each parity.
pub fn radial_weight_exponent(parity: Parity, k: u32, m: u32) -> f64 {
    match parity {
        Parity::Even => mu(k, m) - 1.0,
        Parity::Odd => mu(k, m),
    }
}

/// Representation of a radial profile in the variable t = |x|².
#[derive(Debug, Clone, PartialEq)]
pub enum RadialRepr {
    /// scale · Σ_l coeffs[l] t^l, coefficients held in double-double.
    Monomial { scale: f64, coeffs: Vec<Dd> },
    /// Σ_i coeffs[i] p_i(t), with p_i orthonormal on [0, 1] for t^β (1 − t)^α.
    Orthonormal { coeffs: Vec<f64> },
}

/// Radial profile attached to (parity, k, m, α). For odd parity it is the
/// factor multiplying x Y_k.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPoly {
    pub parity: Parity,
    pub k: u32,
    pub m: u32,
    pub alpha: f64,
    pub repr: RadialRepr,
}

impl RadialPoly {
    /// Exponent of t in the weight under which profiles of this parity are orthogonal.
    pub fn norm_weight_exponent(&self) -> f64 {
        radial_weight_exponent(self.parity, self.k, self.m)
    }

    fn family(&self) -> OrthonormalJacobi01 {
        OrthonormalJacobi01 { a: self.alpha, b: self.norm_weight_exponent() }
    }

    pub fn degree(&self) -> usize {
        match &self.repr {
            RadialRepr::Monomial { coeffs, .. } => coeffs.len().saturating_sub(1),
            RadialRepr::Orthonormal { coeffs } => coeffs.len().saturating_sub(1),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_with_derivs(t).0
    }

    /// Value, first and second t-derivatives.
    pub fn eval_with_derivs(&self, t: f64) -> (f64, f64, f64) {
        match &self.repr {
            RadialRepr::Monomial { scale, coeffs } => {
                let mut p = Dd::ZERO;
                let mut dp = Dd::ZERO;
                let mut d2p = Dd::ZERO;
                for c in coeffs.iter().rev() {
                    d2p = d2p.mul_f64(t) + dp.mul_f64(2.0);
                    dp = dp.mul_f64(t) + p;
                    p = p.mul_f64(t) + *c;
                }
                (scale * p.to_f64(), scale * dp.to_f64(), scale * d2p.to_f64())
            }
            RadialRepr::Orthonormal { coeffs } => {
                let (p, dp, d2p) = self.family().eval_with_derivs(t, coeffs.len());
                let dot = |v: &[f64]| coeffs.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
                (dot(&p), dot(&dp), dot(&d2p))
            }
        }
    }

    /// Coefficients of t^l. Conditioning degrades quickly with degree for
    /// the orthonormal representation; intended for inspection and low degree.
    pub fn tcoeffs(&self) -> Vec<f64> {
        match &self.repr {
            RadialRepr::Monomial { scale, coeffs } => coeffs.iter().map(|c| scale * c.to_f64()).collect(),
            RadialRepr::Orthonormal { coeffs } => {
                let fam = self.family();
                let len = coeffs.len();
                let mut out = vec![0.0; len];
                let mut prev: Vec<f64> = vec![0.0; len];
                let mut cur: Vec<f64> = vec![0.0; len];
                cur[0] = 1.0 / fam.mass().sqrt();
                for (i, &c) in coeffs.iter().enumerate() {
                    for l in 0..len {
                        out[l] += c * cur[l];
                    }
                    if i + 1 == len {
                        break;
                    }
                    let (diag, off) = fam.coeffs(i);
                    let (_, off_next) = fam.coeffs(i + 1);
                    let mut next = vec![0.0; len];
                    for l in 0..len {
                        let shifted = if l > 0 { cur[l - 1] } else { 0.0 };
                        next[l] = (shifted - diag * cur[l] - off * prev[l]) / off_next;
                    }
                    prev = std::mem::replace(&mut cur, next);
                }
                out
            }
        }
    }
}

/// Constant and ratio data for the explicit sum of P_N (even) or Q_N (odd):
/// value = c0 Σ_l r_l t^l with r_0 = 1 and
/// r_{l+1}/r_l = −(N−l)(l+β+1+N+α)/((l+1)(l+β+1)).
fn explicit_parts(spec: &CgpSpec) -> (f64, Vec<Dd>) {
    let big_n = spec.half_degree();
    let nf = big_n as f64;
    let a = spec.alpha;
    let mu = spec.mu();
    let beta = radial_weight_exponent(spec.parity(), spec.k, spec.m);
    let c0 = match spec.parity() {
        Parity::Even => {
            // 2^{2N} Γ(α+2N+1) Γ(μ+N) / (Γ(α+N+1) Γ(μ))
            (2.0 * nf * std::f64::consts::LN_2 + ln_gamma(a + 2.0 * nf + 1.0) + ln_gamma(mu + nf)
                - ln_gamma(a + nf + 1.0)
                - ln_gamma(mu))
            .exp()
        }
        Parity::Odd => {
            // −2^{2N+1} Γ(α+2N+2) Γ(μ+N+1) / (Γ(α+N+1) Γ(μ+1))
            -((2.0 * nf + 1.0) * std::f64::consts::LN_2 + ln_gamma(a + 2.0 * nf + 2.0) + ln_gamma(mu + nf + 1.0)
                - ln_gamma(a + nf + 1.0)
                - ln_gamma(mu + 1.0))
            .exp()
        }
    };
    let mut coeffs = Vec::with_capacity(big_n + 1);
    let mut r = Dd::ONE;
    coeffs.push(r);
    for l in 0..big_n {
        let lf = l as f64;
        let num = (Dd::new(a) + Dd::new(beta) + Dd::new(lf + 1.0 + nf)).mul_f64(-(nf - lf));
        let den = (Dd::new(beta) + Dd::new(lf + 1.0)).mul_f64(lf + 1.0);
        r = (r * num).div(den);
        coeffs.push(r);
    }
    (c0, coeffs)
}

/// Radial profile of C_{n,m}^α(Y_k) from the explicit binomial sums.
pub fn cgp_radial(spec: CgpSpec) -> Result<RadialPoly> {
    let spec = CgpSpec::new(spec.n, spec.m, spec.k, spec.alpha)?;
    let (scale, coeffs) = explicit_parts(&spec);
    Ok(RadialPoly {
        parity: spec.parity(),
        k: spec.k,
        m: spec.m,
        alpha: spec.alpha,
        repr: RadialRepr::Monomial { scale, coeffs },
    })
}

/// Radial profile of the normalized CGP C̄_n = C_n/‖C_n‖_α, in the orthonormal basis.
pub fn cgp_radial_normalized(spec: CgpSpec) -> Result<RadialPoly> {
    let spec = CgpSpec::new(spec.n, spec.m, spec.k, spec.alpha)?;
    let big_n = spec.half_degree();
    let mut coeffs = vec![0.0; big_n + 1];
    coeffs[big_n] = normalized_basis_sign(spec.parity(), big_n) * std::f64::consts::SQRT_2;
    Ok(RadialPoly { parity: spec.parity(), k: spec.k, m: spec.m, alpha: spec.alpha, repr: RadialRepr::Orthonormal { coeffs } })
}

/// Sign s with C̄_{2N} radial = s √2 p_N and C̄_{2N+1} radial = s √2 p_N,
/// p_N the orthonormal polynomial with positive leading coefficient.
pub fn normalized_basis_sign(parity: Parity, big_n: usize) -> f64 {
    let s = if big_n % 2 == 0 { 1.0 } else { -1.0 };
    match parity {
        Parity::Even => s,
        Parity::Odd => -s,
    }
}

/// Radial profile value through the Jacobi representation
/// P_N(t) = (−1)^N 2^{2N} (α+N+1)_N N! P_N^(α,μ−1)(2t−1),
/// Q_N(t) = (−1)^{N+1} 2^{2N+1} (α+N+1)_{N+1} N! P_N^(α,μ)(2t−1).
pub fn cgp_radial_jacobi(spec: CgpSpec, t: f64) -> f64 {
    let big_n = spec.half_degree();
    let nf = big_n as f64;
    let a = spec.alpha;
    let beta = radial_weight_exponent(spec.parity(), spec.k, spec.m);
    let sign_n = if big_n % 2 == 0 { 1.0 } else { -1.0 };
    let (sign, ln_c) = match spec.parity() {
        Parity::Even => (sign_n, 2.0 * nf * std::f64::consts::LN_2 + ln_pochhammer(a + nf + 1.0, big_n) + ln_gamma(nf + 1.0)),
        Parity::Odd => (
            -sign_n,
            (2.0 * nf + 1.0) * std::f64::consts::LN_2 + ln_pochhammer(a + nf + 1.0, big_n + 1) + ln_gamma(nf + 1.0),
        ),
    };
    sign * ln_c.exp() * jacobi_eval(JacobiIndex { n: big_n, alpha: a, beta }, 2.0 * t - 1.0)
}

/// ln ‖C_{n,m}^α(Y_k)‖²_α.
pub fn ln_cgp_norm_sq(n: usize, alpha: f64, k: u32, m: u32) -> f64 {
    let big_n = (n / 2) as f64;
    let mu = mu(k, m);
    let a = alpha;
    let ln2 = std::f64::consts::LN_2;
    if n % 2 == 0 {
        4.0 * big_n * ln2 + 2.0 * ln_gamma(a + 2.0 * big_n + 1.0) + ln_gamma(mu + big_n) + ln_gamma(big_n + 1.0)
            - ln2
            - ln_gamma(a + big_n + 1.0)
            - ln_gamma(a + mu + big_n)
            - (a + mu + 2.0 * big_n).ln()
    } else {
        (4.0 * big_n + 2.0) * ln2 + 2.0 * ln_gamma(a + 2.0 * big_n + 2.0) + ln_gamma(mu + big_n + 1.0)
            + ln_gamma(big_n + 1.0)
            - ln2
            - ln_gamma(a + big_n + 1.0)
            - ln_gamma(a + mu + big_n + 1.0)
            - (a + mu + 2.0 * big_n + 1.0).ln()
    }
}

/// ‖C_{n,m}^α(Y_k)‖²_α from the closed form.
pub fn cgp_norm_sq(spec: CgpSpec) -> Result<f64> {
    let spec = CgpSpec::new(spec.n, spec.m, spec.k, spec.alpha)?;
    Ok(ln_cgp_norm_sq(spec.n, spec.alpha, spec.k, spec.m).exp())
}

/// C(α, n, m, k): eigenvalue of the CGP differential operator.
pub fn cgp_eigenvalue(alpha: f64, n: usize, m: u32, k: u32) -> f64 {
    let big_n = (n / 2) as f64;
    let mu = mu(k, m);
    if n % 2 == 0 {
        4.0 * big_n * (alpha + mu + big_n)
    } else {
        4.0 * (alpha + big_n + 1.0) * (mu + big_n)
    }
}

/// Bonnet coefficients: x C_{2N} = A C_{2N+1} + B C_{2N−1} (even branch),
/// x C_{2N+1} = A' C_{2N+2} + B' C_{2N} (odd branch).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BonnetCoeffs {
    pub branch: Parity,
    pub a: f64,
    pub b: f64,
}

fn nonzero(x: f64, what: &str) -> Result<f64> {
    if x.abs() < 1e-12 {
        Err(Error::DegenerateParameters(format!("{what} vanishes")))
    } else {
        Ok(x)
    }
}

fn check_params(alpha: f64, m: u32) -> Result<()> {
    check_alpha(alpha)?;
    check_dimension(m)
}

pub fn bonnet_even(big_n: usize, alpha: f64, k: u32, m: u32) -> Result<BonnetCoeffs> {
    check_params(alpha, m)?;
    let nf = big_n as f64;
    let mu = mu(k, m);
    let d1 = nonzero(alpha + 2.0 * nf + 1.0, "α+2N+1")?;
    let d2 = nonzero(alpha + mu + 2.0 * nf, "α+μ+2N")?;
    let a = -(alpha + mu + nf) / (2.0 * d1 * d2);
    let b = 2.0 * nf * (alpha + 2.0 * nf) / d2;
    Ok(BonnetCoeffs { branch: Parity::Even, a, b })
}

pub fn bonnet_odd(big_n: usize, alpha: f64, k: u32, m: u32) -> Result<BonnetCoeffs> {
    check_params(alpha, m)?;
    let nf = big_n as f64;
    let mu = mu(k, m);
    let d1 = nonzero(alpha + 2.0 * nf + 2.0, "α+2N+2")?;
    let d2 = nonzero(alpha + mu + 2.0 * nf + 1.0, "α+μ+2N+1")?;
    let a = -(alpha + nf + 1.0) / (2.0 * d1 * d2);
    let b = 2.0 * (alpha + 2.0 * nf + 1.0) * (mu + nf) / d2;
    Ok(BonnetCoeffs { branch: Parity::Odd, a, b })
}

/// Bonnet coefficients for the normalized CGPs (each scaled by a ratio of norms).
pub fn normalized_bonnet(big_n: usize, alpha: f64, k: u32, m: u32, branch: Parity) -> Result<BonnetCoeffs> {
    let ln = |n: usize| ln_cgp_norm_sq(n, alpha, k, m);
    let ratio = |num: usize, den: usize| (0.5 * (ln(num) - ln(den))).exp();
    match branch {
        Parity::Even => {
            let raw = bonnet_even(big_n, alpha, k, m)?;
            let n = 2 * big_n;
            let b = if big_n == 0 { 0.0 } else { raw.b * ratio(n - 1, n) };
            Ok(BonnetCoeffs { branch, a: raw.a * ratio(n + 1, n), b })
        }
        Parity::Odd => {
            let raw = bonnet_odd(big_n, alpha, k, m)?;
            let n = 2 * big_n + 1;
            Ok(BonnetCoeffs { branch, a: raw.a * ratio(n + 1, n), b: raw.b * ratio(n - 1, n) })
        }
    }
}

/// Coefficients (a_i, b_i, c_i) of
/// t C̄_{2i} = a_i C̄_{2i+2} + b_i C̄_{2i} + c_i C̄_{2i−2} (even), and the
/// analogous identity t C̄_{2i+1} = a_i C̄_{2i+3} + b_i C̄_{2i+1} + c_i C̄_{2i−1} (odd).
pub fn xsq_action(i: usize, alpha: f64, k: u32, m: u32, parity: Parity) -> Result<(f64, f64, f64)> {
    let e = |n: usize| normalized_bonnet(n, alpha, k, m, Parity::Even);
    let o = |n: usize| normalized_bonnet(n, alpha, k, m, Parity::Odd);
    match parity {
        Parity::Even => {
            let (ei, oi) = (e(i)?, o(i)?);
            let a = -ei.a * oi.a;
            let (b, c) = if i == 0 {
                (-(ei.a * oi.b), 0.0)
            } else {
                let op = o(i - 1)?;
                (-(ei.a * oi.b + ei.b * op.a), -ei.b * op.b)
            };
            Ok((a, b, c))
        }
        Parity::Odd => {
            let (oi, en) = (o(i)?, e(i + 1)?);
            let ei = e(i)?;
            let a = -oi.a * en.a;
            let b = -(oi.a * en.b + oi.b * ei.a);
            let c = -oi.b * ei.b;
            Ok((a, b, c))
        }
    }
}

/// The four terms of the radial Sturm–Liouville operator
/// 4t(1−t)P'' + 2[m+2k − t(2+m+2k+2α)]P' − 4π²c² t P + χ P
/// and the sum of their magnitudes.
#[allow(clippy::too_many_arguments)]
pub fn sl_radial_terms(t: f64, p: f64, dp: f64, d2p: f64, k: u32, m: u32, alpha: f64, c: f64, chi: f64) -> ([f64; 4], f64) {
    let mk = m as f64 + 2.0 * k as f64;
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let terms = [
        4.0 * t * (1.0 - t) * d2p,
        2.0 * (mk - t * (2.0 + mk + 2.0 * alpha)) * dp,
        -4.0 * pi2 * c * c * t * p,
        chi * p,
    ];
    let scale = terms.iter().map(|x| x.abs()).sum();
    (terms, scale)
}

/// Max residual of the CGP differential equation in radial form over
/// interior points t_j = j/(npts+1), relative to the largest term seen.
/// Odd profiles use the even equation with k + 1 and the shifted eigenvalue.
pub fn cgp_ode_residual_max(spec: CgpSpec, npts: usize) -> Result<f64> {
    let poly = cgp_radial(spec)?;
    let (k, chi) = match spec.parity() {
        Parity::Even => (spec.k, cgp_eigenvalue(spec.alpha, spec.n, spec.m, spec.k)),
        Parity::Odd => (
            spec.k + 1,
            cgp_eigenvalue(spec.alpha, spec.n, spec.m, spec.k) - 4.0 * (spec.alpha + 1.0) * spec.mu(),
        ),
    };
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for j in 1..=npts {
        let t = j as f64 / (npts + 1) as f64;
        let (p, dp, d2p) = poly.eval_with_derivs(t);
        let (terms, s) = sl_radial_terms(t, p, dp, d2p, k, spec.m, spec.alpha, 0.0, chi);
        worst = worst.max(terms.iter().sum::<f64>().abs());
        scale = scale.max(s);
    }
    Ok(if scale == 0.0 { 0.0 } else { worst / scale })
}

/// Gram matrix of the normalized CGPs C̄_0 … C̄_{max_n} for fixed k under
/// ⟨·,·⟩_α. Entries of different parity vanish identically and are set to 0.
pub fn cgp_gram(max_n: usize, m: u32, k: u32, alpha: f64, npts: usize) -> Result<Vec<Vec<f64>>> {
    let specs: Vec<CgpSpec> = (0..=max_n).map(|n| CgpSpec::new(n, m, k, alpha)).collect::<Result<_>>()?;
    let norms: Vec<f64> = specs.iter().map(|s| ln_cgp_norm_sq(s.n, alpha, k, m).exp().sqrt()).collect();
    let size = max_n + 1;
    let mut g = vec![vec![0.0; size]; size];
    for a in 0..size {
        for b in (a..size).step_by(2) {
            let beta = radial_weight_exponent(specs[a].parity(), k, m);
            let (sa, sb) = (specs[a], specs[b]);
            let v = 0.5
                * crate::quadrature::weighted_integral_01(
                    |t| cgp_radial_jacobi(sa, t) * cgp_radial_jacobi(sb, t),
                    alpha,
                    beta,
                    npts,
                )?
                / (norms[a] * norms[b]);
            g[a][b] = v;
            g[b][a] = v;
        }
    }
    Ok(g)
}

/// C_{n,2}^α(Y_k) at the polar point (r, θ), optionally normalized.
pub fn cgp_eval_2d(spec: CgpSpec, r: f64, theta: f64, normalized: bool) -> Result<Multivector2> {
    if spec.m != 2 {
        return Err(Error::UnsupportedDimension(spec.m));
    }
    let spec = CgpSpec::new(spec.n, spec.m, spec.k, spec.alpha)?;
    let t = r * r;
    let mut radial = cgp_radial_jacobi(spec, t);
    if normalized {
        radial /= ln_cgp_norm_sq(spec.n, spec.alpha, spec.k, spec.m).exp().sqrt();
    }
    let y = y_k_eval(spec.k, r, theta);
    Ok(match spec.parity() {
        Parity::Even => y * radial,
        Parity::Odd => mv_mul(Multivector2::polar_vector(r, theta), y) * radial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::weighted_radial_integral;
    use std::f64::consts::PI;

    fn spec(n: usize, m: u32, k: u32, alpha: f64) -> CgpSpec {
        CgpSpec::new(n, m, k, alpha).unwrap()
    }

    #[test]
    fn low_degree_examples() {
        let c0 = cgp_radial(spec(0, 3, 2, 0.4)).unwrap();
        assert_eq!(c0.tcoeffs(), vec![1.0]);
        let c1 = cgp_radial(spec(1, 2, 0, 0.0)).unwrap();
        assert!((c1.tcoeffs()[0] + 2.0).abs() < 1e-15);
        assert!((cgp_radial_jacobi(spec(1, 2, 0, 0.7), 0.3) + 2.0 * 1.7).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(CgpSpec::new(2, 2, 0, -1.0).is_err());
        assert!(CgpSpec::new(2, 1, 0, 0.0).is_err());
        assert!(matches!(CgpSpec::new(61, 2, 0, 0.0), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn explicit_matches_jacobi_representation() {
        for n in 0..=20 {
            for k in 0..=3 {
                for &alpha in &[-0.9, -0.5, 0.0, 1.0, 2.0] {
                    let s = spec(n, 2, k, alpha);
                    let poly = cgp_radial(s).unwrap();
                    let sup = (0..=50).map(|i| cgp_radial_jacobi(s, i as f64 / 50.0).abs()).fold(0.0, f64::max);
                    for i in 0..=50 {
                        let t = i as f64 / 50.0;
                        let d = (poly.eval(t) - cgp_radial_jacobi(s, t)).abs();
                        assert!(d <= 1e-12 * sup, "n={n} k={k} α={alpha} t={t}: {d:e} vs {sup:e}");
                    }
                }
            }
        }
    }

    #[test]
    fn norm_examples() {
        assert!((cgp_norm_sq(spec(0, 2, 0, 0.0)).unwrap() - 0.5).abs() < 1e-15);
        assert!((cgp_norm_sq(spec(1, 2, 0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn norms_match_quadrature() {
        for n in 0..=12 {
            for &(m, k, alpha) in &[(2, 0, 0.0), (2, 3, -0.9), (3, 1, 2.0), (5, 2, -0.5)] {
                let s = spec(n, m, k, alpha);
                let poly = cgp_radial(s).unwrap();
                let extra = if n % 2 == 1 { 1 } else { 0 };
                let q = 0.5
                    * weighted_radial_integral(|t| poly.eval(t).powi(2) * t.powi(extra), k, m, alpha, 40).unwrap();
                let closed = cgp_norm_sq(s).unwrap();
                assert!((q - closed).abs() <= 1e-10 * closed, "n={n} m={m} k={k}");
            }
        }
    }

    #[test]
    fn normalized_profiles_match_scaled_cgps() {
        for n in 0..=10 {
            let s = spec(n, 4, 1, 0.3);
            let norm = cgp_norm_sq(s).unwrap().sqrt();
            let bar = cgp_radial_normalized(s).unwrap();
            for &t in &[0.0, 0.2, 0.77, 1.0] {
                let want = cgp_radial_jacobi(s, t) / norm;
                assert!((bar.eval(t) - want).abs() <= 1e-12 * want.abs().max(1.0), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn orthonormal_tcoeffs_round_trip() {
        let s = spec(6, 2, 1, 0.5);
        let bar = cgp_radial_normalized(s).unwrap();
        let mono = bar.tcoeffs();
        let t: f64 = 0.4;
        let horner = mono.iter().rev().fold(0.0, |acc, c| acc * t + c);
        assert!((horner - bar.eval(t)).abs() < 1e-10 * bar.eval(t).abs().max(1.0));
    }

    #[test]
    fn bonnet_examples() {
        let e = bonnet_even(0, 0.0, 0, 2).unwrap();
        assert_eq!(e.b, 0.0);
        assert!((e.a + 0.5).abs() < 1e-15);
        let o = bonnet_odd(0, 0.0, 0, 2).unwrap();
        assert!((o.a + 0.125).abs() < 1e-15);
        assert!((o.b - 1.0).abs() < 1e-15);
        assert_eq!(normalized_bonnet(0, 0.3, 1, 2, Parity::Even).unwrap().b, 0.0);
    }

    #[test]
    fn bonnet_matches_profile_coefficients() {
        // P_N = A Q_N + B Q_{N−1}   and   −t Q_N = A' P_{N+1} + B' P_N
        for big_n in 0..6 {
            for &(m, k, alpha) in &[(2, 0, 0.0), (3, 2, 1.5), (2, 1, -0.5)] {
                let even = bonnet_even(big_n, alpha, k, m).unwrap();
                let odd = bonnet_odd(big_n, alpha, k, m).unwrap();
                let p = |n: usize, t: f64| cgp_radial_jacobi(spec(2 * n, m, k, alpha), t);
                let q = |n: usize, t: f64| cgp_radial_jacobi(spec(2 * n + 1, m, k, alpha), t);
                for &t in &[0.1, 0.5, 0.9] {
                    let lower = if big_n > 0 { even.b * q(big_n - 1, t) } else { 0.0 };
                    let lhs = p(big_n, t);
                    let rhs = even.a * q(big_n, t) + lower;
                    let scale = lhs.abs().max((even.a * q(big_n, t)).abs()).max(lower.abs());
                    assert!((lhs - rhs).abs() <= 1e-12 * scale, "N={big_n} t={t}");
                    let lhs = -t * q(big_n, t);
                    let rhs = odd.a * p(big_n + 1, t) + odd.b * p(big_n, t);
                    let scale = lhs.abs().max((odd.a * p(big_n + 1, t)).abs()).max((odd.b * p(big_n, t)).abs());
                    assert!((lhs - rhs).abs() <= 1e-12 * scale);
                }
            }
        }
    }

    #[test]
    fn xsq_action_reproduces_t_times_basis() {
        for parity in [Parity::Even, Parity::Odd] {
            for i in 0..=8 {
                for k in 0..=3 {
                    for &alpha in &[-0.5, 0.0, 2.0] {
                        let (a, b, c) = xsq_action(i, alpha, k, 2, parity).unwrap();
                        let n = 2 * i + if parity == Parity::Odd { 1 } else { 0 };
                        let bar = |n: usize| cgp_radial_normalized(spec(n, 2, k, alpha)).unwrap();
                        let (cur, up) = (bar(n), bar(n + 2));
                        if i == 0 && parity == Parity::Even {
                            assert_eq!(c, 0.0);
                        }
                        assert!(b > 0.0 && b < 1.0);
                        for &t in &[0.05, 0.3, 0.6, 0.95] {
                            let down = if i > 0 { c * bar(n - 2).eval(t) } else { 0.0 };
                            let lhs = t * cur.eval(t);
                            let rhs = a * up.eval(t) + b * cur.eval(t) + down;
                            assert!((lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0), "{parity} i={i} k={k} α={alpha}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cgp_ode_holds_for_even_and_shifted_odd_profiles() {
        for n in 0..=16 {
            for &(m, k, alpha) in &[(2, 0, 0.0), (2, 2, -0.9), (3, 1, 1.5)] {
                let s = spec(n, m, k, alpha);
                let poly = cgp_radial(s).unwrap();
                let (k_eff, chi) = match s.parity() {
                    Parity::Even => (k, cgp_eigenvalue(alpha, n, m, k)),
                    Parity::Odd => (k + 1, cgp_eigenvalue(alpha, n, m, k) - 4.0 * (alpha + 1.0) * s.mu()),
                };
                let rows: Vec<(f64, f64)> = (1..20)
                    .map(|i| {
                        let t = i as f64 / 20.0;
                        let (p, dp, d2p) = poly.eval_with_derivs(t);
                        let (terms, scale) = sl_radial_terms(t, p, dp, d2p, k_eff, m, alpha, 0.0, chi);
                        (terms.iter().sum(), scale)
                    })
                    .collect();
                let scale = rows.iter().map(|r| r.1).fold(0.0, f64::max);
                for (r, _) in rows {
                    assert!(r.abs() <= 1e-9 * scale, "n={n}: {r:e} / {scale:e}");
                }
            }
        }
    }

    #[test]
    fn eval_2d_examples_and_blade_structure() {
        let y0 = 1.0 / (2.0 * PI).sqrt();
        let v = cgp_eval_2d(spec(0, 2, 0, 0.3), 0.4, 1.1, false).unwrap();
        assert!(v.max_abs_diff(Multivector2::new(0.0, y0, 0.0, 0.0)) < 1e-15);
        let even = cgp_eval_2d(spec(4, 2, 2, 0.5), 0.6, 0.7, true).unwrap();
        assert!(even.c0 == 0.0 && even.c12 == 0.0);
        let odd = cgp_eval_2d(spec(3, 2, 2, 0.5), 0.6, 0.7, true).unwrap();
        assert!(odd.c1.abs() < 1e-15 && odd.c2.abs() < 1e-15);
        assert!(matches!(cgp_eval_2d(spec(1, 3, 0, 0.0), 0.5, 0.0, false), Err(Error::UnsupportedDimension(3))));
    }

    #[test]
    fn odd_cgp_is_shifted_even_cgp() {
        for big_n in 0..=6 {
            for k in 0..=3 {
                for &alpha in &[-0.5, 0.0, 1.0] {
                    for &(r, th) in &[(0.2, 0.3), (0.7, 2.0), (0.95, -1.2)] {
                        let odd = cgp_eval_2d(spec(2 * big_n + 1, 2, k, alpha), r, th, true).unwrap();
                        let even = cgp_eval_2d(spec(2 * big_n, 2, k + 1, alpha), r, th, true).unwrap();
                        let shifted = -mv_mul(Multivector2::E1, even);
                        assert!(odd.max_abs_diff(shifted) <= 1e-10 * odd.norm().max(1.0));
                    }
                }
            }
        }
    }
    #[test]
    fn normalized_gram_is_identity() {
        for &(m, k, alpha) in &[(2, 0, 0.0), (2, 2, -0.9), (5, 1, 2.0)] {
            let g = cgp_gram(12, m, k, alpha, 30).unwrap();
            for (a, row) in g.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((v - want).abs() <= 1e-10, "({a},{b}) = {v}");
                }
            }
        }
    }

    #[test]
    fn ode_residual_helper() {
        assert!(cgp_ode_residual_max(spec(7, 2, 1, -0.5), 19).unwrap() <= 1e-9);
        assert!(cgp_ode_residual_max(spec(0, 2, 1, -0.5), 19).unwrap() <= 1e-15);
    }
}
