//! Bessel functions of the first kind J_ν for real ν ≥ 0.
//!
//! Ascending power series summed in double-double. There is no asymptotic
//! branch; arguments above [`ARGUMENT_CAP`] still evaluate but lose digits
//! (roughly 27 of the ~32 carried digits cancel at x = 60).

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::special::{gamma, ln_gamma};

/// Largest argument with documented accuracy.
pub const ARGUMENT_CAP: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselOrder {
    pub nu: f64,
}

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu >= 0.0 {
            Ok(Self { nu })
        } else {
            Err(Error::InvalidParameter(format!("Bessel order must be non-negative, got {nu}")))
        }
    }
}

/// Σ_j (−x²/4)^j / (j! (ν+1)_j), so that J_ν(x) = (x/2)^ν/Γ(ν+1) · S.
fn reduced_series(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let (q, qe) = {
        let p = x * x;
        (p, x.mul_add(x, -p))
    };
    let z = -Dd { hi: q * 0.25, lo: qe * 0.25 };
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let peak = 0.5 * x;
    for j in 0..1000usize {
        let jf = j as f64;
        let den = (Dd::new(nu) + Dd::new(jf + 1.0)).mul_f64(jf + 1.0);
        term = (term * z).div(den);
        sum = sum + term;
        if jf > peak && term.hi.abs() <= 1e-18 * sum.hi.abs() {
            break;
        }
    }
    sum.to_f64()
}

/// (x/2)^ν / Γ(ν+1) without intermediate overflow.
fn leading(nu: f64, half_x: f64) -> f64 {
    let g = gamma(nu + 1.0);
    let p = half_x.powf(nu);
    if g.is_finite() && p.is_finite() && p != 0.0 {
        p / g
    } else {
        (nu * half_x.ln() - ln_gamma(nu + 1.0)).exp()
    }
}

/// J_ν(x) for ν ≥ 0, x ≥ 0.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    leading(nu, 0.5 * x) * reduced_series(nu, x)
}

/// J_ν(x), refusing arguments outside the accurate range.
pub fn bessel_j_checked(nu: f64, x: f64) -> Result<f64> {
    BesselOrder::new(nu)?;
    if !(x >= 0.0) {
        return Err(Error::InvalidParameter(format!("Bessel argument must be non-negative, got {x}")));
    }
    if x > ARGUMENT_CAP {
        return Err(Error::InvalidParameter(format!(
            "Bessel argument {x} exceeds the accurate range (cap {ARGUMENT_CAP})"
        )));
    }
    Ok(bessel_j(nu, x))
}

/// lim_{r→0} J_ν(2πr)/r^ν = π^ν / Γ(ν+1).
pub fn bessel_kernel_limit(nu: f64) -> f64 {
    leading(nu, std::f64::consts::PI)
}

/// ln(π^ν / Γ(ν+1)), usable where the limit itself under- or overflows.
pub fn ln_bessel_kernel_limit(nu: f64) -> f64 {
    nu * std::f64::consts::PI.ln() - ln_gamma(nu + 1.0)
}

/// J_ν(2πr)/r^ν divided by its value at r = 0.
pub fn bessel_kernel_ratio(nu: f64, r: f64) -> f64 {
    reduced_series(nu, 2.0 * std::f64::consts::PI * r)
}

/// J_ν(2πr)/r^ν, finite and continuous at r = 0.
pub fn bessel_kernel(nu: f64, r: f64) -> f64 {
    bessel_kernel_limit(nu) * bessel_kernel_ratio(nu, r)
}
