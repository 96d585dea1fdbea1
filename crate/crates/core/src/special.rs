//! Gamma-function helpers shared by every module that needs CGP constants.

/// Natural log of |Γ(x)|.
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

#[inline]
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

/// ln B(a, b) for a, b > 0.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

pub fn beta(a: f64, b: f64) -> f64 {
    ln_beta(a, b).exp()
}

/// Rising factorial (x)_j = x (x+1) ... (x+j-1), with (x)_0 = 1.
pub fn pochhammer(x: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// ln |(x)_j| computed through log-gamma; valid when x > 0.
pub fn ln_pochhammer(x: f64, j: usize) -> f64 {
    ln_gamma(x + j as f64) - ln_gamma(x)
}
