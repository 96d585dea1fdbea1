//! Plot-ready samples for the standard illustrations of CGPs and weighted
//! CPSWFs in the plane, each with its own consistency checks.

use serde::{Deserialize, Serialize};

use crate::cgp::{cgp_eval_2d, cgp_gram, cgp_ode_residual_max, cgp_radial_jacobi, ln_cgp_norm_sq, CgpSpec};
use crate::cliffalg::{Multivector2, Parity};
use crate::cpswf::{cpswf_evaluator, cpswf_solve, gram_matrix, sl_residual_max, CpswfEigenpair, DEFAULT_TOL};
use crate::error::Result;

/// Which part of the multivector-valued function is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    /// radial profile as a function of r
    Radial,
    E0,
    E1,
    E2,
    E12,
}

impl Component {
    fn pick(self, v: Multivector2) -> f64 {
        match self {
            Component::E0 => v.c0,
            Component::E1 => v.c1,
            Component::E2 => v.c2,
            Component::E12 => v.c12,
            Component::Radial => unreachable!("radial profiles are sampled separately"),
        }
    }
}

impl std::fmt::Display for Component {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Component::Radial => "radial",
            Component::E0 => "e0",
            Component::E1 => "e1",
            Component::E2 => "e2",
            Component::E12 => "e12",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cgp,
    Cpswf,
}

/// One plotted curve or surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureCurve {
    pub figure: u8,
    pub family: Family,
    pub n: usize,
    pub k: u32,
    pub alpha: f64,
    /// bandwidth, CPSWFs only
    pub c: Option<f64>,
    pub component: Component,
}

impl FigureCurve {
    pub fn label(&self) -> String {
        match self.family {
            Family::Cgp => format!("C_{{{},2}}^{}(Y_{}) {}", self.n, self.alpha, self.k, self.component),
            Family::Cpswf => format!(
                "psi_{{{},2,{}}}^{{{},{}}} {}",
                self.n,
                self.alpha,
                self.k,
                self.c.unwrap_or(0.0),
                self.component
            ),
        }
    }
}

fn cgp(figure: u8, n: usize, k: u32, alpha: f64, component: Component) -> FigureCurve {
    FigureCurve { figure, family: Family::Cgp, n, k, alpha, c: None, component }
}

fn psi(figure: u8, n: usize, k: u32, c: f64, alpha: f64, component: Component) -> FigureCurve {
    FigureCurve { figure, family: Family::Cpswf, n, k, alpha, c: Some(c), component }
}

/// Parameter sets of the standard illustrations, numbered 1 to 7.
pub fn figure_catalog() -> Vec<FigureCurve> {
    use Component::*;
    let mut v = Vec::new();
    for &a in &[-0.5, 0.0, 2.0] {
        v.push(cgp(1, 0, 1, a, Radial));
    }
    for &n in &[2, 4, 6] {
        v.push(cgp(1, n, 1, -0.9, E1));
    }
    v.push(cgp(2, 4, 1, -0.9, Radial));
    v.push(cgp(2, 5, 0, -0.9, Radial));
    for &a in &[-0.9, 0.0, 6.0] {
        v.push(cgp(3, 1, 1, a, Radial));
    }
    for &n in &[1, 3, 5] {
        v.push(cgp(3, n, 1, 1.0, E12));
    }
    for &a in &[-0.9, -0.8, -0.2, 2.0] {
        v.push(psi(4, 0, 1, 1.0, a, Radial));
        v.push(psi(5, 0, 1, 1.0, a, E1));
    }
    for &a in &[-0.5, 4.0] {
        v.push(psi(6, 3, 1, 1.0, a, E12));
    }
    for &a in &[-0.5, 1.5] {
        v.push(psi(6, 5, 1, 1.0, a, E0));
    }
    v.push(psi(7, 6, 2, 2.0, 1.0, E1));
    v.push(psi(7, 7, 1, 2.0, 1.0, E0));
    v
}

/// Sample point: (x, y, value). Radial curves use (r, 0, value).
pub type Sample = (f64, f64, f64);

/// Consistency checks attached to one curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FigureChecks {
    /// max |G − I| over the normalized family up to the plotted degree
    pub gram_error: f64,
    /// max relative residual of the radial differential equation
    pub ode_residual: f64,
}

impl FigureChecks {
    pub fn passes(&self) -> bool {
        self.gram_error <= 1e-9 && self.ode_residual <= 1e-8
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureData {
    pub curve: FigureCurve,
    pub samples: Vec<Sample>,
    pub checks: FigureChecks,
}

fn max_identity_error(g: &[Vec<f64>]) -> f64 {
    let mut e: f64 = 0.0;
    for (a, row) in g.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            let want = if a == b { 1.0 } else { 0.0 };
            e = e.max((v - want).abs());
        }
    }
    e
}

fn disk_grid(grid: usize) -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for i in 0..grid {
        for j in 0..grid {
            let x = -1.0 + 2.0 * i as f64 / (grid - 1) as f64;
            let y = -1.0 + 2.0 * j as f64 / (grid - 1) as f64;
            if x * x + y * y <= 1.0 {
                pts.push((x, y));
            }
        }
    }
    pts
}

fn radial_grid(grid: usize) -> Vec<f64> {
    (0..grid).map(|i| i as f64 / (grid - 1) as f64).collect()
}

fn solve_family(curve: &FigureCurve) -> Result<Vec<CpswfEigenpair>> {
    let parity = Parity::of(curve.n);
    cpswf_solve(parity, curve.k, 2, curve.alpha, curve.c.unwrap_or(0.0), curve.n / 2 + 1, DEFAULT_TOL)
}

/// Samples and checks for one curve. `grid` is the number of points per
/// axis (radial curves) or per side of the square enclosing the disk.
pub fn figure_curve_data(curve: &FigureCurve, grid: usize) -> Result<FigureData> {
    let grid = grid.max(2);
    match curve.family {
        Family::Cgp => {
            let spec = CgpSpec::new(curve.n, 2, curve.k, curve.alpha)?;
            let samples = match curve.component {
                Component::Radial => {
                    let norm = ln_cgp_norm_sq(spec.n, spec.alpha, spec.k, spec.m).exp().sqrt();
                    radial_grid(grid).into_iter().map(|r| (r, 0.0, cgp_radial_jacobi(spec, r * r) / norm)).collect()
                }
                comp => disk_grid(grid)
                    .into_iter()
                    .map(|(x, y)| Ok((x, y, comp.pick(cgp_eval_2d(spec, x.hypot(y), y.atan2(x), true)?))))
                    .collect::<Result<_>>()?,
            };
            let gram = cgp_gram(curve.n, 2, curve.k, curve.alpha, 2 * curve.n + 10)?;
            let checks = FigureChecks { gram_error: max_identity_error(&gram), ode_residual: cgp_ode_residual_max(spec, 49)? };
            Ok(FigureData { curve: curve.clone(), samples, checks })
        }
        Family::Cpswf => {
            let pairs = solve_family(curve)?;
            let pair = &pairs[curve.n / 2];
            let eval = cpswf_evaluator(pair)?;
            let samples = match curve.component {
                Component::Radial => radial_grid(grid).into_iter().map(|r| (r, 0.0, eval.radial().eval(r * r))).collect(),
                comp => disk_grid(grid)
                    .into_iter()
                    .map(|(x, y)| Ok((x, y, comp.pick(eval.eval(x.hypot(y), y.atan2(x))?))))
                    .collect::<Result<_>>()?,
            };
            let npts = 2 * pair.trunc + 10;
            let gram = gram_matrix(&pairs, npts)?;
            let ode = pairs.iter().map(|p| sl_residual_max(p, 49)).fold(0.0, f64::max);
            let checks = FigureChecks { gram_error: max_identity_error(&gram), ode_residual: ode };
            Ok(FigureData { curve: curve.clone(), samples, checks })
        }
    }
}

/// Every curve in the catalog.
pub fn figure_data(grid: usize) -> Result<Vec<FigureData>> {
    figure_catalog().iter().map(|c| figure_curve_data(c, grid)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_covers_all_figures() {
        let cat = figure_catalog();
        for f in 1..=7u8 {
            assert!(cat.iter().any(|c| c.figure == f));
        }
        assert_eq!(cat.len(), 28);
    }

    #[test]
    fn every_curve_passes_its_checks() {
        for d in figure_data(11).unwrap() {
            assert!(d.checks.passes(), "{}: {:?}", d.curve.label(), d.checks);
            assert!(!d.samples.is_empty());
            assert!(d.samples.iter().all(|s| s.2.is_finite()));
        }
    }

    #[test]
    fn even_cgp_has_no_e12_part() {
        let c = cgp(1, 2, 1, -0.9, Component::E12);
        let d = figure_curve_data(&c, 9).unwrap();
        assert!(d.samples.iter().all(|s| s.2 == 0.0));
    }
}
