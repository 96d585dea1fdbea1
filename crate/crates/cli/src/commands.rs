use std::fmt;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use wcpswf::cgp::{cgp_eval_2d, cgp_radial, cgp_radial_normalized, CgpSpec};
use wcpswf::cliffalg::Parity;
use wcpswf::cpswf::{cpswf_evaluator, cpswf_radial, cpswf_solve, gram_matrix, gram_matrix_2d, sl_residual_max, CpswfEigenpair};
use wcpswf::figures::{figure_catalog, figure_curve_data, Family, FigureData};
use wcpswf::transform::{apply_g, eigen_quality, DiskRule, GRoute, GridSpec};

use crate::output::{to_json, Cell, Table};
use crate::{CgpArgs, CpswfArgs, FigureArgs, Format, GramArgs, ParityArg, TransformArgs};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Numerical(s) => f.write_str(s),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<wcpswf::Error> for CliError {
    fn from(e: wcpswf::Error) -> Self {
        if e.is_usage() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn render<T: Serialize>(format: Format, table: &Table, json: &T) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Csv => table.to_csv()?,
        Format::Json => to_json(json)?,
    })
}

fn check_grid(grid: usize, min: usize) -> Result<()> {
    if grid < min {
        return Err(CliError::Usage(format!("grid must be at least {min}")));
    }
    Ok(())
}

fn parities(p: ParityArg) -> Vec<Parity> {
    match p {
        ParityArg::Even => vec![Parity::Even],
        ParityArg::Odd => vec![Parity::Odd],
        ParityArg::Both => vec![Parity::Even, Parity::Odd],
    }
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn unit_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| i as f64 / (n - 1) as f64)
}

#[derive(Serialize)]
struct CgpReport<'a> {
    n: usize,
    k: u32,
    m: u32,
    alpha: f64,
    normalized: bool,
    #[serde(flatten)]
    table: &'a Table,
}

pub fn cgp(a: &CgpArgs) -> Result<()> {
    let c = &a.common;
    let spec = CgpSpec::new(a.n, c.m, c.k, c.alpha)?;
    check_grid(a.grid, 2)?;
    let table = if a.radial {
        let poly = if a.normalized { cgp_radial_normalized(spec)? } else { cgp_radial(spec)? };
        let mut t = Table::new(&["t", "value"]);
        for x in unit_grid(a.grid) {
            t.push(vec![x.into(), poly.eval(x).into()]);
        }
        t
    } else {
        if c.m != 2 {
            return Err(CliError::Usage(format!("planar output requires m = 2, got m = {}; use --radial", c.m)));
        }
        let mut t = Table::new(&["r", "theta", "blade_e0", "blade_e1", "blade_e2", "blade_e12"]);
        for r in unit_grid(a.grid) {
            for j in 0..a.grid {
                let th = 2.0 * std::f64::consts::PI * j as f64 / a.grid as f64;
                let v = cgp_eval_2d(spec, r, th, a.normalized)?;
                t.push(vec![r.into(), th.into(), v.c0.into(), v.c1.into(), v.c2.into(), v.c12.into()]);
            }
        }
        t
    };
    let report = CgpReport { n: a.n, k: c.k, m: c.m, alpha: c.alpha, normalized: a.normalized, table: &table };
    emit(c.out.as_deref(), &render(c.format.unwrap_or(Format::Csv), &table, &report)?)
}

fn solve(parity: Parity, k: u32, m: u32, alpha: f64, c: f64, count: usize, tol: f64) -> Result<Vec<CpswfEigenpair>> {
    if count == 0 {
        return Err(CliError::Usage("count must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(CliError::Usage("tol must be positive".into()));
    }
    Ok(cpswf_solve(parity, k, m, alpha, c, count, tol)?)
}

#[derive(Serialize)]
struct Verification {
    max_offdiag: f64,
    max_diag_deviation: f64,
    max_sl_residual: f64,
}

#[derive(Serialize)]
struct CpswfReport {
    pairs: Vec<CpswfEigenpair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Verification>,
}

fn gram_summary(g: &[Vec<f64>]) -> (f64, f64) {
    let mut off: f64 = 0.0;
    let mut diag: f64 = 0.0;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j {
                diag = diag.max((v - 1.0).abs());
            } else {
                off = off.max(v.abs());
            }
        }
    }
    (off, diag)
}

pub fn cpswf(a: &CpswfArgs) -> Result<()> {
    let c = &a.common;
    check_grid(a.grid, 2)?;
    let count = a.n.map_or(a.count, |n| a.count.max(n + 1));
    let mut pairs = Vec::new();
    let mut verification = Verification { max_offdiag: 0.0, max_diag_deviation: 0.0, max_sl_residual: 0.0 };
    for parity in parities(a.parity) {
        let family = solve(parity, c.k, c.m, c.alpha, a.c, count, a.tol)?;
        if a.verify {
            let npts = 2 * family.iter().map(|p| p.trunc).max().unwrap_or(0) + 10;
            let (off, diag) = gram_summary(&gram_matrix(&family, npts)?);
            let v = &mut verification;
            v.max_offdiag = v.max_offdiag.max(off);
            v.max_diag_deviation = v.max_diag_deviation.max(diag);
            v.max_sl_residual = family.iter().map(|p| sl_residual_max(p, 49)).fold(v.max_sl_residual, f64::max);
        }
        pairs.extend(family.into_iter().filter(|p| a.n.is_none_or(|n| p.big_n == n)));
    }
    let verification = a.verify.then_some(verification);
    let format = c.format.unwrap_or(Format::Json);
    if format == Format::Csv {
        if let Some(v) = &verification {
            eprintln!(
                "max |off-diagonal| {:.3e}, max |diagonal - 1| {:.3e}, max SL residual {:.3e}",
                v.max_offdiag, v.max_diag_deviation, v.max_sl_residual
            );
        }
    }
    let mut table = Table::new(&["parity", "N", "chi", "t", "value"]);
    for p in &pairs {
        let prof = cpswf_radial(p);
        for t in unit_grid(a.grid) {
            table.push(vec![parity_name(p.parity).into(), p.big_n.into(), p.chi.into(), t.into(), prof.eval(t).into()]);
        }
    }
    let report = CpswfReport { pairs, verification };
    emit(c.out.as_deref(), &render(format, &table, &report)?)
}

#[derive(Serialize)]
struct GramReport {
    route: &'static str,
    labels: Vec<String>,
    matrix: Vec<Vec<f64>>,
    max_offdiag: f64,
    max_diag_deviation: f64,
}

pub fn gram(a: &GramArgs) -> Result<()> {
    let c = &a.common;
    check_grid(a.grid, 8)?;
    let mut pairs = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        pairs.extend(solve(parity, c.k, c.m, c.alpha, a.c, a.count, a.tol)?);
    }
    let npts = 2 * pairs.iter().map(|p| p.trunc).max().unwrap_or(0) + 10;
    let planar = c.m == 2 && !a.radial;
    let matrix = if planar { gram_matrix_2d(&pairs, npts, a.grid)? } else { gram_matrix(&pairs, npts)? };
    let labels: Vec<String> = pairs.iter().map(|p| format!("{}{}", &parity_name(p.parity)[..1], p.big_n)).collect();
    let (off, diag) = gram_summary(&matrix);
    let mut table = Table::new(&["row", "col", "value"]);
    for (i, row) in matrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            table.push(vec![labels[i].clone().into(), labels[j].clone().into(), (*v).into()]);
        }
    }
    let report = GramReport {
        route: if planar { "planar" } else { "radial" },
        labels,
        matrix,
        max_offdiag: off,
        max_diag_deviation: diag,
    };
    emit(c.out.as_deref(), &render(c.format.unwrap_or(Format::Json), &table, &report)?)
}

#[derive(Serialize)]
struct MuEstimate {
    re: f64,
    im: f64,
    modulus: f64,
}

#[derive(Serialize)]
struct TransformReport {
    #[serde(rename = "N")]
    big_n: usize,
    parity: Parity,
    k: u32,
    alpha: f64,
    c: f64,
    mu_estimate: MuEstimate,
    residual_rel: f64,
    /// ∫_B |Gψ|² / ∫_B |ψ|² on the fitting grid
    energy_ratio: f64,
    grid: GridSpec,
}

fn energy_ratio(pair: &CpswfEigenpair, c: f64, grid: GridSpec) -> Result<f64> {
    let rule = DiskRule::new(pair.alpha, grid.n_radial, grid.n_angular)?;
    let pts = rule.points();
    let xy: Vec<[f64; 2]> = pts.iter().map(|&(r, th, _)| [r * th.cos(), r * th.sin()]).collect();
    let g = apply_g(pair, c, &xy, GRoute::Closed)?;
    let eval = cpswf_evaluator(pair)?;
    let (mut num, mut den) = (0.0, 0.0);
    for (&(r, th, w), gv) in pts.iter().zip(&g) {
        num += w * (gv.re.norm_sq() + gv.im.norm_sq());
        den += w * eval.eval(r, th)?.norm_sq();
    }
    Ok(num / den)
}

pub fn transform_check(a: &TransformArgs) -> Result<()> {
    let c = &a.common;
    let parity = match a.parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
        ParityArg::Both => return Err(CliError::Usage("transform-check needs a single parity".into())),
    };
    if c.m != 2 {
        return Err(wcpswf::Error::UnsupportedDimension(c.m).into());
    }
    check_grid(a.grid, 2)?;
    check_grid(a.angular, 2)?;
    let pairs = solve(parity, c.k, c.m, c.alpha, a.c, a.n + 1, a.tol)?;
    let pair = &pairs[a.n];
    let grid = GridSpec { n_radial: a.grid, n_angular: a.angular };
    let q = eigen_quality(pair, a.c, grid)?;
    let report = TransformReport {
        big_n: a.n,
        parity,
        k: c.k,
        alpha: c.alpha,
        c: a.c,
        mu_estimate: MuEstimate { re: q.mu_re, im: q.mu_im, modulus: q.mu_modulus },
        residual_rel: q.residual_rel,
        energy_ratio: energy_ratio(pair, a.c, grid)?,
        grid,
    };
    let mut table = Table::new(&[
        "N", "parity", "k", "alpha", "c", "mu_re", "mu_im", "mu_modulus", "residual_rel", "energy_ratio", "n_radial", "n_angular",
    ]);
    table.push(vec![
        a.n.into(),
        parity_name(parity).into(),
        c.k.into(),
        c.alpha.into(),
        a.c.into(),
        q.mu_re.into(),
        q.mu_im.into(),
        q.mu_modulus.into(),
        q.residual_rel.into(),
        report.energy_ratio.into(),
        grid.n_radial.into(),
        grid.n_angular.into(),
    ]);
    emit(c.out.as_deref(), &render(c.format.unwrap_or(Format::Json), &table, &report)?)
}

pub fn figure_data(a: &FigureArgs) -> Result<()> {
    check_grid(a.grid, 2)?;
    if let Some(f) = a.figure {
        if !(1..=7).contains(&f) {
            return Err(CliError::Usage("figure must be between 1 and 7".into()));
        }
    }
    let data: Vec<FigureData> = figure_catalog()
        .iter()
        .filter(|c| a.figure.is_none_or(|f| c.figure == f))
        .map(|c| figure_curve_data(c, a.grid))
        .collect::<wcpswf::Result<_>>()?;
    let mut table = Table::new(&["figure", "family", "n", "k", "alpha", "c", "component", "x", "y", "value"]);
    for d in &data {
        let cv = &d.curve;
        let family = match cv.family {
            Family::Cgp => "cgp",
            Family::Cpswf => "cpswf",
        };
        let bandwidth: Cell = cv.c.map_or(Cell::Text(String::new()), Cell::Float);
        for &(x, y, v) in &d.samples {
            table.push(vec![
                u32::from(cv.figure).into(),
                family.into(),
                cv.n.into(),
                cv.k.into(),
                cv.alpha.into(),
                bandwidth.clone(),
                cv.component.to_string().into(),
                x.into(),
                y.into(),
                v.into(),
            ]);
        }
    }
    emit(a.out.as_deref(), &render(a.format.unwrap_or(Format::Csv), &table, &data)?)?;
    let failing: Vec<String> = data.iter().filter(|d| !d.checks.passes()).map(|d| d.curve.label()).collect();
    if !failing.is_empty() {
        return Err(CliError::Numerical(format!("consistency checks failed for: {}", failing.join(", "))));
    }
    Ok(())
}
