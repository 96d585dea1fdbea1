//! Symmetric tridiagonal matrices and their eigendecomposition.
//!
//! Eigenvalues come from Sturm-sequence bisection, eigenvectors from inverse
//! iteration. The matrix is first split into unreduced blocks at zero
//! off-diagonals, so a diagonal input yields exact unit eigenvectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagSym {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// One eigenvalue with its unit eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

impl TridiagSym {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(off.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("tridiagonal entries must be finite".into()));
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Entry (i, j); zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if i + 1 == j {
            self.off[i]
        } else if j + 1 == i {
            self.off[j]
        } else {
            0.0
        }
    }

    /// Max absolute row sum (the ∞-norm, equal to the 1-norm here).
    pub fn norm_inf(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.off[i - 1].abs();
                }
                if i < self.off.len() {
                    s += self.off[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Leading principal submatrix of the given size.
    pub fn truncate(&self, size: usize) -> Self {
        let size = size.min(self.len()).max(1);
        Self { diag: self.diag[..size].to_vec(), off: self.off[..size - 1].to_vec() }
    }

    /// ‖Tv − λv‖₂.
    pub fn residual(&self, value: f64, vector: &[f64]) -> f64 {
        self.matvec(vector)
            .iter()
            .zip(vector)
            .map(|(tv, v)| (tv - value * v).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Ranges [start, end) of the unreduced diagonal blocks.
    fn blocks(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        let mut start = 0;
        for i in 0..n - 1 {
            let e = self.off[i].abs();
            let scale = self.diag[i].abs() + self.diag[i + 1].abs();
            if e == 0.0 || e <= f64::EPSILON * 0.5 * scale {
                out.push((start, i + 1));
                start = i + 1;
            }
        }
        out.push((start, n));
        out
    }
}

struct Block<'a> {
    diag: &'a [f64],
    /// off[i] couples rows i and i+1 of the block
    off: &'a [f64],
}

impl Block<'_> {
    fn len(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below x.
    fn sturm_count(&self, x: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE / f64::EPSILON;
        let mut count = 0;
        let mut d = self.diag[0] - x;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.len() {
            let e = self.off[i - 1];
            d = (self.diag[i] - x) - e * e / d;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        let pad = f64::EPSILON * (lo.abs().max(hi.abs())) * 4.0 + f64::MIN_POSITIVE;
        (lo - pad, hi + pad)
    }

    /// The j-th smallest eigenvalue (0-based) by bisection.
    fn eigenvalue(&self, j: usize, bounds: (f64, f64)) -> f64 {
        let (mut lo, mut hi) = bounds;
        for _ in 0..2200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// Solve (T − λI)x = b by Gaussian elimination with partial pivoting.
    fn shifted_solve(&self, lambda: f64, b: &[f64], tiny: f64) -> Vec<f64> {
        let n = self.len();
        if n == 1 {
            let p = self.diag[0] - lambda;
            let p = if p.abs() < tiny { tiny } else { p };
            return vec![b[0] / p];
        }
        // U has up to two superdiagonals after pivoting.
        let mut u0 = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut rhs = b.to_vec();

        let mut cur_d = self.diag[0] - lambda;
        let mut cur_u = self.off[0];
        let mut cur_u2 = 0.0;
        for i in 0..n - 1 {
            let sub = self.off[i];
            let next_d = self.diag[i + 1] - lambda;
            let next_u = if i + 1 < n - 1 { self.off[i + 1] } else { 0.0 };
            if sub.abs() > cur_d.abs() {
                // swap rows i and i+1
                u0[i] = sub;
                u1[i] = next_d;
                u2[i] = next_u;
                let l = cur_d / sub;
                rhs.swap(i, i + 1);
                cur_d = cur_u - l * next_d;
                cur_u = cur_u2 - l * next_u;
                cur_u2 = 0.0;
                rhs[i + 1] -= l * rhs[i];
            } else {
                let piv = if cur_d.abs() < tiny { tiny.copysign(if cur_d == 0.0 { 1.0 } else { cur_d }) } else { cur_d };
                u0[i] = piv;
                u1[i] = cur_u;
                u2[i] = cur_u2;
                let l = sub / piv;
                cur_d = next_d - l * cur_u;
                cur_u = next_u - l * cur_u2;
                cur_u2 = 0.0;
                rhs[i + 1] -= l * rhs[i];
            }
        }
        u0[n - 1] = if cur_d.abs() < tiny { tiny } else { cur_d };

        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = rhs[i];
            if i + 1 < n {
                s -= u1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= u2[i] * x[i + 2];
            }
            x[i] = s / u0[i];
        }
        x
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Flip the sign so the first component that is not numerical noise is positive.
pub fn fix_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-10 * max) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn block_pairs(block: &Block, count: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    let n = block.len();
    let count = count.min(n);
    if n == 1 {
        return Ok(vec![(block.diag[0], vec![1.0])]);
    }
    let bounds = block.gershgorin();
    let values: Vec<f64> = (0..count).map(|j| block.eigenvalue(j, bounds)).collect();
    let norm = block.norm().max(f64::MIN_POSITIVE);
    let tiny = f64::EPSILON * norm;
    let cluster_gap = 1e-3 * norm;
    let accept = 1e-10 * norm;

    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(count);
    for (j, &lambda) in values.iter().enumerate() {
        let mut cluster_start = j;
        while cluster_start > 0 && (values[cluster_start - 1] - values[cluster_start]).abs() < cluster_gap {
            cluster_start -= 1;
        }
        // deterministic, non-degenerate start vector
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * (((i * 7 + j * 13) % 17) as f64) / 17.0).collect();
        normalize(&mut v);
        let mut converged = false;
        for _ in 0..8 {
            let mut x = block.shifted_solve(lambda, &v, tiny);
            for prev in &vectors[cluster_start..j] {
                let dot: f64 = x.iter().zip(prev).map(|(a, b)| a * b).sum();
                x.iter_mut().zip(prev).for_each(|(a, b)| *a -= dot * b);
            }
            if normalize(&mut x) == 0.0 {
                return Err(Error::NonConvergence("inverse iteration produced a zero vector".into()));
            }
            v = x;
            let r = residual_block(block, lambda, &v);
            if r <= f64::EPSILON * norm * (n as f64).sqrt() {
                converged = true;
                break;
            }
            converged = r <= accept;
        }
        if !converged {
            return Err(Error::NonConvergence(format!(
                "inverse iteration for eigenvalue {lambda:e} did not reach the residual bound"
            )));
        }
        vectors.push(v);
    }
    Ok(values.into_iter().zip(vectors).collect())
}

fn residual_block(block: &Block, lambda: f64, v: &[f64]) -> f64 {
    let n = block.len();
    let mut s = 0.0;
    for i in 0..n {
        let mut tv = (block.diag[i] - lambda) * v[i];
        if i > 0 {
            tv += block.off[i - 1] * v[i - 1];
        }
        if i + 1 < n {
            tv += block.off[i] * v[i + 1];
        }
        s += tv * tv;
    }
    s.sqrt()
}

/// The `count` smallest eigenpairs, ascending, with unit eigenvectors whose
/// first significant component is positive.
pub fn eig_tridiag_lowest(t: &TridiagSym, count: usize) -> Result<Vec<EigenPair>> {
    let n = t.len();
    let mut all = Vec::new();
    for (start, end) in t.blocks() {
        let block = Block { diag: &t.diag[start..end], off: &t.off[start..end.saturating_sub(1).max(start)] };
        for (value, local) in block_pairs(&block, count)? {
            let mut vector = vec![0.0; n];
            vector[start..end].copy_from_slice(&local);
            all.push(EigenPair { value, vector });
        }
    }
    // stable sort keeps block order for exact ties
    all.sort_by(|a, b| a.value.total_cmp(&b.value));
    all.truncate(count.min(n));
    for p in &mut all {
        fix_sign(&mut p.vector);
    }
    Ok(all)
}

/// Full spectral decomposition, ascending.
pub fn eig_tridiag(t: &TridiagSym) -> Result<Vec<EigenPair>> {
    eig_tridiag_lowest(t, t.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(diag: &[f64], off: &[f64]) -> TridiagSym {
        TridiagSym::new(diag.to_vec(), off.to_vec()).unwrap()
    }

    #[test]
    fn identity_like() {
        let e = eig_tridiag(&t(&[1.0, 1.0], &[0.0])).unwrap();
        assert_eq!(e[0].value, 1.0);
        assert_eq!(e[1].value, 1.0);
        assert_eq!(e[0].vector, vec![1.0, 0.0]);
        assert_eq!(e[1].vector, vec![0.0, 1.0]);
    }

    #[test]
    fn two_by_two() {
        let e = eig_tridiag(&t(&[2.0, 2.0], &[1.0])).unwrap();
        assert!((e[0].value - 1.0).abs() < 1e-15);
        assert!((e[1].value - 3.0).abs() < 1e-15);
        let s = 0.5f64.sqrt();
        assert!((e[1].vector[0] - s).abs() < 1e-15 && (e[1].vector[1] - s).abs() < 1e-15);
        assert!(e[0].vector[0] > 0.0 && e[0].vector[1] < 0.0);
    }

    #[test]
    fn rejects_bad_shape() {
        assert!(TridiagSym::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(TridiagSym::new(vec![], vec![]).is_err());
    }

    #[test]
    fn one_two_one_matrix_has_known_spectrum() {
        let n = 50;
        let m = t(&vec![2.0; n], &vec![-1.0; n - 1]);
        let e = eig_tridiag(&m).unwrap();
        let norm = m.norm_inf();
        for (j, p) in e.iter().enumerate() {
            let exact = 2.0 - 2.0 * (std::f64::consts::PI * (j + 1) as f64 / (n + 1) as f64).cos();
            assert!((p.value - exact).abs() < 1e-13);
            assert!(m.residual(p.value, &p.vector) <= 1e-12 * norm);
        }
        for a in 0..n {
            for b in 0..n {
                let d: f64 = e[a].vector.iter().zip(&e[b].vector).map(|(x, y)| x * y).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wilkinson_matrix_close_pairs() {
        // W21+: eigenvalues come in pairs agreeing to ~1e-14
        let diag: Vec<f64> = (0..21).map(|i| (10i32 - i).abs() as f64).collect();
        let m = t(&diag, &vec![1.0; 20]);
        let e = eig_tridiag(&m).unwrap();
        let norm = m.norm_inf();
        for p in &e {
            assert!(m.residual(p.value, &p.vector) <= 1e-12 * norm);
        }
        for a in 0..21 {
            for b in 0..a {
                let d: f64 = e[a].vector.iter().zip(&e[b].vector).map(|(x, y)| x * y).sum();
                assert!(d.abs() < 1e-10, "vectors {a} {b} overlap {d}");
            }
        }
    }

    #[test]
    fn lowest_subset_matches_full() {
        let diag: Vec<f64> = (0..30).map(|i| (i * i) as f64).collect();
        let m = t(&diag, &vec![3.0; 29]);
        let full = eig_tridiag(&m).unwrap();
        let low = eig_tridiag_lowest(&m, 4).unwrap();
        assert_eq!(low.len(), 4);
        for (a, b) in low.iter().zip(&full) {
            assert_eq!(a.value, b.value);
            assert_eq!(a.vector, b.vector);
        }
    }

    #[test]
    fn graded_matrix_small_eigenvalue_accuracy() {
        // entries spanning many orders of magnitude, as in large truncations
        let n = 400;
        let diag: Vec<f64> = (0..n).map(|i| 4.0 * (i * (i + 1)) as f64 + 10.0).collect();
        let off: Vec<f64> = (0..n - 1).map(|_| -5.0).collect();
        let big = t(&diag, &off);
        let small = big.truncate(40);
        let a = eig_tridiag_lowest(&big, 3).unwrap();
        let b = eig_tridiag_lowest(&small, 3).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x.value - y.value).abs() <= 1e-13 * x.value.abs());
        }
    }
}
