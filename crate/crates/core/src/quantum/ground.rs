//! Degenerate lowest-level wavefunctions on a grid.
//!
//! `φ_m = u^m exp(−|u|²/8)` with `u = ξ₁x₁ + ξ₂x₂` (which is `ξx₁ − ξ*x₂` at
//! `C = 0, γ ≥ 0`). The annihilation operator is applied with `p_j = −i∂_j`
//! by fourth-order central differences.

use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use serde::Serialize;

use super::ladder::build_ladder;
use super::phase::{P1, P2, X1, X2};
use crate::error::{Error, Result};
use crate::landau_classical::{expect_region, LandauParams, Region};

/// Square lattice over `[−half_width, half_width]²` with `n` points per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub n: usize,
    pub half_width: f64,
}

impl Grid {
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n - 1) as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }
}

/// `|u|² = xᵀGx`.
fn gram(p: &LandauParams) -> Matrix2<f64> {
    let off = (p.xi1 * p.xi2.conj()).re;
    Matrix2::new(p.xi1.norm_sqr(), off, off, p.xi2.norm_sqr())
}

/// 512² points, six decay lengths of the amplitude along the slow axis.
pub fn default_grid(p: &LandauParams) -> Grid {
    let g_min = gram(p).symmetric_eigenvalues().min();
    Grid { n: 512, half_width: 6.0 * (2.0 / g_min).sqrt() }
}

pub fn wavefunction(p: &LandauParams, m: u32, x: [f64; 2]) -> Complex64 {
    let u = p.xi1 * x[0] + p.xi2 * x[1];
    u.powu(m) * (-u.norm_sqr() / 8.0).exp()
}

/// Ratio of the short to the long axis of the density contours: `√(λ₋/λ₊)`.
pub fn predicted_axis_ratio(p: &LandauParams) -> f64 {
    let e = gram(p).symmetric_eigenvalues();
    (e.min() / e.max()).sqrt()
}

#[derive(Debug, Clone, Serialize)]
pub struct GroundStateReport {
    pub m: u32,
    pub grid: Grid,
    /// `‖aφ‖/‖φ‖` on the grid interior.
    pub residual: f64,
    /// Same on the grid with half the points.
    pub coarse_residual: f64,
    /// From the second-moment tensor of `|φ|²`.
    pub moment_axis_ratio: f64,
    /// From an ellipse fit to the ridge of maximal `|φ|²`; absent for `m = 0`.
    pub ridge_axis_ratio: Option<f64>,
    pub predicted_axis_ratio: f64,
    /// `|φ|²`, index `j·n + i` for `(x₁, x₂) = (coord(i), coord(j))`.
    #[serde(skip)]
    pub density: Vec<f64>,
}

pub fn ground_state_eval(p: &LandauParams, m: u32, grid: Grid) -> Result<GroundStateReport> {
    expect_region(p.region, Region::I)?;
    if p.c != 0.0 {
        return Err(Error::InvalidArgument("ground states are given for C = 0".into()));
    }
    if grid.n < 32 {
        return Err(Error::InvalidArgument(format!("grid of {} points per axis is too small", grid.n)));
    }
    let a = build_ladder(p)?.a;
    let (residual, values) = annihilation_residual(p, m, grid, &a.linear);
    let coarse = Grid { n: grid.n / 2, ..grid };
    let (coarse_residual, _) = annihilation_residual(p, m, coarse, &a.linear);
    // discretization-dominated: large and still falling at the fourth-order rate
    if residual > 1e-3 && coarse_residual > 8.0 * residual {
        return Err(Error::GridTooCoarse(format!("residual {residual:.3e} on {} points, {coarse_residual:.3e} on {}", grid.n, coarse.n)));
    }
    let density: Vec<f64> = values.iter().map(|v| v.norm_sqr()).collect();
    let moment_axis_ratio = moment_ratio(&density, grid);
    let ridge_axis_ratio = if m == 0 { None } else { Some(ridge_ratio(&density, grid)?) };
    Ok(GroundStateReport {
        m,
        grid,
        residual,
        coarse_residual,
        moment_axis_ratio,
        ridge_axis_ratio,
        predicted_axis_ratio: predicted_axis_ratio(p),
        density,
    })
}

fn annihilation_residual(p: &LandauParams, m: u32, grid: Grid, coef: &[Complex64; 4]) -> (f64, Vec<Complex64>) {
    let n = grid.n;
    let h = grid.spacing();
    let mut phi = vec![Complex64::ZERO; n * n];
    for j in 0..n {
        for i in 0..n {
            phi[j * n + i] = wavefunction(p, m, [grid.coord(i), grid.coord(j)]);
        }
    }
    let minus_i = Complex64::new(0.0, -1.0);
    let d = |a: usize, b: usize, c: usize, e: usize| (-phi[a] + phi[b] * 8.0 - phi[c] * 8.0 + phi[e]) / (12.0 * h);
    let (mut num, mut den) = (0.0, 0.0);
    for j in 2..n - 2 {
        for i in 2..n - 2 {
            let k = j * n + i;
            let d1 = d(k + 2, k + 1, k - 1, k - 2);
            let d2 = d(k + 2 * n, k + n, k - n, k - 2 * n);
            let x = [grid.coord(i), grid.coord(j)];
            let a_phi = (coef[X1] * x[0] + coef[X2] * x[1]) * phi[k] + (coef[P1] * d1 + coef[P2] * d2) * minus_i;
            num += a_phi.norm_sqr();
            den += phi[k].norm_sqr();
        }
    }
    ((num / den).sqrt(), phi)
}

fn moment_ratio(density: &[f64], grid: Grid) -> f64 {
    let n = grid.n;
    let mut s = Matrix2::zeros();
    let mut total = 0.0;
    for j in 0..n {
        for i in 0..n {
            let w = density[j * n + i];
            let (x, y) = (grid.coord(i), grid.coord(j));
            s += Matrix2::new(x * x, x * y, x * y, y * y) * w;
            total += w;
        }
    }
    let e = (s / total).symmetric_eigenvalues();
    (e.min() / e.max()).sqrt()
}

fn bilinear(density: &[f64], grid: Grid, x: f64, y: f64) -> f64 {
    let h = grid.spacing();
    let fx = (x + grid.half_width) / h;
    let fy = (y + grid.half_width) / h;
    let (i, j) = (fx.floor() as usize, fy.floor() as usize);
    let (tx, ty) = (fx - i as f64, fy - j as f64);
    let at = |i: usize, j: usize| density[j * grid.n + i];
    (1.0 - ty) * ((1.0 - tx) * at(i, j) + tx * at(i + 1, j)) + ty * ((1.0 - tx) * at(i, j + 1) + tx * at(i + 1, j + 1))
}

/// Maximum of `|φ|²` along rays from the origin, then a least-squares conic `Ax² + Bxy + Cy² = 1`.
fn ridge_ratio(density: &[f64], grid: Grid) -> Result<f64> {
    const RAYS: usize = 180;
    let dr = grid.spacing() / 4.0;
    let r_end = 0.95 * grid.half_width;
    let steps = (r_end / dr) as usize;
    let mut normal = Matrix3::zeros();
    let mut rhs = Vector3::zeros();
    for k in 0..RAYS {
        let (s, c) = (std::f64::consts::PI * k as f64 / RAYS as f64).sin_cos();
        let sample = |t: usize| bilinear(density, grid, c * t as f64 * dr, s * t as f64 * dr);
        let best = (1..steps).max_by(|&a, &b| sample(a).total_cmp(&sample(b))).unwrap_or(0);
        if best == 0 || best + 1 >= steps {
            return Err(Error::GridTooCoarse("density ridge reaches the grid edge".into()));
        }
        let (fm, f0, fp) = (sample(best - 1), sample(best), sample(best + 1));
        let shift = 0.5 * (fm - fp) / (fm - 2.0 * f0 + fp);
        let r = (best as f64 + shift) * dr;
        let (x, y) = (c * r, s * r);
        let row = Vector3::new(x * x, x * y, y * y);
        normal += row * row.transpose();
        rhs += row;
    }
    let q = normal.lu().solve(&rhs).ok_or_else(|| Error::GridTooCoarse("ridge fit is degenerate".into()))?;
    let e = Matrix2::new(q[0], q[1] / 2.0, q[1] / 2.0, q[2]).symmetric_eigenvalues();
    Ok((e.min() / e.max()).sqrt())
}
