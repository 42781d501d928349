//! Truncated two-mode number basis for spectra.
//!
//! Quadratic mode operators are formed in a basis two states larger and then
//! cut, so `x²` and `p²` are the exact projections rather than products of
//! truncated matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::phase::{PhaseOperator, P1, P2, X1, X2};
use crate::error::{Error, Result};
use super::ladder::build_ladder;
use crate::landau_classical::LandauParams;
use crate::linalg::{hermitian_eigenvalues, hermiticity_residual, max_norm, CMatrix};

/// Levels are merged when neighbouring eigenvalues differ by less than this times `ω`.
pub const DEGENERACY_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct FockOperator {
    pub n_max: usize,
    /// Row index `n₁(n_max + 1) + n₂`.
    pub matrix: CMatrix,
}

/// Projected single-mode operators on `n = 0..=n_max`.
#[derive(Debug, Clone)]
pub struct ModeOperators {
    pub x: CMatrix,
    pub p: CMatrix,
    pub xx: CMatrix,
    pub pp: CMatrix,
    /// `(xp + px)/2`.
    pub xp: CMatrix,
}

fn annihilation(dim: usize) -> CMatrix {
    let mut c = CMatrix::zeros(dim, dim);
    for n in 1..dim {
        c[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    c
}

pub fn mode_operators(n_max: usize) -> ModeOperators {
    let ext = n_max + 3;
    let c = annihilation(ext);
    let cd = c.adjoint();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x = (&c + &cd) * Complex64::new(s, 0.0);
    let p = (&cd - &c) * Complex64::new(0.0, s);
    let xp = (&x * &p + &p * &x) * Complex64::new(0.5, 0.0);
    let d = n_max + 1;
    let cut = |m: &CMatrix| m.view((0, 0), (d, d)).into_owned();
    ModeOperators { x: cut(&x), p: cut(&p), xx: cut(&(&x * &x)), pp: cut(&(&p * &p)), xp: cut(&xp) }
}

fn is_position(i: usize) -> bool {
    i == X1 || i == X2
}

fn mode_of(i: usize) -> usize {
    if i == X1 || i == P1 {
        0
    } else {
        1
    }
}

impl ModeOperators {
    fn linear(&self, i: usize) -> &CMatrix {
        if is_position(i) {
            &self.x
        } else {
            &self.p
        }
    }

    /// Symmetrized `z_i z_j` for two coordinates of the same mode.
    fn same_mode(&self, i: usize, j: usize) -> &CMatrix {
        match (is_position(i), is_position(j)) {
            (true, true) => &self.xx,
            (false, false) => &self.pp,
            _ => &self.xp,
        }
    }
}

fn embed(mode: usize, op: &CMatrix) -> CMatrix {
    let id = CMatrix::identity(op.nrows(), op.nrows());
    if mode == 0 {
        op.kronecker(&id)
    } else {
        id.kronecker(op)
    }
}

pub fn fock_matrix(op: &PhaseOperator, n_max: usize) -> Result<FockOperator> {
    if n_max < 8 {
        return Err(Error::InvalidArgument(format!("n_max = {n_max} is below 8")));
    }
    let m = mode_operators(n_max);
    let d = n_max + 1;
    let mut h = CMatrix::identity(d * d, d * d) * op.constant;
    for i in 0..4 {
        if op.linear[i] != Complex64::ZERO {
            h += embed(mode_of(i), m.linear(i)) * op.linear[i];
        }
    }
    for i in 0..4 {
        for j in i..4 {
            let q = op.quadratic[i][j] * if i == j { 1.0 } else { 2.0 };
            if q == Complex64::ZERO {
                continue;
            }
            let term = if mode_of(i) == mode_of(j) {
                embed(mode_of(i), m.same_mode(i, j))
            } else {
                let (a, b) = if mode_of(i) == 0 { (i, j) } else { (j, i) };
                m.linear(a).kronecker(m.linear(b))
            };
            h += term * q;
        }
    }
    Ok(FockOperator { n_max, matrix: h })
}

/// Single-mode matrix for an operator in `x₁, p₁` only.
pub fn fock_matrix_1d(op: &PhaseOperator, n_max: usize) -> Result<FockOperator> {
    let second = [X2, P2];
    if second.iter().any(|&i| op.linear[i] != Complex64::ZERO || op.quadratic[i].iter().any(|c| *c != Complex64::ZERO)) {
        return Err(Error::InvalidArgument("operator acts on the second mode".into()));
    }
    let m = mode_operators(n_max);
    let d = n_max + 1;
    let mut h = CMatrix::identity(d, d) * op.constant + &m.x * op.linear[X1] + &m.p * op.linear[P1];
    h += &m.xx * op.quadratic[X1][X1] + &m.pp * op.quadratic[P1][P1] + &m.xp * (op.quadratic[X1][P1] * 2.0);
    Ok(FockOperator { n_max, matrix: h })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub energy: f64,
    pub degeneracy: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    /// All eigenvalues, ascending.
    #[serde(skip)]
    pub eigenvalues: Vec<f64>,
    pub levels: Vec<Level>,
    /// Requested levels beyond `n ≤ n_max/3` or more than were found.
    pub truncation_warning: bool,
}

/// Groups ascending values whose neighbours lie within `tol`.
pub fn cluster(values: &[f64], tol: f64) -> Vec<Level> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for &v in values {
        match out.last_mut() {
            Some((sum, count)) if v - prev <= tol => {
                *sum += v;
                *count += 1;
            }
            _ => out.push((v, 1)),
        }
        prev = v;
    }
    out.into_iter().map(|(s, c)| Level { energy: s / c as f64, degeneracy: c }).collect()
}

pub fn eigenvalues(h: &FockOperator) -> Result<Vec<f64>> {
    let res = hermiticity_residual(&h.matrix);
    if res > 1e-12 * max_norm(&h.matrix).max(1.0) {
        return Err(Error::NotHermitian(res));
    }
    Ok(hermitian_eigenvalues(&h.matrix))
}

pub(crate) fn select(eigenvalues: Vec<f64>, n_max: usize, k: usize, tol: f64, min_degeneracy: usize) -> Spectrum {
    let levels: Vec<Level> =
        cluster(&eigenvalues, tol).into_iter().filter(|l| l.degeneracy >= min_degeneracy).take(k).collect();
    let truncation_warning = k > n_max / 3 + 1 || levels.len() < k;
    Spectrum { eigenvalues, levels, truncation_warning }
}

/// Lowest `k` levels, merging eigenvalues within `degeneracy_tol`.
pub fn spectrum(h: &FockOperator, k: usize, degeneracy_tol: f64) -> Result<Spectrum> {
    Ok(select(eigenvalues(h)?, h.n_max, k, degeneracy_tol, 1))
}

/// Lowest `k` Landau levels of `ω(a†a + ½)`.
///
/// The truncated basis does not hold Landau states exactly; the ones it does
/// resolve come in degenerate clusters while the basis edge leaves scattered
/// single eigenvalues, so singletons are dropped.
pub fn landau_spectrum(p: &LandauParams, n_max: usize, k: usize) -> Result<Spectrum> {
    let h = fock_matrix(&build_ladder(p)?.h, n_max)?;
    Ok(select(eigenvalues(&h)?, n_max, k, DEGENERACY_TOL * p.omega, 2))
}

/// `𝓟₁² − (ω²/4)𝓧₁²`, the unbounded frame Hamiltonian along the negative direction.
pub fn inverted_oscillator(omega: f64) -> PhaseOperator {
    PhaseOperator::p1().square().expect("linear") - PhaseOperator::x1().square().expect("linear") * (omega * omega / 4.0)
}

/// Real dense copy, for callers needing eigenvectors of real symmetric matrices.
pub fn real_part(m: &CMatrix) -> DMatrix<f64> {
    m.map(|c| c.re)
}
