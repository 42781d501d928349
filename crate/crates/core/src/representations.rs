//! Concrete matrix representations, each bundled with closed-form eigenvalues of `M`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, RMatrix, Tolerances};
use crate::system::{BlockMap, FieldMap, IdentityField, PairField, SystemSpec, ZeroPotential};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationKind {
    Pairwise,
    BetaModified,
    Tridiagonal,
    Uniform,
    Landau,
}

impl fmt::Display for RepresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Pairwise => "pairwise",
            Self::BetaModified => "beta_modified",
            Self::Tridiagonal => "tridiagonal",
            Self::Uniform => "uniform",
            Self::Landau => "landau",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct RepresentationBundle {
    pub label: RepresentationKind,
    pub spec: SystemSpec,
    /// Closed-form eigenvalues of `M`, descending.
    pub analytic_eigenvalues: Vec<f64>,
    /// Closed-form positivity of `M` for the bundled parameters.
    pub positive_definite: bool,
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// `I_m ⊗ σx`.
pub fn sigma_x_blocks(m: usize) -> RMatrix {
    RMatrix::identity(m, m).kronecker(&RMatrix::from_row_slice(2, 2, &[0., 1., 1., 0.]))
}

/// `I_m ⊗ σz`.
pub fn sigma_z_blocks(m: usize) -> RMatrix {
    RMatrix::identity(m, m).kronecker(&RMatrix::from_row_slice(2, 2, &[1., 0., 0., -1.]))
}

/// `(−iγ/2) I_m ⊗ σy` written as the real matrix it equals.
pub fn pairwise_gauge(m: usize, gamma: f64) -> RMatrix {
    RMatrix::identity(m, m).kronecker(&RMatrix::from_row_slice(2, 2, &[0., -gamma / 2.0, gamma / 2.0, 0.]))
}

fn check_blocks(m: usize, blocks: &[BlockMap]) -> Result<()> {
    if m == 0 {
        return Err(Error::BadShape("block count must be at least one".into()));
    }
    if blocks.len() != m {
        return Err(Error::BadShape(format!("{} block maps for {} blocks", blocks.len(), m)));
    }
    Ok(())
}

/// Checks that a general field couples only coordinates inside each pair, by
/// probing its Jacobian at a few fixed points.
pub fn check_block_local(field: &dyn FieldMap, m: usize) -> Result<()> {
    let n = 2 * m;
    for probe in 0..3 {
        let x: Vec<f64> = (0..n).map(|i| 0.37 * (probe as f64 + 1.0) * ((i as f64) * 1.3 + 0.5).sin()).collect();
        let j = field.jacobian(&x).unwrap_or_else(|| crate::system::finite_difference_jacobian(field, &x));
        for r in 0..n {
            for c in 0..n {
                if r / 2 != c / 2 && j[(r, c)].abs() > 1e-8 {
                    return Err(Error::BadShape(format!("F_{} depends on x_{}", r + 1, c + 1)));
                }
            }
        }
    }
    Ok(())
}

pub fn build_pairwise(m: usize, gamma: f64, alpha: f64, blocks: Vec<BlockMap>) -> Result<RepresentationBundle> {
    build_beta_modified(m, gamma, alpha, 1.0, 0.0, blocks).map(|mut b| {
        b.label = RepresentationKind::Pairwise;
        b
    })
}

/// Pairwise representation with a general field map, rejected unless block-local.
pub fn build_pairwise_with_field(m: usize, gamma: f64, alpha: f64, field: Arc<dyn FieldMap>) -> Result<RepresentationBundle> {
    check_block_local(field.as_ref(), m)?;
    let spec = pairwise_spec(m, gamma, alpha, 1.0, 0.0, field)?;
    let a2 = alpha * alpha;
    Ok(RepresentationBundle {
        label: RepresentationKind::Pairwise,
        spec,
        analytic_eigenvalues: sorted_desc([vec![a2 + 1.0; m], vec![a2 - 1.0; m]].concat()),
        positive_definite: a2 > 1.0,
    })
}

fn pairwise_spec(m: usize, gamma: f64, alpha: f64, beta1: f64, beta2: f64, field: Arc<dyn FieldMap>) -> Result<SystemSpec> {
    let n = 2 * m;
    let big_m = sigma_x_blocks(m) * beta1 + RMatrix::identity(n, n) * (alpha * alpha) + sigma_z_blocks(m) * beta2;
    SystemSpec::new(big_m, pairwise_gauge(m, gamma), field, Arc::new(ZeroPotential), &Tolerances::default())
}

pub fn build_beta_modified(
    m: usize,
    gamma: f64,
    alpha: f64,
    beta1: f64,
    beta2: f64,
    blocks: Vec<BlockMap>,
) -> Result<RepresentationBundle> {
    check_blocks(m, &blocks)?;
    let spec = pairwise_spec(m, gamma, alpha, beta1, beta2, Arc::new(PairField { blocks }))?;
    let a2 = alpha * alpha;
    let rad = beta1.hypot(beta2);
    Ok(RepresentationBundle {
        label: RepresentationKind::BetaModified,
        spec,
        analytic_eigenvalues: sorted_desc([vec![a2 + rad; m], vec![a2 - rad; m]].concat()),
        positive_definite: a2 > rad,
    })
}

/// Closed-form pieces of `𝓓` for the β-modified representation at a point:
/// `(D, D_O, 𝓓_A)` with `D = β₁γ χ⊗σz`, `D_O = β₂(γ/2) Q⊗(−σx)`, `𝓓_A = α²R`.
pub fn beta_modified_d_parts(gamma: f64, alpha: f64, beta1: f64, beta2: f64, q: &[f64]) -> (RMatrix, RMatrix, RMatrix) {
    let qd = linalg::diag(q);
    let d = qd.kronecker(&RMatrix::from_row_slice(2, 2, &[1., 0., 0., -1.])) * (beta1 * gamma / 2.0);
    let d_o = qd.kronecker(&RMatrix::from_row_slice(2, 2, &[0., -1., -1., 0.])) * (beta2 * gamma / 2.0);
    let r = qd.kronecker(&RMatrix::from_row_slice(2, 2, &[0., -1., 1., 0.])) * (gamma / 2.0);
    (d, d_o, r * (alpha * alpha))
}

fn check_square_antisym(n: usize, a_mat: &RMatrix) -> Result<()> {
    if n < 2 {
        return Err(Error::BadShape(format!("size {n} < 2")));
    }
    if a_mat.shape() != (n, n) {
        return Err(Error::BadShape(format!("A is {:?}, expected {n}x{n}", a_mat.shape())));
    }
    let res = linalg::antisymmetry_residual(a_mat);
    if res > 1e-10 * linalg::max_norm(a_mat) {
        return Err(Error::BadShape(format!("A not antisymmetric (residual {res:.3e})")));
    }
    Ok(())
}

/// Symmetric tridiagonal `T` with unit off-diagonals.
pub fn unit_tridiagonal(n: usize) -> RMatrix {
    RMatrix::from_fn(n, n, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 })
}

/// `M = pI + qT`.
pub fn build_tridiagonal(n: usize, p: f64, q: f64, a_mat: RMatrix) -> Result<RepresentationBundle> {
    check_square_antisym(n, &a_mat)?;
    let big_m = RMatrix::identity(n, n) * p + unit_tridiagonal(n) * q;
    let spec = SystemSpec::new(big_m, a_mat, Arc::new(IdentityField), Arc::new(ZeroPotential), &Tolerances::default())?;
    let eig = tridiagonal_eigenvalues(n, p, q);
    Ok(RepresentationBundle {
        label: RepresentationKind::Tridiagonal,
        spec,
        positive_definite: p > 2.0 * q.abs() * (PI / (n as f64 + 1.0)).cos(),
        analytic_eigenvalues: sorted_desc(eig),
    })
}

/// `λ_k = p + 2q cos(kπ/(N+1))`, `k = 1..N`.
pub fn tridiagonal_eigenvalues(n: usize, p: f64, q: f64) -> Vec<f64> {
    (1..=n).map(|k| p + 2.0 * q * (k as f64 * PI / (n as f64 + 1.0)).cos()).collect()
}

/// `Ô_ij = √(2/(N+1)) sin(ijπ/(N+1))`, columns ordered by `k = 1..N`.
pub fn tridiagonal_eigenvectors(n: usize) -> RMatrix {
    let s = (2.0 / (n as f64 + 1.0)).sqrt();
    RMatrix::from_fn(n, n, |i, j| s * (((i + 1) * (j + 1)) as f64 * PI / (n as f64 + 1.0)).sin())
}

/// `𝓓_ij = pR_ij + q(R_{i+1,j} + R_{i−1,j})`.
pub fn tridiagonal_d(p: f64, q: f64, r: &RMatrix) -> RMatrix {
    let n = r.nrows();
    RMatrix::from_fn(n, n, |i, j| {
        let up = if i + 1 < n { r[(i + 1, j)] } else { 0.0 };
        let down = if i > 0 { r[(i - 1, j)] } else { 0.0 };
        p * r[(i, j)] + q * (up + down)
    })
}

/// `M_ij = pδ_ij + q(1 − δ_ij)`.
pub fn build_uniform(n: usize, p: f64, q: f64, a_mat: RMatrix) -> Result<RepresentationBundle> {
    check_square_antisym(n, &a_mat)?;
    let big_m = RMatrix::from_fn(n, n, |i, j| if i == j { p } else { q });
    let spec = SystemSpec::new(big_m, a_mat, Arc::new(IdentityField), Arc::new(ZeroPotential), &Tolerances::default())?;
    let mut eig = vec![p - q; n - 1];
    eig.push(p + (n as f64 - 1.0) * q);
    Ok(RepresentationBundle {
        label: RepresentationKind::Uniform,
        spec,
        analytic_eigenvalues: sorted_desc(eig),
        positive_definite: p > 0.0 && -p / (n as f64 - 1.0) < q && q < p,
    })
}

/// Symmetric and antisymmetric parts of `𝓓 = MR` for the uniform representation,
/// written through the column sums `s_j = Σ_k R_kj`:
/// `𝓓_S = (q/2)(s_i + s_j)`, `𝓓_A = (p − q)R + (q/2)(s_j − s_i)`.
pub fn uniform_d_parts(p: f64, q: f64, r: &RMatrix) -> (RMatrix, RMatrix) {
    let n = r.nrows();
    let s: Vec<f64> = (0..n).map(|j| r.column(j).sum()).collect();
    let d_s = RMatrix::from_fn(n, n, |i, j| 0.5 * q * (s[i] + s[j]));
    let d_a = RMatrix::from_fn(n, n, |i, j| (p - q) * r[(i, j)] + 0.5 * q * (s[j] - s[i]));
    (d_s, d_a)
}

/// Antisymmetric nearest-neighbour gauge matrix: `A_{i,i+1} = ½`, `A_{i+1,i} = −½`.
pub fn chain_gauge(n: usize) -> RMatrix {
    RMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            0.5
        } else if i == j + 1 {
            -0.5
        } else {
            0.0
        }
    })
}

/// `M = ½[[B+C, γ],[γ, B−C]]`, `A = ½R`, `F = X`.
pub fn build_landau(b: f64, c: f64, gamma: f64) -> RepresentationBundle {
    let big_m = RMatrix::from_row_slice(2, 2, &[(b + c) / 2.0, gamma / 2.0, gamma / 2.0, (b - c) / 2.0]);
    let a_mat = landau_r() * 0.5;
    let spec = SystemSpec {
        n: 2,
        big_m,
        a_mat,
        field: Arc::new(IdentityField),
        potential: Arc::new(ZeroPotential),
    };
    let delta = c.hypot(gamma);
    RepresentationBundle {
        label: RepresentationKind::Landau,
        spec,
        analytic_eigenvalues: vec![(b + delta) / 2.0, (b - delta) / 2.0],
        positive_definite: b > delta,
    }
}

/// `R = [[0, 1], [−1, 0]]`.
pub fn landau_r() -> RMatrix {
    RMatrix::from_row_slice(2, 2, &[0., 1., -1., 0.])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{anticommutator, eig_sym, max_norm};
    use crate::system::derive_matrices;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn single_pair_constant_loss_gain() {
        let b = build_pairwise(1, 0.7, 2.0, vec![BlockMap::identity()]).unwrap();
        let d = derive_matrices(&b.spec, &[0.1, 0.2], &tol()).unwrap();
        let want = linalg::diag(&[0.7, -0.7]);
        assert!(max_norm(&(&d.d_diag - &want)) < 1e-15);
        let oracle = sigma_x_blocks(1) * &d.r_mat;
        assert!(max_norm(&(oracle - want)) < 1e-15);
    }

    #[test]
    fn pairwise_eigenvalues_and_positivity() {
        let b = build_pairwise(2, 1.0, 2f64.sqrt(), vec![BlockMap::identity(); 2]).unwrap();
        let e = eig_sym(&b.spec.big_m, 1e-10).unwrap();
        for (x, y) in e.values.iter().zip([3.0, 3.0, 1.0, 1.0]) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(b.positive_definite);
        assert!(!build_pairwise(1, 1.0, 0.5, vec![BlockMap::identity()]).unwrap().positive_definite);
    }

    #[test]
    fn pairwise_anticommutators_vanish() {
        let blocks = vec![
            BlockMap::identity(),
            BlockMap::new(|x| [x[0] * x[1], x[1].sin()], |x| [[x[1], x[0]], [0.0, x[1].cos()]]),
        ];
        let b = build_pairwise(2, 0.9, 1.3, blocks).unwrap();
        let d = derive_matrices(&b.spec, &[0.2, -0.4, 0.6, 0.8], &tol()).unwrap();
        let m = sigma_x_blocks(2);
        for (x, y) in [(&m, &d.r_mat), (&m, &d.d_diag), (&d.r_mat, &d.d_diag)] {
            assert!(max_norm(&anticommutator(x, y).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn wrong_block_count_is_bad_shape() {
        assert!(matches!(build_pairwise(2, 1.0, 1.0, vec![BlockMap::identity()]), Err(Error::BadShape(_))));
    }

    #[test]
    fn non_block_local_field_rejected() {
        let f = crate::system::FnField::new(|x| vec![x[0] + x[2], x[1], x[2], x[3]]);
        assert!(matches!(build_pairwise_with_field(2, 1.0, 2.0, Arc::new(f)), Err(Error::BadShape(_))));
        let ok = crate::system::FnField::new(|x| vec![x[0] * x[1], x[1], x[2], x[3].sin()]);
        assert!(build_pairwise_with_field(2, 1.0, 2.0, Arc::new(ok)).is_ok());
    }

    #[test]
    fn beta_modified_parts() {
        let blocks = vec![BlockMap::identity(), BlockMap::identity()];
        let b = build_beta_modified(2, 0.8, 2f64.sqrt(), 1.0, 1.0, blocks).unwrap();
        let e = eig_sym(&b.spec.big_m, 1e-10).unwrap();
        let s = 2f64.sqrt();
        for (x, y) in e.values.iter().zip([2.0 + s, 2.0 + s, 2.0 - s, 2.0 - s]) {
            assert!((x - y).abs() < 1e-12);
        }
        let d = derive_matrices(&b.spec, &[0.0; 4], &tol()).unwrap();
        let (dd, d_o, da) = beta_modified_d_parts(0.8, 2f64.sqrt(), 1.0, 1.0, &[2.0, 2.0]);
        assert!(max_norm(&(&d.d_diag - dd)) < 1e-14);
        assert!(max_norm(&(&d.d_offsym - &d_o)) < 1e-14);
        assert!(max_norm(&(&d.d_anti - da)) < 1e-14);
        assert!(d.d_offsym.diagonal().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn beta2_zero_is_scaled_pairwise() {
        let b = build_beta_modified(1, 0.5, 1.5, 0.3, 0.0, vec![BlockMap::identity()]).unwrap();
        let want = sigma_x_blocks(1) * 0.3 + RMatrix::identity(2, 2) * 2.25;
        assert!(max_norm(&(&b.spec.big_m - want)) == 0.0);
    }

    #[test]
    fn tridiagonal_examples() {
        let b = build_tridiagonal(3, 3.0, 1.0, chain_gauge(3)).unwrap();
        let s = 2f64.sqrt();
        for (x, y) in b.analytic_eigenvalues.iter().zip([3.0 + s, 3.0, 3.0 - s]) {
            assert!((x - y).abs() < 1e-14);
        }
        let d = derive_matrices(&b.spec, &[0.0; 3], &tol()).unwrap();
        assert!(max_norm(&(&d.d_mat - tridiagonal_d(3.0, 1.0, &d.r_mat))) < 1e-14);
        // diagonal entries come from neighbours only
        for i in 0..3 {
            let up = if i + 1 < 3 { d.r_mat[(i + 1, i)] } else { 0.0 };
            let down = if i > 0 { d.r_mat[(i - 1, i)] } else { 0.0 };
            assert!((d.d_mat[(i, i)] - (up + down)).abs() < 1e-14);
        }
        let flat = build_tridiagonal(3, 2.0, 0.0, chain_gauge(3)).unwrap();
        let d = derive_matrices(&flat.spec, &[0.0; 3], &tol()).unwrap();
        assert!(d.d_mat.diagonal().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn tridiagonal_eigenvectors_diagonalize() {
        let n = 6;
        let o = tridiagonal_eigenvectors(n);
        let m = RMatrix::identity(n, n) * 1.5 + unit_tridiagonal(n) * 0.4;
        let lam = tridiagonal_eigenvalues(n, 1.5, 0.4);
        let got = o.transpose() * m * &o;
        assert!(max_norm(&(got - linalg::diag(&lam))) < 1e-13);
    }

    #[test]
    fn uniform_examples() {
        let b = build_uniform(4, 2.0, 1.0, chain_gauge(4)).unwrap();
        assert_eq!(b.analytic_eigenvalues, vec![5.0, 1.0, 1.0, 1.0]);
        let r = chain_gauge(3) * 2.0;
        let (ds, da) = uniform_d_parts(1.7, 0.0, &r);
        assert!(max_norm(&ds) == 0.0 && max_norm(&(da - &r * 1.7)) < 1e-15);
    }

    #[test]
    fn uniform_parts_sum_to_product() {
        let raw = RMatrix::from_row_slice(3, 3, &[0.0, 0.3, -1.2, 0.7, 0.0, 0.4, 2.0, -0.9, 0.0]);
        let r = &raw - raw.transpose();
        let (p, q) = (1.3, -0.45);
        let m = RMatrix::from_fn(3, 3, |i, j| if i == j { p } else { q });
        let (ds, da) = uniform_d_parts(p, q, &r);
        assert!(max_norm(&(ds + da - m * &r)) < 1e-14);
    }

    #[test]
    fn landau_examples() {
        let b = build_landau(2.0, 0.0, 1.0);
        assert_eq!(b.analytic_eigenvalues, vec![1.5, 0.5]);
        assert!(b.positive_definite);
        let std = build_landau(2.0, 0.0, 0.0);
        assert!(max_norm(&(&std.spec.big_m - RMatrix::identity(2, 2))) == 0.0);
        let zero = build_landau(0.0, 0.3, 1.0);
        assert_eq!(zero.spec.big_m.trace(), 0.0);
        assert!(!zero.positive_definite);
    }

    #[test]
    fn bad_gauge_shape() {
        assert!(matches!(build_tridiagonal(3, 1.0, 1.0, chain_gauge(4)), Err(Error::BadShape(_))));
        assert!(matches!(build_uniform(3, 1.0, 1.0, RMatrix::identity(3, 3)), Err(Error::BadShape(_))));
        assert!(matches!(build_uniform(1, 1.0, 1.0, RMatrix::zeros(1, 1)), Err(Error::BadShape(_))));
    }
}
