//! Dense real/complex matrix helpers on top of `nalgebra`.

use nalgebra::{ComplexField, DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type RMatrix = DMatrix<f64>;
pub type CMatrix = DMatrix<Complex64>;

/// Relative tolerances used by the structural predicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub sym: f64,
    pub orth: f64,
    pub alg: f64,
    pub det: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::uniform(1e-10)
    }
}

impl Tolerances {
    pub fn uniform(tol: f64) -> Self {
        Self { sym: tol, orth: tol, alg: tol, det: tol }
    }
}

pub fn max_norm<T: ComplexField<RealField = f64>>(m: &DMatrix<T>) -> f64 {
    m.iter().map(|z| z.clone().modulus()).fold(0.0, f64::max)
}

pub fn symmetry_residual(m: &RMatrix) -> f64 {
    max_norm(&(m.transpose() - m))
}

pub fn antisymmetry_residual(m: &RMatrix) -> f64 {
    max_norm(&(m.transpose() + m))
}

pub fn is_symmetric(m: &RMatrix, tol: f64) -> bool {
    m.is_square() && symmetry_residual(m) <= tol * max_norm(m)
}

pub fn is_antisymmetric(m: &RMatrix, tol: f64) -> bool {
    m.is_square() && antisymmetry_residual(m) <= tol * max_norm(m)
}

pub fn hermiticity_residual(m: &CMatrix) -> f64 {
    max_norm(&(m.adjoint() - m))
}

/// `‖VᵀV − I‖_max`.
pub fn orthogonality_residual(v: &RMatrix) -> f64 {
    max_norm(&(v.transpose() * v - RMatrix::identity(v.ncols(), v.ncols())))
}

pub fn diag(values: &[f64]) -> RMatrix {
    RMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values))
}

/// Eigenpairs of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymEigen {
    /// Descending.
    pub values: Vec<f64>,
    /// Orthonormal columns, each with its first non-negligible component positive.
    pub vectors: RMatrix,
}

pub fn eig_sym(m: &RMatrix, tol_sym: f64) -> Result<SymEigen> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} is not square", m.nrows(), m.ncols())));
    }
    let res = symmetry_residual(m);
    if res > tol_sym * max_norm(m) {
        return Err(Error::NotSymmetric(res));
    }
    let n = m.nrows();
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = RMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        let mut col = eig.eigenvectors.column(i).into_owned();
        if let Some(first) = col.iter().find(|c| c.abs() > 1e-10) {
            if *first < 0.0 {
                col = -col;
            }
        }
        vectors.set_column(k, &col);
    }
    Ok(SymEigen { values, vectors })
}

/// Ascending eigenvalues of a hermitian matrix.
///
/// The sparsity graph is split into connected components first, so parity and
/// spin blocks are diagonalized separately.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.nrows();
    let mut label = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut members = vec![start];
        label[start] = id;
        let mut head = 0;
        while head < members.len() {
            let i = members[head];
            head += 1;
            for j in 0..n {
                if label[j] == usize::MAX && (m[(i, j)] != Complex64::ZERO || m[(j, i)] != Complex64::ZERO) {
                    label[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        blocks.push(members);
    }
    let mut out = Vec::with_capacity(n);
    for members in &blocks {
        let k = members.len();
        let sub = CMatrix::from_fn(k, k, |a, b| m[(members[a], members[b])]);
        let sub = (&sub + sub.adjoint()) * Complex64::new(0.5, 0.0);
        out.extend(sub.symmetric_eigenvalues().iter().copied());
    }
    out.sort_by(f64::total_cmp);
    out
}

fn check_conformable<T: nalgebra::Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<()> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", a.shape(), b.shape())));
    }
    Ok(())
}

/// `ab − ba`.
pub fn commutator<T: ComplexField>(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<DMatrix<T>> {
    check_conformable(a, b)?;
    Ok(a * b - b * a)
}

/// `ab + ba`.
pub fn anticommutator<T: ComplexField>(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<DMatrix<T>> {
    check_conformable(a, b)?;
    Ok(a * b + b * a)
}

/// Unique split into diagonal, symmetric zero-diagonal and antisymmetric parts.
#[derive(Debug, Clone)]
pub struct Parts {
    pub diag: RMatrix,
    pub offsym: RMatrix,
    pub anti: RMatrix,
}

pub fn split_parts(d: &RMatrix) -> Parts {
    let sym = (d + d.transpose()) * 0.5;
    let anti = (d - d.transpose()) * 0.5;
    let diag = RMatrix::from_diagonal(&sym.diagonal());
    let offsym = &sym - &diag;
    Parts { diag, offsym, anti }
}

pub fn is_positive_definite(m: &RMatrix, tol_sym: f64) -> Result<bool> {
    let eig = eig_sym(m, tol_sym)?;
    Ok(eig.values.iter().all(|&l| l > 0.0))
}

pub fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pauli() -> [CMatrix; 3] {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        [
            CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
            CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
            CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
        ]
    }

    #[test]
    fn diagonal_input_is_untouched() {
        let e = eig_sym(&diag(&[2.0, 1.0]), 1e-10).unwrap();
        assert_eq!(e.values, vec![2.0, 1.0]);
        assert!(max_norm(&(e.vectors - RMatrix::identity(2, 2))) < 1e-15);
    }

    #[test]
    fn landau_kinetic_matrix_eigenvalues() {
        let m = RMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5, 1.0]);
        let e = eig_sym(&m, 1e-10).unwrap();
        assert!((e.values[0] - 1.5).abs() < 1e-14 && (e.values[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn tridiagonal_eigenvalues() {
        let m = RMatrix::from_row_slice(3, 3, &[3., 1., 0., 1., 3., 1., 0., 1., 3.]);
        let e = eig_sym(&m, 1e-10).unwrap();
        let s = 2f64.sqrt();
        for (got, want) in e.values.iter().zip([3. + s, 3., 3. - s]) {
            assert!((got - want).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let m = RMatrix::from_row_slice(2, 2, &[1., 2., 0., 1.]);
        assert!(matches!(eig_sym(&m, 1e-10), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn pauli_commutator() {
        let [sx, sy, sz] = pauli();
        let c = commutator(&sx, &sy).unwrap();
        let want = sz * Complex64::new(0.0, 2.0);
        assert!(max_norm(&(c - want)) < 1e-15);
    }

    #[test]
    fn shape_mismatch() {
        let a = RMatrix::zeros(2, 2);
        let b = RMatrix::zeros(3, 3);
        assert!(matches!(commutator(&a, &b), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn split_parts_recombine() {
        let d = RMatrix::from_row_slice(3, 3, &[1., 2., 3., 4., 5., 6., 7., 8., 10.]);
        let p = split_parts(&d);
        assert!(max_norm(&(&p.diag + &p.offsym + &p.anti - &d)) < 1e-15);
        assert!(p.offsym.diagonal().iter().all(|&x| x == 0.0));
        assert!(antisymmetry_residual(&p.anti) == 0.0);
    }

    #[test]
    fn hermitian_block_split_matches_dense() {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        // two decoupled 2x2 blocks interleaved
        let m = CMatrix::from_row_slice(
            4,
            4,
            &[
                c(1., 0.), c(0., 0.), c(0., 1.), c(0., 0.),
                c(0., 0.), c(2., 0.), c(0., 0.), c(1., 0.),
                c(0., -1.), c(0., 0.), c(3., 0.), c(0., 0.),
                c(0., 0.), c(1., 0.), c(0., 0.), c(-1., 0.),
            ],
        );
        let split = hermitian_eigenvalues(&m);
        let mut dense: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        dense.sort_by(f64::total_cmp);
        for (a, b) in split.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    fn symmetric_matrix(n: usize, seed: Vec<f64>) -> RMatrix {
        let m = RMatrix::from_fn(n, n, |i, j| seed[(i * 7 + j * 3) % seed.len()] * (1.0 + (i + j) as f64 * 0.1));
        (&m + m.transpose()) * 0.5
    }

    proptest! {
        #[test]
        fn eig_sym_reconstructs(n in 1usize..24, seed in proptest::collection::vec(-5.0f64..5.0, 40)) {
            let m = symmetric_matrix(n, seed);
            let e = eig_sym(&m, 1e-10).unwrap();
            let recon = &e.vectors * diag(&e.values) * e.vectors.transpose();
            prop_assert!(max_norm(&(recon - &m)) <= 1e-12 * max_norm(&m).max(1e-300));
            prop_assert!(orthogonality_residual(&e.vectors) < 1e-12);
            prop_assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }

        #[test]
        fn commutator_antisymmetric(a in proptest::collection::vec(-3.0f64..3.0, 9),
                                    b in proptest::collection::vec(-3.0f64..3.0, 9)) {
            let a = RMatrix::from_row_slice(3, 3, &a);
            let b = RMatrix::from_row_slice(3, 3, &b);
            let ab = commutator(&a, &b).unwrap();
            let ba = commutator(&b, &a).unwrap();
            prop_assert!(max_norm(&(ab + ba)) < 1e-12);
            let x = anticommutator(&a, &b).unwrap();
            let y = anticommutator(&b, &a).unwrap();
            prop_assert!(max_norm(&(x - y)) < 1e-12);
        }
    }
}
