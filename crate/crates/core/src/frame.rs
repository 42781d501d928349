//! Region classification and the coordinate frame in which loss-gain terms disappear.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{self, diag, eig_sym, RMatrix, Tolerances};
use crate::system::{SystemSpec, VectorField};

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RegionReport {
    /// Eigenvalues of `M`, descending.
    pub eigenvalues: Vec<f64>,
    pub signs: Vec<i8>,
    /// Number of negative eigenvalues plus one.
    pub region_index: usize,
    #[serde(skip)]
    pub eta: RMatrix,
}

impl RegionReport {
    pub fn label(&self) -> String {
        roman(self.region_index)
    }
}

pub fn roman(mut n: usize) -> String {
    const TABLE: [(usize, &str); 13] = [
        (1000, "M"), (900, "CM"), (500, "D"), (400, "CD"), (100, "C"), (90, "XC"),
        (50, "L"), (40, "XL"), (10, "X"), (9, "IX"), (5, "V"), (4, "IV"), (1, "I"),
    ];
    let mut s = String::new();
    for (v, r) in TABLE {
        while n >= v {
            s.push_str(r);
            n -= v;
        }
    }
    s
}

pub fn classify(big_m: &RMatrix, tol: &Tolerances) -> Result<RegionReport> {
    let eig = eig_sym(big_m, tol.sym)?;
    let floor = tol.det * linalg::max_norm(big_m);
    if eig.values.iter().any(|l| l.abs() < floor) || big_m.nrows() == 0 {
        return Err(Error::SingularM);
    }
    let signs: Vec<i8> = eig.values.iter().map(|&l| if l > 0.0 { 1 } else { -1 }).collect();
    let region_index = signs.iter().filter(|&&s| s < 0).count() + 1;
    let eta = diag(&signs.iter().map(|&s| s as f64).collect::<Vec<_>>());
    Ok(RegionReport { eigenvalues: eig.values, signs, region_index, eta })
}

/// `𝓧 = S⁻¹ÔᵀX`, `𝓟 = SÔᵀP` with `S = diag(√|λ|)`.
#[derive(Debug, Clone)]
pub struct CanonicalFrame {
    pub o_mat: RMatrix,
    pub s_mat: RMatrix,
    pub eta: RMatrix,
    /// `SÔᵀRÔS`.
    pub r_cal: RMatrix,
    pub eigenvalues: Vec<f64>,
    pub region_index: usize,
    /// Set when `R` depends on position, so the frame is only valid at the point it was built.
    pub pointwise: bool,
}

/// Frame from `M`'s eigenbasis; `Ô` is made a proper rotation by flipping its last column if needed.
pub fn build_frame(spec: &SystemSpec, x: &[f64], tol: &Tolerances) -> Result<CanonicalFrame> {
    let report = classify(&spec.big_m, tol)?;
    let mut o = eig_sym(&spec.big_m, tol.sym)?.vectors;
    if o.determinant() < 0.0 {
        let last = o.ncols() - 1;
        let col = -o.column(last);
        o.set_column(last, &col);
    }
    let pointwise = spec.field.constant_jacobian(spec.n).is_none();
    let mut frame = frame_from_parts(o, &report.eigenvalues, &spec.r_at(x));
    frame.pointwise = pointwise;
    Ok(frame)
}

/// Assembles a frame from a given orthogonal `Ô`, eigenvalues (matching `Ô`'s columns) and `R`.
pub fn frame_from_parts(o_mat: RMatrix, eigenvalues: &[f64], r: &RMatrix) -> CanonicalFrame {
    let s_mat = diag(&eigenvalues.iter().map(|l| l.abs().sqrt()).collect::<Vec<_>>());
    let eta = diag(&eigenvalues.iter().map(|l| l.signum()).collect::<Vec<_>>());
    let r_cal = &s_mat * o_mat.transpose() * r * &o_mat * &s_mat;
    let region_index = eigenvalues.iter().filter(|&&l| l < 0.0).count() + 1;
    CanonicalFrame { o_mat, s_mat, eta, r_cal, eigenvalues: eigenvalues.to_vec(), region_index, pointwise: false }
}

impl CanonicalFrame {
    pub fn dim(&self) -> usize {
        self.o_mat.nrows()
    }

    fn s_inv(&self) -> RMatrix {
        RMatrix::from_diagonal(&self.s_mat.diagonal().map(|s| 1.0 / s))
    }

    /// `S⁻¹Ôᵀ`, the configuration map.
    pub fn position_map(&self) -> RMatrix {
        self.s_inv() * self.o_mat.transpose()
    }

    /// `SÔᵀ`, the momentum map.
    pub fn momentum_map(&self) -> RMatrix {
        &self.s_mat * self.o_mat.transpose()
    }

    /// `ÔS`, inverse of the configuration map.
    pub fn position_inverse(&self) -> RMatrix {
        &self.o_mat * &self.s_mat
    }

    pub fn to_frame(&self, x: &[f64], p: &[f64]) -> (Vec<f64>, Vec<f64>) {
        (apply(&self.position_map(), x), apply(&self.momentum_map(), p))
    }

    pub fn from_frame(&self, xc: &[f64], pc: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let pinv = &self.o_mat * self.s_inv();
        (apply(&self.position_inverse(), xc), apply(&pinv, pc))
    }

    /// Phase-space Jacobian of the forward map, `diag(S⁻¹Ôᵀ, SÔᵀ)`.
    pub fn phase_space_jacobian(&self) -> RMatrix {
        let n = self.dim();
        let mut j = RMatrix::zeros(2 * n, 2 * n);
        j.view_mut((0, 0), (n, n)).copy_from(&self.position_map());
        j.view_mut((n, n), (n, n)).copy_from(&self.momentum_map());
        j
    }

    /// `‖S⁻¹ÔᵀMÔS⁻¹ − η‖_max`.
    pub fn metric_residual(&self, big_m: &RMatrix) -> f64 {
        let si = self.s_inv();
        linalg::max_norm(&(&si * self.o_mat.transpose() * big_m * &self.o_mat * &si - &self.eta))
    }

    /// `S⁻¹Ôᵀ𝓓ÔS`, which equals `η𝓡`.
    pub fn transform_d(&self, d: &RMatrix) -> RMatrix {
        self.s_inv() * self.o_mat.transpose() * d * &self.o_mat * &self.s_mat
    }

    pub fn eta_r(&self) -> RMatrix {
        &self.eta * &self.r_cal
    }
}

fn apply(m: &RMatrix, v: &[f64]) -> Vec<f64> {
    (m * DVector::from_column_slice(v)).iter().copied().collect()
}

/// Standard symplectic form `[[0, I], [−I, 0]]` on `ℝ²ⁿ`.
pub fn symplectic_form(n: usize) -> RMatrix {
    let mut w = RMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        w[(i, n + i)] = 1.0;
        w[(n + i, i)] = -1.0;
    }
    w
}

/// `‖JᵀΩJ − Ω‖_max`.
pub fn symplectic_residual(j: &RMatrix) -> f64 {
    let w = symplectic_form(j.nrows() / 2);
    linalg::max_norm(&(j.transpose() * &w * j - &w))
}

/// `𝓧̈ = 2η𝓡𝓧̇ − 2η ∂𝓥/∂𝓧` with `𝓥(𝓧) = V(ÔS𝓧)`.
pub struct FrameEquations {
    frame: CanonicalFrame,
    spec: SystemSpec,
    two_eta_r: RMatrix,
}

impl FrameEquations {
    pub fn new(frame: CanonicalFrame, spec: SystemSpec) -> Self {
        let two_eta_r = frame.eta_r() * 2.0;
        Self { frame, spec, two_eta_r }
    }
}

impl VectorField for FrameEquations {
    fn dim(&self) -> usize {
        2 * self.frame.dim()
    }

    fn eval(&self, _t: f64, y: &[f64], dy: &mut [f64]) {
        let n = self.frame.dim();
        let (xc, vc) = y.split_at(n);
        dy[..n].copy_from_slice(vc);
        let x = apply(&self.frame.position_inverse(), xc);
        let grad = DVector::from_vec(self.spec.potential.gradient(&x));
        let force = &self.frame.eta * self.frame.momentum_map() * grad * 2.0;
        let acc = &self.two_eta_r * DVector::from_column_slice(vc) - force;
        dy[n..].copy_from_slice(acc.as_slice());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::{build_landau, build_tridiagonal, chain_gauge};
    use crate::system::derive_matrices;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn landau_regions() {
        let tol = Tolerances::default();
        let r1 = classify(&build_landau(2.0, 0.0, 1.0).spec.big_m, &tol).unwrap();
        assert_eq!((r1.label().as_str(), r1.signs.clone()), ("I", vec![1, 1]));
        let r2 = classify(&build_landau(0.5, 0.0, 1.0).spec.big_m, &tol).unwrap();
        assert_eq!((r2.label().as_str(), r2.signs.clone()), ("II", vec![1, -1]));
        let r3 = classify(&build_landau(-2.0, 0.0, 1.0).spec.big_m, &tol).unwrap();
        assert_eq!((r3.label().as_str(), r3.signs), ("III", vec![-1, -1]));
        assert_eq!(classify(&build_landau(1.0, 0.0, 1.0).spec.big_m, &tol), Err(Error::SingularM));
    }

    #[test]
    fn landau_frame_is_quarter_turn() {
        let tol = Tolerances::default();
        let spec = build_landau(2.0, 0.0, 1.0).spec;
        let f = build_frame(&spec, &[0.0, 0.0], &tol).unwrap();
        let angle = f.o_mat[(1, 0)].atan2(f.o_mat[(0, 0)]);
        assert!((angle - FRAC_PI_4).abs() < 1e-14);
        assert!((f.s_mat[(0, 0)] - 1.5f64.sqrt()).abs() < 1e-14);
        assert!((f.s_mat[(1, 1)] - 0.5f64.sqrt()).abs() < 1e-14);
        assert!(f.metric_residual(&spec.big_m) < 1e-14);
        let d = derive_matrices(&spec, &[0.0, 0.0], &tol).unwrap();
        assert!(linalg::max_norm(&(f.transform_d(&d.d_mat) - f.eta_r())) < 1e-14);
        // η𝓡 = (ω/2)R, so 𝓓 keeps its eigenvalues ±iω/2
        let w = 3f64.sqrt();
        assert!((f.r_cal[(0, 1)] - w / 2.0).abs() < 1e-14);
    }

    #[test]
    fn round_trip_and_symplectic() {
        let tol = Tolerances::default();
        let b = build_tridiagonal(4, 1.0, 0.8, chain_gauge(4)).unwrap();
        let f = build_frame(&b.spec, &[0.0; 4], &tol).unwrap();
        let x = [0.3, -1.2, 0.5, 2.0];
        let p = [1.1, 0.2, -0.7, 0.4];
        let (xc, pc) = f.to_frame(&x, &p);
        let (x2, p2) = f.from_frame(&xc, &pc);
        for (a, b) in x.iter().chain(&p).zip(x2.iter().chain(&p2)) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(symplectic_residual(&f.phase_space_jacobian()) < 1e-12);
        assert!(f.eta_r().diagonal().iter().all(|d| d.abs() < 1e-12));
    }

    #[test]
    fn roman_numerals() {
        assert_eq!(roman(1), "I");
        assert_eq!(roman(4), "IV");
        assert_eq!(roman(17), "XVII");
    }
}
