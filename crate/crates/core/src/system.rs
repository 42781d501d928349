//! General loss-gain systems `H = ΠᵀMΠ + V` with `Π = P + A·F(X)`.

use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{self, split_parts, RMatrix, Tolerances};

/// Configuration-space map `F(X)` with optional analytic Jacobian.
pub trait FieldMap: Send + Sync {
    fn eval(&self, x: &[f64]) -> Vec<f64>;

    fn jacobian(&self, _x: &[f64]) -> Option<RMatrix> {
        None
    }

    /// `Some(J)` when the Jacobian does not depend on `X`.
    fn constant_jacobian(&self, _n: usize) -> Option<RMatrix> {
        None
    }
}

/// `F(X) = X`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityField;

impl FieldMap for IdentityField {
    fn eval(&self, x: &[f64]) -> Vec<f64> {
        x.to_vec()
    }
    fn jacobian(&self, x: &[f64]) -> Option<RMatrix> {
        Some(RMatrix::identity(x.len(), x.len()))
    }
    fn constant_jacobian(&self, n: usize) -> Option<RMatrix> {
        Some(RMatrix::identity(n, n))
    }
}

type BlockFn = Arc<dyn Fn([f64; 2]) -> [f64; 2] + Send + Sync>;
type BlockJac = Arc<dyn Fn([f64; 2]) -> [[f64; 2]; 2] + Send + Sync>;

/// One 2-component block `(F_{2i-1}, F_{2i})` depending only on `(x_{2i-1}, x_{2i})`.
#[derive(Clone)]
pub struct BlockMap {
    f: BlockFn,
    jac: BlockJac,
    linear: bool,
}

impl BlockMap {
    pub fn identity() -> Self {
        Self {
            f: Arc::new(|x| x),
            jac: Arc::new(|_| [[1.0, 0.0], [0.0, 1.0]]),
            linear: true,
        }
    }

    pub fn new(
        f: impl Fn([f64; 2]) -> [f64; 2] + Send + Sync + 'static,
        jac: impl Fn([f64; 2]) -> [[f64; 2]; 2] + Send + Sync + 'static,
    ) -> Self {
        Self { f: Arc::new(f), jac: Arc::new(jac), linear: false }
    }

    /// Trace of the block Jacobian, the local loss-gain profile `Q_i`.
    pub fn trace_jacobian(&self, x: [f64; 2]) -> f64 {
        let j = (self.jac)(x);
        j[0][0] + j[1][1]
    }
}

impl fmt::Debug for BlockMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlockMap").field("linear", &self.linear).finish()
    }
}

/// Block-local field built from 2-component pieces.
#[derive(Debug, Clone)]
pub struct PairField {
    pub blocks: Vec<BlockMap>,
}

impl FieldMap for PairField {
    fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(x.len());
        for (i, b) in self.blocks.iter().enumerate() {
            let v = (b.f)([x[2 * i], x[2 * i + 1]]);
            out.extend_from_slice(&v);
        }
        out
    }

    fn jacobian(&self, x: &[f64]) -> Option<RMatrix> {
        let n = 2 * self.blocks.len();
        let mut j = RMatrix::zeros(n, n);
        for (i, b) in self.blocks.iter().enumerate() {
            let jb = (b.jac)([x[2 * i], x[2 * i + 1]]);
            for r in 0..2 {
                for c in 0..2 {
                    j[(2 * i + r, 2 * i + c)] = jb[r][c];
                }
            }
        }
        Some(j)
    }

    fn constant_jacobian(&self, n: usize) -> Option<RMatrix> {
        if self.blocks.iter().all(|b| b.linear) {
            self.jacobian(&vec![0.0; n])
        } else {
            None
        }
    }
}

type VecFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Arbitrary field given as a closure; its Jacobian comes from finite differences.
#[derive(Clone)]
pub struct FnField(pub VecFn);

impl FnField {
    pub fn new(f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        Self(Arc::new(f))
    }
}

impl FieldMap for FnField {
    fn eval(&self, x: &[f64]) -> Vec<f64> {
        (self.0)(x)
    }
}

/// Scalar potential with gradient.
pub trait Potential: Send + Sync {
    fn value(&self, x: &[f64]) -> f64;
    fn gradient(&self, x: &[f64]) -> Vec<f64>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroPotential;

impl Potential for ZeroPotential {
    fn value(&self, _x: &[f64]) -> f64 {
        0.0
    }
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        vec![0.0; x.len()]
    }
}

/// `V = c·X`.
#[derive(Debug, Clone)]
pub struct LinearPotential {
    pub coef: Vec<f64>,
}

impl Potential for LinearPotential {
    fn value(&self, x: &[f64]) -> f64 {
        self.coef.iter().zip(x).map(|(c, x)| c * x).sum()
    }
    fn gradient(&self, _x: &[f64]) -> Vec<f64> {
        self.coef.clone()
    }
}

/// `V = ½ XᵀKX`.
#[derive(Debug, Clone)]
pub struct QuadraticPotential {
    pub k: RMatrix,
}

impl Potential for QuadraticPotential {
    fn value(&self, x: &[f64]) -> f64 {
        let v = DVector::from_column_slice(x);
        0.5 * v.dot(&(&self.k * &v))
    }
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let v = DVector::from_column_slice(x);
        let g = (&self.k + self.k.transpose()) * 0.5 * v;
        g.iter().copied().collect()
    }
}

/// Full specification of a loss-gain system.
#[derive(Clone)]
pub struct SystemSpec {
    pub n: usize,
    pub big_m: RMatrix,
    pub a_mat: RMatrix,
    pub field: Arc<dyn FieldMap>,
    pub potential: Arc<dyn Potential>,
}

impl fmt::Debug for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SystemSpec")
            .field("n", &self.n)
            .field("big_m", &self.big_m)
            .field("a_mat", &self.a_mat)
            .finish_non_exhaustive()
    }
}

impl SystemSpec {
    /// Validates shapes and symmetry. Singular `M` is reported by the operations that need `M⁻¹`.
    pub fn new(
        big_m: RMatrix,
        a_mat: RMatrix,
        field: Arc<dyn FieldMap>,
        potential: Arc<dyn Potential>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let n = big_m.nrows();
        if n == 0 || !big_m.is_square() || a_mat.shape() != (n, n) {
            return Err(Error::ShapeMismatch(format!(
                "M is {:?}, A is {:?}",
                big_m.shape(),
                a_mat.shape()
            )));
        }
        let res = linalg::symmetry_residual(&big_m);
        if res > tol.sym * linalg::max_norm(&big_m) {
            return Err(Error::NotSymmetric(res));
        }
        let res = linalg::antisymmetry_residual(&a_mat);
        if res > tol.sym * linalg::max_norm(&a_mat) {
            return Err(Error::NotAntisymmetric(res));
        }
        Ok(Self { n, big_m, a_mat, field, potential })
    }

    pub fn with_potential(mut self, potential: Arc<dyn Potential>) -> Self {
        self.potential = potential;
        self
    }

    /// Analytic Jacobian when provided, central differences otherwise.
    pub fn jacobian_at(&self, x: &[f64]) -> RMatrix {
        if let Some(j) = self.field.jacobian(x) {
            return j;
        }
        finite_difference_jacobian(self.field.as_ref(), x)
    }

    pub fn r_at(&self, x: &[f64]) -> RMatrix {
        let aj = &self.a_mat * self.jacobian_at(x);
        &aj - aj.transpose()
    }

    fn constant_r(&self) -> Option<RMatrix> {
        self.field.constant_jacobian(self.n).map(|j| {
            let aj = &self.a_mat * j;
            &aj - aj.transpose()
        })
    }

    pub fn is_singular(&self, tol: &Tolerances) -> bool {
        self.big_m.determinant().abs() < tol.det * linalg::max_norm(&self.big_m)
    }

    pub fn m_inverse(&self, tol: &Tolerances) -> Result<RMatrix> {
        if self.is_singular(tol) {
            return Err(Error::SingularM);
        }
        self.big_m.clone().try_inverse().ok_or(Error::SingularM)
    }
}

pub fn finite_difference_jacobian(f: &dyn FieldMap, x: &[f64]) -> RMatrix {
    let n = x.len();
    let mut j = RMatrix::zeros(n, n);
    let mut xp = x.to_vec();
    for c in 0..n {
        let h = 1e-6 * x[c].abs().max(1.0);
        xp[c] = x[c] + h;
        let fp = f.eval(&xp);
        xp[c] = x[c] - h;
        let fm = f.eval(&xp);
        xp[c] = x[c];
        for r in 0..n {
            j[(r, c)] = (fp[r] - fm[r]) / (2.0 * h);
        }
    }
    j
}

/// `R`, `𝓓 = MR` and the split `𝓓 = D + D_O + 𝓓_A`.
#[derive(Debug, Clone)]
pub struct DerivedMatrices {
    pub r_mat: RMatrix,
    pub d_mat: RMatrix,
    pub d_diag: RMatrix,
    pub d_offsym: RMatrix,
    pub d_anti: RMatrix,
}

impl DerivedMatrices {
    /// Loss-gain coefficients `η = −2𝓓` restricted to the diagonal.
    pub fn eta_diag(&self) -> Vec<f64> {
        self.d_mat.diagonal().iter().map(|d| -2.0 * d).collect()
    }
}

pub fn derive_matrices(spec: &SystemSpec, x: &[f64], tol: &Tolerances) -> Result<DerivedMatrices> {
    if spec.is_singular(tol) {
        return Err(Error::SingularM);
    }
    let r_mat = spec.r_at(x);
    let d_mat = &spec.big_m * &r_mat;
    let parts = split_parts(&d_mat);
    Ok(DerivedMatrices {
        r_mat,
        d_mat,
        d_diag: parts.diag,
        d_offsym: parts.offsym,
        d_anti: parts.anti,
    })
}

/// Outcome of the balance test on loss-gain coefficients.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BalanceReport {
    pub balanced: bool,
    pub trace: f64,
    /// Indices with `η_ii < 0`.
    pub gain: Vec<usize>,
    /// Indices with `η_ii > 0`.
    pub loss: Vec<usize>,
    pub neutral: Vec<usize>,
}

/// Positive coefficients are losses and negative ones gains; balance is `Σ η_ii = 0`.
pub fn check_balance(eta_diag: &[f64], tol: f64) -> BalanceReport {
    let trace: f64 = eta_diag.iter().sum();
    let scale = eta_diag.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let mut gain = Vec::new();
    let mut loss = Vec::new();
    let mut neutral = Vec::new();
    for (i, &e) in eta_diag.iter().enumerate() {
        if e.abs() <= tol * scale {
            neutral.push(i);
        } else if e > 0.0 {
            loss.push(i);
        } else {
            gain.push(i);
        }
    }
    BalanceReport { balanced: trace.abs() <= tol * scale, trace, gain, loss, neutral }
}

/// First-order autonomous-or-not ODE `ẏ = f(t, y)`.
pub trait VectorField {
    fn dim(&self) -> usize;
    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]);
}

/// `Ẍ = 2MR(X)Ẋ − 2M∂V/∂X` as a field on `(X, Ẋ)`.
#[derive(Clone)]
pub struct EquationsOfMotion {
    spec: SystemSpec,
    two_mr: Option<RMatrix>,
}

impl EquationsOfMotion {
    /// Acceleration at `(X, Ẋ)`.
    pub fn acceleration(&self, x: &[f64], v: &[f64]) -> Vec<f64> {
        let n = self.spec.n;
        let mut y = Vec::with_capacity(2 * n);
        y.extend_from_slice(x);
        y.extend_from_slice(v);
        let mut dy = vec![0.0; 2 * n];
        self.eval(0.0, &y, &mut dy);
        dy[n..].to_vec()
    }

    /// `Γ = 2M∂V/∂X`.
    pub fn gamma_force(&self, x: &[f64]) -> Vec<f64> {
        let g = DVector::from_vec(self.spec.potential.gradient(x));
        (&self.spec.big_m * g * 2.0).iter().copied().collect()
    }
}

impl VectorField for EquationsOfMotion {
    fn dim(&self) -> usize {
        2 * self.spec.n
    }

    fn eval(&self, _t: f64, y: &[f64], dy: &mut [f64]) {
        let n = self.spec.n;
        let (x, v) = y.split_at(n);
        dy[..n].copy_from_slice(v);
        let owned;
        let two_mr = match &self.two_mr {
            Some(m) => m,
            None => {
                owned = &self.spec.big_m * self.spec.r_at(x) * 2.0;
                &owned
            }
        };
        let grad = self.spec.potential.gradient(x);
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += two_mr[(i, j)] * v[j] - 2.0 * self.spec.big_m[(i, j)] * grad[j];
            }
            dy[n + i] = acc;
        }
    }
}

pub fn equations_of_motion(spec: &SystemSpec, tol: &Tolerances) -> Result<EquationsOfMotion> {
    if spec.is_singular(tol) {
        return Err(Error::SingularM);
    }
    let two_mr = spec.constant_r().map(|r| &spec.big_m * r * 2.0);
    Ok(EquationsOfMotion { spec: spec.clone(), two_mr })
}

/// Divergence of a vector field at `y` by central differences.
pub fn flow_divergence(field: &dyn VectorField, y: &[f64], h: f64) -> f64 {
    let n = field.dim();
    let mut yp = y.to_vec();
    let mut fp = vec![0.0; n];
    let mut fm = vec![0.0; n];
    let mut div = 0.0;
    for i in 0..n {
        yp[i] = y[i] + h;
        field.eval(0.0, &yp, &mut fp);
        yp[i] = y[i] - h;
        field.eval(0.0, &yp, &mut fm);
        yp[i] = y[i];
        div += (fp[i] - fm[i]) / (2.0 * h);
    }
    div
}

#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<State>,
}

impl Trajectory {
    pub fn last(&self) -> Option<(f64, &State)> {
        self.times.last().copied().zip(self.states.last())
    }
}

/// Classical RK4 with a uniform step `h = t_end / ceil(t_end/dt) ≤ dt`, landing exactly on `t_end`.
pub fn rk4(field: &dyn VectorField, y0: &[f64], t_end: f64, dt: f64) -> Result<Vec<(f64, Vec<f64>)>> {
    let mut out = Vec::new();
    rk4_visit(field, y0, t_end, dt, |t, y| out.push((t, y.to_vec())))?;
    Ok(out)
}

/// Same stepping as [`rk4`] but hands every state to `visit` instead of storing it.
pub fn rk4_visit(
    field: &dyn VectorField,
    y0: &[f64],
    t_end: f64,
    dt: f64,
    mut visit: impl FnMut(f64, &[f64]),
) -> Result<Vec<f64>> {
    if !(dt > 0.0 && t_end > 0.0 && dt.is_finite() && t_end.is_finite()) {
        return Err(Error::InvalidArgument(format!("need dt > 0 and t_end > 0, got dt={dt}, t_end={t_end}")));
    }
    let d = field.dim();
    let steps = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    let h = t_end / steps as f64;
    let mut y = y0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (vec![0.0; d], vec![0.0; d], vec![0.0; d], vec![0.0; d], vec![0.0; d]);
    visit(0.0, &y);
    for s in 0..steps {
        let t = s as f64 * h;
        field.eval(t, &y, &mut k1);
        for i in 0..d {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        field.eval(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..d {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        field.eval(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..d {
            tmp[i] = y[i] + h * k3[i];
        }
        field.eval(t + h, &tmp, &mut k4);
        for i in 0..d {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t_next = if s + 1 == steps { t_end } else { (s + 1) as f64 * h };
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(t_next));
        }
        visit(t_next, &y);
    }
    Ok(y)
}

pub fn integrate(spec: &SystemSpec, x0: &[f64], v0: &[f64], t_end: f64, dt: f64, tol: &Tolerances) -> Result<Trajectory> {
    if x0.len() != spec.n || v0.len() != spec.n {
        return Err(Error::ShapeMismatch(format!("initial data has lengths {}/{}, system has n={}", x0.len(), v0.len(), spec.n)));
    }
    let eom = equations_of_motion(spec, tol)?;
    let y0: Vec<f64> = x0.iter().chain(v0).copied().collect();
    let n = spec.n;
    let mut traj = Trajectory::default();
    rk4_visit(&eom, &y0, t_end, dt, |t, y| {
        traj.times.push(t);
        traj.states.push(State { x: y[..n].to_vec(), v: y[n..].to_vec() });
    })?;
    Ok(traj)
}

/// `¼ ẊᵀM⁻¹Ẋ + V(X)`.
pub fn hamiltonian_value(spec: &SystemSpec, x: &[f64], v: &[f64], tol: &Tolerances) -> Result<f64> {
    let minv = spec.m_inverse(tol)?;
    Ok(energy_with_inverse(spec, &minv, x, v))
}

pub(crate) fn energy_with_inverse(spec: &SystemSpec, minv: &RMatrix, x: &[f64], v: &[f64]) -> f64 {
    let vv = DVector::from_column_slice(v);
    0.25 * vv.dot(&(minv * &vv)) + spec.potential.value(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn landau(b: f64, c: f64, g: f64) -> SystemSpec {
        let m = RMatrix::from_row_slice(2, 2, &[(b + c) / 2.0, g / 2.0, g / 2.0, (b - c) / 2.0]);
        let a = RMatrix::from_row_slice(2, 2, &[0.0, 0.5, -0.5, 0.0]);
        SystemSpec::new(m, a, Arc::new(IdentityField), Arc::new(ZeroPotential), &Tolerances::default()).unwrap()
    }

    #[test]
    fn landau_d_matrix() {
        let (b, c, g) = (2.0, 0.3, 1.0);
        let d = derive_matrices(&landau(b, c, g), &[0.0, 0.0], &Tolerances::default()).unwrap();
        let want = RMatrix::from_row_slice(2, 2, &[-g / 2.0, (b + c) / 2.0, -(b - c) / 2.0, g / 2.0]);
        assert!(linalg::max_norm(&(&d.d_mat - want)) < 1e-15);
        assert_eq!(d.d_diag[(0, 0)], -g / 2.0);
        assert!(d.d_mat.trace().abs() < 1e-15);
    }

    #[test]
    fn balance_examples() {
        assert!(check_balance(&[1.0, -1.0], 1e-10).balanced);
        let r = check_balance(&[1.0, 2.0, -3.0], 1e-10);
        assert!(r.balanced);
        assert_eq!(r.loss, vec![0, 1]);
        assert_eq!(r.gain, vec![2]);
        assert!(!check_balance(&[1.0, 1.0], 1e-10).balanced);
    }

    #[test]
    fn landau_acceleration_from_rest_of_position() {
        let eom = equations_of_motion(&landau(2.0, 0.0, 1.0), &Tolerances::default()).unwrap();
        let a = eom.acceleration(&[0.0, 0.0], &[1.0, 0.0]);
        assert!((a[0] + 1.0).abs() < 1e-15 && (a[1] + 2.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_force_of_quadratic_potential() {
        let m = RMatrix::identity(2, 2) * 0.5;
        let spec = SystemSpec::new(
            m,
            RMatrix::zeros(2, 2),
            Arc::new(IdentityField),
            Arc::new(QuadraticPotential { k: RMatrix::identity(2, 2) }),
            &Tolerances::default(),
        )
        .unwrap();
        let eom = equations_of_motion(&spec, &Tolerances::default()).unwrap();
        assert_eq!(eom.gamma_force(&[0.3, -0.7]), vec![0.3, -0.7]);
    }

    #[test]
    fn divergence_is_twice_trace_of_d() {
        let spec = landau(2.0, 0.5, 1.0);
        let eom = equations_of_motion(&spec, &Tolerances::default()).unwrap();
        let div = flow_divergence(&eom, &[0.1, 0.2, 0.3, -0.4], 1e-5);
        assert!(div.abs() < 1e-9);
        let nonlinear = SystemSpec::new(
            RMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.3, 2.0]),
            RMatrix::from_row_slice(2, 2, &[0.0, 0.5, -0.5, 0.0]),
            Arc::new(FnField::new(|x| vec![x[0] * x[0], x[1].sin()])),
            Arc::new(ZeroPotential),
            &Tolerances::default(),
        )
        .unwrap();
        let eom = equations_of_motion(&nonlinear, &Tolerances::default()).unwrap();
        let d = derive_matrices(&nonlinear, &[0.1, 0.2], &Tolerances::default()).unwrap();
        let div = flow_divergence(&eom, &[0.1, 0.2, 0.3, -0.4], 1e-5);
        let eta_sum: f64 = d.eta_diag().iter().sum();
        assert!((div + eta_sum).abs() < 1e-8, "div {div} vs -Σ η {}", -eta_sum);
    }

    #[test]
    fn equilibrium_stays_put() {
        let spec = landau(2.0, 0.0, 1.0);
        let tr = integrate(&spec, &[0.4, -0.2], &[0.0, 0.0], 1.0, 0.01, &Tolerances::default()).unwrap();
        assert!(tr.states.iter().all(|s| s.x == vec![0.4, -0.2]));
        assert_eq!(*tr.times.last().unwrap(), 1.0);
        assert!(tr.times.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn singular_m_rejected() {
        let spec = landau(1.0, 0.0, 1.0);
        assert_eq!(equations_of_motion(&spec, &Tolerances::default()).err(), Some(Error::SingularM));
        assert_eq!(hamiltonian_value(&spec, &[0.0; 2], &[0.0; 2], &Tolerances::default()).err(), Some(Error::SingularM));
    }

    #[test]
    fn rest_energy_is_zero() {
        let e = hamiltonian_value(&landau(2.0, 0.0, 1.0), &[1.0, 2.0], &[0.0, 0.0], &Tolerances::default()).unwrap();
        assert_eq!(e, 0.0);
    }

    #[test]
    fn fd_jacobian_matches_analytic() {
        let f = FnField::new(|x| vec![x[0].sin() * x[1], x[1].powi(2)]);
        let j = finite_difference_jacobian(&f, &[0.3, 0.7]);
        assert!((j[(0, 0)] - 0.3f64.cos() * 0.7).abs() < 1e-8);
        assert!((j[(0, 1)] - 0.3f64.sin()).abs() < 1e-8);
        assert!((j[(1, 1)] - 1.4).abs() < 1e-8);
    }

    proptest! {
        #[test]
        fn r_is_antisymmetric(n in 2usize..6, a in proptest::collection::vec(-2.0f64..2.0, 36),
                              j in proptest::collection::vec(-2.0f64..2.0, 36)) {
            let raw = RMatrix::from_fn(n, n, |r, c| a[r * 6 + c]);
            let amat = &raw - raw.transpose();
            let jm = RMatrix::from_fn(n, n, |r, c| j[r * 6 + c]);
            let aj = &amat * jm;
            let r = &aj - aj.transpose();
            prop_assert_eq!(linalg::max_norm(&(&r + r.transpose())), 0.0);
        }
    }
}
