//! Exact algebra of Weyl-ordered operators of degree at most two in `z = (x₁, x₂, p₁, p₂)`.
//!
//! For such operators the commutator is `i` times the Poisson bracket with no
//! higher corrections, so every identity below is closed and exact.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const X1: usize = 0;
pub const X2: usize = 1;
pub const P1: usize = 2;
pub const P2: usize = 3;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `Ω` with `[z_i, z_j] = iΩ_ij`.
pub fn omega_form() -> [[f64; 4]; 4] {
    let mut w = [[0.0; 4]; 4];
    w[X1][P1] = 1.0;
    w[X2][P2] = 1.0;
    w[P1][X1] = -1.0;
    w[P2][X2] = -1.0;
    w
}

/// `c + l·z + zᵀQz`, with `zᵀQz` read as the symmetrized operator `Σ Q_ij (z_i z_j + z_j z_i)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseOperator {
    pub constant: Complex64,
    pub linear: [Complex64; 4],
    /// Symmetric.
    pub quadratic: [[Complex64; 4]; 4],
}

impl Default for PhaseOperator {
    fn default() -> Self {
        Self::zero()
    }
}

impl PhaseOperator {
    pub fn zero() -> Self {
        Self { constant: ZERO, linear: [ZERO; 4], quadratic: [[ZERO; 4]; 4] }
    }

    pub fn scalar(c: impl Into<Complex64>) -> Self {
        Self { constant: c.into(), ..Self::zero() }
    }

    pub fn z(i: usize) -> Self {
        let mut op = Self::zero();
        op.linear[i] = Complex64::ONE;
        op
    }

    pub fn x1() -> Self {
        Self::z(X1)
    }
    pub fn x2() -> Self {
        Self::z(X2)
    }
    pub fn p1() -> Self {
        Self::z(P1)
    }
    pub fn p2() -> Self {
        Self::z(P2)
    }

    pub fn linear_form(l: [Complex64; 4]) -> Self {
        Self { linear: l, ..Self::zero() }
    }

    /// Linear operator `cx·X + cp·P` with real coefficients.
    pub fn from_xp(cx: [f64; 2], cp: [f64; 2]) -> Self {
        Self::linear_form([cx[0].into(), cx[1].into(), cp[0].into(), cp[1].into()])
    }

    /// Quadratic part given by any matrix; it is symmetrized.
    pub fn quadratic_form(q: [[Complex64; 4]; 4]) -> Self {
        let mut s = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                s[i][j] = (q[i][j] + q[j][i]) * 0.5;
            }
        }
        Self { quadratic: s, ..Self::zero() }
    }

    /// Highest degree with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        if self.quadratic.iter().flatten().any(|c| *c != ZERO) {
            2
        } else if self.linear.iter().any(|c| *c != ZERO) {
            1
        } else {
            0
        }
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() == 0.0
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        std::iter::once(&self.constant)
            .chain(&self.linear)
            .chain(self.quadratic.iter().flatten())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Hermitian conjugate: the Weyl symbol is conjugated.
    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        out.constant = out.constant.conj();
        out.linear.iter_mut().for_each(|c| *c = c.conj());
        out.quadratic.iter_mut().flatten().for_each(|c| *c = c.conj());
        out
    }

    /// Largest imaginary part of any coefficient.
    pub fn hermiticity_residual(&self) -> f64 {
        (*self - self.adjoint()).max_abs() / 2.0
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    fn gradient_linear(&self) -> [Complex64; 4] {
        self.linear
    }

    /// Poisson bracket `∇fᵀ Ω ∇g`, exact for degree ≤ 2.
    pub fn poisson(&self, other: &Self) -> Self {
        let w = omega_form();
        let (a, qa) = (self.gradient_linear(), &self.quadratic);
        let (b, qb) = (other.gradient_linear(), &other.quadratic);
        let mut out = Self::zero();
        // constant: aᵀΩb
        for i in 0..4 {
            for j in 0..4 {
                out.constant += a[i] * w[i][j] * b[j];
            }
        }
        // linear: 2QaΩb − 2QbΩa
        for k in 0..4 {
            let mut acc = ZERO;
            for i in 0..4 {
                for j in 0..4 {
                    acc += qa[k][i] * w[i][j] * b[j] * 2.0 - qb[k][i] * w[i][j] * a[j] * 2.0;
                }
            }
            out.linear[k] = acc;
        }
        // quadratic: sym(4 Qa Ω Qb)
        let mut m = [[ZERO; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                let mut acc = ZERO;
                for i in 0..4 {
                    for j in 0..4 {
                        if w[i][j] != 0.0 {
                            acc += qa[r][i] * w[i][j] * qb[j][c];
                        }
                    }
                }
                m[r][c] = acc * 4.0;
            }
        }
        out.quadratic = Self::quadratic_form(m).quadratic;
        out
    }

    /// `[f, g] = i{f, g}`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.poisson(other) * I
    }

    /// Operator product, available while the total degree stays ≤ 2:
    /// `f⋆g = fg + (i/2){f, g}`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.degree() + other.degree() > 2 {
            return Err(Error::DegreeOverflow);
        }
        Ok(self.classical_product(other) + self.poisson(other) * (I * 0.5))
    }

    /// `fg + gf`, available while the total degree stays ≤ 2.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        if self.degree() + other.degree() > 2 {
            return Err(Error::DegreeOverflow);
        }
        Ok(self.classical_product(other) * 2.0)
    }

    /// Pointwise product of symbols, assuming total degree ≤ 2.
    fn classical_product(&self, other: &Self) -> Self {
        let (f, g) = (self, other);
        let mut out = Self::zero();
        out.constant = f.constant * g.constant;
        for i in 0..4 {
            out.linear[i] = f.constant * g.linear[i] + g.constant * f.linear[i];
        }
        let mut q = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                q[i][j] = f.constant * g.quadratic[i][j] + g.constant * f.quadratic[i][j] + f.linear[i] * g.linear[j];
            }
        }
        out.quadratic = Self::quadratic_form(q).quadratic;
        out
    }

    /// Square, for linear operators.
    pub fn square(&self) -> Result<Self> {
        self.product(self)
    }

    /// Evaluates the linear part on a phase-space point.
    pub fn linear_value(&self, z: [Complex64; 4]) -> Complex64 {
        self.linear.iter().zip(z).map(|(a, b)| a * b).sum()
    }
}

impl Add for PhaseOperator {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        self.constant += o.constant;
        for i in 0..4 {
            self.linear[i] += o.linear[i];
            for j in 0..4 {
                self.quadratic[i][j] += o.quadratic[i][j];
            }
        }
        self
    }
}

impl Neg for PhaseOperator {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Sub for PhaseOperator {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul<Complex64> for PhaseOperator {
    type Output = Self;
    fn mul(mut self, k: Complex64) -> Self {
        self.constant *= k;
        self.linear.iter_mut().for_each(|c| *c *= k);
        self.quadratic.iter_mut().flatten().for_each(|c| *c *= k);
        self
    }
}

impl Mul<f64> for PhaseOperator {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self * Complex64::new(k, 0.0)
    }
}

impl std::iter::Sum for PhaseOperator {
    fn sum<T: Iterator<Item = Self>>(iter: T) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn canonical_pairs() {
        let x1 = PhaseOperator::x1();
        let p1 = PhaseOperator::p1();
        let x2 = PhaseOperator::x2();
        assert_eq!(x1.commutator(&p1), PhaseOperator::scalar(I));
        assert_eq!(p1.commutator(&x1), PhaseOperator::scalar(-I));
        assert!(x1.commutator(&x2).is_zero());
        assert!(x1.commutator(&PhaseOperator::p2()).is_zero());
    }

    #[test]
    fn product_of_linears() {
        let x1 = PhaseOperator::x1();
        let p1 = PhaseOperator::p1();
        // x p = sym(xp) + i/2
        let xp = x1.product(&p1).unwrap();
        assert_eq!(xp.constant, I * 0.5);
        assert_eq!(xp.quadratic[X1][P1], c(0.5));
        let px = p1.product(&x1).unwrap();
        assert_eq!((xp - px).constant, I);
        assert!(matches!(xp.product(&x1), Err(Error::DegreeOverflow)));
        assert!(matches!(xp.anticommutator(&xp), Err(Error::DegreeOverflow)));
    }

    #[test]
    fn quadratic_generates_rotation() {
        // J = x1 p2 − x2 p1 rotates (x1, x2)
        let j = PhaseOperator::x1().product(&PhaseOperator::p2()).unwrap()
            - PhaseOperator::x2().product(&PhaseOperator::p1()).unwrap();
        let jx1 = j.commutator(&PhaseOperator::x1());
        assert_eq!(jx1, PhaseOperator::x2() * I);
        // harmonic oscillator: [H, a] = −a
        let h = (PhaseOperator::x1().square().unwrap() + PhaseOperator::p1().square().unwrap()) * 0.5;
        let a = (PhaseOperator::x1() + PhaseOperator::p1() * I) * std::f64::consts::FRAC_1_SQRT_2;
        assert!((h.commutator(&a) + a).max_abs() < 1e-15);
        assert!((a.commutator(&a.adjoint()) - PhaseOperator::scalar(1.0)).max_abs() < 1e-15);
    }

    fn arb_op() -> impl Strategy<Value = PhaseOperator> {
        (proptest::collection::vec(-2.0f64..2.0, 4 + 10 + 1), proptest::collection::vec(-2.0f64..2.0, 4 + 10 + 1))
            .prop_map(|(re, im)| {
                let z = |k: usize| Complex64::new(re[k], im[k]);
                let mut q = [[ZERO; 4]; 4];
                let mut k = 5;
                for i in 0..4 {
                    for j in i..4 {
                        q[i][j] = z(k);
                        q[j][i] = z(k);
                        k += 1;
                    }
                }
                PhaseOperator { constant: z(0), linear: [z(1), z(2), z(3), z(4)], quadratic: q }
            })
    }

    proptest! {
        #[test]
        fn commutator_antisymmetric(f in arb_op(), g in arb_op()) {
            prop_assert!((f.commutator(&g) + g.commutator(&f)).max_abs() < 1e-12);
        }

        #[test]
        fn jacobi_identity(f in arb_op(), g in arb_op(), h in arb_op()) {
            let s = f.commutator(&g.commutator(&h)) + g.commutator(&h.commutator(&f)) + h.commutator(&f.commutator(&g));
            prop_assert!(s.max_abs() < 1e-10);
        }

        #[test]
        fn adjoint_of_commutator(f in arb_op(), g in arb_op()) {
            // [f, g]† = [g†, f†]
            let lhs = f.commutator(&g).adjoint();
            let rhs = g.adjoint().commutator(&f.adjoint());
            prop_assert!((lhs - rhs).max_abs() < 1e-12);
        }
    }
}
