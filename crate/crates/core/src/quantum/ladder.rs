//! Ladder operators of the Landau Hamiltonian with loss-gain terms, positive-definite region.

use num_complex::Complex64;
use serde::Serialize;

use super::phase::PhaseOperator;
use crate::error::{Error, Result};
use crate::landau_classical::{expect_region, LandauParams, Region};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `Π = P + ½RX`: `(p₁ + x₂/2, p₂ − x₁/2)`.
pub fn kinetic_momenta() -> [PhaseOperator; 2] {
    [PhaseOperator::from_xp([0.0, 0.5], [1.0, 0.0]), PhaseOperator::from_xp([-0.5, 0.0], [0.0, 1.0])]
}

/// `K = P − ½RX`, which commutes with both components of `Π`.
pub fn guiding_momenta() -> [PhaseOperator; 2] {
    [PhaseOperator::from_xp([0.0, -0.5], [1.0, 0.0]), PhaseOperator::from_xp([0.5, 0.0], [0.0, 1.0])]
}

fn apply_2x2(m: [[f64; 2]; 2], v: &[PhaseOperator; 2]) -> [PhaseOperator; 2] {
    [v[0] * m[0][0] + v[1] * m[0][1], v[0] * m[1][0] + v[1] * m[1][1]]
}

/// `SÔᵀ` from the closed-form rotation.
fn momentum_map(p: &LandauParams) -> [[f64; 2]; 2] {
    let os = p.os();
    [[os[0][0], os[1][0]], [os[0][1], os[1][1]]]
}

/// `Π̂ = SÔᵀΠ`.
pub fn frame_kinetic_momenta(p: &LandauParams) -> [PhaseOperator; 2] {
    apply_2x2(momentum_map(p), &kinetic_momenta())
}

/// `K̂ = SÔᵀK = 𝓟 − (ω/4)R𝓧`.
pub fn frame_guiding_momenta(p: &LandauParams) -> [PhaseOperator; 2] {
    apply_2x2(momentum_map(p), &guiding_momenta())
}

/// `ΠᵀMΠ`, Weyl ordered.
pub fn hamiltonian_from_mass(p: &LandauParams) -> Result<PhaseOperator> {
    let pi = kinetic_momenta();
    let m = [[(p.b + p.c) / 2.0, p.gamma / 2.0], [p.gamma / 2.0, (p.b - p.c) / 2.0]];
    let mut h = PhaseOperator::zero();
    for i in 0..2 {
        for j in 0..2 {
            h = h + pi[i].product(&pi[j])? * m[i][j];
        }
    }
    Ok(h)
}

/// `x₁p₂ − x₂p₁`.
pub fn angular_momentum() -> PhaseOperator {
    let x1p2 = PhaseOperator::x1().product(&PhaseOperator::p2()).expect("linear product");
    let x2p1 = PhaseOperator::x2().product(&PhaseOperator::p1()).expect("linear product");
    x1p2 - x2p1
}

#[derive(Debug, Clone)]
pub struct Ladder {
    pub a: PhaseOperator,
    pub a_dag: PhaseOperator,
    pub b: PhaseOperator,
    pub b_dag: PhaseOperator,
    /// `ω(a†a + ½)`.
    pub h: PhaseOperator,
    /// `b†b − a†a`.
    pub j3_frame: PhaseOperator,
    pub j3: PhaseOperator,
    pub pi_hat: [PhaseOperator; 2],
    pub k_hat: [PhaseOperator; 2],
    pub omega: f64,
}

pub fn build_ladder(p: &LandauParams) -> Result<Ladder> {
    expect_region(p.region, Region::I)?;
    let s = 1.0 / p.omega.sqrt();
    let pi_hat = frame_kinetic_momenta(p);
    let k_hat = frame_guiding_momenta(p);
    let a = (pi_hat[0] + pi_hat[1] * I) * s;
    let b = (k_hat[0] - k_hat[1] * I) * s;
    let (a_dag, b_dag) = (a.adjoint(), b.adjoint());
    let n_a = a_dag.product(&a)?;
    let n_b = b_dag.product(&b)?;
    let h = (n_a + PhaseOperator::scalar(0.5)) * p.omega;
    Ok(Ladder { a, a_dag, b, b_dag, h, j3_frame: n_b - n_a, j3: angular_momentum(), pi_hat, k_hat, omega: p.omega })
}

/// `a = ½(ξ₁*Π₁ − ξ₂*Π₂)` and `b = ½(ξ₁K₁ − ξ₂K₂)`.
pub fn ladder_from_xi(p: &LandauParams) -> Result<(PhaseOperator, PhaseOperator)> {
    expect_region(p.region, Region::I)?;
    let pi = kinetic_momenta();
    let k = guiding_momenta();
    let a = (pi[0] * p.xi1.conj() - pi[1] * p.xi2.conj()) * 0.5;
    let b = (k[0] * p.xi1 - k[1] * p.xi2) * 0.5;
    Ok((a, b))
}

/// `½|ξ|²J₃ + ¼(ξ² + ξ*²)(x₁p₁ − x₂p₂)` with `ξ = ξ₁`, valid for `C = 0`.
///
/// The rotation angle is `±π/4` with the sign of `γ`; the dilation term carries that sign.
pub fn j3_from_xi(p: &LandauParams) -> Result<PhaseOperator> {
    expect_region(p.region, Region::I)?;
    if p.c != 0.0 {
        return Err(Error::InvalidArgument("the ξ form of 𝓙₃ requires C = 0".into()));
    }
    let xi = p.xi1;
    let dil = PhaseOperator::x1().product(&PhaseOperator::p1())? - PhaseOperator::x2().product(&PhaseOperator::p2())?;
    Ok(angular_momentum() * (xi.norm_sqr() / 2.0) + dil * ((xi * xi + xi.conj() * xi.conj()) * ((2.0 * p.theta).sin() / 4.0)))
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    /// Largest coefficient of `lhs − rhs`.
    pub residual: f64,
}

impl IdentityCheck {
    pub fn new(name: &str, lhs: PhaseOperator, rhs: PhaseOperator) -> Self {
        Self { name: name.to_string(), residual: (lhs - rhs).max_abs() }
    }
}

/// Every ladder identity, each as a coefficient residual.
pub fn commutation_table(p: &LandauParams) -> Result<Vec<IdentityCheck>> {
    let l = build_ladder(p)?;
    let one = PhaseOperator::scalar(1.0);
    let zero = PhaseOperator::zero();
    let c = |x: &PhaseOperator, y: &PhaseOperator| x.commutator(y);
    let mut out = vec![
        IdentityCheck::new("[Π̂₁, Π̂₂] = iω/2", c(&l.pi_hat[0], &l.pi_hat[1]), PhaseOperator::scalar(I * (p.omega / 2.0))),
        IdentityCheck::new("[K̂₁, K̂₂] = −iω/2", c(&l.k_hat[0], &l.k_hat[1]), PhaseOperator::scalar(-I * (p.omega / 2.0))),
        IdentityCheck::new("[a, a†] = 1", c(&l.a, &l.a_dag), one),
        IdentityCheck::new("[b, b†] = 1", c(&l.b, &l.b_dag), one),
        IdentityCheck::new("[a, b] = 0", c(&l.a, &l.b), zero),
        IdentityCheck::new("[a, b†] = 0", c(&l.a, &l.b_dag), zero),
        IdentityCheck::new("[a†, b] = 0", c(&l.a_dag, &l.b), zero),
        IdentityCheck::new("[a†, b†] = 0", c(&l.a_dag, &l.b_dag), zero),
        IdentityCheck::new("[H, b] = 0", c(&l.h, &l.b), zero),
        IdentityCheck::new("[H, b†] = 0", c(&l.h, &l.b_dag), zero),
        IdentityCheck::new("[H, a] = −ωa", c(&l.h, &l.a), l.a * -p.omega),
        IdentityCheck::new("[H, 𝓙₃] = 0", c(&l.h, &l.j3_frame), zero),
        IdentityCheck::new("[𝓙₃, b] = −b", c(&l.j3_frame, &l.b), -l.b),
        IdentityCheck::new("[𝓙₃, b†] = b†", c(&l.j3_frame, &l.b_dag), l.b_dag),
        IdentityCheck::new("[𝓙₃, a] = a", c(&l.j3_frame, &l.a), l.a),
        IdentityCheck::new("[𝓙₃, a†] = −a†", c(&l.j3_frame, &l.a_dag), -l.a_dag),
        IdentityCheck::new("ω(a†a + ½) = Π̂ᵀΠ̂", l.h, l.pi_hat[0].square()? + l.pi_hat[1].square()?),
        IdentityCheck::new("Π̂ᵀΠ̂ = ΠᵀMΠ", l.pi_hat[0].square()? + l.pi_hat[1].square()?, hamiltonian_from_mass(p)?),
    ];
    let (a_xi, b_xi) = ladder_from_xi(p)?;
    out.push(IdentityCheck::new("a from ξ", l.a, a_xi));
    out.push(IdentityCheck::new("b from ξ", l.b, b_xi));
    if p.c == 0.0 {
        out.push(IdentityCheck::new("b†b − a†a = ξ form", l.j3_frame, j3_from_xi(p)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landau_classical::derive_params;

    #[test]
    fn reference_table_is_exact() {
        for (b, c, g) in [(2.0, 0.0, 1.0), (2.0, 0.0, 0.0), (3.0, 0.0, -2.5), (2.0, 0.7, 1.1), (1.0, -0.3, 0.2)] {
            let p = derive_params(b, c, g).unwrap();
            for check in commutation_table(&p).unwrap() {
                assert!(check.residual <= 1e-12, "{} at ({b},{c},{g}): {}", check.name, check.residual);
            }
        }
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let p = derive_params(2.0, 0.0, 1.0).unwrap();
        let l = build_ladder(&p).unwrap();
        assert_eq!(l.h.hermiticity_residual(), 0.0);
        assert!(l.j3_frame.hermiticity_residual() < 1e-15);
        // H = (B/2)(Π₁² + Π₂²) + (γ/2){Π₁, Π₂}
        let pi = kinetic_momenta();
        let h = (pi[0].square().unwrap() + pi[1].square().unwrap()) * 1.0 + pi[0].anticommutator(&pi[1]).unwrap() * 0.5;
        assert!((l.h - h).max_abs() < 1e-14);
    }

    #[test]
    fn ordering_constants_cancel_in_dilation() {
        // x₁p₁ − x₂p₂ is the same in any ordering used consistently
        let xp = |x: PhaseOperator, q: PhaseOperator| x.product(&q).unwrap();
        let plain = xp(PhaseOperator::x1(), PhaseOperator::p1()) - xp(PhaseOperator::x2(), PhaseOperator::p2());
        let rev = xp(PhaseOperator::p1(), PhaseOperator::x1()) - xp(PhaseOperator::p2(), PhaseOperator::x2());
        assert_eq!(plain, rev);
        assert_eq!(plain.constant, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rejects_other_regions() {
        let p = derive_params(0.5, 0.0, 1.0).unwrap();
        assert!(matches!(build_ladder(&p), Err(Error::RegionMismatch { .. })));
        let p = derive_params(2.0, 0.5, 1.0).unwrap();
        assert!(matches!(j3_from_xi(&p), Err(Error::InvalidArgument(_))));
    }
}
