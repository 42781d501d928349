//! Spin-½ Landau Hamiltonian with loss-gain terms and its supercharges.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::landau_classical::{expect_region, LandauParams, Region};
use crate::quantum::fock::{self, fock_matrix, Level, DEGENERACY_TOL};
use crate::quantum::ladder::{frame_kinetic_momenta, hamiltonian_from_mass, kinetic_momenta};
use crate::quantum::PhaseOperator;

pub const ID: usize = 0;
pub const SX: usize = 1;
pub const SY: usize = 2;
pub const SZ: usize = 3;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `σ_i σ_j = c σ_k` over the basis `{I, σx, σy, σz}`.
fn pauli_mul(i: usize, j: usize) -> (Complex64, usize) {
    match (i, j) {
        (ID, k) | (k, ID) => (Complex64::ONE, k),
        (a, b) if a == b => (Complex64::ONE, ID),
        (a, b) => {
            let k = 6 - a - b;
            // cyclic (x, y, z) gives +i
            let cyclic = (a % 3) + 1 == b;
            (if cyclic { I } else { -I }, k)
        }
    }
}

/// `Σ σ_k ⊗ A_k` with one phase-space coefficient per Pauli basis element.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinPhaseOperator {
    pub parts: [PhaseOperator; 4],
}

impl SpinPhaseOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(spin: usize, op: PhaseOperator) -> Self {
        let mut s = Self::zero();
        s.parts[spin] = op;
        s
    }

    pub fn max_abs(&self) -> f64 {
        self.parts.iter().map(PhaseOperator::max_abs).fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Self {
        Self { parts: self.parts.map(|p| p.adjoint()) }
    }

    /// `{X⊗A, Y⊗B} = ½({X,Y}⊗{A,B} + [X,Y]⊗[A,B])`, summed over nonvanishing terms.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    /// `[X⊗A, Y⊗B] = ½([X,Y]⊗{A,B} + {X,Y}⊗[A,B])`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    fn combine(&self, other: &Self, anti: bool) -> Result<Self> {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = (&self.parts[i], &other.parts[j]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let (c_ij, k) = pauli_mul(i, j);
                let (c_ji, _) = pauli_mul(j, i);
                let (spin_anti, spin_comm) = (c_ij + c_ji, c_ij - c_ji);
                // spin part paired with the operator anticommutator, and with the commutator
                let (with_anti, with_comm) = if anti { (spin_anti, spin_comm) } else { (spin_comm, spin_anti) };
                if with_anti != Complex64::ZERO {
                    out.parts[k] = out.parts[k] + a.anticommutator(b)? * (with_anti * 0.5);
                }
                if with_comm != Complex64::ZERO {
                    out.parts[k] = out.parts[k] + a.commutator(b) * (with_comm * 0.5);
                }
            }
        }
        Ok(out)
    }
}

impl Add for SpinPhaseOperator {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { parts: std::array::from_fn(|k| self.parts[k] + o.parts[k]) }
    }
}

impl Sub for SpinPhaseOperator {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { parts: std::array::from_fn(|k| self.parts[k] - o.parts[k]) }
    }
}

impl Neg for SpinPhaseOperator {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for SpinPhaseOperator {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self { parts: self.parts.map(|p| p * k) }
    }
}

impl Mul<Complex64> for SpinPhaseOperator {
    type Output = Self;
    fn mul(self, k: Complex64) -> Self {
        Self { parts: self.parts.map(|p| p * k) }
    }
}

fn spin(s: usize, op: PhaseOperator) -> SpinPhaseOperator {
    SpinPhaseOperator::term(s, op)
}

/// `ΠᵀMΠ + (ω/2)σz`, expanded in `Π₁, Π₂`.
pub fn build_pauli_hamiltonian(p: &LandauParams) -> Result<SpinPhaseOperator> {
    expect_region(p.region, Region::I)?;
    Ok(spin(ID, hamiltonian_from_mass(p)?) + spin(SZ, PhaseOperator::scalar(p.omega / 2.0)))
}

/// `Π̂₁² + Π̂₂² + (ω/2)σz`.
pub fn pauli_hamiltonian_from_frame(p: &LandauParams) -> Result<SpinPhaseOperator> {
    expect_region(p.region, Region::I)?;
    let ph = frame_kinetic_momenta(p);
    Ok(spin(ID, ph[0].square()? + ph[1].square()?) + spin(SZ, PhaseOperator::scalar(p.omega / 2.0)))
}

/// The angle `−½ arctan(γ/ω)`, a quarter turn short of [`q_angle`]; its pair reverses the Zeeman term.
pub fn unshifted_q_angle(p: &LandauParams) -> f64 {
    -0.5 * (p.gamma / p.omega).atan()
}

/// Angle for which the second pair squares to `H_S`: `sin 2θ̃ = γ/B`, `cos 2θ̃ = −ω/B`.
pub fn q_angle(p: &LandauParams) -> f64 {
    std::f64::consts::FRAC_PI_2 - 0.5 * (p.gamma / p.omega).atan()
}

/// `q₁ = σxΠ̂₁ − σyΠ̂₂`, `q₂ = σxΠ̂₂ + σyΠ̂₁`.
pub fn q_pair(p: &LandauParams) -> Result<[SpinPhaseOperator; 2]> {
    expect_region(p.region, Region::I)?;
    let ph = frame_kinetic_momenta(p);
    Ok([spin(SX, ph[0]) - spin(SY, ph[1]), spin(SX, ph[1]) + spin(SY, ph[0])])
}

/// `q₁, q₂` expanded in `Π₁ ± Π₂`, valid at `C = 0, γ ≥ 0`.
pub fn q_pair_kinetic_form(p: &LandauParams) -> [SpinPhaseOperator; 2] {
    let pi = kinetic_momenta();
    let (sum, diff) = (pi[0] + pi[1], pi[0] - pi[1]);
    let (kp, km) = ((p.lambda_plus / 2.0).sqrt(), (p.lambda_minus / 2.0).sqrt());
    [spin(SX, sum * kp) + spin(SY, diff * km), spin(SX, diff * -km) + spin(SY, sum * kp)]
}

/// `Q₁ = √(B/2)[σx(cΠ₁ + sΠ₂) + σy(sΠ₁ + cΠ₂)]`, `Q₂ = √(B/2)[σx(sΠ₁ + cΠ₂) − σy(cΠ₁ + sΠ₂)]`.
pub fn big_q_pair(p: &LandauParams, angle: f64) -> [SpinPhaseOperator; 2] {
    let pi = kinetic_momenta();
    let (s, c) = angle.sin_cos();
    let k = (p.b / 2.0).sqrt();
    let (u, v) = (pi[0] * c + pi[1] * s, pi[0] * s + pi[1] * c);
    [(spin(SX, u) + spin(SY, v)) * k, (spin(SX, v) - spin(SY, u)) * k]
}

/// The same pair through `Π̂`, valid at `C = 0, γ ≥ 0`.
pub fn big_q_pair_frame_form(p: &LandauParams, angle: f64) -> [SpinPhaseOperator; 2] {
    let ph = frame_kinetic_momenta(p);
    let (s, c) = angle.sin_cos();
    let a1 = ph[0] * ((p.b / p.lambda_plus).sqrt() * (c + s) / 2.0);
    let a2 = ph[1] * ((p.b / p.lambda_minus).sqrt() * (c - s) / 2.0);
    [spin(SX, a1) + spin(SY, a1) - spin(SX, a2) + spin(SY, a2), spin(SX, a1) - spin(SY, a1) + spin(SX, a2) + spin(SY, a2)]
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraCheck {
    pub name: String,
    pub residual: f64,
}

fn check(name: &str, lhs: SpinPhaseOperator, rhs: SpinPhaseOperator) -> AlgebraCheck {
    AlgebraCheck { name: name.to_string(), residual: (lhs - rhs).max_abs() }
}

/// `{X, Y}` written as `c·H_S + remainder`, with `c` the least-squares coefficient.
#[derive(Debug, Clone, Serialize)]
pub struct MixedAnticommutator {
    pub name: String,
    pub coefficient: [f64; 2],
    pub remainder: f64,
}

fn flatten(s: &SpinPhaseOperator) -> Vec<Complex64> {
    s.parts
        .iter()
        .flat_map(|p| std::iter::once(p.constant).chain(p.linear).chain(p.quadratic.into_iter().flatten()))
        .collect()
}

fn proportional_fit(name: &str, x: SpinPhaseOperator, h: &SpinPhaseOperator) -> MixedAnticommutator {
    let (xv, hv) = (flatten(&x), flatten(h));
    let num: Complex64 = hv.iter().zip(&xv).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = hv.iter().map(|a| a.norm_sqr()).sum();
    let c = num / den;
    MixedAnticommutator { name: name.to_string(), coefficient: [c.re, c.im], remainder: (x - *h * c).max_abs() }
}

#[derive(Debug, Clone, Serialize)]
pub struct SupersymmetryReport {
    pub zeeman: f64,
    pub unshifted_angle: f64,
    pub angle: f64,
    /// Both constructions of `H_S` and the expansions of each supercharge.
    pub constructions: Vec<AlgebraCheck>,
    pub q_algebra: Vec<AlgebraCheck>,
    /// Second pair at [`q_angle`].
    pub big_q_algebra: Vec<AlgebraCheck>,
    /// Second pair at the unshifted angle; fails by a reversed Zeeman term.
    pub big_q_algebra_unshifted: Vec<AlgebraCheck>,
    pub commutes_with_hamiltonian: Vec<AlgebraCheck>,
    pub mixed: Vec<MixedAnticommutator>,
}

fn pair_algebra(pair: &[SpinPhaseOperator; 2], h: &SpinPhaseOperator, label: &str) -> Result<Vec<AlgebraCheck>> {
    let two_h = *h * 2.0;
    Ok(vec![
        check(&format!("{{{label}₁, {label}₁}} = 2H_S"), pair[0].anticommutator(&pair[0])?, two_h),
        check(&format!("{{{label}₂, {label}₂}} = 2H_S"), pair[1].anticommutator(&pair[1])?, two_h),
        check(&format!("{{{label}₁, {label}₂}} = 0"), pair[0].anticommutator(&pair[1])?, SpinPhaseOperator::zero()),
    ])
}

/// Every supersymmetry identity, as coefficient residuals.
pub fn build_supercharges(p: &LandauParams) -> Result<SupersymmetryReport> {
    expect_region(p.region, Region::I)?;
    if p.c != 0.0 {
        return Err(Error::InvalidArgument("the supercharge pairs are given for C = 0".into()));
    }
    let h = build_pauli_hamiltonian(p)?;
    let q = q_pair(p)?;
    let angle = q_angle(p);
    let unshifted_angle = unshifted_q_angle(p);
    let big_q = big_q_pair(p, angle);
    let mut constructions = vec![check("H_S from Π and from Π̂", h, pauli_hamiltonian_from_frame(p)?)];
    if p.gamma >= 0.0 {
        let qk = q_pair_kinetic_form(p);
        constructions.push(check("q₁ from Π", q[0], qk[0]));
        constructions.push(check("q₂ from Π", q[1], qk[1]));
        for (name, a) in [("shifted", angle), ("unshifted", unshifted_angle)] {
            let (pf, ff) = (big_q_pair(p, a), big_q_pair_frame_form(p, a));
            constructions.push(check(&format!("Q₁ from Π and Π̂, {name} angle"), pf[0], ff[0]));
            constructions.push(check(&format!("Q₂ from Π and Π̂, {name} angle"), pf[1], ff[1]));
        }
    }
    let mut commutes_with_hamiltonian = Vec::new();
    for (name, x) in [("q₁", q[0]), ("q₂", q[1]), ("Q₁", big_q[0]), ("Q₂", big_q[1])] {
        commutes_with_hamiltonian.push(check(&format!("[H_S, {name}] = 0"), h.commutator(&x)?, SpinPhaseOperator::zero()));
    }
    let mut mixed = Vec::new();
    for (a, qa) in q.iter().enumerate() {
        for (b, qb) in big_q.iter().enumerate() {
            mixed.push(proportional_fit(&format!("{{q{}, Q{}}}", a + 1, b + 1), qa.anticommutator(qb)?, &h));
        }
    }
    Ok(SupersymmetryReport {
        zeeman: h.parts[SZ].constant.re,
        unshifted_angle,
        angle,
        constructions,
        q_algebra: pair_algebra(&q, &h, "q")?,
        big_q_algebra: pair_algebra(&big_q, &h, "Q")?,
        big_q_algebra_unshifted: pair_algebra(&big_q_pair(p, unshifted_angle), &h, "Q")?,
        commutes_with_hamiltonian,
        mixed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SusySpectrum {
    pub n_max: usize,
    /// `σz = +1` sector, `H + ω/2`.
    pub up: Vec<Level>,
    /// `σz = −1` sector, `H − ω/2`.
    pub down: Vec<Level>,
    pub ground: f64,
    /// `max_n |E↑_n − E↓_{n+1}|`.
    pub pairing_residual: f64,
    pub truncation_warning: bool,
}

/// Diagonalizes both spin sectors of `H_S` in the truncated number basis.
pub fn susy_spectrum_check(p: &LandauParams, n_max: usize) -> Result<SusySpectrum> {
    const LEVELS: usize = 3;
    let h = build_pauli_hamiltonian(p)?;
    if [SX, SY].iter().any(|&k| !h.parts[k].is_zero()) {
        return Err(Error::InvalidArgument("Hamiltonian mixes spin sectors".into()));
    }
    let tol = DEGENERACY_TOL * p.omega;
    let sector = |sign: f64, k: usize| -> Result<fock::Spectrum> {
        let m = fock_matrix(&(h.parts[ID] + h.parts[SZ] * sign), n_max)?;
        Ok(fock::select(fock::eigenvalues(&m)?, n_max, k, tol, 2))
    };
    let up = sector(1.0, LEVELS - 1)?;
    let down = sector(-1.0, LEVELS)?;
    let ground = down.levels.first().map_or(f64::NAN, |l| l.energy);
    let pairing_residual = up.levels.iter().zip(down.levels.iter().skip(1)).map(|(u, d)| (u.energy - d.energy).abs()).fold(0.0, f64::max);
    Ok(SusySpectrum {
        n_max,
        truncation_warning: up.truncation_warning || down.truncation_warning,
        up: up.levels,
        down: down.levels,
        ground,
        pairing_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landau_classical::derive_params;

    fn passes(checks: &[AlgebraCheck]) -> bool {
        checks.iter().all(|c| c.residual <= 1e-12)
    }

    #[test]
    fn pauli_table() {
        assert_eq!(pauli_mul(SX, SY), (I, SZ));
        assert_eq!(pauli_mul(SY, SX), (-I, SZ));
        assert_eq!(pauli_mul(SY, SZ), (I, SX));
        assert_eq!(pauli_mul(SZ, SX), (I, SY));
        assert_eq!(pauli_mul(SX, SZ), (-I, SY));
        assert_eq!(pauli_mul(SZ, SZ), (Complex64::ONE, ID));
    }

    #[test]
    fn spin_algebra_on_constants() {
        let sx = spin(SX, PhaseOperator::scalar(1.0));
        let sy = spin(SY, PhaseOperator::scalar(1.0));
        let c = sx.commutator(&sy).unwrap();
        assert_eq!(c, spin(SZ, PhaseOperator::scalar(I * 2.0)));
        assert!(sx.anticommutator(&sy).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn reference_point() {
        let p = derive_params(2.0, 0.0, 1.0).unwrap();
        let r = build_supercharges(&p).unwrap();
        assert!((r.zeeman - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(passes(&r.constructions), "{:?}", r.constructions);
        assert!(passes(&r.q_algebra));
        assert!(passes(&r.big_q_algebra));
        assert!(!passes(&r.big_q_algebra_unshifted));
        assert!(passes(&r.commutes_with_hamiltonian));
        // Q₁ = (q₁ + q₂)/√2 at the shifted angle
        let q = q_pair(&p).unwrap();
        let big = big_q_pair(&p, r.angle);
        assert!((big[0] - (q[0] + q[1]) * std::f64::consts::FRAC_1_SQRT_2).max_abs() < 1e-12);
        assert!(r.mixed.iter().any(|m| m.coefficient[0].abs() > 0.1));
    }

    #[test]
    fn standard_pauli_limit() {
        let p = derive_params(2.0, 0.0, 0.0).unwrap();
        let r = build_supercharges(&p).unwrap();
        assert!((r.zeeman - 1.0).abs() < 1e-15);
        assert!(passes(&r.q_algebra) && passes(&r.big_q_algebra));
    }

    #[test]
    fn negative_gamma() {
        let p = derive_params(3.0, 0.0, -2.0).unwrap();
        let r = build_supercharges(&p).unwrap();
        assert!(passes(&r.constructions) && passes(&r.q_algebra) && passes(&r.big_q_algebra));
    }

    #[test]
    fn unshifted_angle_gives_reversed_zeeman() {
        // the unshifted angle squares to (B/2)Π² − (γ/2){Π₁,Π₂} − (ω/2)σz instead
        let p = derive_params(2.0, 0.0, 1.0).unwrap();
        let q = big_q_pair(&p, unshifted_q_angle(&p));
        let sq = q[0].anticommutator(&q[0]).unwrap() * 0.5;
        assert!((sq.parts[SZ].constant.re + p.omega / 2.0).abs() < 1e-12);
    }

    #[test]
    fn paired_spectrum() {
        for g in [0.0, 1.0] {
            let p = derive_params(2.0, 0.0, g).unwrap();
            let s = susy_spectrum_check(&p, 20).unwrap();
            assert!(s.ground.abs() < 1e-6);
            assert!(!s.up.is_empty() && s.down.len() >= 2);
            assert!(s.pairing_residual < 1e-6 * p.omega);
        }
    }

    #[test]
    fn rejects_other_regions() {
        let p = derive_params(0.5, 0.0, 1.0).unwrap();
        assert!(matches!(build_pauli_hamiltonian(&p), Err(Error::RegionMismatch { .. })));
    }
}
