//! Landau levels in a uniform electric field.
//!
//! In the frame coordinates the field enters as `𝓥 = −½𝓔·𝓧`. Rotating `𝓔` onto
//! the first axis and passing to the Landau gauge with `𝓟₂ = k₂` leaves
//! `𝓟₁² + (ω²/4)(𝓧₁ − 2k₂/ω)² − ½|𝓔|𝓧₁`, a displaced oscillator.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::landau_classical::{expect_region, hall_drift, hall_spec, LandauParams, Region};

/// `𝓔 = −2 SÔᵀ∇V`, read off the potential in the frame.
pub fn effective_field(p: &LandauParams, e: f64) -> [f64; 2] {
    let spec = hall_spec(p, e);
    let g = spec.potential.gradient(&[0.0, 0.0]);
    let m = p.frame().momentum_map();
    let f = &m * DVector::from_vec(g) * -2.0;
    [f[0], f[1]]
}

/// `(n + ½)ω − (|𝓔|² + 4k₂ω|𝓔|)/(4ω²)`.
pub fn hall_energy(omega: f64, field: f64, k2: f64, n: usize) -> f64 {
    (n as f64 + 0.5) * omega - (field * field + 4.0 * k2 * omega * field) / (4.0 * omega * omega)
}

/// Oscillator centre `2k₂/ω + |𝓔|/ω²` along the rotated first axis.
pub fn hall_center(omega: f64, field: f64, k2: f64) -> f64 {
    2.0 * k2 / omega + field / (omega * omega)
}

/// `J₂/ρ = 2(k₂ − (ω/2)𝓧₁)` in the rotated frame; `J₁ = 0`.
pub fn frame_current(omega: f64, k2: f64, x1: f64) -> f64 {
    2.0 * (k2 - omega / 2.0 * x1)
}

#[derive(Debug, Clone, Serialize)]
pub struct QuantumHall {
    pub effective_field: [f64; 2],
    pub field_magnitude: f64,
    /// Rotation taking `𝓔` onto the positive first axis.
    pub rotation_angle: f64,
    pub k2: f64,
    pub center: f64,
    /// `E_{n,k₂}` for `n = 0, 1, …`.
    pub energies: Vec<f64>,
    /// Mean of `J/ρ` in any level, unrotated frame coordinates.
    pub frame_velocity: [f64; 2],
    /// The same mapped back by `ÔS`.
    pub velocity: [f64; 2],
    /// Drift of the classical orbits, for comparison.
    pub classical_drift: [f64; 2],
}

pub fn hall_quantum(p: &LandauParams, e: f64, k2: f64, levels: usize) -> Result<QuantumHall> {
    expect_region(p.region, Region::I)?;
    if p.c != 0.0 {
        return Err(Error::InvalidArgument("the Hall setup takes C = 0".into()));
    }
    let f = effective_field(p, e);
    let mag = f[0].hypot(f[1]);
    let theta1 = -f[1].atan2(f[0]);
    let w = p.omega;
    let energies = (0..levels).map(|n| hall_energy(w, mag, k2, n)).collect();
    let center = hall_center(w, mag, k2);
    // mean current −|𝓔|/ω along the rotated second axis, rotated back
    let along = frame_current(w, k2, center);
    let (s, c) = theta1.sin_cos();
    let frame_velocity = [along * s, along * c];
    let os = p.os();
    let velocity = [
        os[0][0] * frame_velocity[0] + os[0][1] * frame_velocity[1],
        os[1][0] * frame_velocity[0] + os[1][1] * frame_velocity[1],
    ];
    Ok(QuantumHall {
        effective_field: f,
        field_magnitude: mag,
        rotation_angle: theta1,
        k2,
        center,
        energies,
        frame_velocity,
        velocity,
        classical_drift: hall_drift(p.b, p.gamma, e)?.velocity,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OscillatorLevels {
    pub energies: Vec<f64>,
    /// `⟨𝓧₁⟩` in each eigenstate.
    pub mean_positions: Vec<f64>,
}

/// Diagonalizes `𝓟₁² + (ω²/4)𝓧₁² − (k₂ω + ½|𝓔|)𝓧₁ + k₂²` in `basis` oscillator states of length `√(2/ω)`.
pub fn shifted_oscillator_levels(omega: f64, field: f64, k2: f64, basis: usize) -> OscillatorLevels {
    let ell = (2.0 / omega).sqrt();
    let force = k2 * omega + 0.5 * field;
    // (ω/2)(p̃² + x̃²) − force·ℓ·x̃ + k₂²
    let mut h = DMatrix::<f64>::zeros(basis, basis);
    let mut x = DMatrix::<f64>::zeros(basis, basis);
    for n in 0..basis {
        h[(n, n)] = omega * (n as f64 + 0.5) + k2 * k2;
        if n + 1 < basis {
            let v = ((n + 1) as f64 / 2.0).sqrt();
            x[(n, n + 1)] = v;
            x[(n + 1, n)] = v;
        }
    }
    h -= &x * (force * ell);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..basis).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let energies = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mean_positions = order
        .iter()
        .map(|&k| {
            let v = eig.eigenvectors.column(k);
            ell * (v.transpose() * &x * v)[(0, 0)]
        })
        .collect();
    OscillatorLevels { energies, mean_positions }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landau_classical::derive_params;

    #[test]
    fn effective_field_components() {
        let p = derive_params(2.0, 0.0, 1.0).unwrap();
        let f = effective_field(&p, 1.0);
        assert!((f[0] - 1.0 / (2.0 * p.lambda_plus).sqrt()).abs() < 1e-14);
        assert!((f[1] + 1.0 / (2.0 * p.lambda_minus).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn zero_field_gives_landau_levels() {
        let p = derive_params(2.0, 0.0, 1.0).unwrap();
        let q = hall_quantum(&p, 0.0, 0.7, 3).unwrap();
        for (n, e) in q.energies.iter().enumerate() {
            assert!((e - (n as f64 + 0.5) * p.omega).abs() < 1e-14);
        }
        assert_eq!(q.velocity, [0.0, 0.0]);
    }

    #[test]
    fn oracle_matches_closed_form() {
        let p = derive_params(2.0, 0.0, 1.0).unwrap();
        let q0 = hall_quantum(&p, 1.0, 0.0, 1).unwrap();
        for k2 in [-1.0, 0.0, 1.0] {
            let lv = shifted_oscillator_levels(p.omega, q0.field_magnitude, k2, 120);
            for n in 0..=5 {
                let exact = hall_energy(p.omega, q0.field_magnitude, k2, n);
                assert!(((lv.energies[n] - exact) / exact).abs() < 1e-10, "n={n} k2={k2}");
                let c = hall_center(p.omega, q0.field_magnitude, k2);
                assert!((lv.mean_positions[n] - c).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn quantum_current_matches_classical_drift() {
        for (b, g, e, k2) in [(2.0, 1.0, 1.0, 0.3), (3.0, -1.2, -0.5, -1.0), (2.0, 0.0, 2.0, 0.0)] {
            let p = derive_params(b, 0.0, g).unwrap();
            let q = hall_quantum(&p, e, k2, 1).unwrap();
            for i in 0..2 {
                assert!((q.velocity[i] - q.classical_drift[i]).abs() < 1e-12, "{b} {g} {e}");
            }
        }
    }

    #[test]
    fn rejects_nonzero_c() {
        let p = derive_params(2.0, 0.3, 1.0).unwrap();
        assert!(matches!(hall_quantum(&p, 1.0, 0.0, 1), Err(Error::InvalidArgument(_))));
    }
}
