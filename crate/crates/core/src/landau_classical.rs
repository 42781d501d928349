//! Classical Landau problem with balanced loss-gain: parameters, closed-form
//! orbits in all three regions, orbit centers, the `γ → 0` family and the Hall drift.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::sync::Arc;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frame::{frame_from_parts, CanonicalFrame};
use crate::linalg::RMatrix;
use crate::representations::{build_landau, landau_r, RepresentationBundle};
use crate::linalg::Tolerances;
use crate::system::{equations_of_motion, rk4_visit, LinearPotential, SystemSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    I,
    II,
    III,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::I => "I",
            Region::II => "II",
            Region::III => "III",
        };
        f.write_str(s)
    }
}

impl Region {
    pub fn eta(self) -> [f64; 2] {
        match self {
            Region::I => [1.0, 1.0],
            Region::II => [1.0, -1.0],
            Region::III => [-1.0, -1.0],
        }
    }
}

pub(crate) fn expect_region(found: Region, expected: Region) -> Result<()> {
    if found != expected {
        return Err(Error::RegionMismatch { expected: expected.to_string(), found: found.to_string() });
    }
    Ok(())
}

/// Derived quantities of the Landau representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandauParams {
    pub b: f64,
    pub c: f64,
    pub gamma: f64,
    pub delta: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `|ω| = √|B² − Δ²|`.
    pub omega: f64,
    pub region: Region,
    pub theta: f64,
    #[serde(skip)]
    pub xi1: Complex64,
    #[serde(skip)]
    pub xi2: Complex64,
    pub phi1: f64,
    pub phi2: f64,
}

pub fn derive_params(b: f64, c: f64, gamma: f64) -> Result<LandauParams> {
    let delta = c.hypot(gamma);
    let scale = b.abs().max(delta).max(1.0);
    if (b.abs() - delta).abs() <= 1e-10 * scale {
        return Err(Error::BoundarySingular(format!("|B| = Δ = {delta}")));
    }
    if gamma == 0.0 && c != 0.0 {
        return Err(Error::GammaZeroUndefined);
    }
    let theta = if gamma == 0.0 {
        FRAC_PI_4
    } else if c > 0.0 {
        // Δ − C = γ²/(Δ + C) avoids cancellation for small γ
        (gamma / (delta + c)).atan()
    } else {
        ((delta - c) / gamma).atan()
    };
    let lambda_plus = (b + delta) / 2.0;
    let lambda_minus = (b - delta) / 2.0;
    let omega = ((b - delta) * (b + delta)).abs().sqrt();
    let region = if b > delta {
        Region::I
    } else if b < -delta {
        Region::III
    } else {
        Region::II
    };
    let (sp, sm) = (lambda_plus.abs().sqrt(), lambda_minus.abs().sqrt());
    let (st, ct) = theta.sin_cos();
    let k = 2.0 / omega.sqrt();
    let xi1 = Complex64::new(sp * ct, sm * st) * k;
    let xi2 = Complex64::new(-sp * st, sm * ct) * k;
    let phi1 = ((sm / sp) * theta.tan()).atan();
    let phi2 = ((sp / sm) * theta.tan()).atan();
    Ok(LandauParams { b, c, gamma, delta, lambda_plus, lambda_minus, omega, region, theta, xi1, xi2, phi1, phi2 })
}

impl LandauParams {
    pub fn bundle(&self) -> RepresentationBundle {
        build_landau(self.b, self.c, self.gamma)
    }

    pub fn spec(&self) -> SystemSpec {
        self.bundle().spec
    }

    /// Rotation by `θ`, the columns being eigenvectors for `λ₊` and `λ₋`.
    pub fn rotation(&self) -> RMatrix {
        let (s, c) = self.theta.sin_cos();
        RMatrix::from_row_slice(2, 2, &[c, -s, s, c])
    }

    /// Frame built from the closed-form rotation.
    pub fn frame(&self) -> CanonicalFrame {
        frame_from_parts(self.rotation(), &[self.lambda_plus, self.lambda_minus], &landau_r())
    }

    /// `ÔS`.
    pub fn os(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.theta.sin_cos();
        let (sp, sm) = (self.lambda_plus.abs().sqrt(), self.lambda_minus.abs().sqrt());
        [[c * sp, -s * sm], [s * sp, c * sm]]
    }

    /// `Z = ξ₁ẋ₂ + ξ₂ẋ₁`.
    pub fn z_of_velocity(&self, v: [f64; 2]) -> Complex64 {
        self.xi1 * v[1] + self.xi2 * v[0]
    }

    /// `M⁻¹` in closed form.
    pub fn m_inverse(&self) -> [[f64; 2]; 2] {
        let det = (self.b * self.b - self.delta * self.delta) / 4.0;
        let (b, c, g) = (self.b, self.c, self.gamma);
        [[(b - c) / 2.0 / det, -g / 2.0 / det], [-g / 2.0 / det, (b + c) / 2.0 / det]]
    }
}

fn mat_vec(m: [[f64; 2]; 2], v: [f64; 2]) -> [f64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// Position and velocity at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub x: [f64; 2],
    pub v: [f64; 2],
}

/// Orbit center and the complex velocity amplitude `Z` at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConstants {
    pub center: [f64; 2],
    pub z: Complex64,
}

/// Frame-coordinate oscillation `(𝓧, 𝓧̇)` relative to the center, for `Z = u + iv`.
fn frame_oscillation(region: Region, w: f64, u: f64, v: f64, t: f64) -> ([f64; 2], [f64; 2]) {
    let k = w.powf(-1.5);
    match region {
        Region::I => {
            let (s, c) = (w * t).sin_cos();
            (
                [-(u * c - v * s) * k, (u * s + v * c) * k],
                [(u * s + v * c) * k * w, (u * c - v * s) * k * w],
            )
        }
        Region::III => {
            let (s, c) = (w * t).sin_cos();
            (
                [(u * c + v * s) * k, (u * s - v * c) * k],
                [(-u * s + v * c) * k * w, (u * c + v * s) * k * w],
            )
        }
        Region::II => {
            let (sh, ch) = ((w * t).sinh(), (w * t).cosh());
            (
                [(u * ch + v * sh) * k, (v * ch + u * sh) * k],
                [(u * sh + v * ch) * k * w, (v * sh + u * ch) * k * w],
            )
        }
    }
}

/// Solution written as center plus `ÔS` times the frame oscillation; linear in `(C₁, C₂, Re Z, Im Z)`.
pub fn frame_solution(p: &LandauParams, k: &IntegrationConstants, t: f64) -> PhasePoint {
    let (xo, vo) = frame_oscillation(p.region, p.omega, k.z.re, k.z.im, t);
    let os = p.os();
    let dx = mat_vec(os, xo);
    PhasePoint { x: [k.center[0] + dx[0], k.center[1] + dx[1]], v: mat_vec(os, vo) }
}

/// Integration constants for initial data, from the 4×4 linear system obtained
/// by evaluating the solution and its derivative at `t = 0`.
pub fn fit_constants(p: &LandauParams, x0: [f64; 2], v0: [f64; 2]) -> Result<IntegrationConstants> {
    let basis = [
        IntegrationConstants { center: [1.0, 0.0], z: Complex64::ZERO },
        IntegrationConstants { center: [0.0, 1.0], z: Complex64::ZERO },
        IntegrationConstants { center: [0.0, 0.0], z: Complex64::ONE },
        IntegrationConstants { center: [0.0, 0.0], z: Complex64::I },
    ];
    let mut a = Matrix4::zeros();
    for (col, k) in basis.iter().enumerate() {
        let s = frame_solution(p, k, 0.0);
        a.set_column(col, &Vector4::new(s.x[0], s.x[1], s.v[0], s.v[1]));
    }
    let rhs = Vector4::new(x0[0], x0[1], v0[0], v0[1]);
    let sol = a.lu().solve(&rhs).ok_or_else(|| Error::BoundarySingular("integration constants not determined".into()))?;
    Ok(IntegrationConstants { center: [sol[0], sol[1]], z: Complex64::new(sol[2], sol[3]) })
}

/// Closed-form orbit in amplitude-phase form.
///
/// Region I: `x₁ = C₁ − A₁cos(ωt + χ − φ₁)`, `x₂ = C₂ + A₂sin(ωt + χ − φ₂)`.
/// Region III: `x₁ = C₁ + A₁cos(ωt − χ + φ₁)`, `x₂ = C₂ + A₂sin(ωt − χ + φ₂)`.
/// Here `A_k = |ξ_k||Z|/(2ω)` and `χ = arg Z`.
/// Region II: `X = C + a·ÔS(cosh(ωt + u₀), sinh(ωt + u₀))` with
/// `a = sgn(Re Z)·√((Z² + Z*²)/2)/ω^{3/2}` and `tanh u₀ = Im Z / Re Z`.
pub fn closed_form(p: &LandauParams, region: Region, k: &IntegrationConstants, t: f64) -> Result<PhasePoint> {
    expect_region(p.region, region)?;
    let w = p.omega;
    let [c1, c2] = k.center;
    match region {
        Region::I | Region::III => {
            let chi = k.z.arg();
            let a1 = p.xi1.norm() * k.z.norm() / (2.0 * w);
            let a2 = p.xi2.norm() * k.z.norm() / (2.0 * w);
            Ok(if region == Region::I {
                let (p1, p2) = (w * t + chi - p.phi1, w * t + chi - p.phi2);
                PhasePoint {
                    x: [c1 - a1 * p1.cos(), c2 + a2 * p2.sin()],
                    v: [a1 * w * p1.sin(), a2 * w * p2.cos()],
                }
            } else {
                let (p1, p2) = (w * t - chi + p.phi1, w * t - chi + p.phi2);
                PhasePoint {
                    x: [c1 + a1 * p1.cos(), c2 + a2 * p2.sin()],
                    v: [-a1 * w * p1.sin(), a2 * w * p2.cos()],
                }
            })
        }
        Region::II => {
            let (u, v) = (k.z.re, k.z.im);
            if v.abs() >= u.abs() {
                return Err(Error::ComplexBranch(format!("Z² + Z*² = {:.6e} is not positive", 2.0 * (u * u - v * v))));
            }
            let zz = k.z * k.z + k.z.conj() * k.z.conj();
            let amp = u.signum() * (zz.re / 2.0).sqrt() / w.powf(1.5);
            let u0 = (v / u).atanh();
            let arg = w * t + u0;
            let os = p.os();
            let dx = mat_vec(os, [arg.cosh(), arg.sinh()]);
            let dv = mat_vec(os, [arg.sinh(), arg.cosh()]);
            Ok(PhasePoint {
                x: [c1 + amp * dx[0], c2 + amp * dx[1]],
                v: [amp * w * dv[0], amp * w * dv[1]],
            })
        }
    }
}

/// Conserved orbit center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MotionConstants {
    /// `X + ½RM⁻¹Ẋ`, equal to `ÔS(𝓧 + (1/ω)Rη𝓧̇)`.
    pub c_vec: [f64; 2],
    /// `𝓧 + (1/ω)Rη𝓧̇` in frame coordinates.
    pub frame_center: [f64; 2],
}

pub fn constants_of_motion(p: &LandauParams, region: Region, x: [f64; 2], v: [f64; 2]) -> Result<MotionConstants> {
    expect_region(p.region, region)?;
    let mv = mat_vec(p.m_inverse(), v);
    // R = [[0, 1], [−1, 0]]
    let c_vec = [x[0] + 0.5 * mv[1], x[1] - 0.5 * mv[0]];
    let frame = p.frame();
    let xc = frame.position_map() * nalgebra::DVector::from_column_slice(&x);
    let vc = frame.position_map() * nalgebra::DVector::from_column_slice(&v);
    let eta = region.eta();
    let rv = [eta[1] * vc[1], -eta[0] * vc[0]];
    let frame_center = [xc[0] + rv[0] / p.omega, xc[1] + rv[1] / p.omega];
    Ok(MotionConstants { c_vec, frame_center })
}

/// Centered orbits with `x₁ = |A|cos(ωt + φ₁)` and `ω² = B² − C² − γ²`, smooth as `γ → 0`:
/// `x₂ = (√(B² − C²)/(B + C))·|A|·cos(ωt + φ₁ + arg(γ + iω))`.
pub fn gamma_zero_limit(b: f64, c: f64, gamma: f64, amp: f64, phi1: f64, t: f64) -> Result<[f64; 2]> {
    if (b.abs() - c.abs()).abs() <= 1e-12 * b.abs().max(1.0) {
        return Err(Error::BoundarySingular(format!("B = ±C = {b}")));
    }
    let w2 = b * b - c * c - gamma * gamma;
    if w2 <= 0.0 {
        return Err(Error::RegionMismatch { expected: "I or III".into(), found: "II".into() });
    }
    let w = w2.sqrt();
    let k = (b * b - c * c).sqrt() / (b + c);
    let shift = w.atan2(gamma);
    Ok([amp * (w * t + phi1).cos(), k * amp * (w * t + phi1 + shift).cos()])
}

/// `V = −(E/ω²)(Bx₁ − γx₂)`, the uniform field along `x₁` for `C = 0`.
pub fn hall_potential(b: f64, gamma: f64, e: f64) -> LinearPotential {
    let w2 = b * b - gamma * gamma;
    LinearPotential { coef: vec![-e * b / w2, e * gamma / w2] }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HallDrift {
    pub velocity: [f64; 2],
    /// `arctan(B/γ)`, in radians.
    pub angle: f64,
}

fn check_hall(b: f64, gamma: f64) -> Result<()> {
    if (b.abs() - gamma.abs()).abs() <= 1e-12 * b.abs().max(1.0) {
        return Err(Error::BoundarySingular(format!("B = ±γ = {b}")));
    }
    if b <= gamma.abs() {
        let found = if b < -gamma.abs() { "III" } else { "II" };
        return Err(Error::RegionMismatch { expected: "I".into(), found: found.into() });
    }
    Ok(())
}

/// Drift `(−Eγ/ω², −EB/ω²)` and Hall angle.
pub fn hall_drift(b: f64, gamma: f64, e: f64) -> Result<HallDrift> {
    check_hall(b, gamma)?;
    let w2 = b * b - gamma * gamma;
    Ok(HallDrift { velocity: [-e * gamma / w2, -e * b / w2], angle: (b / gamma).atan() })
}

pub fn hall_spec(p: &LandauParams, e: f64) -> SystemSpec {
    p.spec().with_potential(Arc::new(hall_potential(p.b, p.gamma, e)))
}

/// Exact Hall orbit: uniform drift plus the field-free orbit of the remaining velocity.
pub fn hall_solve(p: &LandauParams, e: f64, x0: [f64; 2], v0: [f64; 2], t: f64) -> Result<PhasePoint> {
    if p.c != 0.0 {
        return Err(Error::InvalidArgument("Hall solution requires C = 0".into()));
    }
    let d = hall_drift(p.b, p.gamma, e)?;
    let k = fit_constants(p, x0, [v0[0] - d.velocity[0], v0[1] - d.velocity[1]])?;
    let s = closed_form(p, Region::I, &k, t)?;
    Ok(PhasePoint {
        x: [s.x[0] + d.velocity[0] * t, s.x[1] + d.velocity[1] * t],
        v: [s.v[0] + d.velocity[0], s.v[1] + d.velocity[1]],
    })
}

/// Mean velocity of the orbit started at rest at the origin, averaged over the
/// whole cyclotron periods that fit in `t_max`.
pub fn hall_mean_velocity(p: &LandauParams, e: f64, t_max: f64, dt: f64) -> Result<[f64; 2]> {
    expect_region(p.region, Region::I)?;
    let period = 2.0 * std::f64::consts::PI / p.omega;
    let periods = (t_max / period).floor();
    if periods < 1.0 {
        return Err(Error::InvalidArgument(format!("t_max = {t_max} is shorter than one period {period}")));
    }
    let t = periods * period;
    let eom = equations_of_motion(&hall_spec(p, e), &Tolerances::default())?;
    let y = rk4_visit(&eom, &[0.0; 4], t, dt, |_, _| {})?;
    Ok([y[0] / t, y[1] / t])
}

/// Predicted ratio of the minor to major axis of Region I orbits, `√(λ₋/λ₊)`.
pub fn orbit_axis_ratio(p: &LandauParams) -> f64 {
    (p.lambda_minus.abs() / p.lambda_plus.abs()).sqrt()
}
