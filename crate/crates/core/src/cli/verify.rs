//! `lossgain verify`: every invariant that applies to the configured system.

use serde::Serialize;

use super::commands::{build_system, classify_output, hall, landau_params, simulate, spectrum_points};
use super::config::ScenarioConfig;
use super::{write_json, CliError, CliResult, Context};
use crate::frame::{build_frame, symplectic_residual};
use crate::landau_classical::Region;
use crate::linalg::max_norm;
use crate::quantum::ground::{default_grid, ground_state_eval, Grid};
use crate::quantum::ladder::commutation_table;
use crate::representations::RepresentationKind;
use crate::susy::{build_supercharges, susy_spectrum_check};
use crate::system::derive_matrices;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    fn push(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) {
        // NaN fails
        let pass = residual <= tolerance;
        self.checks.push(Check { name: name.into(), residual, tolerance, pass });
    }
}

pub fn verify_report(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<VerifyReport> {
    let mut r = VerifyReport::default();
    let bundle = build_system(&cfg.system)?;
    let spec = &bundle.spec;
    let class = classify_output(cfg, ctx)?;

    let scale = class.eigenvalues.iter().fold(1.0f64, |m, l| m.max(l.abs()));
    let gap = class.eigenvalues.iter().zip(&class.analytic_eigenvalues).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    r.push("eigenvalues of M match the closed form", gap / scale, 1e-10);
    r.push("gain and loss balance", class.balance.trace.abs(), 1e-10);

    let x0 = cfg.simulate.x0.clone().unwrap_or_else(|| vec![0.0; spec.n]);
    if x0.len() == spec.n {
        let frame = build_frame(spec, &x0, &ctx.tol)?;
        r.push("frame metric equals η", frame.metric_residual(&spec.big_m), 1e-10);
        r.push("frame map is symplectic", symplectic_residual(&frame.phase_space_jacobian()), 1e-10);
        let d = derive_matrices(spec, &x0, &ctx.tol)?;
        let eta_r = frame.eta_r();
        r.push("frame turns 𝓓 into η𝓡", max_norm(&(frame.transform_d(&d.d_mat) - &eta_r)) / max_norm(&eta_r).max(1.0), 1e-10);
    }

    let (sim, _) = simulate(cfg, ctx)?;
    r.push("energy conservation along the RK4 orbit", sim.energy_drift, 1e-8);
    if let Some(c) = sim.center_drift {
        r.push("orbit centre conservation", c, 1e-8);
    }
    if let Some(e) = sim.closed_form_error {
        r.push("RK4 orbit matches the closed form", e, 1e-8);
    }

    if cfg.system.representation != RepresentationKind::Landau {
        return Ok(finish(r));
    }
    let p = landau_params(&cfg.system)?;
    if p.region != Region::I {
        return Ok(finish(r));
    }
    for c in commutation_table(&p)? {
        r.push(format!("ladder: {}", c.name), c.residual, 1e-12);
    }
    let k = cfg.spectrum.levels;
    for pt in spectrum_points(cfg, ctx)? {
        let worst = pt.levels.iter().zip(&pt.analytic).map(|(l, a)| ((l.energy - a) / a).abs()).fold(0.0, f64::max);
        let missing = if pt.levels.len() < k { f64::INFINITY } else { 0.0 };
        r.push(format!("Landau levels (n + ½)ω at γ = {}", pt.gamma), worst + missing, 1e-5);
    }
    if p.c != 0.0 {
        return Ok(finish(r));
    }
    let susy = build_supercharges(&p)?;
    for c in susy.constructions.iter().chain(&susy.q_algebra).chain(&susy.big_q_algebra).chain(&susy.commutes_with_hamiltonian) {
        r.push(format!("supersymmetry: {}", c.name), c.residual, 1e-12);
    }
    let sp = susy_spectrum_check(&p, cfg.susy.n_max)?;
    r.push("supersymmetric ground energy is zero", sp.ground.abs() / p.omega, 1e-5);
    r.push("spin sectors are paired", sp.pairing_residual / p.omega, 1e-5);

    if cfg.system.e != 0.0 {
        let (h, _) = hall(cfg, ctx)?;
        let rel = |a: [f64; 2]| (a[0] - h.drift[0]).hypot(a[1] - h.drift[1]) / h.drift[0].hypot(h.drift[1]);
        r.push("mean orbit velocity equals the Hall drift", rel(h.measured_velocity), 1e-6);
        r.push("quantum current equals the Hall drift", rel(h.quantum_velocity), 1e-12);
        r.push("Hall levels match diagonalization", h.level_error, 1e-10);
    }
    let base = default_grid(&p);
    for &m in &cfg.ground.states {
        let g = ground_state_eval(&p, m, Grid { n: cfg.ground.grid, ..base })?;
        r.push(format!("ground state m = {m} is annihilated by a"), g.residual, 1e-5);
        let ratio = g.ridge_axis_ratio.unwrap_or(g.moment_axis_ratio);
        r.push(format!("ground state m = {m} ridge axis ratio"), (ratio - g.predicted_axis_ratio).abs() / g.predicted_axis_ratio, 1e-2);
    }
    Ok(finish(r))
}

fn finish(mut r: VerifyReport) -> VerifyReport {
    r.passed = r.checks.iter().all(|c| c.pass);
    r
}

pub fn cmd_verify(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<()> {
    let r = verify_report(cfg, ctx)?;
    write_json(&ctx.out, "verify.json", &r)?;
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(failed.join("; ")))
    }
}
