use std::sync::Arc;

use serde::Serialize;

use super::config::{ScenarioConfig, SystemConfig};
use super::{par_map, write_file, write_json, CliError, CliResult, Context, Csv};
use crate::error::Error;
use crate::frame::classify;
use crate::landau_classical::{
    closed_form, constants_of_motion, derive_params, fit_constants, hall_drift, hall_mean_velocity, hall_potential,
    hall_solve, LandauParams, PhasePoint, Region,
};
use crate::quantum::fock::{landau_spectrum, Level};
use crate::quantum::hall::{hall_quantum, shifted_oscillator_levels};
use crate::representations::{
    build_beta_modified, build_landau, build_pairwise, build_tridiagonal, build_uniform, chain_gauge, RepresentationBundle,
    RepresentationKind,
};
use crate::susy::{build_supercharges, susy_spectrum_check, SupersymmetryReport, SusySpectrum};
use crate::system::{check_balance, derive_matrices, equations_of_motion, hamiltonian_value, rk4_visit, BalanceReport};

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

pub fn landau_params(s: &SystemConfig) -> CliResult<LandauParams> {
    Ok(derive_params(s.b, s.c, s.gamma)?)
}

fn require_landau(s: &SystemConfig, what: &str) -> CliResult<()> {
    if s.representation != RepresentationKind::Landau {
        return Err(config_error(format!("{what} needs representation = \"landau\", got \"{}\"", s.representation)));
    }
    Ok(())
}

/// Builds the configured system, with the uniform field attached when `E ≠ 0`.
pub fn build_system(s: &SystemConfig) -> CliResult<RepresentationBundle> {
    if s.e != 0.0 && (s.representation != RepresentationKind::Landau || s.c != 0.0) {
        return Err(config_error("an electric field E needs the Landau representation with C = 0"));
    }
    let chain = |kind: &str| {
        if s.n < 2 {
            Err(config_error(format!("{kind} representation needs N ≥ 2, got {}", s.n)))
        } else {
            Ok(())
        }
    };
    let blocks = || vec![crate::system::BlockMap::identity(); s.pairs];
    let bundle = match s.representation {
        RepresentationKind::Landau => {
            let delta = s.c.hypot(s.gamma);
            if (s.b.abs() - delta).abs() <= 1e-10 * s.b.abs().max(delta).max(1.0) {
                return Err(Error::BoundarySingular(format!("|B| = √(C² + γ²) = {delta}")).into());
            }
            let mut b = build_landau(s.b, s.c, s.gamma);
            if s.e != 0.0 {
                hall_drift(s.b, s.gamma, s.e)?;
                b.spec = b.spec.with_potential(Arc::new(hall_potential(s.b, s.gamma, s.e)));
            }
            b
        }
        RepresentationKind::Pairwise => build_pairwise(s.pairs, s.gamma, s.alpha, blocks())?,
        RepresentationKind::BetaModified => build_beta_modified(s.pairs, s.gamma, s.alpha, s.beta1, s.beta2, blocks())?,
        RepresentationKind::Tridiagonal => {
            chain("tridiagonal")?;
            build_tridiagonal(s.n, s.p, s.q, chain_gauge(s.n))?
        }
        RepresentationKind::Uniform => {
            chain("uniform")?;
            build_uniform(s.n, s.p, s.q, chain_gauge(s.n))?
        }
    };
    Ok(bundle)
}

#[derive(Debug, Serialize)]
pub struct ClassifyOutput {
    pub representation: RepresentationKind,
    pub region: String,
    pub region_index: usize,
    pub eta: Vec<i8>,
    pub eigenvalues: Vec<f64>,
    pub analytic_eigenvalues: Vec<f64>,
    pub positive_definite: bool,
    pub balance: BalanceReport,
}

pub fn classify_output(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<ClassifyOutput> {
    let b = build_system(&cfg.system)?;
    let r = classify(&b.spec.big_m, &ctx.tol)?;
    let origin = vec![0.0; b.spec.n];
    let d = derive_matrices(&b.spec, &origin, &ctx.tol)?;
    Ok(ClassifyOutput {
        representation: b.label,
        region: r.label(),
        region_index: r.region_index,
        eta: r.signs.clone(),
        eigenvalues: r.eigenvalues.clone(),
        analytic_eigenvalues: b.analytic_eigenvalues.clone(),
        positive_definite: b.positive_definite,
        balance: check_balance(&d.eta_diag(), ctx.tol.alg),
    })
}

pub fn cmd_classify(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<()> {
    let out = classify_output(cfg, ctx)?;
    write_json(&ctx.out, "classify.json", &out)
}

#[derive(Debug, Serialize)]
pub struct SimulateSummary {
    pub representation: RepresentationKind,
    pub region: String,
    pub dt: f64,
    pub t_end: f64,
    pub energy_initial: f64,
    pub energy_final: f64,
    /// `max_t |H(t) − H(0)| / max(1, |H(0)|)`.
    pub energy_drift: f64,
    /// Largest relative change of the orbit centre (Landau only).
    pub center_drift: Option<f64>,
    /// Largest deviation from the closed-form orbit relative to the orbit size (Landau only).
    pub closed_form_error: Option<f64>,
}

pub fn cmd_simulate(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<()> {
    let (summary, csv) = simulate(cfg, ctx)?;
    write_file(&ctx.out, "trajectory.csv", &csv.into_string())?;
    write_json(&ctx.out, "simulate.json", &summary)
}

/// Integrates the configured system, returning the summary and the sampled trajectory.
pub fn simulate(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<(SimulateSummary, Csv)> {
    let sc = &cfg.simulate;
    let b = build_system(&cfg.system)?;
    let n = b.spec.n;
    let x0 = sc.x0.clone().unwrap_or_else(|| vec![0.0; n]);
    let v0 = sc.v0.clone().unwrap_or_else(|| (0..n).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect());
    if x0.len() != n || v0.len() != n {
        return Err(config_error(format!("simulate.x0 and simulate.v0 need {n} entries")));
    }
    if sc.stride == 0 {
        return Err(config_error("simulate.stride must be positive"));
    }
    let region = classify(&b.spec.big_m, &ctx.tol)?.label();
    let eom = equations_of_motion(&b.spec, &ctx.tol)?;
    let minv_energy = |x: &[f64], v: &[f64]| hamiltonian_value(&b.spec, x, v, &ctx.tol);
    let e0 = minv_energy(&x0, &v0)?;

    // closed form and orbit centre for the planar case
    let landau = if cfg.system.representation == RepresentationKind::Landau { Some(landau_params(&cfg.system)?) } else { None };
    let field = cfg.system.e;
    let reference: Option<Box<dyn Fn(f64) -> Option<PhasePoint>>> = match &landau {
        Some(p) if field != 0.0 => {
            let p = *p;
            let (x, v) = ([x0[0], x0[1]], [v0[0], v0[1]]);
            Some(Box::new(move |t| hall_solve(&p, field, x, v, t).ok()))
        }
        Some(p) => match fit_constants(p, [x0[0], x0[1]], [v0[0], v0[1]]) {
            Ok(k) => {
                let p = *p;
                Some(Box::new(move |t| closed_form(&p, p.region, &k, t).ok()))
            }
            Err(_) => None,
        },
        None => None,
    };
    let center = |x: &[f64], v: &[f64]| -> Option<[f64; 2]> {
        let p = landau.as_ref().filter(|_| field == 0.0)?;
        constants_of_motion(p, p.region, [x[0], x[1]], [v[0], v[1]]).ok().map(|c| c.c_vec)
    };
    let c0 = center(&x0, &v0);

    let mut header: Vec<String> = vec!["t".into()];
    header.extend((1..=n).map(|i| format!("x{i}")));
    header.extend((1..=n).map(|i| format!("v{i}")));
    header.push("energy".into());
    let mut csv = Csv::new(&header.iter().map(String::as_str).collect::<Vec<_>>());

    let (mut energy_drift, mut center_drift, mut cf_err, mut scale) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut cf_ok = reference.is_some();
    let mut step = 0usize;
    let mut energy_final = e0;
    let mut failure = None;
    let y0: Vec<f64> = x0.iter().chain(&v0).copied().collect();
    rk4_visit(&eom, &y0, sc.t_end, sc.dt, |t, y| {
        let (x, v) = y.split_at(n);
        let e = match minv_energy(x, v) {
            Ok(e) => e,
            Err(err) => {
                failure = Some(err);
                return;
            }
        };
        energy_final = e;
        energy_drift = energy_drift.max((e - e0).abs() / e0.abs().max(1.0));
        if let (Some(c0), Some(c)) = (c0, center(x, v)) {
            let d = (c[0] - c0[0]).hypot(c[1] - c0[1]) / c0[0].hypot(c0[1]).max(1.0);
            center_drift = center_drift.max(d);
        }
        if let Some(r) = &reference {
            match r(t) {
                Some(s) => {
                    cf_err = cf_err.max((x[0] - s.x[0]).hypot(x[1] - s.x[1]));
                    scale = scale.max(s.x[0].hypot(s.x[1]));
                }
                None => cf_ok = false,
            }
        }
        if step.is_multiple_of(sc.stride) || t == sc.t_end {
            let mut row = vec![t];
            row.extend_from_slice(y);
            row.push(e);
            csv.row(&row);
        }
        step += 1;
    })?;
    if let Some(err) = failure {
        return Err(err.into());
    }
    let summary = SimulateSummary {
        representation: b.label,
        region,
        dt: sc.dt,
        t_end: sc.t_end,
        energy_initial: e0,
        energy_final,
        energy_drift,
        center_drift: c0.map(|_| center_drift),
        closed_form_error: (cf_ok && scale > 0.0).then(|| cf_err / scale),
    };
    Ok((summary, csv))
}

#[derive(Debug, Serialize)]
pub struct SpectrumPoint {
    pub gamma: f64,
    pub omega: f64,
    pub levels: Vec<Level>,
    pub analytic: Vec<f64>,
    pub spacing: Option<f64>,
    pub truncation_warning: bool,
}

pub fn spectrum_points(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<Vec<SpectrumPoint>> {
    let s = &cfg.system;
    require_landau(s, "spectrum")?;
    let gammas = if cfg.spectrum.gammas.is_empty() { vec![s.gamma] } else { cfg.spectrum.gammas.clone() };
    let params = gammas
        .iter()
        .map(|&g| landau_params(&SystemConfig { gamma: g, ..s.clone() }))
        .collect::<CliResult<Vec<_>>>()?;
    let (n_max, k) = (cfg.spectrum.n_max, cfg.spectrum.levels);
    par_map(&params, ctx.jobs, |p| landau_spectrum(p, n_max, k).map(|sp| (*p, sp)))
        .into_iter()
        .map(|r| {
            let (p, sp) = r?;
            let e: Vec<f64> = sp.levels.iter().map(|l| l.energy).collect();
            Ok(SpectrumPoint {
                gamma: p.gamma,
                omega: p.omega,
                analytic: (0..k).map(|n| (n as f64 + 0.5) * p.omega).collect(),
                spacing: (e.len() >= 2).then(|| e[1] - e[0]),
                levels: sp.levels,
                truncation_warning: sp.truncation_warning,
            })
        })
        .collect()
}

pub fn cmd_spectrum(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<()> {
    let points = spectrum_points(cfg, ctx)?;
    let mut csv = Csv::new(&["gamma", "n", "energy", "analytic", "degeneracy"]);
    for pt in &points {
        for (n, l) in pt.levels.iter().enumerate() {
            csv.row(&[pt.gamma, n as f64, l.energy, pt.analytic[n], l.degeneracy as f64]);
        }
    }
    write_file(&ctx.out, "spectrum.csv", &csv.into_string())?;
    write_json(&ctx.out, "spectrum.json", &points)
}

#[derive(Debug, Serialize)]
pub struct HallSummary {
    pub drift: [f64; 2],
    pub angle_rad: f64,
    pub angle_deg: f64,
    pub measured_velocity: [f64; 2],
    pub effective_field: [f64; 2],
    pub quantum_velocity: [f64; 2],
    /// Largest relative gap between the closed-form levels and the one-dimensional diagonalization.
    pub level_error: f64,
}

pub fn cmd_hall(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<()> {
    let (summary, csv) = hall(cfg, ctx)?;
    write_file(&ctx.out, "hall.csv", &csv.into_string())?;
    write_json(&ctx.out, "hall.json", &summary)
}

pub fn hall(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<(HallSummary, Csv)> {
    let s = &cfg.system;
    let h = &cfg.hall;
    require_landau(s, "hall")?;
    let p = landau_params(s)?;
    if p.region != Region::I || p.c != 0.0 {
        return Err(Error::RegionMismatch { expected: "I with C = 0".into(), found: format!("{} with C = {}", p.region, p.c) }.into());
    }
    let drift = hall_drift(p.b, p.gamma, s.e)?;
    let measured = hall_mean_velocity(&p, s.e, h.t_end, h.dt)?;
    let rows = par_map(&h.k2, ctx.jobs, |&k2| {
        let q = hall_quantum(&p, s.e, k2, h.levels)?;
        let oracle = shifted_oscillator_levels(p.omega, q.field_magnitude, k2, h.basis);
        Ok::<_, Error>((q, oracle))
    });
    let mut csv = Csv::new(&["k2", "n", "analytic", "diagonalized", "relative_error"]);
    let (mut level_error, mut last) = (0.0f64, None);
    for r in rows {
        let (q, oracle) = r?;
        for (n, &e) in q.energies.iter().enumerate() {
            let rel = ((oracle.energies[n] - e) / e).abs();
            level_error = level_error.max(rel);
            csv.row(&[q.k2, n as f64, e, oracle.energies[n], rel]);
        }
        last = Some(q);
    }
    let q = match last {
        Some(q) => q,
        None => hall_quantum(&p, s.e, 0.0, 1)?,
    };
    let summary = HallSummary {
        drift: drift.velocity,
        angle_rad: drift.angle,
        angle_deg: drift.angle.to_degrees(),
        measured_velocity: measured,
        effective_field: q.effective_field,
        quantum_velocity: q.velocity,
        level_error,
    };
    Ok((summary, csv))
}

#[derive(Debug, Serialize)]
pub struct SusyOutput {
    pub algebra: SupersymmetryReport,
    pub spectrum: SusySpectrum,
}

pub fn cmd_susy(cfg: &ScenarioConfig, ctx: &Context) -> CliResult<()> {
    require_landau(&cfg.system, "susy")?;
    let p = landau_params(&cfg.system)?;
    let out = SusyOutput { algebra: build_supercharges(&p)?, spectrum: susy_spectrum_check(&p, cfg.susy.n_max)? };
    write_json(&ctx.out, "susy.json", &out)
}
