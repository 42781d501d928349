//! Scenario files: TOML with one table per subcommand.

use serde::Deserialize;

use crate::representations::RepresentationKind;

pub const DEFAULT_SCENARIO: &str = include_str!("../../configs/default.toml");

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub system: SystemConfig,
    #[serde(default)]
    pub simulate: SimulateConfig,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
    #[serde(default)]
    pub hall: HallConfig,
    #[serde(default)]
    pub susy: SusyConfig,
    #[serde(default)]
    pub ground: GroundConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub representation: RepresentationKind,
    #[serde(default = "two", alias = "B")]
    pub b: f64,
    #[serde(default, alias = "C")]
    pub c: f64,
    #[serde(default = "one")]
    pub gamma: f64,
    #[serde(default = "one_half")]
    pub alpha: f64,
    #[serde(default = "one")]
    pub beta1: f64,
    #[serde(default)]
    pub beta2: f64,
    #[serde(default = "one")]
    pub p: f64,
    #[serde(default = "three_tenths")]
    pub q: f64,
    /// Dimension of the chain representations.
    #[serde(default = "three", alias = "N")]
    pub n: usize,
    /// Number of coordinate pairs in the pairwise representations.
    #[serde(default = "one_usize")]
    pub pairs: usize,
    /// Uniform field along `x₁` (Landau only).
    #[serde(default, alias = "E")]
    pub e: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub x0: Option<Vec<f64>>,
    pub v0: Option<Vec<f64>>,
    #[serde(default = "milli")]
    pub dt: f64,
    #[serde(default = "ten")]
    pub t_end: f64,
    /// Write every `stride`-th step.
    #[serde(default = "hundred")]
    pub stride: usize,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self { x0: None, v0: None, dt: milli(), t_end: ten(), stride: hundred() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    #[serde(default = "thirty")]
    pub n_max: usize,
    #[serde(default = "three")]
    pub levels: usize,
    /// Values of `γ` to sweep; empty means the system value only.
    #[serde(default)]
    pub gammas: Vec<f64>,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self { n_max: thirty(), levels: three(), gammas: Vec::new() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HallConfig {
    #[serde(default = "default_k2")]
    pub k2: Vec<f64>,
    #[serde(default = "six")]
    pub levels: usize,
    #[serde(default = "two_hundred")]
    pub t_end: f64,
    #[serde(default = "milli")]
    pub dt: f64,
    /// Basis size of the one-dimensional check.
    #[serde(default = "one_twenty")]
    pub basis: usize,
}

impl Default for HallConfig {
    fn default() -> Self {
        Self { k2: default_k2(), levels: six(), t_end: two_hundred(), dt: milli(), basis: one_twenty() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SusyConfig {
    #[serde(default = "thirty")]
    pub n_max: usize,
}

impl Default for SusyConfig {
    fn default() -> Self {
        Self { n_max: thirty() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundConfig {
    #[serde(default = "five_twelve")]
    pub grid: usize,
    #[serde(default = "default_states")]
    pub states: Vec<u32>,
}

impl Default for GroundConfig {
    fn default() -> Self {
        Self { grid: five_twelve(), states: default_states() }
    }
}

fn one() -> f64 {
    1.0
}
fn two() -> f64 {
    2.0
}
fn one_half() -> f64 {
    1.5
}
fn three_tenths() -> f64 {
    0.3
}
fn ten() -> f64 {
    10.0
}
fn two_hundred() -> f64 {
    200.0
}
fn milli() -> f64 {
    1e-3
}
fn one_usize() -> usize {
    1
}
fn three() -> usize {
    3
}
fn six() -> usize {
    6
}
fn thirty() -> usize {
    30
}
fn hundred() -> usize {
    100
}
fn one_twenty() -> usize {
    120
}
fn five_twelve() -> usize {
    512
}
fn default_k2() -> Vec<f64> {
    vec![-1.0, 0.0, 1.0]
}
fn default_states() -> Vec<u32> {
    vec![0, 1, 2]
}

pub fn parse(text: &str) -> Result<ScenarioConfig, String> {
    toml::from_str(text).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_landau() {
        let c = parse("[system]\nrepresentation = \"landau\"\nB = 2.0\ngamma = 1.0\n").unwrap();
        assert_eq!(c.system.representation, RepresentationKind::Landau);
        assert_eq!((c.system.b, c.system.gamma, c.system.c), (2.0, 1.0, 0.0));
        assert_eq!(c.spectrum.n_max, 30);
        assert_eq!(c.hall.k2, vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn default_scenario_parses() {
        let c = parse(DEFAULT_SCENARIO).unwrap();
        assert_eq!((c.system.b, c.system.e), (2.0, 1.0));
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = parse("[system]\nrepresentation = \"landau\"\nBB = 2.0\n").unwrap_err();
        assert!(err.contains("BB") && err.contains("line 3"), "{err}");
        let err = parse("[system]\nrepresentation = \"landau\"\nB = \"two\"\n").unwrap_err();
        assert!(err.contains("line 3"), "{err}");
        assert!(parse("[system]\nrepresentation = \"spiral\"\n").is_err());
    }
}
