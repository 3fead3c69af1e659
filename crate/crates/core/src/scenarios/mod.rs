//! Built-in experiments, their configuration format and the runner.

pub mod config;
pub mod rh;
pub mod runner;

pub use config::{FluidConfig, FluidSystem, InitialData, Overrides, ScenarioConfig, ScenarioKind};
pub use rh::{blend, rankine_hugoniot, rh_factors, MachReading, RhStates};
pub use runner::{compare_fields, plateau_errors, run_fluid, run_kinetic, run_scenario, FieldComparison, FluidRun, KineticRun, PairDistances, ScenarioReport, SpeciesDeviation, Summary};

use crate::error::{Error, Result};

const BUILTIN: [(&str, &str); 5] = [
    ("discrepancy-4gas", include_str!("../../scenarios/discrepancy-4gas.toml")),
    ("ns-global-4gas", include_str!("../../scenarios/ns-global-4gas.toml")),
    ("ns-multi-4gas", include_str!("../../scenarios/ns-multi-4gas.toml")),
    ("he-ar-shock", include_str!("../../scenarios/he-ar-shock.toml")),
    ("ne-ar-stationary-shock", include_str!("../../scenarios/ne-ar-stationary-shock.toml")),
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTIN.iter().map(|(n, _)| *n).collect()
}

pub fn builtin_source(name: &str) -> Result<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).ok_or_else(|| Error::UnknownScenario(name.to_string()))
}

pub fn load_builtin(name: &str) -> Result<ScenarioConfig> {
    ScenarioConfig::from_toml_str(builtin_source(name)?)
}

/// A built-in name, or a path to a scenario file.
pub fn load(name_or_path: &str) -> Result<ScenarioConfig> {
    if let Ok(src) = builtin_source(name_or_path) {
        return ScenarioConfig::from_toml_str(src);
    }
    let path = std::path::Path::new(name_or_path);
    if path.extension().is_some_and(|e| e == "toml") && path.exists() {
        return ScenarioConfig::from_toml_str(&std::fs::read_to_string(path)?);
    }
    Err(Error::UnknownScenario(name_or_path.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_parses_and_names_match() {
        for name in builtin_names() {
            let cfg = load_builtin(name).unwrap();
            assert_eq!(cfg.name, name);
            let text = cfg.to_toml_string().unwrap();
            assert_eq!(ScenarioConfig::from_toml_str(&text).unwrap(), cfg);
        }
        assert!(matches!(load("no-such-scenario"), Err(Error::UnknownScenario(_))));
    }
}
