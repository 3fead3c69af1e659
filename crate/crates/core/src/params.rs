//! Mixture parameters: species masses, collision-frequency constants, the
//! gas constant of the unit system, and the relaxation scales.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Molar gas constant R = K_B N_A in J/(mol K).
pub const MOLAR_GAS_CONSTANT: f64 = 8.3145;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Aap,
    Gs,
    Bbgsp,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Aap, Model::Gs, Model::Bbgsp];

    pub fn name(self) -> &'static str {
        match self {
            Model::Aap => "aap",
            Model::Gs => "gs",
            Model::Bbgsp => "bbgsp",
        }
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "aap" => Ok(Model::Aap),
            "gs" => Ok(Model::Gs),
            "bbgsp" => Ok(Model::Bbgsp),
            other => Err(Error::InvalidParams(format!("unknown model `{other}`"))),
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Unit system of a run. No implicit conversion happens between the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    /// Boltzmann constant absorbed into the temperature (K = 1).
    Abstract,
    /// Distributions per mole, K = R.
    Molar,
}

impl UnitSystem {
    pub fn gas_constant(self) -> f64 {
        match self {
            UnitSystem::Abstract => 1.0,
            UnitSystem::Molar => MOLAR_GAS_CONSTANT,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            UnitSystem::Abstract => "abstract",
            UnitSystem::Molar => "molar",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureParams {
    pub masses: Vec<f64>,
    /// Dense row-major L x L matrix of collision constants λ_sk.
    pub lambda: Vec<f64>,
    pub units: UnitSystem,
    /// Gas constant K of the unit system.
    pub k_gas: f64,
    pub eps: f64,
    /// Inter-species scale. Only the BBGSP model distinguishes it from `eps`.
    pub kappa: f64,
    pub model: Model,
}

impl MixtureParams {
    pub fn new(
        masses: Vec<f64>,
        lambda: Vec<Vec<f64>>,
        units: UnitSystem,
        model: Model,
        eps: f64,
        kappa: f64,
    ) -> Result<Self> {
        let n = masses.len();
        if lambda.len() != n || lambda.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParams(format!(
                "lambda must be {n}x{n} to match the species count"
            )));
        }
        let params = Self {
            masses,
            lambda: lambda.into_iter().flatten().collect(),
            units,
            k_gas: units.gas_constant(),
            eps,
            kappa,
            model,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn species(&self) -> usize {
        self.masses.len()
    }

    #[inline]
    pub fn lam(&self, s: usize, k: usize) -> f64 {
        self.lambda[s * self.masses.len() + k]
    }

    pub fn with_model(&self, model: Model) -> Self {
        Self {
            model,
            ..self.clone()
        }
    }

    pub fn with_scales(&self, eps: f64, kappa: f64) -> Self {
        Self {
            eps,
            kappa,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.masses.len();
        if n == 0 {
            return Err(Error::InvalidParams("at least one species is required".into()));
        }
        if self.lambda.len() != n * n {
            return Err(Error::InvalidParams("lambda has the wrong size".into()));
        }
        if let Some(m) = self.masses.iter().find(|m| !(**m > 0.0) || !m.is_finite()) {
            return Err(Error::InvalidParams(format!("mass {m} is not positive")));
        }
        for s in 0..n {
            for k in 0..n {
                let v = self.lam(s, k);
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(Error::InvalidParams(format!("lambda[{s}][{k}] = {v} is negative")));
                }
                if v != self.lam(k, s) {
                    return Err(Error::InvalidParams(format!(
                        "lambda is not symmetric at ({s}, {k})"
                    )));
                }
            }
        }
        if !(self.eps > 0.0) || !(self.kappa > 0.0) {
            return Err(Error::InvalidParams("eps and kappa must be positive".into()));
        }
        if !(self.k_gas > 0.0) {
            return Err(Error::InvalidParams("gas constant must be positive".into()));
        }
        Ok(())
    }

    /// Relaxation weight of the pair (s, k): 1/eps for intra-species terms and
    /// 1/kappa for cross terms in the BBGSP model; 1/eps everywhere otherwise.
    #[inline]
    pub fn pair_weight(&self, s: usize, k: usize) -> f64 {
        if self.model == Model::Bbgsp && s != k {
            1.0 / self.kappa
        } else {
            1.0 / self.eps
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_lambda() {
        let err = MixtureParams::new(
            vec![1.0, 2.0],
            vec![vec![1.0, 2.0], vec![3.0, 1.0]],
            UnitSystem::Abstract,
            Model::Aap,
            1.0,
            1.0,
        );
        assert!(err.is_err());
    }

    #[test]
    fn rejects_non_positive_mass_and_scales() {
        let lam = vec![vec![1.0]];
        assert!(MixtureParams::new(vec![0.0], lam.clone(), UnitSystem::Abstract, Model::Gs, 1.0, 1.0).is_err());
        assert!(MixtureParams::new(vec![1.0], lam, UnitSystem::Abstract, Model::Gs, 0.0, 1.0).is_err());
    }

    #[test]
    fn model_parses_case_insensitively() {
        assert_eq!("BBGSP".parse::<Model>().unwrap(), Model::Bbgsp);
        assert!("foo".parse::<Model>().is_err());
    }
}
