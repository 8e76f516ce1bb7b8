//! Run configuration: JSON config file plus command-line overrides.

use gslie::expr::{parse, SampleDomain};
use gslie::gs::GSEquation;
use gslie::rational::parse_rational;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationConfig {
    pub a: String,
    pub p: String,
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "G")]
    pub g: String,
}

impl Default for EquationConfig {
    fn default() -> Self {
        EquationConfig {
            a: "-1".into(),
            p: "2".into(),
            f: "1".into(),
            g: "0".into(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub equation: EquationConfig,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub x_range: [f64; 2],
    pub t_range: [f64; 2],
    pub c_range: [f64; 2],
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            equation: EquationConfig::default(),
            seed: 2024,
            samples: 200,
            tol: 1e-8,
            x_range: [0.5, 3.0],
            t_range: [-2.0, 2.0],
            c_range: [-2.0, 2.0],
        }
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    pub fn load(path: &str) -> Result<RunConfig, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read {path}: {e}")))?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| ConfigError(format!("cannot parse {path}: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.tol <= 0.0 {
            return Err(ConfigError("tol must be positive".into()));
        }
        if self.samples < 1 {
            return Err(ConfigError("samples must be at least 1".into()));
        }
        for (name, range) in [
            ("x_range", self.x_range),
            ("t_range", self.t_range),
            ("c_range", self.c_range),
        ] {
            if range[0] > range[1] {
                return Err(ConfigError(format!("{name} is empty")));
            }
        }
        self.build_equation()?;
        Ok(())
    }

    pub fn build_equation(&self) -> Result<GSEquation, ConfigError> {
        let a = parse_rational(&self.equation.a)
            .ok_or_else(|| ConfigError(format!("a is not a rational: {}", self.equation.a)))?;
        let p = parse_rational(&self.equation.p)
            .ok_or_else(|| ConfigError(format!("p is not a rational: {}", self.equation.p)))?;
        let f = parse(&self.equation.f)
            .map_err(|e| ConfigError(format!("F does not parse: {e}")))?;
        let g = parse(&self.equation.g)
            .map_err(|e| ConfigError(format!("G does not parse: {e}")))?;
        GSEquation::new(a, p, f, g).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn sample_domain(&self) -> SampleDomain {
        SampleDomain {
            x_range: (self.x_range[0], self.x_range[1]),
            other_range: (self.t_range[0], self.t_range[1]),
        }
    }

    /// Is the configured equation the default worked instance?
    pub fn is_default_equation(&self) -> bool {
        let d = RunConfig::default();
        match (self.build_equation(), d.build_equation()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}
