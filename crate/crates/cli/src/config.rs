//! Run configuration: a flat TOML key/value file.
//!
//! Every key is optional; omitted keys take the defaults of
//! [`RunConfig::default`].  Unknown keys are rejected so that typos surface as
//! diagnostics instead of silently falling back to defaults.
//!
//! ```toml
//! scenario = "dce-i"        # dce-i | dce-ii | dce-iii | gw-rigid
//! bc = "dirichlet"          # dirichlet | neumann
//! mass = 0.0
//! length = 3.141592653589793        # interval length (dce-*)
//! lengths = [3.14, 3.14, 3.14]      # box edges (gw-rigid)
//! bands = 6                 # number of interval modes (dce-*)
//! cutoff = 5.0              # frequency cutoff of the box basis (gw-rigid)
//! epsilon = 1e-3
//! omega_drive = 3.0
//! envelope = "constant"     # constant | hann | gaussian, fitted to [t0, tf]
//! t0 = 0.0
//! tf = 10.0
//! checkpoints = 20          # time-series rows (evolve, evolve-exact)
//! tolerance = 1e-9          # resonance detection (resonances)
//! dt = 0.02                 # exact evolution step
//! dt_fd = 0.002             # finite-difference step for V̂ (default dt/10)
//! integrator = "phase-absorbed"    # phase-absorbed | direct
//! quadrature_points = 48    # Gauss-Legendre points per axis for couplings
//! format = "csv"            # csv | json
//! output = "out.csv"        # stdout when absent
//! sweep = false             # validate: add the ε-sweep scaling check
//! inject_sign_error = false # validate: negate a predictor (test mode)
//! ```

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use kgcavity::exact1d::Integrator;
use kgcavity::scenarios::ScenarioKind;
use kgcavity::signal::Envelope;
use kgcavity::BoundaryCondition;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Time window applied to the drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnvelopeChoice {
    /// Unwindowed drive over `[t0, tf]`.
    #[default]
    Constant,
    /// Raised cosine spanning `[t0, tf]`; the walls are at rest at both ends.
    Hann,
    /// Gaussian centred on the window with width `(tf − t0)/8`.
    Gaussian,
}

/// Exact-evolution integrator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegratorChoice {
    #[default]
    PhaseAbsorbed,
    Direct,
}

impl From<IntegratorChoice> for Integrator {
    fn from(c: IntegratorChoice) -> Self {
        match c {
            IntegratorChoice::PhaseAbsorbed => Integrator::PhaseAbsorbed,
            IntegratorChoice::Direct => Integrator::Direct,
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: String,
    pub bc: BoundaryCondition,
    pub mass: f64,
    pub length: f64,
    pub lengths: [f64; 3],
    pub bands: usize,
    pub cutoff: f64,
    pub epsilon: f64,
    pub omega_drive: f64,
    pub envelope: EnvelopeChoice,
    pub t0: f64,
    pub tf: f64,
    pub checkpoints: usize,
    pub tolerance: f64,
    pub dt: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt_fd: Option<f64>,
    pub integrator: IntegratorChoice,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_points: Option<usize>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub sweep: bool,
    pub inject_sign_error: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scenario: ScenarioKind::DceRightOnly.name().to_string(),
            bc: BoundaryCondition::Dirichlet,
            mass: 0.0,
            length: PI,
            lengths: [PI, PI, PI],
            bands: 6,
            cutoff: 5.0,
            epsilon: 1e-3,
            omega_drive: 3.0,
            envelope: EnvelopeChoice::Constant,
            t0: 0.0,
            tf: 10.0,
            checkpoints: 20,
            tolerance: 1e-9,
            dt: 0.02,
            dt_fd: None,
            integrator: IntegratorChoice::PhaseAbsorbed,
            quadrature_points: None,
            format: Format::Csv,
            output: None,
            sweep: false,
            inject_sign_error: false,
        }
    }
}

impl RunConfig {
    /// Parses and validates a TOML document.
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads, parses and validates a configuration file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// The scenario named by `scenario`.
    pub fn scenario_kind(&self) -> Result<ScenarioKind, CliError> {
        self.scenario
            .parse()
            .map_err(|_| CliError::Config(format!("field `scenario`: unknown scenario {:?}", self.scenario)))
    }

    /// The drive window over `[t0, tf]`.
    pub fn envelope(&self) -> Envelope {
        let duration = self.tf - self.t0;
        match self.envelope {
            EnvelopeChoice::Constant => Envelope::Constant,
            EnvelopeChoice::Hann => Envelope::Hann { start: self.t0, duration },
            EnvelopeChoice::Gaussian => Envelope::Gaussian { center: self.t0 + 0.5 * duration, width: duration / 8.0 },
        }
    }

    /// Checks every documented invariant, naming the offending field.
    pub fn validate(&self) -> Result<(), CliError> {
        self.scenario_kind()?;
        let finite = [
            ("mass", self.mass),
            ("length", self.length),
            ("lengths", self.lengths[0]),
            ("lengths", self.lengths[1]),
            ("lengths", self.lengths[2]),
            ("cutoff", self.cutoff),
            ("epsilon", self.epsilon),
            ("omega_drive", self.omega_drive),
            ("t0", self.t0),
            ("tf", self.tf),
            ("tolerance", self.tolerance),
            ("dt", self.dt),
            ("dt_fd", self.dt_fd.unwrap_or(1.0)),
        ];
        for (field, value) in finite {
            if !value.is_finite() {
                return Err(field_error(field, format!("must be finite, got {value}")));
            }
        }
        let positive = [
            ("length", self.length),
            ("lengths", self.lengths[0].min(self.lengths[1]).min(self.lengths[2])),
            ("cutoff", self.cutoff),
            ("omega_drive", self.omega_drive),
            ("dt", self.dt),
            ("dt_fd", self.dt_fd.unwrap_or(1.0)),
        ];
        for (field, value) in positive {
            if value <= 0.0 {
                return Err(field_error(field, format!("must be positive, got {value}")));
            }
        }
        for (field, value) in [("mass", self.mass), ("epsilon", self.epsilon), ("tolerance", self.tolerance)] {
            if value < 0.0 {
                return Err(field_error(field, format!("must be non-negative, got {value}")));
            }
        }
        if self.t0 >= self.tf {
            return Err(field_error("tf", format!("window must satisfy t0 < tf, got [{}, {}]", self.t0, self.tf)));
        }
        if self.bands == 0 {
            return Err(field_error("bands", "must be at least 1".into()));
        }
        if self.checkpoints == 0 {
            return Err(field_error("checkpoints", "must be at least 1".into()));
        }
        if self.quadrature_points == Some(0) {
            return Err(field_error("quadrature_points", "must be at least 1".into()));
        }
        Ok(())
    }
}

fn field_error(field: &str, message: String) -> CliError {
    CliError::Config(format!("field `{field}`: {message}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn unknown_and_invalid_fields_are_named() {
        let err = RunConfig::from_toml("bandz = 3").unwrap_err().to_string();
        assert!(err.contains("bandz"), "{err}");
        let err = RunConfig::from_toml("t0 = 2.0\ntf = 1.0").unwrap_err().to_string();
        assert!(err.contains("`tf`"), "{err}");
        let err = RunConfig::from_toml("scenario = \"dce-iv\"").unwrap_err().to_string();
        assert!(err.contains("`scenario`"), "{err}");
        let err = RunConfig::from_toml("bands = \"six\"").unwrap_err().to_string();
        assert!(err.contains("bands") && err.contains("line 1"), "{err}");
    }

    #[test]
    fn resolved_config_round_trips_through_toml() {
        let cfg = RunConfig { dt_fd: Some(1e-3), envelope: EnvelopeChoice::Hann, ..RunConfig::default() };
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::from_toml(&text).unwrap(), cfg);
    }
}
