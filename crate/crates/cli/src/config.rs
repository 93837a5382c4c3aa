//! Run configuration: built-in defaults, overridden by a flat JSON file,
//! overridden by command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rtoa::dynamics::QuadratureConfig;
use rtoa::{Error, PhysConstants};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!(
                "unsupported format {other:?} (expected csv or json)"
            )),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Format,
    pub emit_plot_script: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub constants: PhysConstants,
    pub quadrature: QuadratureConfig,
    pub output: OutputConfig,
    /// Outputs depend only on the inputs; there is no random state.
    pub deterministic: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            constants: PhysConstants::default(),
            quadrature: QuadratureConfig::default(),
            output: OutputConfig::default(),
            deterministic: true,
        }
    }
}

/// The config file: one flat object, every key optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub hbar: Option<f64>,
    pub c: Option<f64>,
    pub m0: Option<f64>,
    pub epsilon: Option<f64>,
    pub epsilon_ladder: Option<Vec<f64>>,
    pub q_max: Option<f64>,
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
    pub emit_plot_script: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))
    }
}

/// Values given on the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub hbar: Option<f64>,
    pub c: Option<f64>,
    pub m0: Option<f64>,
    pub epsilon: Option<f64>,
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
    pub emit_plot_script: bool,
}

impl RunConfig {
    pub fn resolve(file: Option<&FileConfig>, cli: &Overrides) -> Result<Self, Error> {
        let mut cfg = RunConfig::default();
        if let Some(f) = file {
            let k = &mut cfg.constants;
            k.hbar = f.hbar.unwrap_or(k.hbar);
            k.c = f.c.unwrap_or(k.c);
            k.m0 = f.m0.unwrap_or(k.m0);
            let q = &mut cfg.quadrature;
            q.epsilon = f.epsilon.unwrap_or(q.epsilon);
            if let Some(l) = &f.epsilon_ladder {
                q.epsilon_ladder = l.clone();
            }
            q.q_max = f.q_max.or(q.q_max);
            q.abs_tol = f.abs_tol.unwrap_or(q.abs_tol);
            q.rel_tol = f.rel_tol.unwrap_or(q.rel_tol);
            q.max_subdivisions = f.max_subdivisions.unwrap_or(q.max_subdivisions);
            cfg.output.path = f.path.clone();
            cfg.output.format = f.format.unwrap_or_default();
            cfg.output.emit_plot_script = f.emit_plot_script.unwrap_or(false);
        }
        let k = &mut cfg.constants;
        k.hbar = cli.hbar.unwrap_or(k.hbar);
        k.c = cli.c.unwrap_or(k.c);
        k.m0 = cli.m0.unwrap_or(k.m0);
        cfg.quadrature.epsilon = cli.epsilon.unwrap_or(cfg.quadrature.epsilon);
        if cli.path.is_some() {
            cfg.output.path = cli.path.clone();
        }
        if let Some(f) = cli.format {
            cfg.output.format = f;
        }
        cfg.output.emit_plot_script |= cli.emit_plot_script;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Error> {
        self.constants.validate()?;
        self.quadrature.validate()?;
        if self.output.emit_plot_script && self.output.path.is_none() {
            return Err(Error::InvalidConfig(
                "a plot script needs an output file to reference (--output)".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_override_defaults() {
        let file: FileConfig =
            serde_json::from_str(r#"{"hbar": 2.0, "c": 3.0, "epsilon": 0.2}"#).unwrap();
        let cli = Overrides {
            c: Some(5.0),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(Some(&file), &cli).unwrap();
        assert_eq!(cfg.constants.hbar, 2.0);
        assert_eq!(cfg.constants.c, 5.0);
        assert_eq!(cfg.constants.m0, 1.0);
        assert_eq!(cfg.quadrature.epsilon, 0.2);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<FileConfig>(r#"{"hbar": 1, "speed": 2}"#).is_err());
    }

    #[test]
    fn invalid_values_fail_validation() {
        let cli = Overrides {
            m0: Some(-1.0),
            ..Default::default()
        };
        assert!(RunConfig::resolve(None, &cli).is_err());
        let cli = Overrides {
            emit_plot_script: true,
            ..Default::default()
        };
        assert!(RunConfig::resolve(None, &cli).is_err());
    }
}
