use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Units of the problem: reduced Planck constant, speed of light and rest mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysConstants {
    pub hbar: f64,
    pub c: f64,
    pub m0: f64,
}

impl Default for PhysConstants {
    fn default() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            m0: 1.0,
        }
    }
}

impl PhysConstants {
    pub fn new(hbar: f64, c: f64, m0: f64) -> Result<Self> {
        let k = Self { hbar, c, m0 };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("hbar", self.hbar), ("c", self.c), ("m0", self.m0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConstants(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        if !self.compton_momentum().is_finite() || !self.rest_energy().is_finite() {
            return Err(Error::InvalidConstants(
                "m0*c or m0*c^2 overflows".to_string(),
            ));
        }
        Ok(())
    }

    /// `m0 c`, the momentum scale.
    pub fn compton_momentum(&self) -> f64 {
        self.m0 * self.c
    }

    /// `m0 c^2`.
    pub fn rest_energy(&self) -> f64 {
        self.m0 * self.c * self.c
    }

    /// `ħ / (m0 c)`, the position scale.
    pub fn compton_length(&self) -> f64 {
        self.hbar / self.compton_momentum()
    }

    /// `ħ / (m0 c^2)`, the time scale.
    pub fn compton_time(&self) -> f64 {
        self.hbar / self.rest_energy()
    }

    pub fn with_c(self, c: f64) -> Self {
        Self { c, ..self }
    }
}

/// Relativistic energy `E_p = sqrt(p^2 c^2 + m0^2 c^4)`.
pub fn energy(p: f64, k: &PhysConstants) -> f64 {
    (p * k.c).hypot(k.rest_energy())
}

/// Kinetic part `E_p - m0 c^2`, computed without cancellation.
pub fn kinetic_energy(p: f64, k: &PhysConstants) -> f64 {
    let pc = p * k.c;
    pc * pc / (energy(p, k) + k.rest_energy())
}

/// Charge sign λ of a one-particle state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChargeSign {
    #[serde(rename = "+1")]
    Positive,
    #[serde(rename = "-1")]
    Negative,
}

impl ChargeSign {
    pub fn value(self) -> f64 {
        match self {
            ChargeSign::Positive => 1.0,
            ChargeSign::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            ChargeSign::Positive => ChargeSign::Negative,
            ChargeSign::Negative => ChargeSign::Positive,
        }
    }

    /// `(Θ(λ), Θ(-λ))`: which component of a Φ-spinor the charge occupies.
    pub fn selector(self) -> (f64, f64) {
        match self {
            ChargeSign::Positive => (1.0, 0.0),
            ChargeSign::Negative => (0.0, 1.0),
        }
    }
}

impl std::fmt::Display for ChargeSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ChargeSign::Positive => "+1",
            ChargeSign::Negative => "-1",
        })
    }
}

impl std::str::FromStr for ChargeSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" | "positive" => Ok(ChargeSign::Positive),
            "-1" | "-" | "negative" => Ok(ChargeSign::Negative),
            other => Err(Error::InvalidConfig(format!(
                "charge sign must be +1 or -1, got {other:?}"
            ))),
        }
    }
}
