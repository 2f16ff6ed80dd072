//! Field parameters and boundary conditions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the Klein-Gordon field: rest mass `m ≥ 0` and curvature
/// coupling `ξ` (natural units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldParams {
    mass: f64,
    coupling_xi: f64,
}

impl FieldParams {
    /// Validates `mass ≥ 0` and finiteness of both parameters.
    pub fn new(mass: f64, coupling_xi: f64) -> Result<Self> {
        if !mass.is_finite() || mass < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "field mass must be finite and non-negative, got {mass}"
            )));
        }
        if !coupling_xi.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "curvature coupling must be finite, got {coupling_xi}"
            )));
        }
        Ok(Self { mass, coupling_xi })
    }

    /// Minimally coupled field (`ξ = 0`) of the given mass.
    pub fn minimal(mass: f64) -> Result<Self> {
        Self::new(mass, 0.0)
    }

    /// Rest mass `m`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Curvature coupling `ξ`.
    pub fn coupling_xi(&self) -> f64 {
        self.coupling_xi
    }
}

/// Boundary condition imposed on the cavity walls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    /// The field vanishes on the wall.
    Dirichlet,
    /// The normal derivative of the field vanishes on the wall.
    Neumann,
}

impl BoundaryCondition {
    /// Lower-case name used in configuration files.
    pub fn name(&self) -> &'static str {
        match self {
            BoundaryCondition::Dirichlet => "dirichlet",
            BoundaryCondition::Neumann => "neumann",
        }
    }
}

impl std::str::FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dirichlet" => Ok(BoundaryCondition::Dirichlet),
            "neumann" => Ok(BoundaryCondition::Neumann),
            other => Err(Error::InvalidArgument(format!(
                "unknown boundary condition `{other}` (expected dirichlet or neumann)"
            ))),
        }
    }
}

impl std::fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_mass_rejected() {
        assert!(FieldParams::new(-1.0, 0.0).is_err());
        assert!(FieldParams::new(f64::NAN, 0.0).is_err());
        assert!(FieldParams::new(0.0, f64::INFINITY).is_err());
        assert!(FieldParams::new(0.0, 0.25).is_ok());
    }

    #[test]
    fn boundary_condition_parses() {
        assert_eq!("Neumann".parse::<BoundaryCondition>().unwrap(), BoundaryCondition::Neumann);
        assert_eq!("dirichlet".parse::<BoundaryCondition>().unwrap(), BoundaryCondition::Dirichlet);
        assert!("robin".parse::<BoundaryCondition>().is_err());
    }
}
