//! Physical inputs and the dimensionless scaled model.
//!
//! Gauss appear only here; everything downstream works in atomic units with
//! the field measured in units of `B₀`.

use crate::special_math::lambert_w0;
use crate::{Error, Result};

/// Field (gauss) at which the Landau gap equals one Hartree.
pub const B0_GAUSS: f64 = 2.35e9;

/// Default upper limit on the nuclear charge.
pub const DEFAULT_MAX_CHARGE: f64 = 10.0;

/// Scaling factor `L(B) = 2·W₀(√B/2)` for a field `B` in units of `B₀`.
pub fn scale_factor(field_au: f64) -> Result<f64> {
    if !(field_au > 0.0 && field_au.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "field must be positive and finite (got {field_au} B0)"
        )));
    }
    Ok(2.0 * lambert_w0(0.5 * field_au.sqrt())?)
}

/// A physical configuration: field strength, internuclear distance and
/// nuclear charge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelInput {
    /// Magnetic field in gauss.
    pub field_gauss: f64,
    /// Internuclear distance in Bohr radii.
    pub distance: f64,
    /// Nuclear charge of each nucleus.
    pub charge: f64,
}

impl ModelInput {
    pub fn new(field_gauss: f64, distance: f64, charge: f64) -> Result<Self> {
        Self::with_charge_cap(field_gauss, distance, charge, DEFAULT_MAX_CHARGE)
    }

    /// H₂⁺: unit nuclear charge.
    pub fn hydrogen(field_gauss: f64, distance: f64) -> Result<Self> {
        Self::new(field_gauss, distance, 1.0)
    }

    pub fn with_charge_cap(
        field_gauss: f64,
        distance: f64,
        charge: f64,
        max_charge: f64,
    ) -> Result<Self> {
        if !(field_gauss > 0.0 && field_gauss.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "field must be positive and finite (got {field_gauss} G)"
            )));
        }
        if !(distance > 0.0 && distance.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "internuclear distance must be positive and finite (got {distance})"
            )));
        }
        if !(charge >= 1.0 && charge <= max_charge) {
            return Err(Error::InvalidInput(format!(
                "nuclear charge must lie in [1, {max_charge}] (got {charge})"
            )));
        }
        Ok(Self {
            field_gauss,
            distance,
            charge,
        })
    }

    pub fn field_au(&self) -> f64 {
        self.field_gauss / B0_GAUSS
    }
}

/// Dimensionless parameters of the scaled problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledModel {
    /// `B / B₀`.
    pub field_au: f64,
    /// Length scale `L(B)`.
    pub scale: f64,
    /// Half-separation of the delta wells, `a = Z·R·L/2`.
    pub half_separation: f64,
    pub charge: f64,
    pub distance: f64,
}

impl ScaledModel {
    pub fn new(input: &ModelInput) -> Result<Self> {
        let field_au = input.field_au();
        let scale = scale_factor(field_au)?;
        Ok(Self {
            field_au,
            scale,
            half_separation: input.charge * input.distance * scale / 2.0,
            charge: input.charge,
            distance: input.distance,
        })
    }
}
