//! Coulomb attraction of the two nuclei averaged over the lowest Landau
//! orbital, in scaled coordinates.
//!
//! For one nucleus
//!
//! `V∓(z) = ∫₀^∞ e^{-u} [c² + 2uZ²/B]^{-1/2} du`,  `c = (z ∓ a)/L`,
//!
//! and the substitution `t² = c² + 2uZ²/B` gives the closed form
//! `V∓(z) = (√(πB/2)/Z)·erfcx(|c|·√(B/2)/Z)`.

use crate::quadrature::{integrate, Tolerance};
use crate::scaling::ScaledModel;
use crate::special_math::erfcx;
use crate::Result;

/// A one-dimensional attractive potential `W(z)` on the half-line, entering
/// the Hamiltonian as `p²/2 - W(z)`.
pub trait ScaledPotential: Sync {
    fn value(&self, z: f64) -> f64;

    /// Points (besides the well position) where quadrature should split:
    /// kinks, or the edges of narrow peaks.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

impl<F: Fn(f64) -> f64 + Sync> ScaledPotential for F {
    fn value(&self, z: f64) -> f64 {
        self(z)
    }
}

/// Which nucleus: `Minus` sits at `z = +a` (argument `z - a`), `Plus` at
/// `z = -a` (argument `z + a`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Evaluation {
    #[default]
    ClosedForm,
    Quadrature,
}

/// Beyond `t = 6.5` the Gaussian weight is below e^{-42}.
const GAUSSIAN_CUT: f64 = 6.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectivePotential {
    model: ScaledModel,
    /// `√(πB/2)/Z`, the value on top of a nucleus.
    peak: f64,
    /// `√(B/2)/Z`.
    arg_scale: f64,
    evaluation: Evaluation,
}

impl EffectivePotential {
    pub fn new(model: &ScaledModel) -> Self {
        let arg_scale = (0.5 * model.field_au).sqrt() / model.charge;
        Self {
            model: *model,
            peak: std::f64::consts::PI.sqrt() * arg_scale,
            arg_scale,
            evaluation: Evaluation::ClosedForm,
        }
    }

    pub fn with_evaluation(mut self, evaluation: Evaluation) -> Self {
        self.evaluation = evaluation;
        self
    }

    pub fn model(&self) -> &ScaledModel {
        &self.model
    }

    pub fn evaluation(&self) -> Evaluation {
        self.evaluation
    }

    /// `c = (z ∓ a)/L`.
    pub fn offset(&self, z: f64, side: Side) -> f64 {
        let a = self.model.half_separation;
        match side {
            Side::Minus => (z - a) / self.model.scale,
            Side::Plus => (z + a) / self.model.scale,
        }
    }

    /// One nucleus' contribution with the configured evaluation path. A
    /// quadrature failure yields NaN, which downstream integrators reject.
    pub fn v_half(&self, z: f64, side: Side) -> f64 {
        match self.evaluation {
            Evaluation::ClosedForm => self.v_half_closed(z, side),
            Evaluation::Quadrature => self.v_half_quadrature(z, side).unwrap_or(f64::NAN),
        }
    }

    pub fn v_half_closed(&self, z: f64, side: Side) -> f64 {
        let c = self.offset(z, side).abs();
        self.peak * erfcx(c * self.arg_scale)
    }

    /// Direct quadrature of `∫₀^∞ 2t e^{-t²} (c² + s t²)^{-1/2} dt` (`u = t²`
    /// in the defining integral, `s = 2Z²/B`). The integrand switches on
    /// over `t ~ κ = |c|/√s`, which can be many decades below 1; the
    /// substitution `t = κ sinh w` turns it into the smooth
    /// `(2|c|/s) sinh w · e^{-κ² sinh² w}`.
    pub fn v_half_quadrature(&self, z: f64, side: Side) -> Result<f64> {
        let c = self.offset(z, side).abs();
        let s = 1.0 / (self.arg_scale * self.arg_scale);
        if c == 0.0 {
            return Ok(self.peak);
        }
        let knee = c / s.sqrt();
        let prefactor = 2.0 * c / s;
        let r = integrate(
            |w: f64| {
                let sh = w.sinh();
                prefactor * sh * (-(knee * sh).powi(2)).exp()
            },
            0.0,
            (GAUSSIAN_CUT / knee).asinh(),
            &[(1.0 / knee).asinh()],
            Tolerance::new(1e-14, 1e-12),
        )?;
        Ok(r.value)
    }

    /// `V_L = V⁻ + V⁺`; even in `z`.
    pub fn v_total(&self, z: f64) -> f64 {
        self.v_half(z, Side::Minus) + self.v_half(z, Side::Plus)
    }

    /// `V_L(z)/L²`, the potential of the scaled effective Hamiltonian.
    pub fn scaled(&self, z: f64) -> f64 {
        self.v_total(z) / (self.model.scale * self.model.scale)
    }
}

impl ScaledPotential for EffectivePotential {
    fn value(&self, z: f64) -> f64 {
        self.scaled(z)
    }

    /// The nucleus at `a` plus the edges of its peak, whose width in `z` is
    /// `L/arg_scale`.
    fn breakpoints(&self) -> Vec<f64> {
        let a = self.model.half_separation;
        let width = self.model.scale / self.arg_scale;
        let mut points = vec![a, a + width];
        if a - width > 0.0 {
            points.push(a - width);
        }
        points
    }
}
