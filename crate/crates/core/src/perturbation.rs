//! Second-order Rayleigh–Schrödinger energy of `p²/2 - W(z)` expanded about
//! the exactly solvable delta Hamiltonian.
//!
//! The perturbation is `ΔV = δ(z - a) - W(z)` on the half-line, so
//!
//! `e₂ = e₀ + ⟨ψ₀|ΔV|ψ₀⟩ - ⟨ψ₀|ΔV Ĝ ΔV|ψ₀⟩`
//!
//! with `Ĝ` the reduced resolvent of the delta model at `e₀`. The delta part
//! of `ΔV` is always applied exactly by sampling at `z = a`.

use crate::delta_model::{DeltaGround, ReducedResolvent};
use crate::effective_potential::ScaledPotential;
use crate::quadrature::{
    integrate2d_prepared, integrate_semi_infinite, Domain2d, QuadResult, Span, Tolerance,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationConfig {
    /// Tolerance for one-dimensional integrals.
    pub inner: Tolerance,
    /// Outer tolerance of the double integral (its inner integrals run ten
    /// times tighter).
    pub outer: Tolerance,
}

impl Default for PerturbationConfig {
    fn default() -> Self {
        Self {
            inner: Tolerance::INNER,
            outer: Tolerance::OUTER,
        }
    }
}

impl PerturbationConfig {
    pub fn tightened(self, factor: f64) -> Self {
        Self {
            inner: self.inner.tightened(factor),
            outer: self.outer.tightened(factor),
        }
    }
}

/// A quadrature-derived number with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl From<QuadResult> for Estimate {
    fn from(r: QuadResult) -> Self {
        Self {
            value: r.value,
            error: r.error_estimate,
        }
    }
}

/// The three pieces of `⟨ψ₀|ΔV Ĝ ΔV|ψ₀⟩`, writing `f = ψ₀W`:
///
/// - `diagonal = ψ₀(a)² Ĝ(a,a)`
/// - `cross = -2 ψ₀(a) ∫ Ĝ(a,y) f(y) dy`
/// - `double = ∬ f(x) Ĝ(x,y) f(y) dx dy`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondOrderPieces {
    pub diagonal: f64,
    pub cross: Estimate,
    pub double: Estimate,
}

impl SecondOrderPieces {
    pub fn total(&self) -> f64 {
        self.diagonal + self.cross.value + self.double.value
    }

    pub fn error(&self) -> f64 {
        self.cross.error + self.double.error
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    pub e0: f64,
    pub first_order: f64,
    /// The (non-negative) second-order trace, subtracted from `e0`.
    pub second_order: f64,
    pub e2: f64,
    /// Sum of the quadrature error estimates of every piece.
    pub quadrature_error: f64,
    pub pieces: SecondOrderPieces,
}

fn breakpoints(ground: &DeltaGround, w: &impl ScaledPotential) -> Vec<f64> {
    let mut points = w.breakpoints();
    points.push(ground.half_separation);
    points.retain(|&p| p > 0.0 && p.is_finite());
    points.sort_by(f64::total_cmp);
    points.dedup();
    points
}

/// `⟨ψ₀|ΔV|ψ₀⟩ = ψ₀(a)² - ∫₀^∞ ψ₀² W dz`.
pub fn first_order_term(
    ground: &DeltaGround,
    w: &impl ScaledPotential,
    config: &PerturbationConfig,
) -> Result<Estimate> {
    let bps = breakpoints(ground, w);
    let r = integrate_semi_infinite(
        |z| {
            let psi = ground.psi(z);
            psi * psi * w.value(z)
        },
        0.0,
        2.0 * ground.alpha,
        &bps,
        config.inner,
    )?;
    Ok(Estimate {
        value: ground.peak().powi(2) - r.value,
        error: r.error_estimate,
    })
}

/// `⟨ψ₀|ΔV Ĝ ΔV|ψ₀⟩`, piece by piece.
pub fn second_order_term(
    ground: &DeltaGround,
    w: &impl ScaledPotential,
    config: &PerturbationConfig,
) -> Result<SecondOrderPieces> {
    let resolvent = ground.reduced_resolvent()?;
    let pieces = second_order_pieces(ground, &resolvent, w, config, false)?;
    let total = pieces.total();
    if total < -(pieces.error() + 1e-9) {
        return Err(Error::Consistency(format!(
            "negative second-order trace {total:e} (error estimate {:e})",
            pieces.error()
        )));
    }
    Ok(pieces)
}

/// `swap_axes` integrates the double piece with `y` outermost; the value
/// must not change beyond the error estimate.
pub(crate) fn second_order_pieces(
    ground: &DeltaGround,
    resolvent: &ReducedResolvent,
    w: &impl ScaledPotential,
    config: &PerturbationConfig,
    swap_axes: bool,
) -> Result<SecondOrderPieces> {
    let a = ground.half_separation;
    let peak = ground.peak();
    let bps = breakpoints(ground, w);
    let source = |x: f64| ground.psi(x) * w.value(x);

    let diagonal = peak * peak * resolvent.eval(a, a);

    let source_a = resolvent.source(a);
    let cross = integrate_semi_infinite(
        |y| {
            let gy = resolvent.free(a, y) + resolvent.correction(source_a, resolvent.source(y));
            gy * source(y)
        },
        0.0,
        ground.alpha,
        &bps,
        config.inner,
    )?;

    let axis = Span::SemiInfinite {
        lo: 0.0,
        decay_rate: ground.alpha,
    };
    let domain = Domain2d::new(axis, axis)
        .with_breakpoints(&bps, &bps)
        .with_diagonal_kink();
    let kernel = |x: f64, y: f64, sx: (f64, f64), sy: (f64, f64)| {
        resolvent.free(x, y) + resolvent.correction(sx, sy)
    };
    let double = integrate2d_prepared(
        |x| (x, source(x), resolvent.source(x)),
        |&(x, fx, sx), y| {
            if fx == 0.0 {
                return 0.0;
            }
            let sy = resolvent.source(y);
            let g = if swap_axes {
                kernel(y, x, sy, sx)
            } else {
                kernel(x, y, sx, sy)
            };
            fx * g * source(y)
        },
        &domain,
        config.outer,
    )?;

    Ok(SecondOrderPieces {
        diagonal,
        cross: Estimate {
            value: -2.0 * peak * cross.value,
            error: 2.0 * peak * cross.error_estimate,
        },
        double: double.into(),
    })
}

/// Second-order energy of the scaled effective Hamiltonian `p²/2 - W`.
pub fn e2(
    ground: &DeltaGround,
    w: &impl ScaledPotential,
    config: &PerturbationConfig,
) -> Result<EnergyBreakdown> {
    let first = first_order_term(ground, w, config)?;
    let pieces = second_order_term(ground, w, config)?;
    let second_order = pieces.total();
    Ok(EnergyBreakdown {
        e0: ground.energy,
        first_order: first.value,
        second_order,
        e2: ground.energy + first.value - second_order,
        quadrature_error: first.error + pieces.error(),
        pieces,
    })
}
