//! Total energy `E₂(B, R, Z) = Z²[L²·e₂ + 1/R]`, its minimum over the
//! internuclear distance, and the classification of the curve's shape as a
//! function of the nuclear charge.

use rayon::prelude::*;

use crate::delta_model::DeltaGround;
use crate::effective_potential::{EffectivePotential, Evaluation};
use crate::perturbation::{e2, EnergyBreakdown, PerturbationConfig};
use crate::scaling::{ModelInput, ScaledModel};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceConfig {
    pub perturbation: PerturbationConfig,
    pub evaluation: Evaluation,
    /// Number of log-spaced points of the coarse scan.
    pub scan_points: usize,
    /// Distance window `(R_min, R_max)` of the scan, in bohr.
    pub window: (f64, f64),
    /// Convergence threshold of the refinement, relative to `R`.
    pub distance_tolerance: f64,
    /// Relative agreement required of two large-`R` samples.
    pub plateau_tolerance: f64,
    /// Charge resolution of the critical-charge bisection.
    pub charge_tolerance: f64,
    /// Charge window of the critical-charge search.
    pub charge_window: (f64, f64),
    /// Charge step of the coarse scan preceding the bisection.
    pub charge_step: f64,
}

impl Default for SurfaceConfig {
    fn default() -> Self {
        Self {
            perturbation: PerturbationConfig::default(),
            evaluation: Evaluation::ClosedForm,
            scan_points: 40,
            window: (0.01, 5.0),
            distance_tolerance: 1e-5,
            plateau_tolerance: 5e-3,
            charge_tolerance: 0.01,
            charge_window: (1.0, 5.0),
            charge_step: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TotalEnergy {
    pub input: ModelInput,
    pub model: ScaledModel,
    pub ground: DeltaGround,
    pub breakdown: EnergyBreakdown,
    /// `E₂` in hartree.
    pub total: f64,
}

/// Full pipeline for one geometry.
pub fn total_energy(input: &ModelInput, cfg: &SurfaceConfig) -> Result<TotalEnergy> {
    let model = ScaledModel::new(input)?;
    let ground = DeltaGround::solve(model.half_separation)?;
    let w = EffectivePotential::new(&model).with_evaluation(cfg.evaluation);
    let breakdown = e2(&ground, &w, &cfg.perturbation)?;
    let l2 = model.scale * model.scale;
    let total = model.charge * model.charge * (l2 * breakdown.e2 + 1.0 / input.distance);
    Ok(TotalEnergy {
        input: *input,
        model,
        ground,
        breakdown,
        total,
    })
}

/// `E₂` only.
pub fn energy_at(field_gauss: f64, distance: f64, charge: f64, cfg: &SurfaceConfig) -> Result<f64> {
    let input = ModelInput::new(field_gauss, distance, charge)?;
    Ok(total_energy(&input, cfg)?.total)
}

/// `E₂` along a list of distances, evaluated in parallel; order preserved.
pub fn energy_curve(
    field_gauss: f64,
    charge: f64,
    distances: &[f64],
    cfg: &SurfaceConfig,
) -> Result<Vec<f64>> {
    distances
        .par_iter()
        .map(|&r| energy_at(field_gauss, r, charge, cfg))
        .collect()
}

/// `n` log-spaced points covering `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (l0, l1) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumResult {
    /// Equilibrium distance, bohr.
    pub distance: f64,
    /// `E₂` at the equilibrium distance, hartree.
    pub energy: f64,
    /// Scan interval that contained the minimum.
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Lowest interior local minimum of `E₂(R)` in the configured window.
pub fn minimize_over_r(
    field_gauss: f64,
    charge: f64,
    cfg: &SurfaceConfig,
) -> Result<EquilibriumResult> {
    ModelInput::new(field_gauss, cfg.window.0, charge)?;
    if !(cfg.window.0 > 0.0 && cfg.window.1 > cfg.window.0) || cfg.scan_points < 3 {
        return Err(Error::InvalidInput(format!(
            "scan needs 0 < R_min < R_max and ≥ 3 points (got {:?}, {})",
            cfg.window, cfg.scan_points
        )));
    }
    let grid = log_grid(cfg.window.0, cfg.window.1, cfg.scan_points);
    let values = energy_curve(field_gauss, charge, &grid, cfg)?;
    let best = (1..grid.len() - 1)
        .filter(|&i| values[i] <= values[i - 1] && values[i] <= values[i + 1])
        .min_by(|&i, &j| values[i].total_cmp(&values[j]));
    let Some(i) = best else {
        return Err(Error::NoBracket {
            r_lo: cfg.window.0,
            r_hi: cfg.window.1,
        });
    };
    let bracket = (grid[i - 1], grid[i + 1]);
    let (distance, energy, iterations) = brent_minimize(
        |r| energy_at(field_gauss, r, charge, cfg),
        bracket,
        (grid[i], values[i]),
        cfg.distance_tolerance,
    )?;
    Ok(EquilibriumResult {
        distance,
        energy,
        bracket,
        iterations,
    })
}

/// Brent's minimizer (golden section with parabolic steps) on `bracket`,
/// starting from an interior point whose value is known.
pub fn brent_minimize(
    mut f: impl FnMut(f64) -> Result<f64>,
    bracket: (f64, f64),
    start: (f64, f64),
    rel_tol: f64,
) -> Result<(f64, f64, usize)> {
    const GOLDEN: f64 = 0.381_966_011_250_105_1;
    const MAX_ITER: usize = 200;
    let (mut a, mut b) = bracket;
    let (mut x, mut fx) = start;
    let (mut w, mut fw, mut v, mut fv) = (x, fx, x, fx);
    let (mut d, mut e) = (0.0_f64, 0.0_f64);
    for iter in 0..MAX_ITER {
        let mid = 0.5 * (a + b);
        let tol1 = rel_tol * x.abs() + 1e-12;
        let tol2 = 2.0 * tol1;
        if (x - mid).abs() <= tol2 - 0.5 * (b - a) {
            return Ok((x, fx, iter));
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if mid >= x { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= mid { a - x } else { b - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = f(u)?;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            (v, fv, w, fw, x, fx) = (w, fw, x, fx, u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv, w, fw) = (w, fw, u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    Err(Error::NoConvergence {
        function: "brent_minimize",
        residual: b - a,
        iterations: MAX_ITER,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classification {
    /// Global minimum below the dissociation limit.
    Bound,
    /// Local minimum at or above the dissociation limit.
    Resonance,
    /// No interior local minimum.
    Unbound,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Bound => "bound",
            Self::Resonance => "resonance",
            Self::Unbound => "unbound",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dissociation limit of the energy curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dissociation {
    /// Limit `E₂(R → ∞)`, extrapolated from the two plateau samples.
    pub energy: f64,
    /// Distances of the two samples.
    pub distances: (f64, f64),
    /// `E₂` at those distances.
    pub samples: (f64, f64),
}

/// Large-distance limit of `E₂`. Samples at `R_big` and `1.5·R_big` must
/// agree within the plateau tolerance (widening `R_big` up to 3×); the
/// remaining `1/R` tail is then removed by extrapolating the two samples.
pub fn dissociation_energy(
    field_gauss: f64,
    charge: f64,
    r_big: f64,
    cfg: &SurfaceConfig,
) -> Result<Dissociation> {
    let mut last = None;
    for widen in [1.0, 2.0, 3.0] {
        let r1 = r_big * widen;
        let r2 = 1.5 * r1;
        let e = energy_curve(field_gauss, charge, &[r1, r2], cfg)?;
        let (e1, e2) = (e[0], e[1]);
        if (e1 - e2).abs() <= cfg.plateau_tolerance * e2.abs() {
            return Ok(Dissociation {
                energy: (r2 * e2 - r1 * e1) / (r2 - r1),
                distances: (r1, r2),
                samples: (e1, e2),
            });
        }
        last = Some((r1, e1, r2, e2));
    }
    let (r1, e1, r2, e2) = last.expect("at least one widening step");
    Err(Error::PlateauNotReached(format!(
        "E₂({r1}) = {e1} and E₂({r2}) = {e2} differ by more than {}",
        cfg.plateau_tolerance
    )))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    pub classification: Classification,
    pub minimum: Option<EquilibriumResult>,
    /// Always present when a minimum exists. Without one the classification
    /// does not depend on it, and it is omitted if the plateau is not reached.
    pub dissociation: Option<Dissociation>,
    pub charge: f64,
    pub field_gauss: f64,
}

pub fn classify_stability(
    field_gauss: f64,
    charge: f64,
    cfg: &SurfaceConfig,
) -> Result<StabilityReport> {
    let minimum = match minimize_over_r(field_gauss, charge, cfg) {
        Ok(m) => Some(m),
        Err(Error::NoBracket { .. }) => None,
        Err(e) => return Err(e),
    };
    let r_big = minimum.map_or(10.0, |m| (20.0 * m.distance).max(10.0));
    let (classification, dissociation) = match minimum {
        Some(m) => {
            let d = dissociation_energy(field_gauss, charge, r_big, cfg)?;
            let class = if m.energy < d.energy {
                Classification::Bound
            } else {
                Classification::Resonance
            };
            (class, Some(d))
        }
        None => match dissociation_energy(field_gauss, charge, r_big, cfg) {
            Ok(d) => (Classification::Unbound, Some(d)),
            Err(Error::PlateauNotReached(_)) => (Classification::Unbound, None),
            Err(e) => return Err(e),
        },
    };
    Ok(StabilityReport {
        classification,
        minimum,
        dissociation,
        charge,
        field_gauss,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalCharges {
    /// Largest charge with a bound state, to the configured resolution.
    pub bound_state: f64,
    /// Largest charge with any local minimum.
    pub critical: f64,
    /// Coarse scan, sorted by charge.
    pub scan: Vec<(f64, Classification)>,
}

/// Charge thresholds bound→resonance and resonance→unbound. The transitions
/// are located on a coarse scan, which must be monotone, then bisected.
pub fn critical_charges(field_gauss: f64, cfg: &SurfaceConfig) -> Result<CriticalCharges> {
    let (z_lo, z_hi) = cfg.charge_window;
    let steps = ((z_hi - z_lo) / cfg.charge_step).round() as usize;
    let charges: Vec<f64> = (0..=steps)
        .map(|i| z_lo + (z_hi - z_lo) * i as f64 / steps as f64)
        .collect();
    let scan: Vec<(f64, Classification)> = charges
        .par_iter()
        .map(|&z| classify_stability(field_gauss, z, cfg).map(|r| (z, r.classification)))
        .collect::<Result<_>>()?;
    if scan.windows(2).any(|p| p[1].1 < p[0].1) {
        let listing: Vec<String> = scan.iter().map(|(z, c)| format!("{z:.2}:{c}")).collect();
        return Err(Error::NonMonotone(listing.join(" ")));
    }
    let classify = |z: f64| classify_stability(field_gauss, z, cfg).map(|r| r.classification);
    let threshold = |past: Classification| -> Result<f64> {
        let Some(k) = scan.iter().position(|&(_, c)| c > past) else {
            return Ok(z_hi);
        };
        if k == 0 {
            return Ok(z_lo);
        }
        let (mut lo, mut hi) = (scan[k - 1].0, scan[k].0);
        while hi - lo > cfg.charge_tolerance {
            let mid = 0.5 * (lo + hi);
            if classify(mid)? <= past {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    };
    Ok(CriticalCharges {
        bound_state: threshold(Classification::Bound)?,
        critical: threshold(Classification::Resonance)?,
        scan,
    })
}
