//! The double-delta Hamiltonian `p²/2 - δ(z-a) - δ(z+a)` restricted to even
//! functions, i.e. to the half-line `z ≥ 0` with a Neumann condition at the
//! origin.
//!
//! Everything here is closed form: the ground state, the free kernel with its
//! first two energy derivatives, and the reduced resolvent at the ground
//! energy built from them.

use crate::special_math::lambert_w0;
use crate::{Error, Result};

/// Ground state of the even double-delta problem.
///
/// `ψ₀(z) = A₂ cosh(α₀z)` for `z < a` and `A₁ e^{-α₀z}` for `z > a`,
/// normalized on the half-line: `∫₀^∞ ψ₀² dz = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaGround {
    pub half_separation: f64,
    /// Decay constant `α₀ ∈ (1, 2]`, the root of `α = 1 + e^{-2aα}`.
    pub alpha: f64,
    /// Ground energy `e₀ = -α₀²/2`.
    pub energy: f64,
    /// `ψ₀(a)`.
    peak: f64,
}

impl DeltaGround {
    pub fn solve(half_separation: f64) -> Result<Self> {
        let a = half_separation;
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "half-separation must be positive and finite (got {a})"
            )));
        }
        let alpha = 1.0 + lambert_w0(2.0 * a * (-2.0 * a).exp())? / (2.0 * a);
        let ground = Self {
            half_separation: a,
            alpha,
            energy: -0.5 * alpha * alpha,
            // A₂e^{αa}/2 · α, rearranged so nothing overflows for large a.
            peak: alpha / (1.0 + 2.0 * a * (-2.0 * a * alpha).exp()).sqrt(),
        };
        let residual = ground.fixed_point_residual();
        if residual > 1e-13 {
            return Err(Error::Consistency(format!(
                "α₀ fixed-point residual {residual:e} at a = {a}"
            )));
        }
        Ok(ground)
    }

    /// `|α₀ - 1 - e^{-2aα₀}|`.
    pub fn fixed_point_residual(&self) -> f64 {
        (self.alpha - 1.0 - (-2.0 * self.half_separation * self.alpha).exp()).abs()
    }

    /// `ψ₀(a)`.
    pub fn peak(&self) -> f64 {
        self.peak
    }

    /// Inner amplitude `A₂ = 2/√(2a + e^{2aα₀})`. Underflows for `a ≳ 350`;
    /// [`psi`](Self::psi) does not depend on it.
    pub fn amplitude_inner(&self) -> f64 {
        let a = self.half_separation;
        2.0 / (2.0 * a + (2.0 * a * self.alpha).exp()).sqrt()
    }

    /// Outer amplitude `A₁ = α₀ e^{2aα₀} A₂ / 2`. Overflows for `a ≳ 350`.
    pub fn amplitude_outer(&self) -> f64 {
        let a = self.half_separation;
        0.5 * self.alpha * (2.0 * a * self.alpha).exp() * self.amplitude_inner()
    }

    pub fn psi(&self, z: f64) -> f64 {
        let a = self.half_separation;
        let k = self.alpha;
        if z >= a {
            self.peak * (-k * (z - a)).exp()
        } else {
            self.peak / k * ((-k * (a - z)).exp() + (-k * (a + z)).exp())
        }
    }

    /// `ψ₀'(z)`; at `z = a` the one-sided limit from above.
    pub fn psi_derivative(&self, z: f64) -> f64 {
        let a = self.half_separation;
        let k = self.alpha;
        if z >= a {
            -k * self.peak * (-k * (z - a)).exp()
        } else {
            self.peak * ((-k * (a - z)).exp() - (-k * (a + z)).exp())
        }
    }

    /// `ψ₀'(a⁻)`.
    pub fn psi_derivative_below(&self) -> f64 {
        let a = self.half_separation;
        self.peak * (1.0 - (-2.0 * self.alpha * a).exp())
    }

    pub fn reduced_resolvent(&self) -> Result<ReducedResolvent> {
        ReducedResolvent::new(self)
    }
}

/// Free half-line kernel `G₀(x, y; ξ)` and its first two `ξ`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub value: f64,
    pub d_xi: f64,
    pub d2_xi: f64,
}

/// Kernel of `(p²/2 - ξ)⁻¹` on `z ≥ 0` with a Neumann condition at 0:
/// `G₀ = (e^{-k|x-y|} + e^{-k(x+y)})/k` with `k = √(-2ξ)`.
pub fn free_kernel(x: f64, y: f64, xi: f64) -> Result<KernelEval> {
    if xi.is_nan() || xi >= 0.0 {
        return Err(Error::Domain {
            function: "free_kernel",
            value: xi,
        });
    }
    Ok(kernel_at(wavenumber(xi), x, y))
}

fn wavenumber(xi: f64) -> f64 {
    (-2.0 * xi).sqrt()
}

/// Derivatives follow from `∂ξ = -(1/k)∂k` applied term by term:
/// `∂ξ[e^{-kd}/k] = (1/k³ + d/k²)e^{-kd}` and
/// `∂ξ²[e^{-kd}/k] = (3/k⁵ + 3d/k⁴ + d²/k³)e^{-kd}`.
#[inline]
pub(crate) fn kernel_at(k: f64, x: f64, y: f64) -> KernelEval {
    let k2 = k * k;
    let k3 = k2 * k;
    let mut out = KernelEval {
        value: 0.0,
        d_xi: 0.0,
        d2_xi: 0.0,
    };
    for d in [(x - y).abs(), x + y] {
        let e = (-k * d).exp();
        out.value += e / k;
        out.d_xi += (1.0 / k3 + d / k2) * e;
        out.d2_xi += (3.0 / (k3 * k2) + 3.0 * d / (k2 * k2) + d * d / k3) * e;
    }
    out
}

/// Reduced resolvent of the delta Hamiltonian at its ground energy:
///
/// `Ĝ(x,y) = G₀(x,y) + (G₀(x,a), ∂ξG₀(x,a)) [[A₃, A₄], [A₄, 0]] (G₀(a,y), ∂ξG₀(a,y))ᵀ`
///
/// with `A₃ = ½ ∂ξ²G₀(a,a) / (∂ξG₀(a,a))²` and `A₄ = -1/∂ξG₀(a,a)`, every
/// kernel taken at `ξ = e₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedResolvent {
    half_separation: f64,
    k: f64,
    a3: f64,
    a4: f64,
}

impl ReducedResolvent {
    pub fn new(ground: &DeltaGround) -> Result<Self> {
        let a = ground.half_separation;
        let k = ground.alpha;
        let at_a = kernel_at(k, a, a);
        if !(at_a.d_xi.abs() > 0.0 && at_a.d_xi.is_finite()) {
            return Err(Error::Consistency(format!(
                "degenerate ∂ξG₀(a,a) = {} at a = {a}",
                at_a.d_xi
            )));
        }
        Ok(Self {
            half_separation: a,
            k,
            a3: 0.5 * at_a.d2_xi / (at_a.d_xi * at_a.d_xi),
            a4: -1.0 / at_a.d_xi,
        })
    }

    /// `(A₃, A₄)`.
    pub fn coefficients(&self) -> (f64, f64) {
        (self.a3, self.a4)
    }

    /// `(G₀(x,a), ∂ξG₀(x,a))` at the ground energy.
    #[inline]
    pub fn source(&self, x: f64) -> (f64, f64) {
        let g = kernel_at(self.k, x, self.half_separation);
        (g.value, g.d_xi)
    }

    /// `G₀(x,y)` at the ground energy.
    #[inline]
    pub fn free(&self, x: f64, y: f64) -> f64 {
        let k = self.k;
        ((-k * (x - y).abs()).exp() + (-k * (x + y)).exp()) / k
    }

    /// Rank-two correction given precomputed sources at `x` and `y`.
    #[inline]
    pub fn correction(&self, sx: (f64, f64), sy: (f64, f64)) -> f64 {
        sx.0 * (self.a3 * sy.0 + self.a4 * sy.1) + sx.1 * self.a4 * sy.0
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.free(x, y) + self.correction(self.source(x), self.source(y))
    }
}
