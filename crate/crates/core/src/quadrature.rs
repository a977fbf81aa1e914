//! Adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! One-dimensional integrals are refined globally: the segment with the
//! largest error estimate is bisected until the summed estimate drops below
//! `max(abs, rel·|value|)`. Callers pass every point where the integrand has a
//! kink or a narrow peak as a breakpoint; nothing is auto-detected.
//!
//! Two-dimensional integrals are iterated 1D integrals. The inner integral
//! runs at a tolerance ten times tighter than the outer one, and can be told
//! to split at the diagonal `y = x`.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::{Error, Result};

/// Upper limit on the number of segments of one adaptive 1D integration.
pub const MAX_SUBDIVISIONS: usize = 4000;

/// `ln(1e16)`: truncating `e^{-λz}` at `z = ln(1e16)/λ` drops below 1e-16.
const TAIL_LOG: f64 = 36.841_361_487_904_734;

/// Kronrod abscissae on [-1, 1] (positive half, descending).
/// Odd indices are the Gauss 7-point nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Absolute / relative error targets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    /// Default for inner (and plain 1D) integrals.
    pub const INNER: Tolerance = Tolerance {
        abs: 1e-10,
        rel: 1e-9,
    };
    /// Default for outer integrals of iterated 2D quadrature.
    pub const OUTER: Tolerance = Tolerance {
        abs: 1e-9,
        rel: 1e-8,
    };

    pub const fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    /// Both targets divided by `factor`.
    pub fn tightened(self, factor: f64) -> Self {
        Self {
            abs: self.abs / factor,
            rel: self.rel / factor,
        }
    }

    pub fn bound(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Sum of the per-segment Kronrod–Gauss error estimates.
    pub error_estimate: f64,
    /// Segments in the final partition. For 2D results this counts the outer
    /// segments plus every inner segment.
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

/// 15-point Kronrod estimate on `[lo, hi]` with the QUADPACK error heuristic.
fn kronrod15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment {
        lo,
        hi,
        value,
        error,
    }
}

/// Adaptive integral of `f` over `[lo, hi]`, with the interval pre-split at
/// every breakpoint strictly inside it.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    tol: Tolerance,
) -> Result<QuadResult> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidInput(format!(
            "integration bounds must be finite with lo < hi (got [{lo}, {hi}])"
        )));
    }
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&b| b > lo && b < hi)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::new();
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(lo);
    edges.extend(cuts);
    edges.push(hi);
    for w in edges.windows(2) {
        heap.push(kronrod15(&f, w[0], w[1]));
    }
    // Segments too narrow to bisect further; their error is final.
    let mut frozen: Vec<Segment> = Vec::new();
    let (mut value, mut error) = totals(heap.iter());

    loop {
        let count = heap.len() + frozen.len();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature {
                value,
                error_estimate: error,
                subdivisions: count,
            });
        }
        if error <= tol.bound(value) {
            // Running sums drift; confirm with an ordered recomputation.
            let (v, e) = totals(heap.iter().chain(frozen.iter()));
            value = v;
            error = e;
            if error <= tol.bound(value) {
                return Ok(QuadResult {
                    value,
                    error_estimate: error,
                    subdivisions: count,
                });
            }
        }
        let worst = match heap.pop() {
            Some(w) if count < MAX_SUBDIVISIONS => w,
            popped => {
                heap.extend(popped);
                let (value, error) = totals(heap.iter().chain(frozen.iter()));
                return Err(Error::Quadrature {
                    value,
                    error_estimate: error,
                    subdivisions: count,
                });
            }
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi || worst.hi - worst.lo < 1e-13 * mid.abs() {
            frozen.push(worst);
            continue;
        }
        let left = kronrod15(&f, worst.lo, mid);
        let right = kronrod15(&f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}

/// Sums in left-to-right order so results do not depend on heap layout.
fn totals<'a>(segments: impl Iterator<Item = &'a Segment>) -> (f64, f64) {
    let mut segs: Vec<&Segment> = segments.collect();
    segs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    segs.iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
}

/// Integral of `f` over `[lo, ∞)` for an integrand decaying at least like
/// `e^{-decay_rate·z}` beyond its last breakpoint.
///
/// The tail is cut where that envelope falls below 1e-16, measured from
/// the largest breakpoint (or `lo`).
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    decay_rate: f64,
    breakpoints: &[f64],
    tol: Tolerance,
) -> Result<QuadResult> {
    let hi = semi_infinite_cut(lo, decay_rate, breakpoints)?;
    integrate(f, lo, hi, breakpoints, tol)
}

fn semi_infinite_cut(lo: f64, decay_rate: f64, breakpoints: &[f64]) -> Result<f64> {
    if !(decay_rate > 0.0 && decay_rate.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "decay rate must be positive and finite (got {decay_rate})"
        )));
    }
    let start = breakpoints.iter().copied().fold(lo, f64::max);
    Ok(start + TAIL_LOG / decay_rate)
}

/// One axis of a 2D integration domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Span {
    Finite { lo: f64, hi: f64 },
    SemiInfinite { lo: f64, decay_rate: f64 },
}

impl Span {
    fn bounds(&self, breakpoints: &[f64]) -> Result<(f64, f64)> {
        match *self {
            Span::Finite { lo, hi } => Ok((lo, hi)),
            Span::SemiInfinite { lo, decay_rate } => {
                Ok((lo, semi_infinite_cut(lo, decay_rate, breakpoints)?))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Domain2d {
    pub x: Span,
    pub y: Span,
    pub x_breakpoints: Vec<f64>,
    pub y_breakpoints: Vec<f64>,
    /// Split every inner integral at `y = x`.
    pub diagonal_kink: bool,
}

impl Domain2d {
    pub fn new(x: Span, y: Span) -> Self {
        Self {
            x,
            y,
            x_breakpoints: Vec::new(),
            y_breakpoints: Vec::new(),
            diagonal_kink: false,
        }
    }

    pub fn with_breakpoints(mut self, x: &[f64], y: &[f64]) -> Self {
        self.x_breakpoints = x.to_vec();
        self.y_breakpoints = y.to_vec();
        self
    }

    pub fn with_diagonal_kink(mut self) -> Self {
        self.diagonal_kink = true;
        self
    }
}

/// Iterated integral `∫ dx ∫ dy f(x, y)`.
///
/// `tol` applies to the outer integral; inner integrals use `tol` tightened
/// tenfold. The reported error adds the outer estimate to the worst inner
/// estimate times the outer width.
pub fn integrate2d<F: Fn(f64, f64) -> f64>(
    f: F,
    domain: &Domain2d,
    tol: Tolerance,
) -> Result<QuadResult> {
    integrate2d_prepared(|x| x, |&x, y| f(x, y), domain, tol)
}

/// As [`integrate2d`], but `prepare(x)` runs once per outer node and its
/// output is handed to every inner evaluation at that `x`.
pub fn integrate2d_prepared<P, Prep, F>(
    prepare: Prep,
    f: F,
    domain: &Domain2d,
    tol: Tolerance,
) -> Result<QuadResult>
where
    Prep: Fn(f64) -> P,
    F: Fn(&P, f64) -> f64,
{
    let (x_lo, x_hi) = domain.x.bounds(&domain.x_breakpoints)?;
    let (y_lo, y_hi) = domain.y.bounds(&domain.y_breakpoints)?;
    let inner_tol = tol.tightened(10.0);

    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let worst_inner = Cell::new(0.0f64);
    let inner_segments = Cell::new(0usize);

    let outer = integrate(
        |x| {
            if failure.borrow().is_some() {
                return 0.0;
            }
            let mut bps = domain.y_breakpoints.clone();
            if domain.diagonal_kink {
                bps.push(x);
            }
            let prepared = prepare(x);
            match integrate(|y| f(&prepared, y), y_lo, y_hi, &bps, inner_tol) {
                Ok(r) => {
                    worst_inner.set(worst_inner.get().max(r.error_estimate));
                    inner_segments.set(inner_segments.get() + r.subdivisions);
                    r.value
                }
                Err(e) => {
                    *failure.borrow_mut() = Some(e);
                    0.0
                }
            }
        },
        x_lo,
        x_hi,
        &domain.x_breakpoints,
        tol,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let outer = outer?;
    Ok(QuadResult {
        value: outer.value,
        error_estimate: outer.error_estimate + worst_inner.get() * (x_hi - x_lo),
        subdivisions: outer.subdivisions + inner_segments.get(),
    })
}
