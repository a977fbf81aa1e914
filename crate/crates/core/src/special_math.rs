//! Lambert W (principal branch) and the complementary error function.
//!
//! `erf`, `erfc` and `erfcx` follow W. J. Cody's rational Chebyshev
//! approximations (Math. Comp. 23, 1969; CALERF, 1990 revision), which are
//! accurate to roughly one ulp in double precision over the whole real line.

use std::f64::consts::E;

use crate::{Error, Result};

/// `-1/e`, the branch point of the Lambert W function.
pub const BRANCH_POINT: f64 = -0.367_879_441_171_442_33;

const HALLEY_MAX_ITER: usize = 50;

/// Principal branch `W₀` of the Lambert W function: the solution `w ≥ -1` of
/// `w·eʷ = x` for `x ≥ -1/e`.
///
/// Halley iteration from a branch-point series (near `-1/e`), `ln(1+x)`
/// (moderate `x`) or the two-term asymptotic expansion (large `x`).
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain {
            function: "lambert_w0",
            value: x,
        });
    }
    if x < BRANCH_POINT {
        // `-1/e` itself is not exactly representable; accept a few ulps below.
        if BRANCH_POINT - x <= 4.0 * f64::EPSILON {
            return Ok(-1.0);
        }
        return Err(Error::Domain {
            function: "lambert_w0",
            value: x,
        });
    }
    if x == 0.0 {
        return Ok(0.0);
    }

    let mut w = initial_guess(x);
    for _ in 0..HALLEY_MAX_ITER {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 || f == 0.0 {
            break;
        }
        let denom = ew * wp1 - 0.5 * (w + 2.0) * f / wp1;
        let step = f / denom;
        let next = w - step;
        // Never leave the principal branch.
        w = if next < -1.0 { 0.5 * (w - 1.0) } else { next };
        if step.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }

    let residual = (w * w.exp() - x).abs();
    // exp() amplifies the rounding of w by |w|, so scale the bound with it.
    let bound = 1e-14 * x.abs().max(1.0) * w.abs().max(1.0);
    if residual > bound {
        return Err(Error::NoConvergence {
            function: "lambert_w0",
            residual,
            iterations: HALLEY_MAX_ITER,
        });
    }
    Ok(w)
}

fn initial_guess(x: f64) -> f64 {
    if x < -0.25 {
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0))
    } else if x < 3.0 {
        x.ln_1p()
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ErfKind {
    Erf,
    Erfc,
    Erfcx,
}

/// `1/√π`
const INV_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const THRESH: f64 = 0.46875;
const XNEG: f64 = -26.628;
const XSMALL: f64 = 1.11e-16;
const XBIG: f64 = 26.543;
const XHUGE: f64 = 6.71e7;
const XMAX: f64 = 2.53e307;

#[allow(clippy::excessive_precision)]
const A: [f64; 5] = [
    3.161_123_743_870_565_60e00,
    1.138_641_541_510_501_56e02,
    3.774_852_376_853_020_21e02,
    3.209_377_589_138_469_47e03,
    1.857_777_061_846_031_53e-1,
];
#[allow(clippy::excessive_precision)]
const B: [f64; 4] = [
    2.360_129_095_234_412_09e01,
    2.440_246_379_344_441_73e02,
    1.282_616_526_077_372_28e03,
    2.844_236_833_439_170_62e03,
];
#[allow(clippy::excessive_precision)]
const C: [f64; 9] = [
    5.641_884_969_886_700_89e-1,
    8.883_149_794_388_375_94e00,
    6.611_919_063_714_162_95e01,
    2.986_351_381_974_001_31e02,
    8.819_522_212_417_690_90e02,
    1.712_047_612_634_070_58e03,
    2.051_078_377_826_071_47e03,
    1.230_339_354_797_997_25e03,
    2.153_115_354_744_038_46e-8,
];
#[allow(clippy::excessive_precision)]
const D: [f64; 8] = [
    1.574_492_611_070_983_47e01,
    1.176_939_508_913_124_99e02,
    5.371_811_018_620_098_58e02,
    1.621_389_574_566_690_19e03,
    3.290_799_235_733_459_63e03,
    4.362_619_090_143_247_16e03,
    3.439_367_674_143_721_64e03,
    1.230_339_354_803_749_42e03,
];
#[allow(clippy::excessive_precision)]
const P: [f64; 6] = [
    3.053_266_349_612_323_44e-1,
    3.603_448_999_498_044_39e-1,
    1.257_817_261_112_292_46e-1,
    1.608_378_514_874_227_66e-2,
    6.587_491_615_298_378_03e-4,
    1.631_538_713_730_209_78e-2,
];
#[allow(clippy::excessive_precision)]
const Q: [f64; 5] = [
    2.568_520_192_289_822_42e00,
    1.872_952_849_923_460_47e00,
    5.279_051_029_514_284_12e-1,
    6.051_834_131_244_131_91e-2,
    2.335_204_976_268_691_85e-3,
];

/// `exp(-y²)` split as `exp(-ỹ²)·exp(-(y-ỹ)(y+ỹ))` with `ỹ` rounded to 1/16,
/// which keeps the argument of each exponential exact enough for large `y`.
fn exp_neg_square(y: f64) -> f64 {
    let ysq = (y * 16.0).trunc() / 16.0;
    let del = (y - ysq) * (y + ysq);
    (-ysq * ysq).exp() * (-del).exp()
}

fn calerf(x: f64, kind: ErfKind) -> f64 {
    let y = x.abs();
    let mut result;

    if y <= THRESH {
        let ysq = if y > XSMALL { y * y } else { 0.0 };
        let mut num = A[4] * ysq;
        let mut den = ysq;
        for i in 0..3 {
            num = (num + A[i]) * ysq;
            den = (den + B[i]) * ysq;
        }
        result = x * (num + A[3]) / (den + B[3]);
        if kind != ErfKind::Erf {
            result = 1.0 - result;
        }
        if kind == ErfKind::Erfcx {
            result *= ysq.exp();
        }
        return result;
    } else if y <= 4.0 {
        let mut num = C[8] * y;
        let mut den = y;
        for i in 0..7 {
            num = (num + C[i]) * y;
            den = (den + D[i]) * y;
        }
        result = (num + C[7]) / (den + D[7]);
        if kind != ErfKind::Erfcx {
            result *= exp_neg_square(y);
        }
    } else {
        result = 0.0;
        let mut done = false;
        if y >= XBIG {
            if kind != ErfKind::Erfcx || y >= XMAX {
                done = true;
            }
            if y >= XHUGE {
                result = INV_SQRT_PI / y;
                done = true;
            }
        }
        if !done {
            let ysq = 1.0 / (y * y);
            let mut num = P[5] * ysq;
            let mut den = ysq;
            for i in 0..4 {
                num = (num + P[i]) * ysq;
                den = (den + Q[i]) * ysq;
            }
            result = ysq * (num + P[4]) / (den + Q[4]);
            result = (INV_SQRT_PI - result) / y;
            if kind != ErfKind::Erfcx {
                result *= exp_neg_square(y);
            }
        }
    }

    match kind {
        ErfKind::Erf => {
            result = (0.5 - result) + 0.5;
            if x < 0.0 {
                result = -result;
            }
        }
        ErfKind::Erfc => {
            if x < 0.0 {
                result = 2.0 - result;
            }
        }
        ErfKind::Erfcx => {
            if x < 0.0 {
                if x < XNEG {
                    result = f64::INFINITY;
                } else {
                    let e = 1.0 / exp_neg_square(x);
                    result = (e + e) - result;
                }
            }
        }
    }
    result
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    calerf(x, ErfKind::Erf)
}

/// Complementary error function `1 - erf(x)`. NaN in, NaN out.
pub fn erfc(x: f64) -> f64 {
    calerf(x, ErfKind::Erfc)
}

/// Scaled complementary error function `exp(x²)·erfc(x)`.
///
/// Finite for every `x ≥ XNEG ≈ -26.6`; decays like `1/(x√π)` for large
/// positive `x` without intermediate overflow.
pub fn erfcx(x: f64) -> f64 {
    calerf(x, ErfKind::Erfcx)
}
