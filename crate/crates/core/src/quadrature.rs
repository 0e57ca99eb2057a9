//! One-dimensional quadrature: adaptive Gauss–Kronrod and composite Simpson.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// 15-point Kronrod nodes on [0, 1] (symmetric) with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Tolerances and limits for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn relative(relative: f64) -> Self {
        Tolerance {
            relative,
            absolute: 0.0,
            max_intervals: 4000,
        }
    }

    pub fn with_absolute(mut self, absolute: f64) -> Self {
        self.absolute = absolute;
        self
    }
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    let value = k * h;
    let error = ((k - g) * h).abs();
    (value, error)
}

/// Globally adaptive G7–K15 over `[points[0], points[last]]`, starting from
/// the subintervals between consecutive `points`.
pub fn integrate_with_points(
    mut f: impl FnMut(f64) -> f64,
    points: &[f64],
    tol: Tolerance,
) -> Result<Estimate> {
    if points.len() < 2 || points.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::InvalidArgument(
            "quadrature breakpoints must be nondecreasing with at least two entries".into(),
        ));
    }
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let (v, e) = kronrod(&mut f, w[0], w[1]);
        evaluations += 15;
        value += v;
        error += e;
        heap.push(Piece {
            a: w[0],
            b: w[1],
            value: v,
            error: e,
        });
    }
    while error > tol.absolute.max(tol.relative * value.abs()) {
        if heap.len() >= tol.max_intervals {
            return Err(Error::Quadrature {
                what: format!("integral over [{}, {}]", points[0], points[points.len() - 1]),
                error,
                tolerance: tol.absolute.max(tol.relative * value.abs()),
            });
        }
        let worst = heap.pop().expect("heap is non-empty while error > 0");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further in floating point
            heap.push(worst);
            return Err(Error::Quadrature {
                what: "interval below floating-point resolution".into(),
                error,
                tolerance: tol.absolute.max(tol.relative * value.abs()),
            });
        }
        let (v1, e1) = kronrod(&mut f, worst.a, mid);
        let (v2, e2) = kronrod(&mut f, mid, worst.b);
        evaluations += 30;
        value += v1 + v2 - worst.value;
        error += e1 + e2 - worst.error;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }
    // re-sum to shed the drift of the running updates
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Estimate {
        value,
        error,
        evaluations,
    })
}

pub fn integrate(f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: Tolerance) -> Result<Estimate> {
    integrate_with_points(f, &[a, b], tol)
}

/// Composite Simpson rule with `intervals` (rounded up to even) equal steps.
pub fn simpson(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, intervals: usize) -> f64 {
    let m = intervals.max(2).next_multiple_of(2);
    let h = (b - a) / m as f64;
    let mut s = f(a) + f(b);
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// Weights of `∫_{x0}^{x1}` and `∫_{x1}^{x2}` for the quadratic through three
/// nonuniform nodes, as coefficient triples on `(f0, f1, f2)`.
fn quadratic_weights(h0: f64, h1: f64) -> ([f64; 3], [f64; 3]) {
    let s = h0 + h1;
    let first = [
        h0 * (2.0 * h0 + 3.0 * h1) / (6.0 * s),
        h0 * (h0 + 3.0 * h1) / (6.0 * h1),
        -h0 * h0 * h0 / (6.0 * h1 * s),
    ];
    let second = [
        -h1 * h1 * h1 / (6.0 * h0 * s),
        h1 * (3.0 * h0 + h1) / (6.0 * h0),
        h1 * (3.0 * h0 + 2.0 * h1) / (6.0 * s),
    ];
    (first, second)
}

/// Running integral `∫_{t₀}^{tᵢ} y` on a nonuniform grid.
///
/// Pairs of intervals use nonuniform Simpson; the first half of each pair and
/// a trailing odd interval use the matching three-point quadratic rule.
/// Two samples fall back to the trapezoid rule.
pub fn cumulative_simpson(t: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    if t.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "{} abscissae but {} ordinates",
            t.len(),
            y.len()
        )));
    }
    if t.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidArgument(
            "abscissae must be strictly increasing".into(),
        ));
    }
    let n = t.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return Ok(out);
    }
    if n == 2 {
        out[1] = 0.5 * (t[1] - t[0]) * (y[0] + y[1]);
        return Ok(out);
    }
    let mut i = 0;
    while i + 2 < n {
        let (h0, h1) = (t[i + 1] - t[i], t[i + 2] - t[i + 1]);
        let (first, second) = quadratic_weights(h0, h1);
        let part = first[0] * y[i] + first[1] * y[i + 1] + first[2] * y[i + 2];
        let rest = second[0] * y[i] + second[1] * y[i + 1] + second[2] * y[i + 2];
        out[i + 1] = out[i] + part;
        out[i + 2] = out[i] + part + rest;
        i += 2;
    }
    if i + 1 < n {
        // odd number of intervals: close with the last three samples
        let (h0, h1) = (t[i] - t[i - 1], t[i + 1] - t[i]);
        let (_, second) = quadratic_weights(h0, h1);
        out[i + 1] = out[i] + second[0] * y[i - 1] + second[1] * y[i] + second[2] * y[i + 1];
    }
    Ok(out)
}
