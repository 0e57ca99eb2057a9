//! Two-dimensional complex FFTs over square row-major buffers.
//!
//! Plans are cached process-wide. Rows are transformed in parallel when the
//! buffer is large enough; every row is an independent transform so results
//! are bit-identical regardless of thread count.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};

const PARALLEL_MIN_LEN: usize = 128 * 128;

type PlanKey = (usize, bool);
type PlanCache = (FftPlanner<f64>, HashMap<PlanKey, Arc<dyn Fft<f64>>>);

fn plan_cache() -> &'static Mutex<PlanCache> {
    static CACHE: OnceLock<Mutex<PlanCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new((FftPlanner::new(), HashMap::new())))
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    let mut guard = plan_cache().lock().expect("fft plan cache poisoned");
    let (planner, cache) = &mut *guard;
    cache
        .entry((len, inverse))
        .or_insert_with(|| {
            let dir = if inverse {
                FftDirection::Inverse
            } else {
                FftDirection::Forward
            };
            planner.plan_fft(len, dir)
        })
        .clone()
}

fn transform_rows(data: &mut [Complex64], m: usize, fft: &Arc<dyn Fft<f64>>) {
    if data.len() >= PARALLEL_MIN_LEN {
        data.par_chunks_mut(m).for_each_init(
            || vec![Complex64::default(); fft.get_inplace_scratch_len()],
            |scratch, row| fft.process_with_scratch(row, scratch),
        );
    } else {
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        for row in data.chunks_mut(m) {
            fft.process_with_scratch(row, &mut scratch);
        }
    }
}

const TILE: usize = 16;

fn transpose_square(data: &mut [Complex64], m: usize) {
    for bi in (0..m).step_by(TILE) {
        for bj in (bi..m).step_by(TILE) {
            for i in bi..(bi + TILE).min(m) {
                let start = if bi == bj { i + 1 } else { bj };
                for j in start..(bj + TILE).min(m) {
                    data.swap(i * m + j, j * m + i);
                }
            }
        }
    }
}

/// Unnormalized in-place 2D DFT of an `m × m` buffer.
///
/// Forward uses `exp(-2πi jk/m)`, inverse `exp(+2πi jk/m)`; neither scales.
pub(crate) fn fft2(data: &mut [Complex64], m: usize, inverse: bool) {
    debug_assert_eq!(data.len(), m * m);
    let fft = plan(m, inverse);
    transform_rows(data, m, &fft);
    transpose_square(data, m);
    transform_rows(data, m, &fft);
    transpose_square(data, m);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_dft() {
        let m = 6;
        let data: Vec<Complex64> = (0..m * m)
            .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
            .collect();
        let mut out = data.clone();
        fft2(&mut out, m, false);
        for k1 in 0..m {
            for k2 in 0..m {
                let mut acc = Complex64::default();
                for j1 in 0..m {
                    for j2 in 0..m {
                        let phase = -2.0 * std::f64::consts::PI * ((j1 * k1 + j2 * k2) as f64) / m as f64;
                        acc += data[j1 * m + j2] * Complex64::from_polar(1.0, phase);
                    }
                }
                assert!((acc - out[k1 * m + k2]).norm() < 1e-12);
            }
        }
        fft2(&mut out, m, true);
        for (a, b) in out.iter().zip(&data) {
            assert!((a / (m * m) as f64 - b).norm() < 1e-14);
        }
    }
}
