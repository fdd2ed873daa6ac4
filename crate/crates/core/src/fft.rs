//! Thread-local FFT plan cache.
//!
//! Detection loops run many transforms of a handful of distinct lengths;
//! caching plans per thread keeps rustfft planner churn out of the hot
//! path and plays well with rayon.

use crate::C64;
use rustfft::{Fft, FftPlanner};
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

thread_local! {
    static PLANS: RefCell<(FftPlanner<f64>, HashMap<(usize, bool), Arc<dyn Fft<f64>>>)> =
        RefCell::new((FftPlanner::new(), HashMap::new()));
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANS.with(|cell| {
        let (planner, cache) = &mut *cell.borrow_mut();
        cache
            .entry((len, inverse))
            .or_insert_with(|| {
                if inverse {
                    planner.plan_fft_inverse(len)
                } else {
                    planner.plan_fft_forward(len)
                }
            })
            .clone()
    })
}

/// In-place unnormalized forward DFT: `X[k] = Σ_n x[n] e^{-j2πnk/N}`.
pub fn forward(data: &mut [C64]) {
    plan(data.len(), false).process(data);
}

/// In-place unnormalized inverse-direction DFT: `X[k] = Σ_n x[n] e^{+j2πnk/N}`.
pub fn inverse(data: &mut [C64]) {
    plan(data.len(), true).process(data);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_direct_dft() {
        let n = 12;
        let x: Vec<C64> = (0..n)
            .map(|i| C64::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()))
            .collect();
        let mut fw = x.clone();
        forward(&mut fw);
        for k in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for (i, v) in x.iter().enumerate() {
                let ph = -2.0 * std::f64::consts::PI * (i * k) as f64 / n as f64;
                acc += v * C64::from_polar(1.0, ph);
            }
            assert!((fw[k] - acc).norm() < 1e-10);
        }
    }

    #[test]
    fn inverse_is_adjoint_direction() {
        let n = 8;
        let x: Vec<C64> = (0..n).map(|i| C64::new(i as f64, -(i as f64))).collect();
        let mut y = x.clone();
        forward(&mut y);
        inverse(&mut y);
        for (a, b) in y.iter().zip(x.iter()) {
            assert!((a / n as f64 - b).norm() < 1e-12);
        }
    }
}
