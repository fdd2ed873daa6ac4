//! Doppler focusing: coherent phase-aligned summation over pulses.
//!
//! `Ψ_ν[k] = Σ_p c_p[k] w[p] e^{jνpτ}` concentrates the energy of targets
//! whose Doppler lies within `2π/Pτ` of `ν` (gain ≈ P) while targets
//! outside that focus zone largely cancel. On the uniform grid
//! `ν̃_m = 2πm/(τM)` the transform is a zero-padded (or folded) length-M
//! DFT along the pulse dimension. Windowing trades focus-zone width for
//! out-of-focus attenuation.

use crate::error::{Error, Result};
use crate::fft;
use crate::xampler::XampleSet;
use crate::C64;
use ndarray::Array2;
use std::f64::consts::PI;

// ---------------------------------------------------------------------------
// Pulse-dimension windows
// ---------------------------------------------------------------------------

/// Window family over the pulse index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowKind {
    Rectangular,
    Hann,
    Blackman,
    Taylor { nbar: usize, sidelobe_db: f64 },
}

impl WindowKind {
    /// Taylor window realizing -50 dB sidelobes. n̄ = 8 keeps the sampled
    /// window's actual sidelobes within 2 dB of the design level, which
    /// n̄ = 5 does not at P = 100.
    pub fn taylor_50() -> Self {
        WindowKind::Taylor {
            nbar: 8,
            sidelobe_db: -50.0,
        }
    }
}

/// A realized window: strictly positive weights normalized so
/// `Σ w[p] = P`, which keeps the on-focus gain (and hence amplitude
/// estimates) window independent.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub kind: WindowKind,
    pub weights: Vec<f64>,
}

impl Window {
    pub fn new(kind: WindowKind, pulse_count: usize) -> Result<Self> {
        if pulse_count == 0 {
            return Err(Error::InvalidParameter("window needs P ≥ 1".into()));
        }
        let p = pulse_count as f64;
        // Midpoint sampling keeps every profile strictly positive.
        let grid = |i: usize| (i as f64 + 0.5) / p;
        let mut weights: Vec<f64> = match kind {
            WindowKind::Rectangular => vec![1.0; pulse_count],
            WindowKind::Hann => (0..pulse_count)
                .map(|i| (PI * grid(i)).sin().powi(2))
                .collect(),
            WindowKind::Blackman => (0..pulse_count)
                .map(|i| {
                    let x = grid(i);
                    0.42 - 0.5 * (2.0 * PI * x).cos() + 0.08 * (4.0 * PI * x).cos()
                })
                .collect(),
            WindowKind::Taylor { nbar, sidelobe_db } => {
                taylor_weights(pulse_count, nbar, sidelobe_db)?
            }
        };
        let sum: f64 = weights.iter().sum();
        for w in &mut weights {
            *w *= p / sum;
        }
        if weights.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "window {kind:?} produced non-positive weights"
            )));
        }
        Ok(Self { kind, weights })
    }

    pub fn rectangular(pulse_count: usize) -> Self {
        Self::new(WindowKind::Rectangular, pulse_count).unwrap()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Taylor weights (before normalization): the classic n̄/SLL line-source
/// synthesis. `sidelobe_db` may be given as -50 or 50; the magnitude is
/// used.
fn taylor_weights(pulse_count: usize, nbar: usize, sidelobe_db: f64) -> Result<Vec<f64>> {
    if nbar < 2 {
        return Err(Error::InvalidParameter("taylor nbar must be ≥ 2".into()));
    }
    let sll = sidelobe_db.abs();
    let b = 10f64.powf(sll / 20.0);
    let a = (b + (b * b - 1.0).sqrt()).ln() / PI; // arccosh(B)/π
    let s2 = (nbar as f64).powi(2) / (a * a + (nbar as f64 - 0.5).powi(2));
    let m_max = nbar - 1;
    let mut fm = vec![0.0f64; m_max];
    for (mi, f) in fm.iter_mut().enumerate() {
        let m = (mi + 1) as f64;
        let sign = if mi % 2 == 0 { 1.0 } else { -1.0 };
        let mut numer = sign;
        for n in 1..=m_max {
            let nn = n as f64;
            numer *= 1.0 - m * m / (s2 * (a * a + (nn - 0.5).powi(2)));
        }
        let mut denom = 2.0;
        for j in 1..=m_max {
            if j != mi + 1 {
                let jj = j as f64;
                denom *= 1.0 - m * m / (jj * jj);
            }
        }
        *f = numer / denom;
    }
    let p = pulse_count as f64;
    Ok((0..pulse_count)
        .map(|i| {
            let x = (i as f64 + 0.5) / p - 0.5;
            let mut w = 1.0;
            for (mi, f) in fm.iter().enumerate() {
                w += 2.0 * f * (2.0 * PI * (mi + 1) as f64 * x).cos();
            }
            w
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Focusing transforms
// ---------------------------------------------------------------------------

/// The focused coefficient vector for one Doppler frequency.
#[derive(Debug, Clone)]
pub struct FocusedVector {
    pub psi: Vec<C64>,
    pub nu: f64,
    pub window: WindowKind,
}

/// Focused vectors on the uniform Doppler grid `ν̃_m = 2πm/(τM)`,
/// rows ordered by `m = -⌊M/2⌋ .. M-⌊M/2⌋-1`.
#[derive(Debug, Clone)]
pub struct FocusedGrid {
    pub psi: Array2<C64>,
    pub pri: f64,
    pub window: WindowKind,
}

impl FocusedGrid {
    pub fn rows(&self) -> usize {
        self.psi.nrows()
    }

    fn m_lo(&self) -> i64 {
        -((self.rows() as i64) / 2)
    }

    /// Signed grid index of a row.
    pub fn m_of_row(&self, row: usize) -> i64 {
        self.m_lo() + row as i64
    }

    /// Doppler frequency of a row, rad/s.
    pub fn nu_of_row(&self, row: usize) -> f64 {
        2.0 * PI * self.m_of_row(row) as f64 / (self.pri * self.rows() as f64)
    }

    /// Row holding DFT index `m̂ ∈ [0, M)` (the order iteration in the
    /// gridded detector follows).
    pub fn row_for_dft_index(&self, m_hat: usize) -> usize {
        let m = m_hat as i64;
        let rows = self.rows() as i64;
        (m - self.m_lo()).rem_euclid(rows) as usize
    }
}

/// Exact weighted focusing sum at an arbitrary Doppler frequency.
pub fn focus_at(x: &XampleSet, nu: f64, window: &Window) -> Result<FocusedVector> {
    let p_count = x.pulse_count();
    if window.len() != p_count {
        return Err(Error::DimensionMismatch(format!(
            "window length {} vs {} pulses",
            window.len(),
            p_count
        )));
    }
    let cols = x.kappa.len();
    let mut psi = vec![C64::new(0.0, 0.0); cols];
    for p in 0..p_count {
        let rot = window.weights[p] * C64::from_polar(1.0, nu * p as f64 * x.pri);
        for (acc, c) in psi.iter_mut().zip(x.coeffs.row(p)) {
            *acc += rot * c;
        }
    }
    Ok(FocusedVector {
        psi,
        nu,
        window: window.kind,
    })
}

/// Focusing on the length-`m` uniform grid via a folded DFT along the
/// pulse dimension: `Ψ_m[k] = Σ_p c_p[k] w[p] e^{j2πmp/M}`. Zero-padded
/// when `M > P`; p wraps modulo M when `M < P`, which matches the defining
/// sum exactly.
pub fn focus_grid(x: &XampleSet, m: usize, window: &Window) -> Result<FocusedGrid> {
    if m == 0 {
        return Err(Error::InvalidParameter("grid size M must be ≥ 1".into()));
    }
    let p_count = x.pulse_count();
    if window.len() != p_count {
        return Err(Error::DimensionMismatch(format!(
            "window length {} vs {} pulses",
            window.len(),
            p_count
        )));
    }
    let cols = x.kappa.len();
    let m_lo = -((m as i64) / 2);
    let mut psi = Array2::zeros((m, cols));
    let mut buf = vec![C64::new(0.0, 0.0); m];
    for k in 0..cols {
        for b in buf.iter_mut() {
            *b = C64::new(0.0, 0.0);
        }
        for p in 0..p_count {
            buf[p % m] += x.coeffs[[p, k]] * window.weights[p];
        }
        fft::inverse(&mut buf);
        for row in 0..m {
            let m_signed = m_lo + row as i64;
            let dft_index = m_signed.rem_euclid(m as i64) as usize;
            psi[[row, k]] = buf[dft_index];
        }
    }
    Ok(FocusedGrid {
        psi,
        pri: x.pri,
        window: window.kind,
    })
}

/// The focusing gain `g(ν|ν_ℓ) = Σ_p w[p] e^{j(ν-ν_ℓ)pτ}`: closed-form
/// geometric sum for the rectangular window, direct summation otherwise.
/// `|g| = Σw = P` exactly at `ν = ν_ℓ`.
pub fn dirichlet_gain(nu: f64, nu_target: f64, pri: f64, window: &Window) -> C64 {
    let theta = (nu - nu_target) * pri;
    let p = window.len() as f64;
    match window.kind {
        WindowKind::Rectangular => {
            // Weights are exactly 1 after normalization.
            let half = theta / 2.0;
            let s = half.sin();
            let ratio = if s.abs() < 1e-12 {
                let m = (half / PI).round();
                let eps = half - m * PI;
                let sign = if ((m as i64) * (window.len() as i64 - 1)).rem_euclid(2) == 1 {
                    -1.0
                } else {
                    1.0
                };
                sign * p * (1.0 - (p * p - 1.0) * eps * eps / 6.0)
            } else {
                (p * half).sin() / s
            };
            C64::from_polar(1.0, (p - 1.0) * half) * ratio
        }
        _ => {
            let mut acc = C64::new(0.0, 0.0);
            for (i, w) in window.weights.iter().enumerate() {
                acc += C64::from_polar(*w, theta * i as f64);
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{RadarParams, Target};
    use crate::waveform::{PulseKind, PulseShape};
    use crate::xampler::{select_kappa, xample_analytic, KappaMode};
    use rand::Rng;

    fn setup(p_count: usize) -> (RadarParams, PulseShape, crate::xampler::CoefficientSet) {
        let params = RadarParams::new(p_count, 10e-6, 20e6, 1e-6, 0.0).unwrap();
        let shape = PulseShape::build(PulseKind::Flat, &params).unwrap();
        let kappa = select_kappa(&params, 16, KappaMode::centered(), 0).unwrap();
        (params, shape, kappa)
    }

    #[test]
    fn window_normalization_and_positivity() {
        for kind in [
            WindowKind::Rectangular,
            WindowKind::Hann,
            WindowKind::Blackman,
            WindowKind::Taylor {
                nbar: 5,
                sidelobe_db: -50.0,
            },
        ] {
            let w = Window::new(kind, 100).unwrap();
            let sum: f64 = w.weights.iter().sum();
            assert!((sum - 100.0).abs() < 1e-9, "{kind:?} sum {sum}");
            assert!(w.weights.iter().all(|&x| x > 0.0), "{kind:?} not positive");
        }
    }

    #[test]
    fn single_pulse_focus_is_the_row_itself() {
        let (params, shape, kappa) = setup(1);
        let t = Target::new(3.0e-6, 1e4, C64::new(0.7, -0.2));
        let x = xample_analytic(&params, &shape, &[t], None, &kappa, 0.0, 0).unwrap();
        let w = Window::rectangular(1);
        for &nu in &[-1e5, 0.0, 7.7e4] {
            let f = focus_at(&x, nu, &w).unwrap();
            for (a, b) in f.psi.iter().zip(x.coeffs.row(0)) {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn on_focus_gain_is_exactly_p() {
        let (params, shape, kappa) = setup(64);
        let m = 128usize;
        // Doppler exactly on the M-grid.
        let nu = 2.0 * PI * 17.0 / (params.pri * m as f64);
        let t = Target::new(2.0e-6, nu, C64::new(1.0, 0.5));
        let x = xample_analytic(&params, &shape, &[t], None, &kappa, 0.0, 0).unwrap();
        let w = Window::rectangular(64);
        let f = focus_at(&x, nu, &w).unwrap();
        for (a, b) in f.psi.iter().zip(x.coeffs.row(0)) {
            assert!((a - b * 64.0).norm() <= 1e-12 * 64.0 * b.norm());
        }
    }

    #[test]
    fn one_grid_bin_offset_cancels_completely_when_p_equals_m() {
        let (params, shape, kappa) = setup(32);
        let m = 32usize;
        let bin = 2.0 * PI / (params.pri * m as f64);
        let t = Target::new(1.0e-6, 3.0 * bin, C64::new(1.0, 0.0));
        let x = xample_analytic(&params, &shape, &[t], None, &kappa, 0.0, 0).unwrap();
        let w = Window::rectangular(32);
        let f = focus_at(&x, 4.0 * bin, &w).unwrap();
        let scale = x.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max) * 32.0;
        for v in &f.psi {
            assert!(v.norm() < 1e-10 * scale, "leak {}", v.norm());
        }
    }

    #[test]
    fn grid_rows_match_focus_at() {
        let (params, shape, kappa) = setup(24);
        let scene = crate::scene::random_scene(&params, 3, 2, 3.0).unwrap();
        let x = xample_analytic(&params, &shape, &scene, None, &kappa, 0.0, 0).unwrap();
        for (m, wk) in [
            (48usize, WindowKind::Hann),
            (24, WindowKind::Rectangular),
            (7, WindowKind::Rectangular), // folded case M < P
        ] {
            let w = Window::new(wk, 24).unwrap();
            let grid = focus_grid(&x, m, &w).unwrap();
            let mut rng = crate::seed::rng(11);
            let scale = grid.psi.iter().map(|c| c.norm()).fold(0.0, f64::max);
            for _ in 0..10 {
                let row = rng.gen_range(0..m);
                let f = focus_at(&x, grid.nu_of_row(row), &w).unwrap();
                for (a, b) in grid.psi.row(row).iter().zip(f.psi.iter()) {
                    assert!((a - b).norm() <= 1e-10 * scale.max(1e-300));
                }
            }
        }
    }

    #[test]
    fn on_grid_target_occupies_exactly_one_row() {
        let (params, shape, kappa) = setup(16);
        let m = 16usize;
        let bin = 2.0 * PI / (params.pri * m as f64);
        let t = Target::new(4.0e-6, -5.0 * bin, C64::new(0.3, 0.9));
        let x = xample_analytic(&params, &shape, &[t], None, &kappa, 0.0, 0).unwrap();
        let grid = focus_grid(&x, m, &Window::rectangular(16)).unwrap();
        let row_energy: Vec<f64> = (0..m)
            .map(|r| grid.psi.row(r).iter().map(|c| c.norm_sqr()).sum())
            .collect();
        let total: f64 = row_energy.iter().sum();
        let hot = (0..m).max_by(|&a, &b| row_energy[a].total_cmp(&row_energy[b])).unwrap();
        assert_eq!(grid.m_of_row(hot), -5);
        let off = total - row_energy[hot];
        assert!(off <= 1e-20 * total, "off-row energy fraction {}", off / total);
    }

    #[test]
    fn half_bin_grid_straddle_loss_stays_above_ninety_percent() {
        let (params, shape, kappa) = setup(40);
        let m = 80usize; // M = 2P
        let mut rng = crate::seed::rng(5);
        let numax = params.doppler_max();
        for _ in 0..20 {
            let nu = (rng.gen::<f64>() * 2.0 - 1.0) * numax * 0.98;
            let t = Target::new(2.0e-6, nu, C64::new(1.0, 0.0));
            let x = xample_analytic(&params, &shape, &[t], None, &kappa, 0.0, 0).unwrap();
            let grid = focus_grid(&x, m, &Window::rectangular(40)).unwrap();
            let c_norm = x.coeffs.row(0).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let peak = (0..m)
                .map(|r| grid.psi.row(r).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
                .fold(0.0, f64::max);
            assert!(peak >= 0.9 * 40.0 * c_norm, "peak {peak}");
        }
    }

    #[test]
    fn gain_peak_null_and_edge_match_closed_form() {
        let pri = 10e-6;
        let p = 100usize;
        let w = Window::rectangular(p);
        // Peak: exactly P.
        let g0 = dirichlet_gain(3.3e4, 3.3e4, pri, &w);
        assert_eq!(g0, C64::new(p as f64, 0.0));
        // First null at |Δν| = 2π/(Pτ).
        let null = dirichlet_gain(2.0 * PI / (p as f64 * pri), 0.0, pri, &w);
        assert!(null.norm() < 1e-10);
        // Focus-zone edge |Δν| = π/(Pτ): |g| = 1/sin(π/2P) ≈ 2P/π.
        let edge = dirichlet_gain(PI / (p as f64 * pri), 0.0, pri, &w);
        let expect = 1.0 / (PI / (2.0 * p as f64)).sin();
        assert!((edge.norm() - expect).abs() < 1e-9 * expect);
        assert!((edge.norm() - 2.0 * p as f64 / PI).abs() / expect < 0.01);
    }

    #[test]
    fn focus_zone_keeps_two_over_pi_gain() {
        let pri = 10e-6;
        let p = 100usize;
        let w = Window::rectangular(p);
        let edge = PI / (p as f64 * pri);
        for i in 0..50 {
            let dnu = edge * (i as f64 + 0.5) / 50.0;
            let g = dirichlet_gain(dnu, 0.0, pri, &w).norm();
            assert!(g >= 2.0 / PI * p as f64 * 0.999, "at {dnu}: {g}");
        }
    }

    #[test]
    fn windowed_gain_matches_direct_sum() {
        let pri = 1e-5;
        let w = Window::new(WindowKind::Hann, 31).unwrap();
        let nu = 4.1e4;
        let g = dirichlet_gain(nu, 1.3e4, pri, &w);
        let mut acc = C64::new(0.0, 0.0);
        for (i, wi) in w.weights.iter().enumerate() {
            acc += C64::from_polar(*wi, (nu - 1.3e4) * pri * i as f64);
        }
        assert!((g - acc).norm() < 1e-12 * acc.norm().max(1.0));
    }

    #[test]
    fn taylor_sidelobes_stay_below_spec() {
        let p = 100usize;
        let pri = 10e-6;
        let w = Window::new(WindowKind::taylor_50(), p).unwrap();
        let peak = dirichlet_gain(0.0, 0.0, pri, &w).norm();
        let bin = 2.0 * PI / (p as f64 * pri);
        // Beyond the Taylor main lobe the response must sit at or below
        // -50 dB + 2 dB tolerance. Sweep densely out to the unambiguous
        // edge.
        let limit = peak * 10f64.powf(-48.0 / 20.0);
        let mut dnu = 3.0 * bin;
        while dnu < PI / pri {
            let g = dirichlet_gain(dnu, 0.0, pri, &w).norm();
            assert!(g <= limit, "sidelobe at {:.2} bins: {:.2} dB", dnu / bin,
                20.0 * (g / peak).log10());
            dnu += bin / 7.0;
        }
    }
}

