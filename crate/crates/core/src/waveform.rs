//! Transmit pulse definition and Nyquist-rate signal synthesis.
//!
//! The pulse is defined by its spectrum sampled on the Fourier grid
//! `ω = 2πk/τ` for the in-band indices `|2πk/τ| ≤ πB_h`; time-domain
//! values come from the band-limited τ-periodic kernel
//! `h(t) = Σ_k (H_k/τ) e^{j2πkt/τ}`. Received frames are synthesized as
//! sums of shifted kernels with a constant Doppler phase per pulse, so the
//! time-domain signal and the analytic Fourier coefficients describe the
//! same object exactly (frames wrap circularly within their own PRI).
//! Everything is complex baseband.

use crate::error::{Error, Result};
use crate::scene::{ClutterField, RadarParams, Target};
use crate::seed;
use crate::C64;
use rand_distr::{Distribution, Normal};
use std::f64::consts::PI;

/// Spectral profile family of the transmit pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseKind {
    /// Constant spectrum across the band; the default. Invertible on any
    /// coefficient set, which the dictionary normalization requires.
    Flat,
    /// Root-raised-cosine taper confined to the band: flat out to
    /// `(1-rolloff)·B_h/2`, cosine taper to zero at `B_h/2`.
    RootRaisedCosine { rolloff: f64 },
    /// Gaussian low-pass profile (σ = B_h/8); concentrates the pulse energy
    /// in the central coefficients at constant total energy.
    GaussianWindowed,
}

/// Transmit pulse: kind, band geometry and the tabulated spectrum
/// `H(2πk/τ)` for in-band `k`.
///
/// Normalization: `Σ_k |H_k|² = τ·T_p`, i.e. the pulse has energy `T_p`
/// over one period and `(1/T_p)∫|h|²dt = 1`. This is the convention the
/// SNR definition relies on.
#[derive(Debug, Clone)]
pub struct PulseShape {
    pub kind: PulseKind,
    pub bandwidth: f64,
    pub duration: f64,
    pub pri: f64,
    k_lo: i64,
    table: Vec<f64>,
}

impl PulseShape {
    pub fn build(kind: PulseKind, params: &RadarParams) -> Result<Self> {
        if let PulseKind::RootRaisedCosine { rolloff } = kind {
            if !(rolloff > 0.0 && rolloff <= 1.0) {
                return Err(Error::InvalidParameter(
                    "rolloff must lie in (0, 1]".into(),
                ));
            }
        }
        let n = params.nyquist_count();
        let k_lo = -(n as i64) / 2;
        let tau = params.pri;
        let mut table: Vec<f64> = (0..n)
            .map(|i| {
                let k = k_lo + i as i64;
                let f = k as f64 / tau;
                match kind {
                    PulseKind::Flat => 1.0,
                    PulseKind::RootRaisedCosine { rolloff } => {
                        let f1 = (1.0 - rolloff) * params.bandwidth / 2.0;
                        let f2 = params.bandwidth / 2.0;
                        let af = f.abs();
                        if af <= f1 {
                            1.0
                        } else if af <= f2 {
                            (0.5 * (1.0 + (PI * (af - f1) / (f2 - f1)).cos())).sqrt()
                        } else {
                            0.0
                        }
                    }
                    PulseKind::GaussianWindowed => {
                        let sigma = params.bandwidth / 8.0;
                        (-0.5 * (f / sigma).powi(2)).exp()
                    }
                }
            })
            .collect();
        let raw_energy: f64 = table.iter().map(|h| h * h).sum();
        let scale = (tau * params.pulse_time / raw_energy).sqrt();
        for h in &mut table {
            *h *= scale;
        }
        Ok(Self {
            kind,
            bandwidth: params.bandwidth,
            duration: params.pulse_time,
            pri: tau,
            k_lo,
            table,
        })
    }

    /// In-band coefficient index range (inclusive ends).
    pub fn band(&self) -> (i64, i64) {
        (self.k_lo, self.k_lo + self.table.len() as i64 - 1)
    }

    /// `H(2πk/τ)`; errors for indices outside the tabulated band.
    pub fn spectrum_at(&self, k: i64) -> Result<C64> {
        let (lo, hi) = self.band();
        if k < lo || k > hi {
            return Err(Error::OutOfBand { k, lo, hi });
        }
        Ok(C64::new(self.table[(k - self.k_lo) as usize], 0.0))
    }

    /// Pulse energy over one period, `Σ|H_k|²/τ`; equals `T_p` by
    /// construction.
    pub fn energy(&self) -> f64 {
        self.table.iter().map(|h| h * h).sum::<f64>() / self.pri
    }

    /// Value of the τ-periodic band-limited kernel at time `t`.
    pub fn eval_periodic(&self, t: f64) -> C64 {
        let tau = self.pri;
        let theta = 2.0 * PI * t / tau;
        match self.kind {
            PulseKind::Flat => {
                // Geometric sum over the contiguous run k_lo..k_hi.
                let n = self.table.len() as f64;
                let h0 = self.table[0];
                let half = theta / 2.0;
                let s = half.sin();
                let ratio = if s.abs() < 1e-9 {
                    // Near θ/2 = mπ the ratio tends to (-1)^{m(n-1)}·n.
                    let m = (half / PI).round();
                    let eps = half - m * PI;
                    let sign = if ((m as i64) * (self.table.len() as i64 - 1)).rem_euclid(2) == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    sign * n * (1.0 - (n * n - 1.0) * eps * eps / 6.0)
                } else {
                    (n * half).sin() / s
                };
                // Phase center of the run: k_lo + (n-1)/2.
                let center = self.k_lo as f64 + (n - 1.0) / 2.0;
                let phase = C64::from_polar(1.0, center * theta);
                // Dirichlet sign bookkeeping: sin(nθ/2)/sin(θ/2) evaluated
                // directly already carries the sign.
                phase * (h0 / tau) * ratio
            }
            _ => {
                let mut acc = C64::new(0.0, 0.0);
                for (i, h) in self.table.iter().enumerate() {
                    let k = self.k_lo + i as i64;
                    acc += C64::from_polar(h / tau, k as f64 * theta);
                }
                acc
            }
        }
    }
}

/// Complex baseband samples of the full CPI, `pulse_count` frames of
/// `frame_len` samples each at `rate` Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct NyquistSignal {
    pub samples: Vec<C64>,
    pub rate: f64,
    pub frame_len: usize,
}

impl NyquistSignal {
    pub fn pulse_count(&self) -> usize {
        self.samples.len() / self.frame_len
    }

    pub fn frame(&self, p: usize) -> &[C64] {
        &self.samples[p * self.frame_len..(p + 1) * self.frame_len]
    }

    /// Keeps every `factor`-th sample; the naive rate reduction used to
    /// show what plain undersampling does to classic processing.
    pub fn decimate(&self, factor: usize) -> Result<NyquistSignal> {
        if factor == 0 || self.frame_len % factor != 0 {
            return Err(Error::InvalidParameter(format!(
                "decimation factor {factor} must divide the frame length {}",
                self.frame_len
            )));
        }
        let samples = self
            .samples
            .iter()
            .step_by(factor)
            .copied()
            .collect::<Vec<_>>();
        Ok(NyquistSignal {
            samples,
            rate: self.rate / factor as f64,
            frame_len: self.frame_len / factor,
        })
    }
}

/// Synthesizes the received CPI for a scene: each frame is the sum of
/// delay-shifted pulse kernels with the per-pulse Doppler phase
/// `e^{-jν_ℓ pτ}`. `oversample` multiplies the Nyquist rate `B_h`
/// (quadrature oracles want ≥ 8).
pub fn synthesize(
    params: &RadarParams,
    shape: &PulseShape,
    targets: &[Target],
    clutter: Option<&ClutterField>,
    oversample: usize,
) -> Result<NyquistSignal> {
    if oversample == 0 {
        return Err(Error::InvalidParameter("oversample must be ≥ 1".into()));
    }
    for t in targets {
        t.validate(params)?;
    }
    let p_count = params.pulse_count;
    let frame_len = params.nyquist_count() * oversample;
    let rate = params.bandwidth * oversample as f64;
    let dt = 1.0 / rate;
    let tau = params.pri;

    let mut all: Vec<&Target> = targets.iter().collect();
    if let Some(field) = clutter {
        all.extend(field.scatterers.iter());
    }

    let mut samples = vec![C64::new(0.0, 0.0); p_count * frame_len];
    for t in &all {
        // Per-target kernel samples repeat across frames; only the Doppler
        // phase changes pulse to pulse.
        let kernel: Vec<C64> = (0..frame_len)
            .map(|i| shape.eval_periodic(i as f64 * dt - t.delay))
            .collect();
        for p in 0..p_count {
            let rot = t.amplitude * C64::from_polar(1.0, -t.doppler * p as f64 * tau);
            let frame = &mut samples[p * frame_len..(p + 1) * frame_len];
            for (s, k) in frame.iter_mut().zip(kernel.iter()) {
                *s += rot * k;
            }
        }
    }
    Ok(NyquistSignal {
        samples,
        rate,
        frame_len,
    })
}

/// Noise power spectral density that puts `ref_target` at `snr_db`:
/// `SNR_ℓ = |α_ℓ|² / (N_0 B_h)` under the unit pulse-energy convention.
pub fn noise_psd_for_snr(snr_db: f64, ref_target: &Target, bandwidth: f64) -> f64 {
    if snr_db.is_infinite() && snr_db > 0.0 {
        return 0.0;
    }
    ref_target.amplitude.norm_sqr() / (bandwidth * 10f64.powf(snr_db / 10.0))
}

/// Adds circular complex white Gaussian noise, band-limited to the
/// signal's sampled band: per-sample variance `N_0 · rate`. The PSD is
/// chosen so `ref_target` sits at `snr_db_ref`; `+∞` disables the noise.
pub fn add_awgn(
    signal: &NyquistSignal,
    params: &RadarParams,
    snr_db_ref: f64,
    ref_target: &Target,
    rng_seed: u64,
) -> NyquistSignal {
    let n0 = noise_psd_for_snr(snr_db_ref, ref_target, params.bandwidth);
    add_noise_psd(signal, n0, rng_seed)
}

/// Adds noise with an explicit PSD; used when several detectors must share
/// one realization.
pub fn add_noise_psd(signal: &NyquistSignal, n0: f64, rng_seed: u64) -> NyquistSignal {
    if n0 == 0.0 {
        return signal.clone();
    }
    let sigma_component = (n0 * signal.rate / 2.0).sqrt();
    let normal = Normal::new(0.0, sigma_component).unwrap();
    let mut rng = seed::rng(rng_seed);
    let samples = signal
        .samples
        .iter()
        .map(|s| s + C64::new(normal.sample(&mut rng), normal.sample(&mut rng)))
        .collect();
    NyquistSignal {
        samples,
        rate: signal.rate,
        frame_len: signal.frame_len,
    }
}

/// Noise-only signal with per-sample variance `N_0 · rate`; the time-domain
/// counterpart of coefficient-domain noise of variance `N_0/τ`.
pub fn noise_signal(params: &RadarParams, n0: f64, oversample: usize, rng_seed: u64) -> NyquistSignal {
    let frame_len = params.nyquist_count() * oversample;
    let rate = params.bandwidth * oversample as f64;
    let zero = NyquistSignal {
        samples: vec![C64::new(0.0, 0.0); params.pulse_count * frame_len],
        rate,
        frame_len,
    };
    add_noise_psd(&zero, n0, rng_seed)
}
