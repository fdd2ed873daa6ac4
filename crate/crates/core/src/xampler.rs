//! Acquisition of the per-pulse Fourier-series coefficients ("Xamples").
//!
//! `xample_analytic` evaluates the closed form
//! `c_p[k] = (1/τ) H(2πk/τ) Σ_ℓ α_ℓ e^{-jν_ℓ pτ} e^{-j2πk τ_ℓ/τ}`
//! directly from the scene; `xample_numeric` integrates a synthesized
//! time-domain signal instead and acts as the independent oracle for it.
//! Coefficient-domain noise `w_p[k]` is i.i.d. circular complex Gaussian
//! with variance `σ²/τ`, the image of time-domain white noise of
//! intensity σ² under the coefficient integral.

use crate::error::{Error, Result};
use crate::scene::{ClutterField, RadarParams, Target};
use crate::seed;
use crate::waveform::{NyquistSignal, PulseShape};
use crate::C64;
use ndarray::Array2;
use rand_distr::{Distribution, Normal};
use std::f64::consts::PI;

/// How the coefficient indices κ are chosen within the band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KappaMode {
    /// A contiguous run of indices, centered at DC plus `offset`.
    Consecutive { offset: i64 },
    /// Uniformly at random without replacement over the in-band indices.
    UniformRandom,
}

impl KappaMode {
    pub fn centered() -> Self {
        KappaMode::Consecutive { offset: 0 }
    }
}

/// An ordered set of distinct in-band coefficient indices.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    pub indices: Vec<i64>,
    pub mode: KappaMode,
}

impl CoefficientSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// In-band index range for the given parameters: `N = τ·B_h` indices
/// centered on DC, `[-⌊N/2⌋, N-⌊N/2⌋)`.
pub fn in_band_range(params: &RadarParams) -> (i64, i64) {
    let n = params.nyquist_count() as i64;
    let lo = -(n / 2);
    (lo, lo + n - 1)
}

/// Selects the coefficient index set κ.
pub fn select_kappa(
    params: &RadarParams,
    count: usize,
    mode: KappaMode,
    rng_seed: u64,
) -> Result<CoefficientSet> {
    let (lo, hi) = in_band_range(params);
    let capacity = (hi - lo + 1) as usize;
    if count == 0 || count > capacity {
        return Err(Error::BandCapacity {
            requested: count,
            capacity,
        });
    }
    let indices = match mode {
        KappaMode::Consecutive { offset } => {
            let start = offset - (count as i64) / 2;
            let end = start + count as i64 - 1;
            if start < lo || end > hi {
                return Err(Error::InvalidParameter(format!(
                    "consecutive run {start}..={end} leaves the band {lo}..={hi}"
                )));
            }
            (start..=end).collect()
        }
        KappaMode::UniformRandom => {
            let mut rng = seed::rng(rng_seed);
            let mut picks = rand::seq::index::sample(&mut rng, capacity, count).into_vec();
            picks.sort_unstable();
            picks.into_iter().map(|i| lo + i as i64).collect()
        }
    };
    Ok(CoefficientSet { indices, mode })
}

/// The `P × |κ|` coefficient matrix plus its index set.
#[derive(Debug, Clone, PartialEq)]
pub struct XampleSet {
    /// Row `p`, column aligned with `kappa.indices`.
    pub coeffs: Array2<C64>,
    pub kappa: CoefficientSet,
    /// PRI of the acquiring radar, needed by all downstream transforms.
    pub pri: f64,
    /// Per-coefficient noise variance `σ²/τ` actually injected (0 if clean).
    pub noise_var: f64,
}

impl XampleSet {
    pub fn pulse_count(&self) -> usize {
        self.coeffs.nrows()
    }

    /// Element-wise sum of two acquisitions of the same geometry; used to
    /// overlay a clean scene with a separately drawn noise realization.
    pub fn superpose(&self, other: &XampleSet) -> Result<XampleSet> {
        if self.kappa != other.kappa || self.coeffs.dim() != other.coeffs.dim() {
            return Err(Error::DimensionMismatch(
                "cannot superpose Xample sets with different geometry".into(),
            ));
        }
        Ok(XampleSet {
            coeffs: &self.coeffs + &other.coeffs,
            kappa: self.kappa.clone(),
            pri: self.pri,
            noise_var: self.noise_var + other.noise_var,
        })
    }
}

/// Evaluates the coefficient closed form exactly for every `(p, k)`; adds
/// i.i.d. circular complex Gaussian noise of variance `σ²/τ` per
/// coefficient when `noise_sigma2 > 0`.
pub fn xample_analytic(
    params: &RadarParams,
    shape: &PulseShape,
    targets: &[Target],
    clutter: Option<&ClutterField>,
    kappa: &CoefficientSet,
    noise_sigma2: f64,
    rng_seed: u64,
) -> Result<XampleSet> {
    for t in targets {
        t.validate(params)?;
    }
    let tau = params.pri;
    let p_count = params.pulse_count;
    let k_count = kappa.len();
    let h: Vec<C64> = kappa
        .indices
        .iter()
        .map(|&k| shape.spectrum_at(k))
        .collect::<Result<_>>()?;

    let mut coeffs = Array2::zeros((p_count, k_count));
    let mut scatterers: Vec<&Target> = targets.iter().collect();
    if let Some(field) = clutter {
        scatterers.extend(field.scatterers.iter());
    }
    for t in scatterers {
        // Column factor (1/τ)H_k e^{-j2πkτ_ℓ/τ}, row factor α e^{-jνpτ}.
        let col: Vec<C64> = kappa
            .indices
            .iter()
            .zip(h.iter())
            .map(|(&k, hk)| hk / tau * C64::from_polar(1.0, -2.0 * PI * k as f64 * t.delay / tau))
            .collect();
        for p in 0..p_count {
            let row = t.amplitude * C64::from_polar(1.0, -t.doppler * p as f64 * tau);
            for (c, ck) in coeffs.row_mut(p).iter_mut().zip(col.iter()) {
                *c += row * ck;
            }
        }
    }

    let mut noise_var = 0.0;
    if noise_sigma2 > 0.0 {
        noise_var = noise_sigma2 / tau;
        let normal = Normal::new(0.0, (noise_var / 2.0).sqrt()).unwrap();
        let mut rng = seed::rng(rng_seed);
        for c in coeffs.iter_mut() {
            *c += C64::new(normal.sample(&mut rng), normal.sample(&mut rng));
        }
    }

    Ok(XampleSet {
        coeffs,
        kappa: kappa.clone(),
        pri: tau,
        noise_var,
    })
}

/// Recovers the coefficients from a time-domain signal by per-frame
/// quadrature of `c_p[k] = (1/τ)∫ x_p(t) e^{-j2πkt/τ} dt`; the independent
/// oracle for [`xample_analytic`]. The trapezoidal rule with the periodic
/// wrap of each frame reduces to the rectangle sum below, which is
/// spectrally accurate for band-limited frames.
pub fn xample_numeric(
    signal: &NyquistSignal,
    params: &RadarParams,
    kappa: &CoefficientSet,
) -> Result<XampleSet> {
    if signal.rate < params.bandwidth {
        return Err(Error::InvalidParameter(format!(
            "signal rate {} is below the Nyquist rate {}",
            signal.rate, params.bandwidth
        )));
    }
    if signal.pulse_count() != params.pulse_count {
        return Err(Error::DimensionMismatch(format!(
            "signal holds {} frames, parameters say {}",
            signal.pulse_count(),
            params.pulse_count
        )));
    }
    let tau = params.pri;
    let frame = signal.frame_len;
    let dt = 1.0 / signal.rate;
    let p_count = params.pulse_count;
    let mut coeffs = Array2::zeros((p_count, kappa.len()));
    for p in 0..p_count {
        let x = signal.frame(p);
        for (j, &k) in kappa.indices.iter().enumerate() {
            // Phase recurrence e^{-j2πk n/(τ·rate)}.
            let step = C64::from_polar(1.0, -2.0 * PI * k as f64 * dt / tau);
            let mut ph = C64::new(1.0, 0.0);
            let mut acc = C64::new(0.0, 0.0);
            for n in 0..frame {
                acc += x[n] * ph;
                ph *= step;
            }
            coeffs[[p, j]] = acc * dt / tau;
        }
    }
    Ok(XampleSet {
        coeffs,
        kappa: kappa.clone(),
        pri: tau,
        noise_var: 0.0,
    })
}
