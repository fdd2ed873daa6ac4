//! Radar parameters, target scenes and clutter fields.
//!
//! A scene is a list of point scatterers inside the radar's unambiguous
//! region: delays in `[0, τ)` and Doppler frequencies in `[-π/τ, π/τ)`
//! (rad/s), each with a complex amplitude. All types are immutable value
//! objects; random generation is a pure function of `(params, seed)`.

use crate::error::{Error, Result};
use crate::seed;
use crate::C64;
use rand::Rng;
use std::f64::consts::PI;

/// Coherent-processing-interval description.
///
/// `N = τ·B_h` (the per-pulse Nyquist sample count) must come out integral;
/// the constructor rejects parameter combinations where it does not, since
/// the classic baseline needs whole frames.
#[derive(Debug, Clone, PartialEq)]
pub struct RadarParams {
    /// Number of pulses P in the CPI.
    pub pulse_count: usize,
    /// Pulse repetition interval τ (seconds).
    pub pri: f64,
    /// Pulse bandwidth B_h (Hz).
    pub bandwidth: f64,
    /// Nominal pulse duration T_p (seconds); fixes the energy convention.
    pub pulse_time: f64,
    /// One-sided noise power spectral density N_0 (W/Hz).
    pub noise_psd: f64,
    /// Carrier frequency f_c (Hz); only used for assumption checks.
    pub carrier: Option<f64>,
}

impl RadarParams {
    pub fn new(
        pulse_count: usize,
        pri: f64,
        bandwidth: f64,
        pulse_time: f64,
        noise_psd: f64,
    ) -> Result<Self> {
        let p = Self {
            pulse_count,
            pri,
            bandwidth,
            pulse_time,
            noise_psd,
            carrier: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_carrier(mut self, f_c: f64) -> Self {
        self.carrier = Some(f_c);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.pulse_count == 0 {
            return Err(Error::InvalidParameter("pulse_count must be ≥ 1".into()));
        }
        if !(self.pri > 0.0) {
            return Err(Error::InvalidParameter("pri must be > 0".into()));
        }
        if !(self.bandwidth > 0.0) {
            return Err(Error::InvalidParameter("bandwidth must be > 0".into()));
        }
        if !(self.pulse_time > 0.0 && self.pulse_time <= self.pri) {
            return Err(Error::InvalidParameter(
                "pulse_time must satisfy 0 < T_p ≤ τ".into(),
            ));
        }
        if self.noise_psd < 0.0 {
            return Err(Error::InvalidParameter("noise_psd must be ≥ 0".into()));
        }
        let n = self.pri * self.bandwidth;
        if (n - n.round()).abs() > 1e-6 * n.max(1.0) || n.round() < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "τ·B_h = {n} is not a positive integer; adjust bandwidth or PRI"
            )));
        }
        Ok(())
    }

    /// Nyquist sample count per pulse, `N = τ·B_h`.
    pub fn nyquist_count(&self) -> usize {
        (self.pri * self.bandwidth).round() as usize
    }

    /// Classic delay resolution cell, `1/B_h` seconds.
    pub fn delay_bin(&self) -> f64 {
        1.0 / self.bandwidth
    }

    /// Classic Doppler resolution cell, `2π/(Pτ)` rad/s.
    pub fn doppler_bin(&self) -> f64 {
        2.0 * PI / (self.pulse_count as f64 * self.pri)
    }

    /// Unambiguous Doppler half-range `π/τ` rad/s.
    pub fn doppler_max(&self) -> f64 {
        PI / self.pri
    }
}

/// One point scatterer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Target {
    /// Delay τ_ℓ in seconds, inside `[0, τ)`.
    pub delay: f64,
    /// Doppler ν_ℓ in rad/s, inside `[-π/τ, π/τ)`.
    pub doppler: f64,
    /// Complex amplitude α_ℓ.
    pub amplitude: C64,
}

impl Target {
    pub fn new(delay: f64, doppler: f64, amplitude: C64) -> Self {
        Self {
            delay,
            doppler,
            amplitude,
        }
    }

    pub fn validate(&self, params: &RadarParams) -> Result<()> {
        if !(0.0..params.pri).contains(&self.delay) {
            return Err(Error::InvalidParameter(format!(
                "target delay {} outside [0, τ={})",
                self.delay, params.pri
            )));
        }
        let numax = params.doppler_max();
        if !(-numax..numax).contains(&self.doppler) {
            return Err(Error::InvalidParameter(format!(
                "target Doppler {} outside [-π/τ, π/τ)",
                self.doppler
            )));
        }
        Ok(())
    }
}

/// Validates a whole scene: per-target bounds plus pairwise uniqueness of
/// the (delay, Doppler) pairs.
pub fn validate_scene(params: &RadarParams, targets: &[Target]) -> Result<()> {
    for t in targets {
        t.validate(params)?;
    }
    for i in 0..targets.len() {
        for j in i + 1..targets.len() {
            if targets[i].delay == targets[j].delay && targets[i].doppler == targets[j].doppler {
                return Err(Error::InvalidParameter(format!(
                    "targets {i} and {j} share the same (delay, Doppler) pair"
                )));
            }
        }
    }
    Ok(())
}

/// Clutter: many weak scatterers concentrated in a narrow Doppler band.
#[derive(Debug, Clone, PartialEq)]
pub struct ClutterField {
    pub scatterers: Vec<Target>,
    /// Full width of the Doppler band around zero that holds the scatterers.
    pub doppler_spread: f64,
    /// Signal-to-clutter ratio this field realizes, in dB.
    pub scr_db: f64,
}

/// Random-scene generator configuration.
///
/// The minimum separations keep Monte Carlo draws away from degenerate
/// near-duplicate scenes; defaults are one classic resolution cell on
/// each axis.
#[derive(Debug, Clone)]
pub struct SceneGen {
    pub count: usize,
    /// Amplitudes are spread uniformly in dB over `[-amp_db_spread, 0]`
    /// relative to unit modulus; zero keeps all moduli at exactly 1.
    pub amp_db_spread: f64,
    /// Minimum |Δτ| between any two targets; `None` → one Nyquist bin.
    pub min_delay_sep: Option<f64>,
    /// Minimum circular |Δν|; `None` → one Doppler Nyquist bin.
    pub min_doppler_sep: Option<f64>,
    /// Keep |ν| at or above this value (e.g. away from a clutter notch).
    pub min_abs_doppler: f64,
}

impl SceneGen {
    pub fn new(count: usize) -> Self {
        Self {
            count,
            amp_db_spread: 0.0,
            min_delay_sep: None,
            min_doppler_sep: None,
            min_abs_doppler: 0.0,
        }
    }

    pub fn amp_db_spread(mut self, db: f64) -> Self {
        self.amp_db_spread = db;
        self
    }

    pub fn min_abs_doppler(mut self, nu: f64) -> Self {
        self.min_abs_doppler = nu;
        self
    }

    /// Draws the scene. Deterministic for a fixed `(params, self, seed)`.
    pub fn draw(&self, params: &RadarParams, rng_seed: u64) -> Result<Vec<Target>> {
        if self.count == 0 {
            return Err(Error::InvalidParameter("scene count must be ≥ 1".into()));
        }
        let dsep = self.min_delay_sep.unwrap_or(params.delay_bin());
        let fsep = self.min_doppler_sep.unwrap_or(params.doppler_bin());
        let numax = params.doppler_max();
        if self.min_abs_doppler >= numax {
            return Err(Error::InvalidParameter(
                "min_abs_doppler leaves no admissible Doppler range".into(),
            ));
        }
        let mut rng = seed::rng(rng_seed);
        let mut targets: Vec<Target> = Vec::with_capacity(self.count);
        // Delays stay below 0.95τ so an echo of duration T_p remains inside
        // its own frame.
        let delay_hi = 0.95 * params.pri;
        let max_tries = 1000 * self.count;
        let mut tries = 0;
        while targets.len() < self.count {
            if tries >= max_tries {
                return Err(Error::SeparationUnsatisfiable {
                    requested: self.count,
                    retries: max_tries,
                });
            }
            tries += 1;
            let delay = rng.gen::<f64>() * delay_hi;
            let doppler = loop {
                let nu = (rng.gen::<f64>() * 2.0 - 1.0) * numax;
                if nu.abs() >= self.min_abs_doppler && nu < numax {
                    break nu;
                }
            };
            let ok = targets.iter().all(|t| {
                let dd = (t.delay - delay).abs();
                let df = circ_dist(t.doppler, doppler, 2.0 * numax);
                dd >= dsep && df >= fsep
            });
            if !ok {
                continue;
            }
            let modulus = if self.amp_db_spread > 0.0 {
                let u: f64 = rng.gen();
                10f64.powf(-u * self.amp_db_spread / 20.0)
            } else {
                1.0
            };
            let phase = rng.gen::<f64>() * 2.0 * PI;
            targets.push(Target::new(delay, doppler, C64::from_polar(modulus, phase)));
        }
        validate_scene(params, &targets)?;
        Ok(targets)
    }
}

/// Circular distance on a ring of circumference `period`.
fn circ_dist(a: f64, b: f64, period: f64) -> f64 {
    let d = (a - b).rem_euclid(period);
    d.min(period - d)
}

/// Draws `count` targets uniformly over the unambiguous region with default
/// separations. See [`SceneGen`] for the knobs.
pub fn random_scene(
    params: &RadarParams,
    count: usize,
    rng_seed: u64,
    amp_db_spread: f64,
) -> Result<Vec<Target>> {
    SceneGen::new(count)
        .amp_db_spread(amp_db_spread)
        .draw(params, rng_seed)
}

/// Builds a clutter field of `n_scatterers` equal-power scatterers whose
/// Doppler frequencies sit inside one classic Doppler bin around zero and
/// whose aggregate power realizes `scr_db` against `ref_power`:
/// `Σ|α_i|² = ref_power · 10^(-scr_db/10)`.
pub fn make_clutter(
    params: &RadarParams,
    n_scatterers: usize,
    scr_db: f64,
    ref_power: f64,
    rng_seed: u64,
) -> Result<ClutterField> {
    if n_scatterers == 0 {
        return Err(Error::InvalidParameter("n_scatterers must be ≥ 1".into()));
    }
    if !(ref_power > 0.0) {
        return Err(Error::InvalidParameter("ref_power must be > 0".into()));
    }
    let spread = params.doppler_bin();
    let total_power = ref_power * 10f64.powf(-scr_db / 10.0);
    let modulus = (total_power / n_scatterers as f64).sqrt();
    let mut rng = seed::rng(rng_seed);
    let scatterers = (0..n_scatterers)
        .map(|_| {
            let delay = rng.gen::<f64>() * params.pri;
            let doppler = (rng.gen::<f64>() - 0.5) * spread;
            let phase = rng.gen::<f64>() * 2.0 * PI;
            Target::new(delay, doppler, C64::from_polar(modulus, phase))
        })
        .collect();
    Ok(ClutterField {
        scatterers,
        doppler_spread: spread,
        scr_db,
    })
}

// ---------------------------------------------------------------------------
// Motion-assumption checks
// ---------------------------------------------------------------------------

/// Radial motion of one target, for the advisory assumption checks.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kinematics {
    /// Radial (closing) velocity, m/s.
    pub velocity: f64,
    /// Radial acceleration, m/s².
    pub acceleration: f64,
}

/// Outcome of one inequality check; `margin` is bound/value, and the check
/// passes while the margin stays above [`MARGIN_FACTOR`] (a "much less
/// than" needs headroom, not mere inequality).
#[derive(Debug, Clone)]
pub struct AssumptionCheck {
    pub pass: bool,
    pub margin: f64,
    pub detail: String,
}

/// Per-assumption results; `None` when the inputs needed for the check
/// (carrier, kinematics) were not supplied.
#[derive(Debug, Clone, Default)]
pub struct AssumptionReport {
    pub far_targets: Option<AssumptionCheck>,
    pub slow_targets: Option<AssumptionCheck>,
    pub small_acceleration: Option<AssumptionCheck>,
}

/// Headroom factor required for a "≪" inequality to count as satisfied.
pub const MARGIN_FACTOR: f64 = 10.0;

const SPEED_OF_LIGHT: f64 = 299_792_458.0;

fn check(margin: f64, detail: String) -> AssumptionCheck {
    AssumptionCheck {
        pass: margin >= MARGIN_FACTOR,
        margin,
        detail,
    }
}

/// Evaluates the far-target, slow-target and small-acceleration
/// inequalities for the worst target in the scene. Purely advisory; the
/// margins let the caller see how close each bound is.
pub fn check_assumptions(
    params: &RadarParams,
    targets: &[Target],
    kinematics: Option<&[Kinematics]>,
) -> AssumptionReport {
    let mut report = AssumptionReport::default();
    let Some(f_c) = params.carrier else {
        return report;
    };
    let Some(kin) = kinematics else {
        return report;
    };
    let cpi = params.pulse_count as f64 * params.pri;

    // Doppler from radial velocity: ν = 4π f_c v / c.
    let nu_of = |k: &Kinematics| 4.0 * PI * f_c * k.velocity / SPEED_OF_LIGHT;

    // A1: ν_ℓ ≪ 2π f_c τ_ℓ / (Pτ).
    let a1 = targets
        .iter()
        .zip(kin)
        .map(|(t, k)| {
            let bound = 2.0 * PI * f_c * t.delay / cpi;
            let nu = nu_of(k).abs();
            if nu == 0.0 {
                f64::INFINITY
            } else {
                bound / nu
            }
        })
        .fold(f64::INFINITY, f64::min);
    report.far_targets = Some(check(a1, format!("min margin of ν ≪ 2πf_cτ_ℓ/Pτ: {a1:.3e}")));

    // A2: ν_ℓ ≪ 2π f_c / (Pτ B_h)  (narrowband assumption).
    let bound2 = 2.0 * PI * f_c / (cpi * params.bandwidth);
    let a2 = kin
        .iter()
        .map(|k| {
            let nu = nu_of(k).abs();
            if nu == 0.0 {
                f64::INFINITY
            } else {
                bound2 / nu
            }
        })
        .fold(f64::INFINITY, f64::min);
    report.slow_targets = Some(check(a2, format!("min margin of ν ≪ 2πf_c/PτB_h: {a2:.3e}")));

    // A3: r̈ ≪ c / (2 f_c (Pτ)²).
    let bound3 = SPEED_OF_LIGHT / (2.0 * f_c * cpi * cpi);
    let a3 = kin
        .iter()
        .map(|k| {
            let acc = k.acceleration.abs();
            if acc == 0.0 {
                f64::INFINITY
            } else {
                bound3 / acc
            }
        })
        .fold(f64::INFINITY, f64::min);
    report.small_acceleration = Some(check(a3, format!("min margin of r̈ ≪ c/2f_c(Pτ)²: {a3:.3e}")));

    report
}
