use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::argument;
use crate::mathkernel::{bessel_j0, stream_rng, unit_complex_gaussian};
use crate::{ComplexSeries, Result};

/// Sinusoids per quadrature component of the sum-of-sinusoids generator.
pub const SOS_SINUSOIDS: usize = 16;

/// One fading link: Doppler rate, channel-use spacing and series length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FadingSpec {
    /// Maximum Doppler shift times the symbol period.
    pub normalized_doppler: f64,
    /// Channel uses between the two symbols a differential decision spans.
    pub spacing_n: usize,
    pub length: usize,
}

impl FadingSpec {
    pub fn new(normalized_doppler: f64, spacing_n: usize, length: usize) -> Result<Self> {
        check_doppler(normalized_doppler)?;
        if spacing_n == 0 {
            return Err(argument("channel-use spacing must be at least 1"));
        }
        if length == 0 {
            return Err(argument("fading series length must be positive"));
        }
        Ok(Self {
            normalized_doppler,
            spacing_n,
            length,
        })
    }

    /// Correlation between channel gains one spacing apart.
    pub fn alpha(&self) -> Result<f64> {
        jakes_autocorrelation(self.normalized_doppler, self.spacing_n)
    }
}

fn check_doppler(f: f64) -> Result<()> {
    if (0.0..0.5).contains(&f) {
        Ok(())
    } else {
        Err(argument(format!("normalized Doppler {f} outside [0, 0.5)")))
    }
}

/// J₀(2π f n), the Jakes autocorrelation at a lag of `n` channel uses.
pub fn jakes_autocorrelation(f: f64, n: usize) -> Result<f64> {
    check_doppler(f)?;
    bessel_j0(2.0 * PI * f * n as f64)
}

/// Improved sum-of-sinusoids Rayleigh generator with random arrival angles
/// and phases; one instance is one channel realization.
#[derive(Clone, Debug)]
pub struct SumOfSinusoids {
    omega_c: [f64; SOS_SINUSOIDS],
    omega_s: [f64; SOS_SINUSOIDS],
    phase_c: [f64; SOS_SINUSOIDS],
    phase_s: [f64; SOS_SINUSOIDS],
    /// A frozen CN(0,1) gain when the Doppler is zero.
    frozen: Option<Complex64>,
}

impl SumOfSinusoids {
    pub fn new<R: Rng + ?Sized>(normalized_doppler: f64, rng: &mut R) -> Result<Self> {
        check_doppler(normalized_doppler)?;
        let mut gen = Self {
            omega_c: [0.0; SOS_SINUSOIDS],
            omega_s: [0.0; SOS_SINUSOIDS],
            phase_c: [0.0; SOS_SINUSOIDS],
            phase_s: [0.0; SOS_SINUSOIDS],
            frozen: None,
        };
        if normalized_doppler == 0.0 {
            gen.frozen = Some(unit_complex_gaussian(rng));
            return Ok(gen);
        }
        let wd = 2.0 * PI * normalized_doppler;
        let theta = rng.random_range(-PI..PI);
        let m = SOS_SINUSOIDS as f64;
        for n in 0..SOS_SINUSOIDS {
            let angle = (2.0 * PI * (n as f64 + 1.0) - PI + theta) / (4.0 * m);
            gen.omega_c[n] = wd * angle.cos();
            gen.omega_s[n] = wd * angle.sin();
            gen.phase_c[n] = rng.random_range(-PI..PI);
            gen.phase_s[n] = rng.random_range(-PI..PI);
        }
        Ok(gen)
    }

    /// Channel gain at time `t`, measured in symbol periods.
    pub fn gain(&self, t: f64) -> Complex64 {
        if let Some(h) = self.frozen {
            return h;
        }
        let mut xc = 0.0;
        let mut xs = 0.0;
        for n in 0..SOS_SINUSOIDS {
            xc += (self.omega_c[n] * t + self.phase_c[n]).cos();
            xs += (self.omega_s[n] * t + self.phase_s[n]).cos();
        }
        // √(2/M) per component, then 1/√2 for unit complex power.
        let scale = (1.0 / SOS_SINUSOIDS as f64).sqrt();
        Complex64::new(xc * scale, xs * scale)
    }
}

/// A Jakes-faded series sampled every `spec.spacing_n` channel uses.
pub fn generate_jakes_process(spec: &FadingSpec, seed: u64) -> Result<ComplexSeries> {
    let spec = FadingSpec::new(spec.normalized_doppler, spec.spacing_n, spec.length)?;
    let mut rng = stream_rng(seed, 0);
    let gen = SumOfSinusoids::new(spec.normalized_doppler, &mut rng)?;
    let step = spec.spacing_n as f64;
    Ok((0..spec.length).map(|k| gen.gain(k as f64 * step)).collect())
}
