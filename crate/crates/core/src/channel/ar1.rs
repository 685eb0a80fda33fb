use num_complex::Complex64;
use rand::Rng;

use crate::error::argument;
use crate::mathkernel::{stream_rng, unit_complex_gaussian};
use crate::{ComplexSeries, Result};

use super::FadingSpec;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.abs() <= 1.0 {
        Ok(())
    } else {
        Err(argument(format!("AR(1) coefficient {alpha} outside [-1, 1]")))
    }
}

/// α·h + √(1−α²)·e
pub fn ar1_step(h_prev: Complex64, alpha: f64, innovation: Complex64) -> Result<Complex64> {
    check_alpha(alpha)?;
    Ok(h_prev * alpha + innovation * (1.0 - alpha * alpha).sqrt())
}

/// A unit-power AR(1) fading process with its current state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ar1Process {
    alpha: f64,
    innovation_gain: f64,
    state: Complex64,
}

impl Ar1Process {
    pub fn new(alpha: f64, initial: Complex64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            alpha,
            innovation_gain: (1.0 - alpha * alpha).sqrt(),
            state: initial,
        })
    }

    /// Starts from a CN(0,1) draw, i.e. in the stationary distribution.
    pub fn stationary<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> Result<Self> {
        Self::new(alpha, unit_complex_gaussian(rng))
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn current(&self) -> Complex64 {
        self.state
    }

    #[inline]
    pub fn step(&mut self, innovation: Complex64) -> Complex64 {
        self.state = self.state * self.alpha + innovation * self.innovation_gain;
        self.state
    }

    /// Replaces the state with a fresh stationary draw.
    pub fn restart<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        self.state = unit_complex_gaussian(rng);
    }
}

/// A stationary AR(1) series whose coefficient is the Jakes correlation of `spec`.
pub fn generate_ar1_process(spec: &FadingSpec, seed: u64) -> Result<ComplexSeries> {
    let spec = FadingSpec::new(spec.normalized_doppler, spec.spacing_n, spec.length)?;
    let mut rng = stream_rng(seed, 0);
    let mut process = Ar1Process::stationary(spec.alpha()?, &mut rng)?;
    let mut out = Vec::with_capacity(spec.length);
    out.push(process.current());
    for _ in 1..spec.length {
        let e = unit_complex_gaussian(&mut rng);
        out.push(process.step(e));
    }
    Ok(out)
}
