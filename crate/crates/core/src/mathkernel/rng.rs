//! Seeded random streams and complex Gaussian sampling.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{error::argument, Result};

/// The generator used by every simulation in the crate.
pub type StreamRng = ChaCha8Rng;

/// Independent stream `stream` of the generator keyed by `seed`.
///
/// ChaCha streams do not overlap, so a worker that owns stream `s` never
/// observes numbers drawn by any other stream regardless of scheduling.
pub fn stream_rng(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A CN(0, `variance`) sample: real and imaginary parts independent with
/// variance `variance / 2` each.
pub fn sample_complex_gaussian<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Result<Complex64> {
    if !(variance >= 0.0) || !variance.is_finite() {
        return Err(argument(format!(
            "complex Gaussian variance must be finite and non-negative, got {variance}"
        )));
    }
    if variance == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(unit_complex_gaussian(rng) * variance.sqrt())
}

/// CN(0, 1) sample for hot loops that have already validated their inputs.
#[inline]
pub fn unit_complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_variance_is_exactly_zero() {
        let mut rng = stream_rng(1, 0);
        for _ in 0..100 {
            assert_eq!(
                sample_complex_gaussian(&mut rng, 0.0).unwrap(),
                Complex64::new(0.0, 0.0)
            );
        }
    }

    #[test]
    fn negative_variance_rejected() {
        let mut rng = stream_rng(1, 0);
        assert!(sample_complex_gaussian(&mut rng, -1e-3).is_err());
        assert!(sample_complex_gaussian(&mut rng, f64::NAN).is_err());
    }

    #[test]
    fn moments_of_a_million_draws() {
        let mut rng = stream_rng(2024, 7);
        let n = 1_000_000;
        let (mut sum, mut sq, mut re_sq, mut cross) = (Complex64::new(0.0, 0.0), 0.0, 0.0, 0.0);
        for _ in 0..n {
            let z = sample_complex_gaussian(&mut rng, 1.0).unwrap();
            sum += z;
            sq += z.norm_sqr();
            re_sq += z.re * z.re;
            cross += z.re * z.im;
        }
        let nf = n as f64;
        let mean = sum / nf;
        assert!(mean.norm() < 0.005, "{mean}");
        assert!((sq / nf - 1.0).abs() < 0.01);
        assert!((re_sq / nf - 0.5).abs() < 0.005);
        assert!((cross / nf).abs() < 0.005);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let draw = |seed, stream| {
            let mut rng = stream_rng(seed, stream);
            (0..16).map(|_| unit_complex_gaussian(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(9, 3), draw(9, 3));
        assert_ne!(draw(9, 3), draw(9, 4));
        assert_ne!(draw(9, 3), draw(10, 3));
    }
}
