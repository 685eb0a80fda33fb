use num_complex::Complex64;

use crate::error::argument;
use crate::mathkernel::{bessel_k0, GaussLegendre};
use crate::Result;

/// f(λ) = 4λK₀(2λ), the envelope density of a product of two unit-power
/// Rayleigh gains.
pub fn envelope_pdf(lambda: f64) -> Result<f64> {
    if !(lambda >= 0.0) {
        return Err(argument(format!("envelope must be non-negative, got {lambda}")));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    if lambda.is_infinite() {
        return Ok(0.0);
    }
    Ok(4.0 * lambda * bessel_k0(2.0 * lambda)?)
}

/// (1/(L−lag)) Σₖ h[k]·h*[k+lag]
pub fn estimate_autocorrelation(series: &[Complex64], lag: usize) -> Result<Complex64> {
    if series.is_empty() {
        return Err(argument("autocorrelation of an empty series"));
    }
    if lag >= series.len() {
        return Err(argument(format!(
            "lag {lag} must be smaller than the series length {}",
            series.len()
        )));
    }
    let n = series.len() - lag;
    let sum: Complex64 = series[..n].iter().zip(&series[lag..]).map(|(a, b)| a * b.conj()).sum();
    Ok(sum / n as f64)
}

/// Sample mean and power of a complex series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesMoments {
    pub mean: Complex64,
    /// E|x|²
    pub power: f64,
    /// E|x − mean|²
    pub variance: f64,
    pub mean_abs: f64,
}

impl SeriesMoments {
    pub fn of(series: &[Complex64]) -> Result<Self> {
        if series.is_empty() {
            return Err(argument("moments of an empty series"));
        }
        let n = series.len() as f64;
        let mean = series.iter().sum::<Complex64>() / n;
        let power = series.iter().map(|x| x.norm_sqr()).sum::<f64>() / n;
        let mean_abs = series.iter().map(|x| x.norm()).sum::<f64>() / n;
        Ok(Self {
            mean,
            power,
            variance: power - mean.norm_sqr(),
            mean_abs,
        })
    }
}

/// Fixed-width histogram normalized to a density on `[lo, hi)`.
///
/// Samples outside the range count toward the total but fall in no bin, so
/// densities integrate to the in-range fraction.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    lo: f64,
    hi: f64,
    counts: Vec<u64>,
    total: u64,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if bins == 0 || !(hi > lo) {
            return Err(argument(format!(
                "histogram needs bins > 0 and hi > lo, got {bins} on [{lo}, {hi})"
            )));
        }
        Ok(Self {
            lo,
            hi,
            counts: vec![0; bins],
            total: 0,
        })
    }

    pub fn add(&mut self, x: f64) {
        self.total += 1;
        if x >= self.lo && x < self.hi {
            let last = self.counts.len() - 1;
            let idx = ((x - self.lo) / self.bin_width()) as usize;
            self.counts[idx.min(last)] += 1;
        }
    }

    pub fn extend<I: IntoIterator<Item = f64>>(&mut self, xs: I) {
        for x in xs {
            self.add(x);
        }
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn centers(&self) -> Vec<f64> {
        let w = self.bin_width();
        (0..self.counts.len()).map(|i| self.lo + (i as f64 + 0.5) * w).collect()
    }

    pub fn densities(&self) -> Vec<f64> {
        let scale = 1.0 / (self.total.max(1) as f64 * self.bin_width());
        self.counts.iter().map(|&c| c as f64 * scale).collect()
    }

    /// Mean of `pdf` over each bin, the quantity a bin density estimates.
    pub fn bin_averages<F: Fn(f64) -> f64>(&self, pdf: F) -> Vec<f64> {
        let rule = GaussLegendre::new(12).expect("12 nodes is valid");
        let w = self.bin_width();
        (0..self.counts.len())
            .map(|i| {
                let a = self.lo + i as f64 * w;
                rule.integrate(a, a + w, &pdf) / w
            })
            .collect()
    }

    /// Largest |estimated − expected| density over all bins.
    pub fn max_deviation<F: Fn(f64) -> f64>(&self, pdf: F) -> f64 {
        self.densities()
            .iter()
            .zip(self.bin_averages(pdf))
            .map(|(d, t)| (d - t).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mathkernel::{stream_rng, unit_complex_gaussian};
    use crate::oracle::adaptive_simpson;

    fn pdf(x: f64) -> f64 {
        envelope_pdf(x).unwrap()
    }

    #[test]
    fn envelope_density_normalized_with_unit_power() {
        // K₀ has a logarithmic singularity, so split off [0, 1e-3].
        let mass = adaptive_simpson(pdf, 1e-3, 30.0, 1e-13) + adaptive_simpson(pdf, 1e-12, 1e-3, 1e-16);
        assert!((mass - 1.0).abs() < 1e-8, "{mass}");
        let second = adaptive_simpson(|x| x * x * pdf(x), 1e-6, 30.0, 1e-12);
        assert!((second - 1.0).abs() < 1e-6, "{second}");
        assert_eq!(envelope_pdf(0.0).unwrap(), 0.0);
        assert!(envelope_pdf(-0.1).is_err());
    }

    #[test]
    fn autocorrelation_edge_cases() {
        let ones = vec![Complex64::new(1.0, 0.0); 10];
        for lag in 0..10 {
            assert_eq!(estimate_autocorrelation(&ones, lag).unwrap(), Complex64::new(1.0, 0.0));
        }
        assert!(estimate_autocorrelation(&ones, 10).is_err());
        assert!(estimate_autocorrelation(&[], 0).is_err());
    }

    #[test]
    fn white_noise_is_uncorrelated() {
        let mut rng = stream_rng(5, 0);
        let x: Vec<_> = (0..1_000_000).map(|_| unit_complex_gaussian(&mut rng)).collect();
        assert!(estimate_autocorrelation(&x, 1).unwrap().norm() < 0.005);
        let m = SeriesMoments::of(&x).unwrap();
        assert!((m.variance - 1.0).abs() < 0.01);
    }

    #[test]
    fn histogram_bookkeeping() {
        let mut h = Histogram::new(0.0, 1.0, 4).unwrap();
        h.extend([0.1, 0.3, 0.3, 0.9, 1.5, -0.2]);
        assert_eq!(h.counts(), &[1, 2, 0, 1]);
        assert_eq!(h.total(), 6);
        assert_eq!(h.centers(), vec![0.125, 0.375, 0.625, 0.875]);
        let uniform = h.bin_averages(|_| 1.0);
        assert!(uniform.iter().all(|&u| (u - 1.0).abs() < 1e-14));
        assert!(Histogram::new(1.0, 1.0, 3).is_err());
    }
}
