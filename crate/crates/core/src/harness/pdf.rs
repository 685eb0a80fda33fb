use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::channel::{envelope_pdf, sample_cascaded_ensemble, CascadeRecursion, Histogram, SeriesMoments};
use crate::error::argument;
use crate::{Error, Result, ScenarioConfig};

pub const PDF_BINS: usize = 100;
pub const PDF_RANGE: (f64, f64) = (0.0, 5.0);
/// Updates each chain receives before it is sampled. One step from the
/// exact stationary state isolates the innovation model; iterating the
/// model recursion lets its envelope law drift away from double Rayleigh.
pub const PDF_STEPS: usize = 1;

/// Binned envelope densities of the first relay path.
#[derive(Clone, Debug, PartialEq)]
pub struct PdfTable {
    pub centers: Vec<f64>,
    /// |hᵢ| from the product of two AR(1) hops.
    pub h_exact: Vec<f64>,
    /// |hᵢ| from the single-AR(1) cascaded model.
    pub h_model: Vec<f64>,
    pub delta_exact: Vec<f64>,
    pub delta_model: Vec<f64>,
    /// Bin averages of 4λK₀(2λ).
    pub theory: Vec<f64>,
    pub delta_exact_moments: SeriesMoments,
    pub delta_model_moments: SeriesMoments,
}

fn histogram_of(xs: &[Complex64]) -> Result<Histogram> {
    let mut h = Histogram::new(PDF_RANGE.0, PDF_RANGE.1, PDF_BINS)?;
    h.extend(xs.iter().map(|x| x.norm()));
    Ok(h)
}

impl PdfTable {
    pub fn max_gap(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_center,h_exact,h_model,delta_exact,delta_model,theory\n");
        for i in 0..self.centers.len() {
            let _ = writeln!(
                out,
                "{:.8e},{:.8e},{:.8e},{:.8e},{:.8e},{:.8e}",
                self.centers[i],
                self.h_exact[i],
                self.h_model[i],
                self.delta_exact[i],
                self.delta_model[i],
                self.theory[i]
            );
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Envelope histograms of the first cascaded path from `samples`
/// independent chains under both recursions.
pub fn run_pdf_experiment(cfg: &ScenarioConfig, samples: usize) -> Result<PdfTable> {
    if samples < 100_000 {
        return Err(argument(format!("need at least 10^5 samples, got {samples}")));
    }
    let violations = cfg.violations();
    if !violations.is_empty() {
        return Err(super::ConfigError::Invalid(violations).into());
    }
    let (a_sr, a_rd) = (cfg.alpha_sr()[0], cfg.alpha_rd()[0]);
    let exact = sample_cascaded_ensemble(a_sr, a_rd, samples, PDF_STEPS, CascadeRecursion::Exact, cfg.seed)?;
    let model = sample_cascaded_ensemble(a_sr, a_rd, samples, PDF_STEPS, CascadeRecursion::Model, cfg.seed)?;
    let h_exact = histogram_of(&exact.current)?;
    Ok(PdfTable {
        centers: h_exact.centers(),
        theory: h_exact.bin_averages(|x| envelope_pdf(x).unwrap_or(0.0)),
        h_exact: h_exact.densities(),
        h_model: histogram_of(&model.current)?.densities(),
        delta_exact: histogram_of(&exact.delta)?.densities(),
        delta_model: histogram_of(&model.delta)?.densities(),
        delta_exact_moments: SeriesMoments::of(&exact.delta)?,
        delta_model_moments: SeriesMoments::of(&model.delta)?,
    })
}
