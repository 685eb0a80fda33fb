use crate::analysis::{ber_from_pep, error_floor, pep_unconditional, pep_upper_bound, GammaBarSet, PepInputs};
use crate::error::argument;
use crate::phylink::{ber_montecarlo_schemes, db_to_linear, MonteCarloOptions, PowerAllocation, WeightScheme};
use crate::{Result, ScenarioConfig};

/// One SNR point of a BER curve.
#[derive(Clone, Debug, PartialEq)]
pub struct BerPoint {
    /// Total transmit power P in dB.
    pub p_db: f64,
    pub ber_sim_tvd: f64,
    pub ber_sim_cdd: f64,
    /// Analytical BER of the genie-optimum combiner.
    pub ber_theory_lb: f64,
    pub ber_upper_bound: f64,
    pub floor: f64,
    pub n_bits: u64,
    pub n_errors_tvd: u64,
    pub n_errors_cdd: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BerCurve {
    pub points: Vec<BerPoint>,
}

/// Monte Carlo budget of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub bits_per_point: u64,
    pub target_errors: u64,
    /// When false only the analytical columns are filled.
    pub simulate: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            bits_per_point: 2_000_000,
            target_errors: 2000,
            simulate: true,
        }
    }
}

/// `start, start+step, …` up to and including `stop` (within rounding).
pub fn db_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(stop >= start) {
        return Err(argument(format!("empty grid {start}..{stop} step {step}")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

fn check_grid(grid_db: &[f64]) -> Result<()> {
    if grid_db.is_empty() {
        return Err(argument("SNR grid is empty"));
    }
    if grid_db.iter().any(|p| !p.is_finite()) || grid_db.windows(2).any(|w| w[0] >= w[1]) {
        return Err(argument("SNR grid must be finite and strictly increasing"));
    }
    Ok(())
}

/// Sweeps total power with TVD and CDD simulated on shared frames.
pub fn run_ber_sweep(cfg: &ScenarioConfig, grid_db: &[f64], bits_per_point: u64, seed: u64) -> Result<BerCurve> {
    let opts = SweepOptions {
        bits_per_point,
        ..Default::default()
    };
    run_ber_sweep_with(cfg, grid_db, &opts, seed)
}

/// Analytical columns only.
pub fn analyze_curve(cfg: &ScenarioConfig, grid_db: &[f64]) -> Result<BerCurve> {
    let opts = SweepOptions {
        simulate: false,
        ..Default::default()
    };
    run_ber_sweep_with(cfg, grid_db, &opts, cfg.seed)
}

pub fn run_ber_sweep_with(cfg: &ScenarioConfig, grid_db: &[f64], opts: &SweepOptions, seed: u64) -> Result<BerCurve> {
    check_grid(grid_db)?;
    let violations = cfg.violations();
    if !violations.is_empty() {
        return Err(super::ConfigError::Invalid(violations).into());
    }
    let m = cfg.modulation;
    let floor = error_floor(
        &GammaBarSet::from_alphas(cfg.alpha0(), &cfg.alpha_cascaded())?,
        cfg.dmin2(),
    )?;
    let floor = ber_from_pep(floor.value, m)?;

    let mut points = Vec::with_capacity(grid_db.len());
    for (idx, &p_db) in grid_db.iter().enumerate() {
        let p = db_to_linear(p_db);
        let inputs = PepInputs::from_scenario(cfg, p)?;
        let theory = ber_from_pep(pep_unconditional(&inputs)?, m)?;
        let bound = ber_from_pep(pep_upper_bound(&inputs)?, m)?.min(0.5);
        let mut point = BerPoint {
            p_db,
            ber_sim_tvd: f64::NAN,
            ber_sim_cdd: f64::NAN,
            ber_theory_lb: theory,
            ber_upper_bound: bound,
            floor,
            n_bits: 0,
            n_errors_tvd: 0,
            n_errors_cdd: 0,
        };
        if opts.simulate {
            let alloc = PowerAllocation::even_split(p, cfg.relays)?;
            let mc = MonteCarloOptions {
                max_bits: opts.bits_per_point,
                target_errors: opts.target_errors,
                noiseless: false,
                stream_offset: (idx as u64) << 40,
            };
            let counts = ber_montecarlo_schemes(cfg, &alloc, &[WeightScheme::Tvd, WeightScheme::Cdd], mc, seed)?;
            point.ber_sim_tvd = counts[0].ber();
            point.ber_sim_cdd = counts[1].ber();
            point.n_bits = counts[0].bits;
            point.n_errors_tvd = counts[0].errors;
            point.n_errors_cdd = counts[1].errors;
        }
        points.push(point);
    }
    Ok(BerCurve { points })
}
