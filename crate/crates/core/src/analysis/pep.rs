use std::f64::consts::{FRAC_1_PI, FRAC_PI_2};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::snr::effective_snr;
use crate::error::argument;
use crate::mathkernel::{exp_e1, gauss_legendre_rule, GaussLegendre, DEFAULT_QUADRATURE_NODES};
use crate::phylink::PowerAllocation;
use crate::{Error, Result, ScenarioConfig};

/// How a relay branch's MGF is averaged over the exponential |h_rd|².
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RelayAveraging {
    /// Numerical integration of the full γᵢ(ρᵢ(η)); no approximation.
    #[default]
    Exact,
    /// The E₁ closed form, which drops the 2/ρᵢ term of γᵢ before averaging.
    /// It approaches the exact value at high SNR and overestimates the
    /// diversity benefit below roughly 20 dB.
    ClosedForm,
}

/// Channel and link parameters of one analysis point.
#[derive(Clone, Debug, PartialEq)]
pub struct PepInputs {
    pub alpha0: f64,
    pub alphai: Vec<f64>,
    /// Relay gains Aᵢ.
    pub amp: Vec<f64>,
    pub p0: f64,
    /// Squared minimum distance |d_min|².
    pub dmin2: f64,
    /// Gauss-Legendre nodes for the angular integral.
    pub quadrature_nodes: usize,
    pub relay_averaging: RelayAveraging,
}

impl PepInputs {
    pub fn new(alpha0: f64, alphai: Vec<f64>, amp: Vec<f64>, p0: f64, dmin2: f64) -> Result<Self> {
        let inputs = Self {
            alpha0,
            alphai,
            amp,
            p0,
            dmin2,
            quadrature_nodes: DEFAULT_QUADRATURE_NODES,
            relay_averaging: RelayAveraging::Exact,
        };
        inputs.validate()?;
        Ok(inputs)
    }

    /// Inputs for a scenario at total power `total_p` (linear) under the
    /// even power split.
    pub fn from_scenario(cfg: &ScenarioConfig, total_p: f64) -> Result<Self> {
        let alloc = PowerAllocation::even_split(total_p, cfg.relays)?;
        Self::new(
            cfg.alpha0(),
            cfg.alpha_cascaded(),
            alloc.amplification(),
            alloc.p0,
            cfg.dmin2(),
        )
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.quadrature_nodes = nodes;
        self
    }

    pub fn with_relay_averaging(mut self, mode: RelayAveraging) -> Self {
        self.relay_averaging = mode;
        self
    }

    pub fn relays(&self) -> usize {
        self.alphai.len()
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |a: f64| (0.0..=1.0).contains(&a);
        if !unit(self.alpha0) || !self.alphai.iter().all(|&a| unit(a)) {
            return Err(argument("all correlations must lie in [0, 1]"));
        }
        if self.alphai.len() != self.amp.len() {
            return Err(argument(format!(
                "{} relay correlations but {} amplification factors",
                self.alphai.len(),
                self.amp.len()
            )));
        }
        if !self.amp.iter().all(|&a| a >= 0.0 && a.is_finite()) {
            return Err(argument("amplification factors must be finite and non-negative"));
        }
        if !(self.p0 > 0.0) {
            return Err(argument(format!("source power must be positive, got {}", self.p0)));
        }
        if !(self.dmin2 > 0.0 && self.dmin2 <= 4.0) {
            return Err(argument(format!("|d_min|^2 = {} outside (0, 4]", self.dmin2)));
        }
        if self.quadrature_nodes < 2 {
            return Err(argument("quadrature needs at least 2 nodes"));
        }
        Ok(())
    }

    fn gamma0(&self) -> f64 {
        effective_snr(self.alpha0, self.p0)
    }
}

/// |d_min|²/(2 sin²θ), the MGF argument scale at angle θ.
#[inline]
fn mgf_scale(dmin2: f64, theta: f64) -> f64 {
    dmin2 / (2.0 * theta.sin().powi(2))
}

/// 12-point Gauss-Legendre rule on [0, 1], reused for every panel in ln η.
fn unit_panel() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let r = GaussLegendre::new(12).expect("12 nodes").on_interval(0.0, 1.0);
        (r.nodes().to_vec(), r.weights().to_vec())
    })
}

const ETA_MAX_LN: f64 = 4.1; // e^{-60} is negligible against any I

/// Iᵢ = ∫₀^∞ e^{−η} / (1 + c·γᵢ(ρᵢ(η))) dη with ρᵢ(η) = A²P₀η/(A²η + 1),
/// the relay MGF at scale `c` averaged over |h_rd|² = η ~ Exp(1).
///
/// Integrated in t = ln η on unit-width Gauss-Legendre panels; below η_lo
/// the integrand equals 1 to double precision and is added analytically.
pub fn relay_factor_exact(alpha: f64, amp: f64, p0: f64, c: f64) -> f64 {
    let g = amp * amp;
    if g == 0.0 || alpha == 0.0 || p0 == 0.0 {
        return 1.0;
    }
    if c.is_infinite() {
        return 0.0;
    }
    let eta_lo = 1e-14 * (1.0 / (g * p0 * (1.0 + c.sqrt()))).min(1.0);
    let t_lo = eta_lo.ln();
    let panels = (ETA_MAX_LN - t_lo).ceil() as usize;
    let width = (ETA_MAX_LN - t_lo) / panels as f64;
    let (nodes, weights) = unit_panel();
    let mut sum = eta_lo;
    for j in 0..panels {
        let a = t_lo + j as f64 * width;
        let mut panel = 0.0;
        for (&x, &w) in nodes.iter().zip(weights) {
            let eta = (a + x * width).exp();
            let rho = g * p0 * eta / (g * eta + 1.0);
            panel += w * eta * (-eta).exp() / (1.0 + c * effective_snr(alpha, rho));
        }
        sum += panel * width;
    }
    sum
}

/// The E₁ closed form ε[1 + (β − ϵ)e^ϵE₁(ϵ)] of the relay average at angle θ.
pub fn relay_factor_closed_form(alpha: f64, amp: f64, p0: f64, dmin2: f64, theta: f64) -> Result<f64> {
    let g = amp * amp;
    if g == 0.0 || alpha == 0.0 {
        return Ok(1.0);
    }
    let a2 = alpha * alpha;
    let base = 4.0 * (1.0 - a2) * g * p0 + 8.0 * g;
    let den = a2 * g * p0 * dmin2 / theta.sin().powi(2) + base;
    let eps = base / den;
    let beta = 4.0 / (2.0 * (1.0 - a2) * g * p0 + 4.0 * g);
    let small = 8.0 / den;
    Ok(eps * (1.0 + (beta - small) * exp_e1(small)?))
}

fn relay_factor(inputs: &PepInputs, i: usize, theta: f64, c: f64) -> Result<f64> {
    match inputs.relay_averaging {
        RelayAveraging::Exact => Ok(relay_factor_exact(inputs.alphai[i], inputs.amp[i], inputs.p0, c)),
        RelayAveraging::ClosedForm => {
            relay_factor_closed_form(inputs.alphai[i], inputs.amp[i], inputs.p0, inputs.dmin2, theta)
        }
    }
}

/// The unconditional PEP integrand at angle θ (without the 1/π factor).
pub fn pep_integrand(inputs: &PepInputs, theta: f64) -> Result<f64> {
    let c = mgf_scale(inputs.dmin2, theta);
    let mut value = 1.0 / (1.0 + c * inputs.gamma0());
    let mut cached: Option<((f64, f64), f64)> = None;
    for i in 0..inputs.relays() {
        let key = (inputs.alphai[i], inputs.amp[i]);
        let f = match cached {
            Some((k, f)) if k == key => f,
            _ => relay_factor(inputs, i, theta, c)?,
        };
        cached = Some((key, f));
        value *= f;
    }
    Ok(value)
}

fn finite_probability(what: &str, p: f64) -> Result<f64> {
    if p.is_finite() && p >= 0.0 {
        Ok(p)
    } else {
        Err(Error::Numeric(format!("{what} evaluated to {p}")))
    }
}

fn angular_integral<F: FnMut(f64) -> Result<f64>>(nodes: usize, mut f: F) -> Result<f64> {
    let rule = gauss_legendre_rule(nodes)?;
    let mut sum = 0.0;
    for (&theta, &w) in rule.nodes().iter().zip(rule.weights()) {
        sum += w * f(theta)?;
    }
    Ok(FRAC_1_PI * sum)
}

/// PEP given the relay-destination gains, averaged over everything else.
pub fn pep_conditional(inputs: &PepInputs, h_rd: &[Complex64]) -> Result<f64> {
    inputs.validate()?;
    if h_rd.len() != inputs.relays() {
        return Err(argument(format!(
            "{} relay-destination gains for {} relays",
            h_rd.len(),
            inputs.relays()
        )));
    }
    let gammas: Vec<f64> = h_rd
        .iter()
        .zip(inputs.alphai.iter().zip(&inputs.amp))
        .map(|(h, (&a, &amp))| {
            let x = amp * amp * h.norm_sqr();
            effective_snr(a, x * inputs.p0 / (x + 1.0))
        })
        .collect();
    let g0 = inputs.gamma0();
    let p = angular_integral(inputs.quadrature_nodes, |theta| {
        let c = mgf_scale(inputs.dmin2, theta);
        Ok(gammas.iter().fold(1.0 / (1.0 + c * g0), |acc, g| acc / (1.0 + c * g)))
    })?;
    finite_probability("conditional PEP", p)
}

/// PEP averaged over all fading, the lower bound on the TVD error rate.
pub fn pep_unconditional(inputs: &PepInputs) -> Result<f64> {
    inputs.validate()?;
    let p = angular_integral(inputs.quadrature_nodes, |theta| pep_integrand(inputs, theta))?;
    finite_probability("unconditional PEP", p)
}

/// ∏Iᵢ(π/2)/(2 + γ₀|d_min|²): the integrand's maximum times the range.
pub fn pep_upper_bound(inputs: &PepInputs) -> Result<f64> {
    inputs.validate()?;
    let b = 0.5 * pep_integrand(inputs, FRAC_PI_2)?;
    finite_probability("PEP upper bound", b)
}

/// Nearest-neighbour bit-error approximation; exact for M = 2.
pub fn ber_from_pep(pep: f64, m: usize) -> Result<f64> {
    if m < 2 || !m.is_power_of_two() {
        return Err(argument(format!(
            "constellation size must be a power of two >= 2, got {m}"
        )));
    }
    if m == 2 {
        return Ok(pep);
    }
    Ok(2.0 / m.trailing_zeros() as f64 * pep)
}
