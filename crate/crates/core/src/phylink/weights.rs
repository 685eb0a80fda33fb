use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::argument;
use crate::{Error, Result};

/// Combining-weight rule applied at the destination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightScheme {
    /// Average noise variances of a static channel.
    Cdd,
    /// Average noise variances including the decorrelation over one lag.
    Tvd,
    /// αᵢ over the conditional equivalent-noise variance given the
    /// instantaneous relay-destination gain (genie aided).
    Optimum,
    /// Genie-aided maximum-ratio weights that also account for the variance
    /// reduction from conditioning on the previous received sample.
    ConditionalMrc,
}

impl WeightScheme {
    pub fn needs_genie(self) -> bool {
        matches!(self, Self::Optimum | Self::ConditionalMrc)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Cdd => "cdd",
            Self::Tvd => "tvd",
            Self::Optimum => "optimum",
            Self::ConditionalMrc => "mrc",
        }
    }
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightScheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cdd" => Ok(Self::Cdd),
            "tvd" => Ok(Self::Tvd),
            "optimum" | "opt" => Ok(Self::Optimum),
            "mrc" | "conditional_mrc" => Ok(Self::ConditionalMrc),
            other => Err(format!("unknown weight scheme `{other}`")),
        }
    }
}

/// One set of branch weights b₀, b₁..b_R.
#[derive(Clone, Debug, PartialEq)]
pub struct CombinerWeights {
    pub scheme: WeightScheme,
    pub b0: f64,
    pub bi: Vec<f64>,
}

fn check_unit_interval(name: &str, values: &[f64]) -> Result<()> {
    for (i, &a) in values.iter().enumerate() {
        if !(0.0..=1.0).contains(&a) {
            return Err(argument(format!("{name}[{i}] = {a} outside [0, 1]")));
        }
    }
    Ok(())
}

fn check_lengths(alphai: &[f64], amp: &[f64]) -> Result<()> {
    if alphai.len() != amp.len() {
        return Err(argument(format!(
            "{} relay correlations but {} amplification factors",
            alphai.len(),
            amp.len()
        )));
    }
    Ok(())
}

pub fn weights_cdd(amp: &[f64]) -> CombinerWeights {
    CombinerWeights {
        scheme: WeightScheme::Cdd,
        b0: 0.5,
        bi: amp.iter().map(|a| 0.5 / (1.0 + a * a)).collect(),
    }
}

pub fn weights_tvd(alpha0: f64, alphai: &[f64], amp: &[f64], p0: f64) -> Result<CombinerWeights> {
    check_unit_interval("alpha0", &[alpha0])?;
    check_unit_interval("alphai", alphai)?;
    check_lengths(alphai, amp)?;
    let b0 = alpha0 / (1.0 + alpha0 * alpha0 + (1.0 - alpha0 * alpha0) * p0);
    let bi = alphai
        .iter()
        .zip(amp)
        .map(|(&a, &g)| {
            let g2 = g * g;
            a / ((1.0 + a * a) * (1.0 + g2) + (1.0 - a * a) * g2 * p0)
        })
        .collect();
    Ok(CombinerWeights {
        scheme: WeightScheme::Tvd,
        b0,
        bi,
    })
}

fn genie(h_rd: Option<&[Complex64]>, relays: usize) -> Result<&[Complex64]> {
    let h =
        h_rd.ok_or_else(|| Error::Precondition("genie relay-destination gains are required for this scheme".into()))?;
    if h.len() != relays {
        return Err(Error::Precondition(format!(
            "expected {relays} relay-destination gains, got {}",
            h.len()
        )));
    }
    Ok(h)
}

/// (σᵢ², ρᵢ) given the relay-destination gain.
#[inline]
pub(crate) fn relay_noise_and_snr(amp: f64, p0: f64, h_rd_norm_sqr: f64) -> (f64, f64) {
    let g = amp * amp * h_rd_norm_sqr;
    let sigma2 = g + 1.0;
    (sigma2, g * p0 / sigma2)
}

#[inline]
pub(crate) fn optimum_weight(alpha: f64, sigma2: f64, rho: f64) -> f64 {
    alpha / (sigma2 * (1.0 + alpha * alpha + (1.0 - alpha * alpha) * rho))
}

#[inline]
pub(crate) fn conditional_mrc_weight(alpha: f64, sigma2: f64, rho: f64) -> f64 {
    alpha * rho / (sigma2 * (1.0 + 2.0 * rho + (1.0 - alpha * alpha) * rho * rho))
}

pub fn weights_optimum(
    alpha0: f64,
    alphai: &[f64],
    amp: &[f64],
    p0: f64,
    h_rd_now: Option<&[Complex64]>,
) -> Result<CombinerWeights> {
    check_unit_interval("alpha0", &[alpha0])?;
    check_unit_interval("alphai", alphai)?;
    check_lengths(alphai, amp)?;
    let h = genie(h_rd_now, alphai.len())?;
    let bi = alphai
        .iter()
        .zip(amp)
        .zip(h)
        .map(|((&a, &g), h)| {
            let (sigma2, rho) = relay_noise_and_snr(g, p0, h.norm_sqr());
            optimum_weight(a, sigma2, rho)
        })
        .collect();
    Ok(CombinerWeights {
        scheme: WeightScheme::Optimum,
        b0: optimum_weight(alpha0, 1.0, p0),
        bi,
    })
}

pub fn weights_conditional_mrc(
    alpha0: f64,
    alphai: &[f64],
    amp: &[f64],
    p0: f64,
    h_rd_now: Option<&[Complex64]>,
) -> Result<CombinerWeights> {
    check_unit_interval("alpha0", &[alpha0])?;
    check_unit_interval("alphai", alphai)?;
    check_lengths(alphai, amp)?;
    let h = genie(h_rd_now, alphai.len())?;
    let bi = alphai
        .iter()
        .zip(amp)
        .zip(h)
        .map(|((&a, &g), h)| {
            let (sigma2, rho) = relay_noise_and_snr(g, p0, h.norm_sqr());
            conditional_mrc_weight(a, sigma2, rho)
        })
        .collect();
    Ok(CombinerWeights {
        scheme: WeightScheme::ConditionalMrc,
        b0: conditional_mrc_weight(alpha0, 1.0, p0),
        bi,
    })
}

/// Everything a destination needs to weight its branches under one scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct Combiner {
    pub scheme: WeightScheme,
    pub alpha0: f64,
    pub alphai: Vec<f64>,
    pub amp: Vec<f64>,
    pub p0: f64,
    fixed: Option<CombinerWeights>,
}

impl Combiner {
    pub fn new(scheme: WeightScheme, alpha0: f64, alphai: &[f64], amp: &[f64], p0: f64) -> Result<Self> {
        check_unit_interval("alpha0", &[alpha0])?;
        check_unit_interval("alphai", alphai)?;
        check_lengths(alphai, amp)?;
        let fixed = match scheme {
            WeightScheme::Cdd => Some(weights_cdd(amp)),
            WeightScheme::Tvd => Some(weights_tvd(alpha0, alphai, amp, p0)?),
            WeightScheme::Optimum | WeightScheme::ConditionalMrc => None,
        };
        Ok(Self {
            scheme,
            alpha0,
            alphai: alphai.to_vec(),
            amp: amp.to_vec(),
            p0,
            fixed,
        })
    }

    /// Weights that do not depend on the channel state, if the scheme has them.
    pub fn fixed_weights(&self) -> Option<&CombinerWeights> {
        self.fixed.as_ref()
    }

    /// Weights for a decision given the current relay-destination gains.
    pub fn weights(&self, h_rd_now: Option<&[Complex64]>) -> Result<CombinerWeights> {
        match self.scheme {
            WeightScheme::Cdd | WeightScheme::Tvd => Ok(self.fixed.clone().expect("fixed scheme")),
            WeightScheme::Optimum => weights_optimum(self.alpha0, &self.alphai, &self.amp, self.p0, h_rd_now),
            WeightScheme::ConditionalMrc => {
                weights_conditional_mrc(self.alpha0, &self.alphai, &self.amp, self.p0, h_rd_now)
            }
        }
    }

    /// Direct-branch weight; never depends on the channel state.
    #[inline]
    pub(crate) fn b0(&self) -> f64 {
        match self.scheme {
            WeightScheme::Cdd => 0.5,
            WeightScheme::Tvd | WeightScheme::Optimum => optimum_weight(self.alpha0, 1.0, self.p0),
            WeightScheme::ConditionalMrc => conditional_mrc_weight(self.alpha0, 1.0, self.p0),
        }
    }

    /// Weight of relay `i` given |h_rd,ᵢ[k]|².
    #[inline]
    pub(crate) fn bi(&self, i: usize, h_rd_norm_sqr: f64) -> f64 {
        match &self.fixed {
            Some(w) => w.bi[i],
            None => {
                let (sigma2, rho) = relay_noise_and_snr(self.amp[i], self.p0, h_rd_norm_sqr);
                if self.scheme == WeightScheme::Optimum {
                    optimum_weight(self.alphai[i], sigma2, rho)
                } else {
                    conditional_mrc_weight(self.alphai[i], sigma2, rho)
                }
            }
        }
    }
}
