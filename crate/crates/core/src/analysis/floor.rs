use std::f64::consts::{FRAC_1_PI, FRAC_PI_2};

use super::pep::PepInputs;
use super::snr::gamma_bar;
use crate::error::argument;
use crate::mathkernel::GaussLegendre;
use crate::Result;

/// Limiting SNR factors γ̄₀ and γ̄₁..γ̄_R.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaBarSet {
    pub gbar0: f64,
    pub gbari: Vec<f64>,
}

impl GammaBarSet {
    pub fn from_alphas(alpha0: f64, alphai: &[f64]) -> Result<Self> {
        Ok(Self {
            gbar0: gamma_bar(alpha0)?,
            gbari: alphai.iter().map(|&a| gamma_bar(a)).collect::<Result<_>>()?,
        })
    }

    pub fn from_inputs(inputs: &PepInputs) -> Result<Self> {
        Self::from_alphas(inputs.alpha0, &inputs.alphai)
    }

    /// False when some link is static and the floor therefore vanishes.
    pub fn is_finite(&self) -> bool {
        self.gbar0.is_finite() && self.gbari.iter().all(|g| g.is_finite())
    }

    fn all(&self) -> Vec<f64> {
        std::iter::once(self.gbar0).chain(self.gbari.iter().copied()).collect()
    }
}

/// Which closed form produced a floor value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloorCase {
    /// At least one link is static; the PEP decays to zero.
    NoFloor,
    /// All γ̄ pairwise distinct: partial fractions.
    Distinct,
    /// All γ̄ equal (including the single-branch case).
    Equal,
    /// Direct γ̄₀ distinct, all relay γ̄ equal.
    Mixed,
    /// Any other coincidence pattern: numerical integration of the limit.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorFloor {
    pub value: f64,
    pub case: FloorCase,
}

/// Relative gap below which two γ̄ are treated as one value. Partial
/// fractions lose about log₁₀(1/gap)·R digits, so this keeps ≥ 4 digits for
/// small R while the merged-value error stays ≤ 1e-6.
const MERGE_TOLERANCE: f64 = 1e-6;

/// Partial fractions multiply rounding error by up to this factor before the
/// dispatcher evaluates the limit integral instead (the case label is kept).
const MAX_PARTIAL_FRACTION_GAIN: f64 = 1e5;

/// Largest l whose C(2l, l) recurrence stays inside u128.
const EXACT_BINOMIAL_MAX: usize = 60;

/// C(2l, l), exact in integers while it fits.
fn central_binomial(l: usize) -> f64 {
    if l <= EXACT_BINOMIAL_MAX {
        let mut c: u128 = 1;
        for j in 0..l as u128 {
            // C(2j+2, j+1) = C(2j, j)·(2j+1)(2j+2)/(j+1)² = C(2j, j)·2(2j+1)/(j+1)
            c = c * 2 * (2 * j + 1) / (j + 1);
        }
        c as f64
    } else {
        let mut c = central_binomial(EXACT_BINOMIAL_MAX);
        for j in EXACT_BINOMIAL_MAX..l {
            c *= 2.0 * (2 * j + 1) as f64 / (j + 1) as f64;
        }
        c
    }
}

/// (1/π)∫₀^{π/2} 1/(1 + g·d²/(2sin²θ)) dθ = ½(1 − √(gd²/(2 + gd²))), rationalized.
fn single_term(g: f64, dmin2: f64) -> f64 {
    let x = g * dmin2;
    1.0 / ((2.0 + x) * (1.0 + (x / (2.0 + x)).sqrt()))
}

/// 1 − √(gd²/(gd²+2))·Σ_{l<terms} C(2l,l)(1/(4+2gd²))ˡ, halved.
///
/// The full series sums to √((gd²+2)/(gd²)), so the bracket equals the
/// positive tail √(gd²/(gd²+2))·Σ_{l≥terms}; that form is used whenever the
/// tail converges quickly, avoiding the cancellation of the direct form.
fn repeated_term(g: f64, terms: usize, dmin2: f64) -> f64 {
    let x = g * dmin2;
    let q = 1.0 / (4.0 + 2.0 * x);
    let s = (x / (x + 2.0)).sqrt();
    if 4.0 * q <= 0.9 {
        let mut term = central_binomial(terms) * q.powi(terms as i32);
        let mut tail = 0.0;
        let mut l = terms;
        while term > 1e-18 * tail || tail == 0.0 {
            tail += term;
            term *= 2.0 * (2 * l + 1) as f64 / (l + 1) as f64 * q;
            l += 1;
            if term == 0.0 {
                break;
            }
        }
        return 0.5 * s * tail;
    }
    let mut power = 1.0;
    let mut sum = 0.0;
    for l in 0..terms {
        sum += central_binomial(l) * power;
        power *= q;
    }
    0.5 * (1.0 - s * sum)
}

/// Partial-fraction floor for pairwise distinct γ̄ values (γ̄₀ first).
pub fn floor_distinct(gbars: &[f64], dmin2: f64) -> f64 {
    let r = gbars.len().saturating_sub(1) as i32;
    gbars
        .iter()
        .enumerate()
        .map(|(k, &gk)| {
            let denom: f64 = gbars
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &gj)| gk - gj)
                .product();
            gk.powi(r) / denom * single_term(gk, dmin2)
        })
        .sum()
}

/// Floor when γ̄₀ and all R relay values coincide at `gbar`.
pub fn floor_equal(gbar: f64, relays: usize, dmin2: f64) -> f64 {
    repeated_term(gbar, relays + 1, dmin2)
}

/// Floor for a distinct direct value and R equal relay values.
pub fn floor_mixed(gbar0: f64, gbar: f64, relays: usize, dmin2: f64) -> f64 {
    let r = relays as i32;
    let diff = gbar0 - gbar;
    let lead = gbar0.powi(r) / diff.powi(r) * single_term(gbar0, dmin2);
    let tail: f64 = (1..=relays)
        .map(|k| {
            let k_i = k as i32;
            gbar0.powi(r - k_i) * gbar / diff.powi(r - k_i + 1) * repeated_term(gbar, k, dmin2)
        })
        .sum();
    lead - tail
}

/// (1/π)∫₀^{π/2} ∏ₖ 1/(1 + γ̄ₖ d²/(2sin²θ)) dθ by composite quadrature on
/// dyadically shrinking panels toward θ = 0.
pub fn floor_limit_integral(gbars: &[f64], dmin2: f64) -> f64 {
    let rule = GaussLegendre::new(24).expect("24 nodes");
    let integrand = |theta: f64| {
        let c = dmin2 / (2.0 * theta.sin().powi(2));
        gbars.iter().fold(1.0, |acc, g| acc / (1.0 + g * c))
    };
    let mut hi = FRAC_PI_2;
    let mut total = 0.0;
    for _ in 0..60 {
        let lo = 0.5 * hi;
        total += rule.integrate(lo, hi, integrand);
        hi = lo;
    }
    FRAC_1_PI * total
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= MERGE_TOLERANCE * a.abs().max(b.abs())
}

/// High-SNR limit of the PEP, dispatched on the coincidence pattern of the γ̄.
pub fn error_floor(gbars: &GammaBarSet, dmin2: f64) -> Result<ErrorFloor> {
    if !(dmin2 > 0.0 && dmin2 <= 4.0) {
        return Err(argument(format!("|d_min|^2 = {dmin2} outside (0, 4]")));
    }
    let all = gbars.all();
    if all.iter().any(|g| g.is_nan() || *g < 0.0) {
        return Err(argument("limiting SNR factors must be non-negative"));
    }
    if !gbars.is_finite() {
        return Ok(ErrorFloor {
            value: 0.0,
            case: FloorCase::NoFloor,
        });
    }
    let relays = gbars.gbari.len();
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;

    let relays_equal =
        gbars.gbari.windows(2).all(|w| close(w[0], w[1])) && gbars.gbari.iter().all(|&g| close(g, gbars.gbari[0]));
    if relays == 0 || (relays_equal && all.iter().all(|&g| close(g, all[0]))) {
        return Ok(ErrorFloor {
            value: floor_equal(mean(&all), relays, dmin2),
            case: FloorCase::Equal,
        });
    }
    if relays_equal && gbars.gbari.iter().all(|&g| !close(g, gbars.gbar0)) {
        let g = mean(&gbars.gbari);
        let gain = (gbars.gbar0 / (gbars.gbar0 - g)).abs().max(1.0).powi(relays as i32);
        return Ok(ErrorFloor {
            value: if gain <= MAX_PARTIAL_FRACTION_GAIN {
                floor_mixed(gbars.gbar0, g, relays, dmin2)
            } else {
                floor_limit_integral(&all, dmin2)
            },
            case: FloorCase::Mixed,
        });
    }
    let pairwise_distinct = (0..all.len()).all(|i| (i + 1..all.len()).all(|j| !close(all[i], all[j])));
    if pairwise_distinct {
        let gain = (0..all.len())
            .map(|k| {
                (0..all.len())
                    .filter(|&j| j != k)
                    .map(|j| (all[k] / (all[k] - all[j])).abs())
                    .product::<f64>()
            })
            .fold(1.0, f64::max);
        return Ok(ErrorFloor {
            value: if gain <= MAX_PARTIAL_FRACTION_GAIN {
                floor_distinct(&all, dmin2)
            } else {
                floor_limit_integral(&all, dmin2)
            },
            case: FloorCase::Distinct,
        });
    }
    Ok(ErrorFloor {
        value: floor_limit_integral(&all, dmin2),
        case: FloorCase::General,
    })
}
