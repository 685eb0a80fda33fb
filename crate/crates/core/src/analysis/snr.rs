use crate::error::argument;
use crate::Result;

/// α²x/(2x(1−α²) + 4 + 2/x), written to stay finite as x → 0.
#[inline]
pub(crate) fn effective_snr(alpha: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x.is_infinite() {
        return gamma_bar_unchecked(alpha);
    }
    let a2 = alpha * alpha;
    a2 * x * x / (2.0 * x * x * (1.0 - a2) + 4.0 * x + 2.0)
}

#[inline]
fn gamma_bar_unchecked(alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    if a2 >= 1.0 {
        f64::INFINITY
    } else {
        a2 / (2.0 * (1.0 - a2))
    }
}

/// Effective SNR factor γ₀ of the direct branch.
pub fn gamma0(alpha0: f64, p0: f64) -> f64 {
    effective_snr(alpha0, p0)
}

/// Effective SNR factor γᵢ of a relay branch with instantaneous SNR ρᵢ.
pub fn gamma_i(alphai: f64, rho_i: f64) -> f64 {
    effective_snr(alphai, rho_i)
}

/// α²/(2(1−α²)), the limit of γ as the SNR grows; infinite at α = 1.
pub fn gamma_bar(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(argument(format!("correlation {alpha} outside [0, 1]")));
    }
    Ok(gamma_bar_unchecked(alpha))
}
