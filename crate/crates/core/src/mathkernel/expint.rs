//! Exponential integral E₁ and its scaled form eˣE₁(x).

use super::bessel::EULER_GAMMA;
use crate::{Error, Result};

fn check_domain(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: x,
            reason: "defined for x > 0 only",
        })
    }
}

/// E₁(x) = ∫ₓ^∞ e^{−t}/t dt.
pub fn expint_e1(x: f64) -> Result<f64> {
    check_domain("expint_e1", x)?;
    if x <= 1.0 {
        Ok(e1_series(x))
    } else {
        Ok(e1_scaled_continued_fraction(x)? * (-x).exp())
    }
}

/// eˣ·E₁(x), evaluated without forming eˣ or E₁(x) separately when x is large.
///
/// This is the factor that appears in the closed-form relay averaging term and
/// stays finite where eˣ overflows and E₁(x) underflows.
pub fn exp_e1(x: f64) -> Result<f64> {
    check_domain("exp_e1", x)?;
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x <= 1.0 {
        Ok(x.exp() * e1_series(x))
    } else {
        e1_scaled_continued_fraction(x)
    }
}

/// −γ − ln x − Σ_{k≥1} (−x)ᵏ/(k·k!)
fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut fact = 1.0;
    for k in 1..200u32 {
        let kf = f64::from(k);
        fact *= -x / kf;
        let del = fact / kf;
        sum += del;
        if del.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

/// Modified Lentz evaluation of eˣE₁(x) = 1/(x+1− 1/(x+3− 4/(x+5− …))).
fn e1_scaled_continued_fraction(x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000u32 {
        let an = -f64::from(i) * f64::from(i);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::Numeric(format!(
        "exp_e1: continued fraction did not converge at x = {x}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn reference_values() {
        let v = expint_e1(1.0).unwrap();
        assert!((v - 0.219_383_934_395_520_3).abs() < 1e-10 * v);
        let v = expint_e1(10.0).unwrap();
        assert!((v - 4.156_968_929_685_325e-6).abs() < 1e-10 * v);
        assert!(expint_e1(0.0).is_err());
        assert!(expint_e1(-2.0).is_err());
        assert!(exp_e1(f64::NAN).is_err());
    }

    #[test]
    fn leading_asymptotic_term() {
        let x = 100.0;
        let ratio = exp_e1(x).unwrap() * x;
        assert!((ratio - 1.0).abs() < 0.02, "{ratio}");
        assert!(exp_e1(1e300).unwrap() > 0.0);
    }

    #[test]
    fn matches_quadrature_oracle() {
        for x in [1e-8, 1e-3, 0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 5.0, 20.0, 80.0] {
            let want = oracle::e1_integral(x);
            let got = expint_e1(x).unwrap();
            assert!((got - want).abs() < 1e-10 * want, "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn scaled_form_is_monotone_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 1..4000 {
            let x = 0.01 * f64::from(i);
            let v = exp_e1(x).unwrap();
            assert!(v < prev, "x={x}");
            prev = v;
        }
    }
}
