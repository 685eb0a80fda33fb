//! Zeroth-order Bessel functions J₀ and K₀.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::{Error, Result};

/// Euler-Mascheroni constant.
pub(crate) const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below this |x| the J₀ power series is summed in double-double precision;
/// above it the Hankel expansion is accurate to better than 1e-20.
const J0_SERIES_LIMIT: f64 = 25.0;

/// Unevaluated sum `hi + lo` with |lo| ≤ ulp(hi)/2.
#[derive(Clone, Copy, Debug)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn from_product(a: f64, b: f64) -> Self {
        let hi = a * b;
        let lo = a.mul_add(b, -hi);
        Self { hi, lo }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Self { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Self { hi: s, lo: b - (s - a) }
    }

    fn add(self, other: Self) -> Self {
        let s = Self::two_sum(self.hi, other.hi);
        let t = Self::two_sum(self.lo, other.lo);
        let s = Self::quick_two_sum(s.hi, s.lo + t.hi);
        Self::quick_two_sum(s.hi, s.lo + t.lo)
    }

    fn mul(self, other: Self) -> Self {
        let p = Self::from_product(self.hi, other.hi);
        let lo = p.lo + (self.hi * other.lo + self.lo * other.hi);
        Self::quick_two_sum(p.hi, lo)
    }

    fn div_f64(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let p = Self::from_product(q1, d);
        let r = Self::two_sum(self.hi, -p.hi);
        let q2 = (r.hi + (r.lo - p.lo + self.lo)) / d;
        Self::quick_two_sum(q1, q2)
    }

    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// Bessel function of the first kind, order zero.
///
/// Absolute error is below 1e-15 on |x| ≤ 50.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain {
            function: "bessel_j0",
            value: x,
            reason: "argument must be finite",
        });
    }
    let x = x.abs();
    Ok(if x < J0_SERIES_LIMIT {
        j0_series(x)
    } else {
        j0_hankel(x)
    })
}

/// Σ (−x²/4)ᵏ / (k!)², summed in double-double to survive cancellation.
fn j0_series(x: f64) -> f64 {
    let neg_quarter_sq = DoubleDouble::from_product(x, x).div_f64(-4.0);
    let mut term = DoubleDouble { hi: 1.0, lo: 0.0 };
    let mut sum = term;
    for k in 1..200u32 {
        let k = f64::from(k);
        term = term.mul(neg_quarter_sq).div_f64(k * k);
        sum = sum.add(term);
        if term.hi.abs() < 1e-34 * sum.hi.abs().max(1e-3) {
            break;
        }
    }
    sum.value()
}

/// Hankel asymptotic expansion truncated at its smallest term.
fn j0_hankel(x: f64) -> f64 {
    // b_k = ∏_{j≤k} (2j−1)² / (k! 8ᵏ); P collects even k, Q odd k.
    let inv_8x = 1.0 / (8.0 * x);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut last = f64::INFINITY;
    for k in 1..200u32 {
        let odd = f64::from(2 * k - 1);
        term *= odd * odd * inv_8x / f64::from(k);
        if term.abs() >= last {
            break;
        }
        last = term.abs();
        // P = 1 − b₂/x² + b₄/x⁴ …, Q = −b₁/x + b₃/x³ …
        match k % 4 {
            1 => q -= term,
            2 => p -= term,
            3 => q += term,
            _ => p += term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    let cos_chi = (c + s) * std::f64::consts::FRAC_1_SQRT_2;
    let sin_chi = (s - c) * std::f64::consts::FRAC_1_SQRT_2;
    (FRAC_2_PI / x).sqrt() * (p * cos_chi - q * sin_chi)
}

/// Modified Bessel function of the second kind, order zero.
pub fn bessel_k0(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_nan() {
        return Err(Error::Domain {
            function: "bessel_k0",
            value: x,
            reason: "K0 is defined for x > 0 only",
        });
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x <= 2.0 {
        Ok(k0_series(x))
    } else {
        k0_continued_fraction(x)
    }
}

/// K₀(x) = −(ln(x/2) + γ) I₀(x) + Σ_{k≥1} (x²/4)ᵏ/(k!)² Hₖ.
fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut tail = 0.0;
    for k in 1..100u32 {
        let kf = f64::from(k);
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        i0 += term;
        tail += term * harmonic;
        if term < 1e-18 * i0 {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

/// Steed's evaluation of Temme's continued fraction for K₀ (x ≳ 2).
fn k0_continued_fraction(x: f64) -> Result<f64> {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000u32 {
        let fi = f64::from(i);
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            return Ok((PI / (2.0 * x)).sqrt() * (-x).exp() / s);
        }
    }
    Err(Error::Numeric(format!(
        "bessel_k0: continued fraction did not converge at x = {x}"
    )))
}
