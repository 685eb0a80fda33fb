use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::argument;
use crate::Result;

/// Unit-energy M-PSK alphabet {e^{j2πm/M}} with Gray-coded labels.
#[derive(Clone, Debug, PartialEq)]
pub struct Constellation {
    points: Vec<Complex64>,
}

impl Constellation {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 || !m.is_power_of_two() {
            return Err(argument(format!("PSK order must be a power of two >= 2, got {m}")));
        }
        let snap = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
        let points = (0..m)
            .map(|i| {
                let (s, c) = (2.0 * PI * i as f64 / m as f64).sin_cos();
                Complex64::new(snap(c), snap(s))
            })
            .collect();
        Ok(Self { points })
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.points.len().trailing_zeros() as usize
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Complex64 {
        self.points[index]
    }

    /// Squared distance between neighbouring points, 4 sin²(π/M).
    pub fn dmin2(&self) -> f64 {
        4.0 * (PI / self.size() as f64).sin().powi(2)
    }

    /// Gray label of symbol `index`; adjacent symbols differ in one bit.
    pub fn label(&self, index: usize) -> usize {
        index ^ (index >> 1)
    }

    /// Symbol index carrying `label`.
    pub fn index_of_label(&self, label: usize) -> usize {
        let mut index = label;
        let mut shift = label >> 1;
        while shift != 0 {
            index ^= shift;
            shift >>= 1;
        }
        index
    }

    /// Symbol index for a most-significant-bit-first group of bits.
    pub fn index_of_bits(&self, bits: &[u8]) -> usize {
        let label = bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b & 1));
        self.index_of_label(label)
    }

    /// Number of differing bits between the labels of two symbols.
    pub fn bit_errors(&self, sent: usize, decided: usize) -> u32 {
        (self.label(sent) ^ self.label(decided)).count_ones()
    }
}

/// Nearest constellation index to `zeta`.
///
/// All points have unit modulus, so the nearest point maximizes Re{v*ζ}.
/// A later point only wins if it is better by more than a relative 1e-12,
/// which resolves exact and rounding-level ties toward the smaller index.
pub fn detect_min_ed(zeta: Complex64, constellation: &Constellation) -> usize {
    let tol = 1e-12 * zeta.norm();
    let mut best = 0;
    let mut best_metric = f64::NEG_INFINITY;
    for (i, v) in constellation.points().iter().enumerate() {
        let metric = v.re * zeta.re + v.im * zeta.im;
        if metric > best_metric + tol {
            best = i;
            best_metric = metric;
        }
    }
    best
}

/// s[0] = 1, s[k] = v[k]·s[k−1]. The output is one symbol longer than `v`.
pub fn differential_encode(v: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(v.len() + 1);
    let mut s = Complex64::new(1.0, 0.0);
    out.push(s);
    for (k, &x) in v.iter().enumerate() {
        if (x.norm() - 1.0).abs() > 1e-9 {
            return Err(argument(format!(
                "differential input {k} has modulus {} (expected 1)",
                x.norm()
            )));
        }
        s *= x;
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn encoder_examples() {
        let one = c(1.0, 0.0);
        assert_eq!(differential_encode(&[one; 3]).unwrap(), vec![one; 4]);
        assert_eq!(differential_encode(&[-one, -one]).unwrap(), vec![one, -one, one]);
        let j = c(0.0, 1.0);
        assert_eq!(differential_encode(&[j, j, -one]).unwrap(), vec![one, j, -one, one]);
        assert!(differential_encode(&[c(0.5, 0.0)]).is_err());
    }

    #[test]
    fn qpsk_gray_map() {
        let q = Constellation::new(4).unwrap();
        let codes: Vec<_> = [[0, 0], [0, 1], [1, 1], [1, 0]]
            .iter()
            .map(|b| q.index_of_bits(b))
            .collect();
        assert_eq!(codes, vec![0, 1, 2, 3]);
        assert_eq!(q.point(1), c(0.0, 1.0));
        assert_eq!(q.point(2), c(-1.0, 0.0));
        assert_eq!(q.bit_errors(0, 2), 2);
        assert_eq!(q.bit_errors(0, 3), 1);
        assert!((q.dmin2() - 2.0).abs() < 1e-15);
        assert!(Constellation::new(6).is_err());
    }

    #[test]
    fn detection_examples() {
        let b = Constellation::new(2).unwrap();
        assert_eq!(detect_min_ed(c(0.9, -0.1), &b), 0);
        assert_eq!(detect_min_ed(c(-0.2, 5.0), &b), 1);
        let q = Constellation::new(4).unwrap();
        assert_eq!(detect_min_ed(c(2.5, 2.5), &q), 0);
        assert_eq!(detect_min_ed(c(-2.5, 2.5), &q), 1);
        assert_eq!(detect_min_ed(c(0.0, 0.0), &q), 0);
    }

    proptest! {
        #[test]
        fn gray_labels_invert(m_log in 1u32..5, idx in 0usize..16) {
            let k = Constellation::new(1 << m_log).unwrap();
            let i = idx % k.size();
            prop_assert_eq!(k.index_of_label(k.label(i)), i);
            let next = (i + 1) % k.size();
            prop_assert_eq!(k.bit_errors(i, next), 1);
        }

        #[test]
        fn detector_matches_exhaustive_scan(re in -3.0f64..3.0, im in -3.0f64..3.0, m_log in 1u32..4) {
            let k = Constellation::new(1 << m_log).unwrap();
            let z = c(re, im);
            let got = detect_min_ed(z, &k);
            let best = k.points().iter().map(|v| (z - v).norm_sqr()).fold(f64::INFINITY, f64::min);
            prop_assert!((z - k.point(got)).norm_sqr() <= best + 1e-9);
        }

        #[test]
        fn detector_scale_invariant(re in -3.0f64..3.0, im in -3.0f64..3.0, scale in 1e-3f64..1e3) {
            let k = Constellation::new(8).unwrap();
            let z = c(re, im);
            prop_assert_eq!(detect_min_ed(z * scale, &k), detect_min_ed(z, &k));
        }

        #[test]
        fn encoding_is_transparent(idx in proptest::collection::vec(0usize..8, 1..64)) {
            let k = Constellation::new(8).unwrap();
            let v: Vec<_> = idx.iter().map(|&i| k.point(i)).collect();
            let s = differential_encode(&v).unwrap();
            prop_assert_eq!(s[0], c(1.0, 0.0));
            for i in 1..s.len() {
                prop_assert!((s[i].norm() - 1.0).abs() < 1e-12);
                prop_assert_eq!(detect_min_ed(s[i] * s[i - 1].conj(), &k), idx[i - 1]);
            }
        }
    }
}
