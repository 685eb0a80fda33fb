//! Gauss-Legendre quadrature.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::{error::argument, Result};

/// A fixed quadrature rule on a finite interval.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Abscissae, strictly increasing.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Affine image of this rule onto `[a, b]`, assuming it currently spans
    /// `[from_a, from_b]`.
    fn remap(&self, from_a: f64, from_b: f64, a: f64, b: f64) -> Self {
        let scale = (b - a) / (from_b - from_a);
        Self {
            nodes: self.nodes.iter().map(|&x| a + (x - from_a) * scale).collect(),
            weights: self.weights.iter().map(|&w| w * scale).collect(),
        }
    }
}

/// Gauss-Legendre rule on the reference interval [−1, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct GaussLegendre {
    rule: QuadratureRule,
}

impl GaussLegendre {
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count < 2 {
            return Err(argument(format!(
                "Gauss-Legendre rule needs at least 2 nodes, got {node_count}"
            )));
        }
        let n = node_count;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self {
            rule: QuadratureRule { nodes, weights },
        })
    }

    pub fn reference(&self) -> &QuadratureRule {
        &self.rule
    }

    /// The rule mapped onto `[a, b]`.
    pub fn on_interval(&self, a: f64, b: f64) -> QuadratureRule {
        self.rule.remap(-1.0, 1.0, a, b)
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        half * self.rule.integrate(|t| f(mid + half * t))
    }
}

/// (Pₙ(x), Pₙ'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

/// Gauss-Legendre rule on (0, π/2), the range of the angular PEP integral.
pub fn gauss_legendre_rule(node_count: usize) -> Result<QuadratureRule> {
    Ok(GaussLegendre::new(node_count)?.on_interval(0.0, FRAC_PI_2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_degenerate_rules() {
        assert!(gauss_legendre_rule(0).is_err());
        assert!(gauss_legendre_rule(1).is_err());
        assert!(gauss_legendre_rule(2).is_ok());
    }

    #[test]
    fn closed_form_integrals() {
        let rule = gauss_legendre_rule(16).unwrap();
        let s2 = rule.integrate(|t| t.sin().powi(2));
        assert!((s2 - PI / 4.0).abs() < 1e-12);
        let one = gauss_legendre_rule(64).unwrap().integrate(|_| 1.0);
        assert!((one - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn known_three_point_rule() {
        let r = GaussLegendre::new(3).unwrap();
        let nodes = r.reference().nodes();
        assert!((nodes[2] - (0.6f64).sqrt()).abs() < 1e-15);
        assert_eq!(nodes[1], 0.0);
        assert!((r.reference().weights()[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn rule_invariants(n in 2usize..200) {
            let rule = gauss_legendre_rule(n).unwrap();
            prop_assert_eq!(rule.node_count(), n);
            let sum: f64 = rule.weights().iter().sum();
            prop_assert!((sum - FRAC_PI_2).abs() < 1e-12 * FRAC_PI_2);
            prop_assert!(rule.weights().iter().all(|&w| w > 0.0));
            prop_assert!(rule.nodes()[0] > 0.0);
            prop_assert!(*rule.nodes().last().unwrap() < FRAC_PI_2);
            prop_assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn exact_for_polynomials_up_to_degree_2n_minus_1(n in 2usize..24, seed in 0u64..1000) {
            let g = GaussLegendre::new(n).unwrap();
            let deg = 2 * n - 1;
            // monomial coefficients from a cheap LCG so the test is deterministic per case
            let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
            let coeffs: Vec<f64> = (0..=deg).map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
            }).collect();
            let poly = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
            let exact: f64 = coeffs.iter().enumerate()
                .map(|(k, c)| if k % 2 == 0 { 2.0 * c / (k as f64 + 1.0) } else { 0.0 })
                .sum();
            let got = g.integrate(-1.0, 1.0, poly);
            prop_assert!((got - exact).abs() < 1e-13, "{} vs {}", got, exact);
        }
    }
}
