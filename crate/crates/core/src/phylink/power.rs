use crate::error::argument;
use crate::Result;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Transmit powers of the source and each relay.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerAllocation {
    pub total: f64,
    pub p0: f64,
    pub pi: Vec<f64>,
}

impl PowerAllocation {
    pub fn new(p0: f64, pi: Vec<f64>) -> Result<Self> {
        if !(p0 >= 0.0) || pi.iter().any(|&p| !(p >= 0.0)) {
            return Err(argument("transmit powers must be non-negative"));
        }
        let total = p0 + pi.iter().sum::<f64>();
        Ok(Self { total, p0, pi })
    }

    /// Half the budget at the source, the other half shared equally by the relays.
    pub fn even_split(total: f64, relays: usize) -> Result<Self> {
        if !(total > 0.0) || !total.is_finite() {
            return Err(argument(format!(
                "total power must be positive and finite, got {total}"
            )));
        }
        if relays == 0 {
            return Err(argument("even split needs at least one relay"));
        }
        Ok(Self {
            total,
            p0: total / 2.0,
            pi: vec![total / (2.0 * relays as f64); relays],
        })
    }

    pub fn even_split_db(total_db: f64, relays: usize) -> Result<Self> {
        Self::even_split(db_to_linear(total_db), relays)
    }

    /// Fixed relay gains Aᵢ.
    pub fn amplification(&self) -> Vec<f64> {
        self.pi.iter().map(|&p| (p / (self.p0 + 1.0)).sqrt()).collect()
    }
}

/// √(Pᵢ/(P₀+1)): normalizes the average relay output power to Pᵢ.
pub fn amplification_factor(pi: f64, p0: f64) -> Result<f64> {
    if !(pi >= 0.0) || !(p0 >= 0.0) {
        return Err(argument(format!("powers must be non-negative, got Pi={pi}, P0={p0}")));
    }
    Ok((pi / (p0 + 1.0)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amplification_examples() {
        assert_eq!(amplification_factor(6.0, 5.0).unwrap(), 1.0);
        assert!((amplification_factor(25.0, 50.0).unwrap() - 0.700_140_042).abs() < 1e-9);
        assert_eq!(amplification_factor(0.0, 50.0).unwrap(), 0.0);
        assert!(amplification_factor(-1.0, 1.0).is_err());
    }

    #[test]
    fn even_split_conserves_power() {
        let a = PowerAllocation::even_split_db(20.0, 2).unwrap();
        assert!((a.p0 - 50.0).abs() < 1e-12);
        assert!((a.pi[0] - 25.0).abs() < 1e-12);
        assert!((a.p0 + a.pi.iter().sum::<f64>() - a.total).abs() < 1e-12);
        assert!((a.amplification()[1] - (25.0f64 / 51.0).sqrt()).abs() < 1e-15);
        let b = PowerAllocation::even_split(7.0, 3).unwrap();
        assert!((b.p0 + b.pi.iter().sum::<f64>() - 7.0).abs() < 1e-12);
        assert!(PowerAllocation::even_split(1.0, 0).is_err());
    }
}
