use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::argument;
use crate::mathkernel::{stream_rng, unit_complex_gaussian};
use crate::Result;

/// Both hops of one source-relay-destination path and the product channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CascadedChannelState {
    /// hᵢ[k−1]
    pub h_prev: Complex64,
    /// h_sr[k−1]; only meaningful for the exact recursion.
    pub h_sr_prev: Complex64,
    /// h_rd[k−1]
    pub h_rd_prev: Complex64,
    pub alpha_sr: f64,
    pub alpha_rd: f64,
}

/// The cascaded gain after one update and its innovation term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CascadedStep {
    pub h: Complex64,
    pub delta: Complex64,
}

/// Which update rule advances the product channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CascadeRecursion {
    /// Product of two independently evolving AR(1) hops.
    Exact,
    /// Single AR(1) with coefficient α_sr·α_rd, innovation scaled by h_rd[k−1].
    Model,
}

impl CascadedChannelState {
    pub fn new(h_sr: Complex64, h_rd: Complex64, alpha_sr: f64, alpha_rd: f64) -> Result<Self> {
        for (name, a) in [("alpha_sr", alpha_sr), ("alpha_rd", alpha_rd)] {
            if !(0.0..=1.0).contains(&a) {
                return Err(argument(format!("{name} = {a} outside [0, 1]")));
            }
        }
        Ok(Self {
            h_prev: h_sr * h_rd,
            h_sr_prev: h_sr,
            h_rd_prev: h_rd,
            alpha_sr,
            alpha_rd,
        })
    }

    /// Both hops drawn from CN(0,1).
    pub fn stationary<R: Rng + ?Sized>(alpha_sr: f64, alpha_rd: f64, rng: &mut R) -> Result<Self> {
        let h_sr = unit_complex_gaussian(rng);
        let h_rd = unit_complex_gaussian(rng);
        Self::new(h_sr, h_rd, alpha_sr, alpha_rd)
    }

    /// αᵢ = α_sr·α_rd
    pub fn alpha_equivalent(&self) -> f64 {
        self.alpha_sr * self.alpha_rd
    }

    pub fn step(&mut self, recursion: CascadeRecursion, e_sr: Complex64, e_rd: Complex64) -> CascadedStep {
        match recursion {
            CascadeRecursion::Exact => cascaded_step_exact(self, e_sr, e_rd),
            CascadeRecursion::Model => cascaded_step_model(self, e_sr, e_rd),
        }
    }
}

/// Advances both hops by their own AR(1) recursions.
///
/// The returned `delta` is the three-term innovation of the product channel,
/// so `h = αᵢ·h_prev + delta` holds whenever `h_prev = h_sr_prev·h_rd_prev`.
pub fn cascaded_step_exact(state: &mut CascadedChannelState, e_sr: Complex64, e_rd: Complex64) -> CascadedStep {
    let (a_sr, a_rd) = (state.alpha_sr, state.alpha_rd);
    let g_sr = (1.0 - a_sr * a_sr).sqrt();
    let g_rd = (1.0 - a_rd * a_rd).sqrt();
    let delta =
        state.h_sr_prev * e_rd * (a_sr * g_rd) + state.h_rd_prev * e_sr * (a_rd * g_sr) + e_sr * e_rd * (g_sr * g_rd);
    let h_sr = state.h_sr_prev * a_sr + e_sr * g_sr;
    let h_rd = state.h_rd_prev * a_rd + e_rd * g_rd;
    let h = h_sr * h_rd;
    state.h_prev = h;
    state.h_sr_prev = h_sr;
    state.h_rd_prev = h_rd;
    CascadedStep { h, delta }
}

/// hᵢ[k] = αᵢhᵢ[k−1] + √(1−αᵢ²)·h_rd[k−1]·e_sr; h_rd then advances with `e_rd`.
pub fn cascaded_step_model(state: &mut CascadedChannelState, e_sr: Complex64, e_rd: Complex64) -> CascadedStep {
    let a = state.alpha_equivalent();
    let delta = state.h_rd_prev * e_sr * (1.0 - a * a).sqrt();
    let h = state.h_prev * a + delta;
    let g_sr = (1.0 - state.alpha_sr * state.alpha_sr).sqrt();
    let g_rd = (1.0 - state.alpha_rd * state.alpha_rd).sqrt();
    state.h_sr_prev = state.h_sr_prev * state.alpha_sr + e_sr * g_sr;
    state.h_rd_prev = state.h_rd_prev * state.alpha_rd + e_rd * g_rd;
    state.h_prev = h;
    CascadedStep { h, delta }
}

/// Final-step samples from many independent cascaded chains.
#[derive(Clone, Debug, Default)]
pub struct CascadedEnsemble {
    /// hᵢ[K−1] per chain.
    pub previous: Vec<Complex64>,
    /// hᵢ[K] per chain.
    pub current: Vec<Complex64>,
    /// Innovation of the last step per chain.
    pub delta: Vec<Complex64>,
}

const ENSEMBLE_BLOCK: usize = 4096;

/// Runs `chains` independent stationary chains for `steps` updates.
///
/// A slowly fading hop needs thousands of updates to decorrelate, so moments
/// of a single long run carry far fewer effective samples than its length.
/// Independent chains give every sample full weight.
pub fn sample_cascaded_ensemble(
    alpha_sr: f64,
    alpha_rd: f64,
    chains: usize,
    steps: usize,
    recursion: CascadeRecursion,
    seed: u64,
) -> Result<CascadedEnsemble> {
    if steps == 0 || chains == 0 {
        return Err(argument("ensemble needs at least one chain and one step"));
    }
    CascadedChannelState::new(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0), alpha_sr, alpha_rd)?;
    let blocks: Vec<_> = (0..chains.div_ceil(ENSEMBLE_BLOCK))
        .into_par_iter()
        .map(|b| {
            let n = ENSEMBLE_BLOCK.min(chains - b * ENSEMBLE_BLOCK);
            let mut rng = stream_rng(seed, b as u64);
            let mut out = CascadedEnsemble {
                previous: Vec::with_capacity(n),
                current: Vec::with_capacity(n),
                delta: Vec::with_capacity(n),
            };
            for _ in 0..n {
                let mut st = CascadedChannelState::stationary(alpha_sr, alpha_rd, &mut rng).expect("validated above");
                let mut prev = st.h_prev;
                let mut last = CascadedStep {
                    h: prev,
                    delta: Complex64::new(0.0, 0.0),
                };
                for _ in 0..steps {
                    prev = st.h_prev;
                    let e_sr = unit_complex_gaussian(&mut rng);
                    let e_rd = unit_complex_gaussian(&mut rng);
                    last = st.step(recursion, e_sr, e_rd);
                }
                out.previous.push(prev);
                out.current.push(last.h);
                out.delta.push(last.delta);
            }
            out
        })
        .collect();
    let mut all = CascadedEnsemble::default();
    for b in blocks {
        all.previous.extend(b.previous);
        all.current.extend(b.current);
        all.delta.extend(b.delta);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exact_delta_decomposes_product() {
        let mut st = CascadedChannelState::new(c(0.4, -1.1), c(-0.8, 0.3), 0.97, 0.92).unwrap();
        let h_prev = st.h_prev;
        let step = cascaded_step_exact(&mut st, c(0.5, 0.2), c(-0.1, 0.9));
        let rebuilt = h_prev * st.alpha_equivalent() + step.delta;
        assert!((rebuilt - step.h).norm() < 1e-15);
        assert!((st.h_sr_prev * st.h_rd_prev - step.h).norm() < 1e-15);
    }

    #[test]
    fn static_relay_hop_reduces_to_single_term() {
        let mut st = CascadedChannelState::new(c(0.4, -1.1), c(-0.8, 0.3), 0.9, 1.0).unwrap();
        let h_rd = st.h_rd_prev;
        let e_sr = c(0.5, 0.2);
        let step = cascaded_step_exact(&mut st, e_sr, c(-0.1, 0.9));
        let expected = h_rd * e_sr * (1.0f64 - 0.81).sqrt();
        assert!((step.delta - expected).norm() < 1e-15);
        assert_eq!(st.h_rd_prev, h_rd);
    }

    #[test]
    fn fully_static_model_is_frozen() {
        let mut st = CascadedChannelState::new(c(0.4, -1.1), c(-0.8, 0.3), 1.0, 1.0).unwrap();
        let before = st.h_prev;
        let step = cascaded_step_model(&mut st, c(3.0, 1.0), c(-2.0, 0.5));
        assert_eq!(step.h, before);
        assert_eq!(step.delta, c(0.0, 0.0));
    }

    #[test]
    fn rejects_out_of_range_correlation() {
        assert!(CascadedChannelState::new(c(1.0, 0.0), c(1.0, 0.0), 1.01, 0.5).is_err());
        assert!(CascadedChannelState::new(c(1.0, 0.0), c(1.0, 0.0), 0.5, -0.1).is_err());
    }

    #[test]
    fn ensemble_is_deterministic_and_sized() {
        let a = sample_cascaded_ensemble(0.9, 0.99, 5000, 3, CascadeRecursion::Model, 8).unwrap();
        let b = sample_cascaded_ensemble(0.9, 0.99, 5000, 3, CascadeRecursion::Model, 8).unwrap();
        assert_eq!(a.current.len(), 5000);
        assert_eq!(a.current, b.current);
        assert!(sample_cascaded_ensemble(0.9, 0.99, 10, 0, CascadeRecursion::Model, 8).is_err());
    }
}
