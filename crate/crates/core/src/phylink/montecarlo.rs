use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::frame::{run_frame, FrameBuffers, LinkParams};
use super::{detect_min_ed, Combiner, PowerAllocation, WeightScheme};
use crate::error::argument;
use crate::mathkernel::stream_rng;
use crate::{Result, ScenarioConfig};

/// Frames simulated between two stopping checks. Fixed so that the set of
/// simulated frames never depends on the thread count.
const CHUNK_FRAMES: u64 = 64;

/// Bit-error tally for one combining scheme.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ErrorCount {
    pub bits: u64,
    pub errors: u64,
    pub frames: u64,
    /// Σ over frames of (errors in frame)², for the batch-means error bar.
    pub sum_sq_frame_errors: u64,
}

impl ErrorCount {
    pub fn ber(&self) -> f64 {
        if self.bits == 0 {
            0.0
        } else {
            self.errors as f64 / self.bits as f64
        }
    }

    /// Standard error of [`Self::ber`] from the spread of per-frame counts.
    ///
    /// Errors inside one frame share a fade and are strongly correlated, so
    /// treating bits as independent trials would understate the error bar.
    pub fn standard_error(&self) -> f64 {
        if self.frames < 2 || self.bits == 0 {
            return f64::INFINITY;
        }
        let f = self.frames as f64;
        let bits_per_frame = self.bits as f64 / f;
        let mean = self.errors as f64 / f;
        let var = (self.sum_sq_frame_errors as f64 - f * mean * mean) / (f - 1.0);
        (var.max(0.0) / f).sqrt() / bits_per_frame
    }

    fn record_frame(&mut self, bits: u64, errors: u64) {
        self.bits += bits;
        self.errors += errors;
        self.frames += 1;
        self.sum_sq_frame_errors += errors * errors;
    }
}

/// Stopping rule and switches for [`ber_montecarlo_schemes`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonteCarloOptions {
    /// Hard budget of simulated bits (per scheme; all schemes share frames).
    pub max_bits: u64,
    /// Stop once every scheme has at least this many bit errors.
    pub target_errors: u64,
    pub noiseless: bool,
    /// Added to the frame index to form each frame's stream id, so distinct
    /// sweep points can share one seed without sharing noise.
    pub stream_offset: u64,
}

impl Default for MonteCarloOptions {
    fn default() -> Self {
        Self {
            max_bits: 2_000_000,
            target_errors: 2000,
            noiseless: false,
            stream_offset: 0,
        }
    }
}

/// Simulates frames until the stopping rule fires and counts bit errors of
/// every scheme on the same frames.
///
/// Frame `f` always uses stream `stream_offset + f` of `seed`, and frames
/// are processed in fixed-size chunks, so the counts are identical for any
/// number of worker threads.
pub fn ber_montecarlo_schemes(
    cfg: &ScenarioConfig,
    alloc: &PowerAllocation,
    schemes: &[WeightScheme],
    opts: MonteCarloOptions,
    seed: u64,
) -> Result<Vec<ErrorCount>> {
    if schemes.is_empty() {
        return Err(argument("at least one weight scheme is required"));
    }
    let p = LinkParams::new(cfg, alloc)?;
    let combiners = schemes
        .iter()
        .map(|&s| Combiner::new(s, p.alpha0, &cfg.alpha_cascaded(), &p.amp, p.p0))
        .collect::<Result<Vec<_>>>()?;
    let bits_per_frame = p.bits_per_frame() as u64;
    let max_frames = opts.max_bits.div_ceil(bits_per_frame).max(1);

    let mut counts = vec![ErrorCount::default(); schemes.len()];
    let mut next = 0u64;
    while next < max_frames {
        let end = (next + CHUNK_FRAMES).min(max_frames);
        let per_frame: Vec<Vec<u64>> = (next..end)
            .into_par_iter()
            .map_init(FrameWork::default, |work, f| {
                let mut rng = stream_rng(seed, opts.stream_offset + f);
                work.errors(&p, &combiners, &mut rng, opts.noiseless)
            })
            .collect();
        for frame in per_frame {
            for (c, e) in counts.iter_mut().zip(frame) {
                c.record_frame(bits_per_frame, e);
            }
        }
        next = end;
        if counts.iter().all(|c| c.errors >= opts.target_errors) {
            break;
        }
    }
    Ok(counts)
}

/// Bit-error rate of one scheme over at most `n_bits` bits, stopping early
/// after 2000 errors.
pub fn ber_montecarlo(
    cfg: &ScenarioConfig,
    alloc: &PowerAllocation,
    scheme: WeightScheme,
    n_bits: u64,
    seed: u64,
) -> Result<f64> {
    if n_bits < 10_000 {
        return Err(argument(format!(
            "need at least 10^4 bits for a BER estimate, got {n_bits}"
        )));
    }
    let opts = MonteCarloOptions {
        max_bits: n_bits,
        ..Default::default()
    };
    Ok(ber_montecarlo_schemes(cfg, alloc, &[scheme], opts, seed)?[0].ber())
}

#[derive(Default)]
struct FrameWork {
    buf: FrameBuffers,
    direct: Vec<Complex64>,
    relayed: Vec<Complex64>,
}

impl FrameWork {
    fn errors<R: Rng + ?Sized>(
        &mut self,
        p: &LinkParams,
        combiners: &[Combiner],
        rng: &mut R,
        noiseless: bool,
    ) -> Vec<u64> {
        let m = p.constellation.size();
        self.buf.symbols.clear();
        self.buf.symbols.extend((1..p.len).map(|_| rng.random_range(0..m)));
        run_frame(p, &mut self.buf, rng, noiseless);

        let len = p.len;
        self.direct.clear();
        self.direct
            .extend((1..len).map(|k| self.buf.y0[k - 1].conj() * self.buf.y0[k]));
        self.relayed.clear();
        for i in 0..p.relays {
            let y = &self.buf.yi[i * len..(i + 1) * len];
            self.relayed.extend((1..len).map(|k| y[k - 1].conj() * y[k]));
        }

        combiners
            .iter()
            .map(|c| {
                let b0 = c.b0();
                let mut errors = 0u64;
                for k in 1..len {
                    let mut zeta = self.direct[k - 1] * b0;
                    for i in 0..p.relays {
                        let h2 = self.buf.h_rd[i * len + k].norm_sqr();
                        zeta += self.relayed[i * (len - 1) + k - 1] * c.bi(i, h2);
                    }
                    let decided = detect_min_ed(zeta, &p.constellation);
                    errors += u64::from(p.constellation.bit_errors(self.buf.symbols[k - 1], decided));
                }
                errors
            })
            .collect()
    }
}
