use num_complex::Complex64;
use rand::Rng;

use super::{CombinerWeights, Constellation, PowerAllocation};
use crate::channel::{Ar1Process, SumOfSinusoids};
use crate::error::argument;
use crate::harness::ConfigError;
use crate::mathkernel::{stream_rng, unit_complex_gaussian};
use crate::{ChannelGenerator, ComplexSeries, Result, ScenarioConfig};

/// Switches for a single frame simulation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LinkOptions {
    /// Zero all thermal noise (channels still fade).
    pub noiseless: bool,
}

/// What the destination receives over one frame, plus genie side information.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameObservation {
    /// Direct-link samples y₀[k].
    pub y0: ComplexSeries,
    /// Relayed samples yᵢ[k], one series per relay.
    pub yi: Vec<ComplexSeries>,
    /// Relay-destination gains h_rd,ᵢ[k]; used only by genie-aided combiners.
    pub genie_h_rd: Option<Vec<ComplexSeries>>,
    /// Transmitted differential symbol indices for k = 1..len.
    pub symbols: Vec<usize>,
}

impl FrameObservation {
    pub fn len(&self) -> usize {
        self.y0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y0.is_empty()
    }

    fn genie_at(&self, k: usize) -> Option<Vec<Complex64>> {
        self.genie_h_rd.as_ref().map(|g| g.iter().map(|s| s[k]).collect())
    }
}

/// ζ = b₀y₀*[k−1]y₀[k] + Σ bᵢyᵢ*[k−1]yᵢ[k]
pub fn combine(obs: &FrameObservation, w: &CombinerWeights, k: usize) -> Result<Complex64> {
    if k == 0 || k >= obs.len() {
        return Err(argument(format!("combining index {k} outside 1..{}", obs.len())));
    }
    if w.bi.len() != obs.yi.len() {
        return Err(argument(format!(
            "{} relay weights for {} relay branches",
            w.bi.len(),
            obs.yi.len()
        )));
    }
    let mut zeta = obs.y0[k - 1].conj() * obs.y0[k] * w.b0;
    for (y, &b) in obs.yi.iter().zip(&w.bi) {
        zeta += y[k - 1].conj() * y[k] * b;
    }
    Ok(zeta)
}

impl super::Combiner {
    /// Combines at index `k`, recomputing genie weights from the frame's
    /// relay-destination gains when the scheme needs them.
    pub fn combine(&self, obs: &FrameObservation, k: usize) -> Result<Complex64> {
        if k >= obs.len() {
            return Err(argument(format!("combining index {k} outside 1..{}", obs.len())));
        }
        let w = if self.scheme.needs_genie() {
            self.weights(obs.genie_at(k).as_deref())?
        } else {
            self.weights(None)?
        };
        combine(obs, &w, k)
    }
}

/// Link constants derived from a scenario and power split.
#[derive(Clone, Debug)]
pub(crate) struct LinkParams {
    pub relays: usize,
    pub len: usize,
    pub constellation: Constellation,
    pub sqrt_p0: f64,
    pub p0: f64,
    pub amp: Vec<f64>,
    pub alpha0: f64,
    pub alpha_sr: Vec<f64>,
    pub alpha_rd: Vec<f64>,
    pub f_sd: f64,
    pub f_sr: Vec<f64>,
    pub f_rd: Vec<f64>,
    pub spacing: f64,
    pub generator: ChannelGenerator,
}

impl LinkParams {
    pub fn new(cfg: &ScenarioConfig, alloc: &PowerAllocation) -> Result<Self> {
        let violations = cfg.violations();
        if !violations.is_empty() {
            return Err(ConfigError::Invalid(violations).into());
        }
        if alloc.pi.len() != cfg.relays {
            return Err(argument(format!(
                "power allocation has {} relay powers for {} relays",
                alloc.pi.len(),
                cfg.relays
            )));
        }
        Ok(Self {
            relays: cfg.relays,
            len: cfg.frame_length,
            constellation: Constellation::new(cfg.modulation)?,
            sqrt_p0: alloc.p0.sqrt(),
            p0: alloc.p0,
            amp: alloc.amplification(),
            alpha0: cfg.alpha0(),
            alpha_sr: cfg.alpha_sr(),
            alpha_rd: cfg.alpha_rd(),
            f_sd: cfg.f_sd,
            f_sr: cfg.f_sr.clone(),
            f_rd: cfg.f_rd.clone(),
            spacing: cfg.spacing_n as f64,
            generator: cfg.generator,
        })
    }

    pub fn bits_per_frame(&self) -> usize {
        (self.len - 1) * self.constellation.bits_per_symbol()
    }
}

/// Reusable per-worker storage for one frame. Relay series are stored
/// relay-major: index `i * len + k`.
#[derive(Clone, Debug, Default)]
pub(crate) struct FrameBuffers {
    pub y0: Vec<Complex64>,
    pub yi: Vec<Complex64>,
    pub h_rd: Vec<Complex64>,
    pub symbols: Vec<usize>,
}

enum LinkFading {
    Ar1(Ar1Process),
    Sos(Box<SumOfSinusoids>),
}

impl LinkFading {
    fn new<R: Rng + ?Sized>(kind: ChannelGenerator, alpha: f64, doppler: f64, rng: &mut R) -> Self {
        match kind {
            ChannelGenerator::Ar1 => Self::Ar1(Ar1Process::stationary(alpha, rng).expect("validated correlation")),
            ChannelGenerator::JakesSos => {
                Self::Sos(Box::new(SumOfSinusoids::new(doppler, rng).expect("validated Doppler")))
            }
        }
    }

    #[inline]
    fn gain<R: Rng + ?Sized>(&mut self, k: usize, spacing: f64, rng: &mut R) -> Complex64 {
        match self {
            Self::Ar1(p) if k == 0 => p.current(),
            Self::Ar1(p) => p.step(unit_complex_gaussian(rng)),
            Self::Sos(g) => g.gain(k as f64 * spacing),
        }
    }
}

/// Simulates one frame into `buf`. `buf.symbols` must already hold the
/// `len − 1` data symbol indices.
pub(crate) fn run_frame<R: Rng + ?Sized>(p: &LinkParams, buf: &mut FrameBuffers, rng: &mut R, noiseless: bool) {
    let len = p.len;
    buf.y0.resize(len, Complex64::default());
    buf.yi.resize(p.relays * len, Complex64::default());
    buf.h_rd.resize(p.relays * len, Complex64::default());

    let mut h0 = LinkFading::new(p.generator, p.alpha0, p.f_sd, rng);
    let mut hops: Vec<(LinkFading, LinkFading)> = (0..p.relays)
        .map(|i| {
            let sr = LinkFading::new(p.generator, p.alpha_sr[i], p.f_sr[i], rng);
            let rd = LinkFading::new(p.generator, p.alpha_rd[i], p.f_rd[i], rng);
            (sr, rd)
        })
        .collect();

    let noise = |rng: &mut R| {
        if noiseless {
            Complex64::default()
        } else {
            unit_complex_gaussian(rng)
        }
    };

    let mut s = Complex64::new(1.0, 0.0);
    for k in 0..len {
        if k > 0 {
            s *= p.constellation.point(buf.symbols[k - 1]);
        }
        let x = s * p.sqrt_p0;
        let h = h0.gain(k, p.spacing, rng);
        buf.y0[k] = h * x + noise(rng);
        for (i, (sr, rd)) in hops.iter_mut().enumerate() {
            let h_sr = sr.gain(k, p.spacing, rng);
            let h_rd = rd.gain(k, p.spacing, rng);
            let y_sr = h_sr * x + noise(rng);
            buf.yi[i * len + k] = h_rd * y_sr * p.amp[i] + noise(rng);
            buf.h_rd[i * len + k] = h_rd;
        }
    }
}

/// Simulates one frame carrying `data_bits` (Gray mapped, most significant
/// bit first) with its own random stream derived from `seed`.
pub fn simulate_frame(
    cfg: &ScenarioConfig,
    alloc: &PowerAllocation,
    data_bits: &[u8],
    seed: u64,
) -> Result<FrameObservation> {
    let mut rng = stream_rng(seed, 0);
    simulate_frame_with(cfg, alloc, data_bits, &mut rng, LinkOptions::default())
}

pub fn simulate_frame_with<R: Rng + ?Sized>(
    cfg: &ScenarioConfig,
    alloc: &PowerAllocation,
    data_bits: &[u8],
    rng: &mut R,
    opts: LinkOptions,
) -> Result<FrameObservation> {
    let p = LinkParams::new(cfg, alloc)?;
    if data_bits.len() != p.bits_per_frame() {
        return Err(argument(format!(
            "frame of {} symbols carries {} bits, got {}",
            p.len,
            p.bits_per_frame(),
            data_bits.len()
        )));
    }
    if data_bits.iter().any(|&b| b > 1) {
        return Err(argument("data bits must be 0 or 1"));
    }
    let bps = p.constellation.bits_per_symbol();
    let mut buf = FrameBuffers {
        symbols: data_bits
            .chunks(bps)
            .map(|c| p.constellation.index_of_bits(c))
            .collect(),
        ..Default::default()
    };
    run_frame(&p, &mut buf, rng, opts.noiseless);
    let split = |v: &[Complex64]| -> Vec<ComplexSeries> { v.chunks(p.len).map(<[_]>::to_vec).collect() };
    Ok(FrameObservation {
        y0: buf.y0,
        yi: split(&buf.yi),
        genie_h_rd: Some(split(&buf.h_rd)),
        symbols: buf.symbols,
    })
}
