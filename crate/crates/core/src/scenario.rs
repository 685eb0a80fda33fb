//! Network and channel configuration shared by the simulator and the analysis.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::channel::jakes_autocorrelation;

/// How fading processes are synthesized in link simulations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChannelGenerator {
    /// First-order autoregressive recursion driven by white innovations.
    #[default]
    Ar1,
    /// Sum-of-sinusoids approximation of the Jakes Doppler spectrum.
    JakesSos,
}

impl fmt::Display for ChannelGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ar1 => "ar1",
            Self::JakesSos => "jakes_sos",
        })
    }
}

impl FromStr for ChannelGenerator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ar1" => Ok(Self::Ar1),
            "jakes_sos" | "jakes" | "sos" => Ok(Self::JakesSos),
            other => Err(format!("unknown generator `{other}` (expected ar1 or jakes_sos)")),
        }
    }
}

/// A relay network: topology, modulation, link Doppler rates and frame layout.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    /// Number of relays R.
    pub relays: usize,
    /// Constellation size M of the differential PSK alphabet.
    pub modulation: usize,
    /// Normalized Doppler of the source-destination link.
    pub f_sd: f64,
    /// Normalized Doppler of each source-relay link.
    pub f_sr: Vec<f64>,
    /// Normalized Doppler of each relay-destination link.
    pub f_rd: Vec<f64>,
    /// Channel uses between consecutive symbols of one branch.
    pub spacing_n: usize,
    pub generator: ChannelGenerator,
    /// Symbols per frame including the differential reference.
    pub frame_length: usize,
    pub seed: u64,
}

pub const DEFAULT_FRAME_LENGTH: usize = 1001;
pub const DEFAULT_SEED: u64 = 42;

impl ScenarioConfig {
    /// A configuration with the same Doppler on every relay path.
    pub fn uniform(name: &str, relays: usize, modulation: usize, f_sd: f64, f_sr: f64, f_rd: f64) -> Self {
        Self {
            name: name.to_string(),
            relays,
            modulation,
            f_sd,
            f_sr: vec![f_sr; relays],
            f_rd: vec![f_rd; relays],
            spacing_n: 1,
            generator: ChannelGenerator::Ar1,
            frame_length: DEFAULT_FRAME_LENGTH,
            seed: DEFAULT_SEED,
        }
    }

    /// Slow fading on every link.
    pub fn scenario_i(relays: usize, modulation: usize) -> Self {
        Self::uniform("scenario_I", relays, modulation, 0.005, 0.005, 0.005)
    }

    /// Fast source-side links, slow relay-destination links.
    pub fn scenario_ii(relays: usize, modulation: usize) -> Self {
        Self::uniform("scenario_II", relays, modulation, 0.05, 0.05, 0.005)
    }

    /// Fast fading on every link.
    pub fn scenario_iii(relays: usize, modulation: usize) -> Self {
        Self::uniform("scenario_III", relays, modulation, 0.1, 0.1, 0.05)
    }

    /// Looks up a named preset (`scenario_I`, `scenario_II`, `scenario_III`).
    pub fn preset(name: &str, relays: usize, modulation: usize) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "scenario_i" | "i" | "1" => Some(Self::scenario_i(relays, modulation)),
            "scenario_ii" | "ii" | "2" => Some(Self::scenario_ii(relays, modulation)),
            "scenario_iii" | "iii" | "3" => Some(Self::scenario_iii(relays, modulation)),
            _ => None,
        }
    }

    /// Every invariant violation, in field order. Empty when valid.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.relays == 0 {
            out.push("relays: at least one relay is required".to_string());
        }
        if self.modulation < 2 || !self.modulation.is_power_of_two() {
            out.push(format!(
                "modulation: M must be a power of two >= 2, got {}",
                self.modulation
            ));
        }
        let doppler_ok = |f: f64| (0.0..0.5).contains(&f);
        if !doppler_ok(self.f_sd) {
            out.push(format!("f_sd: normalized Doppler {} outside [0, 0.5)", self.f_sd));
        }
        for (field, list) in [("f_sr", &self.f_sr), ("f_rd", &self.f_rd)] {
            if list.len() != self.relays {
                out.push(format!(
                    "{field}: expected {} entries (one per relay), got {}",
                    self.relays,
                    list.len()
                ));
            }
            for (i, &f) in list.iter().enumerate() {
                if !doppler_ok(f) {
                    out.push(format!("{field}[{i}]: normalized Doppler {f} outside [0, 0.5)"));
                }
            }
        }
        if self.spacing_n == 0 {
            out.push("spacing_n: must be at least 1".to_string());
        }
        if self.frame_length < 2 {
            out.push(format!(
                "frame_length: need the reference symbol plus at least one data symbol, got {}",
                self.frame_length
            ));
        }
        out
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.modulation.trailing_zeros() as usize
    }

    /// Squared minimum distance 4 sin²(π/M) of the unit-energy PSK alphabet.
    pub fn dmin2(&self) -> f64 {
        4.0 * (PI / self.modulation as f64).sin().powi(2)
    }

    fn alpha(&self, f: f64) -> f64 {
        jakes_autocorrelation(f, self.spacing_n).unwrap_or(f64::NAN)
    }

    /// Lag-n correlation of the direct link. NaN for an invalid Doppler.
    pub fn alpha0(&self) -> f64 {
        self.alpha(self.f_sd)
    }

    pub fn alpha_sr(&self) -> Vec<f64> {
        self.f_sr.iter().map(|&f| self.alpha(f)).collect()
    }

    pub fn alpha_rd(&self) -> Vec<f64> {
        self.f_rd.iter().map(|&f| self.alpha(f)).collect()
    }

    /// Equivalent correlation αᵢ = α_srᵢ·α_rdᵢ of each cascaded path.
    pub fn alpha_cascaded(&self) -> Vec<f64> {
        self.alpha_sr()
            .into_iter()
            .zip(self.alpha_rd())
            .map(|(a, b)| a * b)
            .collect()
    }
}
