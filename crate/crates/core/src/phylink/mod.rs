//! The differential amplify-and-forward link: modulation, the two-phase relay
//! transmission, combining and detection, and bit-error Monte Carlo.

mod constellation;
mod frame;
mod montecarlo;
mod power;
mod weights;

pub use constellation::{detect_min_ed, differential_encode, Constellation};
pub use frame::{combine, simulate_frame, simulate_frame_with, FrameObservation, LinkOptions};
pub use montecarlo::{ber_montecarlo, ber_montecarlo_schemes, ErrorCount, MonteCarloOptions};
pub use power::{amplification_factor, db_to_linear, PowerAllocation};
pub use weights::{
    weights_cdd, weights_conditional_mrc, weights_optimum, weights_tvd, Combiner, CombinerWeights, WeightScheme,
};
