//! Time-varying Rayleigh fading: direct links, the cascaded relay path and the
//! statistics used to validate both.

mod ar1;
mod cascaded;
mod jakes;
mod stats;

pub use ar1::{ar1_step, generate_ar1_process, Ar1Process};
pub use cascaded::{
    cascaded_step_exact, cascaded_step_model, sample_cascaded_ensemble, CascadeRecursion, CascadedChannelState,
    CascadedEnsemble, CascadedStep,
};
pub use jakes::{generate_jakes_process, jakes_autocorrelation, FadingSpec, SumOfSinusoids, SOS_SINUSOIDS};
pub use stats::{envelope_pdf, estimate_autocorrelation, Histogram, SeriesMoments};
