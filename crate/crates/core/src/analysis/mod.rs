//! Pairwise error probability of the genie-optimum combiner, its θ = π/2
//! bound, and the high-SNR error floors.

mod floor;
mod pep;
mod snr;

pub use floor::{
    error_floor, floor_distinct, floor_equal, floor_limit_integral, floor_mixed, ErrorFloor, FloorCase, GammaBarSet,
};
pub use pep::{
    ber_from_pep, pep_conditional, pep_integrand, pep_unconditional, pep_upper_bound, relay_factor_closed_form,
    relay_factor_exact, PepInputs, RelayAveraging,
};
pub use snr::{gamma0, gamma_bar, gamma_i};
