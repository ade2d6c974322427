//! Inhomogeneous counting processes: the martingale counter, the slow
//! birth-death chain with its limit law, and the oscillating two-state chain.

mod martingale;
mod oscillator;
mod rates;
mod slow;
mod stationary;

pub use martingale::{falling, simulate_martingale, MartingaleConfig, MartingaleRun};
pub use oscillator::{
    abs_row_sum_norm, block_kind, oscillator, oscillator_demo, row_sum_norm, step_matrix, BlockEnd, BlockKind,
    OscillatorRun,
};
pub use rates::Rate;
pub use slow::{simulate_slow_chain, Occupancy, SlowChainConfig};
pub use stationary::{closed_form, default_cutoff, stationary_birth_death, StationaryLaw, TAIL_TOLERANCE};
