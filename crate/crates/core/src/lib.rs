//! Secrecy rates of artificial-noise-aided massive MIMO downlinks with
//! low-resolution DACs and spatially correlated channels.
//!
//! The crate provides closed-form bounds on the user and eavesdropper rates
//! ([`rates::BoundModel`]), Monte-Carlo estimates of the same quantities
//! ([`rates::MonteCarlo`]) and a sweep harness with CSV/SVG output
//! ([`experiments`]).
//!
//! ```
//! use secmimo::rates::{evaluate_bounds, SystemConfig};
//!
//! let cfg = SystemConfig::new(256, 16, 4).with_snr_db(10.0).with_xi(0.7);
//! let r = evaluate_bounds(&cfg).unwrap();
//! assert!((r.secrecy_bound - 3.3108).abs() < 1e-4);
//! ```
//!
//! The guide in `book/` walks through each piece.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod corrmat;
pub mod dac;
pub mod error;
pub mod linalg;
pub mod precoder;
pub mod rates;
pub mod rng;
pub mod experiments;

// Book snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/correlation.md")]
    mod correlation {}
    #[doc = include_str!("../../../book/src/channel-and-dac.md")]
    mod channel_and_dac {}
    #[doc = include_str!("../../../book/src/precoding.md")]
    mod precoding {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/power-allocation.md")]
    mod power_allocation {}
    #[doc = include_str!("../../../book/src/correlation-and-resolution.md")]
    mod correlation_and_resolution {}
    #[doc = include_str!("../../../book/src/monte-carlo.md")]
    mod monte_carlo {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
