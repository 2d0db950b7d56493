//! Monte Carlo checks, spectra, serialisation and the `ginibre` command line
//! on top of [`ginibre_core`].

pub mod cli;
pub mod config;
pub mod format;
pub mod montecarlo;
pub mod verify;

pub use ginibre_core as core;
