//! Preferential-attachment random graphs built three ways (uniform
//! linearized chord diagrams, sequential attachment, Pólya-urn stick
//! breaking), exact combinatorial oracles for their degree statistics, and
//! the experiment drivers that check the power-law degree tail against them.

pub mod analysis;
pub mod error;
pub mod lcd;
pub mod oracles;
pub mod processes;
pub mod rng;

pub use error::{Error, Result};
pub use lcd::{degree_prefix_sum, enumerate_pairings, pairing_to_graph, sample_pairing, LcdGraph, Pairing};
pub use processes::{generate, ProcessParams, Variant};
