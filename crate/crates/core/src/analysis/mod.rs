//! Experiments over generated graphs and the supporting numerics: degree
//! histograms, power-law fits, concentration rates, the early-vertex sums and
//! exact feasibility regions.

pub mod experiments;
pub mod fit;
pub mod histogram;
pub mod region;
pub mod report;
pub mod sums;

pub use experiments::{
    concentration_experiment, corollary_experiment, empirical_fraction, replicate_histograms,
    ConcentrationResult, CorollaryPoint, CorollaryResult, FractionEstimate,
};
pub use fit::{hill_exponent, power_law_exponent, power_law_exponent_offset, HillEstimate, PowerLawFit};
pub use histogram::{degree_histogram, DegreeHistogram, DegreeMode, Provenance};
pub use region::{
    named_systems, region_max_alpha, region_union_max_alpha, Cmp, Inequality, RegionOutcome,
    RegionSolution, RegionSystem, RegionUnion,
};
pub use report::{mean_std, ExperimentReport, Row, Verdict};
pub use sums::{claimed_order, sum_s1, sum_s2_bound, S1Case, S1Result, S2Bound};
