//! Exact reconstruction of the 60-ray Kochen-Specker system of the 600-cell.
//!
//! The crate builds the ray catalog over `Z[τ]`, derives its bases, 24-cells,
//! Reye lines and symmetry group, constructs the 30- and 36-ray critical sets
//! from dual-line chains, and checks colorability claims with certificates.

pub mod catalog;
pub mod coloring;
pub mod critical;
pub mod golden;
pub mod inequality;
pub mod lines;
pub mod peres;
pub mod rayset;
pub mod symmetry;
pub mod system;
pub mod tables;

pub use catalog::{build_catalog, Catalog, CellLabel, Letter};
pub use golden::{GoldenInt, GoldenVec4};
pub use rayset::{RayId, RaySet};
pub use system::{Basis, RaySystem};
