//! Plane quadrangulations as rotation systems: exact Wiener index and status
//! computations, the extremal ladder family, the reductions used to bound
//! the Wiener index, exhaustive enumeration, and per-instance audits of the
//! bound and its supporting inequalities.

pub mod analyze;
pub mod bounds;
pub mod construct;
pub mod embed;
pub mod enumerate;
pub mod metrics;
pub mod par;
pub mod report;
pub mod surgery;

pub use bounds::Rational;
pub use embed::{CanonicalCode, EmbeddedGraph, Quadrangulation};
