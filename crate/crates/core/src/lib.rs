//! Monochromatic structure in two-colored complete graphs built from data.
//!
//! A dataset becomes a red/blue coloring of `K_n` (Hamming-distance
//! thresholds over roll-call votes, top-k trade partners, or a seeded random
//! model). The crate counts monochromatic triangles and small cliques
//! exactly, compares those counts with the Goodman floor and Thomason bounds
//! that every coloring must respect, and scores the gap with chi-squared
//! statistics and path-completion (transitivity) ratios.
//!
//! ```
//! use ramstat_core::{bounds, census, TwoColoring};
//!
//! let star = TwoColoring::from_blue_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
//! let c = census::triangle_census(&star);
//! assert_eq!((c.red_triangles, c.blue_triangles), (10, 0));
//! assert!(c.mono >= bounds::schwenk_forced(6));
//! ```

pub mod bits;
pub mod bounds;
pub mod census;
mod clique;
pub mod coloring;
pub mod error;
pub mod ingest;
pub mod report;
pub mod stats;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use bounds::{ExpectationCurve, GoodmanBound};
pub use census::{CliqueCensus, MaxClique, TransitivityReport, TriangleCensus};
pub use coloring::{Color, TwoColoring};
pub use error::{Error, Result};
pub use ingest::{DistanceMatrix, Party, SweepRow, SweepTable, TradeFlow, VoteFormat, VoterRecord};
pub use stats::{Bias, Chi2Kind, Chi2Report, Series};
