#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]

//! Complex networks of local go patterns.
//!
//! Game records are replayed on a 19×19 board; every move is labelled with
//! the 3×3 neighbourhood it was played into, reduced to one of 1107 classes
//! under the symmetries of the square. Successive moves played close to each
//! other are linked, giving a weighted directed network whose Google matrix
//! (PageRank, full spectrum, leading eigenvectors) summarises how a given
//! population of players moves locally. Comparing the rankings induced by two
//! such networks tells whether two game databases come from the same kind of
//! player.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, directory
//! loading and the command line live in the companion `gonet` crate.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod board;
pub mod harness;
pub mod metrics;
pub mod network;
pub mod pattern;
pub mod playout;
pub mod rng;
pub mod sgf;
pub mod spectral;

pub use board::{Board, Cell, Color, Coord, ReplayEvent, BOARD_SIZE};
pub use harness::{IndicatorPoint, SubsampleScheme, TuringVerdict};
pub use metrics::{ComparisonReport, RankingVector};
pub use network::{DegreeDistribution, DistanceMetric, LinkRule, PatternNetwork};
pub use pattern::{CanonicalPatternId, PatternCatalog, RawPattern, N_CLASSES};
pub use playout::{PlayoutPolicy, PolicyKind};
pub use sgf::{GameRecord, MoveAction, MoveKind};
pub use spectral::{GoogleMatrix, PageRankVector, Spectrum, StochasticMatrix};
