//! Geometry of finite balls in the Cayley graph `Γ(U(P), S)`.
//!
//! A ball of radius `R` contains every vertex within distance `R` of the
//! identity and every edge between two such vertices. A distance `d(u, v)`
//! measured inside the ball is *exact* when `|u| + |v| + d(u, v) ≤ 2R`: then
//! every geodesic of the full graph between `u` and `v` stays in the ball, so
//! the in-ball distance and geodesic set agree with the ambient ones. Every
//! metric quantity here is computed only from exact distances; anything
//! else is refused or counted as skipped.

pub mod ball;
pub mod constants;
pub mod genset;
pub mod geodesic;
pub mod hyperbolicity;
pub mod lemmas;
pub mod paths;

pub use ball::{Ball, BallError, BallOptions, Metric};
pub use constants::{estimate_h_constants, Constant, ConstantsReport};
pub use genset::{GenSet, GenSetError, Generator};
pub use geodesic::Dag;
pub use hyperbolicity::{delta_4pt, delta_thin, gromov_product, Delta4Report, ScanMode, ScanOptions, ThinReport};
pub use lemmas::{check_lemma_bounds, LemmaOptions, LemmaReport};
pub use paths::{hausdorff, path_of_product, PathFamily, PathInBall};

use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("distance between vertices {0} and {1} is not exact at this radius")]
    NotExact(VertexId, VertexId),
    #[error("vertex {0} is not in the ball")]
    NoSuchVertex(VertexId),
    #[error("`{0}` lies outside the ball")]
    OutsideBall(String),
    #[error(transparent)]
    Ball(#[from] BallError),
}

/// Running maximum with a witness; ties keep the smaller witness so that
/// parallel merges are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Best<W> {
    pub value: i64,
    pub witness: Option<W>,
}

impl<W: Ord> Best<W> {
    pub fn new() -> Self {
        Best { value: i64::MIN, witness: None }
    }

    pub fn offer(&mut self, value: i64, witness: W) {
        let better = match &self.witness {
            None => true,
            Some(w) => value > self.value || (value == self.value && witness < *w),
        };
        if better {
            self.value = value;
            self.witness = Some(witness);
        }
    }

    pub fn merge(mut self, other: Self) -> Self {
        if let Some(w) = other.witness {
            self.offer(other.value, w);
        }
        self
    }

    /// The value, or `floor` when nothing was offered.
    pub fn value_or(&self, floor: i64) -> i64 {
        if self.witness.is_some() {
            self.value
        } else {
            floor
        }
    }
}
