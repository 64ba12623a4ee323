//! Splitting modules over the factor algebra of `Λ_2` at `c2` into `P(c2)`-summands, interval
//! modules along the path `U`, and a part living on the smaller algebra.

mod interval;
mod split;

use thiserror::Error;

use crate::presentation::PresentationError;
use crate::repcore::RepError;

pub use interval::{interval_decompose, IntervalDecomposition, IntervalSummand};
pub use split::{lemma2_split, strip_pc2, x_walk, xset, xset_over, Lemma2Split, SplitReport, StripPc2, X_WALKS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("underlying graph is not a path: {0}")]
    NotAPath(String),
    #[error("missing vertex or arrow: {0}")]
    Missing(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
}
