//! Fully dynamic exact edge connectivity for simple undirected graphs.
//!
//! Two engines are provided:
//!
//! * [`rand_engine::RandEngine`] — randomized, built on random 2-out
//!   contractions and l0-sampling sketch certificates; answers are always
//!   upper bounds on the true connectivity and match it with high
//!   probability.
//! * [`det_engine::DetEngine`] — deterministic, built on expander
//!   decomposition and non-singleton-min-cut sparsifiers, switching to a
//!   small-cut engine below a threshold; answers are always exact.
//!
//! The [`oracle`] module holds the exact static min-cut routines used both
//! as the engines' query substrate and as the ground truth in tests, and
//! [`harness`] replays update streams against either engine.

pub mod certificate;
pub mod det_engine;
pub mod error;
pub mod expander;
pub mod forest;
pub mod graph;
pub mod harness;
pub mod nmc;
pub mod oracle;
pub mod rand_engine;
pub mod rng;
pub mod sketch;
pub mod two_out;

pub use error::{Error, Result};
pub use graph::{ContractionMap, DynGraph, MultiGraph, UpdateReceipt};
pub use det_engine::{DetEngine, DetEngineConfig};
pub use rand_engine::{AnswerSource, ConnectivityAnswer, RandEngine, RandEngineConfig};

