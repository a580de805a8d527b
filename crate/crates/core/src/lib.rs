//! Exact verification of hook length identities for binary, ordered, and
//! slotted trees, and the random leaf-by-leaf growth process whose labeling
//! probabilities realize them.

pub mod enumerate;
pub mod error;
pub mod exact;
pub mod identities;
pub mod sampler;
pub mod stats;
pub mod trees;

pub use error::{Error, Result};
