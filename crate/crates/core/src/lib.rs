pub mod action;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod group;
pub mod identities;
pub mod maps;
pub mod oeis;
pub mod partition;
pub mod poly;
pub mod superchar;
pub mod trials;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec};
pub use partition::{Ground, GroundKind, LabeledArc, LabeledSetPartition, RookMatrix};
