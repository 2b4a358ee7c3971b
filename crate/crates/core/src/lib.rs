mod bits;
pub mod error;
pub mod group;
pub mod isoperimetry;
pub mod structure;
pub mod subset;
pub mod verifiers;

pub use error::{Error, Result};
pub use group::{make_group, Element, Group, QuotientMap, Subgroup};
pub use subset::{GroupSubset, LayerSequence};
