pub mod atoms;
pub mod cache;
pub mod error;
pub mod operators;
pub mod partition;
pub mod poly;
pub mod symfunc;
pub mod tableau;
pub mod verdict;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use partition::{Partition, SkewDiagram};
pub use tableau::{Tableau, TableauSet};
pub use word::Letter;
