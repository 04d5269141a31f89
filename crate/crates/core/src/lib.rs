//! Simplicial lists: listings, leveled trees, list nerves of operads,
//! thickenings and integer homology.

pub mod error;
pub mod delta;
pub mod list;
pub mod slist;
pub mod operad;
pub mod sample;
pub mod nerve;
pub mod augmented;
pub mod thicken;
pub mod homology;
pub mod format;

pub use error::{Error, Result};
pub use list::{compose, induced_middle, is_perfect, perfect_factorize, FiniteSet, Listing};
