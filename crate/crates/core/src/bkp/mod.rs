//! Series-level evaluation of the Virasoro recursions and of the functional
//! identities they feed.

pub mod context;
pub mod identities;
pub mod lambda;
pub mod oneface;

pub use context::{Model, Peel, SeriesContext};
pub use lambda::LambdaIndex;
