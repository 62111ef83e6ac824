//! Synthetic Gaussian embedding datasets and a reference selector.
//!
//! Fixtures stand in for a real extractor: every sample has a true class,
//! features drawn from that class's Gaussian, MC runs that add independent
//! jitter to the features, and class probabilities given by a softmax over
//! negative squared distances to the class means. Synthetic samples can be
//! deliberately mislabeled (drawn from another class, tagged with this one).

mod generate;
mod oracle;

pub use generate::{gen_fixture, sample_gaussian, Covariance, FixtureSpec, GeneratedFixture};
pub use oracle::oracle_select;
