//! Per-sample MC-dropout scores.
//!
//! Two scores drive sample selection. The expected predictive entropy is the
//! mean of the per-run entropies (not the entropy of the mean distribution).
//! The feature distance compares channel-normalized activations of every run
//! against a class centroid that was computed once from real samples.

mod centroid;
mod distance;
mod entropy;
mod sidecar;

pub use centroid::{compute_centroids, compute_dataset_centroids, ClassCentroid};
pub use distance::{channel_unit_normalize, feature_distance, feature_distance_runs, DistanceScore, PreparedCentroid};
pub use entropy::{predictive_entropy, score_entropy, score_entropy_runs, EntropyScore};
pub use sidecar::{read_centroids, write_centroids, CentroidSet, CENTROID_MAGIC};
