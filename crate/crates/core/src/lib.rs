//! Selective synthetic augmentation with quality assurance.
//!
//! The crate covers the two decision points of a GAN-based augmentation
//! pipeline once a feature extractor has produced embedding dumps:
//!
//! * **model selection** ([`fid`]): Fréchet distance between Gaussian feature
//!   statistics, EMA smoothing of the per-epoch curve and argmin selection;
//! * **sample selection** ([`ensemble`], [`selector`]): expected predictive
//!   entropy over MC-dropout runs, channel-normalized feature distance to
//!   class centroids, and the two-stage keep-half filter that yields exactly
//!   `floor(r * N_i)` synthetic samples per class.
//!
//! [`store`] defines the binary dump format (`SSAE`) shared with any
//! extractor, the centroid sidecar (`SSAC`) and the text manifests.
//! [`fixtures`] generates controllable Gaussian datasets and carries an
//! independent reference selector used by the test suites.

pub mod cli;
pub mod config;
pub mod ensemble;
pub mod error;
pub mod fid;
pub mod fixtures;
pub mod selector;
pub mod store;

pub use error::{Error, Result};
