//! Model selection by smoothed Fréchet distance.
//!
//! Feature statistics are fitted per saved generator epoch, compared to the
//! real-data statistics with the Fréchet distance, and the resulting curve is
//! smoothed with an EMA before taking its argmin.

mod ema;
mod frechet;
mod gaussian;
mod sqrtm;

pub use ema::{ema_smooth, select_model, FidCurve, DEFAULT_ALPHA};
pub use frechet::frechet_distance;
pub use gaussian::{fit_gaussian, GaussianStats};
pub use sqrtm::sqrtm_psd;
