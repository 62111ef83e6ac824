//! Fit Gaussians to feature samples and compare them with the Fréchet distance.

use ssaug::fid::{fit_gaussian, frechet_distance};
use ssaug::fixtures::sample_gaussian;

fn main() -> ssaug::Result<()> {
    let dim = 8;
    let reference = fit_gaussian(&sample_gaussian(&vec![0.0; dim], 1.0, 10_000, 1))?;
    for (label, shift, seed) in [("same distribution", 0.0, 2), ("mean + 1", 1.0, 3), ("mean + 3", 3.0, 4)] {
        let other = fit_gaussian(&sample_gaussian(&vec![shift; dim], 1.0, 10_000, seed))?;
        let fid = frechet_distance(&reference, &other)?;
        println!("{label:>18}: FID {fid:8.4}  (population value {:.1})", shift * shift * dim as f64);
    }
    Ok(())
}
