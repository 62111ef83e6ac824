//! Pick a generator checkpoint from a noisy FID curve: the raw minimum is a
//! one-epoch dip, the smoothed minimum sits in the sustained basin.

use ssaug::fid::{select_model, FidCurve, DEFAULT_ALPHA};

fn main() -> ssaug::Result<()> {
    let points: Vec<(u32, f64)> = (1..=20u32)
        .map(|t| {
            let fid = match t {
                5 => 20.0,
                12..=15 => 25.0,
                16.. => 50.0,
                _ => 60.0,
            };
            (t, fid)
        })
        .collect();
    let curve = FidCurve::new(&points, DEFAULT_ALPHA)?;
    println!("epoch  raw     smoothed");
    for ((e, r), s) in curve.epochs().iter().zip(curve.raw()).zip(curve.smoothed()) {
        println!("{e:>5}  {r:<6.1}  {s:.3}");
    }
    println!("raw argmin: epoch {}", curve.raw_argmin());
    println!("selected (alpha = {}): epoch {}", curve.alpha(), select_model(&curve));
    Ok(())
}
