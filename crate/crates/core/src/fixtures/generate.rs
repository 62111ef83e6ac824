use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::store::{EmbeddingDataset, LayerShape, Origin, SampleRecord};

/// Per-class covariance over the concatenated feature vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Covariance {
    /// `std^2 * I` for each class.
    Isotropic(Vec<f64>),
    /// Full matrices, one per class.
    Full(Vec<Vec<Vec<f64>>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureSpec {
    pub num_classes: u16,
    pub layers: Vec<LayerShape>,
    /// One mean per class, each of length `sum(layer lengths)`.
    pub class_means: Vec<Vec<f64>>,
    pub covariance: Covariance,
    pub real_per_class: Vec<usize>,
    pub synthetic_per_class: Vec<usize>,
    pub mislabel_fraction: f64,
    pub mc_runs: u16,
    /// Std of the additive per-run noise on features.
    pub mc_jitter: f64,
    pub temperature: f64,
    pub seed: u64,
}

impl FixtureSpec {
    /// Two classes, 8-dim single layer, means `6 e_0` and `6 e_1` with unit
    /// variance (6 sigma from the origin, 8.5 sigma apart), 30% mislabeled
    /// synthetics and five MC runs.
    pub fn separable_two_class(seed: u64) -> Self {
        let dim = 8;
        let mean = |axis: usize| {
            let mut m = vec![0.0; dim];
            m[axis] = 6.0;
            m
        };
        FixtureSpec {
            num_classes: 2,
            layers: vec![LayerShape::vector(dim as u32).expect("nonzero")],
            class_means: vec![mean(0), mean(1)],
            covariance: Covariance::Isotropic(vec![1.0, 1.0]),
            real_per_class: vec![50, 50],
            synthetic_per_class: vec![100, 100],
            mislabel_fraction: 0.3,
            mc_runs: 5,
            mc_jitter: 0.5,
            temperature: 8.0,
            seed,
        }
    }

    pub fn feature_len(&self) -> usize {
        self.layers.iter().map(LayerShape::len).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let c = self.num_classes as usize;
        let bad = |m: String| Err(Error::Config(m));
        if c < 2 {
            return bad("num_classes must be >= 2".into());
        }
        if self.layers.is_empty() {
            return bad("at least one layer".into());
        }
        for l in &self.layers {
            LayerShape::new(l.channels, l.height, l.width)?;
        }
        if self.class_means.len() != c || self.class_means.iter().any(|m| m.len() != self.feature_len()) {
            return bad(format!("need {c} class means of length {}", self.feature_len()));
        }
        if self.real_per_class.len() != c || self.synthetic_per_class.len() != c {
            return bad(format!("per-class counts must have {c} entries"));
        }
        if !(0.0..=1.0).contains(&self.mislabel_fraction) {
            return bad(format!("mislabel_fraction {} outside [0, 1]", self.mislabel_fraction));
        }
        if self.mc_runs == 0 {
            return bad("mc_runs must be >= 1".into());
        }
        if !(self.mc_jitter >= 0.0 && self.mc_jitter.is_finite()) {
            return bad("mc_jitter must be >= 0".into());
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return bad("temperature must be > 0".into());
        }
        match &self.covariance {
            Covariance::Isotropic(stds) if stds.len() != c => bad(format!("need {c} class stds")),
            Covariance::Full(m) if m.len() != c => bad(format!("need {c} class covariances")),
            _ => Ok(()),
        }
    }

    /// Lower-triangular factor per class; fails on a degenerate covariance.
    fn factors(&self) -> Result<Vec<DMatrix<f64>>> {
        let d = self.feature_len();
        match &self.covariance {
            Covariance::Isotropic(stds) => stds
                .iter()
                .enumerate()
                .map(|(i, &s)| {
                    if s > 0.0 && s.is_finite() {
                        Ok(DMatrix::identity(d, d) * s)
                    } else {
                        Err(Error::DegenerateCovariance(i))
                    }
                })
                .collect(),
            Covariance::Full(ms) => ms
                .iter()
                .enumerate()
                .map(|(i, rows)| {
                    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                        return Err(Error::Config(format!("covariance {i} is not {d}x{d}")));
                    }
                    let m = DMatrix::from_fn(d, d, |r, c| rows[r][c]);
                    m.cholesky().map(|ch| ch.l()).ok_or(Error::DegenerateCovariance(i))
                })
                .collect(),
        }
    }
}

/// A generated dataset plus the ground truth the dataset itself hides.
#[derive(Debug, Clone)]
pub struct GeneratedFixture {
    pub dataset: EmbeddingDataset,
    /// Class each record was actually drawn from.
    pub true_class: BTreeMap<String, u16>,
}

impl GeneratedFixture {
    pub fn is_mislabeled(&self, record: &SampleRecord) -> bool {
        self.true_class.get(&record.sample_id) != Some(&record.class_label)
    }

    pub fn mislabeled_ids(&self) -> impl Iterator<Item = &str> {
        self.dataset
            .records
            .iter()
            .filter(|r| self.is_mislabeled(r))
            .map(|r| r.sample_id.as_str())
    }
}

fn draw(mean: &[f64], factor: &DMatrix<f64>, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let z = DVector::from_fn(mean.len(), |_, _| rng.sample::<f64, _>(StandardNormal));
    let x = factor * z;
    mean.iter().zip(x.iter()).map(|(m, v)| m + v).collect()
}

fn softmax_probs(features: &[f64], means: &[Vec<f64>], temperature: f64) -> Vec<f32> {
    let logits: Vec<f64> = means
        .iter()
        .map(|m| -features.iter().zip(m).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / temperature)
        .collect();
    let top = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|l| (l - top).exp()).collect();
    let z: f64 = exps.iter().sum();
    exps.iter().map(|e| (e / z) as f32).collect()
}

fn split_layers(flat: &[f64], layers: &[LayerShape]) -> Vec<Vec<f32>> {
    let mut out = Vec::with_capacity(layers.len());
    let mut at = 0;
    for l in layers {
        out.push(flat[at..at + l.len()].iter().map(|&v| v as f32).collect());
        at += l.len();
    }
    out
}

/// Generates the dataset described by `spec`, reproducibly from its seed.
///
/// Records are ordered real-then-synthetic, by class. Ids are
/// `real-c{class}-{j}` and `syn-c{class}-{j}`, zero padded. Which synthetic
/// samples are mislabeled is shuffled, so ids carry no hint of it.
pub fn gen_fixture(spec: &FixtureSpec) -> Result<GeneratedFixture> {
    spec.validate()?;
    let factors = spec.factors()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let classes = spec.num_classes as usize;
    let mut records = Vec::new();
    let mut true_class = BTreeMap::new();

    let mut emit = |rng: &mut ChaCha8Rng, id: String, label: usize, source: usize, origin: Origin| {
        let base = draw(&spec.class_means[source], &factors[source], rng);
        let mut probs = Vec::with_capacity(spec.mc_runs as usize);
        let mut activations = Vec::with_capacity(spec.mc_runs as usize);
        for _ in 0..spec.mc_runs {
            let run: Vec<f64> = base
                .iter()
                .map(|&v| v + spec.mc_jitter * rng.sample::<f64, _>(StandardNormal))
                .collect();
            probs.push(softmax_probs(&run, &spec.class_means, spec.temperature));
            activations.push(split_layers(&run, &spec.layers));
        }
        true_class.insert(id.clone(), source as u16);
        records.push(SampleRecord {
            sample_id: id,
            class_label: label as u16,
            origin,
            probs,
            activations,
        });
    };

    for class in 0..classes {
        for j in 0..spec.real_per_class[class] {
            emit(&mut rng, format!("real-c{class:03}-{j:06}"), class, class, Origin::Real);
        }
    }
    for class in 0..classes {
        let n = spec.synthetic_per_class[class];
        let flipped = (spec.mislabel_fraction * n as f64).round() as usize;
        let mut wrong = vec![false; n];
        wrong[..flipped].iter_mut().for_each(|w| *w = true);
        wrong.shuffle(&mut rng);
        for (j, &is_wrong) in wrong.iter().enumerate() {
            let source = if is_wrong {
                let other = rng.random_range(0..classes - 1);
                if other >= class {
                    other + 1
                } else {
                    other
                }
            } else {
                class
            };
            emit(&mut rng, format!("syn-c{class:03}-{j:06}"), class, source, Origin::Synthetic);
        }
    }

    let dataset = EmbeddingDataset::new(spec.num_classes, spec.mc_runs, spec.layers.clone(), records)?;
    Ok(GeneratedFixture { dataset, true_class })
}

/// `n` draws from `N(mean, std^2 I)`.
pub fn sample_gaussian(mean: &[f64], std: f64, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            mean.iter()
                .map(|&m| m + std * rng.sample::<f64, _>(StandardNormal))
                .collect()
        })
        .collect()
}
