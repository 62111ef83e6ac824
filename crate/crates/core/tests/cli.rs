mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ssaug::fixtures::{gen_fixture, FixtureSpec};
use ssaug::store::{write_dataset, SelectionManifest};
use tempfile::TempDir;

fn ssaug(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ssaug")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = ssaug(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write_spec(dir: &Path, spec: &FixtureSpec) -> PathBuf {
    let path = dir.join("spec.toml");
    fs::write(&path, toml::to_string(spec).unwrap()).unwrap();
    path
}

struct Pipeline {
    dir: TempDir,
}

impl Pipeline {
    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    /// gen-fixture, centroids, select and merge with the given extra flags
    /// on `select`; returns the manifest bytes.
    fn run(seed: u64, select_flags: &[&str]) -> (Pipeline, Vec<u8>) {
        let pl = Pipeline { dir: TempDir::new().unwrap() };
        let spec = write_spec(pl.dir.path(), &FixtureSpec::separable_two_class(seed));
        let dump = pl.path("fx.ssae");
        let cents = pl.path("fx.ssac");
        let manifest = pl.path("manifest.jsonl");
        ok(&["gen-fixture", "--spec", p(&spec), "--out", p(&dump), "--truth", p(&pl.path("truth.tsv"))]);
        ok(&["centroids", "--real", p(&dump), "--out", p(&cents)]);
        let mut args = vec![
            "select", "--real", p(&dump), "--synthetic", p(&dump), "--centroids", p(&cents), "--out", p(&manifest),
        ];
        args.extend_from_slice(select_flags);
        ok(&args);
        let bytes = fs::read(&manifest).unwrap();
        (pl, bytes)
    }
}

#[test]
fn full_pipeline_then_merge() {
    let (pl, bytes) = Pipeline::run(7, &[]);
    let dump = pl.path("fx.ssae");
    let line = ok(&["validate", "--dump", p(&dump)]);
    assert!(line.starts_with("ok: 300 records (100 real, 200 synthetic), 2 classes, 5 MC runs"), "{line}");

    let manifest = SelectionManifest::read_jsonl(&bytes[..]).unwrap();
    manifest.validate().unwrap();
    assert_eq!(manifest.selected().count(), 50);

    let train = pl.path("train.tsv");
    let lines: String = (0..100).map(|j| format!("real-{j:03}\t{}\n", j % 2)).collect();
    fs::write(&train, &lines).unwrap();
    let merged = pl.path("merged.tsv");
    ok(&["merge", "--train", p(&train), "--manifest", p(&pl.path("manifest.jsonl")), "--out", p(&merged)]);
    let text = fs::read_to_string(&merged).unwrap();
    assert!(text.starts_with(&lines));
    let added: Vec<&str> = text[lines.len()..].lines().collect();
    assert_eq!(added.len(), 50);
    for e in manifest.selected() {
        assert!(added.contains(&format!("{}\t{}", e.sample_id, e.class_label).as_str()));
    }

    let scores = ok(&["score", "--dump", p(&dump), "--centroids", p(&pl.path("fx.ssac"))]);
    assert_eq!(scores.lines().count(), 200);
}

#[test]
fn rerun_is_byte_identical_and_independent_of_jobs() {
    let (_a, one) = Pipeline::run(3, &["--jobs", "1"]);
    let (_b, again) = Pipeline::run(3, &["--jobs", "1"]);
    let (_c, eight) = Pipeline::run(3, &["--jobs", "8"]);
    assert_eq!(one, again);
    assert_eq!(one, eight);
}

#[test]
fn validate_names_the_corrupt_record() {
    let dir = TempDir::new().unwrap();
    let fx = gen_fixture(&FixtureSpec::separable_two_class(1)).unwrap();
    let mut bytes = Vec::new();
    write_dataset(&fx.dataset.header, &fx.dataset.records, &mut bytes).unwrap();
    let id = b"real-c000-000003";
    let at = bytes.windows(id.len()).position(|w| w == id).unwrap() + id.len() + 3;
    bytes[at..at + 4].copy_from_slice(&(-0.5f32).to_le_bytes());
    let dump = dir.path().join("bad.ssae");
    fs::write(&dump, &bytes).unwrap();

    let out = ssaug(&["validate", "--dump", p(&dump)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error[") && err.contains("#3") && err.contains("real-c000-000003"), "{err}");

    fs::write(&dump, &bytes[..bytes.len() - 7]).unwrap();
    let out = ssaug(&["validate", "--dump", p(&dump)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn select_model_skips_the_outlier_dip() {
    let dir = TempDir::new().unwrap();
    let curve = dir.path().join("curve.tsv");
    let mut text = String::from("epoch\traw_fid\n");
    for (t, v) in common::outlier_dip_curve() {
        text += &format!("{t}\t{v}\n");
    }
    fs::write(&curve, text).unwrap();
    assert_eq!(ok(&["select-model", "--curve", p(&curve)]).trim(), "15");
    assert_eq!(ok(&["select-model", "--curve", p(&curve), "--alpha", "0.01"]).trim(), "5");
}

#[test]
fn fid_curve_over_epoch_dumps() {
    let dir = TempDir::new().unwrap();
    let epochs = dir.path().join("epochs");
    fs::create_dir(&epochs).unwrap();
    let base = FixtureSpec::separable_two_class(0);
    let reference = dir.path().join("real.ssae");
    let fx = gen_fixture(&base).unwrap();
    write_dataset(&fx.dataset.header, &fx.dataset.records, fs::File::create(&reference).unwrap()).unwrap();
    // synthetic means drift towards the real ones and then away again
    for (epoch, shift) in [(1u32, 4.0), (2, 2.0), (3, 0.5), (4, 1.0), (5, 3.0)] {
        let mut spec = base.clone();
        spec.seed = 100 + epoch as u64;
        spec.mislabel_fraction = 0.0;
        for m in &mut spec.class_means {
            m[7] += shift;
        }
        let fx = gen_fixture(&spec).unwrap();
        let path = epochs.join(format!("gen_epoch{epoch}.ssae"));
        write_dataset(&fx.dataset.header, &fx.dataset.records, fs::File::create(path).unwrap()).unwrap();
    }
    fs::write(epochs.join("notes.txt"), "ignored").unwrap();

    let table = dir.path().join("curve.tsv");
    ok(&["fid-curve", "--reference", p(&reference), "--dir", p(&epochs), "--out", p(&table)]);
    let text = fs::read_to_string(&table).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("epoch"))
        .map(|l| l.split('\t').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    let raw: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    assert!(raw[0] > raw[1] && raw[1] > raw[2] && raw[2] < raw[3] && raw[3] < raw[4], "{raw:?}");
    let smoothed = common::ema_reference(&raw, 0.3);
    for (row, s) in rows.iter().zip(&smoothed) {
        assert!((row[2] - s).abs() < 1e-9);
    }
    let want = rows[common::argmin_first(&smoothed)][0] as u32;
    assert_eq!(ok(&["select-model", "--curve", p(&table)]).trim(), want.to_string());

    let stats = dir.path().join("real.json");
    ok(&["fit-stats", "--dump", p(&reference), "--origin", "real", "--out", p(&stats)]);
    let via_stats = ok(&["fid-curve", "--reference", p(&stats), "--dir", p(&epochs)]);
    assert_eq!(via_stats, text);
}

#[test]
fn help_lists_defaults() {
    let help = ok(&["select", "--help"]);
    for needle in ["--ratio", "[default: 0.5]", "[default: 4]", "[default: 5]"] {
        assert!(help.contains(needle), "missing {needle}:\n{help}");
    }
    assert!(ok(&["select-model", "--help"]).contains("[default: 0.3]"));
    assert!(ok(&["centroids", "--help"]).contains("[default: 1]"));
}

#[test]
fn config_file_supplies_paths_and_flags_override() {
    let (pl, default_bytes) = Pipeline::run(5, &[]);
    let cfg = pl.path("ssaug.toml");
    let manifest = pl.path("from_config.jsonl");
    fs::write(
        &cfg,
        format!(
            "ratio = 0.2\n[paths]\nreal_dump = {:?}\nsynthetic_dump = {:?}\ncentroids = {:?}\nmanifest = {:?}\n",
            p(&pl.path("fx.ssae")),
            p(&pl.path("fx.ssae")),
            p(&pl.path("fx.ssac")),
            p(&manifest)
        ),
    )
    .unwrap();
    ok(&["--config", p(&cfg), "select"]);
    let m = SelectionManifest::read_jsonl(&fs::read(&manifest).unwrap()[..]).unwrap();
    assert_eq!(m.config.ratio, 0.2);
    assert_eq!(m.selected().count(), 20);

    ok(&["--config", p(&cfg), "select", "--ratio", "0.5"]);
    assert_eq!(fs::read(&manifest).unwrap(), default_bytes);

    fs::write(&cfg, "ratoi = 0.2\n").unwrap();
    let out = ssaug(&["--config", p(&cfg), "select"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[config]"));
}

#[test]
fn usage_error_exit_code() {
    let out = ssaug(&["select", "--ratio", "abc"]);
    assert_eq!(out.status.code(), Some(2));
}
