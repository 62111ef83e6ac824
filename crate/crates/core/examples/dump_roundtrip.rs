//! Write a fixture to the binary dump format, stream it back, and show what
//! validation reports for a damaged copy.

use ssaug::fixtures::{gen_fixture, FixtureSpec};
use ssaug::store::{read_dataset, write_dataset, DatasetReader, Origin};

fn main() -> ssaug::Result<()> {
    let fx = gen_fixture(&FixtureSpec::separable_two_class(0))?;
    let ds = &fx.dataset;

    let mut bytes = Vec::new();
    let written = write_dataset(&ds.header, &ds.records, &mut bytes)?;
    println!("wrote {} records, {written} bytes", ds.records.len());

    let reader = DatasetReader::new(&bytes[..])?;
    let h = reader.header().clone();
    println!(
        "header: {} classes, {} MC runs, layers {:?}",
        h.num_classes,
        h.mc_runs,
        h.layers.iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    let mut synthetic = 0;
    for record in reader {
        if record?.origin == Origin::Synthetic {
            synthetic += 1;
        }
    }
    println!("streamed: {synthetic} synthetic records");

    let (_, records) = read_dataset(&bytes[..])?;
    let mut again = Vec::new();
    write_dataset(&h, &records, &mut again)?;
    println!("rewrite byte-identical: {}", again == bytes);

    let cut = &bytes[..bytes.len() - 10];
    match read_dataset(cut) {
        Ok(_) => println!("truncated copy unexpectedly parsed"),
        Err(e) => println!("truncated copy: {e}"),
    }
    Ok(())
}
