// A checkpointed sweep: the second call finds every value in the checkpoint
// and recomputes nothing.
//
//     cargo run --release --example sweep_with_checkpoint

use numtope::cli::{csv_row, sweep, CSV_HEADER};
use numtope::metrics::MetricsConfig;
use numtope::numsys::SubsetSpec;

pub fn run_example() -> numtope::Result<()> {
    let dir = std::env::temp_dir().join(format!("numtope-sweep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let checkpoint = dir.join("sweep.jsonl");
    let cfg = MetricsConfig::default();
    let first = sweep(&SubsetSpec::naturals(), 1, 20, 4, Some(&checkpoint), &cfg)?;
    let second = sweep(&SubsetSpec::naturals(), 1, 20, 1, Some(&checkpoint), &cfg)?;
    assert_eq!(first, second);
    println!("{CSV_HEADER}");
    for r in second.values() {
        println!("{}", csv_row(r));
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(())
}

#[allow(dead_code)]
fn main() -> numtope::Result<()> {
    run_example()
}
