// Compares computed records with the embedded reference tables.
//
//     cargo run --release --example reference_check

use numtope::metrics::{metrics_record, MetricsConfig};
use numtope::numsys::SubsetSpec;
use numtope::refdata::{compare, load_reference, TableId, VerifySummary};

pub fn run_example() -> numtope::Result<()> {
    let cfg = MetricsConfig { ehrhart: true, faces: true, ..MetricsConfig::default() };
    let tables: Vec<_> = [TableId::AppendixA, TableId::AppendixB, TableId::Table3_1]
        .into_iter()
        .map(load_reference)
        .collect::<numtope::Result<_>>()?;
    let mut reports = Vec::new();
    for n in 1..=24 {
        let rec = metrics_record(&SubsetSpec::naturals(), n, &cfg)?;
        for t in &tables {
            reports.push(compare(&rec, t)?);
        }
    }
    for r in &reports {
        for m in r.mismatches() {
            println!("{} N={} {}: expected {} got {}", r.table, r.n, m.field, m.expected, m.computed);
        }
    }
    let s = VerifySummary::of(&reports);
    println!("{} comparisons, {} fields, {} mismatches", s.rows, s.fields_checked, s.mismatches);
    for (why, count) in &s.skipped {
        println!("skipped {why} ({count})");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> numtope::Result<()> {
    run_example()
}
