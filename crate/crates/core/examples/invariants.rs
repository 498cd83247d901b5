// All combinatorial invariants of one polytope: skeleton, diameter,
// f-vector, facet width, plus the full record as JSON.
//
//     cargo run --example invariants -- 17

use numtope::metrics::{diameter, f_vector, facet_width, metrics_record, skeleton, MetricsConfig, DEFAULT_FACE_LIMIT};
use numtope::numsys::SubsetSpec;
use numtope::sequence::natural_polytope;

pub fn run_example_for(n: u64) -> numtope::Result<()> {
    let p = natural_polytope(n)?;
    let edges = skeleton(&p);
    println!("P({n}): {} vertices, {} edges, {} facets", p.n_vertices(), edges.len(), p.n_facets());
    if p.dim() > 0 {
        println!("diameter {}", diameter(&edges, p.n_vertices())?);
        println!("facet width {}", facet_width(&p)?);
        let f = f_vector(&p, DEFAULT_FACE_LIMIT)?;
        println!("f-vector {:?}, Euler sum {}", f.0, f.euler_sum());
    }
    let cfg = MetricsConfig { ehrhart: true, faces: true, ..MetricsConfig::default() };
    let rec = metrics_record(&SubsetSpec::naturals(), n, &cfg)?;
    println!("{}", serde_json::to_string_pretty(&rec).expect("records serialize"));
    Ok(())
}

pub fn run_example() -> numtope::Result<()> {
    run_example_for(17)
}

#[allow(dead_code)]
fn main() -> numtope::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(17);
    run_example_for(n)
}
