// Builds one polytope exactly and prints its vertices, facet inequalities
// and triangulation.
//
//     cargo run --example build_polytope -- 9

use numtope::hull::build_hull;
use numtope::numsys::{member_points, SubsetSpec};

pub fn run_example_for(n: u64) -> numtope::Result<()> {
    let cloud = member_points(&SubsetSpec::naturals(), n)?;
    let p = build_hull(&cloud)?;
    println!("P({n}): dimension {}, primes {:?}", p.dim(), cloud.basis);
    for i in p.vertex_indices() {
        println!("  vertex {:>3} at {:?}", p.labels()[i], p.lattice_points()[i]);
    }
    for f in p.facets() {
        let on: Vec<u64> = f.incident_points.iter().map(|&i| p.labels()[i]).collect();
        println!("  facet {:?} . x <= {}   contains {on:?}", f.normal, f.offset);
    }
    for s in p.triangulation() {
        let labels: Vec<u64> = s.vertices.iter().map(|&i| p.labels()[i]).collect();
        println!("  cell {labels:?} normalized volume {}", s.normalized_volume);
    }
    println!("  normalized volume {}", p.normalized_volume());
    p.audit()
}

pub fn run_example() -> numtope::Result<()> {
    run_example_for(9)
}

#[allow(dead_code)]
fn main() -> numtope::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(9);
    run_example_for(n)
}
