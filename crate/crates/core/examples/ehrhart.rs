// Lattice points in dilates of P(N) and the h*-vector solved from them.
//
//     cargo run --example ehrhart -- 25

use numtope::metrics::{ehrhart_count, h_star, interior_lattice_count, DEFAULT_ENUMERATION_DIM_LIMIT};
use numtope::sequence::natural_polytope;

pub fn run_example_for(n: u64) -> numtope::Result<()> {
    let p = natural_polytope(n)?;
    let limit = DEFAULT_ENUMERATION_DIM_LIMIT;
    for t in 0..=4 {
        println!("L_P({n})({t}) = {}", ehrhart_count(&p, t, limit)?);
    }
    let h = h_star(&p, limit)?;
    println!("h* = {:?} (degree {}, sum {} = Vol {})", h.trimmed(), h.degree(), h.sum(), p.normalized_volume());
    println!("interior lattice points: {}", interior_lattice_count(&p)?);
    Ok(())
}

pub fn run_example() -> numtope::Result<()> {
    run_example_for(25)
}

#[allow(dead_code)]
fn main() -> numtope::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(25);
    run_example_for(n)
}
