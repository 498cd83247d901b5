// Grows P(N) one natural at a time. At a prime the polytope becomes a
// pyramid over its predecessor, so the normalized volume is unchanged while
// the Euclidean volume shrinks by the new dimension.
//
//     cargo run --example incremental_growth

use numtope::metrics::{euclidean_volume, normalized_volume};
use numtope::numsys::SubsetSpec;
use numtope::sequence::PolytopeSequence;

pub fn run_example() -> numtope::Result<()> {
    let mut seq = PolytopeSequence::new(SubsetSpec::naturals());
    let mut last_vol = None;
    seq.advance_to(40, |m, p| {
        let grew = last_vol.is_some_and(|d| d < p.dim());
        println!(
            "{m:>3}  dim {:>2}  vertices {:>3}  facets {:>3}  Vol {:>5}  vol {}{}",
            p.dim(),
            p.n_vertices(),
            p.n_facets(),
            normalized_volume(p),
            euclidean_volume(p),
            if grew { "   <- pyramid" } else { "" }
        );
        last_vol = Some(p.dim());
        Ok(())
    })?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> numtope::Result<()> {
    run_example()
}
