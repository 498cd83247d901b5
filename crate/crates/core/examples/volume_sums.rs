// Exact partial volume sums over subsets, their digits and ratios to e.
//
//     cargo run --release --example volume_sums

use numtope::arith::decimal_render;
use numtope::constants::{ratio_to_e, stable_digits, volume_sum};
use numtope::numsys::{SubsetKind, SubsetSpec};

pub fn run_example() -> numtope::Result<()> {
    for (kind, upto) in [
        (SubsetKind::Naturals, 60),
        (SubsetKind::OneAndPrimes, 113),
        (SubsetKind::OneEvensOddPrimes, 60),
        (SubsetKind::TwoAndOdds, 60),
        (SubsetKind::Squares, 30 * 30),
    ] {
        let spec = SubsetSpec::preset(kind);
        let s = volume_sum(&spec, upto)?;
        let st = stable_digits(&spec, upto, 12)?;
        println!(
            "{kind:<22} upto {upto:>4}: {} ({} terms), ratio to e {}, {} digits unchanged at {}",
            decimal_render(&s.value, 12),
            s.terms,
            ratio_to_e(&s.value, 12),
            st.stable_digits,
            st.compared_with
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> numtope::Result<()> {
    run_example()
}
