// Naturals as lattice points: prime factorizations, exponent vectors and
// the members of each preset subset.
//
//     cargo run --example exponent_vectors

use numtope::numsys::{exponent_vector, factorize, prime_count, SubsetKind, SubsetSpec};

pub fn run_example() -> numtope::Result<()> {
    let n = 12;
    let dim = prime_count(n)?;
    println!("P({n}) lives in dimension pi({n}) = {dim}");
    for m in 1..=n {
        let v = exponent_vector(m, dim)?;
        let factors: Vec<String> = factorize(m).iter().map(|(p, e)| format!("{p}^{e}")).collect();
        println!("{m:>3} = {:<12} -> {v}", if factors.is_empty() { "1".into() } else { factors.join(" ") });
        assert_eq!(v.reconstruct(&[2, 3, 5, 7, 11]), m);
    }
    for kind in SubsetKind::PRESETS {
        let members = SubsetSpec::preset(kind).members_up_to(30)?;
        println!("{kind:<22} {members:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> numtope::Result<()> {
    run_example()
}
