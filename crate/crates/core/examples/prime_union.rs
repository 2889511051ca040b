//! Prime residue classes on separated thick blocks: no two-element finite
//! sums, yet every residue probe is hit by S - F for a small F.

use lsc::certify;
use lsc::constructions::{crt_cover_witness, prime_residue_union, PrimeResidueParams};
use lsc::{IndexBase, Result, SetExpr, WordSpec};

fn main() -> Result<()> {
    let primes = vec![2, 3, 5, 7];
    let params = PrimeResidueParams::separated(primes.clone(), vec![1, 1, 1, 1])?;
    let a = prime_residue_union(&params, 4)?;
    println!("A = {a}");
    println!("IP_2 below 10^4: {:?}", certify::ip_witness(&a, 2, 10_000)?);

    let probes = [
        SetExpr::residue(0, 2)?,
        SetExpr::residue(1, 3)?,
        SetExpr::returns(WordSpec::fibonacci(), "a", IndexBase::Zero)?,
    ];
    for s in &probes {
        let r = certify::dt_check(&a, s, 2000, 3, 100_000)?;
        println!("probe {s}: F={:?} {}", r.f, r.verdict.label());
    }

    let n = crt_cover_witness(&primes, &[0, 1, 2, 3])?;
    println!("least n with n+i = a_i mod p_i: {n}");
    for (i, p) in primes.iter().enumerate() {
        println!("  ({n} + {}) mod {p} = {}", i + 1, (n + i as u64 + 1) % p);
    }
    Ok(())
}
