//! Finite-set certificates relating a set to shifts of another.
//!
//! `ds`/`dcs` check that an intersection of shifts of B is syndetic, `dt`
//! searches a finite F in A with S - F thick, and `pr` searches a finite F
//! with S \ (S - F) sparse.

use lsc::certify::{self, SearchConfig};
use lsc::{IndexBase, Result, SetExpr, WordSpec};

fn main() -> Result<()> {
    let fib_a = SetExpr::returns(WordSpec::fibonacci(), "a", IndexBase::Zero)?;
    println!("ds  ret(fib,a), F={{2,3}}: {:?}", certify::ds_certificate(&fib_a, &[2, 3], 1000)?);
    println!("dcs ret(fib,a), F={{2,3}}: {:?}", certify::dcs_certificate(&fib_a, &[2, 3], 1000)?);

    let cfg = SearchConfig::default().parallel(true);
    let s = SetExpr::residue(0, 3)?;
    let r = certify::dt_check_with(&SetExpr::Full, &s, 10, 4, 10_000, &cfg)?;
    println!("dt full vs res(0,3): F={:?} {} after {} candidates", r.f, r.verdict.label(), r.evaluated);
    println!("  S - F = {}", r.subject.expect("found"));

    let r = certify::dt_check(&SetExpr::residue(0, 2)?, &SetExpr::residue(1, 2)?, 20, 4, 10_000)?;
    println!("dt evens vs odds: {} ({})", r.verdict.label(), r.verdict.certificate());

    let r = certify::pr_check(&SetExpr::Full, &s, 10, 1000, None)?;
    println!("pr full vs res(0,3): F={:?} {}", r.f, r.verdict.certificate());
    Ok(())
}
