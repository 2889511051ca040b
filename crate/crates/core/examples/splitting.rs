//! Splitting a thick set into two thick parts, by alternating intervals or
//! by greedy carving.

use lsc::constructions::{split_by_filtration, split_thick, FsExtractor, IntervalExtractor};
use lsc::{Result, ScheduleSpec, SetExpr};

fn main() -> Result<()> {
    let r = split_thick(&ScheduleSpec::geometric(10, 1), 4, 1_000_000_000, 100_000)?;
    println!("A1 = {}\nA2 = {}", r.a1, r.a2);
    println!("partition on 1..=10^5: {}", r.is_partition());
    println!("A1: {}\nA2: {}", r.cert1.certificate(), r.cert2.certificate());

    let r = split_by_filtration(&SetExpr::Full, &IntervalExtractor, 10, 1000)?;
    for c in &r.carves {
        println!("round {:2} -> A{}: {:?}", c.round, c.part, c.members);
    }
    let r = split_by_filtration(&SetExpr::Full, &FsExtractor, 3, 200)?;
    println!("finite-sums carving, round 3: {:?}", r.carves[2].members);

    match split_by_filtration(&SetExpr::residue(0, 2)?, &IntervalExtractor, 2, 1000) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("evens: {e}"),
    }
    Ok(())
}
