//! A table of thick sets whose blocks drift apart, and the row sets built from it.

use lsc::constructions::{separated_rows, separated_thick_family};
use lsc::Result;

fn main() -> Result<()> {
    let family = separated_thick_family(2, 3, 10)?;
    for ((i, j), s) in &family.schedules {
        let first: Vec<String> = s.intervals().take(3).map(|iv| iv.map(|iv| iv.to_string())).collect::<Result<_>>()?;
        println!("T({i},{j}) = {s}: {}", first.join(" "));
    }
    for r in family.separation(3, 100_000) {
        println!("d={} required {} realized {:?} holds={}", r.d, r.required, r.realized, r.holds());
    }
    let rows = separated_rows(&family, &[2, 3, 5])?;
    let (w1, w2) = (rows[0].window(100_000)?, rows[1].window(100_000)?);
    println!("B_1 = {}", rows[0]);
    println!("B_2 = {}", rows[1]);
    println!("disjoint on 1..=10^5: {} ({} and {} members)", w1.is_disjoint(&w2), w1.count(), w2.count());
    Ok(())
}
