//! Syndetic, thick, piecewise syndetic and IP certificates.

use lsc::certify;
use lsc::{Result, ScheduleSpec, SetExpr};

fn main() -> Result<()> {
    let sets = [
        ("res(1,3)", SetExpr::residue(1, 3)?),
        ("evens outside {2..=20}", SetExpr::inter([SetExpr::residue(0, 2)?, SetExpr::finite(2..=20)?.compl()])),
        ("thick(geom b=10 c=1)", SetExpr::thick(ScheduleSpec::geometric(10, 1))?),
        ("evens in thick(geom)", SetExpr::inter([SetExpr::residue(0, 2)?, SetExpr::thick(ScheduleSpec::geometric(10, 1))?])),
    ];
    for (name, a) in &sets {
        println!("{name}");
        println!("  syndetic:  {:?}", certify::syndetic_gap(a, 10_000)?);
        println!("  thick(4):  {:?}", certify::thick_to_level(a, 4, 1_000_000)?);
        println!("  ps:        {:?}", certify::piecewise_syndetic(a, 4, 4, 1_000_000)?);
    }
    let v = certify::ip_witness(&SetExpr::residue(0, 2)?, 3, 1000)?;
    println!("IP_3 in the evens: {}", v.certificate());
    let v = certify::ip_witness(&SetExpr::residue(1, 2)?, 2, 1000)?;
    println!("IP_2 in the odds: {} ({})", v.label(), v.certificate());
    Ok(())
}
