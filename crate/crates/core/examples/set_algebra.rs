//! Building set expressions and evaluating them on windows.

use lsc::setcalc::{self, SetExpr};
use lsc::{Result, ScheduleSpec};

fn main() -> Result<()> {
    let evens = SetExpr::residue(0, 2)?;
    let blocks = SetExpr::thick(ScheduleSpec::geometric(10, 1))?;
    let a = SetExpr::union([SetExpr::inter([evens.clone(), blocks]), SetExpr::finite([3, 7])?]);
    println!("A = {a}");
    println!("A on 1..=120: {:?}", a.window(120)?.members().collect::<Vec<_>>());
    println!("1000 in A: {}, 1001 in A: {}", a.member(1000)?, a.member(1001)?);

    // shifts, dilations and quotients
    let b = SetExpr::residue(1, 3)?.shift_down(4)?;
    println!("(res(1,3) - 4) starts {:?}", b.window(12)?.members().collect::<Vec<_>>());
    let c = SetExpr::residue(0, 3)?.quotient(2)?;
    println!("res(0,3) / 2 starts {:?}", c.window(12)?.members().collect::<Vec<_>>());

    // finite and residue expressions have an exact periodic form
    let e = SetExpr::union([SetExpr::residue(0, 4)?, SetExpr::residue(0, 6)?, SetExpr::finite([1, 5])?]).compl();
    let form = setcalc::eventually_periodic_normalize(&e).expect("periodic tier");
    println!("{e}: preperiod {} period {}", form.preperiod, form.period);

    // S - S on a window, from a horizon of twice its length
    let d = setcalc::difference_set_window(&SetExpr::finite([2, 9, 30])?, &SetExpr::finite([2, 9, 30])?, 40)?;
    println!("differences of {{2,9,30}}: {:?}", d.members().collect::<Vec<_>>());
    Ok(())
}
