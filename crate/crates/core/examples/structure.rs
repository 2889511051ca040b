//! Decomposing A relative to S: B_S agrees with A on a union of long
//! intervals G_S where A ∩ S is dense, and is everything outside it.

use lsc::constructions::{residue_thick_union, structure_decompose};
use lsc::setcalc::SetExpr;
use lsc::{Result, ScheduleSpec};

fn main() -> Result<()> {
    let a = residue_thick_union(2, &[ScheduleSpec::geometric(4, 1), ScheduleSpec::geometric(4, 2)])?;
    let s = SetExpr::residue(0, 2)?;
    let d = structure_decompose(&a, &s, 10_000, 8, None)?;
    println!("ell = {}", d.ell);
    println!("G_S = {}", d.g_s);
    println!("B_S = {}", d.b_s);
    println!("B_S ∩ S: {} {}", d.cert.label(), d.cert.certificate());
    let g = SetExpr::Thick(d.g_s.clone());
    let lhs = SetExpr::inter([d.b_s.clone(), g.clone()]).window(10_000)?;
    let rhs = SetExpr::inter([a, g]).window(10_000)?;
    println!("B_S and A agree on G_S: {}", lhs == rhs);
    for note in &d.assumptions {
        println!("assumes: {note}");
    }
    Ok(())
}
