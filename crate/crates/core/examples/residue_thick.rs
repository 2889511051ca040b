//! A union of residue classes, each restricted to its own thick set, meets
//! every residue class in a set whose finite shift union is thick.

use lsc::certify;
use lsc::constructions::{residue_thick_f_witness, residue_thick_union};
use lsc::{Result, ScheduleSpec, SetExpr};

fn main() -> Result<()> {
    for k in [2u64, 3] {
        let schedules: Vec<ScheduleSpec> = (1..=k).map(|c| ScheduleSpec::geometric(4, c)).collect();
        let a = residue_thick_union(k, &schedules)?;
        let f = residue_thick_f_witness(k, &schedules, k + 1)?;
        println!("k={k}: A = {a}");
        println!("  F = {f:?}");
        for r in 0..k {
            let s = SetExpr::residue(r, k)?;
            let v = certify::dt_validate(&a, &s, &f, 4, 1_000_000)?;
            println!("  S = {s}: S - F thick to level 4: {} {}", v.label(), v.certificate());
        }
    }
    Ok(())
}
