//! Polynomial patterns {x, y, x + p_1(y), ...} and prefixes containing long intervals.

use lsc::certify::{self, Poly};
use lsc::{Result, ScheduleSpec, SetExpr};
use num_rational::Ratio;

fn main() -> Result<()> {
    let polys = [Poly::from_integers(&[0, 1]), Poly::from_integers(&[0, 1, 1])];
    let v = certify::brauer_search(&SetExpr::residue(0, 3)?, &polys, 100)?;
    println!("res(0,3) with y and y^2+y: {}", v.certificate());

    let v = certify::brauer_search(&SetExpr::residue(1, 2)?, &[Poly::from_integers(&[0, 1])], 1000)?;
    println!("odds with y: {} {}", v.label(), v.certificate());

    // y(y+1)/2 is integer valued with rational coefficients
    let tri = Poly::new([Ratio::new(0, 1), Ratio::new(1, 2), Ratio::new(1, 2)]);
    let v = certify::brauer_search(&SetExpr::residue(0, 5)?, std::slice::from_ref(&tri), 200)?;
    println!("res(0,5) with {tri}: {}", v.certificate());

    let h = SetExpr::thick(ScheduleSpec::geometric(10, 1))?;
    for n in [2, 4, 6] {
        println!("prefix of thick(geom) with an interval of length {n}: {}", certify::compactness_prefix(n, &h, 10_000_000)?.certificate());
    }
    Ok(())
}
