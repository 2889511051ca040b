//! Words, return sets, recurrence and joint returns of rotations.

use lsc::symbolic::{
    cylinder_cover_check, dyn_thick_from_returns, expand, joint_return, return_set, uniform_recurrence_profile,
    CyclicSystem,
};
use lsc::{certify, IndexBase, Result, SetExpr, WordSpec};

fn main() -> Result<()> {
    let fib = WordSpec::fibonacci();
    let prefix = expand(&fib, 10_000)?;
    println!("fib starts {}", expand(&fib, 34)?);
    println!("contains bb: {}", prefix.contains_factor(b"bb"));

    let (expr, w) = return_set(&fib, "a", 10_000, IndexBase::Zero)?;
    println!("{expr}: {} returns, max gap {:?}", w.count(), w.max_gap());

    let p = uniform_recurrence_profile(&fib, 5, 10_000)?;
    println!("W(n) for n=1..5: {:?} monotone={}", p.w, p.is_monotone());
    println!("per-letter bounds: {:?}", p.per_factor[&1]);

    let tm = WordSpec::thue_morse();
    println!("thue-morse starts {}", expand(&tm, 32)?);
    println!("sturmian [1,2] starts {}", expand(&WordSpec::Sturmian { terms: vec![1, 2] }, 30)?);

    let systems = [CyclicSystem::new(2, 0, [1])?, CyclicSystem::new(3, 0, [2])?];
    let j = joint_return(&systems, 600)?;
    println!("joint return of rotations mod 2 and 3: {} gap {} (exact {})", j.expr, j.gap, j.exact_gap);

    let d = dyn_thick_from_returns(&[expr.clone(), SetExpr::residue(0, 3)?], &[SetExpr::Full, SetExpr::residue(1, 2)?])?;
    println!("dynamically thick set: {}", d.expr);
    println!("  syndetic: {}", certify::syndetic_gap(&d.expr, 1000)?.label());

    println!("cover fib by a,ba at n=3: {:?}", cylinder_cover_check(&fib, &["a", "ba"], 3, 1000)?);
    println!("cover fib by aa at n=2: {:?}", cylinder_cover_check(&fib, &["aa"], 2, 1000)?);
    Ok(())
}
