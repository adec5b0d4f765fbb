//! Games where the row player has few strategies over a small set of values.
//!
//! Run with `cargo run --example unbalanced_search`.

use nash_fpt::generators::gen_unbalanced;
use nash_fpt::rational::format_rational;
use nash_fpt::stats::SolveStats;
use nash_fpt::unbalanced::{column_classes, guess_bound, unbalanced_solve_with_stats, UnbalancedInstance};
use nash_fpt::verify_equilibrium;

fn main() -> nash_fpt::Result<()> {
    let game = gen_unbalanced(3, 40, 2, 11)?;
    let classes = column_classes(&game);
    println!(
        "3 x 40 game, {} distinct row-player columns (at most 2^3 = 8)",
        classes.len()
    );

    let inst = UnbalancedInstance::new(game.clone())?;
    let mut stats = SolveStats::default();
    let p = unbalanced_solve_with_stats(&inst, &mut stats);
    assert!(verify_equilibrium(&game, &p)?.is_equilibrium());

    let s = p.support();
    println!("row support {:?}, column support {:?}", s.rows, s.cols);
    for &j in &s.cols {
        println!("  column {j} (class {}) weight {}", classes.class_of[j], format_rational(&p.y()[j]));
    }
    println!(
        "{} support guesses, bound {}",
        stats.candidates,
        guess_bound(inst.k(), classes.len())
    );
    Ok(())
}
