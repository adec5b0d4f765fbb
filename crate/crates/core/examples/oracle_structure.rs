//! The brute-force oracle and the structure of minimal equilibria.
//!
//! Run with `cargo run --example oracle_structure`.

use nash_fpt::generators::gen_sparse;
use nash_fpt::oracle::{check_structure, oracle_find, oracle_minimal};
use nash_fpt::rational::int;

fn main() -> nash_fpt::Result<()> {
    let game = gen_sparse(7, 2, &[int(1), int(2)], 5)?;
    let hits = oracle_find(&game, 3);
    let minimal = oracle_minimal(&game, 3);
    println!("{} equilibria with supports up to 3, {} minimal", hits.len(), minimal.len());

    let report = check_structure(&game, 3);
    for e in &report.entries {
        println!(
            "rows {:?} cols {:?}: extended support has {} component(s), block {:?}, payoffs {} / {}",
            e.hit.support.rows,
            e.hit.support.cols,
            e.extended_components,
            e.case,
            e.row_payoff,
            e.col_payoff
        );
    }
    println!("all structural checks hold: {}", report.all_hold());
    Ok(())
}
