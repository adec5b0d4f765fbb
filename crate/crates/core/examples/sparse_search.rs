//! Sparse games: subgraph search against plain support enumeration.
//!
//! Run with `cargo run --release --example sparse_search`.

use std::time::Instant;

use nash_fpt::generators::{gen_sparse, sparse_values};
use nash_fpt::sparse::{sparse_solve_with_stats, SparseInstance};
use nash_fpt::stats::SolveStats;
use nash_fpt::support::{baseline_lp_calls, baseline_solve};
use nash_fpt::verify_equilibrium;

fn main() -> nash_fpt::Result<()> {
    for (n, seed) in [(12, 1), (40, 2), (300, 3)] {
        let game = gen_sparse(n, 3, &sparse_values(), seed)?;
        let inst = SparseInstance::new(game.clone(), 3, 2)?;

        let mut stats = SolveStats::default();
        let start = Instant::now();
        let p = sparse_solve_with_stats(&inst, &mut stats);
        let elapsed = start.elapsed();
        match &p {
            Some(p) => {
                assert!(verify_equilibrium(&game, p)?.is_equilibrium());
                println!(
                    "n={n}: supports {:?} in {elapsed:.2?}, {} LP checks, {} candidates",
                    p.support().sizes(),
                    stats.lp_calls,
                    stats.candidates
                );
            }
            None => println!("n={n}: no equilibrium with supports up to 2 ({elapsed:.2?})"),
        }

        let worst = baseline_lp_calls(n, n, 2);
        if worst <= 100_000 {
            let mut base = SolveStats::default();
            let q = baseline_solve(&game, 2, &mut base);
            assert_eq!(q.is_some(), p.is_some());
            println!("       baseline used {} of at most {worst} checks", base.lp_calls);
        } else {
            println!("       baseline would need up to {worst} checks");
        }
    }
    Ok(())
}
