//! Few payoff values: search by the payoff pattern at the supports.
//!
//! Run with `cargo run --example pattern_search`.

use nash_fpt::generators::gen_winlose;
use nash_fpt::pattern::{certify_pattern, enumerate_patterns, pattern_count, pattern_solve_with_stats, ValueAlphabet};
use nash_fpt::rational::int;
use nash_fpt::stats::SolveStats;
use nash_fpt::verify_equilibrium;

fn main() -> nash_fpt::Result<()> {
    let alphabet = ValueAlphabet::new(vec![int(0), int(1)]);
    for k in 1..=2 {
        let certified = enumerate_patterns(&alphabet, k, k)
            .filter(|p| certify_pattern(p, &[], &[]).is_some())
            .count();
        println!(
            "{k}x{k} win-lose patterns: {}, {certified} have a fully mixed equilibrium",
            pattern_count(&alphabet, k, k)
        );
    }

    for seed in 0..5 {
        let game = gen_winlose(6, 0.4, seed)?;
        let mut stats = SolveStats::default();
        match pattern_solve_with_stats(&game, 2, &mut stats) {
            Some(p) => {
                assert!(verify_equilibrium(&game, &p)?.is_equilibrium());
                println!("seed {seed}: supports {:?}, {} patterns tried", p.support().sizes(), stats.candidates);
            }
            None => println!("seed {seed}: none with supports up to 2"),
        }
    }
    Ok(())
}
