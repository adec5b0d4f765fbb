//! Exact verification, and a support LP solved by hand.
//!
//! Run with `cargo run --example verify_profile`.

use nash_fpt::game::{best_response_gap, payoffs};
use nash_fpt::rational::{format_rational, frac};
use nash_fpt::support::{solve_on_support, SupportQuery};
use nash_fpt::{verify_equilibrium, BimatrixGame, MixedProfile, Verdict};

fn show(v: &[nash_fpt::Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

fn main() -> nash_fpt::Result<()> {
    // Battle of the sexes.
    let game = BimatrixGame::from_i64(&[&[3, 0], &[0, 2]], &[&[2, 0], &[0, 3]]);

    let guess = MixedProfile::new(vec![frac(1, 2), frac(1, 2)], vec![frac(1, 2), frac(1, 2)])?;
    match verify_equilibrium(&game, &guess)? {
        Verdict::Equilibrium => println!("uniform profile is an equilibrium"),
        Verdict::NotEquilibrium(w) => println!(
            "uniform profile fails: {:?} player gets {} from strategy {} but {} from {}",
            w.player,
            format_rational(&w.played_payoff),
            w.played,
            format_rational(&w.better_payoff),
            w.better
        ),
    }
    let (gr, gc) = best_response_gap(&game, &guess)?;
    println!("deviation gains: row {}, column {}", format_rational(&gr), format_rational(&gc));

    // Ask for an equilibrium whose supports are exactly both strategies.
    let q = SupportQuery::exact(&game, vec![0, 1], vec![0, 1])?;
    let p = solve_on_support(&q).expect("the fully mixed equilibrium exists");
    let (u, v) = payoffs(&game, &p)?;
    println!("x = {}  y = {}", show(p.x()), show(p.y()));
    println!("payoffs {} and {}", format_rational(&u), format_rational(&v));
    assert!(verify_equilibrium(&game, &p)?.is_equilibrium());
    Ok(())
}
