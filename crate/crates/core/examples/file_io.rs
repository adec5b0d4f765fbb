//! Games and profiles on disk, with rational entries kept exact.
//!
//! Run with `cargo run --example file_io`.

use nash_fpt::generators::{gen_sparse, sparse_values};
use nash_fpt::io::{read_game, read_profile, write_game, write_profile, Metadata, ProfileDocument};
use nash_fpt::{run_solver, verify_equilibrium, Algorithm};

fn main() -> nash_fpt::Result<()> {
    let dir = std::env::temp_dir().join("nash-fpt-example");
    std::fs::create_dir_all(&dir)?;
    let game_path = dir.join("game.json");
    let profile_path = dir.join("profile.json");

    let game = gen_sparse(8, 2, &sparse_values(), 21)?;
    let meta = Metadata {
        family: Some("sparse".into()),
        seed: Some(21),
        params: serde_json::json!({"n": 8, "l": 2}),
    };
    write_game(&game_path, &game, Some(meta))?;
    let back = read_game(&game_path)?;
    assert_eq!(back, game);

    let out = run_solver(Algorithm::Sparse, &back, 2)?;
    let Some(p) = out.profile else {
        println!("no equilibrium with supports up to 2");
        return Ok(());
    };
    let doc = ProfileDocument::new(&p, "sparse", serde_json::json!({"k": 2}), true);
    write_profile(&profile_path, &doc)?;

    let q = read_profile(&profile_path)?;
    assert!(verify_equilibrium(&game, &q)?.is_equilibrium());
    println!("{}", std::fs::read_to_string(&profile_path)?);
    Ok(())
}
