//! One entry point over all solvers, used by the CLI and the bench harness.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::game::{verify_equilibrium, BimatrixGame, MixedProfile, Verdict};
use crate::pattern::{pattern_count, pattern_solve_with_stats, ValueAlphabet};
use crate::sparse::{sparse_solve_nonneg_with_stats, sparse_solve_with_stats, SparseInstance};
use crate::stats::SolveStats;
use crate::support::baseline_solve;
use crate::unbalanced::{unbalanced_solve_with_stats, UnbalancedInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Algorithm {
    Baseline,
    Sparse,
    SparseNonneg,
    Unbalanced,
    Pattern,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Baseline,
        Algorithm::Sparse,
        Algorithm::SparseNonneg,
        Algorithm::Unbalanced,
        Algorithm::Pattern,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Baseline => "baseline",
            Algorithm::Sparse => "sparse",
            Algorithm::SparseNonneg => "sparse-nonneg",
            Algorithm::Unbalanced => "unbalanced",
            Algorithm::Pattern => "pattern",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown algorithm {s:?}")))
    }
}

/// Largest row count the unbalanced search accepts (it guesses row subsets).
pub const MAX_UNBALANCED_ROWS: usize = 12;
/// Largest pattern stream the pattern search accepts per support size.
pub const MAX_PATTERNS: u128 = 1 << 20;
/// Largest number of distinct restricted row or column vectors; the extras
/// range over all their subsets.
pub const MAX_PATTERN_VECTORS: u128 = 16;

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub profile: Option<MixedProfile>,
    pub stats: SolveStats,
    pub elapsed: Duration,
}

/// Runs one solver. Input errors (wrong family, parameters too large) are
/// reported before any search starts. `k` is ignored by the unbalanced
/// solver, whose support bound follows from the row count.
pub fn run_solver(algorithm: Algorithm, game: &BimatrixGame, k: usize) -> Result<SolveOutcome> {
    if k == 0 {
        return Err(Error::InvalidParameters("support bound must be at least 1".into()));
    }
    let mut stats = SolveStats::default();
    let start = Instant::now();
    let profile = match algorithm {
        Algorithm::Baseline => baseline_solve(game, k, &mut stats),
        Algorithm::Sparse => {
            let inst = SparseInstance::tight(game.clone(), k)?;
            sparse_solve_with_stats(&inst, &mut stats)
        }
        Algorithm::SparseNonneg => {
            let inst = SparseInstance::tight(game.clone(), k)?;
            sparse_solve_nonneg_with_stats(&inst, &mut stats)?
        }
        Algorithm::Unbalanced => {
            if game.m() > MAX_UNBALANCED_ROWS {
                return Err(Error::InvalidParameters(format!(
                    "unbalanced search takes at most {MAX_UNBALANCED_ROWS} rows, got {}",
                    game.m()
                )));
            }
            let inst = UnbalancedInstance::new(game.clone())?;
            Some(unbalanced_solve_with_stats(&inst, &mut stats))
        }
        Algorithm::Pattern => {
            let alphabet = ValueAlphabet::of_game(game);
            let kk = k.min(game.m().max(game.n()));
            let l = alphabet.len() as u128;
            if pattern_count(&alphabet, kk, kk) > MAX_PATTERNS || l.pow(kk as u32) > MAX_PATTERN_VECTORS {
                return Err(Error::InvalidParameters(format!(
                    "pattern search over {l} values with supports up to {kk} is too large"
                )));
            }
            pattern_solve_with_stats(game, k, &mut stats)
        }
    };
    Ok(SolveOutcome {
        profile,
        stats,
        elapsed: start.elapsed(),
    })
}

/// Re-verification of a solver's answer; `Err` carries the failing verdict.
pub fn recheck(game: &BimatrixGame, p: &MixedProfile) -> std::result::Result<(), Verdict> {
    match verify_equilibrium(game, p).expect("solver profile matches the game") {
        Verdict::Equilibrium => Ok(()),
        v => Err(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("simplex".parse::<Algorithm>().is_err());
    }

    #[test]
    fn dispatch() {
        let pennies = BimatrixGame::from_i64(&[&[1, -1], &[-1, 1]], &[&[-1, 1], &[1, -1]]);
        for a in [Algorithm::Baseline, Algorithm::Sparse, Algorithm::Pattern] {
            assert!(run_solver(a, &pennies, 1).unwrap().profile.is_none(), "{a}");
            let p = run_solver(a, &pennies, 2).unwrap().profile.unwrap();
            assert!(recheck(&pennies, &p).is_ok());
        }
        assert!(run_solver(Algorithm::SparseNonneg, &pennies, 2).is_err());
        assert!(run_solver(Algorithm::Unbalanced, &pennies, 2).is_err());
        assert!(run_solver(Algorithm::Baseline, &pennies, 0).is_err());
    }
}
