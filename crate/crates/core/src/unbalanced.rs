//! Games where the row player has few strategies.
//!
//! Columns with identical `A`-columns are interchangeable for the row
//! player, so probability can be moved between them without changing `Ay`.
//! Some equilibrium therefore has a column support of size at most `k + 1`
//! with at most one column per class, and the search runs over row supports
//! and sets of classes instead of sets of columns.

use std::collections::HashMap;

use itertools::Itertools;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::game::{verify_equilibrium, BimatrixGame, MixedProfile};
use crate::rational::Rational;
use crate::stats::SolveStats;
use crate::support::{solve_column_side, solve_on_support, SupportQuery};

#[derive(Clone, Debug)]
pub struct UnbalancedInstance {
    pub game: BimatrixGame,
    /// Number of distinct values in `A`.
    pub alphabet: usize,
}

impl UnbalancedInstance {
    pub fn new(game: BimatrixGame) -> Result<Self> {
        if !game.is_nonnegative() {
            return Err(Error::InvalidInstance("payoffs must be non-negative".into()));
        }
        let mut values: Vec<&Rational> = game.a().as_slice().iter().collect();
        values.sort();
        values.dedup();
        let alphabet = values.len();
        Ok(UnbalancedInstance { game, alphabet })
    }

    /// Row strategy count.
    pub fn k(&self) -> usize {
        self.game.m()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnClasses {
    /// `class_of[j]` indexes `members`.
    pub class_of: Vec<usize>,
    /// Columns of each class in increasing order; classes are ordered by
    /// their smallest column.
    pub members: Vec<Vec<usize>>,
}

impl ColumnClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.members[class][0]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.members.iter().map(|c| c[0]).collect()
    }
}

/// Partition of the columns by equality of their `A`-columns.
pub fn column_classes(game: &BimatrixGame) -> ColumnClasses {
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(game.n());
    let mut members: Vec<Vec<usize>> = Vec::new();
    for j in 0..game.n() {
        let next = members.len();
        let c = *index.entry(game.a().column(j)).or_insert(next);
        if c == next {
            members.push(Vec::new());
        }
        members[c].push(j);
        class_of.push(c);
    }
    ColumnClasses { class_of, members }
}

/// Moves all of `y[j]` onto `y[i]`.
pub fn merge_columns(y: &[Rational], i: usize, j: usize) -> Vec<Rational> {
    let mut out = y.to_vec();
    let moved = std::mem::take(&mut out[j]);
    out[i] += moved;
    out
}

/// Upper bound on the number of `(row support, class set)` guesses.
pub fn guess_bound(k: usize, classes: usize) -> u128 {
    let rows = (1u128 << k) - 1;
    let cols: u128 = (1..=(k + 1).min(classes))
        .map(|s| crate::support::binomial(classes, s))
        .sum();
    rows * cols
}

pub fn unbalanced_solve(inst: &UnbalancedInstance) -> MixedProfile {
    unbalanced_solve_with_stats(inst, &mut SolveStats::default())
}

/// Guesses a row support `I` and a set `K` of at most `k + 1` column
/// classes. The column half of the problem only sees `A`, which is constant
/// on a class, so it is decided once per guess on the representatives;
/// when it is feasible, each way of picking one member per class is checked
/// against the full game.
pub fn unbalanced_solve_with_stats(inst: &UnbalancedInstance, stats: &mut SolveStats) -> MixedProfile {
    let game = &inst.game;
    let k = inst.k();
    let classes = column_classes(game);
    let reps = classes.representatives();

    let mut sizes: Vec<(usize, usize)> = (1..=k)
        .cartesian_product(1..=(k + 1).min(classes.len()))
        .collect();
    sizes.sort_by_key(|&(a, b)| (a + b, a));

    for (k1, k2) in sizes {
        for rows in (0..k).combinations(k1) {
            for ks in (0..classes.len()).combinations(k2) {
                stats.candidates += 1;
                stats.lp_calls += 1;
                let rep_cols: Vec<usize> = ks.iter().map(|&c| reps[c]).collect();
                let q = SupportQuery::exact(game, rows.clone(), rep_cols).expect("in range");
                if solve_column_side(&q).is_none() {
                    continue;
                }
                let choices = ks.iter().map(|&c| classes.members[c].iter().copied());
                for cols in choices.multi_cartesian_product() {
                    stats.lp_calls += 1;
                    let q = SupportQuery::exact(game, rows.clone(), cols).expect("in range");
                    if let Some(p) = solve_on_support(&q) {
                        return p;
                    }
                }
            }
        }
    }
    unreachable!("every non-negative game has an equilibrium of the searched shape")
}

/// Whether the profile's column support has at most one column per class.
pub fn one_column_per_class(classes: &ColumnClasses, p: &MixedProfile) -> bool {
    let s = p.support();
    s.cols.iter().map(|&j| classes.class_of[j]).all_unique()
}

/// Merges every pair of equivalent columns in the support of `y` onto the
/// smaller index. Row payoffs `Ay` are unchanged.
pub fn collapse_classes(classes: &ColumnClasses, y: &[Rational]) -> Vec<Rational> {
    let mut out = y.to_vec();
    for (j, w) in y.iter().enumerate() {
        let first = classes.members[classes.class_of[j]]
            .iter()
            .copied()
            .find(|&i| y[i].is_positive())
            .unwrap_or(j);
        if first != j && w.is_positive() {
            out = merge_columns(&out, first, j);
        }
    }
    out
}

/// Checks that the merged profile is still an equilibrium when both merged
/// columns were in the support.
pub fn merged_profile_verifies(game: &BimatrixGame, p: &MixedProfile, i: usize, j: usize) -> bool {
    let y = merge_columns(p.y(), i, j);
    let q = MixedProfile::new(p.x().to_vec(), y).expect("merge keeps a distribution");
    verify_equilibrium(game, &q).expect("same game").is_equilibrium()
}
