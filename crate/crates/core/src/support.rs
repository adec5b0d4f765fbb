//! Equilibria on prescribed supports, and the baseline support enumeration.
//!
//! For supports `(I, J)` the problem decouples into two linear programs. The
//! column strategy `y` lives on `J` and must make every row in `I` a best
//! response: `(Ay)_i = v` for `i ∈ I` and `(Ay)_i ≤ v` otherwise. The row
//! strategy `x` lives on `I` and plays the same role against `B`. Exact
//! supports are enforced by maximising a slack `δ ≤ y_j` (resp. `x_i`): a
//! solution with full support exists iff the optimum `δ` is positive.

use std::collections::HashSet;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{verify_equilibrium, BimatrixGame, MixedProfile, Support};
use crate::lp::{lp_solve, LinearProgram, LpStatus, Relation};
use crate::rational::Rational;
use crate::stats::SolveStats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strictness {
    /// `S(x) = I` and `S(y) = J`.
    ExactSupport,
    /// `S(x) ⊆ I` and `S(y) ⊆ J`.
    WithinSupport,
}

#[derive(Clone, Debug)]
pub struct SupportQuery<'g> {
    pub game: &'g BimatrixGame,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub strictness: Strictness,
}

impl<'g> SupportQuery<'g> {
    pub fn new(
        game: &'g BimatrixGame,
        rows: Vec<usize>,
        cols: Vec<usize>,
        strictness: Strictness,
    ) -> Result<Self> {
        let s = Support::new(rows, cols);
        if s.rows.is_empty() || s.cols.is_empty() {
            return Err(Error::InvalidParameters("supports must be non-empty".into()));
        }
        if s.rows.last().is_some_and(|&i| i >= game.m()) || s.cols.last().is_some_and(|&j| j >= game.n()) {
            return Err(Error::InvalidParameters(format!(
                "support {:?}x{:?} out of range for a {}x{} game",
                s.rows,
                s.cols,
                game.m(),
                game.n()
            )));
        }
        Ok(SupportQuery {
            game,
            rows: s.rows,
            cols: s.cols,
            strictness,
        })
    }

    pub fn exact(game: &'g BimatrixGame, rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        Self::new(game, rows, cols, Strictness::ExactSupport)
    }
}

/// One side of the decoupled problem: find a distribution `w` over `vars`
/// such that every index in `tight` attains the maximum of
/// `payoff(r, ·)·w` over all `r < n_resp`.
fn solve_side<'a>(
    n_resp: usize,
    n_total: usize,
    payoff: impl Fn(usize, usize) -> &'a Rational,
    tight: &[usize],
    vars: &[usize],
    strict: bool,
) -> Option<Vec<Rational>> {
    let k = vars.len();
    // variables: w_0..w_{k-1}, value (free), [slack]
    let nv = k + 1 + usize::from(strict);
    let value = k;
    let mut lp = LinearProgram::nonnegative(nv);
    lp.lower_bounds[value] = None;

    let mut ones = vec![Rational::zero(); nv];
    for c in ones.iter_mut().take(k) {
        *c = Rational::one();
    }
    lp.add(ones, Relation::Eq, Rational::one());

    let row_of = |r: usize| -> Vec<Rational> { vars.iter().map(|&v| payoff(r, v).clone()).collect() };

    let mut equal: HashSet<Vec<Rational>> = HashSet::new();
    for &r in tight {
        let coeffs = row_of(r);
        if equal.insert(coeffs.clone()) {
            let mut c = coeffs;
            c.push(-Rational::one());
            c.resize(nv, Rational::zero());
            lp.add(c, Relation::Eq, Rational::zero());
        }
    }
    let mut bounded: HashSet<Vec<Rational>> = HashSet::new();
    let mut in_tight = vec![false; n_resp];
    for &r in tight {
        in_tight[r] = true;
    }
    for r in (0..n_resp).filter(|&r| !in_tight[r]) {
        let coeffs = row_of(r);
        if equal.contains(&coeffs) || !bounded.insert(coeffs.clone()) {
            continue;
        }
        let mut c = coeffs;
        c.push(-Rational::one());
        c.resize(nv, Rational::zero());
        lp.add(c, Relation::Le, Rational::zero());
    }

    if strict {
        let slack = k + 1;
        for t in 0..k {
            let mut c = vec![Rational::zero(); nv];
            c[t] = Rational::one();
            c[slack] = -Rational::one();
            lp.add(c, Relation::Ge, Rational::zero());
        }
        lp.objective[slack] = Rational::one();
    }

    let out = lp_solve(&lp).expect("support LP is well formed");
    if out.status != LpStatus::Optimal {
        return None;
    }
    let sol = out.solution.expect("optimal");
    if strict && !sol[k + 1].is_positive() {
        return None;
    }
    let mut w = vec![Rational::zero(); n_total];
    for (t, &v) in vars.iter().enumerate() {
        w[v] = sol[t].clone();
    }
    Some(w)
}

/// The column half of the decoupled problem: a `y` on `cols` that makes every
/// row of `rows` a best response under `A`. Depends on `A` only.
pub fn solve_column_side(q: &SupportQuery<'_>) -> Option<Vec<Rational>> {
    let a = q.game.a();
    let strict = q.strictness == Strictness::ExactSupport;
    solve_side(q.game.m(), q.game.n(), |r, v| &a[(r, v)], &q.rows, &q.cols, strict)
}

/// Finds an equilibrium on the queried supports, or `None` if there is none.
pub fn solve_on_support(q: &SupportQuery<'_>) -> Option<MixedProfile> {
    let g = q.game;
    let (m, n) = (g.m(), g.n());
    let strict = q.strictness == Strictness::ExactSupport;

    if let ([i], [j]) = (q.rows.as_slice(), q.cols.as_slice()) {
        return g
            .is_pure_equilibrium(*i, *j)
            .then(|| MixedProfile::pure(m, n, *i, *j));
    }

    let a = g.a();
    let b = g.b();
    let y = solve_side(m, n, |r, v| &a[(r, v)], &q.rows, &q.cols, strict)?;
    let x = solve_side(n, m, |r, v| &b[(v, r)], &q.cols, &q.rows, strict)?;
    let p = MixedProfile::new(x, y).expect("LP returns distributions");
    debug_assert!(verify_equilibrium(g, &p).unwrap().is_equilibrium());
    Some(p)
}

/// Support-size pairs `(k1, k2)` with `k1 ≤ k.min(m)`, `k2 ≤ k.min(n)`,
/// ordered by `k1 + k2`, ties by `k1`.
pub fn support_size_order(m: usize, n: usize, k: usize) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = (1..=k.min(m))
        .cartesian_product(1..=k.min(n))
        .collect();
    v.sort_by_key(|&(a, b)| (a + b, a));
    v
}

/// All `(I, J)` with `|I| = k1`, `|J| = k2`, lexicographic in `(I, J)`.
pub fn enumerate_all_supports(
    game: &BimatrixGame,
    k1: usize,
    k2: usize,
) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    let n = game.n();
    (0..game.m())
        .combinations(k1)
        .flat_map(move |rows| (0..n).combinations(k2).map(move |cols| (rows.clone(), cols)))
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Support checks the baseline would run in the worst case with supports
/// up to `k`.
pub fn baseline_lp_calls(m: usize, n: usize, k: usize) -> u128 {
    let rows: u128 = (1..=k.min(m)).map(|a| binomial(m, a)).sum();
    let cols: u128 = (1..=k.min(n)).map(|b| binomial(n, b)).sum();
    rows * cols
}

/// Tries every support pair of sizes up to `k` (in [`support_size_order`]);
/// returns the first exact-support equilibrium found.
pub fn baseline_solve(game: &BimatrixGame, k: usize, stats: &mut SolveStats) -> Option<MixedProfile> {
    for (k1, k2) in support_size_order(game.m(), game.n(), k) {
        for (rows, cols) in enumerate_all_supports(game, k1, k2) {
            stats.candidates += 1;
            stats.lp_calls += 1;
            let q = SupportQuery::exact(game, rows, cols).expect("in range");
            if let Some(p) = solve_on_support(&q) {
                return Some(p);
            }
        }
    }
    None
}
