//! Equilibria with small supports in ℓ-sparse games.
//!
//! A minimal equilibrium's extended support `N[S(x) ∪ S(y)]` induces a
//! subgraph of the game graph with at most two components, so it is enough
//! to enumerate such subgraphs and try every way of picking the supports
//! inside them. With non-negative payoffs the supports themselves are
//! connected (or both singletons), which shrinks the search to subgraphs on
//! exactly `k1 + k2` vertices.

use std::collections::HashSet;
use std::ops::ControlFlow;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedProfile};
use crate::graph::{build_graph, for_each_subgraph, max_degree, GameGraph};
use crate::stats::SolveStats;
use crate::support::{baseline_solve, binomial, solve_on_support, support_size_order, SupportQuery};

/// Smallest ℓ for which the game is ℓ-sparse.
pub fn validate_sparsity(game: &BimatrixGame) -> usize {
    let (a, b) = (game.a(), game.b());
    let rows = (0..game.m()).map(|i| a.nonzeros_in_row(i).max(b.nonzeros_in_row(i)));
    let cols = (0..game.n()).map(|j| a.nonzeros_in_col(j).max(b.nonzeros_in_col(j)));
    rows.chain(cols).max().unwrap_or(0)
}

#[derive(Clone, Debug)]
pub struct SparseInstance {
    pub game: BimatrixGame,
    pub sparsity: usize,
    pub max_support: usize,
}

impl SparseInstance {
    pub fn new(game: BimatrixGame, sparsity: usize, max_support: usize) -> Result<Self> {
        if max_support == 0 {
            return Err(Error::InvalidParameters("support bound must be at least 1".into()));
        }
        let actual = validate_sparsity(&game);
        if actual > sparsity {
            return Err(Error::InvalidInstance(format!(
                "game is {actual}-sparse, not {sparsity}-sparse"
            )));
        }
        Ok(SparseInstance {
            game,
            sparsity,
            max_support,
        })
    }

    /// Uses the game's own sparsity.
    pub fn tight(game: BimatrixGame, max_support: usize) -> Result<Self> {
        let l = validate_sparsity(&game);
        Self::new(game, l, max_support)
    }

    /// Whether every equilibrium with supports `≤ k` is guaranteed
    /// non-negative payoffs, which the subgraph search relies on.
    pub fn payoffs_forced_nonnegative(&self) -> bool {
        let lk = self.sparsity * self.max_support;
        self.game.m() > lk && self.game.n() > lk
    }
}

/// Tries every `(I, J)` inside a candidate that has not been tried yet for
/// the current sizes.
struct Selector<'a> {
    game: &'a BimatrixGame,
    g: &'a GameGraph,
    k1: usize,
    k2: usize,
    tried: HashSet<(Vec<usize>, Vec<usize>)>,
    total: u128,
    found: Option<MixedProfile>,
    stats: &'a mut SolveStats,
}

impl Selector<'_> {
    fn saturated(&self) -> bool {
        self.tried.len() as u128 >= self.total
    }

    fn try_pair(&mut self, rows: &[usize], cols: &[usize]) -> ControlFlow<()> {
        if !self.tried.insert((rows.to_vec(), cols.to_vec())) {
            return ControlFlow::Continue(());
        }
        self.stats.lp_calls += 1;
        let q = SupportQuery::exact(self.game, rows.to_vec(), cols.to_vec()).expect("in range");
        if let Some(p) = solve_on_support(&q) {
            self.found = Some(p);
            return ControlFlow::Break(());
        }
        if self.saturated() {
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    }

    fn within(&mut self, rows: &[usize], cols: &[usize]) -> ControlFlow<()> {
        for i in rows.iter().copied().combinations(self.k1) {
            for j in cols.iter().copied().combinations(self.k2) {
                self.try_pair(&i, &j)?;
            }
        }
        ControlFlow::Continue(())
    }
}

pub fn sparse_solve(inst: &SparseInstance) -> Option<MixedProfile> {
    sparse_solve_with_stats(inst, &mut SolveStats::default())
}

/// Subgraph search over extended supports; falls back to plain support
/// enumeration when the instance is too small to force non-negative payoffs.
pub fn sparse_solve_with_stats(inst: &SparseInstance, stats: &mut SolveStats) -> Option<MixedProfile> {
    let game = &inst.game;
    if !inst.payoffs_forced_nonnegative() {
        return baseline_solve(game, inst.max_support, stats);
    }
    let g = build_graph(game);
    let delta = max_degree(&g);
    let nv = g.vertex_count();

    for (k1, k2) in support_size_order(game.m(), game.n(), inst.max_support) {
        let mut sel = Selector {
            game,
            g: &g,
            k1,
            k2,
            tried: HashSet::new(),
            total: binomial(game.m(), k1) * binomial(game.n(), k2),
            found: None,
            stats,
        };
        // The extended support has at most k1 + k2 support vertices, each
        // contributing at most Δ neighbours.
        let t_max = ((k1 + k2) * (delta + 1)).min(nv);
        'sweep: for t in k1 + k2..=t_max {
            for c in 1..=2 {
                let es = for_each_subgraph(&g, t, c, |cand| {
                    sel.stats.candidates += 1;
                    let rows = cand.rows(sel.g);
                    let cols = cand.cols(sel.g);
                    if rows.len() < k1 || cols.len() < k2 {
                        return ControlFlow::Continue(());
                    }
                    sel.within(&rows, &cols)
                });
                sel.stats.branch_leaves += es.leaves;
                if sel.found.is_some() || sel.saturated() {
                    break 'sweep;
                }
            }
        }
        if let Some(p) = sel.found {
            return Some(p);
        }
    }
    None
}

fn reject_negative(game: &BimatrixGame) -> Result<()> {
    if game.is_nonnegative() {
        Ok(())
    } else {
        Err(Error::InvalidInstance("payoffs must be non-negative".into()))
    }
}

pub fn sparse_solve_nonneg(inst: &SparseInstance) -> Result<Option<MixedProfile>> {
    sparse_solve_nonneg_with_stats(inst, &mut SolveStats::default())
}

/// Search over the supports themselves: every pure pair, then every
/// connected subgraph with exactly `k1` rows and `k2` columns.
pub fn sparse_solve_nonneg_with_stats(
    inst: &SparseInstance,
    stats: &mut SolveStats,
) -> Result<Option<MixedProfile>> {
    let game = &inst.game;
    reject_negative(game)?;
    let g = build_graph(game);

    for (k1, k2) in support_size_order(game.m(), game.n(), inst.max_support) {
        if (k1, k2) == (1, 1) {
            for (i, j) in (0..game.m()).cartesian_product(0..game.n()) {
                stats.candidates += 1;
                stats.lp_calls += 1;
                if game.is_pure_equilibrium(i, j) {
                    return Ok(Some(MixedProfile::pure(game.m(), game.n(), i, j)));
                }
            }
            continue;
        }
        let mut found = None;
        let es = for_each_subgraph(&g, k1 + k2, 1, |cand| {
            let rows = cand.rows(&g);
            if rows.len() != k1 {
                return ControlFlow::Continue(());
            }
            stats.candidates += 1;
            stats.lp_calls += 1;
            let q = SupportQuery::exact(game, rows, cand.cols(&g)).expect("in range");
            match solve_on_support(&q) {
                Some(p) => {
                    found = Some(p);
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            }
        });
        stats.branch_leaves += es.leaves;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{verify_equilibrium, Support};
    use crate::rational::{frac, RatMatrix};

    fn pennies() -> BimatrixGame {
        BimatrixGame::from_i64(&[&[1, -1], &[-1, 1]], &[&[-1, 1], &[1, -1]])
    }

    /// Two matching-pennies blocks on the diagonal of a 4×4 game.
    fn blocks() -> BimatrixGame {
        BimatrixGame::from_i64(
            &[&[1, -1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 1, -1], &[0, 0, -1, 1]],
            &[&[-1, 1, 0, 0], &[1, -1, 0, 0], &[0, 0, -1, 1], &[0, 0, 1, -1]],
        )
    }

    #[test]
    fn sparsity_values() {
        let id = BimatrixGame::new(RatMatrix::identity(3), RatMatrix::identity(3)).unwrap();
        assert_eq!(validate_sparsity(&id), 1);
        let ones = BimatrixGame::from_i64(&[&[1, 1, 1], &[1, 1, 1]], &[&[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(validate_sparsity(&ones), 3);
        let one_row = BimatrixGame::from_i64(&[&[1, 2, 3], &[0, 0, 0]], &[&[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(validate_sparsity(&one_row), 3);
        assert!(SparseInstance::new(ones, 2, 1).is_err());
    }

    #[test]
    fn pennies_is_mixed() {
        let inst = SparseInstance::tight(pennies(), 2).unwrap();
        let p = sparse_solve(&inst).unwrap();
        assert_eq!(p.x(), &[frac(1, 2), frac(1, 2)]);
        assert_eq!(p.y(), &[frac(1, 2), frac(1, 2)]);
        let inst = SparseInstance::tight(pennies(), 1).unwrap();
        assert!(sparse_solve(&inst).is_none());
    }

    #[test]
    fn coordination_pure() {
        let id = BimatrixGame::new(RatMatrix::identity(2), RatMatrix::identity(2)).unwrap();
        let inst = SparseInstance::tight(id.clone(), 1).unwrap();
        assert_eq!(sparse_solve(&inst).unwrap().support().sizes(), (1, 1));
        assert_eq!(
            sparse_solve_nonneg(&inst).unwrap().unwrap(),
            MixedProfile::pure(2, 2, 0, 0)
        );
    }

    #[test]
    fn block_game_uses_one_block() {
        let inst = SparseInstance::tight(blocks(), 2).unwrap();
        let mut stats = SolveStats::default();
        let p = sparse_solve_with_stats(&inst, &mut stats).unwrap();
        assert!(verify_equilibrium(&inst.game, &p).unwrap().is_equilibrium());
        let s = p.support();
        assert_eq!(s.sizes(), (2, 2));
        assert!(
            s == Support::new(vec![0, 1], vec![0, 1]) || s == Support::new(vec![2, 3], vec![2, 3]),
            "{s:?}"
        );
        assert!(stats.lp_calls > 0);
    }

    #[test]
    fn subgraph_search_on_block_game() {
        // k = 1 keeps n > ℓk, so this runs the graph search; no block has
        // a pure equilibrium, and every pure pair must be tried.
        let inst = SparseInstance::tight(blocks(), 1).unwrap();
        assert!(inst.payoffs_forced_nonnegative());
        let mut stats = SolveStats::default();
        assert!(sparse_solve_with_stats(&inst, &mut stats).is_none());
        assert_eq!(stats.lp_calls, 16);
        assert!(stats.branch_leaves > 0);
    }

    #[test]
    fn nonneg_examples() {
        let wl = BimatrixGame::from_i64(&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]);
        let inst = SparseInstance::tight(wl, 2).unwrap();
        let p = sparse_solve_nonneg(&inst).unwrap().unwrap();
        assert_eq!(p.x(), &[frac(1, 2), frac(1, 2)]);
        assert_eq!(p.y(), &[frac(1, 2), frac(1, 2)]);

        let zero = BimatrixGame::new(RatMatrix::zeros(3, 3), RatMatrix::zeros(3, 3)).unwrap();
        let inst = SparseInstance::tight(zero, 2).unwrap();
        assert_eq!(
            sparse_solve_nonneg(&inst).unwrap().unwrap(),
            MixedProfile::pure(3, 3, 0, 0)
        );

        let inst = SparseInstance::tight(pennies(), 2).unwrap();
        assert!(sparse_solve_nonneg(&inst).is_err());
    }
}
