//! Brute-force ground truth for small games.
//!
//! Every support pair up to the size bound is checked for an exact-support
//! equilibrium. The check is a direct transcription of the best-response
//! conditions solved by Fourier–Motzkin elimination, so it shares no code
//! with the simplex-based solvers it is used to validate.

pub mod fourier_motzkin;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::game::{payoffs, BimatrixGame, MixedProfile, Support};
use crate::graph::{build_graph, GameGraph};
use crate::rational::{RatMatrix, Rational};
use fourier_motzkin::{feasible_point, Ineq, Kind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleHit {
    pub support: Support,
    pub profile: MixedProfile,
}

/// Distribution with support exactly `vars` (over `total` strategies) that
/// makes every index of `tight` a best response among `0..n_resp` under
/// `payoff(r, v)`.
fn exact_side(
    payoff: &RatMatrix,
    transpose: bool,
    tight: &[usize],
    vars: &[usize],
    total: usize,
) -> Option<Vec<Rational>> {
    let entry = |r: usize, v: usize| if transpose { &payoff[(v, r)] } else { &payoff[(r, v)] };
    let n_resp = if transpose { payoff.cols() } else { payoff.rows() };
    let k = vars.len();
    let nv = k + 1; // weights, then the common best-response value
    let mut cons = Vec::new();

    let mut sum = vec![Rational::one(); nv];
    sum[k] = Rational::zero();
    cons.push(Ineq::new(sum, Kind::Eq, Rational::one()));
    for t in 0..k {
        let mut c = vec![Rational::zero(); nv];
        c[t] = -Rational::one();
        cons.push(Ineq::new(c, Kind::Lt, Rational::zero()));
    }
    for r in 0..n_resp {
        let mut c: Vec<Rational> = vars.iter().map(|&v| entry(r, v).clone()).collect();
        c.push(-Rational::one());
        let kind = if tight.contains(&r) { Kind::Eq } else { Kind::Le };
        cons.push(Ineq::new(c, kind, Rational::zero()));
    }

    let z = feasible_point(nv, cons)?;
    let mut w = vec![Rational::zero(); total];
    for (t, &v) in vars.iter().enumerate() {
        w[v] = z[t].clone();
    }
    Some(w)
}

/// Exact-support equilibrium on `(rows, cols)`, decided by elimination.
pub fn oracle_check(game: &BimatrixGame, rows: &[usize], cols: &[usize]) -> Option<MixedProfile> {
    let y = exact_side(game.a(), false, rows, cols, game.n())?;
    let x = exact_side(game.b(), true, cols, rows, game.m())?;
    Some(MixedProfile::new(x, y).expect("elimination yields distributions"))
}

/// All exact-support equilibria with `|I| ≤ max_rows` and `|J| ≤ max_cols`,
/// ordered by `|I|`, then `|J|`, then lexicographically.
pub fn oracle_find_sizes(game: &BimatrixGame, max_rows: usize, max_cols: usize) -> Vec<OracleHit> {
    let mut hits = Vec::new();
    for k1 in 1..=max_rows.min(game.m()) {
        for k2 in 1..=max_cols.min(game.n()) {
            for rows in (0..game.m()).combinations(k1) {
                for cols in (0..game.n()).combinations(k2) {
                    if let Some(profile) = oracle_check(game, &rows, &cols) {
                        hits.push(OracleHit {
                            support: Support::new(rows.clone(), cols),
                            profile,
                        });
                    }
                }
            }
        }
    }
    hits
}

pub fn oracle_find(game: &BimatrixGame, k: usize) -> Vec<OracleHit> {
    oracle_find_sizes(game, k, k)
}

/// Hits whose support does not strictly contain another hit's support.
pub fn minimal_hits(hits: &[OracleHit]) -> Vec<OracleHit> {
    hits.iter()
        .filter(|h| {
            !hits
                .iter()
                .any(|o| o.support != h.support && o.support.is_subset_of(&h.support))
        })
        .cloned()
        .collect()
}

pub fn oracle_minimal(game: &BimatrixGame, k: usize) -> Vec<OracleHit> {
    minimal_hits(&oracle_find(game, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubmatrixCase {
    /// `A[S(x), S(y)] = B[S(x), S(y)] = 0`
    Zero,
    /// Some entry of `A[S(x), S(y)]` or `B[S(x), S(y)]` is nonzero.
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureEntry {
    pub hit: OracleHit,
    /// Row vertices `S(x) ∪ N(S(y))`.
    pub extended_rows: Vec<usize>,
    /// Column vertices `S(y) ∪ N(S(x))`.
    pub extended_cols: Vec<usize>,
    /// Components of the subgraph induced by `N[S(x) ∪ S(y)]`.
    pub extended_components: usize,
    /// Components of the subgraph induced by `S(x) ∪ S(y)`.
    pub support_components: usize,
    pub case: SubmatrixCase,
    pub row_payoff: Rational,
    pub col_payoff: Rational,
}

impl StructureEntry {
    pub fn at_most_two_components(&self) -> bool {
        self.extended_components <= 2
    }

    /// Either both supports are singletons or the support subgraph is connected.
    pub fn nonnegative_dichotomy(&self) -> bool {
        self.hit.support.sizes() == (1, 1) || self.support_components == 1
    }

    pub fn payoffs_nonnegative(&self) -> bool {
        !self.row_payoff.is_negative() && !self.col_payoff.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub nonnegative_game: bool,
    pub entries: Vec<StructureEntry>,
}

impl StructureReport {
    /// Whether every entry satisfies the connectivity facts that apply to it.
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| {
            e.at_most_two_components() && (!self.nonnegative_game || e.nonnegative_dichotomy())
        })
    }
}

pub fn structure_entry(game: &BimatrixGame, g: &GameGraph, hit: &OracleHit) -> StructureEntry {
    let s = &hit.support;
    let support_vertices: Vec<usize> = s
        .rows
        .iter()
        .copied()
        .chain(s.cols.iter().map(|&j| g.id(crate::graph::Vertex::Col(j))))
        .collect();
    let closed = g.closed_neighborhood(&support_vertices);
    let zero = s.rows.iter().all(|&i| {
        s.cols
            .iter()
            .all(|&j| game.a()[(i, j)].is_zero() && game.b()[(i, j)].is_zero())
    });
    let (row_payoff, col_payoff) = payoffs(game, &hit.profile).expect("same game");
    StructureEntry {
        hit: hit.clone(),
        extended_rows: closed.iter().copied().filter(|&v| v < g.rows()).collect(),
        extended_cols: closed
            .iter()
            .filter(|&&v| v >= g.rows())
            .map(|&v| v - g.rows())
            .collect(),
        extended_components: g.induced_components(&closed),
        support_components: g.induced_components(&support_vertices),
        case: if zero { SubmatrixCase::Zero } else { SubmatrixCase::General },
        row_payoff,
        col_payoff,
    }
}

/// Connectivity report for every minimal equilibrium with supports `≤ k`.
pub fn check_structure(game: &BimatrixGame, k: usize) -> StructureReport {
    let g = build_graph(game);
    StructureReport {
        nonnegative_game: game.is_nonnegative(),
        entries: oracle_minimal(game, k)
            .iter()
            .map(|h| structure_entry(game, &g, h))
            .collect(),
    }
}
