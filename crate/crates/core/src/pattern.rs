//! Equilibria in games over a small payoff alphabet, found through the
//! submatrix pattern they occupy.
//!
//! For supports of sizes `k1 × k2` every candidate pattern `(A*, B*)` over
//! the alphabet is tried. Which other row vectors (restricted to the
//! support columns) and column vectors (restricted to the support rows) may
//! appear in the game is guessed as well: the allowed extras `A†`, `B†` are
//! added to a small augmented game `(C, D)` that is solved on the pattern
//! block, and the remaining vectors become forbidden. An occurrence of the
//! pattern in the game that avoids the forbidden vectors then carries the
//! augmented equilibrium over unchanged.
//!
//! Occurrences are searched by backtracking over ordered tuples of rows and
//! columns, which is exponential in `k` but exact.

use std::collections::HashSet;

use itertools::Itertools;

use crate::game::{verify_equilibrium, BimatrixGame, MixedProfile};
use crate::rational::{RatMatrix, Rational};
use crate::stats::SolveStats;
use crate::support::{solve_on_support, support_size_order, SupportQuery};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueAlphabet {
    values: Vec<Rational>,
}

impl ValueAlphabet {
    pub fn new(mut values: Vec<Rational>) -> Self {
        values.sort();
        values.dedup();
        ValueAlphabet { values }
    }

    /// Every value occurring in `A` or `B`.
    pub fn of_game(game: &BimatrixGame) -> Self {
        let vals = game.a().as_slice().iter().chain(game.b().as_slice()).cloned();
        Self::new(vals.collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All vectors of the given length over the alphabet, lexicographic.
    pub fn vectors(&self, len: usize) -> Vec<Vec<Rational>> {
        (0..len)
            .map(|_| self.values.iter().cloned())
            .multi_cartesian_product()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumPattern {
    pub a: RatMatrix,
    pub b: RatMatrix,
}

impl EquilibriumPattern {
    pub fn k1(&self) -> usize {
        self.a.rows()
    }

    pub fn k2(&self) -> usize {
        self.a.cols()
    }

    fn distinct_rows(&self) -> HashSet<Vec<Rational>> {
        (0..self.k1()).map(|i| self.a.row(i).to_vec()).collect()
    }

    fn distinct_cols(&self) -> HashSet<Vec<Rational>> {
        (0..self.k2()).map(|j| self.b.column(j)).collect()
    }
}

/// All `ℓ^{2·k1·k2}` pattern pairs in lexicographic order of their entries
/// (`A*` row-major, then `B*` row-major).
pub fn enumerate_patterns(
    alphabet: &ValueAlphabet,
    k1: usize,
    k2: usize,
) -> impl Iterator<Item = EquilibriumPattern> + '_ {
    let cells = k1 * k2;
    (0..2 * cells)
        .map(|_| alphabet.values.iter().cloned())
        .multi_cartesian_product()
        .map(move |mut flat| {
            let b = flat.split_off(cells);
            EquilibriumPattern {
                a: RatMatrix::from_flat(k1, k2, flat).expect("sized"),
                b: RatMatrix::from_flat(k1, k2, b).expect("sized"),
            }
        })
}

pub fn pattern_count(alphabet: &ValueAlphabet, k1: usize, k2: usize) -> u128 {
    (alphabet.len() as u128).pow((2 * k1 * k2) as u32)
}

/// `C = [[A*, 0], [A†, 0]]` and `D = [[B*, B†], [0, 0]]`.
#[derive(Clone, Debug)]
pub struct AugmentedGame {
    pub game: BimatrixGame,
    pub k1: usize,
    pub k2: usize,
}

impl AugmentedGame {
    pub fn new(pat: &EquilibriumPattern, a_extra: &[Vec<Rational>], b_extra: &[Vec<Rational>]) -> Self {
        let (k1, k2) = (pat.k1(), pat.k2());
        let rows = k1 + a_extra.len();
        let cols = k2 + b_extra.len();
        let mut c = RatMatrix::zeros(rows, cols);
        let mut d = RatMatrix::zeros(rows, cols);
        for i in 0..k1 {
            for j in 0..k2 {
                c[(i, j)] = pat.a[(i, j)].clone();
                d[(i, j)] = pat.b[(i, j)].clone();
            }
        }
        for (r, v) in a_extra.iter().enumerate() {
            for j in 0..k2 {
                c[(k1 + r, j)] = v[j].clone();
            }
        }
        for (s, v) in b_extra.iter().enumerate() {
            for i in 0..k1 {
                d[(i, k2 + s)] = v[i].clone();
            }
        }
        AugmentedGame {
            game: BimatrixGame::new(c, d).expect("non-empty"),
            k1,
            k2,
        }
    }
}

/// Equilibrium of the augmented game whose supports are exactly the
/// pattern block.
pub fn certify_pattern(
    pat: &EquilibriumPattern,
    a_extra: &[Vec<Rational>],
    b_extra: &[Vec<Rational>],
) -> Option<MixedProfile> {
    let aug = AugmentedGame::new(pat, a_extra, b_extra);
    let q = SupportQuery::exact(&aug.game, (0..aug.k1).collect(), (0..aug.k2).collect()).expect("in range");
    solve_on_support(&q)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForbiddenSets {
    /// Row vectors `A_{r,J}` that must not occur for any row `r`.
    pub f1: HashSet<Vec<Rational>>,
    /// Column vectors `B_{I,c}` that must not occur for any column `c`.
    pub f2: HashSet<Vec<Rational>>,
}

impl ForbiddenSets {
    /// The vectors occurring neither in the pattern nor among the extras.
    pub fn complement(
        alphabet: &ValueAlphabet,
        pat: &EquilibriumPattern,
        a_extra: &[Vec<Rational>],
        b_extra: &[Vec<Rational>],
    ) -> Self {
        let mut rows = pat.distinct_rows();
        rows.extend(a_extra.iter().cloned());
        let mut cols = pat.distinct_cols();
        cols.extend(b_extra.iter().cloned());
        ForbiddenSets {
            f1: alphabet.vectors(pat.k2()).into_iter().filter(|v| !rows.contains(v)).collect(),
            f2: alphabet.vectors(pat.k1()).into_iter().filter(|v| !cols.contains(v)).collect(),
        }
    }
}

fn row_restricted(m: &RatMatrix, r: usize, cols: &[usize]) -> Vec<Rational> {
    cols.iter().map(|&c| m[(r, c)].clone()).collect()
}

fn col_restricted(m: &RatMatrix, rows: &[usize], c: usize) -> Vec<Rational> {
    rows.iter().map(|&r| m[(r, c)].clone()).collect()
}

struct OccurrenceSearch<'a> {
    game: &'a BimatrixGame,
    pat: &'a EquilibriumPattern,
    forbidden: &'a ForbiddenSets,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl OccurrenceSearch<'_> {
    /// Row `r` can still sit at pattern row `p` given the chosen columns.
    fn row_fits(&self, r: usize, p: usize) -> bool {
        self.cols.iter().enumerate().all(|(q, &c)| {
            self.game.a()[(r, c)] == self.pat.a[(p, q)] && self.game.b()[(r, c)] == self.pat.b[(p, q)]
        })
    }

    fn cols_viable(&self) -> bool {
        (0..self.pat.k1()).all(|p| (0..self.game.m()).any(|r| self.row_fits(r, p)))
    }

    fn search_cols(&mut self) -> bool {
        if self.cols.len() == self.pat.k2() {
            let a = self.game.a();
            if (0..self.game.m()).any(|r| self.forbidden.f1.contains(&row_restricted(a, r, &self.cols))) {
                return false;
            }
            return self.search_rows();
        }
        for c in 0..self.game.n() {
            if self.cols.contains(&c) {
                continue;
            }
            self.cols.push(c);
            if self.cols_viable() && self.search_cols() {
                return true;
            }
            self.cols.pop();
        }
        false
    }

    fn search_rows(&mut self) -> bool {
        let p = self.rows.len();
        if p == self.pat.k1() {
            let b = self.game.b();
            return !(0..self.game.n()).any(|c| self.forbidden.f2.contains(&col_restricted(b, &self.rows, c)));
        }
        for r in 0..self.game.m() {
            if self.rows.contains(&r) || !self.row_fits(r, p) {
                continue;
            }
            self.rows.push(r);
            if self.search_rows() {
                return true;
            }
            self.rows.pop();
        }
        false
    }
}

/// Ordered tuples `(I, J)` of distinct indices with `A_{I,J} = A*` and
/// `B_{I,J} = B*`, such that no row of the game restricted to `J` lies in
/// `F1` and no column restricted to `I` lies in `F2`.
pub fn find_occurrence(
    game: &BimatrixGame,
    pat: &EquilibriumPattern,
    forbidden: &ForbiddenSets,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if pat.k1() > game.m() || pat.k2() > game.n() {
        return None;
    }
    let mut s = OccurrenceSearch {
        game,
        pat,
        forbidden,
        rows: Vec::new(),
        cols: Vec::new(),
    };
    s.search_cols().then_some((s.rows, s.cols))
}

/// Places the augmented equilibrium's pattern block onto `(I, J)`.
pub fn lift_profile(game: &BimatrixGame, aug: &MixedProfile, rows: &[usize], cols: &[usize]) -> MixedProfile {
    let mut x = vec![Rational::default(); game.m()];
    let mut y = vec![Rational::default(); game.n()];
    for (p, &r) in rows.iter().enumerate() {
        x[r] = aug.x()[p].clone();
    }
    for (q, &c) in cols.iter().enumerate() {
        y[c] = aug.y()[q].clone();
    }
    MixedProfile::new(x, y).expect("block carries all the mass")
}

/// A pattern hit: the lifted profile and where it sits.
#[derive(Clone, Debug)]
pub struct PatternHit {
    pub profile: MixedProfile,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Tries every choice of extras for one pattern.
pub fn search_pattern(
    game: &BimatrixGame,
    alphabet: &ValueAlphabet,
    pat: &EquilibriumPattern,
    stats: &mut SolveStats,
) -> Option<PatternHit> {
    let unforbidden = ForbiddenSets::default();
    find_occurrence(game, pat, &unforbidden)?;
    let own_rows = pat.distinct_rows();
    let own_cols = pat.distinct_cols();
    let spare_rows: Vec<_> = alphabet.vectors(pat.k2()).into_iter().filter(|v| !own_rows.contains(v)).collect();
    let spare_cols: Vec<_> = alphabet.vectors(pat.k1()).into_iter().filter(|v| !own_cols.contains(v)).collect();

    for a_extra in spare_rows.iter().cloned().powerset() {
        for b_extra in spare_cols.iter().cloned().powerset() {
            stats.lp_calls += 1;
            let Some(aug) = certify_pattern(pat, &a_extra, &b_extra) else {
                continue;
            };
            let forbidden = ForbiddenSets::complement(alphabet, pat, &a_extra, &b_extra);
            if let Some((rows, cols)) = find_occurrence(game, pat, &forbidden) {
                let profile = lift_profile(game, &aug, &rows, &cols);
                return Some(PatternHit { profile, rows, cols });
            }
        }
    }
    None
}

pub fn pattern_solve(game: &BimatrixGame, k: usize) -> Option<MixedProfile> {
    pattern_solve_with_stats(game, k, &mut SolveStats::default())
}

/// Support sizes in increasing order; within a size, patterns in
/// enumeration order. Every lifted profile is re-verified on the game.
pub fn pattern_solve_with_stats(game: &BimatrixGame, k: usize, stats: &mut SolveStats) -> Option<MixedProfile> {
    let alphabet = ValueAlphabet::of_game(game);
    for (k1, k2) in support_size_order(game.m(), game.n(), k) {
        for pat in enumerate_patterns(&alphabet, k1, k2) {
            stats.candidates += 1;
            if let Some(hit) = search_pattern(game, &alphabet, &pat, stats) {
                let verdict = verify_equilibrium(game, &hit.profile).expect("same game");
                assert!(verdict.is_equilibrium(), "lifted pattern profile failed: {verdict:?}");
                return Some(hit.profile);
            }
        }
    }
    None
}

/// Rows `i1`, `i2` agree on the columns `cols` of `A`.
pub fn j_equivalent(game: &BimatrixGame, i1: usize, i2: usize, cols: &[usize]) -> bool {
    cols.iter().all(|&c| game.a()[(i1, c)] == game.a()[(i2, c)])
}

/// Moves all of `x[i2]` onto `x[i1]`.
pub fn merge_rows(x: &[Rational], i1: usize, i2: usize) -> Vec<Rational> {
    let mut out = x.to_vec();
    let moved = std::mem::take(&mut out[i2]);
    out[i1] += moved;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn win_lose() -> ValueAlphabet {
        ValueAlphabet::new(vec![int(0), int(1)])
    }

    fn identity_pattern() -> EquilibriumPattern {
        EquilibriumPattern {
            a: RatMatrix::identity(2),
            b: RatMatrix::identity(2),
        }
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(enumerate_patterns(&win_lose(), 1, 1).count(), 4);
        assert_eq!(enumerate_patterns(&win_lose(), 2, 2).count(), 256);
        let single = ValueAlphabet::new(vec![int(3)]);
        assert_eq!(enumerate_patterns(&single, 2, 2).count(), 1);
        assert_eq!(pattern_count(&win_lose(), 2, 2), 256);
        let first = enumerate_patterns(&win_lose(), 1, 2).next().unwrap();
        assert!(first.a.is_zero() && first.b.is_zero());
    }

    #[test]
    fn certification_examples() {
        let p = certify_pattern(&identity_pattern(), &[], &[]).unwrap();
        assert_eq!(p.x(), &[frac(1, 2), frac(1, 2)]);
        assert_eq!(p.y(), &[frac(1, 2), frac(1, 2)]);

        let one = EquilibriumPattern {
            a: RatMatrix::from_i64(&[&[1]]),
            b: RatMatrix::from_i64(&[&[1]]),
        };
        assert_eq!(certify_pattern(&one, &[], &[]).unwrap(), MixedProfile::pure(1, 1, 0, 0));

        let zeros = EquilibriumPattern {
            a: RatMatrix::zeros(2, 2),
            b: RatMatrix::zeros(2, 2),
        };
        assert!(certify_pattern(&zeros, &[vec![int(1), int(1)]], &[]).is_none());
        assert!(certify_pattern(&zeros, &[], &[]).is_some());
    }

    #[test]
    fn occurrences() {
        let id = BimatrixGame::new(RatMatrix::identity(2), RatMatrix::identity(2)).unwrap();
        let none = ForbiddenSets::default();
        assert_eq!(
            find_occurrence(&id, &identity_pattern(), &none),
            Some((vec![0, 1], vec![0, 1]))
        );

        let ones = BimatrixGame::from_i64(&[&[1, 1], &[1, 1]], &[&[1, 1], &[1, 1]]);
        let zeros = EquilibriumPattern {
            a: RatMatrix::zeros(2, 2),
            b: RatMatrix::zeros(2, 2),
        };
        assert_eq!(find_occurrence(&ones, &zeros, &none), None);

        // The identity block plus a row that beats both columns.
        let g = BimatrixGame::from_i64(&[&[1, 0], &[0, 1], &[1, 1]], &[&[1, 0], &[0, 1], &[0, 0]]);
        let forbid = ForbiddenSets {
            f1: [vec![int(1), int(1)]].into_iter().collect(),
            f2: HashSet::new(),
        };
        assert_eq!(find_occurrence(&g, &identity_pattern(), &forbid), None);
        assert!(find_occurrence(&g, &identity_pattern(), &none).is_some());
    }

    #[test]
    fn forbidden_sets_complement_the_pattern() {
        let f = ForbiddenSets::complement(&win_lose(), &identity_pattern(), &[vec![int(0), int(0)]], &[]);
        assert_eq!(f.f1, [vec![int(1), int(1)]].into_iter().collect());
        assert_eq!(f.f2.len(), 2);
        assert!(!f.f2.contains(&vec![int(1), int(0)]));
    }

    #[test]
    fn identity_pattern_found_in_larger_game() {
        let g = BimatrixGame::from_i64(
            &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            &[&[0, 1, 1], &[0, 1, 0], &[0, 0, 1]],
        );
        let mut stats = SolveStats::default();
        let hit = search_pattern(&g, &win_lose(), &identity_pattern(), &mut stats).unwrap();
        assert_eq!((hit.rows.clone(), hit.cols.clone()), (vec![1, 2], vec![1, 2]));
        assert!(verify_equilibrium(&g, &hit.profile).unwrap().is_equilibrium());
    }

    #[test]
    fn solve_examples() {
        let wl = BimatrixGame::from_i64(&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]);
        let p = pattern_solve(&wl, 2).unwrap();
        assert_eq!(p.x(), &[frac(1, 2), frac(1, 2)]);

        let id = BimatrixGame::new(RatMatrix::identity(2), RatMatrix::identity(2)).unwrap();
        assert_eq!(pattern_solve(&id, 1).unwrap().support().sizes(), (1, 1));

        let pennies = BimatrixGame::from_i64(&[&[1, -1], &[-1, 1]], &[&[-1, 1], &[1, -1]]);
        assert!(pattern_solve(&pennies, 1).is_none());
        assert!(pattern_solve(&wl, 1).is_none());
    }

    #[test]
    fn merging_equivalent_rows() {
        let g = BimatrixGame::from_i64(&[&[2, 1, 5], &[2, 1, 0], &[0, 3, 0]], &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let j = [0, 1];
        assert!(j_equivalent(&g, 0, 1, &j));
        let x = vec![frac(1, 4), frac(1, 4), frac(1, 2)];
        let y = vec![frac(1, 3), frac(2, 3), int(0)];
        let xh = merge_rows(&x, 0, 1);
        assert_eq!(xh, vec![frac(1, 2), int(0), frac(1, 2)]);
        let pay = |x: &[Rational]| crate::rational::dot(x, &g.a().mul_vec(&y));
        assert_eq!(pay(&x), pay(&xh));
    }
}
