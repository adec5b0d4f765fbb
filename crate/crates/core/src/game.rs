//! Bimatrix games, mixed profiles and exact equilibrium verification.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{dot, RatMatrix, Rational};

/// A two-player normal-form game: `a` holds the row player's payoffs and `b`
/// the column player's, both `m × n`.
#[derive(Clone, PartialEq, Eq)]
pub struct BimatrixGame {
    a: RatMatrix,
    b: RatMatrix,
    // max_i A[i][j] for every column j
    col_max_a: Vec<Rational>,
    // max_j B[i][j] for every row i
    row_max_b: Vec<Rational>,
}

impl BimatrixGame {
    pub fn new(a: RatMatrix, b: RatMatrix) -> Result<Self> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(Error::Dimension(format!(
                "payoff matrices are {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::Dimension("a game needs at least one row and one column".into()));
        }
        let col_max_a = (0..a.cols())
            .map(|j| {
                (0..a.rows())
                    .map(|i| &a[(i, j)])
                    .max()
                    .expect("non-empty column")
                    .clone()
            })
            .collect();
        let row_max_b = (0..b.rows())
            .map(|i| b.row(i).iter().max().expect("non-empty row").clone())
            .collect();
        Ok(BimatrixGame {
            a,
            b,
            col_max_a,
            row_max_b,
        })
    }

    /// Small-integer convenience constructor. Panics on malformed input.
    pub fn from_i64(a: &[&[i64]], b: &[&[i64]]) -> Self {
        Self::new(RatMatrix::from_i64(a), RatMatrix::from_i64(b)).expect("valid integer game")
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    /// Number of row strategies.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    /// Number of column strategies.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.a.has_negative() && !self.b.has_negative()
    }

    /// True iff the pure profile `(i, j)` is an equilibrium.
    pub fn is_pure_equilibrium(&self, i: usize, j: usize) -> bool {
        self.a[(i, j)] == self.col_max_a[j] && self.b[(i, j)] == self.row_max_b[i]
    }

    /// The game with both players' roles exchanged: `(Bᵀ, Aᵀ)`.
    pub fn transposed(&self) -> BimatrixGame {
        BimatrixGame::new(self.b.transpose(), self.a.transpose()).expect("same shape")
    }
}

impl fmt::Debug for BimatrixGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BimatrixGame")
            .field("a", &self.a)
            .field("b", &self.b)
            .finish()
    }
}

/// A pair of probability vectors, validated at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MixedProfile {
    x: Vec<Rational>,
    y: Vec<Rational>,
}

fn check_distribution(v: &[Rational], who: &str) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidProfile(format!("{who} strategy is empty")));
    }
    if let Some(i) = v.iter().position(Signed::is_negative) {
        return Err(Error::InvalidProfile(format!(
            "{who}[{i}] = {} is negative",
            v[i]
        )));
    }
    let total: Rational = v.iter().sum();
    if !total.is_one() {
        return Err(Error::InvalidProfile(format!(
            "{who} probabilities sum to {total}, not 1"
        )));
    }
    Ok(())
}

impl MixedProfile {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>) -> Result<Self> {
        check_distribution(&x, "x")?;
        check_distribution(&y, "y")?;
        Ok(MixedProfile { x, y })
    }

    /// The pure profile playing row `i` of `m` and column `j` of `n`.
    pub fn pure(m: usize, n: usize, i: usize, j: usize) -> Self {
        assert!(i < m && j < n, "pure strategy out of range");
        let unit = |len, k| {
            (0..len)
                .map(|t| if t == k { Rational::one() } else { Rational::zero() })
                .collect()
        };
        MixedProfile {
            x: unit(m, i),
            y: unit(n, j),
        }
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn y(&self) -> &[Rational] {
        &self.y
    }

    pub fn support(&self) -> Support {
        Support {
            rows: support_of(&self.x),
            cols: support_of(&self.y),
        }
    }

    fn check_dims(&self, game: &BimatrixGame) -> Result<()> {
        if self.x.len() != game.m() || self.y.len() != game.n() {
            return Err(Error::Dimension(format!(
                "profile is {}x{}, game is {}x{}",
                self.x.len(),
                self.y.len(),
                game.m(),
                game.n()
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for MixedProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "x=({}) y=({})", show(&self.x), show(&self.y))
    }
}

/// Row and column index sets, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Support {
    pub fn new(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Self {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        Support { rows, cols }
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    /// Componentwise inclusion.
    pub fn is_subset_of(&self, other: &Support) -> bool {
        let sub = |a: &[usize], b: &[usize]| a.iter().all(|i| b.binary_search(i).is_ok());
        sub(&self.rows, &other.rows) && sub(&self.cols, &other.cols)
    }
}

/// Indices of the strictly positive coordinates.
pub fn support_of(v: &[Rational]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, p)| p.is_positive())
        .map(|(i, _)| i)
        .collect()
}

/// Expected payoffs `(xᵀAy, xᵀBy)`.
pub fn payoffs(game: &BimatrixGame, p: &MixedProfile) -> Result<(Rational, Rational)> {
    p.check_dims(game)?;
    let ay = game.a.mul_vec(&p.y);
    let by = game.b.mul_vec(&p.y);
    Ok((dot(&p.x, &ay), dot(&p.x, &by)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Row,
    Column,
}

/// A violated best-response condition: `played` is in the support but
/// strategy `better` earns strictly more against the opponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub player: Player,
    pub played: usize,
    pub better: usize,
    pub played_payoff: Rational,
    pub better_payoff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equilibrium,
    NotEquilibrium(Witness),
}

impl Verdict {
    pub fn is_equilibrium(&self) -> bool {
        matches!(self, Verdict::Equilibrium)
    }
}

fn first_violation(
    player: Player,
    weights: &[Rational],
    payoff: &[Rational],
) -> Option<Witness> {
    for (s, w) in weights.iter().enumerate() {
        if !w.is_positive() {
            continue;
        }
        if let Some(j) = (0..payoff.len()).find(|&j| payoff[j] > payoff[s]) {
            return Some(Witness {
                player,
                played: s,
                better: j,
                played_payoff: payoff[s].clone(),
                better_payoff: payoff[j].clone(),
            });
        }
    }
    None
}

/// Checks both best-response conditions exactly. On failure the witness is
/// the first violated `(played, better)` pair, row player first, scanning
/// `played` then `better` in increasing order.
pub fn verify_equilibrium(game: &BimatrixGame, p: &MixedProfile) -> Result<Verdict> {
    p.check_dims(game)?;
    let ay = game.a.mul_vec(&p.y);
    if let Some(w) = first_violation(Player::Row, &p.x, &ay) {
        return Ok(Verdict::NotEquilibrium(w));
    }
    let xb = game.b.vec_mul(&p.x);
    if let Some(w) = first_violation(Player::Column, &p.y, &xb) {
        return Ok(Verdict::NotEquilibrium(w));
    }
    Ok(Verdict::Equilibrium)
}

/// Best improvement available to each player by a pure deviation.
pub fn best_response_gap(game: &BimatrixGame, p: &MixedProfile) -> Result<(Rational, Rational)> {
    p.check_dims(game)?;
    let ay = game.a.mul_vec(&p.y);
    let xb = game.b.vec_mul(&p.x);
    let row_val = dot(&p.x, &ay);
    let col_val = dot(&xb, &p.y);
    let row_best = ay.iter().max().expect("non-empty").clone();
    let col_best = xb.iter().max().expect("non-empty").clone();
    Ok((row_best - row_val, col_best - col_val))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn half() -> Vec<Rational> {
        vec![frac(1, 2), frac(1, 2)]
    }

    fn pennies() -> BimatrixGame {
        BimatrixGame::from_i64(&[&[1, -1], &[-1, 1]], &[&[-1, 1], &[1, -1]])
    }

    #[test]
    fn shape_checks() {
        assert!(BimatrixGame::new(RatMatrix::zeros(2, 2), RatMatrix::zeros(2, 3)).is_err());
        assert!(BimatrixGame::new(RatMatrix::zeros(0, 2), RatMatrix::zeros(0, 2)).is_err());
        let g = pennies();
        let p = MixedProfile::new(vec![int(1)], half()).unwrap();
        assert!(payoffs(&g, &p).is_err());
        assert!(verify_equilibrium(&g, &p).is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(MixedProfile::new(vec![frac(1, 2), frac(1, 3)], vec![int(1)]).is_err());
        assert!(MixedProfile::new(vec![int(2), int(-1)], vec![int(1)]).is_err());
        assert!(MixedProfile::new(vec![], vec![int(1)]).is_err());
    }

    #[test]
    fn payoff_examples() {
        let g = pennies();
        let p = MixedProfile::new(half(), half()).unwrap();
        assert_eq!(payoffs(&g, &p).unwrap(), (int(0), int(0)));

        let g = BimatrixGame::from_i64(&[&[1, 2, 3], &[4, 5, 6]], &[&[7, 8, 9], &[0, -1, -2]]);
        for i in 0..2 {
            for j in 0..3 {
                let p = MixedProfile::pure(2, 3, i, j);
                assert_eq!(
                    payoffs(&g, &p).unwrap(),
                    (g.a()[(i, j)].clone(), g.b()[(i, j)].clone())
                );
            }
        }

        let g = BimatrixGame::new(RatMatrix::zeros(2, 3), RatMatrix::zeros(2, 3)).unwrap();
        let p = MixedProfile::new(half(), vec![frac(1, 3), frac(1, 3), frac(1, 3)]).unwrap();
        assert_eq!(payoffs(&g, &p).unwrap(), (int(0), int(0)));
    }

    #[test]
    fn support_examples() {
        assert_eq!(support_of(&[frac(1, 2), int(0), frac(1, 2)]), vec![0, 2]);
        assert_eq!(support_of(&[int(1), int(0)]), vec![0]);
        assert_eq!(support_of(&[int(0), int(0), int(1)]), vec![2]);
    }

    #[test]
    fn verify_examples() {
        let g = pennies();
        let mixed = MixedProfile::new(half(), half()).unwrap();
        assert!(verify_equilibrium(&g, &mixed).unwrap().is_equilibrium());

        let pd = BimatrixGame::from_i64(&[&[3, 0], &[5, 1]], &[&[3, 5], &[0, 1]]);
        let defect = MixedProfile::pure(2, 2, 1, 1);
        assert!(verify_equilibrium(&pd, &defect).unwrap().is_equilibrium());
        assert!(pd.is_pure_equilibrium(1, 1));
        assert!(!pd.is_pure_equilibrium(0, 0));

        let corner = MixedProfile::pure(2, 2, 0, 0);
        assert_eq!(
            verify_equilibrium(&g, &corner).unwrap(),
            Verdict::NotEquilibrium(Witness {
                player: Player::Column,
                played: 0,
                better: 1,
                played_payoff: int(-1),
                better_payoff: int(1),
            })
        );
    }

    #[test]
    fn gap_examples() {
        let g = pennies();
        let mixed = MixedProfile::new(half(), half()).unwrap();
        assert_eq!(best_response_gap(&g, &mixed).unwrap(), (int(0), int(0)));
        // Row player already earns its best payoff 1 at (0, 0); the column
        // player can move from -1 to 1.
        let corner = MixedProfile::pure(2, 2, 0, 0);
        assert_eq!(best_response_gap(&g, &corner).unwrap(), (int(0), int(2)));

        let z = BimatrixGame::new(RatMatrix::zeros(2, 2), RatMatrix::zeros(2, 2)).unwrap();
        assert_eq!(best_response_gap(&z, &corner).unwrap(), (int(0), int(0)));
    }

    #[test]
    fn support_inclusion() {
        let small = Support::new(vec![1], vec![0]);
        let big = Support::new(vec![1, 0], vec![0, 2]);
        assert!(small.is_subset_of(&big));
        assert!(!big.is_subset_of(&small));
        assert_eq!(big.rows, vec![0, 1]);
    }
}
