//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{RatMatrix, Rational};

/// Solution set of `M x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// The system is inconsistent.
    Inconsistent { rank: usize },
    /// Exactly one solution (full column rank).
    Unique { rank: usize, x: Vec<Rational> },
    /// `particular + span(null_basis)`; free variables of the particular
    /// solution are set to zero.
    Parametric {
        rank: usize,
        particular: Vec<Rational>,
        null_basis: Vec<Vec<Rational>>,
    },
}

impl LinearSolution {
    pub fn rank(&self) -> usize {
        match self {
            LinearSolution::Inconsistent { rank }
            | LinearSolution::Unique { rank, .. }
            | LinearSolution::Parametric { rank, .. } => *rank,
        }
    }

    /// Some solution, if one exists.
    pub fn particular(&self) -> Option<&[Rational]> {
        match self {
            LinearSolution::Inconsistent { .. } => None,
            LinearSolution::Unique { x, .. } => Some(x),
            LinearSolution::Parametric { particular, .. } => Some(particular),
        }
    }
}

/// Row-reduces `[M | b]` to reduced echelon form with lowest-index pivots.
pub fn solve_linear_system(m: &RatMatrix, b: &[Rational]) -> Result<LinearSolution> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = Rational::one() / &aug[r][c];
        for v in aug[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = aug[r].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();

    if aug[rank..].iter().any(|row| !row[cols].is_zero()) {
        return Ok(LinearSolution::Inconsistent { rank });
    }

    let mut particular = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = aug[i][cols].clone();
    }
    if rank == cols {
        return Ok(LinearSolution::Unique { rank, x: particular });
    }

    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let null_basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -aug[i][f].clone();
            }
            v
        })
        .collect();
    Ok(LinearSolution::Parametric {
        rank,
        particular,
        null_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn identity_system() {
        let s = solve_linear_system(&RatMatrix::identity(2), &[int(3), int(5)]).unwrap();
        assert_eq!(s, LinearSolution::Unique { rank: 2, x: vec![int(3), int(5)] });
    }

    #[test]
    fn parallel_contradictory_rows() {
        let m = RatMatrix::from_i64(&[&[1, 1], &[2, 2]]);
        let s = solve_linear_system(&m, &[int(1), int(3)]).unwrap();
        assert_eq!(s, LinearSolution::Inconsistent { rank: 1 });
        assert!(s.particular().is_none());
    }

    #[test]
    fn rank_one_underdetermined() {
        let m = RatMatrix::from_i64(&[&[1, 1]]);
        let s = solve_linear_system(&m, &[int(1)]).unwrap();
        assert_eq!(
            s,
            LinearSolution::Parametric {
                rank: 1,
                particular: vec![int(1), int(0)],
                null_basis: vec![vec![int(-1), int(1)]],
            }
        );
    }

    #[test]
    fn rhs_length_checked() {
        assert!(solve_linear_system(&RatMatrix::identity(2), &[int(1)]).is_err());
    }
}
