//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 seeded with `ChaCha8Rng::seed_from_u64`,
//! so a `(parameters, seed)` pair always yields the same game.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::BimatrixGame;
use crate::rational::{int, RatMatrix, Rational};

/// Nonzero values placed by [`gen_sparse`] unless told otherwise.
pub const SPARSE_VALUES: [i64; 4] = [-2, -1, 1, 2];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameters(msg.into()))
    }
}

/// One `n × n` matrix with at most `l` nonzeros per row and column. Rows are
/// filled in order, each picking up to `l` columns whose counters still
/// have room.
fn sparse_matrix(n: usize, l: usize, values: &[Rational], rng: &mut ChaCha8Rng) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    let mut col_count = vec![0usize; n];
    for i in 0..n {
        let mut open: Vec<usize> = (0..n).filter(|&j| col_count[j] < l).collect();
        open.shuffle(rng);
        for &j in open.iter().take(l) {
            m[(i, j)] = values[rng.gen_range(0..values.len())].clone();
            col_count[j] += 1;
        }
    }
    m
}

/// `n × n` game where both matrices are `l`-sparse, nonzeros drawn
/// uniformly from `values`.
pub fn gen_sparse(n: usize, l: usize, values: &[Rational], seed: u64) -> Result<BimatrixGame> {
    check(n >= 1, "n must be positive")?;
    check((1..=n).contains(&l), "sparsity must lie in 1..=n")?;
    check(!values.is_empty(), "value set must be non-empty")?;
    let mut r = rng(seed);
    let a = sparse_matrix(n, l, values, &mut r);
    let b = sparse_matrix(n, l, values, &mut r);
    BimatrixGame::new(a, b)
}

pub fn sparse_values() -> Vec<Rational> {
    SPARSE_VALUES.iter().map(|&v| int(v)).collect()
}

/// `k × n` non-negative game with entries in `{0, …, l-1}`.
pub fn gen_unbalanced(k: usize, n: usize, l: usize, seed: u64) -> Result<BimatrixGame> {
    check(k >= 1 && n >= 1, "dimensions must be positive")?;
    check(l >= 1, "alphabet size must be positive")?;
    gen_alphabet(k, n, l, seed)
}

/// `m × n` game with entries drawn uniformly from `{0, …, l-1}`.
pub fn gen_alphabet(m: usize, n: usize, l: usize, seed: u64) -> Result<BimatrixGame> {
    let values: Vec<Rational> = (0..l as i64).map(int).collect();
    gen_dense(m, n, &values, seed)
}

/// `n × n` game with 0/1 entries, each 1 with probability `density`.
pub fn gen_winlose(n: usize, density: f64, seed: u64) -> Result<BimatrixGame> {
    check(n >= 1, "n must be positive")?;
    check((0.0..=1.0).contains(&density), "density must lie in [0, 1]")?;
    let mut r = rng(seed);
    let mut draw = || {
        let data = (0..n * n).map(|_| int(r.gen_bool(density) as i64)).collect();
        RatMatrix::from_flat(n, n, data).expect("sized")
    };
    let a = draw();
    let b = draw();
    BimatrixGame::new(a, b)
}

/// `m × n` game with every entry drawn uniformly from `values`.
pub fn gen_dense(m: usize, n: usize, values: &[Rational], seed: u64) -> Result<BimatrixGame> {
    check(m >= 1 && n >= 1, "dimensions must be positive")?;
    check(!values.is_empty(), "value set must be non-empty")?;
    let mut r = rng(seed);
    let mut draw = || {
        let data = (0..m * n).map(|_| values[r.gen_range(0..values.len())].clone()).collect();
        RatMatrix::from_flat(m, n, data).expect("sized")
    };
    let a = draw();
    let b = draw();
    BimatrixGame::new(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, max_degree};
    use crate::sparse::validate_sparsity;

    #[test]
    fn sparse_bounds() {
        let g = gen_sparse(4, 1, &sparse_values(), 1).unwrap();
        assert!(validate_sparsity(&g) <= 1);
        for seed in 0..20 {
            let g = gen_sparse(30, 3, &sparse_values(), seed).unwrap();
            assert!(validate_sparsity(&g) <= 3);
            assert!(max_degree(&build_graph(&g)) <= 6);
        }
        let dense = gen_sparse(5, 5, &sparse_values(), 3).unwrap();
        assert_eq!(validate_sparsity(&dense), 5);
        assert!(gen_sparse(3, 4, &sparse_values(), 0).is_err());
    }

    #[test]
    fn determinism() {
        let a = gen_sparse(100, 3, &sparse_values(), 42).unwrap();
        let b = gen_sparse(100, 3, &sparse_values(), 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_sparse(100, 3, &sparse_values(), 43).unwrap());
        assert_eq!(gen_unbalanced(2, 10, 3, 5).unwrap(), gen_unbalanced(2, 10, 3, 5).unwrap());
        assert_eq!(gen_winlose(6, 0.5, 9).unwrap(), gen_winlose(6, 0.5, 9).unwrap());
    }

    #[test]
    fn unbalanced_shape() {
        let g = gen_unbalanced(2, 10, 2, 7).unwrap();
        assert_eq!((g.m(), g.n()), (2, 10));
        assert!(g.is_nonnegative());
        let mut vals: Vec<_> = g.a().as_slice().to_vec();
        vals.sort();
        vals.dedup();
        assert!(vals.len() <= 2);
    }

    #[test]
    fn winlose_extremes() {
        let z = gen_winlose(4, 0.0, 1).unwrap();
        assert!(z.a().is_zero() && z.b().is_zero());
        let o = gen_winlose(4, 1.0, 1).unwrap();
        assert!(o.a().as_slice().iter().all(|v| *v == int(1)));
        let h = gen_winlose(6, 0.5, 2).unwrap();
        assert!(h.a().as_slice().iter().chain(h.b().as_slice()).all(|v| *v == int(0) || *v == int(1)));
        assert!(gen_winlose(3, 1.5, 0).is_err());
    }
}
