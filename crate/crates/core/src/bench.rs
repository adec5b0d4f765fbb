//! Seeded benchmark sweeps with a CSV report.
//!
//! Each instance gets one row per algorithm. The baseline is only executed
//! when its worst-case support count is below a limit; otherwise the row
//! carries the projected count with `executed = false`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::BimatrixGame;
use crate::generators::{gen_alphabet, gen_sparse, gen_unbalanced, gen_winlose, sparse_values};
use crate::solve::{recheck, run_solver, Algorithm};
use crate::support::baseline_lp_calls;

#[derive(Clone, Copy, Debug, PartialEq, clap::ValueEnum)]
pub enum Family {
    Sparse,
    Unbalanced,
    Winlose,
    Alphabet,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sparse => "sparse",
            Family::Unbalanced => "unbalanced",
            Family::Winlose => "winlose",
            Family::Alphabet => "alphabet",
        }
    }
}

/// Parameters of a generated instance. Unused fields are ignored by the
/// family they do not apply to.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub family: Family,
    /// Columns (and rows, except for the unbalanced family).
    pub n: usize,
    /// Row count of the unbalanced family.
    pub rows: usize,
    /// Sparsity or alphabet size.
    pub l: usize,
    pub density: f64,
}

impl FamilyParams {
    pub fn generate(&self, seed: u64) -> Result<BimatrixGame> {
        match self.family {
            Family::Sparse => gen_sparse(self.n, self.l, &sparse_values(), seed),
            Family::Unbalanced => gen_unbalanced(self.rows, self.n, self.l, seed),
            Family::Winlose => gen_winlose(self.n, self.density, seed),
            Family::Alphabet => gen_alphabet(self.n, self.n, self.l, seed),
        }
    }

    pub fn instance_name(&self, seed: u64) -> String {
        match self.family {
            Family::Sparse => format!("sparse-n{}-l{}-s{seed}", self.n, self.l),
            Family::Unbalanced => format!("unbalanced-k{}-n{}-l{}-s{seed}", self.rows, self.n, self.l),
            Family::Winlose => format!("winlose-n{}-d{}-s{seed}", self.n, self.density),
            Family::Alphabet => format!("alphabet-n{}-l{}-s{seed}", self.n, self.l),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub family: String,
    pub algorithm: String,
    pub executed: bool,
    pub found: Option<bool>,
    pub k1: Option<usize>,
    pub k2: Option<usize>,
    pub wall_ms: Option<f64>,
    pub lp_calls: u128,
    pub candidates: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub params: FamilyParams,
    pub algorithms: Vec<Algorithm>,
    pub k: usize,
    pub count: u64,
    pub seed: u64,
    /// The baseline runs only when its projected support count is at most this.
    pub baseline_limit: u128,
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for seed in cfg.seed..cfg.seed + cfg.count {
        let game = cfg.params.generate(seed)?;
        let instance = cfg.params.instance_name(seed);
        for &alg in &cfg.algorithms {
            let projected = baseline_lp_calls(game.m(), game.n(), cfg.k);
            if alg == Algorithm::Baseline && projected > cfg.baseline_limit {
                rows.push(BenchRow {
                    instance: instance.clone(),
                    family: cfg.params.family.name().into(),
                    algorithm: alg.name().into(),
                    executed: false,
                    found: None,
                    k1: None,
                    k2: None,
                    wall_ms: None,
                    lp_calls: projected,
                    candidates: None,
                });
                continue;
            }
            let out = run_solver(alg, &game, cfg.k)?;
            let sizes = out.profile.as_ref().map(|p| p.support().sizes());
            if let Some(p) = &out.profile {
                recheck(&game, p).map_err(|v| {
                    Error::InvalidInstance(format!("{alg} returned a non-equilibrium on {instance}: {v:?}"))
                })?;
            }
            rows.push(BenchRow {
                instance: instance.clone(),
                family: cfg.params.family.name().into(),
                algorithm: alg.name().into(),
                executed: true,
                found: Some(out.profile.is_some()),
                k1: sizes.map(|s| s.0),
                k2: sizes.map(|s| s.1),
                wall_ms: Some((out.elapsed.as_secs_f64() * 1e6).round() / 1e3),
                lp_calls: out.stats.lp_calls as u128,
                candidates: Some(out.stats.candidates),
            });
        }
    }
    Ok(rows)
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_schema_and_projection() {
        let cfg = BenchConfig {
            params: FamilyParams {
                family: Family::Sparse,
                n: 12,
                rows: 0,
                l: 2,
                density: 0.0,
            },
            algorithms: vec![Algorithm::Sparse, Algorithm::Baseline],
            k: 2,
            count: 2,
            seed: 7,
            baseline_limit: 10,
        };
        let rows = run_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows[0].executed);
        assert!(!rows[1].executed);
        assert_eq!(rows[1].lp_calls, 78 * 78);
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "instance,family,algorithm,executed,found,k1,k2,wall_ms,lp_calls,candidates\n"
        ));
        assert!(text.contains("sparse-n12-l2-s7,sparse,baseline,false,,,,,6084,"));
    }
}
