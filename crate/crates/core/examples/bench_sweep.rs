//! A small benchmark sweep written as CSV to stdout.
//!
//! Run with `cargo run --release --example bench_sweep`.

use nash_fpt::bench::{run_bench, write_csv, BenchConfig, Family, FamilyParams};
use nash_fpt::Algorithm;

fn main() -> nash_fpt::Result<()> {
    let mut rows = Vec::new();
    for n in [10, 20, 60] {
        let cfg = BenchConfig {
            params: FamilyParams {
                family: Family::Sparse,
                n,
                rows: 0,
                l: 2,
                density: 0.0,
            },
            algorithms: vec![Algorithm::Sparse, Algorithm::Baseline],
            k: 2,
            count: 3,
            seed: 100,
            baseline_limit: 50_000,
        };
        rows.extend(run_bench(&cfg)?);
    }
    write_csv(&rows, std::io::stdout().lock())
}
