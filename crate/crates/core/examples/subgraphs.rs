//! Small subgraphs of the game graph, the candidate space of the sparse search.
//!
//! Run with `cargo run --example subgraphs`.

use std::ops::ControlFlow;

use nash_fpt::generators::{gen_sparse, sparse_values};
use nash_fpt::graph::{branch_count, build_graph, enumerate_subgraphs, for_each_subgraph, max_degree};

fn main() -> nash_fpt::Result<()> {
    let game = gen_sparse(6, 2, &sparse_values(), 3)?;
    let g = build_graph(&game);
    println!(
        "{} rows, {} columns, {} edges, max degree {}",
        g.rows(),
        g.cols(),
        g.edge_count(),
        max_degree(&g)
    );

    for t in 2..=4 {
        for c in 1..=2 {
            let found = enumerate_subgraphs(&g, t, c);
            println!(
                "t={t} c={c}: {:>3} vertex sets from {:>5} branching leaves",
                found.len(),
                branch_count(&g, t, c)
            );
        }
    }

    // Candidates are split into rows and columns; stop at the first one that
    // has two of each.
    let stats = for_each_subgraph(&g, 4, 1, |cand| {
        let (rows, cols) = (cand.rows(&g), cand.cols(&g));
        if rows.len() == 2 {
            println!("first balanced connected set: rows {rows:?}, columns {cols:?}");
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    println!("stopped after {} candidates", stats.emitted);
    Ok(())
}
