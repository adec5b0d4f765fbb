/// Work counters reported by every solver.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Support-feasibility checks (each may run up to two linear programs).
    pub lp_calls: u64,
    /// Candidates examined: subgraphs, patterns or support guesses.
    pub candidates: u64,
    /// Leaves of subgraph branching trees.
    pub branch_leaves: u64,
}

impl SolveStats {
    pub fn absorb(&mut self, other: SolveStats) {
        self.lp_calls += other.lp_calls;
        self.candidates += other.candidates;
        self.branch_leaves += other.branch_leaves;
    }
}
