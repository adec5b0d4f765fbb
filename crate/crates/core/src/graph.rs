//! The bipartite graph of a game and bounded-degree subgraph enumeration.
//!
//! Vertices `0..m` are row strategies and `m..m+n` are column strategies. An
//! edge joins row `i` and column `j` iff `A[i][j] != 0` or `B[i][j] != 0`.

use std::collections::{HashSet, VecDeque};
use std::ops::ControlFlow;

use num_traits::Zero;

use crate::game::BimatrixGame;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Row(usize),
    Col(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameGraph {
    m: usize,
    n: usize,
    // adj[v] is sorted; row vertices list column vertices and vice versa
    adj: Vec<Vec<usize>>,
}

impl GameGraph {
    /// Bipartite graph on `m` row and `n` column vertices with the given
    /// `(row, col)` edges. Duplicate edges are ignored.
    pub fn from_edges(m: usize, n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); m + n];
        for (i, j) in edges {
            assert!(i < m && j < n, "edge ({i}, {j}) out of range");
            adj[i].push(m + j);
            adj[m + j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        GameGraph { m, n, adj }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.m + self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.m].iter().map(Vec::len).sum()
    }

    pub fn vertex(&self, v: usize) -> Vertex {
        if v < self.m {
            Vertex::Row(v)
        } else {
            Vertex::Col(v - self.m)
        }
    }

    pub fn id(&self, v: Vertex) -> usize {
        match v {
            Vertex::Row(i) => i,
            Vertex::Col(j) => self.m + j,
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&(self.m + j)).is_ok()
    }

    /// Column indices adjacent to row `i`.
    pub fn row_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().map(move |&v| v - self.m)
    }

    /// Row indices adjacent to column `j`.
    pub fn col_neighbors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[self.m + j].iter().copied()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.m)
            .flat_map(|i| self.row_neighbors(i).map(move |j| (i, j)))
            .collect()
    }

    /// Closed neighbourhood `N[S]` of a vertex set, sorted.
    pub fn closed_neighborhood(&self, vertices: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = vertices
            .iter()
            .flat_map(|&v| std::iter::once(v).chain(self.adj[v].iter().copied()))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Number of connected components of the subgraph induced by `vertices`.
    pub fn induced_components(&self, vertices: &[usize]) -> usize {
        let mut inside = vec![false; self.vertex_count()];
        for &v in vertices {
            inside[v] = true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut count = 0;
        for &s in vertices {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if inside[u] && !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        count
    }
}

pub fn build_graph(game: &BimatrixGame) -> GameGraph {
    let (m, n) = (game.m(), game.n());
    let edges = (0..m).flat_map(|i| {
        (0..n)
            .filter(move |&j| !game.a()[(i, j)].is_zero() || !game.b()[(i, j)].is_zero())
            .map(move |j| (i, j))
    });
    GameGraph::from_edges(m, n, edges)
}

pub fn max_degree(g: &GameGraph) -> usize {
    g.adj.iter().map(Vec::len).max().unwrap_or(0)
}

/// A vertex set whose induced subgraph has `components` connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphCandidate {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    pub components: usize,
    /// `component_of[k]` is the component (in discovery order) of `vertices[k]`.
    pub component_of: Vec<usize>,
}

impl SubgraphCandidate {
    /// Row strategies in the candidate.
    pub fn rows(&self, g: &GameGraph) -> Vec<usize> {
        self.vertices.iter().copied().filter(|&v| v < g.m).collect()
    }

    /// Column strategies in the candidate.
    pub fn cols(&self, g: &GameGraph) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|&&v| v >= g.m)
            .map(|&v| v - g.m)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    /// Leaves of the branching tree that were visited.
    pub leaves: u64,
    /// Candidates handed to the visitor.
    pub emitted: u64,
    /// Vertex sets suppressed as duplicates.
    pub duplicates: u64,
}

struct Brancher<'g, F> {
    g: &'g GameGraph,
    t: usize,
    c: usize,
    in_set: Vec<bool>,
    forbidden: Vec<bool>,
    order: Vec<usize>,
    comp: Vec<usize>,
    starts: Vec<usize>,
    active: VecDeque<usize>,
    cursor: Vec<usize>,
    seen: HashSet<Vec<usize>>,
    stats: EnumerationStats,
    visit: F,
}

impl<F> Brancher<'_, F>
where
    F: FnMut(&SubgraphCandidate) -> ControlFlow<()>,
{
    fn eligible(&self, u: usize) -> bool {
        !self.in_set[u] && !self.forbidden[u] && u >= *self.starts.last().expect("started")
    }

    fn select(&mut self, v: usize) {
        self.in_set[v] = true;
        self.order.push(v);
        self.comp.push(self.starts.len() - 1);
        self.active.push_back(v);
        self.cursor[v] = 0;
    }

    fn unselect(&mut self, v: usize) {
        self.in_set[v] = false;
        self.order.pop();
        self.comp.pop();
        let back = self.active.pop_back();
        debug_assert_eq!(back, Some(v));
    }

    fn forbid(&mut self, v: usize, log: &mut Vec<usize>) {
        if !self.forbidden[v] {
            self.forbidden[v] = true;
            log.push(v);
        }
    }

    fn leaf(&mut self) -> ControlFlow<()> {
        self.stats.leaves += 1;
        if self.order.len() != self.t || self.starts.len() != self.c {
            return ControlFlow::Continue(());
        }
        let mut pairs: Vec<(usize, usize)> = self
            .order
            .iter()
            .copied()
            .zip(self.comp.iter().copied())
            .collect();
        pairs.sort_unstable();
        let vertices: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        if !self.seen.insert(vertices.clone()) {
            self.stats.duplicates += 1;
            return ControlFlow::Continue(());
        }
        self.stats.emitted += 1;
        let cand = SubgraphCandidate {
            vertices,
            components: self.c,
            component_of: pairs.iter().map(|p| p.1).collect(),
        };
        (self.visit)(&cand)
    }

    fn start_component(&mut self, v: usize) -> ControlFlow<()> {
        self.starts.push(v);
        self.select(v);
        let flow = self.step();
        self.unselect(v);
        self.starts.pop();
        flow
    }

    fn step(&mut self) -> ControlFlow<()> {
        if self.order.len() == self.t {
            return self.leaf();
        }
        let Some(&head) = self.active.front() else {
            if self.starts.len() == self.c {
                return self.leaf();
            }
            // New component: its first vertex is its minimum, and components
            // are discovered in increasing order of that minimum.
            let lo = self.starts.last().map_or(0, |s| s + 1);
            let mut any = false;
            for v in lo..self.g.vertex_count() {
                if self.in_set[v] || self.forbidden[v] {
                    continue;
                }
                any = true;
                self.start_component(v)?;
            }
            if !any {
                return self.leaf();
            }
            return ControlFlow::Continue(());
        };

        let g = self.g;
        let nbrs = &g.adj[head];
        let from = self.cursor[head];

        // Event: select one of head's neighbours and make it active. Eligible
        // neighbours skipped over are never selected in this branch.
        let mut skipped = Vec::new();
        for p in from..nbrs.len() {
            let u = nbrs[p];
            if !self.eligible(u) {
                continue;
            }
            self.cursor[head] = p + 1;
            self.select(u);
            let flow = self.step();
            self.unselect(u);
            if flow.is_break() {
                self.cursor[head] = from;
                for v in skipped {
                    self.forbidden[v] = false;
                }
                return flow;
            }
            self.forbid(u, &mut skipped);
        }

        // Event: set head passive; its unselected neighbours stay outside.
        self.cursor[head] = nbrs.len();
        self.active.pop_front();
        let flow = self.step();
        self.active.push_front(head);
        self.cursor[head] = from;
        for v in skipped {
            self.forbidden[v] = false;
        }
        flow
    }
}

/// Streams every vertex set of size `t` whose induced subgraph has exactly
/// `c` connected components, each exactly once, in a deterministic order.
///
/// This is the active/passive branching: the least recently added active
/// vertex either selects a neighbour (which becomes active) or turns
/// passive; when no active vertex remains and fewer than `c` components
/// exist, a new start vertex opens the next component. The visitor can stop
/// the enumeration early by returning `ControlFlow::Break`.
pub fn for_each_subgraph<F>(g: &GameGraph, t: usize, c: usize, visit: F) -> EnumerationStats
where
    F: FnMut(&SubgraphCandidate) -> ControlFlow<()>,
{
    assert!(t >= 1 && c >= 1, "t and c must be positive");
    let nv = g.vertex_count();
    let mut b = Brancher {
        g,
        t,
        c,
        in_set: vec![false; nv],
        forbidden: vec![false; nv],
        order: Vec::with_capacity(t),
        comp: Vec::with_capacity(t),
        starts: Vec::with_capacity(c),
        active: VecDeque::new(),
        cursor: vec![0; nv],
        seen: HashSet::new(),
        stats: EnumerationStats::default(),
        visit,
    };
    if c <= t {
        let _ = b.step();
    }
    b.stats
}

pub fn enumerate_subgraphs(g: &GameGraph, t: usize, c: usize) -> Vec<SubgraphCandidate> {
    let mut out = Vec::new();
    for_each_subgraph(g, t, c, |cand| {
        out.push(cand.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Leaves visited by the branching tree of a full enumeration.
pub fn branch_count(g: &GameGraph, t: usize, c: usize) -> u64 {
    for_each_subgraph(g, t, c, |_| ControlFlow::Continue(())).leaves
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::RatMatrix;

    fn sets(cands: &[SubgraphCandidate]) -> Vec<Vec<usize>> {
        let mut v: Vec<_> = cands.iter().map(|c| c.vertices.clone()).collect();
        v.sort();
        v
    }

    #[test]
    fn graph_of_identity_game() {
        let id = RatMatrix::identity(2);
        let g = build_graph(&BimatrixGame::new(id.clone(), id).unwrap());
        assert_eq!(g.edges(), vec![(0, 0), (1, 1)]);
        assert_eq!(max_degree(&g), 1);
    }

    #[test]
    fn graph_of_zero_game() {
        let z = RatMatrix::zeros(2, 3);
        let g = build_graph(&BimatrixGame::new(z.clone(), z).unwrap());
        assert!(g.edges().is_empty());
        assert_eq!(max_degree(&g), 0);
    }

    #[test]
    fn graph_is_union_of_nonzero_patterns() {
        let game = BimatrixGame::from_i64(&[&[1, 0], &[0, 0]], &[&[0, 0], &[0, 1]]);
        assert_eq!(build_graph(&game).edges(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn path_pairs() {
        // r0 - c0 - r1 is a path a-b-c
        let g = GameGraph::from_edges(2, 1, [(0, 0), (1, 0)]);
        let got = sets(&enumerate_subgraphs(&g, 2, 1));
        assert_eq!(got, vec![vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn singletons() {
        let g = GameGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 1)]);
        let got = sets(&enumerate_subgraphs(&g, 1, 1));
        assert_eq!(got, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn four_cycle_diagonals() {
        let g = GameGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]);
        let got = sets(&enumerate_subgraphs(&g, 2, 2));
        // {r0, r1} and {c0, c1}
        assert_eq!(got, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(enumerate_subgraphs(&g, 2, 1).len(), 4);
    }

    #[test]
    fn single_vertex_branch_count() {
        let g = GameGraph::from_edges(1, 0, []);
        assert_eq!(branch_count(&g, 1, 1), 1);
    }

    #[test]
    fn star_branch_count() {
        // K_{1,3}: centre r0, leaves c0..c2. Hand trace: starting at the
        // centre, selecting each of the three leaves ends a branch (3), and
        // turning the centre passive ends one more (1). Starting at c0, c1 or
        // c2 the centre has a smaller index, so each start turns passive at
        // once and ends a branch (3).
        let g = GameGraph::from_edges(1, 3, [(0, 0), (0, 1), (0, 2)]);
        let count = branch_count(&g, 2, 1);
        assert_eq!(count, 7);
        assert!(count <= 4u64.pow(4) * 4);
        assert_eq!(enumerate_subgraphs(&g, 2, 1).len(), 3);
    }

    #[test]
    fn components_are_exact() {
        let g = GameGraph::from_edges(3, 3, [(0, 0), (1, 1), (2, 2), (0, 1)]);
        for c in 1..=3 {
            for cand in enumerate_subgraphs(&g, 3, c) {
                assert_eq!(g.induced_components(&cand.vertices), c);
                let distinct: HashSet<_> = cand.component_of.iter().collect();
                assert_eq!(distinct.len(), c);
            }
        }
    }

    #[test]
    fn early_stop() {
        let g = GameGraph::from_edges(3, 3, [(0, 0), (1, 1), (2, 2)]);
        let mut seen = 0;
        let stats = for_each_subgraph(&g, 1, 1, |_| {
            seen += 1;
            if seen == 2 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(seen, 2);
        assert_eq!(stats.emitted, 2);
    }
}
