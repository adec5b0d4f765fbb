//! Exact two-phase simplex over the rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, ties in the
//! ratio test broken by lowest-index basic variable), so every run terminates
//! and the returned basic solution is reproducible.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// `maximize objective·x` subject to the constraints and per-variable lower
/// bounds (`None` means the variable is free).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub lower_bounds: Vec<Option<Rational>>,
}

impl LinearProgram {
    /// A program over `n` variables, all bounded below by zero, with a zero
    /// objective (a pure feasibility problem until one is set).
    pub fn nonnegative(n: usize) -> Self {
        LinearProgram {
            objective: vec![Rational::zero(); n],
            constraints: Vec::new(),
            lower_bounds: vec![Some(Rational::zero()); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
    }

    fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if self.lower_bounds.len() != n {
            return Err(Error::Dimension(format!(
                "{} lower bounds for {n} variables",
                self.lower_bounds.len()
            )));
        }
        if let Some((i, c)) = self
            .constraints
            .iter()
            .enumerate()
            .find(|(_, c)| c.coeffs.len() != n)
        {
            return Err(Error::Dimension(format!(
                "constraint {i} has width {}, objective has {n}",
                c.coeffs.len()
            )));
        }
        Ok(())
    }

    /// True iff `x` satisfies every constraint and bound exactly.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self
                .lower_bounds
                .iter()
                .zip(x)
                .all(|(lb, v)| lb.as_ref().is_none_or(|l| v >= l))
            && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Present iff `status == Optimal`.
    pub solution: Option<Vec<Rational>>,
    /// Present iff `status == Optimal`.
    pub objective: Option<Rational>,
    /// Pivots performed across both phases.
    pub pivots: usize,
}

impl LpOutcome {
    fn without_solution(status: LpStatus, pivots: usize) -> Self {
        LpOutcome {
            status,
            solution: None,
            objective: None,
            pivots,
        }
    }
}

/// How an original variable maps onto standard-form columns.
enum VarMap {
    /// `x = lower + col`
    Shifted { col: usize, lower: Rational },
    /// `x = pos - neg`
    Split { pos: usize, neg: usize },
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// `z_j - c_j` for every column; last entry is the objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns that may enter the basis.
    allowed: Vec<bool>,
    pivots: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width();
        let inv = Rational::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let prow = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for j in 0..=w {
                if !prow[j].is_zero() {
                    row[j] -= &f * &prow[j];
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = prow;
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Primal simplex with Bland's rule on the current objective row.
    fn run(&mut self) -> Phase {
        let w = self.width();
        loop {
            let Some(enter) = (0..w).find(|&j| self.allowed[j] && self.obj[j].is_negative())
            else {
                return Phase::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Phase::Unbounded,
            }
        }
    }

    /// Rebuilds the objective row for `maximize cost·x` under the current basis.
    fn set_objective(&mut self, cost: &[Rational]) {
        let w = self.width();
        let mut obj: Vec<Rational> = (0..w).map(|j| -cost[j].clone()).collect();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                if !row[j].is_zero() {
                    obj[j] += cb * &row[j];
                }
            }
        }
        self.obj = obj;
    }
}

/// Solves `lp` exactly. The only error is a structural one (mismatched
/// widths); infeasibility and unboundedness are reported in the outcome.
pub fn lp_solve(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.num_vars();

    // Standard form: every column is >= 0.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0;
    for lb in &lp.lower_bounds {
        match lb {
            Some(l) => {
                maps.push(VarMap::Shifted {
                    col: ncols,
                    lower: l.clone(),
                });
                ncols += 1;
            }
            None => {
                maps.push(VarMap::Split {
                    pos: ncols,
                    neg: ncols + 1,
                });
                ncols += 2;
            }
        }
    }
    let structural = ncols;

    struct StdRow {
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    }
    let mut std_rows = Vec::with_capacity(lp.constraints.len());
    for c in &lp.constraints {
        let mut coeffs = vec![Rational::zero(); structural];
        let mut rhs = c.rhs.clone();
        for (a, map) in c.coeffs.iter().zip(&maps) {
            if a.is_zero() {
                continue;
            }
            match map {
                VarMap::Shifted { col, lower } => {
                    coeffs[*col] = a.clone();
                    if !lower.is_zero() {
                        rhs -= a * lower;
                    }
                }
                VarMap::Split { pos, neg } => {
                    coeffs[*pos] = a.clone();
                    coeffs[*neg] = -a.clone();
                }
            }
        }
        let mut relation = c.relation;
        if rhs.is_negative() {
            for v in coeffs.iter_mut() {
                *v = -v.clone();
            }
            rhs = -rhs;
            relation = match relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        std_rows.push(StdRow {
            coeffs,
            relation,
            rhs,
        });
    }

    // Column layout: structural | slack/surplus | artificial | rhs
    let n_slack = std_rows
        .iter()
        .filter(|r| r.relation != Relation::Eq)
        .count();
    let n_art = std_rows
        .iter()
        .filter(|r| r.relation != Relation::Le)
        .count();
    let width = structural + n_slack + n_art;
    let first_art = structural + n_slack;

    let mut rows = Vec::with_capacity(std_rows.len());
    let mut basis = Vec::with_capacity(std_rows.len());
    let (mut s, mut a) = (structural, first_art);
    for r in std_rows {
        let mut row = r.coeffs;
        row.resize(width + 1, Rational::zero());
        row[width] = r.rhs;
        match r.relation {
            Relation::Le => {
                row[s] = Rational::one();
                basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = -Rational::one();
                s += 1;
                row[a] = Rational::one();
                basis.push(a);
                a += 1;
            }
            Relation::Eq => {
                row[a] = Rational::one();
                basis.push(a);
                a += 1;
            }
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        obj: vec![Rational::zero(); width + 1],
        basis,
        allowed: vec![true; width],
        pivots: 0,
    };

    if n_art > 0 {
        let mut cost = vec![Rational::zero(); width];
        for c in cost.iter_mut().skip(first_art) {
            *c = -Rational::one();
        }
        t.set_objective(&cost);
        // Phase one is bounded above by zero.
        let _ = t.run();
        if t.obj[width].is_negative() {
            return Ok(LpOutcome::without_solution(LpStatus::Infeasible, t.pivots));
        }
        // Drive remaining (zero-valued) artificials out of the basis, dropping
        // rows that turn out to be redundant.
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= first_art {
                match (0..first_art).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(j) => t.pivot(r, j),
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for allowed in t.allowed.iter_mut().skip(first_art) {
            *allowed = false;
        }
    }

    let mut cost = vec![Rational::zero(); width];
    for (c, map) in lp.objective.iter().zip(&maps) {
        match map {
            VarMap::Shifted { col, .. } => cost[*col] = c.clone(),
            VarMap::Split { pos, neg } => {
                cost[*pos] = c.clone();
                cost[*neg] = -c.clone();
            }
        }
    }
    t.set_objective(&cost);
    if let Phase::Unbounded = t.run() {
        return Ok(LpOutcome::without_solution(LpStatus::Unbounded, t.pivots));
    }

    let mut std_x = vec![Rational::zero(); width];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        std_x[b] = row[width].clone();
    }
    let solution: Vec<Rational> = maps
        .iter()
        .map(|m| match m {
            VarMap::Shifted { col, lower } => lower + &std_x[*col],
            VarMap::Split { pos, neg } => &std_x[*pos] - &std_x[*neg],
        })
        .collect();
    let objective = dot(&lp.objective, &solution);
    debug_assert!(lp.is_feasible_point(&solution));
    Ok(LpOutcome {
        status: LpStatus::Optimal,
        solution: Some(solution),
        objective: Some(objective),
        pivots: t.pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn single_tight_bound() {
        let mut lp = LinearProgram::nonnegative(1);
        lp.objective = ints(&[1]);
        lp.add(ints(&[1]), Relation::Le, int(1));
        lp.add(ints(&[1]), Relation::Ge, int(0));
        let out = lp_solve(&lp).unwrap();
        assert_eq!(out.status, LpStatus::Optimal);
        assert_eq!(out.solution.unwrap(), ints(&[1]));
        assert_eq!(out.objective.unwrap(), int(1));
    }

    #[test]
    fn contradictory_equalities() {
        let mut lp = LinearProgram::nonnegative(1);
        lp.add(ints(&[1]), Relation::Eq, int(1));
        lp.add(ints(&[1]), Relation::Eq, int(2));
        let out = lp_solve(&lp).unwrap();
        assert_eq!(out.status, LpStatus::Infeasible);
        assert!(out.solution.is_none() && out.objective.is_none());
    }

    #[test]
    fn simplex_on_one_face() {
        let mut lp = LinearProgram::nonnegative(2);
        lp.objective = ints(&[1, 1]);
        lp.add(ints(&[1, 1]), Relation::Le, int(1));
        let out = lp_solve(&lp).unwrap();
        assert_eq!(out.objective.unwrap(), int(1));
        // Bland's rule enters x1 first.
        assert_eq!(out.solution.unwrap(), ints(&[1, 0]));
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LinearProgram::nonnegative(2);
        lp.objective = ints(&[1, 0]);
        lp.add(ints(&[1, -1]), Relation::Le, int(1));
        assert_eq!(lp_solve(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn free_and_shifted_variables() {
        // maximize -v s.t. v >= 3/2 - x, v >= x - 1/2, x >= 1/4, v free
        let mut lp = LinearProgram::nonnegative(2);
        lp.lower_bounds = vec![Some(frac(1, 4)), None];
        lp.objective = ints(&[0, -1]);
        lp.add(ints(&[1, 1]), Relation::Ge, frac(3, 2));
        lp.add(ints(&[-1, 1]), Relation::Ge, frac(-1, 2));
        let out = lp_solve(&lp).unwrap();
        assert_eq!(out.solution.unwrap(), vec![int(1), frac(1, 2)]);
        assert_eq!(out.objective.unwrap(), frac(-1, 2));
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::nonnegative(2);
        lp.objective = ints(&[0, 1]);
        lp.add(ints(&[1, 1]), Relation::Eq, int(1));
        lp.add(ints(&[2, 2]), Relation::Eq, int(2));
        let out = lp_solve(&lp).unwrap();
        assert_eq!(out.solution.unwrap(), ints(&[0, 1]));
    }

    #[test]
    fn structural_errors() {
        let mut lp = LinearProgram::nonnegative(2);
        lp.add(ints(&[1]), Relation::Le, int(1));
        assert!(matches!(lp_solve(&lp), Err(Error::Dimension(_))));
        let mut lp = LinearProgram::nonnegative(2);
        lp.lower_bounds.pop();
        assert!(lp_solve(&lp).is_err());
    }

    #[test]
    fn empty_program_is_optimal_at_bounds() {
        let lp = LinearProgram::nonnegative(3);
        let out = lp_solve(&lp).unwrap();
        assert_eq!(out.solution.unwrap(), ints(&[0, 0, 0]));
    }
}
