//! Fourier–Motzkin elimination with strict inequalities and equalities.
//!
//! Only meant for the handful of variables a brute-force support check
//! needs; the constraint count grows quadratically per eliminated variable.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};

use crate::rational::{dot, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// `a·z ≤ b`
    Le,
    /// `a·z < b`
    Lt,
    /// `a·z = b`
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ineq {
    pub coeffs: Vec<Rational>,
    pub kind: Kind,
    pub rhs: Rational,
}

impl Ineq {
    pub fn new(coeffs: Vec<Rational>, kind: Kind, rhs: Rational) -> Self {
        Ineq { coeffs, kind, rhs }
    }

    pub fn holds_at(&self, z: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, z);
        match self.kind {
            Kind::Le => lhs <= self.rhs,
            Kind::Lt => lhs < self.rhs,
            Kind::Eq => lhs == self.rhs,
        }
    }

    /// Scales so the first nonzero coefficient has magnitude one, which makes
    /// duplicate detection meaningful.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let s = lead.abs();
            for c in self.coeffs.iter_mut() {
                *c /= &s;
            }
            self.rhs /= &s;
            if self.kind == Kind::Eq && lead.is_negative() {
                for c in self.coeffs.iter_mut() {
                    *c = -c.clone();
                }
                self.rhs = -self.rhs.clone();
            }
        }
        self
    }
}

/// Bound on variable `v` from one constraint: `v (<|≤) upper(rest)` or
/// `v (>|≥) lower(rest)`, stored as `expr·z + constant` over the remaining
/// variables (coefficient of `v` is zero).
struct Bound {
    coeffs: Vec<Rational>,
    constant: Rational,
    strict: bool,
}

impl Bound {
    fn from(c: &Ineq, v: usize) -> Bound {
        let a = &c.coeffs[v];
        let mut coeffs: Vec<Rational> = c.coeffs.iter().map(|x| -x / a).collect();
        coeffs[v] = Rational::zero();
        Bound {
            coeffs,
            constant: &c.rhs / a,
            strict: c.kind == Kind::Lt,
        }
    }

    fn eval(&self, z: &[Rational]) -> Rational {
        dot(&self.coeffs, z) + &self.constant
    }
}

enum Step {
    Substituted { var: usize, expr: Bound },
    Eliminated { var: usize, lower: Vec<Bound>, upper: Vec<Bound> },
}

fn simplify(cons: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(cons.len());
    for c in cons {
        if c.coeffs.iter().all(Zero::is_zero) {
            let ok = match c.kind {
                Kind::Le => !c.rhs.is_negative(),
                Kind::Lt => c.rhs.is_positive(),
                Kind::Eq => c.rhs.is_zero(),
            };
            if !ok {
                return None;
            }
            continue;
        }
        let c = c.normalized();
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    Some(out)
}

fn substitute(c: &Ineq, var: usize, expr: &Bound) -> Ineq {
    let a = c.coeffs[var].clone();
    if a.is_zero() {
        return c.clone();
    }
    let mut coeffs = c.coeffs.clone();
    coeffs[var] = Rational::zero();
    for (k, e) in expr.coeffs.iter().enumerate() {
        if !e.is_zero() {
            coeffs[k] += &a * e;
        }
    }
    Ineq {
        coeffs,
        kind: c.kind,
        rhs: &c.rhs - &a * &expr.constant,
    }
}

/// Returns a point satisfying every constraint, or `None` if the system is
/// infeasible. The point is exact and, where strict inequalities leave room,
/// strictly inside them.
pub fn feasible_point(num_vars: usize, constraints: Vec<Ineq>) -> Option<Vec<Rational>> {
    assert!(constraints.iter().all(|c| c.coeffs.len() == num_vars));
    let mut cons = simplify(constraints)?;
    let mut steps = Vec::new();

    loop {
        if let Some(pos) = cons.iter().position(|c| c.kind == Kind::Eq) {
            let eq = cons.swap_remove(pos);
            let var = eq.coeffs.iter().position(|c| !c.is_zero()).expect("simplified");
            let expr = Bound::from(&eq, var);
            cons = simplify(cons.iter().map(|c| substitute(c, var, &expr)).collect())?;
            steps.push(Step::Substituted { var, expr });
            continue;
        }
        let Some(var) = (0..num_vars).find(|&v| cons.iter().any(|c| !c.coeffs[v].is_zero())) else {
            break;
        };
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut rest = Vec::new();
        for c in cons {
            let a = &c.coeffs[var];
            if a.is_positive() {
                upper.push(Bound::from(&c, var));
            } else if a.is_negative() {
                lower.push(Bound::from(&c, var));
            } else {
                rest.push(c);
            }
        }
        // lower ≤ var ≤ upper  ⇒  lower - upper ≤ 0
        for lo in &lower {
            for up in &upper {
                let coeffs = lo.coeffs.iter().zip(&up.coeffs).map(|(l, u)| l - u).collect();
                let kind = if lo.strict || up.strict { Kind::Lt } else { Kind::Le };
                rest.push(Ineq::new(coeffs, kind, &up.constant - &lo.constant));
            }
        }
        cons = simplify(rest)?;
        steps.push(Step::Eliminated { var, lower, upper });
    }

    // Everything left is trivially satisfied: back-substitute.
    let mut z = vec![Rational::zero(); num_vars];
    for step in steps.iter().rev() {
        match step {
            Step::Substituted { var, expr } => z[*var] = expr.eval(&z),
            Step::Eliminated { var, lower, upper } => {
                let lo = lower.iter().map(|b| b.eval(&z)).max();
                let hi = upper.iter().map(|b| b.eval(&z)).min();
                z[*var] = match (lo, hi) {
                    (Some(l), Some(h)) if l == h => l,
                    (Some(l), Some(h)) => (l + h) / Rational::from_integer(2.into()),
                    (Some(l), None) => l + Rational::one(),
                    (None, Some(h)) => h - Rational::one(),
                    (None, None) => Rational::zero(),
                };
            }
        }
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn strict_interval() {
        // 0 < z < 1
        let cons = vec![
            Ineq::new(ints(&[-1]), Kind::Lt, int(0)),
            Ineq::new(ints(&[1]), Kind::Lt, int(1)),
        ];
        let z = feasible_point(1, cons.clone()).unwrap();
        assert_eq!(z, vec![frac(1, 2)]);
        assert!(cons.iter().all(|c| c.holds_at(&z)));
    }

    #[test]
    fn strictness_makes_a_point_infeasible() {
        // z ≤ 0 and z > 0
        let cons = vec![
            Ineq::new(ints(&[1]), Kind::Le, int(0)),
            Ineq::new(ints(&[-1]), Kind::Lt, int(0)),
        ];
        assert!(feasible_point(1, cons).is_none());
        let cons = vec![
            Ineq::new(ints(&[1]), Kind::Le, int(0)),
            Ineq::new(ints(&[-1]), Kind::Le, int(0)),
        ];
        assert_eq!(feasible_point(1, cons).unwrap(), vec![int(0)]);
    }

    #[test]
    fn equalities_and_inequalities() {
        // a + b = 1, a - b = v, v ≤ 0, a > 0, b > 0
        let cons = vec![
            Ineq::new(ints(&[1, 1, 0]), Kind::Eq, int(1)),
            Ineq::new(ints(&[1, -1, -1]), Kind::Eq, int(0)),
            Ineq::new(ints(&[0, 0, 1]), Kind::Le, int(0)),
            Ineq::new(ints(&[-1, 0, 0]), Kind::Lt, int(0)),
            Ineq::new(ints(&[0, -1, 0]), Kind::Lt, int(0)),
        ];
        let z = feasible_point(3, cons.clone()).unwrap();
        assert!(cons.iter().all(|c| c.holds_at(&z)), "{z:?}");
    }

    #[test]
    fn inconsistent_equalities() {
        let cons = vec![
            Ineq::new(ints(&[1, 1]), Kind::Eq, int(1)),
            Ineq::new(ints(&[2, 2]), Kind::Eq, int(3)),
        ];
        assert!(feasible_point(2, cons).is_none());
    }
}
