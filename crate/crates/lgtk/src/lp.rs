//! Exact linear programming over an ordered field.
//!
//! Two-phase dense simplex with Bland's rule. Variables are free; constraints
//! are `⟨a, x⟩ {≤,=,≥} b`. Outcomes carry certificates: an optimal point, an
//! unbounded improving ray, or a Farkas vector for infeasibility.

use crate::linalg::dot;
use crate::scalar::Scalar;


#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult<S> {
    Optimal {
        point: Vec<S>,
        value: S,
    },
    /// `farkas[i]` is a multiplier for constraint `i` certifying that the
    /// system has no solution (see `tests` for the verified inequalities).
    Infeasible {
        farkas: Vec<S>,
    },
    /// `point` is feasible and moving along `ray` improves the objective
    /// forever.
    Unbounded {
        point: Vec<S>,
        ray: Vec<S>,
    },
}

pub type Constraint<S> = (Vec<S>, Rel, S);

struct Tableau<S> {
    a: Vec<Vec<S>>,
    b: Vec<S>,
    cost: Vec<S>,
    basis: Vec<usize>,
}

impl<S: Scalar> Tableau<S> {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = S::one() / self.a[row][col].clone();
        for x in self.a[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        self.b[row] = self.b[row].clone() * inv;
        let n = self.cost.len();
        for i in 0..self.a.len() {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            for j in 0..n {
                let t = self.a[row][j].clone() * f.clone();
                self.a[i][j] = self.a[i][j].clone() - t;
            }
            let t = self.b[row].clone() * f;
            self.b[i] = self.b[i].clone() - t;
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for j in 0..n {
                let t = self.a[row][j].clone() * f.clone();
                self.cost[j] = self.cost[j].clone() - t;
            }
        }
        self.basis[row] = col;
    }

    /// Minimizes. `Err(col)` reports an unbounded entering column.
    fn run(&mut self) -> Result<(), usize> {
        loop {
            // Bland: smallest improving index enters.
            let Some(col) = (0..self.cost.len()).find(|&j| self.cost[j] < S::zero()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.a.len() {
                if self.a[i][col] > S::zero() {
                    let ratio = self.b[i].clone() / self.a[i][col].clone();
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
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return Err(col),
            }
        }
    }
}

/// Solves `optimize ⟨objective, x⟩ subject to constraints` over free `x`.
pub fn lp_optimize<S: Scalar>(
    constraints: &[Constraint<S>],
    objective: &[S],
    sense: Sense,
) -> LpResult<S> {
    let n = objective.len();
    for (a, _, _) in constraints {
        assert_eq!(a.len(), n, "constraint dimension mismatch");
    }
    let m = constraints.len();
    if m == 0 {
        if objective.iter().all(|c| c.is_zero()) {
            return LpResult::Optimal { point: vec![S::zero(); n], value: S::zero() };
        }
        let dir = match sense {
            Sense::Min => objective.iter().map(|c| S::zero() - c.clone()).collect(),
            Sense::Max => objective.to_vec(),
        };
        return LpResult::Unbounded { point: vec![S::zero(); n], ray: dir };
    }

    // Columns: x⁺ (n), x⁻ (n), one slack per inequality, one artificial per row.
    let ineq_count = constraints.iter().filter(|(_, r, _)| *r != Rel::Eq).count();
    let total = 2 * n + ineq_count + m;
    let mut a = vec![vec![S::zero(); total]; m];
    let mut b = vec![S::zero(); m];
    let mut slack_col = 2 * n;
    let mut slack_of_row = vec![None; m];
    for (i, (coef, rel, rhs)) in constraints.iter().enumerate() {
        let flip = *rhs < S::zero();
        let sgn = if flip { S::zero() - S::one() } else { S::one() };
        for j in 0..n {
            a[i][j] = coef[j].clone() * sgn.clone();
            a[i][n + j] = S::zero() - a[i][j].clone();
        }
        b[i] = rhs.clone() * sgn.clone();
        let eff_rel = match (rel, flip) {
            (Rel::Eq, _) => Rel::Eq,
            (Rel::Le, false) | (Rel::Ge, true) => Rel::Le,
            (Rel::Ge, false) | (Rel::Le, true) => Rel::Ge,
        };
        match eff_rel {
            Rel::Le => {
                a[i][slack_col] = S::one();
                slack_of_row[i] = Some((slack_col, Rel::Le));
                slack_col += 1;
            }
            Rel::Ge => {
                a[i][slack_col] = S::zero() - S::one();
                slack_of_row[i] = Some((slack_col, Rel::Ge));
                slack_col += 1;
            }
            Rel::Eq => {}
        }
        a[i][2 * n + ineq_count + i] = S::one();
    }

    // Phase 1: drive the artificials to zero.
    let mut cost = vec![S::zero(); total];
    for i in 0..m {
        cost[2 * n + ineq_count + i] = S::one();
    }
    let mut t = Tableau { a, b, cost, basis: (0..m).map(|i| 2 * n + ineq_count + i).collect() };
    // reduce costs of the initial basis
    for i in 0..m {
        let f = t.cost[t.basis[i]].clone();
        if !f.is_zero() {
            for j in 0..total {
                let d = t.a[i][j].clone() * f.clone();
                t.cost[j] = t.cost[j].clone() - d;
            }
        }
    }
    t.run().expect("phase 1 objective is bounded below by zero");
    let phase1_value: S = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= 2 * n + ineq_count)
        .map(|(i, _)| t.b[i].clone())
        .fold(S::zero(), |acc, x| acc + x);
    if phase1_value > S::zero() {
        // y_i = 1 − reduced cost of artificial i.
        let farkas: Vec<S> = (0..m)
            .map(|i| S::one() - t.cost[2 * n + ineq_count + i].clone())
            .collect();
        return LpResult::Infeasible { farkas };
    }
    // Pivot any remaining degenerate artificials out of the basis.
    for i in 0..m {
        if t.basis[i] >= 2 * n + ineq_count {
            if let Some(col) = (0..2 * n + ineq_count).find(|&j| !t.a[i][j].is_zero()) {
                t.pivot(i, col);
            }
        }
    }

    // Phase 2.
    let mut cost2 = vec![S::zero(); total];
    for j in 0..n {
        let c = match sense {
            Sense::Min => objective[j].clone(),
            Sense::Max => S::zero() - objective[j].clone(),
        };
        cost2[j] = c.clone();
        cost2[n + j] = S::zero() - c;
    }
    // Freeze artificials at zero.
    for i in 0..m {
        cost2[2 * n + ineq_count + i] = S::one();
    }
    t.cost = cost2;
    for i in 0..m {
        let f = t.cost[t.basis[i]].clone();
        if !f.is_zero() {
            for j in 0..total {
                let d = t.a[i][j].clone() * f.clone();
                t.cost[j] = t.cost[j].clone() - d;
            }
        }
    }
    let point_of = |t: &Tableau<S>| -> Vec<S> {
        let mut xs = vec![S::zero(); total];
        for (i, &v) in t.basis.iter().enumerate() {
            xs[v] = t.b[i].clone();
        }
        (0..n).map(|j| xs[j].clone() - xs[n + j].clone()).collect()
    };
    match t.run() {
        Ok(()) => {
            let point = point_of(&t);
            let value = dot(objective, &point);
            LpResult::Optimal { point, value }
        }
        Err(col) => {
            let point = point_of(&t);
            let mut dir = vec![S::zero(); total];
            dir[col] = S::one();
            for (i, &v) in t.basis.iter().enumerate() {
                dir[v] = S::zero() - t.a[i][col].clone();
            }
            let ray: Vec<S> = (0..n).map(|j| dir[j].clone() - dir[n + j].clone()).collect();
            LpResult::Unbounded { point, ray }
        }
    }
}

/// Convenience feasibility check.
pub fn lp_feasible<S: Scalar>(constraints: &[Constraint<S>], dim: usize) -> Option<Vec<S>> {
    match lp_optimize(constraints, &vec![S::zero(); dim], Sense::Min) {
        LpResult::Optimal { point, .. } => Some(point),
        LpResult::Unbounded { point, .. } => Some(point),
        LpResult::Infeasible { .. } => None,
    }
}
