//! Strict feasibility of a cell by one exact linear program.
//!
//! For a cell with closed rows `a·x + b ≥ 0`, strict rows `a·x + b > 0` and
//! equalities `e·x + f = 0`, solve
//!
//! ```text
//! maximize t  subject to  a·x + b ≥ 0,  a·x + b − t ≥ 0 (strict rows),  e·x + f = 0,  t ≤ 1
//! ```
//!
//! The cell is nonempty iff this program is feasible with optimum `t* > 0`.
//! The dual has only `d + 1` equality rows, so it is the one that is pivoted.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ConvexCell, Relation};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlackOutcome {
    /// The closure is empty.
    Infeasible,
    /// The optimal common slack of the strict rows, capped at 1.
    Optimal(Rational),
}

pub fn cell_is_empty(cell: &ConvexCell) -> bool {
    match max_strict_slack(cell) {
        SlackOutcome::Infeasible => true,
        SlackOutcome::Optimal(t) => !t.is_positive(),
    }
}

pub fn max_strict_slack(cell: &ConvexCell) -> SlackOutcome {
    if cell.is_trivially_infeasible() {
        return SlackOutcome::Infeasible;
    }
    let d = cell.dim();
    let rows = d + 1;
    // Dual variables: one y ≥ 0 per inequality, one for t ≤ 1, and w = w⁺ − w⁻ per equality.
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut costs: Vec<Rational> = Vec::new();
    for c in cell.constraints() {
        let normal: Vec<Rational> = c
            .normal()
            .iter()
            .map(|a| BigRational::from_integer(a.clone()))
            .collect();
        let offset = BigRational::from_integer(c.offset().clone());
        match c.relation() {
            Relation::Ge | Relation::Gt => {
                let mut col: Vec<Rational> = normal.iter().map(|a| -a).collect();
                col.push(if c.is_strict() {
                    Rational::one()
                } else {
                    Rational::zero()
                });
                columns.push(col);
                costs.push(offset);
            }
            Relation::Eq => {
                let mut col = normal.clone();
                col.push(Rational::zero());
                columns.push(col.iter().map(|v| -v).collect());
                columns.push(col);
                costs.push(offset.clone());
                costs.push(-offset);
            }
        }
    }
    let mut bound = vec![Rational::zero(); rows];
    bound[d] = Rational::one();
    columns.push(bound);
    costs.push(Rational::one());

    let mut rhs = vec![Rational::zero(); rows];
    rhs[d] = Rational::one();
    match minimize(&columns, &costs, rhs) {
        LpResult::Unbounded | LpResult::Infeasible => SlackOutcome::Infeasible,
        LpResult::Optimal(v) => SlackOutcome::Optimal(v),
    }
}

enum LpResult {
    Optimal(Rational),
    Unbounded,
    Infeasible,
}

/// Dense tableau for `min c·z, A z = b, z ≥ 0` with `b ≥ 0`, Bland's rule.
struct Tableau {
    // Artificial columns come last. `objective` is the negated current value.
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    objective: Rational,
    allowed: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        let f = self.reduced[col].clone();
        if !f.is_zero() {
            for (v, pv) in self.reduced.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.objective -= &f * &prhs;
        }
        self.basis[r] = col;
    }

    /// Runs to optimality; returns false if unbounded.
    fn run(&mut self) -> bool {
        loop {
            let Some(col) = (0..self.allowed).find(|&j| self.reduced[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        self.reduced = costs.to_vec();
        self.objective = Rational::zero();
        for i in 0..self.rows.len() {
            let cb = costs[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for (v, a) in self.reduced.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *v -= &cb * a;
                }
            }
            self.objective -= &cb * &self.rhs[i];
        }
    }
}

fn minimize(columns: &[Vec<Rational>], costs: &[Rational], rhs: Vec<Rational>) -> LpResult {
    let m = rhs.len();
    let n = columns.len();
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        reduced: Vec::new(),
        objective: Rational::zero(),
        allowed: n,
    };
    let mut phase1 = vec![Rational::zero(); n + m];
    phase1[n..].iter_mut().for_each(|v| *v = Rational::one());
    t.set_costs(&phase1);
    t.run();
    if (-&t.objective).is_positive() {
        return LpResult::Infeasible;
    }
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, col);
            } else {
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    let mut phase2 = costs.to_vec();
    phase2.extend((0..m).map(|_| Rational::zero()));
    t.set_costs(&phase2);
    if !t.run() {
        return LpResult::Unbounded;
    }
    LpResult::Optimal(-t.objective)
}
