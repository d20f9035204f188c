//! Exact covering LPs.
//!
//! `min c·x  s.t.  Σ_{e in R_i} x_e >= b_i,  x >= 0` with `c, b >= 0` is
//! solved through its dual `max b·y  s.t.  Σ_{i : e in R_i} y_i <= c_e,  y >= 0`
//! by a dense rational simplex with Bland's rule. The all-slack basis is
//! feasible because `c >= 0`, and the primal optimum is read off the
//! reduced costs of the slack columns.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num::{One, Signed, Zero};

/// One covering constraint: the variables it sums and its right-hand side.
#[derive(Debug, Clone)]
pub struct CoverRow {
    pub vars: Vec<usize>,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// Optimal primal values, one per variable.
    pub x: Vec<Rational>,
    /// Optimal dual values, one per row.
    pub y: Vec<Rational>,
}

/// Solves the covering LP. A row with positive right-hand side and no
/// variables makes it infeasible; its index is reported.
pub fn solve_covering(costs: &[Rational], rows: &[CoverRow]) -> Result<LpSolution, usize> {
    let nvars = costs.len();
    let m = rows.len();
    if let Some(i) = rows.iter().position(|r| r.vars.is_empty() && r.rhs.is_positive()) {
        return Err(i);
    }
    // Dual tableau: one constraint per primal variable, columns are the row
    // duals followed by one slack per constraint, then the right-hand side.
    let width = m + nvars + 1;
    let mut t: Vec<Vec<Rational>> = vec![vec![Rational::zero(); width]; nvars + 1];
    for (i, row) in rows.iter().enumerate() {
        for &e in &row.vars {
            t[e][i] += Rational::one();
        }
        t[nvars][i] = -row.rhs.clone();
    }
    for (e, c) in costs.iter().enumerate() {
        t[e][m + e] = Rational::one();
        t[e][width - 1] = c.clone();
    }
    let mut basis: Vec<usize> = (0..nvars).map(|e| m + e).collect();

    loop {
        let Some(enter) = (0..width - 1).find(|&j| t[nvars][j].is_negative()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..nvars {
            if t[r][enter].is_positive() {
                let ratio = &t[r][width - 1] / &t[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // Unbounded dual: cannot happen once empty rows are rejected, since
        // every dual column then has a positive entry.
        let (pr, _) = leave.expect("dual of a feasible covering LP is bounded");
        let pivot = t[pr][enter].clone();
        for v in t[pr].iter_mut() {
            *v /= &pivot;
        }
        let prow = t[pr].clone();
        for (r, row) in t.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= &f * p;
                }
            }
        }
        basis[pr] = enter;
    }

    let mut y = vec![Rational::zero(); m];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < m {
            y[bv] = t[r][width - 1].clone();
        }
    }
    let x = (0..nvars).map(|e| t[nvars][m + e].clone()).collect();
    Ok(LpSolution { value: t[nvars][width - 1].clone(), x, y })
}

/// Checks a claimed optimum exactly: primal and dual feasibility and equal
/// objective values.
pub fn certify(costs: &[Rational], rows: &[CoverRow], sol: &LpSolution) -> Result<()> {
    let bad = |msg: String| Err(Error::invariant(msg));
    if sol.x.iter().chain(&sol.y).any(|v| v.is_negative()) {
        return bad("negative LP value".into());
    }
    for (i, row) in rows.iter().enumerate() {
        let lhs: Rational = row.vars.iter().map(|&e| sol.x[e].clone()).sum();
        if lhs < row.rhs {
            return bad(format!("row {i} violated"));
        }
    }
    let mut load = vec![Rational::zero(); costs.len()];
    for (row, yi) in rows.iter().zip(&sol.y) {
        for &e in &row.vars {
            load[e] += yi;
        }
    }
    if load.iter().zip(costs).any(|(l, c)| l > c) {
        return bad("dual infeasible".into());
    }
    let primal: Rational = costs.iter().zip(&sol.x).map(|(c, x)| c * x).sum();
    let dual: Rational = rows.iter().zip(&sol.y).map(|(r, y)| &r.rhs * y).sum();
    if primal != sol.value || dual != sol.value {
        return bad(format!("objective mismatch: primal {primal}, dual {dual}, reported {}", sol.value));
    }
    Ok(())
}
