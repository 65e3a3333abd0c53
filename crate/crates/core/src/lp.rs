//! Exact linear feasibility via phase-1 simplex.
//!
//! Finds nonnegative (and optionally free) exact rational solutions of linear
//! systems. The pivot rule is Bland's: the entering column is the smallest
//! index with a negative reduced cost, and ties in the minimum-ratio test are
//! broken toward the smallest basic index. With exact arithmetic this rules
//! out cycling, so termination needs no perturbation or tolerance.
//!
//! Solutions are basic: at most `rank` of the requested variables are
//! nonzero, which the conic decomposition machinery relies on.

use num::{Signed, Zero};

use crate::rat::Rat;

struct Tableau {
    // rows of [A | b], b kept nonnegative
    rows: Vec<Vec<Rat>>,
    // reduced-cost row with the objective value (negated) at the end
    cost: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    /// Phase-1 setup for `A x = b`, `x >= 0`, with `n_struct` structural
    /// columns followed by one artificial per row.
    fn phase1(columns: &[Vec<Rat>], rhs: &[Rat]) -> Tableau {
        let m = rhs.len();
        let n_struct = columns.len();
        let ncols = n_struct + m;
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let flip = rhs[i].is_negative();
            let mut row: Vec<Rat> = Vec::with_capacity(ncols + 1);
            for col in columns {
                debug_assert_eq!(col.len(), m, "column/rhs dimension mismatch");
                row.push(if flip { -col[i].clone() } else { col[i].clone() });
            }
            for j in 0..m {
                row.push(if j == i { Rat::from_integer(1.into()) } else { Rat::zero() });
            }
            row.push(if flip { -rhs[i].clone() } else { rhs[i].clone() });
            rows.push(row);
        }
        // minimizing the artificial sum: reduced costs start at -column sums
        let mut cost = vec![Rat::zero(); ncols + 1];
        for j in 0..n_struct {
            let mut s = Rat::zero();
            for row in &rows {
                s += row[j].clone();
            }
            cost[j] = -s;
        }
        let mut total = Rat::zero();
        for row in &rows {
            total += row[ncols].clone();
        }
        cost[ncols] = -total;
        let basis = (n_struct..n_struct + m).collect();
        Tableau { rows, cost, basis, ncols }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].recip();
        for v in self.rows[row].iter_mut() {
            let t = std::mem::replace(v, Rat::zero());
            *v = t * inv.clone();
        }
        for r in 0..self.rows.len() {
            if r != row && !self.rows[r][col].is_zero() {
                let factor = self.rows[r][col].clone();
                for c in 0..=self.ncols {
                    let sub = factor.clone() * self.rows[row][c].clone();
                    self.rows[r][c] -= sub;
                }
            }
        }
        if !self.cost[col].is_zero() {
            let factor = self.cost[col].clone();
            for c in 0..=self.ncols {
                let sub = factor.clone() * self.rows[row][c].clone();
                self.cost[c] -= sub;
            }
        }
        self.basis[row] = col;
    }

    /// Runs Bland-rule pivoting to optimality; returns the objective value.
    fn optimize(&mut self) -> Rat {
        loop {
            let Some(entering) = (0..self.ncols).find(|&j| self.cost[j].is_negative()) else {
                return -self.cost[self.ncols].clone();
            };
            let mut leaving: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][entering].is_positive() {
                    let ratio = self.rows[r][self.ncols].clone() / self.rows[r][entering].clone();
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b
                                || (ratio == *b
                                    && self.basis[r] < self.basis[leaving.unwrap()])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        leaving = Some(r);
                    }
                }
            }
            // phase-1 objective is bounded below by zero, so a leaving row
            // always exists
            let leaving = leaving.expect("phase-1 objective cannot be unbounded");
            self.pivot(leaving, entering);
        }
    }

    fn solution(&self, n: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rows[r][self.ncols].clone();
            }
        }
        x
    }
}

/// Exact nonnegative solution of `sum_j lambda_j columns[j] = rhs`, or `None`
/// when no such solution exists. The solution returned is basic, so the
/// number of nonzero coefficients never exceeds the rank of the system.
pub fn conic_combination(columns: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let mut t = Tableau::phase1(columns, rhs);
    if t.optimize().is_zero() {
        Some(t.solution(columns.len()))
    } else {
        None
    }
}

/// Like `conic_combination` but with additional sign-free variables, which
/// are split into positive and negative parts internally. Returns
/// `(lambda, mu)` with `lambda >= 0` and `mu` unconstrained.
pub fn conic_combination_with_free(
    columns: &[Vec<Rat>],
    free: &[Vec<Rat>],
    rhs: &[Rat],
) -> Option<(Vec<Rat>, Vec<Rat>)> {
    let mut all: Vec<Vec<Rat>> = columns.to_vec();
    for f in free {
        all.push(f.clone());
        all.push(f.iter().map(|v| -v.clone()).collect());
    }
    let x = conic_combination(&all, rhs)?;
    let lambda = x[..columns.len()].to_vec();
    let mu = (0..free.len())
        .map(|i| x[columns.len() + 2 * i].clone() - x[columns.len() + 2 * i + 1].clone())
        .collect();
    Some((lambda, mu))
}
