//! Exact feasibility for `{A x = b, x >= 0}`.
//!
//! The system is first brought to reduced row echelon form by exact
//! elimination, which drops redundant rows and detects inconsistent ones.
//! The echelon pivots give a starting basis; rows whose right-hand side is
//! negative get an artificial variable and a phase-one simplex with Bland's
//! rule drives the artificials out. The result is always a basic solution,
//! so at most `rank(A)` variables are positive.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FeasibilityStatus {
    Feasible,
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct FeasibilityResult<S> {
    pub status: FeasibilityStatus,
    /// Strictly positive entries of a basic feasible solution.
    pub basic_solution: Option<BTreeMap<usize, S>>,
    pub support_size: usize,
    /// Rank of the constraint matrix after exact reduction.
    pub rank: usize,
}

impl<S: Scalar> FeasibilityResult<S> {
    fn infeasible(rank: usize) -> Self {
        FeasibilityResult {
            status: FeasibilityStatus::Infeasible,
            basic_solution: None,
            support_size: 0,
            rank,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == FeasibilityStatus::Feasible
    }

    /// Value of variable `j` in the solution (zero when not in the support).
    pub fn value(&self, j: usize) -> S {
        self.basic_solution
            .as_ref()
            .and_then(|s| s.get(&j).cloned())
            .unwrap_or_else(S::zero)
    }
}

/// Reduced row echelon form of `rows` (each row has `cols` entries followed
/// by any extra columns, which are carried along but never pivoted on).
/// Returns the pivot column of each nonzero row; zero rows are removed.
#[allow(clippy::ptr_arg)] // rows are truncated to the rank
pub(crate) fn reduce_rows<S: Scalar>(rows: &mut Vec<Vec<S>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv();
        for x in rows[rank].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub_mul(&f, p);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// Phase-one simplex tableau.
struct Tableau<S> {
    /// Constraint rows: `width` coefficients then the right-hand side.
    rows: Vec<Vec<S>>,
    /// Reduced costs of the phase-one objective, plus its value last.
    cost: Vec<S>,
    basis: Vec<usize>,
    width: usize,
}

impl<S: Scalar> Tableau<S> {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].inv();
        for x in self.rows[row].iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = self.rows[row].clone();
        let eliminate = |target: &mut Vec<S>| {
            if target[col].is_zero() {
                return;
            }
            let f = target[col].clone();
            for (x, p) in target.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.sub_mul(&f, p);
                }
            }
        };
        for (r, target) in self.rows.iter_mut().enumerate() {
            if r != row {
                eliminate(target);
            }
        }
        eliminate(&mut self.cost);
        self.basis[row] = col;
    }

    /// Bland's rule: entering is the lowest-index column with negative
    /// reduced cost; leaving is the minimum-ratio row, ties to the lowest
    /// basic variable index. Returns when no improving column exists.
    fn run(&mut self, allowed: usize) {
        let rhs = self.width;
        loop {
            let Some(col) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return;
            };
            let mut best: Option<usize> = None;
            for r in 0..self.rows.len() {
                if !self.rows[r][col].is_positive() {
                    continue;
                }
                best = Some(match best {
                    None => r,
                    Some(b) => {
                        // rhs_r / a_r  vs  rhs_b / a_b, both a > 0
                        let lhs = self.rows[r][rhs].mul(&self.rows[b][col]);
                        let rhs_v = self.rows[b][rhs].mul(&self.rows[r][col]);
                        match lhs.cmp_value(&rhs_v) {
                            std::cmp::Ordering::Less => r,
                            std::cmp::Ordering::Greater => b,
                            std::cmp::Ordering::Equal => {
                                if self.basis[r] < self.basis[b] {
                                    r
                                } else {
                                    b
                                }
                            }
                        }
                    }
                });
            }
            // The phase-one objective is bounded below by zero, so an
            // improving column always has a positive entry.
            let row = best.expect("phase-one objective cannot be unbounded");
            self.pivot(row, col);
        }
    }
}

/// Decides whether `{A x = b, x >= 0}` has a solution, returning a basic one.
pub fn lp_feasible<S: Scalar>(equalities: &[Vec<S>], rhs: &[S]) -> FeasibilityResult<S> {
    assert_eq!(equalities.len(), rhs.len(), "row count mismatch");
    let n = equalities.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<S>> = equalities
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            assert_eq!(row.len(), n, "ragged constraint matrix");
            let mut v = row.clone();
            v.push(b.clone());
            v
        })
        .collect();

    let pivots = reduce_rows(&mut rows, n);
    let rank = pivots.len();
    if rows[rank..].iter().any(|r| !r[n].is_zero()) {
        return FeasibilityResult::infeasible(rank);
    }
    rows.truncate(rank);

    let negative: Vec<usize> = (0..rank).filter(|&r| rows[r][n].is_negative()).collect();
    let width = n + negative.len();
    let mut basis = pivots;
    let mut cost = vec![S::zero(); width + 1];
    let mut tableau_rows = Vec::with_capacity(rank);
    for (r, row) in rows.into_iter().enumerate() {
        let mut row = row;
        let b = row.pop().unwrap();
        row.resize(width, S::zero());
        row.push(b);
        if let Some(k) = negative.iter().position(|&x| x == r) {
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = x.neg();
                }
            }
            row[n + k] = S::one();
            basis[r] = n + k;
            // cost row: minus the sum of artificial rows (on non-artificial
            // columns and the objective value)
            for j in 0..n {
                if !row[j].is_zero() {
                    cost[j] = cost[j].sub(&row[j]);
                }
            }
            cost[width] = cost[width].sub(&row[width]);
        }
        tableau_rows.push(row);
    }

    let mut tableau = Tableau {
        rows: tableau_rows,
        cost,
        basis,
        width,
    };
    if !negative.is_empty() {
        tableau.run(n);
        if !tableau.cost[width].is_zero() {
            return FeasibilityResult::infeasible(rank);
        }
        // Degenerate artificials still basic: pivot onto any original column.
        for r in 0..rank {
            if tableau.basis[r] >= n {
                let col = (0..n)
                    .find(|&j| !tableau.rows[r][j].is_zero())
                    .expect("reduced system has full row rank");
                tableau.pivot(r, col);
            }
        }
    }

    let mut solution = BTreeMap::new();
    for (r, &var) in tableau.basis.iter().enumerate() {
        let v = &tableau.rows[r][width];
        debug_assert!(!v.is_negative());
        if v.is_positive() {
            solution.insert(var, v.clone());
        }
    }
    FeasibilityResult {
        status: FeasibilityStatus::Feasible,
        support_size: solution.len(),
        basic_solution: Some(solution),
        rank,
    }
}
