//! Exact rational linear programming: `min c·x` subject to `A x = b`,
//! `x >= 0`, by the two-phase tableau method with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub x: Vec<Q>,
    pub objective: Q,
    /// Basic column indices, one per non-redundant constraint row.
    pub basis: Vec<usize>,
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len() - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs `c_j - c_B B^-1 A_j` over the allowed columns.
    fn reduced_costs(&self, cost: &[Q], allowed: usize) -> Vec<Q> {
        (0..allowed)
            .map(|j| {
                let mut d = cost[j].clone();
                for (row, &bv) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[bv].is_zero() {
                        d -= &cost[bv] * &row[j];
                    }
                }
                d
            })
            .collect()
    }

    /// Minimizes `cost` using only columns `< allowed`.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> Result<()> {
        loop {
            let d = self.reduced_costs(cost, allowed);
            let Some(enter) = (0..allowed).find(|&j| d[j].is_negative() && !self.basis.contains(&j)) else {
                return Ok(());
            };
            let rhs = self.ncols();
            let mut leave: Option<(usize, Q)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[enter].is_positive() {
                    let ratio = &row[rhs] / &row[enter];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::Unbounded);
            };
            self.pivot(r, enter);
        }
    }
}

/// Solves the LP exactly. Errors with `Infeasible` or `Unbounded`.
pub fn solve(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> Result<LpSolution> {
    let m = a.len();
    let n = c.len();
    assert!(a.iter().all(|r| r.len() == n) && b.len() == m, "LP dimensions disagree");
    // phase one: artificial column n + i for row i, rows sign-normalized
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|v| if flip { -v } else { v.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect() };
    let mut phase1 = vec![Q::zero(); n + m];
    for v in phase1.iter_mut().skip(n) {
        *v = Q::one();
    }
    t.optimize(&phase1, n + m)?;
    let rhs = n + m;
    let infeasibility: Q = t.rows.iter().zip(&t.basis).filter(|(_, &bv)| bv >= n).map(|(r, _)| r[rhs].clone()).sum();
    if infeasibility.is_positive() {
        return Err(Error::Infeasible);
    }
    // drive remaining artificials out; drop rows that are redundant
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, j);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }
    let mut cost = c.to_vec();
    cost.resize(n + m, Q::zero());
    t.optimize(&cost, n)?;
    let mut x = vec![Q::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        x[bv] = row[rhs].clone();
    }
    let objective = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    Ok(LpSolution { x, objective, basis: t.basis })
}

/// True when `A x = b, x >= 0` has a solution.
pub fn feasible(a: &[Vec<Q>], b: &[Q]) -> bool {
    let zero = vec![Q::zero(); a.first().map_or(0, Vec::len)];
    solve(a, b, &zero).is_ok()
}

/// Rank over the rationals.
pub fn rank(a: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = a.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        let pivot_row: Vec<Q> = m[r].iter().map(|v| v * &inv).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
        m[r] = pivot_row;
        r += 1;
    }
    r
}

/// Solves the square system `B x = b`; `None` when `B` is singular.
pub fn solve_square(bm: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = bm.len();
    let mut m: Vec<Vec<Q>> = bm.iter().zip(b).map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}
