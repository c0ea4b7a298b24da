//! Tiny dense LP and linear-algebra helpers for body construction.
//!
//! These solve construction-time problems only (Chebyshev centers,
//! boundedness certificates, facet solves). Sizes are a few dozen variables,
//! so a plain two-phase tableau simplex with Bland's rule is plenty and
//! guaranteed to terminate.

const EPS: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub enum SmallLp {
    Optimal { value: f64, x: Vec<f64> },
    Infeasible,
    Unbounded,
}

/// Maximize `c . z` subject to `A z <= b`, `z >= 0`.
pub fn solve_max(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> SmallLp {
    let m = a.len();
    let n = c.len();
    // tableau columns: n structural + m slacks + m artificials + rhs
    let cols = n + 2 * m + 1;
    let mut t = vec![vec![0.0; cols]; m];
    let mut basis = vec![0usize; m];
    let mut n_art = 0usize;
    for i in 0..m {
        let flip = b[i] < 0.0;
        let s = if flip { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = s * a[i][j];
        }
        t[i][n + i] = s; // slack
        t[i][cols - 1] = s * b[i];
        if flip {
            t[i][n + m + i] = 1.0; // artificial
            basis[i] = n + m + i;
            n_art += 1;
        } else {
            basis[i] = n + i;
        }
    }

    let pivot = |t: &mut Vec<Vec<f64>>, basis: &mut Vec<usize>, r: usize, col: usize| {
        let piv = t[r][col];
        for v in t[r].iter_mut() {
            *v /= piv;
        }
        for i in 0..t.len() {
            if i != r && t[i][col].abs() > 0.0 {
                let f = t[i][col];
                let row_r = t[r].clone();
                for (v, rv) in t[i].iter_mut().zip(row_r.iter()) {
                    *v -= f * rv;
                }
            }
        }
        basis[r] = col;
    };

    // Runs Bland-rule simplex on the given objective row; returns false if unbounded.
    let run = |t: &mut Vec<Vec<f64>>,
               basis: &mut Vec<usize>,
               obj: &mut Vec<f64>,
               allowed: usize|
     -> bool {
        loop {
            // reduced costs: obj is kept in canonical form wrt basis
            let mut enter = None;
            for j in 0..allowed {
                if obj[j] > EPS {
                    enter = Some(j);
                    break; // Bland: lowest index
                }
            }
            let Some(col) = enter else { return true };
            let mut leave = None;
            let mut best = f64::INFINITY;
            for i in 0..t.len() {
                if t[i][col] > EPS {
                    let ratio = t[i][cols - 1] / t[i][col];
                    if ratio < best - EPS || (ratio < best + EPS && basis[i] < basis[leave.unwrap_or(i)])
                    {
                        best = ratio;
                        leave = Some(i);
                    }
                }
            }
            let Some(r) = leave else { return false };
            pivot(t, basis, r, col);
            // update objective row
            let f = obj[col];
            if f.abs() > 0.0 {
                for (v, rv) in obj.iter_mut().zip(t[r].iter()) {
                    *v -= f * rv;
                }
            }
        }
    };

    if n_art > 0 {
        // phase 1: maximize -sum(artificials)
        let mut obj = vec![0.0; cols];
        for i in 0..m {
            if basis[i] >= n + m {
                // canonicalize: obj -= row (artificial has cost -1 => obj = sum of art rows)
                for j in 0..cols {
                    obj[j] += t[i][j];
                }
            }
        }
        for k in 0..m {
            obj[n + m + k] = 0.0;
        }
        if !run(&mut t, &mut basis, &mut obj, n + m) {
            return SmallLp::Infeasible; // phase 1 cannot be unbounded
        }
        if obj[cols - 1] > 1e-7 {
            return SmallLp::Infeasible;
        }
        // drive any remaining artificials out of the basis
        for i in 0..m {
            if basis[i] >= n + m {
                let mut done = false;
                for j in 0..n + m {
                    if t[i][j].abs() > 1e-9 {
                        pivot(&mut t, &mut basis, i, j);
                        done = true;
                        break;
                    }
                }
                if !done {
                    // redundant row; leave the artificial at zero
                }
            }
        }
    }

    // phase 2
    let mut obj = vec![0.0; cols];
    for j in 0..n {
        obj[j] = c[j];
    }
    // canonicalize wrt current basis
    for i in 0..m {
        let f = obj[basis[i]];
        if f.abs() > 0.0 {
            let row = t[i].clone();
            for (v, rv) in obj.iter_mut().zip(row.iter()) {
                *v -= f * rv;
            }
        }
    }
    if !run(&mut t, &mut basis, &mut obj, n + m) {
        return SmallLp::Unbounded;
    }
    let mut x = vec![0.0; n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][cols - 1];
        }
    }
    let value = c.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
    SmallLp::Optimal { value, x }
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` when the matrix is singular to working precision.
pub fn solve_linear(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let (piv, mag) = (col..n)
            .map(|i| (i, m[i][col].abs()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if mag < 1e-12 {
            return None;
        }
        m.swap(col, piv);
        for i in 0..n {
            if i != col && m[i][col].abs() > 0.0 {
                let f = m[i][col] / m[col][col];
                let prow = m[col].clone();
                for (v, pv) in m[i].iter_mut().zip(prow.iter()) {
                    *v -= f * pv;
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}
