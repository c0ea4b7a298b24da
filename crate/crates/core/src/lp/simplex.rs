//! Dense revised simplex for the covering/separation LP pair
//!
//! ```text
//! (P)  min 1.x   s.t.  M x >= c,  x >= 0        (cover weights on columns)
//! (D)  max c.y   s.t.  M'y <= 1,  y >= 0        (separation weights on rows)
//! ```
//!
//! One solve yields a complementary optimal pair. The basis lives on the
//! smaller side: primal simplex on (D) (slack start, basis = cols) when the
//! matrix is square-ish or tall, dual simplex on (P) (basis = rows) when the
//! matrix has many more columns than rows. The explicit basis inverse is kept
//! column-major and rank-1 updated.
//!
//! Covering instances are heavily degenerate, so prices are recomputed from
//! the basis inverse every iteration rather than updated incrementally; the
//! extra `O(basis^2)` per iteration is on par with the pricing pass and
//! removes the drift that otherwise stalls the dual method. Pricing is
//! Dantzig with ties broken toward the lowest column index, switching to
//! Bland's rule after `10 * (rows + cols)` consecutive degenerate pivots.

use super::bitmat::BitMat;
use crate::error::{Error, Result};

pub const FEAS_TOL: f64 = 1e-9;
pub const GAP_TOL: f64 = 1e-7;
/// Minimum magnitude for a pivot element to be a ratio-test candidate.
const RATIO_EPS: f64 = 1e-11;
/// Allowed transient dual infeasibility in the Harris ratio test.
const DUAL_FEAS_TOL: f64 = 1e-8;
const DEGENERATE_STEP: f64 = 1e-12;
/// Hard cap on the basis dimension (memory guard: 8 bytes * basis^2).
pub const MAX_BASIS: usize = 6_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// primal simplex on the separation side; basis indexed by columns of M
    PrimalOnDual,
    /// dual simplex on the cover side; basis indexed by rows of M
    DualOnPrimal,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub primal_value: f64,
    pub dual_value: f64,
    /// cover weights per column of M
    pub primal: Vec<f64>,
    /// separation weights per row of M
    pub dual: Vec<f64>,
    pub iterations: usize,
    pub mode: Mode,
    pub used_bland: bool,
}

/// Column-major square matrix holding the basis inverse.
struct Inverse {
    n: usize,
    data: Vec<f64>, // data[k*n + i] = B^-1[i][k]
}

impl Inverse {
    fn identity(n: usize, sign: f64) -> Inverse {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = sign;
        }
        Inverse { n, data }
    }

    #[inline]
    fn col(&self, k: usize) -> &[f64] {
        &self.data[k * self.n..(k + 1) * self.n]
    }

    fn row(&self, r: usize) -> Vec<f64> {
        (0..self.n).map(|k| self.data[k * self.n + r]).collect()
    }

    /// Rank-1 update after pivoting variable with FTRAN column `w` into
    /// basis position `r`.
    fn pivot_update(&mut self, r: usize, w: &[f64]) {
        let wr = w[r];
        let n = self.n;
        for k in 0..n {
            let col = &mut self.data[k * n..(k + 1) * n];
            let t = col[r] / wr;
            if t != 0.0 {
                for (ci, wi) in col.iter_mut().zip(w.iter()) {
                    *ci -= t * wi;
                }
                col[r] = t;
            }
        }
    }

    /// `B^-1 v` for dense `v`.
    fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n];
        for (k, &f) in v.iter().enumerate() {
            if f != 0.0 {
                let col = self.col(k);
                for (o, ci) in out.iter_mut().zip(col.iter()) {
                    *o += f * ci;
                }
            }
        }
        out
    }

    /// `(B^-1)^T v`.
    fn apply_transpose(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|k| self.col(k).iter().zip(v.iter()).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Solve the pair for matrix `m` and 0/1 requirement vector `c`.
pub fn solve(m: &BitMat, c: &[f64]) -> Result<Solution> {
    let rows = m.rows();
    let cols = m.cols();
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyPointList);
    }
    for i in 0..rows {
        if c[i] > 0.5 && m.count_row(i) == 0 {
            return Err(Error::UncoverablePoint { index: i });
        }
    }
    let basis_dim = rows.min(cols);
    if basis_dim > MAX_BASIS {
        return Err(Error::LpTooLarge {
            rows,
            cols,
            limit: MAX_BASIS,
        });
    }
    if cols <= rows {
        primal_on_dual(m, c)
    } else {
        dual_on_primal(m, c)
    }
}

/// Test hook: force a particular pivoting mode.
#[cfg(test)]
pub(crate) fn solve_with_mode(m: &BitMat, c: &[f64], mode: Mode) -> Result<Solution> {
    match mode {
        Mode::PrimalOnDual => primal_on_dual(m, c),
        Mode::DualOnPrimal => dual_on_primal(m, c),
    }
}

/// Primal simplex on (D): max c.y s.t. M'y + s = 1.
/// Variables `0..rows` are y, `rows..rows+cols` slacks. Basis size = cols.
fn primal_on_dual(m: &BitMat, c: &[f64]) -> Result<Solution> {
    let rows = m.rows();
    let cols = m.cols();
    let nvars = rows + cols;
    let mut inv = Inverse::identity(cols, 1.0);
    let mut basis: Vec<usize> = (rows..nvars).collect();
    let mut in_basis = vec![false; nvars];
    for &b in &basis {
        in_basis[b] = true;
    }
    let mut xb = vec![1.0f64; cols];
    let mut iterations = 0usize;
    let mut degenerate = 0usize;
    let mut bland = false;
    let bland_after = 10 * (rows + cols);
    let max_iters = 100 * (rows + cols) + 50_000;

    loop {
        iterations += 1;
        if iterations > max_iters {
            return Err(Error::SolverFailure(format!(
                "iteration limit {max_iters} hit (primal mode)"
            )));
        }
        // prices from the current basis
        let cb: Vec<f64> = basis
            .iter()
            .map(|&b| if b < rows { c[b] } else { 0.0 })
            .collect();
        let pi = inv.apply_transpose(&cb);
        // pricing
        let mut enter: Option<(usize, f64)> = None;
        for j in 0..nvars {
            if in_basis[j] {
                continue;
            }
            let d = if j < rows {
                c[j] - m.row_dot(j, &pi)
            } else {
                -pi[j - rows]
            };
            if d > FEAS_TOL {
                if bland {
                    enter = Some((j, d));
                    break;
                }
                match enter {
                    Some((_, best)) if d <= best => {}
                    _ => enter = Some((j, d)),
                }
            }
        }
        let Some((q, _)) = enter else {
            break; // optimal
        };
        // FTRAN
        let mut w = vec![0.0f64; cols];
        if q < rows {
            for j in m.row_ones(q) {
                let col = inv.col(j);
                for (wi, ci) in w.iter_mut().zip(col.iter()) {
                    *wi += ci;
                }
            }
        } else {
            w.copy_from_slice(inv.col(q - rows));
        }
        // Harris two-pass ratio test: bound the step by the relaxed minimum,
        // then take the fattest admissible pivot (lowest basic index on ties)
        let mut relaxed = f64::INFINITY;
        for i in 0..cols {
            if w[i] > RATIO_EPS {
                relaxed = relaxed.min((xb[i].max(0.0) + FEAS_TOL) / w[i]);
            }
        }
        if relaxed.is_infinite() {
            return Err(Error::SolverFailure(
                "dual LP unbounded: uncovered requirement row escaped pre-check".into(),
            ));
        }
        let mut leave: Option<usize> = None;
        let mut theta = f64::INFINITY;
        let mut best_piv = 0.0f64;
        for i in 0..cols {
            if w[i] > RATIO_EPS {
                let ratio = xb[i].max(0.0) / w[i];
                if ratio <= relaxed {
                    let better = if bland {
                        match leave {
                            None => true,
                            Some(l) => basis[i] < basis[l],
                        }
                    } else {
                        w[i] > best_piv
                    };
                    if better {
                        leave = Some(i);
                        theta = ratio;
                        best_piv = w[i];
                    }
                }
            }
        }
        let r = leave.unwrap();
        let theta = theta.min(relaxed);
        if theta.abs() <= DEGENERATE_STEP {
            degenerate += 1;
            if degenerate > bland_after {
                bland = true;
            }
        } else {
            degenerate = 0;
        }
        let theta = theta.max(0.0);
        for (x, wi) in xb.iter_mut().zip(w.iter()) {
            *x -= theta * wi;
        }
        xb[r] = theta;
        in_basis[basis[r]] = false;
        in_basis[q] = true;
        basis[r] = q;
        inv.pivot_update(r, &w);

        if iterations % 256 == 0 {
            refresh_basic_solution_dualform(m, &basis, &inv, &mut xb);
        }
    }

    refresh_basic_solution_dualform(m, &basis, &inv, &mut xb);
    let cb: Vec<f64> = basis
        .iter()
        .map(|&b| if b < rows { c[b] } else { 0.0 })
        .collect();
    let pi = inv.apply_transpose(&cb);
    let mut dual = vec![0.0f64; rows];
    for (i, &b) in basis.iter().enumerate() {
        if b < rows {
            dual[b] = xb[i].max(0.0);
        }
    }
    let primal: Vec<f64> = pi.iter().map(|v| v.max(0.0)).collect();
    let primal_value = primal.iter().sum();
    let dual_value = c.iter().zip(dual.iter()).map(|(a, b)| a * b).sum();
    Ok(Solution {
        primal_value,
        dual_value,
        primal,
        dual,
        iterations,
        mode: Mode::PrimalOnDual,
        used_bland: bland,
    })
}

/// Two refinement passes of `B xb = 1` for the (D)-form basis.
fn refresh_basic_solution_dualform(m: &BitMat, basis: &[usize], inv: &Inverse, xb: &mut [f64]) {
    let rows = m.rows();
    let cols = m.cols();
    for _ in 0..2 {
        let mut res = vec![1.0f64; cols];
        for (i, &b) in basis.iter().enumerate() {
            let v = xb[i];
            if v != 0.0 {
                if b < rows {
                    m.row_axpy(b, -v, &mut res);
                } else {
                    res[b - rows] -= v;
                }
            }
        }
        let delta = inv.apply(&res);
        for (x, d) in xb.iter_mut().zip(delta.iter()) {
            *x += d;
        }
    }
}

/// Dual simplex on (P): min 1.x s.t. M x - s = c. Basis size = rows.
/// Variables `0..cols` are x, `cols..cols+rows` surplus.
fn dual_on_primal(m: &BitMat, c: &[f64]) -> Result<Solution> {
    let rows = m.rows();
    let cols = m.cols();
    let nvars = cols + rows;
    let mut inv = Inverse::identity(rows, -1.0);
    let mut basis: Vec<usize> = (cols..nvars).collect();
    let mut in_basis = vec![false; nvars];
    for &b in &basis {
        in_basis[b] = true;
    }
    let mut xb: Vec<f64> = c.iter().map(|v| -v).collect();
    let mut iterations = 0usize;
    let mut degenerate = 0usize;
    let mut bland = false;
    let bland_after = 10 * (rows + cols);
    let max_iters = 100 * (rows + cols) + 50_000;

    loop {
        iterations += 1;
        if iterations > max_iters {
            return Err(Error::SolverFailure(format!(
                "iteration limit {max_iters} hit (dual mode)"
            )));
        }
        // leaving row: most negative basic value (Bland: lowest var index)
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..rows {
            if xb[i] < -FEAS_TOL {
                let better = match leave {
                    None => true,
                    Some((l, best)) => {
                        if bland {
                            basis[i] < basis[l]
                        } else {
                            xb[i] < best
                        }
                    }
                };
                if better {
                    leave = Some((i, xb[i]));
                }
            }
        }
        let Some((r, _)) = leave else {
            break; // primal feasible => optimal
        };
        if std::env::var_os("COVNUM_LP_TRACE").is_some() && iterations % 2000 == 0 {
            let neg: usize = xb.iter().filter(|&&v| v < -FEAS_TOL).count();
            let minxb = xb.iter().cloned().fold(f64::INFINITY, f64::min);
            let obj: f64 = basis
                .iter()
                .zip(xb.iter())
                .filter(|(&b, _)| b < cols)
                .map(|(_, &v)| v)
                .sum();
            eprintln!(
                "it {iterations}: infeasible {neg}, min xb {minxb:.3e}, obj {obj:.9}, bland {bland}"
            );
        }
        // fresh prices for the ratio test
        let cb: Vec<f64> = basis
            .iter()
            .map(|&b| if b < cols { 1.0 } else { 0.0 })
            .collect();
        let pi = inv.apply_transpose(&cb);
        let rho = inv.row(r);
        // candidates (alpha_j < 0) with their reduced costs
        let mut cands: Vec<(usize, f64, f64)> = Vec::new();
        for j in 0..nvars {
            if in_basis[j] {
                continue;
            }
            let alpha = if j < cols {
                m.col_dot(j, &rho)
            } else {
                -rho[j - cols]
            };
            if alpha < -RATIO_EPS {
                let d = if j < cols {
                    (1.0 - m.col_dot(j, &pi)).max(0.0)
                } else {
                    pi[j - cols].max(0.0)
                };
                cands.push((j, alpha, d));
            }
        }
        if cands.is_empty() {
            return Err(Error::SolverFailure(
                "dual simplex found no entering column (primal infeasible?)".into(),
            ));
        }
        // Harris two-pass: relaxed bound, then the fattest admissible pivot
        let relaxed = cands
            .iter()
            .map(|(_, a, d)| (d + DUAL_FEAS_TOL) / (-a))
            .fold(f64::INFINITY, f64::min);
        let mut q = usize::MAX;
        let mut best_ratio = f64::INFINITY;
        let mut best_piv = 0.0f64;
        for &(j, a, d) in &cands {
            let ratio = d / (-a);
            if ratio <= relaxed {
                let better = if bland {
                    q == usize::MAX || j < q
                } else {
                    -a > best_piv
                };
                if better {
                    q = j;
                    best_ratio = ratio;
                    best_piv = -a;
                }
            }
        }
        if best_ratio.abs() <= DEGENERATE_STEP {
            degenerate += 1;
            if degenerate > bland_after {
                bland = true;
            }
        } else {
            degenerate = 0;
        }
        // FTRAN for the entering column
        let mut w = vec![0.0f64; rows];
        if q < cols {
            for i in m.col_ones(q) {
                let col = inv.col(i);
                for (wk, ci) in w.iter_mut().zip(col.iter()) {
                    *wk += ci;
                }
            }
        } else {
            for (wk, v) in w.iter_mut().zip(inv.col(q - cols).iter()) {
                *wk = -v;
            }
        }
        if w[r].abs() <= 1e-12 {
            return Err(Error::SolverFailure(
                "dual simplex pivot element vanished".into(),
            ));
        }
        let theta_p = xb[r] / w[r];
        for (x, wi) in xb.iter_mut().zip(w.iter()) {
            *x -= theta_p * wi;
        }
        xb[r] = theta_p;
        in_basis[basis[r]] = false;
        in_basis[q] = true;
        basis[r] = q;
        inv.pivot_update(r, &w);

        if iterations % 256 == 0 {
            refresh_basic_solution_primalform(m, c, &basis, &inv, &mut xb);
        }
    }

    refresh_basic_solution_primalform(m, c, &basis, &inv, &mut xb);
    let mut primal = vec![0.0f64; cols];
    for (i, &b) in basis.iter().enumerate() {
        if b < cols {
            primal[b] = xb[i].max(0.0);
        }
    }
    let cb: Vec<f64> = basis
        .iter()
        .map(|&b| if b < cols { 1.0 } else { 0.0 })
        .collect();
    let pi = inv.apply_transpose(&cb);
    let dual: Vec<f64> = pi.iter().map(|v| v.max(0.0)).collect();
    let primal_value = primal.iter().sum();
    let dual_value = c.iter().zip(dual.iter()).map(|(a, b)| a * b).sum();
    Ok(Solution {
        primal_value,
        dual_value,
        primal,
        dual,
        iterations,
        mode: Mode::DualOnPrimal,
        used_bland: bland,
    })
}

/// Two refinement passes of `B xb = c` for the (P)-form basis.
fn refresh_basic_solution_primalform(
    m: &BitMat,
    c: &[f64],
    basis: &[usize],
    inv: &Inverse,
    xb: &mut [f64],
) {
    let cols = m.cols();
    for _ in 0..2 {
        let mut res = c.to_vec();
        for (i, &b) in basis.iter().enumerate() {
            let v = xb[i];
            if v != 0.0 {
                if b < cols {
                    m.col_axpy(b, -v, &mut res);
                } else {
                    res[b - cols] += v;
                }
            }
        }
        let delta = inv.apply(&res);
        for (x, d) in xb.iter_mut().zip(delta.iter()) {
            *x += d;
        }
    }
}
