//! Discretized covering/separation linear programs.
//!
//! `build_cover_lp` assembles the 0/1 matrix `M` (`M[i][j] = 1` iff
//! constraint point `x_i` lies in `x_j + T`), the requirement vector `c`
//! (`c_i = 1` iff `x_i` is in `K`) and the all-ones cost vector. Solving
//! returns a complementary primal/dual pair whose values agree to `1e-7`
//! relative; both feasibility certificates are checked before the solution is
//! accepted.

mod bitmat;
pub mod exact;
mod simplex;

pub use bitmat::BitMat;
pub use simplex::{Mode, Solution, FEAS_TOL, GAP_TOL, MAX_BASIS};

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, DEFAULT_TOL};
use crate::point::Point;
use rayon::prelude::*;
use std::io::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Built,
    Optimal,
}

/// The discretized cover LP with its (optional) solved state.
#[derive(Clone, Debug)]
pub struct CoverLp {
    pub matrix: BitMat,
    /// 0/1 requirement per row.
    pub c: Vec<f64>,
    pub row_points: Vec<Point>,
    pub col_points: Vec<Point>,
    pub status: LpStatus,
    solution: Option<Solution>,
}

/// Build the LP from candidate centers (columns), constraint points (rows)
/// and the bodies `T` (translate) and `K` (requirement).
pub fn build_cover_lp(
    centers: &[Point],
    constraint_points: &[Point],
    t: &ConvexBody,
    k: &ConvexBody,
) -> Result<CoverLp> {
    if centers.is_empty() || constraint_points.is_empty() {
        return Err(Error::EmptyPointList);
    }
    let dim = t.dim();
    if k.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: k.dim(),
        });
    }
    for p in centers.iter().chain(constraint_points.iter()) {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
    }
    let rows = constraint_points.len();
    let cols = centers.len();
    // bbox pre-reject to skip the full membership test on far pairs
    let (blo, bhi) = t.bounding_box();
    let bits: Vec<Vec<u64>> = constraint_points
        .par_iter()
        .map(|xi| {
            let mut row = vec![0u64; cols.div_ceil(64)];
            for (j, xj) in centers.iter().enumerate() {
                let d = xi.sub(xj);
                let mut inside_box = true;
                for a in 0..dim {
                    let v = d.get(a);
                    if v < blo.get(a) - DEFAULT_TOL || v > bhi.get(a) + DEFAULT_TOL {
                        inside_box = false;
                        break;
                    }
                }
                if inside_box && t.contains_point(&d, DEFAULT_TOL) {
                    row[j / 64] |= 1u64 << (j % 64);
                }
            }
            row
        })
        .collect();
    let matrix = BitMat::from_rows(rows, cols, &bits);
    let c: Vec<f64> = constraint_points
        .iter()
        .map(|p| if k.contains_point(p, DEFAULT_TOL) { 1.0 } else { 0.0 })
        .collect();
    Ok(CoverLp {
        matrix,
        c,
        row_points: constraint_points.to_vec(),
        col_points: centers.to_vec(),
        status: LpStatus::Built,
        solution: None,
    })
}

impl CoverLp {
    /// Construct directly from a membership predicate (metric spaces, tests).
    pub fn from_fn<F: Fn(usize, usize) -> bool + Sync>(
        rows: usize,
        cols: usize,
        entry: F,
        c: Vec<f64>,
    ) -> Result<CoverLp> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyPointList);
        }
        if c.len() != rows {
            return Err(Error::DimensionMismatch {
                expected: rows,
                got: c.len(),
            });
        }
        Ok(CoverLp {
            matrix: BitMat::build(rows, cols, entry),
            c,
            row_points: Vec::new(),
            col_points: Vec::new(),
            status: LpStatus::Built,
            solution: None,
        })
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// Solve (idempotent); checks the optimality certificates.
    pub fn solve(&mut self) -> Result<&Solution> {
        if self.solution.is_none() {
            let sol = simplex::solve(&self.matrix, &self.c)?;
            self.verify_certificates(&sol)?;
            self.solution = Some(sol);
            self.status = LpStatus::Optimal;
        }
        Ok(self.solution.as_ref().unwrap())
    }

    /// Optimal cover value and weights (per column), with the certifying
    /// dual available through [`CoverLp::solve_dual`].
    pub fn solve_primal(&mut self) -> Result<(f64, Vec<f64>)> {
        let sol = self.solve()?;
        Ok((sol.primal_value, sol.primal.clone()))
    }

    /// Optimal separation value and weights (per row).
    pub fn solve_dual(&mut self) -> Result<(f64, Vec<f64>)> {
        let sol = self.solve()?;
        Ok((sol.dual_value, sol.dual.clone()))
    }

    pub fn solution(&self) -> Option<&Solution> {
        self.solution.as_ref()
    }

    fn verify_certificates(&self, sol: &Solution) -> Result<()> {
        // primal feasibility: M x >= c - tol
        for i in 0..self.rows() {
            if self.c[i] > 0.5 {
                let v = self.matrix.row_dot(i, &sol.primal);
                if v < self.c[i] - FEAS_TOL * 10.0 {
                    return Err(Error::SolverFailure(format!(
                        "primal infeasible at row {i}: {v} < {}",
                        self.c[i]
                    )));
                }
            }
        }
        // dual feasibility: M'y <= 1 + tol
        for j in 0..self.cols() {
            let v = self.matrix.col_dot(j, &sol.dual);
            if v > 1.0 + FEAS_TOL * 10.0 {
                return Err(Error::SolverFailure(format!(
                    "dual infeasible at column {j}: {v} > 1"
                )));
            }
        }
        let gap = (sol.primal_value - sol.dual_value).abs();
        if gap > GAP_TOL * (1.0 + sol.primal_value.abs()) {
            return Err(Error::SolverFailure(format!(
                "duality gap {gap:.3e} exceeds tolerance (primal {}, dual {})",
                sol.primal_value, sol.dual_value
            )));
        }
        Ok(())
    }

    /// Exact rational re-solve (small instances); the optimal value is
    /// returned as an exact rational.
    pub fn solve_exact_rational(&self) -> Result<exact::ExactSolution> {
        exact::solve_exact(&self.matrix, &self.c)
    }

    /// Sparse text export: `row col value` triplets of the ones, then
    /// `# c <row> <value>` lines for the requirement vector.
    pub fn export_triples<W: Write>(&self, mut w: W) -> Result<()> {
        for i in 0..self.rows() {
            for j in self.matrix.row_ones(i) {
                writeln!(w, "{i} {j} 1")?;
            }
        }
        for (i, ci) in self.c.iter().enumerate() {
            if *ci > 0.5 {
                writeln!(w, "# c {i} 1")?;
            }
        }
        Ok(())
    }
}
