//! Exact rational re-solve of a cover LP.
//!
//! Tableau simplex over `BigRational` with Bland's rule, used to confirm
//! floating answers on small ground-truth fixtures. The 0/1 data is exact, so
//! the optimum comes out as an exact rational number.

use super::bitmat::BitMat;
use crate::error::{Error, Result};
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::BigInt;

/// Instances beyond this many rows/columns are refused (rational pivots get
/// expensive fast).
pub const EXACT_LIMIT: usize = 500;

#[derive(Clone, Debug)]
pub struct ExactSolution {
    pub value: BigRational,
    pub value_f64: f64,
}

/// Solve `max c.y : M'y <= 1, y >= 0` exactly; by duality the value equals
/// `min 1.x : Mx >= c, x >= 0`.
pub fn solve_exact(m: &BitMat, c: &[f64]) -> Result<ExactSolution> {
    let rows = m.rows();
    let cols = m.cols();
    if rows > EXACT_LIMIT || cols > EXACT_LIMIT {
        return Err(Error::LpTooLarge {
            rows,
            cols,
            limit: EXACT_LIMIT,
        });
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    let nvars = rows + cols;
    // tableau: cols constraint rows, columns = y vars + slacks + rhs
    let mut t: Vec<Vec<BigRational>> = (0..cols)
        .map(|j| {
            let mut row = vec![zero.clone(); nvars + 1];
            for i in 0..rows {
                if m.get(i, j) {
                    row[i] = one.clone();
                }
            }
            row[rows + j] = one.clone();
            row[nvars] = one.clone();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (rows..nvars).collect();
    // objective row: reduced costs (maximization), value in the last slot
    let mut obj: Vec<BigRational> = (0..=nvars)
        .map(|i| {
            if i < rows && c[i] > 0.5 {
                one.clone()
            } else {
                zero.clone()
            }
        })
        .collect();

    let max_pivots = 2000 * (cols + 1);
    for _ in 0..max_pivots {
        // Bland: lowest-index positive reduced cost
        let Some(q) = (0..nvars).find(|&j| obj[j] > zero) else {
            let value = -obj[nvars].clone();
            let value_f64 = rational_to_f64(&value);
            return Ok(ExactSolution { value, value_f64 });
        };
        // ratio test, Bland tie-break on lowest basis index
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for r in 0..cols {
            if t[r][q] > zero {
                let ratio = &t[r][nvars] / &t[r][q];
                let better = match &best {
                    None => true,
                    Some(b) => ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(r) = leave else {
            return Err(Error::SolverFailure(
                "exact LP unbounded (uncoverable requirement row)".into(),
            ));
        };
        // pivot
        let piv = t[r][q].clone();
        for v in t[r].iter_mut() {
            *v /= &piv;
        }
        for i in 0..cols {
            if i != r && !t[i][q].is_zero() {
                let f = t[i][q].clone();
                for k in 0..=nvars {
                    let sub = &f * &t[r][k];
                    t[i][k] -= sub;
                }
            }
        }
        if !obj[q].is_zero() {
            let f = obj[q].clone();
            for k in 0..=nvars {
                let sub = &f * &t[r][k];
                obj[k] -= sub;
            }
        }
        basis[r] = q;
    }
    Err(Error::SolverFailure("exact LP pivot limit hit".into()))
}

fn rational_to_f64(v: &BigRational) -> f64 {
    let numer = bigint_to_f64(v.numer());
    let denom = bigint_to_f64(v.denom());
    numer / denom
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    // good enough for reporting: exact for |v| < 2^53, which covers the
    // fixture optima; larger values only appear in intermediate pivots
    let s = v.abs().to_string();
    let mag: f64 = s.parse().unwrap_or(f64::INFINITY);
    if v.is_negative() {
        -mag
    } else {
        mag
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    #[test]
    fn identity_cover_is_exact() {
        let m = BitMat::build(3, 3, |i, j| i == j);
        let sol = solve_exact(&m, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(sol.value, BigRational::from_i64(3).unwrap());
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // odd cycle: rows {01, 12, 20}, optimum 3/2
        let m = BitMat::build(3, 3, |i, j| j == i || j == (i + 1) % 3);
        let sol = solve_exact(&m, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(
            sol.value,
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
        assert!((sol.value_f64 - 1.5).abs() < 1e-15);
    }
}
