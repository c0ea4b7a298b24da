//! Minimum-norm point in a polytope (Wolfe's algorithm).
//!
//! Gives exact (to working precision) Euclidean distance and projection from
//! a point onto `conv(generators)`. Used for membership and projection of
//! polytopes given by generator sets in dimension >= 3, including implicit
//! Minkowski sums whose generator set is the pairwise vertex sums.

use crate::geometry::smallp::solve_linear;
use crate::point::Point;

const MAX_MAJOR: usize = 500;

/// Projection of `q` onto `conv(gens)` together with the distance.
pub fn project_onto_hull(gens: &[Point], q: &Point) -> (Point, f64) {
    debug_assert!(!gens.is_empty());
    let pts: Vec<Point> = gens.iter().map(|g| g.sub(q)).collect();
    let x = min_norm_in_hull(&pts);
    (q.add(&x), x.norm())
}

/// Distance from `q` to `conv(gens)` (0 if inside).
pub fn distance_to_hull(gens: &[Point], q: &Point) -> f64 {
    project_onto_hull(gens, q).1
}

/// Minimum-norm point of `conv(pts)`.
fn min_norm_in_hull(pts: &[Point]) -> Point {
    let mut corral: Vec<usize> = Vec::new();
    let mut lambda: Vec<f64> = Vec::new();
    // start from the smallest-norm generator
    let start = pts
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.norm_sq().partial_cmp(&b.1.norm_sq()).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    corral.push(start);
    lambda.push(1.0);
    let mut x = pts[start];

    for _ in 0..MAX_MAJOR {
        let xx = x.norm_sq();
        if xx <= 1e-28 {
            return Point::zero(x.dim()); // origin inside the hull
        }
        // most violating generator
        let (j, xp) = pts
            .iter()
            .enumerate()
            .map(|(i, p)| (i, x.dot(p)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if xx - xp <= 1e-12 * (1.0 + xx) || corral.contains(&j) {
            return x;
        }
        corral.push(j);
        lambda.push(0.0);

        // minor cycle: restrict to the affine hull of the corral
        loop {
            let Some(alpha) = affine_min_norm(pts, &corral) else {
                // singular system: drop the newest generator and stop improving
                corral.pop();
                lambda.pop();
                return x;
            };
            if alpha.iter().all(|&a| a > 1e-12) {
                lambda = alpha;
                break;
            }
            // step from lambda toward alpha until a coefficient vanishes
            let mut theta = 1.0f64;
            for (l, a) in lambda.iter().zip(alpha.iter()) {
                if *a <= 1e-12 && *l > *a {
                    theta = theta.min(l / (l - a));
                }
            }
            for (l, a) in lambda.iter_mut().zip(alpha.iter()) {
                *l += theta * (*a - *l);
            }
            // remove vanished generators (keep at least one)
            let mut k = 0;
            while k < corral.len() {
                if lambda[k] <= 1e-12 && corral.len() > 1 {
                    corral.remove(k);
                    lambda.remove(k);
                } else {
                    k += 1;
                }
            }
            if corral.len() == 1 {
                lambda[0] = 1.0;
                break;
            }
        }
        let dim = pts[0].dim();
        x = Point::zero(dim);
        for (idx, l) in corral.iter().zip(lambda.iter()) {
            x = x.add(&pts[*idx].scale(*l));
        }
    }
    x
}

/// Minimize `|sum alpha_i p_i|` subject to `sum alpha_i = 1` over the corral.
fn affine_min_norm(pts: &[Point], corral: &[usize]) -> Option<Vec<f64>> {
    let k = corral.len();
    // KKT system: [G 1; 1^T 0] [alpha; mu] = [0; 1]
    let mut a = vec![vec![0.0; k + 1]; k + 1];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = pts[corral[i]].dot(&pts[corral[j]]);
        }
        a[i][k] = 1.0;
        a[k][i] = 1.0;
    }
    let mut b = vec![0.0; k + 1];
    b[k] = 1.0;
    let sol = solve_linear(&a, &b)?;
    Some(sol[..k].to_vec())
}
