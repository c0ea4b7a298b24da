//! Delta-nets of convex bodies with certified covering radius.
//!
//! The construction walks an axis-aligned grid of pitch `h = delta/sqrt(n)`
//! anchored at the bounding-box lower corner. Grid points inside the domain
//! are kept as-is; a grid point outside whose distance to the domain is at
//! most `h*sqrt(n)/2` is replaced by its Euclidean projection onto the
//! domain. Projections are 1-Lipschitz, so every domain point is within
//! `h*sqrt(n)/2 = delta/2` of a kept point: the certified radius is half the
//! requested delta, which leaves the other half for the body inflation used
//! by the LP layer.

use crate::error::{Error, Result};
use crate::geometry::ConvexBody;
use crate::point::Point;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use std::io::Write;

/// Pitch divisor: `h = 2*delta / (sqrt(n) * (1 + EPS_BND))`.
const EPS_BND: f64 = 1.0;
/// Slack added to the projection-repair acceptance and the certified radius.
const PROJ_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct NetConfig {
    /// Nets refuse dimensions above this cap.
    pub dim_cap: usize,
    /// Maximum number of grid candidates before failing loudly.
    pub budget: usize,
    /// Sample count for the covering-radius certification.
    pub certify_samples: usize,
}

impl Default for NetConfig {
    fn default() -> Self {
        NetConfig {
            dim_cap: 6,
            budget: 2_000_000,
            certify_samples: 10_000,
        }
    }
}

/// Finite point set with a certified covering radius over a domain.
#[derive(Clone, Debug)]
pub struct Net {
    pub points: Vec<Point>,
    /// Requested covering radius (the net certifies at most this).
    pub delta: f64,
    /// Constructive covering-radius bound `pitch*sqrt(n)/2 + tol` (<= delta).
    pub certified_radius: f64,
    /// Grid pitch used.
    pub spacing: f64,
    /// Maximum sample-to-net distance observed during certification.
    pub certified_sample_max: f64,
}

/// Axis-aligned grid net of `domain` with covering radius at most `delta`.
pub fn grid_net(domain: &ConvexBody, delta: f64, cfg: &NetConfig) -> Result<Net> {
    if delta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let n = domain.dim();
    if n > cfg.dim_cap {
        return Err(Error::DimOverCap {
            dim: n,
            cap: cfg.dim_cap,
        });
    }
    let sqrt_n = (n as f64).sqrt();
    let pitch = 2.0 * delta / (sqrt_n * (1.0 + EPS_BND));
    let repair_radius = pitch * sqrt_n / 2.0;
    let (lo, hi) = domain.bounding_box();

    let mut counts = vec![0usize; n];
    let mut total: usize = 1;
    for i in 0..n {
        let extent = hi.get(i) - lo.get(i);
        let c = (extent / pitch).ceil() as usize + 1;
        counts[i] = c;
        total = total.saturating_mul(c);
        if total > cfg.budget {
            return Err(Error::NetBudgetExceeded {
                required: total,
                budget: cfg.budget,
            });
        }
    }

    let mut points = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let mut g = Point::zero(n);
        for i in 0..n {
            g.set(i, lo.get(i) + pitch * idx[i] as f64);
        }
        if domain.contains_point(&g, 0.0) {
            points.push(g);
        } else {
            let p = domain.project(&g);
            if p.dist(&g) <= repair_radius + PROJ_TOL {
                points.push(p);
            }
        }
        // advance the odometer (lexicographic, canonical order)
        for i in (0..n).rev() {
            idx[i] += 1;
            if idx[i] < counts[i] {
                continue 'outer;
            }
            idx[i] = 0;
        }
        break;
    }

    let net = Net {
        points,
        delta,
        certified_radius: repair_radius + PROJ_TOL,
        spacing: pitch,
        certified_sample_max: 0.0,
    };
    certify(domain, net, cfg)
}

/// Sample-based certification: every sampled domain point must be within
/// `delta` of the net. Records the maximum observed distance.
fn certify(domain: &ConvexBody, mut net: Net, cfg: &NetConfig) -> Result<Net> {
    let mut rng = ChaCha12Rng::seed_from_u64(0x6e65_7463_6572_7431);
    let mut worst: f64 = 0.0;
    let cells = CellIndex::build(&net);
    for _ in 0..cfg.certify_samples {
        let x = domain.sample_uniform(&mut rng);
        let d = cells.nearest_distance(&x, &net.points);
        if d > worst {
            worst = d;
        }
        if worst > net.delta {
            return Err(Error::NetCertificationFailed {
                observed: worst,
                delta: net.delta,
            });
        }
    }
    net.certified_sample_max = worst;
    Ok(net)
}

/// Bucket net points by grid cell for nearest-point queries.
struct CellIndex {
    origin: Point,
    pitch: f64,
    buckets: std::collections::HashMap<Vec<i64>, Vec<usize>>,
    dim: usize,
}

impl CellIndex {
    fn build(net: &Net) -> CellIndex {
        let dim = net.points.first().map(|p| p.dim()).unwrap_or(1);
        let origin = net.points.first().copied().unwrap_or(Point::zero(dim));
        let pitch = net.spacing.max(1e-12);
        let mut buckets: std::collections::HashMap<Vec<i64>, Vec<usize>> =
            std::collections::HashMap::new();
        for (k, p) in net.points.iter().enumerate() {
            buckets.entry(Self::key(&origin, pitch, p, dim)).or_default().push(k);
        }
        CellIndex {
            origin,
            pitch,
            buckets,
            dim,
        }
    }

    fn key(origin: &Point, pitch: f64, p: &Point, dim: usize) -> Vec<i64> {
        (0..dim)
            .map(|i| ((p.get(i) - origin.get(i)) / pitch).floor() as i64)
            .collect()
    }

    /// Distance to the nearest net point, searching outward cell rings.
    fn nearest_distance(&self, x: &Point, points: &[Point]) -> f64 {
        let center = Self::key(&self.origin, self.pitch, x, self.dim);
        let mut best = f64::INFINITY;
        for ring in 0..=3i64 {
            let mut offs = vec![-ring; self.dim];
            'ring: loop {
                if offs.iter().any(|o| o.abs() == ring) {
                    let key: Vec<i64> = center.iter().zip(offs.iter()).map(|(c, o)| c + o).collect();
                    if let Some(list) = self.buckets.get(&key) {
                        for &k in list {
                            let d = points[k].dist(x);
                            if d < best {
                                best = d;
                            }
                        }
                    }
                }
                for i in (0..self.dim).rev() {
                    offs[i] += 1;
                    if offs[i] <= ring {
                        continue 'ring;
                    }
                    offs[i] = -ring;
                }
                break;
            }
            // a hit in this ring bounds the distance; one extra ring suffices
            if best <= (ring as f64) * self.pitch {
                break;
            }
        }
        if best.is_infinite() {
            // degenerate fallback: brute force
            points.iter().map(|p| p.dist(x)).fold(f64::INFINITY, f64::min)
        } else {
            best
        }
    }
}

impl Net {
    /// One point per row, comma-separated coordinates.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        for p in &self.points {
            let row: Vec<String> = p.as_slice().iter().map(|v| format!("{v}")).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_net_covers() {
        let k = ConvexBody::axis_box(&[0.0], &[1.0]).unwrap();
        let net = grid_net(&k, 0.25, &NetConfig::default()).unwrap();
        assert!(net.spacing <= 0.5);
        assert!(net.certified_radius <= 0.25);
        // every x in [0,1] within 0.25 of a net point (dense check)
        for i in 0..=1000 {
            let x = i as f64 / 1000.0;
            let d = net
                .points
                .iter()
                .map(|p| (p.get(0) - x).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(d <= 0.25 + 1e-12);
        }
    }

    #[test]
    fn square_net_certifies() {
        let k = ConvexBody::axis_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let net = grid_net(&k, 0.5, &NetConfig::default()).unwrap();
        assert!(net.certified_sample_max <= net.delta);
        for p in &net.points {
            assert!(k.contains_point(p, 1e-9));
        }
    }

    #[test]
    fn ball_net_points_inside() {
        let k = ConvexBody::ball(&[0.0, 0.0], 1.0).unwrap();
        let net = grid_net(&k, 0.3, &NetConfig::default()).unwrap();
        for p in &net.points {
            assert!(k.contains_point(p, 1e-9), "{:?}", p);
        }
        assert!(net.certified_sample_max <= 0.3);
    }

    #[test]
    fn refinement_is_nested_and_monotone() {
        let k = ConvexBody::ball(&[0.2, -0.1], 0.8).unwrap();
        let coarse = grid_net(&k, 0.4, &NetConfig::default()).unwrap();
        let fine = grid_net(&k, 0.2, &NetConfig::default()).unwrap();
        assert!(fine.certified_radius <= coarse.certified_radius);
        assert!(fine.certified_sample_max <= coarse.delta);
        // interior coarse grid points reappear in the fine net
        let interior: Vec<&Point> = coarse
            .points
            .iter()
            .filter(|p| k.distance(p) == 0.0 && k.contains_point(p, -1e-6))
            .collect();
        for p in interior {
            let d = fine
                .points
                .iter()
                .map(|q| q.dist(p))
                .fold(f64::INFINITY, f64::min);
            assert!(d <= 1e-9, "coarse interior point missing in fine net");
        }
    }

    #[test]
    fn determinism() {
        let k = ConvexBody::ball(&[0.0, 0.0], 1.0).unwrap();
        let a = grid_net(&k, 0.3, &NetConfig::default()).unwrap();
        let b = grid_net(&k, 0.3, &NetConfig::default()).unwrap();
        assert_eq!(a.points.len(), b.points.len());
        for (p, q) in a.points.iter().zip(b.points.iter()) {
            assert_eq!(p.as_slice(), q.as_slice());
        }
    }

    #[test]
    fn budget_and_dim_guards() {
        let k6 = ConvexBody::axis_box(&[0.0; 6], &[1.0; 6]).unwrap();
        let tiny = NetConfig {
            budget: 100,
            ..NetConfig::default()
        };
        match grid_net(&k6, 0.05, &tiny) {
            Err(Error::NetBudgetExceeded { required, budget }) => {
                assert!(required > budget);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        let k7 = ConvexBody::axis_box(&[0.0; 7], &[1.0; 7]).unwrap();
        assert!(matches!(
            grid_net(&k7, 0.5, &NetConfig::default()),
            Err(Error::DimOverCap { .. })
        ));
    }

    #[test]
    fn csv_dump() {
        let k = ConvexBody::axis_box(&[0.0], &[1.0]).unwrap();
        let net = grid_net(&k, 0.25, &NetConfig::default()).unwrap();
        let mut buf = Vec::new();
        net.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), net.points.len());
    }
}
