//! Exact 2D convex-polygon operations.
//!
//! Two-dimensional bodies normalize to a convex polygon plus a ball radius,
//! which keeps membership, distance and projection closed-form on the hot
//! paths (LP matrix construction runs millions of these).

use crate::point::Point;

/// Convex polygon in R^2: ccw vertex list plus precomputed unit edge normals.
#[derive(Clone, Debug)]
pub struct Polygon2 {
    pub verts: Vec<Point>,
    /// Outward unit normal and offset per edge: `n . x <= b` inside.
    normals: Vec<(f64, f64, f64)>, // (nx, ny, offset)
}

fn cross(o: &Point, a: &Point, b: &Point) -> f64 {
    (a.get(0) - o.get(0)) * (b.get(1) - o.get(1)) - (a.get(1) - o.get(1)) * (b.get(0) - o.get(0))
}

/// Andrew's monotone chain; returns ccw hull, collinear points dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| {
        a.get(0)
            .partial_cmp(&b.get(0))
            .unwrap()
            .then(a.get(1).partial_cmp(&b.get(1)).unwrap())
    });
    pts.dedup_by(|a, b| a.dist(b) < 1e-12);
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 1e-14
        {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 1e-14
        {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl Polygon2 {
    /// Build from an arbitrary 2D point cloud (hull taken internally).
    pub fn from_points(points: &[Point]) -> Polygon2 {
        let verts = convex_hull(points);
        let mut normals = Vec::with_capacity(verts.len());
        let n = verts.len();
        if n >= 2 {
            for i in 0..n {
                let a = &verts[i];
                let b = &verts[(i + 1) % n];
                let ex = b.get(0) - a.get(0);
                let ey = b.get(1) - a.get(1);
                let len = (ex * ex + ey * ey).sqrt();
                if len < 1e-15 {
                    continue;
                }
                // outward normal for ccw orientation
                let nx = ey / len;
                let ny = -ex / len;
                normals.push((nx, ny, nx * a.get(0) + ny * a.get(1)));
            }
        }
        Polygon2 { verts, normals }
    }

    pub fn translate(&self, v: &Point) -> Polygon2 {
        Polygon2::from_points(&self.verts.iter().map(|p| p.add(v)).collect::<Vec<_>>())
    }

    /// Signed-distance style membership: true iff within `r + tol` of the polygon.
    #[inline]
    pub fn contains(&self, x: &Point, r: f64, tol: f64) -> bool {
        if r == 0.0 {
            return self.max_violation(x) <= tol;
        }
        self.distance(x) <= r + tol
    }

    /// Maximum halfplane violation (<= 0 inside). Degenerate polygons fall
    /// back to vertex distance.
    #[inline]
    pub fn max_violation(&self, x: &Point) -> f64 {
        if self.normals.is_empty() {
            return self.vertex_distance(x);
        }
        let (px, py) = (x.get(0), x.get(1));
        let mut worst = f64::NEG_INFINITY;
        for &(nx, ny, b) in &self.normals {
            let s = nx * px + ny * py - b;
            if s > worst {
                worst = s;
            }
        }
        worst
    }

    fn vertex_distance(&self, x: &Point) -> f64 {
        if self.verts.len() == 2 {
            return segment_distance(&self.verts[0], &self.verts[1], x);
        }
        self.verts
            .iter()
            .map(|v| v.dist(x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Euclidean distance to the polygon (0 inside).
    pub fn distance(&self, x: &Point) -> f64 {
        if !self.normals.is_empty() && self.max_violation(x) <= 0.0 {
            return 0.0;
        }
        let n = self.verts.len();
        if n == 1 {
            return self.verts[0].dist(x);
        }
        let mut best = f64::INFINITY;
        for i in 0..n {
            let d = segment_distance(&self.verts[i], &self.verts[(i + 1) % n.max(2)], x);
            if d < best {
                best = d;
            }
        }
        best
    }

    /// Euclidean projection onto the polygon.
    pub fn project(&self, x: &Point) -> Point {
        if !self.normals.is_empty() && self.max_violation(x) <= 0.0 {
            return *x;
        }
        let n = self.verts.len();
        if n == 1 {
            return self.verts[0];
        }
        let mut best = f64::INFINITY;
        let mut arg = self.verts[0];
        for i in 0..n {
            let p = segment_project(&self.verts[i], &self.verts[(i + 1) % n.max(2)], x);
            let d = p.dist(x);
            if d < best {
                best = d;
                arg = p;
            }
        }
        arg
    }

    /// Shoelace area (0 for degenerate polygons).
    pub fn area(&self) -> f64 {
        let n = self.verts.len();
        if n < 3 {
            return 0.0;
        }
        let mut s = 0.0;
        for i in 0..n {
            let a = &self.verts[i];
            let b = &self.verts[(i + 1) % n];
            s += a.get(0) * b.get(1) - b.get(0) * a.get(1);
        }
        s.abs() / 2.0
    }

    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = Point::from_slice(&[f64::INFINITY, f64::INFINITY]);
        let mut hi = Point::from_slice(&[f64::NEG_INFINITY, f64::NEG_INFINITY]);
        for v in &self.verts {
            for k in 0..2 {
                lo.set(k, lo.get(k).min(v.get(k)));
                hi.set(k, hi.get(k).max(v.get(k)));
            }
        }
        (lo, hi)
    }
}

fn segment_distance(a: &Point, b: &Point, x: &Point) -> f64 {
    segment_project(a, b, x).dist(x)
}

fn segment_project(a: &Point, b: &Point, x: &Point) -> Point {
    let e = b.sub(a);
    let len2 = e.norm_sq();
    if len2 < 1e-30 {
        return *a;
    }
    let t = (x.sub(a).dot(&e) / len2).clamp(0.0, 1.0);
    a.add(&e.scale(t))
}

/// Exact Minkowski sum of two convex polygons (vertex-sum hull).
///
/// Vertex counts are tiny (<= a few dozen), so the quadratic vertex-sum plus
/// hull is simpler than the rotating edge merge and exactly as accurate.
pub fn minkowski_sum(p: &Polygon2, q: &Polygon2) -> Polygon2 {
    let mut pts = Vec::with_capacity(p.verts.len() * q.verts.len());
    for a in &p.verts {
        for b in &q.verts {
            pts.push(a.add(b));
        }
    }
    Polygon2::from_points(&pts)
}
