//! Convex body representations and exact membership decisions.
//!
//! Bodies are immutable after construction and safe to share across threads;
//! membership queries are read-only. Each body caches a normalized membership
//! form (see [`normal`]) so that the LP matrix build hits closed-form tests.

mod descriptor;
mod normal;
pub mod poly2;
pub(crate) mod smallp;
mod wolfe;

pub use descriptor::BodyDescriptor;

use crate::error::{Error, Result};
use crate::point::Point;
use normal::MemberForm;
use rand::Rng;
use smallp::{solve_linear, solve_max, SmallLp};

/// Default boundary tolerance for membership decisions (absolute, Euclidean).
pub const DEFAULT_TOL: f64 = 1e-9;

/// Closed half-space `normal . x <= offset`.
#[derive(Clone, Debug)]
pub struct HalfSpace {
    pub normal: Point,
    pub offset: f64,
}

#[derive(Clone, Debug)]
pub enum Shape {
    Box { lo: Point, hi: Point },
    Ball { center: Point, radius: f64 },
    HPolytope { halfspaces: Vec<HalfSpace> },
    VSimplex { vertices: Vec<Point> },
    CrossPolytope { center: Point, radius: f64 },
    Scaled { factor: f64, inner: Box<ConvexBody> },
    Translated { vector: Point, inner: Box<ConvexBody> },
    Negated { inner: Box<ConvexBody> },
    MinkowskiSum { a: Box<ConvexBody>, b: Box<ConvexBody> },
}

/// A convex body with an interior witness and a cached membership form.
#[derive(Clone, Debug)]
pub struct ConvexBody {
    dim: usize,
    shape: Shape,
    interior_point: Point,
    inner_radius: f64,
    bbox: (Point, Point),
    form: MemberForm,
}

impl ConvexBody {
    pub fn axis_box(lo: &[f64], hi: &[f64]) -> Result<ConvexBody> {
        let dim = lo.len();
        if dim == 0 || hi.len() != dim {
            return Err(Error::InvalidBody("box bounds length mismatch".into()));
        }
        for i in 0..dim {
            if !(lo[i] < hi[i]) {
                return Err(Error::InvalidBody(format!(
                    "box requires lo < hi componentwise (axis {i}: {} vs {})",
                    lo[i], hi[i]
                )));
            }
        }
        let lo_p = Point::from_slice(lo);
        let hi_p = Point::from_slice(hi);
        let form = if dim == 1 {
            MemberForm::Interval {
                lo: lo[0],
                hi: hi[0],
                r: 0.0,
            }
        } else {
            MemberForm::BoxR {
                lo: lo_p,
                hi: hi_p,
                r: 0.0,
            }
        };
        let center = lo_p.add(&hi_p).scale(0.5);
        let r_in = (0..dim)
            .map(|i| (hi[i] - lo[i]) / 2.0)
            .fold(f64::INFINITY, f64::min);
        Ok(ConvexBody {
            dim,
            shape: Shape::Box { lo: lo_p, hi: hi_p },
            interior_point: center,
            inner_radius: r_in,
            bbox: (lo_p, hi_p),
            form,
        })
    }

    pub fn ball(center: &[f64], radius: f64) -> Result<ConvexBody> {
        if radius <= 0.0 {
            return Err(Error::InvalidBody("ball radius must be positive".into()));
        }
        let c = Point::from_slice(center);
        let dim = c.dim();
        if dim == 0 {
            return Err(Error::InvalidBody("ball center must be non-empty".into()));
        }
        let form = if dim == 1 {
            MemberForm::Interval {
                lo: center[0] - radius,
                hi: center[0] + radius,
                r: 0.0,
            }
        } else {
            MemberForm::BallR { center: c, radius }
        };
        let bbox = form.bbox();
        Ok(ConvexBody {
            dim,
            shape: Shape::Ball { center: c, radius },
            interior_point: c,
            inner_radius: radius,
            bbox,
            form,
        })
    }

    pub fn cross_polytope(center: &[f64], radius: f64) -> Result<ConvexBody> {
        if radius <= 0.0 {
            return Err(Error::InvalidBody(
                "cross-polytope radius must be positive".into(),
            ));
        }
        let c = Point::from_slice(center);
        let dim = c.dim();
        if dim == 0 {
            return Err(Error::InvalidBody("cross-polytope center empty".into()));
        }
        let mut verts = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            for s in [-1.0, 1.0] {
                let mut v = c;
                v.set(i, c.get(i) + s * radius);
                verts.push(v);
            }
        }
        let form = match dim {
            1 => MemberForm::Interval {
                lo: center[0] - radius,
                hi: center[0] + radius,
                r: 0.0,
            },
            2 => MemberForm::Poly2R {
                poly: poly2::Polygon2::from_points(&verts),
                r: 0.0,
            },
            _ => {
                // facets: sum_i sigma_i (x_i - c_i) <= radius, unit-normalized
                let scale = 1.0 / (dim as f64).sqrt();
                let mut halfspaces = Vec::with_capacity(1 << dim);
                for mask in 0..(1usize << dim) {
                    let mut n = Point::zero(dim);
                    for i in 0..dim {
                        n.set(i, if mask >> i & 1 == 1 { scale } else { -scale });
                    }
                    halfspaces.push((n, radius * scale + n.dot(&c)));
                }
                MemberForm::HPolyV {
                    halfspaces,
                    gens: verts.clone(),
                }
            }
        };
        let bbox = form.bbox();
        Ok(ConvexBody {
            dim,
            shape: Shape::CrossPolytope { center: c, radius },
            interior_point: c,
            inner_radius: radius / (dim as f64).sqrt(),
            bbox,
            form,
        })
    }

    /// Simplex from `dim + 1` affinely independent vertices.
    pub fn simplex(vertices: &[Vec<f64>]) -> Result<ConvexBody> {
        if vertices.is_empty() {
            return Err(Error::InvalidBody("simplex needs vertices".into()));
        }
        let dim = vertices[0].len();
        if vertices.len() != dim + 1 {
            return Err(Error::InvalidBody(format!(
                "simplex in dimension {dim} needs {} vertices, got {}",
                dim + 1,
                vertices.len()
            )));
        }
        let verts: Vec<Point> = vertices.iter().map(|v| Point::from_slice(v)).collect();
        // affine independence via the edge matrix determinant
        let rows: Vec<Vec<f64>> = (1..=dim)
            .map(|i| verts[i].sub(&verts[0]).as_slice().to_vec())
            .collect();
        let vol_factor = det(&rows).abs();
        if vol_factor < 1e-12 {
            return Err(Error::InvalidBody(
                "simplex vertices are affinely dependent".into(),
            ));
        }
        let halfspaces = simplex_facets(&verts)?;
        let (center, r_in) = chebyshev_center(&halfspaces, dim)?;
        let form = match dim {
            1 => MemberForm::Interval {
                lo: verts.iter().map(|p| p.get(0)).fold(f64::INFINITY, f64::min),
                hi: verts
                    .iter()
                    .map(|p| p.get(0))
                    .fold(f64::NEG_INFINITY, f64::max),
                r: 0.0,
            },
            2 => MemberForm::Poly2R {
                poly: poly2::Polygon2::from_points(&verts),
                r: 0.0,
            },
            _ => MemberForm::HPolyV {
                halfspaces: halfspaces.clone(),
                gens: verts.clone(),
            },
        };
        let bbox = form.bbox();
        Ok(ConvexBody {
            dim,
            shape: Shape::VSimplex { vertices: verts },
            interior_point: center,
            inner_radius: r_in,
            bbox,
            form,
        })
    }

    /// Bounded full-dimensional polytope from half-spaces `n . x <= b`.
    ///
    /// Boundedness and full-dimensionality are certified at construction
    /// (coordinate LPs and the Chebyshev LP); vertices are enumerated for
    /// the membership form.
    pub fn hpolytope(halfspaces: Vec<HalfSpace>) -> Result<ConvexBody> {
        if halfspaces.is_empty() {
            return Err(Error::InvalidBody("hpolytope needs half-spaces".into()));
        }
        let dim = halfspaces[0].normal.dim();
        let mut unit = Vec::with_capacity(halfspaces.len());
        for hs in &halfspaces {
            if hs.normal.dim() != dim {
                return Err(Error::InvalidBody(
                    "hpolytope normals have mixed dimensions".into(),
                ));
            }
            let n = hs.normal.norm();
            if n < 1e-12 {
                return Err(Error::InvalidBody("hpolytope has a zero normal".into()));
            }
            unit.push((hs.normal.scale(1.0 / n), hs.offset / n));
        }
        if unit.len() > 40 {
            return Err(Error::InvalidBody(
                "hpolytope supports at most 40 half-spaces".into(),
            ));
        }
        // boundedness: max +/- e_k over the polytope must be finite
        for k in 0..dim {
            for sign in [1.0, -1.0] {
                if coordinate_max(&unit, dim, k, sign).is_none() {
                    return Err(Error::InvalidBody(format!(
                        "hpolytope is unbounded in coordinate {k}"
                    )));
                }
            }
        }
        let (center, r_in) = chebyshev_center(&unit, dim)?;
        if r_in < 1e-9 {
            return Err(Error::InvalidBody(
                "hpolytope is not full-dimensional".into(),
            ));
        }
        let verts = enumerate_vertices(&unit, dim)?;
        let form = match dim {
            1 => MemberForm::Interval {
                lo: verts.iter().map(|p| p.get(0)).fold(f64::INFINITY, f64::min),
                hi: verts
                    .iter()
                    .map(|p| p.get(0))
                    .fold(f64::NEG_INFINITY, f64::max),
                r: 0.0,
            },
            2 => MemberForm::Poly2R {
                poly: poly2::Polygon2::from_points(&verts),
                r: 0.0,
            },
            _ => MemberForm::HPolyV {
                halfspaces: unit,
                gens: verts,
            },
        };
        let bbox = form.bbox();
        Ok(ConvexBody {
            dim,
            shape: Shape::HPolytope { halfspaces },
            interior_point: center,
            inner_radius: r_in,
            bbox,
            form,
        })
    }

    /// Regular hexagon-style polytope from explicit 2D vertices (convenience
    /// for polygon fixtures; goes through the hpolytope validation).
    pub fn polygon2(vertices: &[Vec<f64>]) -> Result<ConvexBody> {
        if vertices.len() < 3 {
            return Err(Error::InvalidBody("polygon needs >= 3 vertices".into()));
        }
        let pts: Vec<Point> = vertices.iter().map(|v| Point::from_slice(v)).collect();
        if pts.iter().any(|p| p.dim() != 2) {
            return Err(Error::InvalidBody("polygon2 vertices must be 2-D".into()));
        }
        let poly = poly2::Polygon2::from_points(&pts);
        if poly.verts.len() < 3 {
            return Err(Error::InvalidBody("polygon is degenerate".into()));
        }
        let n = poly.verts.len();
        let mut halfspaces = Vec::with_capacity(n);
        for i in 0..n {
            let a = &poly.verts[i];
            let b = &poly.verts[(i + 1) % n];
            let e = b.sub(a);
            let nrm = Point::from_slice(&[e.get(1), -e.get(0)]).scale(1.0 / e.norm());
            halfspaces.push(HalfSpace {
                normal: nrm,
                offset: nrm.dot(a),
            });
        }
        ConvexBody::hpolytope(halfspaces)
    }

    pub fn scale(&self, factor: f64) -> Result<ConvexBody> {
        if factor <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be positive, got {factor}"
            )));
        }
        let form = normal::scale(&self.form, factor);
        let bbox = form.bbox();
        Ok(ConvexBody {
            dim: self.dim,
            interior_point: self.interior_point.scale(factor),
            inner_radius: self.inner_radius * factor,
            shape: Shape::Scaled {
                factor,
                inner: Box::new(self.clone()),
            },
            bbox,
            form,
        })
    }

    pub fn translate(&self, v: &[f64]) -> Result<ConvexBody> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let vp = Point::from_slice(v);
        let form = normal::translate(&self.form, &vp);
        let bbox = form.bbox();
        Ok(ConvexBody {
            dim: self.dim,
            interior_point: self.interior_point.add(&vp),
            inner_radius: self.inner_radius,
            shape: Shape::Translated {
                vector: vp,
                inner: Box::new(self.clone()),
            },
            bbox,
            form,
        })
    }

    pub fn negate(&self) -> ConvexBody {
        let form = normal::negate(&self.form);
        let bbox = form.bbox();
        ConvexBody {
            dim: self.dim,
            interior_point: self.interior_point.neg(),
            inner_radius: self.inner_radius,
            shape: Shape::Negated {
                inner: Box::new(self.clone()),
            },
            bbox,
            form,
        }
    }

    pub fn minkowski_sum(&self, other: &ConvexBody) -> Result<ConvexBody> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let form = normal::minkowski(&self.form, &other.form, self.dim)
            .map_err(Error::InvalidBody)?;
        let bbox = form.bbox();
        Ok(ConvexBody {
            dim: self.dim,
            interior_point: self.interior_point.add(&other.interior_point),
            inner_radius: self.inner_radius + other.inner_radius,
            shape: Shape::MinkowskiSum {
                a: Box::new(self.clone()),
                b: Box::new(other.clone()),
            },
            bbox,
            form,
        })
    }

    /// Inflate by a Euclidean ball of radius `r` (frequent enough to name).
    pub fn inflate(&self, r: f64) -> Result<ConvexBody> {
        let origin = vec![0.0; self.dim];
        self.minkowski_sum(&ConvexBody::ball(&origin, r)?)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Membership with explicit boundary tolerance; errors on dimension
    /// mismatch.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.form.contains(&Point::from_slice(x), tol))
    }

    /// Membership for pre-validated points (hot path; no dimension check).
    #[inline]
    pub fn contains_point(&self, x: &Point, tol: f64) -> bool {
        self.form.contains(x, tol)
    }

    /// Euclidean distance from `x` to the body (0 inside).
    #[inline]
    pub fn distance(&self, x: &Point) -> f64 {
        self.form.distance(x)
    }

    /// Euclidean projection onto the body.
    #[inline]
    pub fn project(&self, x: &Point) -> Point {
        self.form.project(x)
    }

    /// Axis-aligned bounding box (tight for primitives, interval arithmetic
    /// for combinators).
    pub fn bounding_box(&self) -> (Point, Point) {
        self.bbox
    }

    /// A point certified to lie in the interior.
    pub fn interior_point(&self) -> Point {
        self.interior_point
    }

    /// Radius of a ball around [`Self::interior_point`] contained in the body.
    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    /// Homothetic erosion: shrink about the interior witness so that the
    /// result plus `margin * B` stays inside the body.
    pub fn erode(&self, margin: f64) -> Result<ConvexBody> {
        if margin <= 0.0 {
            return Err(Error::InvalidParameter("erosion margin must be > 0".into()));
        }
        if margin >= self.inner_radius {
            return Err(Error::InvalidParameter(format!(
                "erosion margin {margin} >= inner radius {}",
                self.inner_radius
            )));
        }
        let t0 = self.interior_point;
        let f = 1.0 - margin / self.inner_radius;
        // translate(scale(T - t0, f), t0)
        self.translate(&t0.neg().to_vec())?
            .scale(f)?
            .translate(&t0.to_vec())
    }

    /// Uniform sample by rejection from the bounding box.
    pub fn sample_uniform<R: Rng>(&self, rng: &mut R) -> Point {
        let (lo, hi) = self.bbox;
        loop {
            let mut p = Point::zero(self.dim);
            for i in 0..self.dim {
                p.set(i, rng.gen_range(lo.get(i)..=hi.get(i)));
            }
            if self.form.contains(&p, 0.0) {
                return p;
            }
        }
    }
}

fn det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let mut d = 1.0;
    for col in 0..n {
        let (piv, mag) = (col..n)
            .map(|i| (i, m[i][col].abs()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if mag < 1e-14 {
            return 0.0;
        }
        if piv != col {
            m.swap(col, piv);
            d = -d;
        }
        d *= m[col][col];
        for i in col + 1..n {
            let f = m[i][col] / m[col][col];
            let prow = m[col].clone();
            for (v, pv) in m[i].iter_mut().zip(prow.iter()) {
                *v -= f * pv;
            }
        }
    }
    d
}

/// Facet half-spaces of a simplex, unit normals, oriented inward-feasible.
fn simplex_facets(verts: &[Point]) -> Result<Vec<(Point, f64)>> {
    let dim = verts[0].dim();
    let mut out = Vec::with_capacity(verts.len());
    for excl in 0..verts.len() {
        let facet: Vec<&Point> = verts
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != excl)
            .map(|(_, v)| v)
            .collect();
        // normal orthogonal to facet-spanning edges; solve with a pinned
        // coordinate to avoid the trivial solution
        let base = facet[0];
        let mut normal = None;
        for pin in 0..dim {
            let mut a: Vec<Vec<f64>> = facet[1..]
                .iter()
                .map(|v| v.sub(base).as_slice().to_vec())
                .collect();
            let mut row = vec![0.0; dim];
            row[pin] = 1.0;
            a.push(row);
            let mut b = vec![0.0; dim];
            b[dim - 1] = 1.0;
            if let Some(sol) = solve_linear(&a, &b) {
                let n = Point::from_slice(&sol);
                if n.norm() > 1e-9 {
                    normal = Some(n.scale(1.0 / n.norm()));
                    break;
                }
            }
        }
        let Some(mut n) = normal else {
            return Err(Error::InvalidBody("degenerate simplex facet".into()));
        };
        let mut b = n.dot(base);
        if n.dot(&verts[excl]) > b {
            n = n.neg();
            b = -b;
        }
        out.push((n, b));
    }
    Ok(out)
}

/// Chebyshev center of a polytope in unit-normal H-representation:
/// maximize `r` subject to `n_i . x + r <= b_i`.
fn chebyshev_center(halfspaces: &[(Point, f64)], dim: usize) -> Result<(Point, f64)> {
    // variables: u (dim), v (dim), r  with  x = u - v
    let nvar = 2 * dim + 1;
    let mut a = Vec::with_capacity(halfspaces.len());
    let mut b = Vec::with_capacity(halfspaces.len());
    for (n, off) in halfspaces {
        let mut row = vec![0.0; nvar];
        for i in 0..dim {
            row[i] = n.get(i);
            row[dim + i] = -n.get(i);
        }
        row[2 * dim] = 1.0;
        a.push(row);
        b.push(*off);
    }
    let mut c = vec![0.0; nvar];
    c[2 * dim] = 1.0;
    match solve_max(&a, &b, &c) {
        SmallLp::Optimal { value, x } => {
            let mut center = Point::zero(dim);
            for i in 0..dim {
                center.set(i, x[i] - x[dim + i]);
            }
            Ok((center, value))
        }
        SmallLp::Infeasible => Err(Error::InvalidBody("polytope is empty".into())),
        SmallLp::Unbounded => Err(Error::InvalidBody("polytope is unbounded".into())),
    }
}

/// Maximum of `sign * x_k` over the polytope, `None` when unbounded.
fn coordinate_max(halfspaces: &[(Point, f64)], dim: usize, k: usize, sign: f64) -> Option<f64> {
    let nvar = 2 * dim;
    let mut a = Vec::with_capacity(halfspaces.len());
    let mut b = Vec::with_capacity(halfspaces.len());
    for (n, off) in halfspaces {
        let mut row = vec![0.0; nvar];
        for i in 0..dim {
            row[i] = n.get(i);
            row[dim + i] = -n.get(i);
        }
        a.push(row);
        b.push(*off);
    }
    let mut c = vec![0.0; nvar];
    c[k] = sign;
    c[dim + k] = -sign;
    match solve_max(&a, &b, &c) {
        SmallLp::Optimal { value, .. } => Some(value),
        _ => None,
    }
}

/// Vertices of a bounded polytope by facet-subset enumeration.
fn enumerate_vertices(halfspaces: &[(Point, f64)], dim: usize) -> Result<Vec<Point>> {
    let m = halfspaces.len();
    let mut verts: Vec<Point> = Vec::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        // solve the active set
        let a: Vec<Vec<f64>> = idx
            .iter()
            .map(|&i| halfspaces[i].0.as_slice().to_vec())
            .collect();
        let b: Vec<f64> = idx.iter().map(|&i| halfspaces[i].1).collect();
        if let Some(x) = solve_linear(&a, &b) {
            let p = Point::from_slice(&x);
            let feasible = halfspaces.iter().all(|(n, off)| n.dot(&p) <= off + 1e-7);
            if feasible && !verts.iter().any(|v| v.dist(&p) < 1e-9) {
                verts.push(p);
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                if verts.len() < dim + 1 {
                    return Err(Error::InvalidBody(
                        "hpolytope vertex enumeration found too few vertices".into(),
                    ));
                }
                return Ok(verts);
            }
            i -= 1;
            if idx[i] != i + m - dim {
                idx[i] += 1;
                for j in i + 1..dim {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests;
