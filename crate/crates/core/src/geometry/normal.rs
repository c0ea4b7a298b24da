//! Normalized membership forms.
//!
//! Every body in the shape grammar reduces exactly to a Minkowski sum of
//! polytopes plus one Euclidean ball (scale/translate/negate distribute over
//! all primitives, and balls absorb each other). Collapsing that sum at
//! construction gives closed-form membership, distance and projection:
//!
//! - dim 1: an interval plus radius,
//! - dim 2: one convex polygon plus radius (exact polygon Minkowski sums),
//! - dim >= 3: a generator set plus radius (min-norm-point distances), with
//!   boxes and single H-polytopes kept in faster dedicated forms.
//!
//! Membership tolerance is Euclidean: a point within `tol` of the boundary
//! may resolve either way; farther points resolve exactly.

use crate::geometry::poly2::{self, Polygon2};
use crate::geometry::wolfe;
use crate::point::Point;

#[derive(Clone, Debug)]
pub(crate) enum MemberForm {
    /// dim 1: `[lo, hi] + r*B`
    Interval { lo: f64, hi: f64, r: f64 },
    /// axis-aligned box `[lo, hi] + r*B`, any dimension
    BoxR { lo: Point, hi: Point, r: f64 },
    BallR { center: Point, radius: f64 },
    /// dim 2: polygon `+ r*B`
    Poly2R { poly: Polygon2, r: f64 },
    /// dim >= 3, single polytope with H-representation (unit normals) and
    /// generator set; `r = 0`.
    HPolyV {
        halfspaces: Vec<(Point, f64)>,
        gens: Vec<Point>,
    },
    /// dim >= 3 general: `conv(gens) + r*B`
    HullR { gens: Vec<Point>, r: f64 },
}

impl MemberForm {
    /// True iff `x` lies in the body, boundary decided to within `tol`.
    pub fn contains(&self, x: &Point, tol: f64) -> bool {
        match self {
            MemberForm::Interval { lo, hi, r } => {
                let v = x.get(0);
                v >= lo - r - tol && v <= hi + r + tol
            }
            MemberForm::BoxR { lo, hi, r } => {
                if *r == 0.0 {
                    for i in 0..x.dim() {
                        let v = x.get(i);
                        if v < lo.get(i) - tol || v > hi.get(i) + tol {
                            return false;
                        }
                    }
                    true
                } else {
                    box_distance(lo, hi, x) <= r + tol
                }
            }
            MemberForm::BallR { center, radius } => x.dist(center) <= radius + tol,
            MemberForm::Poly2R { poly, r } => poly.contains(x, *r, tol),
            MemberForm::HPolyV { halfspaces, .. } => {
                halfspaces.iter().all(|(n, b)| n.dot(x) <= b + tol)
            }
            MemberForm::HullR { gens, r } => wolfe::distance_to_hull(gens, x) <= r + tol,
        }
    }

    /// Euclidean distance from `x` to the body (0 inside).
    pub fn distance(&self, x: &Point) -> f64 {
        match self {
            MemberForm::Interval { lo, hi, r } => {
                let v = x.get(0);
                ((lo - r) - v).max(v - (hi + r)).max(0.0)
            }
            MemberForm::BoxR { lo, hi, r } => (box_distance(lo, hi, x) - r).max(0.0),
            MemberForm::BallR { center, radius } => (x.dist(center) - radius).max(0.0),
            MemberForm::Poly2R { poly, r } => (poly.distance(x) - r).max(0.0),
            MemberForm::HPolyV { gens, .. } => wolfe::distance_to_hull(gens, x),
            MemberForm::HullR { gens, r } => (wolfe::distance_to_hull(gens, x) - r).max(0.0),
        }
    }

    /// Euclidean projection of `x` onto the body.
    pub fn project(&self, x: &Point) -> Point {
        match self {
            MemberForm::Interval { lo, hi, r } => {
                let v = x.get(0).clamp(lo - r, hi + r);
                Point::from_slice(&[v])
            }
            MemberForm::BoxR { lo, hi, r } => {
                let mut p = *x;
                for i in 0..x.dim() {
                    p.set(i, x.get(i).clamp(lo.get(i), hi.get(i)));
                }
                radial_step(&p, x, *r)
            }
            MemberForm::BallR { center, radius } => radial_step(center, x, *radius),
            MemberForm::Poly2R { poly, r } => {
                let p = poly.project(x);
                radial_step(&p, x, *r)
            }
            MemberForm::HPolyV { gens, .. } => wolfe::project_onto_hull(gens, x).0,
            MemberForm::HullR { gens, r } => {
                let p = wolfe::project_onto_hull(gens, x).0;
                radial_step(&p, x, *r)
            }
        }
    }

    pub fn bbox(&self) -> (Point, Point) {
        match self {
            MemberForm::Interval { lo, hi, r } => (
                Point::from_slice(&[lo - r]),
                Point::from_slice(&[hi + r]),
            ),
            MemberForm::BoxR { lo, hi, r } => {
                let mut l = *lo;
                let mut h = *hi;
                for i in 0..lo.dim() {
                    l.set(i, lo.get(i) - r);
                    h.set(i, hi.get(i) + r);
                }
                (l, h)
            }
            MemberForm::BallR { center, radius } => {
                let mut l = *center;
                let mut h = *center;
                for i in 0..center.dim() {
                    l.set(i, center.get(i) - radius);
                    h.set(i, center.get(i) + radius);
                }
                (l, h)
            }
            MemberForm::Poly2R { poly, r } => {
                let (mut l, mut h) = poly.bbox();
                for i in 0..2 {
                    l.set(i, l.get(i) - r);
                    h.set(i, h.get(i) + r);
                }
                (l, h)
            }
            MemberForm::HPolyV { gens, .. } => gens_bbox(gens, 0.0),
            MemberForm::HullR { gens, r } => gens_bbox(gens, *r),
        }
    }
}

fn gens_bbox(gens: &[Point], r: f64) -> (Point, Point) {
    let dim = gens[0].dim();
    let mut lo = Point::zero(dim);
    let mut hi = Point::zero(dim);
    for i in 0..dim {
        lo.set(i, f64::INFINITY);
        hi.set(i, f64::NEG_INFINITY);
    }
    for g in gens {
        for i in 0..dim {
            lo.set(i, lo.get(i).min(g.get(i)));
            hi.set(i, hi.get(i).max(g.get(i)));
        }
    }
    for i in 0..dim {
        lo.set(i, lo.get(i) - r);
        hi.set(i, hi.get(i) + r);
    }
    (lo, hi)
}

/// Move from `base` toward `x` by at most `r`; identity when already there.
fn radial_step(base: &Point, x: &Point, r: f64) -> Point {
    let d = x.sub(base);
    let n = d.norm();
    if n <= r {
        *x
    } else {
        base.add(&d.scale(r / n))
    }
}

fn box_distance(lo: &Point, hi: &Point, x: &Point) -> f64 {
    let mut s = 0.0;
    for i in 0..x.dim() {
        let v = x.get(i);
        let e = (lo.get(i) - v).max(v - hi.get(i)).max(0.0);
        s += e * e;
    }
    s.sqrt()
}

const MAX_GENS: usize = 200_000;

/// Scale about the origin by `f > 0`.
pub(crate) fn scale(form: &MemberForm, f: f64) -> MemberForm {
    match form {
        MemberForm::Interval { lo, hi, r } => MemberForm::Interval {
            lo: lo * f,
            hi: hi * f,
            r: r * f,
        },
        MemberForm::BoxR { lo, hi, r } => MemberForm::BoxR {
            lo: lo.scale(f),
            hi: hi.scale(f),
            r: r * f,
        },
        MemberForm::BallR { center, radius } => MemberForm::BallR {
            center: center.scale(f),
            radius: radius * f,
        },
        MemberForm::Poly2R { poly, r } => MemberForm::Poly2R {
            poly: Polygon2::from_points(
                &poly.verts.iter().map(|p| p.scale(f)).collect::<Vec<_>>(),
            ),
            r: r * f,
        },
        MemberForm::HPolyV { halfspaces, gens } => MemberForm::HPolyV {
            halfspaces: halfspaces.iter().map(|(n, b)| (*n, b * f)).collect(),
            gens: gens.iter().map(|g| g.scale(f)).collect(),
        },
        MemberForm::HullR { gens, r } => MemberForm::HullR {
            gens: gens.iter().map(|g| g.scale(f)).collect(),
            r: r * f,
        },
    }
}

pub(crate) fn translate(form: &MemberForm, v: &Point) -> MemberForm {
    match form {
        MemberForm::Interval { lo, hi, r } => MemberForm::Interval {
            lo: lo + v.get(0),
            hi: hi + v.get(0),
            r: *r,
        },
        MemberForm::BoxR { lo, hi, r } => MemberForm::BoxR {
            lo: lo.add(v),
            hi: hi.add(v),
            r: *r,
        },
        MemberForm::BallR { center, radius } => MemberForm::BallR {
            center: center.add(v),
            radius: *radius,
        },
        MemberForm::Poly2R { poly, r } => MemberForm::Poly2R {
            poly: poly.translate(v),
            r: *r,
        },
        MemberForm::HPolyV { halfspaces, gens } => MemberForm::HPolyV {
            halfspaces: halfspaces.iter().map(|(n, b)| (*n, b + n.dot(v))).collect(),
            gens: gens.iter().map(|g| g.add(v)).collect(),
        },
        MemberForm::HullR { gens, r } => MemberForm::HullR {
            gens: gens.iter().map(|g| g.add(v)).collect(),
            r: *r,
        },
    }
}

pub(crate) fn negate(form: &MemberForm) -> MemberForm {
    match form {
        MemberForm::Interval { lo, hi, r } => MemberForm::Interval {
            lo: -hi,
            hi: -lo,
            r: *r,
        },
        MemberForm::BoxR { lo, hi, r } => MemberForm::BoxR {
            lo: hi.neg(),
            hi: lo.neg(),
            r: *r,
        },
        MemberForm::BallR { center, radius } => MemberForm::BallR {
            center: center.neg(),
            radius: *radius,
        },
        MemberForm::Poly2R { poly, r } => MemberForm::Poly2R {
            poly: Polygon2::from_points(&poly.verts.iter().map(|p| p.neg()).collect::<Vec<_>>()),
            r: *r,
        },
        MemberForm::HPolyV { halfspaces, gens } => MemberForm::HPolyV {
            halfspaces: halfspaces.iter().map(|(n, b)| (n.neg(), *b)).collect(),
            gens: gens.iter().map(|g| g.neg()).collect(),
        },
        MemberForm::HullR { gens, r } => MemberForm::HullR {
            gens: gens.iter().map(|g| g.neg()).collect(),
            r: *r,
        },
    }
}

/// Exact Minkowski sum of two forms.
pub(crate) fn minkowski(a: &MemberForm, b: &MemberForm, dim: usize) -> Result<MemberForm, String> {
    use MemberForm::*;
    Ok(match (a, b) {
        (Interval { lo, hi, r }, Interval { lo: l2, hi: h2, r: r2 }) => Interval {
            lo: lo + l2,
            hi: hi + h2,
            r: r + r2,
        },
        (BoxR { lo, hi, r }, BoxR { lo: l2, hi: h2, r: r2 }) => BoxR {
            lo: lo.add(l2),
            hi: hi.add(h2),
            r: r + r2,
        },
        (BallR { center, radius }, BallR { center: c2, radius: r2 }) => BallR {
            center: center.add(c2),
            radius: radius + r2,
        },
        (BoxR { lo, hi, r }, BallR { center, radius })
        | (BallR { center, radius }, BoxR { lo, hi, r }) => BoxR {
            lo: lo.add(center),
            hi: hi.add(center),
            r: r + radius,
        },
        (Interval { lo, hi, r }, BallR { center, radius })
        | (BallR { center, radius }, Interval { lo, hi, r }) => Interval {
            lo: lo + center.get(0),
            hi: hi + center.get(0),
            r: r + radius,
        },
        (Poly2R { poly, r }, Poly2R { poly: p2, r: r2 }) => Poly2R {
            poly: poly2::minkowski_sum(poly, p2),
            r: r + r2,
        },
        (Poly2R { poly, r }, BallR { center, radius })
        | (BallR { center, radius }, Poly2R { poly, r }) => Poly2R {
            poly: poly.translate(center),
            r: r + radius,
        },
        (Poly2R { poly, r }, BoxR { lo, hi, r: r2 })
        | (BoxR { lo, hi, r: r2 }, Poly2R { poly, r }) => Poly2R {
            poly: poly2::minkowski_sum(poly, &box_polygon(lo, hi)),
            r: r + r2,
        },
        // dimension >= 3 mixtures reduce to generator sums
        _ => {
            let (ga, ra) = generators_of(a, dim);
            let (gb, rb) = generators_of(b, dim);
            if ga.len() * gb.len() > MAX_GENS {
                return Err(format!(
                    "Minkowski sum generator count {} exceeds {MAX_GENS}",
                    ga.len() * gb.len()
                ));
            }
            let mut gens = Vec::with_capacity(ga.len() * gb.len());
            for x in &ga {
                for y in &gb {
                    gens.push(x.add(y));
                }
            }
            HullR { gens, r: ra + rb }
        }
    })
}

fn generators_of(form: &MemberForm, dim: usize) -> (Vec<Point>, f64) {
    match form {
        MemberForm::Interval { lo, hi, r } => (
            vec![Point::from_slice(&[*lo]), Point::from_slice(&[*hi])],
            *r,
        ),
        MemberForm::BoxR { lo, hi, r } => (box_corners(lo, hi, dim), *r),
        MemberForm::BallR { center, radius } => (vec![*center], *radius),
        MemberForm::Poly2R { poly, r } => (poly.verts.clone(), *r),
        MemberForm::HPolyV { gens, .. } => (gens.clone(), 0.0),
        MemberForm::HullR { gens, r } => (gens.clone(), *r),
    }
}

pub(crate) fn box_polygon(lo: &Point, hi: &Point) -> Polygon2 {
    Polygon2::from_points(&[
        Point::from_slice(&[lo.get(0), lo.get(1)]),
        Point::from_slice(&[hi.get(0), lo.get(1)]),
        Point::from_slice(&[hi.get(0), hi.get(1)]),
        Point::from_slice(&[lo.get(0), hi.get(1)]),
    ])
}

pub(crate) fn box_corners(lo: &Point, hi: &Point, dim: usize) -> Vec<Point> {
    let mut out = Vec::with_capacity(1 << dim);
    for mask in 0..(1usize << dim) {
        let mut p = Point::zero(dim);
        for i in 0..dim {
            p.set(i, if mask >> i & 1 == 1 { hi.get(i) } else { lo.get(i) });
        }
        out.push(p);
    }
    out
}
