//! JSON body descriptors.
//!
//! Schema: `{"dim": n, "shape": {"type": "...", ...}}` with nested inner
//! bodies for the combinators. See the repository README for the full list.

use super::{ConvexBody, HalfSpace, Shape};
use crate::error::{Error, Result};
use crate::point::Point;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BodyDescriptor {
    pub dim: usize,
    pub shape: ShapeDescriptor,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ShapeDescriptor {
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Hpolytope {
        halfspaces: Vec<HalfSpaceDescriptor>,
    },
    Simplex {
        vertices: Vec<Vec<f64>>,
    },
    /// Convex polygon in the plane given by vertices (2-D convenience).
    Polygon {
        vertices: Vec<Vec<f64>>,
    },
    Crosspolytope {
        center: Vec<f64>,
        radius: f64,
    },
    Scale {
        factor: f64,
        inner: Box<BodyDescriptor>,
    },
    Translate {
        vector: Vec<f64>,
        inner: Box<BodyDescriptor>,
    },
    Negate {
        inner: Box<BodyDescriptor>,
    },
    MinkowskiSum {
        a: Box<BodyDescriptor>,
        b: Box<BodyDescriptor>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfSpaceDescriptor {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl BodyDescriptor {
    pub fn build(&self) -> Result<ConvexBody> {
        let body = match &self.shape {
            ShapeDescriptor::Box { lo, hi } => ConvexBody::axis_box(lo, hi)?,
            ShapeDescriptor::Ball { center, radius } => ConvexBody::ball(center, *radius)?,
            ShapeDescriptor::Hpolytope { halfspaces } => ConvexBody::hpolytope(
                halfspaces
                    .iter()
                    .map(|h| HalfSpace {
                        normal: Point::from_slice(&h.normal),
                        offset: h.offset,
                    })
                    .collect(),
            )?,
            ShapeDescriptor::Simplex { vertices } => ConvexBody::simplex(vertices)?,
            ShapeDescriptor::Polygon { vertices } => ConvexBody::polygon2(vertices)?,
            ShapeDescriptor::Crosspolytope { center, radius } => {
                ConvexBody::cross_polytope(center, *radius)?
            }
            ShapeDescriptor::Scale { factor, inner } => inner.build()?.scale(*factor)?,
            ShapeDescriptor::Translate { vector, inner } => inner.build()?.translate(vector)?,
            ShapeDescriptor::Negate { inner } => inner.build()?.negate(),
            ShapeDescriptor::MinkowskiSum { a, b } => a.build()?.minkowski_sum(&b.build()?)?,
        };
        if body.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: body.dim(),
            });
        }
        Ok(body)
    }

    pub fn from_json(s: &str) -> Result<BodyDescriptor> {
        Ok(serde_json::from_str(s)?)
    }

    /// Descriptor for an existing body (reverses `build`).
    pub fn describe(body: &ConvexBody) -> BodyDescriptor {
        BodyDescriptor {
            dim: body.dim(),
            shape: describe_shape(body.shape()),
        }
    }
}

fn describe_shape(shape: &Shape) -> ShapeDescriptor {
    match shape {
        Shape::Box { lo, hi } => ShapeDescriptor::Box {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
        },
        Shape::Ball { center, radius } => ShapeDescriptor::Ball {
            center: center.to_vec(),
            radius: *radius,
        },
        Shape::HPolytope { halfspaces } => ShapeDescriptor::Hpolytope {
            halfspaces: halfspaces
                .iter()
                .map(|h| HalfSpaceDescriptor {
                    normal: h.normal.to_vec(),
                    offset: h.offset,
                })
                .collect(),
        },
        Shape::VSimplex { vertices } => ShapeDescriptor::Simplex {
            vertices: vertices.iter().map(|v| v.to_vec()).collect(),
        },
        Shape::CrossPolytope { center, radius } => ShapeDescriptor::Crosspolytope {
            center: center.to_vec(),
            radius: *radius,
        },
        Shape::Scaled { factor, inner } => ShapeDescriptor::Scale {
            factor: *factor,
            inner: Box::new(BodyDescriptor::describe(inner)),
        },
        Shape::Translated { vector, inner } => ShapeDescriptor::Translate {
            vector: vector.to_vec(),
            inner: Box::new(BodyDescriptor::describe(inner)),
        },
        Shape::Negated { inner } => ShapeDescriptor::Negate {
            inner: Box::new(BodyDescriptor::describe(inner)),
        },
        Shape::MinkowskiSum { a, b } => ShapeDescriptor::MinkowskiSum {
            a: Box::new(BodyDescriptor::describe(a)),
            b: Box::new(BodyDescriptor::describe(b)),
        },
    }
}
