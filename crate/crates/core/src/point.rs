//! Small fixed-capacity point type.
//!
//! Dimensions are desk-scale (nets refuse dim > 6 by default), so points are
//! stack-allocated copies rather than heap vectors. The capacity bound is a
//! hard limit for the whole crate.

use serde::{Deserialize, Serialize};

/// Maximum spatial dimension supported by [`Point`].
pub const MAX_DIM: usize = 12;

/// A point in `R^n` for `n <= MAX_DIM`, stored inline.
///
/// Unused coordinates are zero, which keeps whole-array arithmetic valid
/// regardless of the logical dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    coords: [f64; MAX_DIM],
    dim: u8,
}

impl Point {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds MAX_DIM");
        Point {
            coords: [0.0; MAX_DIM],
            dim: dim as u8,
        }
    }

    pub fn from_slice(v: &[f64]) -> Self {
        let mut p = Point::zero(v.len());
        p.coords[..v.len()].copy_from_slice(v);
        p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.coords[..self.dim as usize]
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        debug_assert!(i < self.dim as usize);
        self.coords[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: f64) {
        debug_assert!(i < self.dim as usize);
        self.coords[i] = v;
    }

    #[inline]
    pub fn add(&self, other: &Point) -> Point {
        let mut r = *self;
        for i in 0..self.dim as usize {
            r.coords[i] += other.coords[i];
        }
        r
    }

    #[inline]
    pub fn sub(&self, other: &Point) -> Point {
        let mut r = *self;
        for i in 0..self.dim as usize {
            r.coords[i] -= other.coords[i];
        }
        r
    }

    #[inline]
    pub fn scale(&self, f: f64) -> Point {
        let mut r = *self;
        for i in 0..self.dim as usize {
            r.coords[i] *= f;
        }
        r
    }

    #[inline]
    pub fn neg(&self) -> Point {
        self.scale(-1.0)
    }

    #[inline]
    pub fn dot(&self, other: &Point) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim as usize {
            s += self.coords[i] * other.coords[i];
        }
        s
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn dist(&self, other: &Point) -> f64 {
        self.sub(other).norm()
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.as_slice().to_vec()
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<f64> = Vec::deserialize(d)?;
        if v.len() > MAX_DIM {
            return Err(serde::de::Error::custom(format!(
                "point dimension {} exceeds maximum {}",
                v.len(),
                MAX_DIM
            )));
        }
        Ok(Point::from_slice(&v))
    }
}
