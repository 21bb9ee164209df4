//! Small 3D geometry vocabulary: vectors, axis-aligned boxes, ground points
//! and spherical directions.

use core::ops::{Add, Mul, Sub};

use crate::math;

/// A point or displacement in 3D Cartesian space, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, rhs: Vec3) -> f64 {
        self.x * rhs.x + self.y * rhs.y + self.z * rhs.z
    }

    pub fn norm(self) -> f64 {
        math::sqrt(self.dot(self))
    }

    pub fn distance(self, rhs: Vec3) -> f64 {
        (self - rhs).norm()
    }

    /// Distance between the projections of two points onto the ground plane.
    pub fn horizontal_distance(self, rhs: Vec3) -> f64 {
        let dx = self.x - rhs.x;
        let dy = self.y - rhs.y;
        math::sqrt(dx * dx + dy * dy)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        Vec3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

/// A ground node location (z = 0 by construction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPoint {
    pub x: f64,
    pub y: f64,
}

impl GroundPoint {
    pub fn new(x: f64, y: f64) -> Self {
        GroundPoint { x, y }
    }

    pub fn position(self) -> Vec3 {
        Vec3::new(self.x, self.y, 0.0)
    }
}

/// Axis-aligned box, used for the reachable volume of each swarm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Box3 {
    pub min: Vec3,
    pub max: Vec3,
}

impl Box3 {
    pub fn new(min: Vec3, max: Vec3) -> Self {
        Box3 { min, max }
    }

    pub fn contains(&self, p: Vec3) -> bool {
        p.x >= self.min.x
            && p.x <= self.max.x
            && p.y >= self.min.y
            && p.y <= self.max.y
            && p.z >= self.min.z
            && p.z <= self.max.z
    }

    pub fn clamp(&self, p: Vec3) -> Vec3 {
        Vec3::new(
            p.x.clamp(self.min.x, self.max.x),
            p.y.clamp(self.min.y, self.max.y),
            p.z.clamp(self.min.z, self.max.z),
        )
    }

    pub fn center(&self) -> Vec3 {
        (self.min + self.max) * 0.5
    }

    pub fn overlaps(&self, other: &Box3) -> bool {
        self.min.x <= other.max.x
            && self.max.x >= other.min.x
            && self.min.y <= other.max.y
            && self.max.y >= other.min.y
            && self.min.z <= other.max.z
            && self.max.z >= other.min.z
    }

    /// Extent along axis 0 (x), 1 (y) or 2 (z).
    pub fn extent(&self, axis: usize) -> f64 {
        match axis {
            0 => self.max.x - self.min.x,
            1 => self.max.y - self.min.y,
            _ => self.max.z - self.min.z,
        }
    }

    pub fn axis_bounds(&self, axis: usize) -> (f64, f64) {
        match axis {
            0 => (self.min.x, self.max.x),
            1 => (self.min.y, self.max.y),
            _ => (self.min.z, self.max.z),
        }
    }
}

/// A direction on the unit sphere: polar angle `theta` in `[0, pi]` measured
/// from the +z axis, azimuth `phi` in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Self {
        Direction { theta, phi }
    }

    /// Unit vector pointing along this direction.
    pub fn unit(self) -> Vec3 {
        let (sin_t, cos_t) = math::sincos(self.theta);
        let (sin_p, cos_p) = math::sincos(self.phi);
        Vec3::new(sin_t * cos_p, sin_t * sin_p, cos_t)
    }

    /// Direction of the ray from `from` toward `to`. `from` and `to` must
    /// not coincide.
    pub fn between(from: Vec3, to: Vec3) -> Direction {
        let d = to - from;
        let r = d.norm();
        if r == 0.0 {
            return Direction::new(0.0, 0.0);
        }
        Direction::new(math::acos_clamped(d.z / r), math::atan2(d.y, d.x))
    }

    /// Great-circle angle between two directions, in `[0, pi]`.
    pub fn angle_to(self, other: Direction) -> f64 {
        let c = math::cos(self.theta) * math::cos(other.theta)
            + math::sin(self.theta) * math::sin(other.theta) * math::cos(self.phi - other.phi);
        math::acos_clamped(c)
    }
}
