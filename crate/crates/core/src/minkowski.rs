//! Vectors of Minkowski 3-space with signature (-, +, +).
//!
//! The ambient space is R^3 equipped with the scalar product
//! `<u, v> = -u1*v1 + u2*v2 + u3*v3`; the first coordinate carries the
//! minus sign. Norms are `sqrt(|<v, v>|)`, so lightlike vectors have norm
//! zero without being zero. The vector product follows the Lorentzian
//! convention
//!
//! ```text
//! u ^ v = (u3*v2 - u2*v3,  u3*v1 - u1*v3,  u1*v2 - u2*v1)
//! ```
//!
//! which is `<`-orthogonal to both factors. Note the first component's
//! sign relative to the Euclidean cross product: `e2 ^ e3 = -e1`, while
//! `e1 ^ e2 = e3` stays familiar.

use std::ops::{Add, Mul, Neg, Sub};

/// Causal character of a vector under the (-, +, +) scalar product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalClass {
    /// `<v, v> > 0`.
    Spacelike,
    /// `<v, v> < 0`.
    Timelike,
    /// `<v, v> = 0` with `v != 0`.
    Lightlike,
    /// The zero vector. Kept distinct from `Lightlike` so callers can
    /// tell "no direction" apart from "null direction".
    Zero,
}

/// A vector (or point) of Minkowski 3-space.
///
/// Components are named after the coordinate order of the ambient chart;
/// `y1` is the timelike direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkVector {
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
}

impl MinkVector {
    pub const ZERO: MinkVector = MinkVector { y1: 0.0, y2: 0.0, y3: 0.0 };

    pub fn new(y1: f64, y2: f64, y3: f64) -> Self {
        MinkVector { y1, y2, y3 }
    }

    /// Scalar product `-u1*v1 + u2*v2 + u3*v3`.
    pub fn inner(&self, rhs: &MinkVector) -> f64 {
        -self.y1 * rhs.y1 + self.y2 * rhs.y2 + self.y3 * rhs.y3
    }

    /// `sqrt(|<v, v>|)`; zero exactly for lightlike and zero vectors.
    pub fn norm(&self) -> f64 {
        self.inner(self).abs().sqrt()
    }

    /// Euclidean squared length, used only to scale tolerances.
    pub fn euclid_norm_sq(&self) -> f64 {
        self.y1 * self.y1 + self.y2 * self.y2 + self.y3 * self.y3
    }

    /// Classify the vector, treating `|<v, v>|` below
    /// `tol * (1 + |v|^2_euclid)` as null. The scaling keeps the verdict
    /// meaningful for vectors far from unit size.
    pub fn causal_character(&self, tol: f64) -> CausalClass {
        if self.y1.abs() <= tol && self.y2.abs() <= tol && self.y3.abs() <= tol {
            return CausalClass::Zero;
        }
        let q = self.inner(self);
        if q.abs() <= tol * (1.0 + self.euclid_norm_sq()) {
            CausalClass::Lightlike
        } else if q < 0.0 {
            CausalClass::Timelike
        } else {
            CausalClass::Spacelike
        }
    }

    /// Lorentzian vector product; `<`-orthogonal to both factors.
    pub fn cross(&self, rhs: &MinkVector) -> MinkVector {
        MinkVector {
            y1: self.y3 * rhs.y2 - self.y2 * rhs.y3,
            y2: self.y3 * rhs.y1 - self.y1 * rhs.y3,
            y3: self.y1 * rhs.y2 - self.y2 * rhs.y1,
        }
    }

    /// True when every component is a finite number.
    pub fn is_finite(&self) -> bool {
        self.y1.is_finite() && self.y2.is_finite() && self.y3.is_finite()
    }

    pub fn scale(&self, c: f64) -> MinkVector {
        MinkVector { y1: c * self.y1, y2: c * self.y2, y3: c * self.y3 }
    }
}

impl Add for MinkVector {
    type Output = MinkVector;
    fn add(self, rhs: MinkVector) -> MinkVector {
        MinkVector { y1: self.y1 + rhs.y1, y2: self.y2 + rhs.y2, y3: self.y3 + rhs.y3 }
    }
}

impl Sub for MinkVector {
    type Output = MinkVector;
    fn sub(self, rhs: MinkVector) -> MinkVector {
        MinkVector { y1: self.y1 - rhs.y1, y2: self.y2 - rhs.y2, y3: self.y3 - rhs.y3 }
    }
}

impl Mul<MinkVector> for f64 {
    type Output = MinkVector;
    fn mul(self, rhs: MinkVector) -> MinkVector {
        rhs.scale(self)
    }
}

impl Neg for MinkVector {
    type Output = MinkVector;
    fn neg(self) -> MinkVector {
        self.scale(-1.0)
    }
}
