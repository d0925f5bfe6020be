use super::patch::ApartmentPatch;
use crate::scalar::{Scalar, Vector};

/// A twin apartment built from two copies of one patch. Opposition is the
/// identity identification of the two copies.
#[derive(Clone, Debug)]
pub struct TwinApartmentModel {
    pub patch: ApartmentPatch,
}

impl TwinApartmentModel {
    pub fn new(patch: ApartmentPatch) -> Self {
        TwinApartmentModel { patch }
    }

    /// The point of the + side opposite `y` on the − side.
    pub fn op(&self, y: &Vector) -> Vector {
        y.clone()
    }

    /// Patch vertices of the + side whose squared codistance to `y` equals
    /// `r2`.
    pub fn level_set(&self, y: &Vector, r2: &Scalar) -> Vec<usize> {
        (0..self.patch.vertices.len())
            .filter(|&v| &codistance_and_coray(self, &self.patch.vertices[v], y).0 == r2)
            .collect()
    }
}

/// Squared codistance between `x` on the + side and `y` on the − side, and the
/// direction of the co-ray from `op(y)` through `x` (first nonzero coordinate
/// scaled to ±1), or `None` when `x = op(y)`.
pub fn codistance_and_coray(model: &TwinApartmentModel, x: &Vector, y: &Vector) -> (Scalar, Option<Vector>) {
    let oy = model.op(y);
    let diff = x - &oy;
    let ray = (!diff.is_zero()).then(|| diff.ray_normalized());
    (diff.norm2(), ray)
}
