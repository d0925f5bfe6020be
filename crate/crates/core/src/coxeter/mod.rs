//! Affine Coxeter complexes: root systems, Weyl groups, finite patches of
//! the euclidean Coxeter complex, links of simplices, and the model twin
//! apartment.

mod link;
mod patch;
mod root_system;
mod twin;

pub use link::{link_of, LinkComplex, LinkFactor, LinkVertex};
pub use patch::{generate_patch, ApartmentPatch, Simplex};
pub use root_system::{
    build_system, irreducible_components, reflect_affine, FiniteType, RootSystem, TypeTag, WeylGroup,
};
pub use twin::{codistance_and_coray, TwinApartmentModel};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar, Vector};

/// The affine hyperplane `{x : <normal, x> = offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub normal: Vector,
    pub offset: Scalar,
}

impl Wall {
    pub fn new(normal: Vector, offset: Scalar) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::InvalidWall);
        }
        Ok(Wall { normal, offset })
    }

    /// A linear wall through the origin.
    pub fn linear(normal: Vector) -> Result<Self> {
        Self::new(normal, Scalar::zero())
    }

    /// Signed evaluation `<normal, v> - offset`.
    pub fn eval(&self, v: &Vector) -> Scalar {
        self.normal.dot(v) - &self.offset
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.eval(v).is_zero()
    }
}

pub fn reflect(wall: &Wall, v: &Vector) -> Result<Vector> {
    if wall.normal.is_zero() {
        return Err(Error::InvalidWall);
    }
    Ok(reflect_affine(&wall.normal, &wall.offset, v))
}

/// True iff `u` and `v` lie strictly on opposite sides of the wall.
pub fn separates(wall: &Wall, u: &Vector, v: &Vector) -> bool {
    sign(&wall.eval(u)) * sign(&wall.eval(v)) < 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn wall(n: &[i64]) -> Wall {
        Wall::linear(Vector::from_ints(n)).unwrap()
    }

    #[test]
    fn reflect_examples() {
        let x0 = wall(&[1, 0]);
        assert_eq!(reflect(&x0, &Vector::from_ints(&[3, 1])).unwrap(), Vector::from_ints(&[-3, 1]));
        let diag = wall(&[1, -1]);
        assert_eq!(reflect(&diag, &Vector::from_ints(&[1, 0])).unwrap(), Vector::from_ints(&[0, 1]));
        let on = Vector::from_ints(&[2, 2]);
        assert_eq!(reflect(&diag, &on).unwrap(), on);
    }

    #[test]
    fn affine_reflection_is_involutive_isometry() {
        let w = Wall::new(Vector::from_ints(&[1, 2]), int(3)).unwrap();
        let p = Vector::from_ints(&[5, -1]);
        let q = Vector::from_ints(&[0, 7]);
        let (rp, rq) = (reflect(&w, &p).unwrap(), reflect(&w, &q).unwrap());
        assert_eq!(reflect(&w, &rp).unwrap(), p);
        assert_eq!(rp.dist2(&rq), p.dist2(&q));
    }

    #[test]
    fn zero_normal_is_rejected() {
        assert_eq!(Wall::linear(Vector::zeros(2)), Err(Error::InvalidWall));
        let bogus = Wall { normal: Vector::zeros(2), offset: int(0) };
        assert_eq!(reflect(&bogus, &Vector::from_ints(&[1, 1])), Err(Error::InvalidWall));
    }

    #[test]
    fn separation_examples() {
        let x0 = wall(&[1, 0]);
        assert!(separates(&x0, &Vector::from_ints(&[1, 0]), &Vector::from_ints(&[-1, 0])));
        assert!(!separates(&x0, &Vector::from_ints(&[0, 1]), &Vector::from_ints(&[1, 1])));
        // both points above the diagonal: y - x = 0 and 1
        let diag = wall(&[1, -1]);
        assert!(!separates(&diag, &Vector::from_ints(&[1, 1]), &Vector::from_ints(&[1, 2])));
    }
}
