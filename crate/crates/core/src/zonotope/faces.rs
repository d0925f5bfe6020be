use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::polytope::Zonotope;
use crate::coxeter::{separates, Wall, WeylGroup};
use crate::error::{Error, Result};
use crate::scalar::{int, Scalar, Vector};

/// The face of `Z(D)` on which `<direction, ·>` is maximal:
/// `translation + Z(residual)`.
#[derive(Clone, Debug, Serialize)]
pub struct ZFace {
    pub translation: Vector,
    pub residual: Vec<Vector>,
    pub direction: Vector,
}

impl ZFace {
    /// Vertices of the face.
    pub fn vertices(&self) -> Result<Vec<Vector>> {
        let sub = Zonotope::new_in(self.translation.dim(), &self.residual)?;
        Ok(sub.vertices.iter().map(|v| &self.translation + v).collect())
    }

    pub fn barycenter(&self) -> Vector {
        let mut b = self.translation.clone();
        let half = Scalar::one() / int(2);
        for v in &self.residual {
            b.add_scaled(&half, v);
        }
        b
    }
}

/// `N(F) = { c : <c, v> >= 0 for <n,v> > 0, <= 0 for <n,v> < 0, = 0 for <n,v> = 0 }`,
/// with generators: `rays` (extreme rays modulo the lineality space) and a
/// basis of the lineality space.
#[derive(Clone, Debug, Serialize)]
pub struct NormalConeDesc {
    pub positive: Vec<Vector>,
    pub negative: Vec<Vector>,
    pub orthogonal: Vec<Vector>,
    pub rays: Vec<Vector>,
    pub lineality: Vec<Vector>,
}

impl NormalConeDesc {
    pub fn contains(&self, c: &Vector) -> bool {
        self.positive.iter().all(|v| !c.dot(v).is_negative())
            && self.negative.iter().all(|v| !c.dot(v).is_positive())
            && self.orthogonal.iter().all(|v| c.dot(v).is_zero())
    }
}

pub fn face_and_cone(z: &Zonotope, n: &Vector) -> Result<(ZFace, NormalConeDesc)> {
    if n.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let mut translation = Vector::zeros(z.ambient);
    let (mut positive, mut negative, mut orthogonal) = (Vec::new(), Vec::new(), Vec::new());
    for v in &z.generators {
        let p = n.dot(v);
        if p.is_positive() {
            translation = &translation + v;
            positive.push(v.clone());
        } else if p.is_negative() {
            negative.push(v.clone());
        } else {
            orthogonal.push(v.clone());
        }
    }
    let face = ZFace { translation, residual: orthogonal.clone(), direction: n.clone() };
    // facets containing the face
    let rays: Vec<Vector> = z
        .facets
        .iter()
        .filter(|f| {
            f.wall.contains(&face.translation) && face.residual.iter().all(|v| f.wall.normal.dot(v).is_zero())
        })
        .map(|f| f.wall.normal.clone())
        .collect();
    let lineality = z.equalities.clone();
    Ok((face, NormalConeDesc { positive, negative, orthogonal, rays, lineality }))
}

/// Sample points of a face and of its normal cone: all face vertices, the
/// barycenter, every cone ray, and seeded random nonnegative combinations.
fn samples(face: &ZFace, cone: &NormalConeDesc, count: usize, seed: u64) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fv = face.vertices()?;
    let mut fs = fv.clone();
    fs.push(face.barycenter());
    let mut gens = cone.rays.clone();
    for l in &cone.lineality {
        gens.push(l.clone());
        gens.push(-l);
    }
    let mut cs = gens.clone();
    for _ in 0..count {
        if !fv.is_empty() {
            let mut p = Vector::zeros(face.translation.dim());
            let ws: Vec<Scalar> = fv.iter().map(|_| int(rng.gen_range(0..8))).collect();
            let total: Scalar = ws.iter().sum();
            if !total.is_zero() {
                for (w, v) in ws.iter().zip(&fv) {
                    p.add_scaled(&(w / &total), v);
                }
                fs.push(p);
            }
        }
        if !gens.is_empty() {
            let mut c = Vector::zeros(face.translation.dim());
            for g in &gens {
                c.add_scaled(&int(rng.gen_range(0..8)), g);
            }
            cs.push(c);
        }
    }
    Ok((fs, cs))
}

/// Checks that no wall of `W` separates two of `f`, `c`, `f + c` for sampled
/// `f` in the face and `c` in its normal cone. Errors unless `Z` is
/// W-invariant.
pub fn weyl_chamber_check(z: &Zonotope, weyl: &WeylGroup, roots: &[Vector], face: &ZFace, cone: &NormalConeDesc, count: usize, seed: u64) -> Result<bool> {
    if !z.invariant_under(&weyl.elements) {
        return Err(Error::Precondition("zonotope is not invariant under the reflection group".into()));
    }
    let walls: Vec<Wall> = roots.iter().map(|r| Wall::linear(r.clone())).collect::<Result<_>>()?;
    let (fs, cs) = samples(face, cone, count, seed)?;
    for f in &fs {
        for c in &cs {
            let s = f + c;
            for w in &walls {
                if separates(w, f, c) || separates(w, f, &s) || separates(w, c, &s) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether some `t in [0,1]` has `z - t v` and `z + (1-t) v` both in `Z`.
/// Returns the smallest such `t`.
pub fn segment_through(z: &Zonotope, p: &Vector, v: &Vector) -> Result<Option<Scalar>> {
    if !z.contains(p) {
        return Err(Error::NotInZonotope(p.to_string()));
    }
    if !z.generators.contains(v) {
        return Err(Error::NotAGenerator(v.to_string()));
    }
    // feasible t: for each facet <n, p> + s <n, v> <= offset with s = -t and s = 1 - t
    let (mut lo, mut hi) = (Scalar::zero(), Scalar::one());
    let rel = p - &z.translation;
    if z.equalities.iter().any(|c| !c.dot(v).is_zero() || !c.dot(&rel).is_zero()) {
        return Ok(None);
    }
    for f in &z.facets {
        let slack = &f.wall.offset - f.wall.normal.dot(p);
        let nv = f.wall.normal.dot(v);
        // s * nv <= slack for s in {-t, 1 - t}
        for k in [Scalar::zero(), Scalar::one()] {
            // (k - t) nv <= slack  <=>  -t nv <= slack - k nv
            let rhs = &slack - &k * &nv;
            if nv.is_positive() {
                let bound = -(&rhs / &nv);
                if bound > lo {
                    lo = bound;
                }
            } else if nv.is_negative() {
                let bound = -(&rhs / &nv);
                if bound < hi {
                    hi = bound;
                }
            } else if rhs.is_negative() {
                return Ok(None);
            }
        }
    }
    Ok((lo <= hi).then_some(lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_system, FiniteType, TypeTag};
    use crate::scalar::frac;

    fn z(gens: &[&[i64]]) -> Zonotope {
        Zonotope::new(&gens.iter().map(|g| Vector::from_ints(g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn faces_of_square_and_hexagon() {
        let sq = z(&[&[1, 0], &[0, 1]]);
        let (f, _) = face_and_cone(&sq, &Vector::from_ints(&[1, 0])).unwrap();
        assert_eq!(f.translation, Vector::from_ints(&[1, 0]));
        assert_eq!(f.residual, vec![Vector::from_ints(&[0, 1])]);
        let (f, cone) = face_and_cone(&sq, &Vector::from_ints(&[1, 1])).unwrap();
        assert_eq!(f.vertices().unwrap(), vec![Vector::from_ints(&[1, 1])]);
        assert!(f.residual.is_empty());
        assert_eq!(cone.rays.len(), 2);
        let hex = z(&[&[1, 0], &[0, 1], &[1, 1]]);
        let (f, _) = face_and_cone(&hex, &Vector::from_ints(&[1, 1])).unwrap();
        assert_eq!(f.translation, Vector::from_ints(&[2, 2]));
        assert_eq!(face_and_cone(&hex, &Vector::zeros(2)).unwrap_err(), Error::ZeroDirection);
    }

    #[test]
    fn chamber_check_on_b2_square() {
        let (sys, weyl) = build_system(TypeTag::finite(FiniteType::B2)).unwrap();
        let sq = z(&[&[2, 0], &[-2, 0], &[0, 2], &[0, -2]]);
        let sq = Zonotope::new(&sq.generators.iter().map(|g| g.scale(&frac(1, 2))).collect::<Vec<_>>()).unwrap();
        let (f, cone) = face_and_cone(&sq, &Vector::from_ints(&[1, 1])).unwrap();
        assert_eq!(f.translation, Vector::from_ints(&[1, 1]));
        assert!(weyl_chamber_check(&sq, &weyl, &sys.positive, &f, &cone, 20, 7).unwrap());
    }

    #[test]
    fn chamber_check_requires_invariance() {
        let (sys, weyl) = build_system(TypeTag::finite(FiniteType::B2)).unwrap();
        let skew = z(&[&[1, 0], &[0, 1]]);
        let (f, cone) = face_and_cone(&skew, &Vector::from_ints(&[1, 1])).unwrap();
        assert!(matches!(weyl_chamber_check(&skew, &weyl, &sys.positive, &f, &cone, 5, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn segments_in_square() {
        let sq = z(&[&[1, 0], &[0, 1]]);
        let e1 = Vector::from_ints(&[1, 0]);
        assert_eq!(segment_through(&sq, &Vector(vec![frac(1, 2), frac(1, 2)]), &e1).unwrap(), Some(frac(1, 2)));
        assert_eq!(segment_through(&sq, &Vector::from_ints(&[1, 0]), &e1).unwrap(), Some(int(1)));
        assert!(matches!(segment_through(&sq, &Vector::from_ints(&[2, 0]), &e1), Err(Error::NotInZonotope(_))));
    }
}
