use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::building::SphericalBuildingCx;
use crate::error::{Error, Result};
use crate::homology::SimplicialComplex;
use crate::scalar::{int, Scalar, Subspace, Vector};

/// A building with a direction for every vertex: the direction of its image
/// under the retraction onto the base apartment centered at the base
/// chamber.
#[derive(Clone, Debug)]
pub struct RealizedBuilding {
    pub building: SphericalBuildingCx,
    pub directions: Vec<Vector>,
    /// Vertex of the base apartment each vertex retracts to.
    pub image: Vec<usize>,
}

pub fn realize(b: SphericalBuildingCx) -> Result<RealizedBuilding> {
    let rho = b.retraction(b.base_chamber)?;
    let image = b.vertex_images(&rho)?;
    let mut apt_dir: Vec<Option<Vector>> = vec![None; b.vertex_type.len()];
    for &c in &b.base_apartment {
        for (t, &v) in b.chambers[c].iter().enumerate() {
            let d = b.apartment_direction(c, t).expect("apartment chamber");
            match &apt_dir[v] {
                None => apt_dir[v] = Some(d),
                Some(e) if *e != d => return Err(Error::violation("realize", format!("apartment vertex {v} gets two directions"))),
                _ => {}
            }
        }
    }
    let directions = image
        .iter()
        .map(|&i| apt_dir[i].clone().ok_or_else(|| Error::violation("realize", format!("vertex {i} is not in the base apartment"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(RealizedBuilding { building: b, directions, image })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AngleClass {
    Acute,
    Equatorial,
    Obtuse,
}

/// A pole direction with the class of every vertex.
#[derive(Clone, Debug, Serialize)]
pub struct PoleData {
    pub pole: Vector,
    pub classes: Vec<AngleClass>,
}

pub fn angle_classify(rb: &RealizedBuilding, pole: &Vector) -> Result<PoleData> {
    if pole.is_zero() {
        return Err(Error::ZeroDirection);
    }
    // the retraction keeps angles only as seen from the base chamber
    let b = &rb.building;
    if !Subspace::span(b.ambient, &b.fundamental).contains(pole) || b.positive.iter().any(|a| pole.dot(a).is_negative()) {
        return Err(Error::Precondition(format!("pole {pole} is not in the closed base chamber")));
    }
    let classes = rb
        .directions
        .iter()
        .map(|d| {
            let p = pole.dot(d);
            if p.is_positive() {
                AngleClass::Acute
            } else if p.is_zero() {
                AngleClass::Equatorial
            } else {
                AngleClass::Obtuse
            }
        })
        .collect();
    Ok(PoleData { pole: pole.clone(), classes })
}

/// Pole at the type-`t` vertex of the base chamber.
pub fn pole_at_vertex(b: &SphericalBuildingCx, t: usize) -> Vector {
    b.fundamental[t].clone()
}

/// Sum of the vertex rays of the base chamber.
pub fn pole_at_barycenter(b: &SphericalBuildingCx) -> Vector {
    Vector::sum(b.ambient, &b.fundamental)
}

/// A seeded positive combination of the base chamber's rays that is
/// orthogonal to no vertex direction.
pub fn generic_pole(rb: &RealizedBuilding, seed: u64) -> Vector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut p = Vector::zeros(rb.building.ambient);
        for r in &rb.building.fundamental {
            p.add_scaled(&int(rng.gen_range(1..50)), r);
        }
        if rb.directions.iter().all(|d| !p.dot(d).is_zero()) {
            return p;
        }
    }
}

#[derive(Clone, Debug)]
pub struct Hemispheres {
    pub pole: PoleData,
    /// Full subcomplex on the non-acute vertices.
    pub closed: SimplicialComplex,
    /// Full subcomplex on the obtuse vertices.
    pub open: SimplicialComplex,
    pub equator: SimplicialComplex,
    /// Factors all of whose vertices are equatorial.
    pub horizontal_factors: Vec<usize>,
    pub vertical_factors: Vec<usize>,
    pub horizontal: SimplicialComplex,
    pub vertical: SimplicialComplex,
    /// The building equals the join of its horizontal and vertical parts.
    pub join_identity: bool,
}

impl Hemispheres {
    /// Dimension of the vertical part.
    pub fn vertical_dim(&self) -> isize {
        self.vertical.dim()
    }
}

pub fn hemisphere_complexes(rb: &RealizedBuilding, pole: &Vector) -> Result<Hemispheres> {
    let pd = angle_classify(rb, pole)?;
    let b = &rb.building;
    let k = b.complex();
    let class = |v: usize| pd.classes[v];
    let closed = k.full_subcomplex(|v| class(v) != AngleClass::Acute);
    let open = k.full_subcomplex(|v| class(v) == AngleClass::Obtuse);
    let equator = k.full_subcomplex(|v| class(v) == AngleClass::Equatorial);
    let (mut horizontal_factors, mut vertical_factors) = (Vec::new(), Vec::new());
    for (i, f) in b.factors.iter().enumerate() {
        if f.vertices.iter().all(|&v| class(v) == AngleClass::Equatorial) {
            horizontal_factors.push(i);
        } else {
            vertical_factors.push(i);
        }
    }
    let part = |fs: &[usize]| {
        let vs: Vec<usize> = fs.iter().flat_map(|&f| b.factors[f].vertices.iter().copied()).collect();
        k.full_subcomplex(|v| vs.contains(&v))
    };
    let horizontal = part(&horizontal_factors);
    let vertical = part(&vertical_factors);
    let join_identity = horizontal.join(&vertical) == k;
    Ok(Hemispheres { pole: pd, closed, open, equator, horizontal_factors, vertical_factors, horizontal, vertical, join_identity })
}

/// A bad set whose maximal avoiding subcomplex is the full subcomplex on the
/// vertices outside it.
#[derive(Clone, Debug)]
pub enum SubcomplexSpec {
    EmptyBadSet,
    /// Bad set: the open ball of radius π/2 around the pole.
    ClosedHemisphere { pole: Vector },
    /// Bad set: the closed ball of radius π/2 around the pole.
    OpenHemisphere { pole: Vector },
    /// Vertices orthogonal to the pole.
    Equator { pole: Vector },
    /// Bad set: points whose height exceeds the threshold, heights given on
    /// the apartment directions.
    HeightAtMost {
        heights: Vec<(Vector, Scalar)>,
        threshold: Scalar,
    },
}

#[derive(Clone, Debug)]
pub struct Complement {
    pub complex: SimplicialComplex,
    /// Why the full subcomplex on the surviving vertices is the maximal
    /// subcomplex avoiding the bad set.
    pub justification: &'static str,
}

pub fn complement_complex(rb: &RealizedBuilding, spec: &SubcomplexSpec) -> Result<Complement> {
    let k = rb.building.complex();
    let (keep, justification): (Vec<bool>, &'static str) = match spec {
        SubcomplexSpec::EmptyBadSet => (vec![true; rb.directions.len()], "nothing is removed"),
        SubcomplexSpec::ClosedHemisphere { pole } => (
            angle_classify(rb, pole)?.classes.iter().map(|c| *c != AngleClass::Acute).collect(),
            "in each apartment the closed hemisphere is convex, so a simplex avoids the open ball iff its vertices do",
        ),
        SubcomplexSpec::OpenHemisphere { pole } => (
            angle_classify(rb, pole)?.classes.iter().map(|c| *c == AngleClass::Obtuse).collect(),
            "in each apartment the open hemisphere is convex, so a simplex avoids the closed ball iff its vertices do",
        ),
        SubcomplexSpec::Equator { pole } => (
            angle_classify(rb, pole)?.classes.iter().map(|c| *c == AngleClass::Equatorial).collect(),
            "the equator is the intersection of two closed hemispheres, hence convex in each apartment",
        ),
        SubcomplexSpec::HeightAtMost { heights, threshold } => {
            let mut keep = Vec::with_capacity(rb.directions.len());
            for d in &rb.directions {
                let h = heights
                    .iter()
                    .find(|(x, _)| x == d)
                    .map(|(_, h)| h)
                    .ok_or_else(|| Error::UnsupportedSpec(format!("no height given for direction {d}")))?;
                keep.push(h <= threshold);
            }
            (keep, "sublevel sets of a height that is convex on each apartment are convex; heights move along retraction fibres")
        }
    };
    Ok(Complement { complex: k.full_subcomplex(|v| keep[v]), justification })
}
