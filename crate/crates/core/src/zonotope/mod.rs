//! Zonotopes of W-invariant generator sets: exact H- and V-representations,
//! faces and normal cones, closest-point projection, and distance minima over
//! simplices.

mod faces;
mod generators;
mod polytope;
mod wolfe;

pub use faces::{face_and_cone, segment_through, weyl_chamber_check, NormalConeDesc, ZFace};
pub use generators::{build_generators, is_almost_rich, is_rich, GeneratorSet, Richness};
pub use polytope::{Facet, FaceKey, RelFacet, Zonotope, MAX_AMBIENT, MAX_LINES};
pub use wolfe::{min_norm_point, min_on_simplex, SimplexMin};

use crate::error::Result;

pub fn zonotope_of(d: &GeneratorSet) -> Result<Zonotope> {
    Zonotope::new(&d.vectors)
}
