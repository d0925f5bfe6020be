//! Finite spherical buildings (thin Coxeter complexes, small projective
//! planes, the symplectic quadrangle over the field with two elements, and
//! joins), their realization by retraction, hemisphere complexes and thick
//! descending links.

mod building;
mod realize;
mod thick;

pub use building::{build_building, expected_chambers, BuildingFactor, BuildingSpec, SphericalBuildingCx, WDistance};
pub use realize::{
    angle_classify, complement_complex, generic_pole, hemisphere_complexes, pole_at_barycenter, pole_at_vertex, realize, AngleClass,
    Complement, Hemispheres, PoleData, RealizedBuilding, SubcomplexSpec,
};
pub use thick::{thick_descending_link, thick_model, ThickDescendingLink, ThickFactor, THICK_HEIGHT_ASSUMPTION};
