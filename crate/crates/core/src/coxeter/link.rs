use num_traits::Zero;

use super::patch::{ApartmentPatch, Simplex};
use super::root_system::{irreducible_components, FiniteType};
use crate::error::{Error, Result};
use crate::scalar::{Subspace, Vector};

#[derive(Clone, Debug)]
pub struct LinkVertex {
    /// Patch vertex id.
    pub vertex: usize,
    /// Component of `vertex - barycenter(carrier)` orthogonal to the carrier.
    pub direction: Vector,
    pub factor: usize,
}

/// One irreducible join factor of a link.
#[derive(Clone, Debug)]
pub struct LinkFactor {
    pub finite: FiniteType,
    pub roots: Vec<Vector>,
    pub span: Subspace,
    /// Indices into `LinkComplex::vertices`.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LinkComplex {
    pub carrier: Simplex,
    pub vertices: Vec<LinkVertex>,
    /// Link simplices as patch vertex ids.
    pub simplices: Vec<Simplex>,
    pub factors: Vec<LinkFactor>,
}

impl LinkComplex {
    pub fn position(&self, vertex: usize) -> Option<usize> {
        self.vertices.iter().position(|lv| lv.vertex == vertex)
    }

    pub fn factor_of(&self, vertex: usize) -> Option<usize> {
        self.position(vertex).map(|i| self.vertices[i].factor)
    }

    /// Patch vertex ids of the given factor.
    pub fn factor_vertices(&self, f: usize) -> Vec<usize> {
        self.factors[f].members.iter().map(|&i| self.vertices[i].vertex).collect()
    }

    /// Order of the link's reflection group (product over the factors).
    pub fn weyl_order(&self) -> usize {
        self.factors.iter().map(|f| f.finite.weyl_order()).product()
    }
}

/// Roots whose walls contain every vertex of `s`.
pub fn stabilizer_roots(patch: &ApartmentPatch, s: &[usize]) -> Vec<Vector> {
    patch
        .system
        .roots
        .iter()
        .filter(|r| {
            let vals: Vec<_> = s.iter().map(|&v| r.dot(&patch.vertices[v])).collect();
            vals[0].is_integer() && vals.iter().all(|x| *x == vals[0])
        })
        .cloned()
        .collect()
}

pub fn link_of(patch: &ApartmentPatch, s: &[usize]) -> Result<LinkComplex> {
    if s.is_empty() || !patch.is_simplex(s) {
        return Err(Error::Precondition(format!("{s:?} is not a nonempty simplex of the patch")));
    }
    if !patch.star_complete(s) {
        return Err(Error::InsufficientRadius(format!(
            "star of {:?} leaves the radius-{} patch",
            patch.coords(s).iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            patch.radius
        )));
    }
    let bary = patch.barycenter(s);
    let p0 = &patch.vertices[s[0]];
    let along: Vec<Vector> = s[1..].iter().map(|&v| &patch.vertices[v] - p0).collect();
    let tangent = Subspace::span(patch.system.ambient, &along);

    let roots = stabilizer_roots(patch, s);
    let mut factors: Vec<LinkFactor> = Vec::new();
    for comp in irreducible_components(&roots) {
        let rs: Vec<Vector> = comp.iter().map(|&i| roots[i].clone()).collect();
        factors.push(LinkFactor {
            finite: FiniteType::identify(&rs)?,
            span: Subspace::span(patch.system.ambient, &rs),
            roots: rs,
            members: Vec::new(),
        });
    }

    let simplices = patch.link_simplices(s);
    let mut vertices = Vec::new();
    for t in simplices.iter().filter(|t| t.len() == 1) {
        let v = t[0];
        let rel = &patch.vertices[v] - &bary;
        let direction = &rel - &tangent.project(&rel);
        let factor = factors
            .iter()
            .position(|f| f.span.contains(&direction))
            .ok_or_else(|| Error::violation("link_of", format!("direction {direction} lies in no factor")))?;
        factors[factor].members.push(vertices.len());
        vertices.push(LinkVertex { vertex: v, direction, factor });
    }
    let link = LinkComplex { carrier: s.to_vec(), vertices, simplices, factors };
    debug_assert!(link.vertices.iter().all(|lv| along.iter().all(|e| e.dot(&lv.direction).is_zero())));
    Ok(link)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{generate_patch, TypeTag};

    fn patch(t: FiniteType, r: usize) -> ApartmentPatch {
        generate_patch(TypeTag::affine(t), r).unwrap()
    }

    #[test]
    fn special_vertex_links() {
        for (t, n, ty) in [(FiniteType::A2, 6, FiniteType::A2), (FiniteType::C2, 8, FiniteType::B2)] {
            let p = patch(t, 2);
            let l = link_of(&p, &[p.origin()]).unwrap();
            assert_eq!(l.vertices.len(), n);
            assert_eq!(l.factors.len(), 1);
            assert_eq!(l.factors[0].finite, ty);
        }
    }

    #[test]
    fn edge_link_is_two_points() {
        let p = patch(FiniteType::A2, 3);
        let o = p.origin();
        let e = p.simplices.iter().find(|s| s.len() == 2 && s.contains(&o)).unwrap().clone();
        let l = link_of(&p, &e).unwrap();
        assert_eq!(l.vertices.len(), 2);
        assert_eq!(l.factors.len(), 1);
        assert_eq!(l.factors[0].finite, FiniteType::A1);
        assert_eq!(l.vertices[0].direction, -&l.vertices[1].direction);
    }

    #[test]
    fn boundary_star_is_refused() {
        let p = patch(FiniteType::A2, 1);
        let far = (0..p.vertices.len()).find(|&v| v != p.origin()).unwrap();
        assert!(matches!(link_of(&p, &[far]), Err(Error::InsufficientRadius(_))));
    }

    #[test]
    fn factors_are_orthogonal_and_rebuild_the_link() {
        for t in [FiniteType::A2, FiniteType::C2, FiniteType::G2, FiniteType::A3] {
            let p = patch(t, if t == FiniteType::A3 { 2 } else { 3 });
            for s in p.simplices.iter().filter(|s| p.star_complete(s)) {
                let l = link_of(&p, s).unwrap();
                for a in &l.vertices {
                    for b in &l.vertices {
                        if a.factor != b.factor {
                            assert!(a.direction.dot(&b.direction).is_zero());
                        }
                    }
                }
                // maximal link simplices are chambers of a thin Coxeter complex
                let top = p.dim() + 1 - s.len();
                let chambers = l.simplices.iter().filter(|t| t.len() == top).count();
                if top > 0 {
                    assert_eq!(chambers, l.weyl_order(), "{t} at {s:?}");
                }
                // each chamber meets every factor in a chamber of that factor
                for t in l.simplices.iter().filter(|t| t.len() == top) {
                    for f in 0..l.factors.len() {
                        let part: Vec<usize> = t.iter().copied().filter(|&v| l.factor_of(v) == Some(f)).collect();
                        assert_eq!(part.len(), l.factors[f].finite.rank());
                    }
                }
            }
        }
    }
}
