use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};

use super::root_system::{build_system, reflect_affine, RootSystem, TypeTag, WeylGroup};
use crate::error::{Error, Result};
use crate::scalar::{solve, Scalar, Vector};

/// A sorted list of vertex ids.
pub type Simplex = Vec<usize>;

/// A finite, face-closed piece of the euclidean Coxeter complex of an affine
/// type, grown around the special vertex at the origin.
///
/// Layer 0 is the star of the origin; each further layer adds every alcove
/// adjacent across a panel to the previous ones. `radius` counts layers, so
/// `radius = 1` is exactly the star of 0.
#[derive(Clone, Debug)]
pub struct ApartmentPatch {
    pub tag: TypeTag,
    pub system: RootSystem,
    pub weyl: WeylGroup,
    pub radius: usize,
    pub vertices: Vec<Vector>,
    /// Node of the affine diagram; the origin has type 0.
    pub vertex_type: Vec<usize>,
    pub special: Vec<bool>,
    /// Each alcove lists its vertex ids indexed by type.
    pub alcoves: Vec<Vec<usize>>,
    /// `neighbors[a][t]`: the alcove across the panel of `a` opposite its
    /// type-`t` vertex, if it lies in the patch.
    pub neighbors: Vec<Vec<Option<usize>>>,
    /// All simplices, ordered by dimension and then lexicographically.
    pub simplices: Vec<Simplex>,
    simplex_index: HashMap<Simplex, usize>,
    vertex_index: HashMap<Vector, usize>,
    vertex_alcoves: Vec<Vec<usize>>,
    adjacency: Vec<Vec<usize>>,
}

/// Vertices of the base alcove `{<a_i, x> >= 0, <highest, x> <= 1}`, indexed
/// by type.
fn base_alcove(sys: &RootSystem) -> Vec<Vector> {
    let mut out = vec![Vector::zeros(sys.ambient)];
    for ray in sys.fundamental_rays() {
        let c = Scalar::one() / sys.highest.dot(&ray);
        out.push(ray.scale(&c));
    }
    out
}

pub fn generate_patch(tag: TypeTag, radius: usize) -> Result<ApartmentPatch> {
    if !tag.affine {
        return Err(Error::UnsupportedType(format!("{tag} is not an affine type")));
    }
    if radius < 1 {
        return Err(Error::InvalidRadius(radius));
    }
    let (system, weyl) = build_system(tag)?;
    let base = base_alcove(&system);
    let d = system.rank();

    let mut vertices: Vec<Vector> = Vec::new();
    let mut vertex_index: HashMap<Vector, usize> = HashMap::new();
    let mut vertex_type: Vec<usize> = Vec::new();
    let mut intern = |v: Vector, t: usize, vertices: &mut Vec<Vector>, vertex_type: &mut Vec<usize>| {
        *vertex_index.entry(v.clone()).or_insert_with(|| {
            vertices.push(v);
            vertex_type.push(t);
            vertices.len() - 1
        })
    };

    let mut alcoves: Vec<Vec<usize>> = Vec::new();
    let mut alcove_index: HashMap<Vec<usize>, usize> = HashMap::new();
    for w in &weyl.elements {
        let ids: Vec<usize> = base
            .iter()
            .enumerate()
            .map(|(t, v)| intern(w.apply(v), t, &mut vertices, &mut vertex_type))
            .collect();
        if !alcove_index.contains_key(&ids) {
            alcove_index.insert(ids.clone(), alcoves.len());
            alcoves.push(ids);
        }
    }

    let mut frontier: Vec<usize> = (0..alcoves.len()).collect();
    for _ in 1..radius {
        let mut next = Vec::new();
        for &a in &frontier {
            for t in 0..=d {
                let (v, _) = panel_reflection(&system, &vertices, &alcoves[a], t);
                let mut ids = alcoves[a].clone();
                ids[t] = intern(v, t, &mut vertices, &mut vertex_type);
                if !alcove_index.contains_key(&ids) {
                    alcove_index.insert(ids.clone(), alcoves.len());
                    next.push(alcoves.len());
                    alcoves.push(ids);
                }
            }
        }
        frontier = next;
    }

    let mut neighbors = vec![vec![None; d + 1]; alcoves.len()];
    for (a, ids) in alcoves.iter().enumerate() {
        for t in 0..=d {
            let (v, _) = panel_reflection(&system, &vertices, ids, t);
            if let Some(&vid) = vertex_index.get(&v) {
                let mut other = ids.clone();
                other[t] = vid;
                neighbors[a][t] = alcove_index.get(&other).copied();
            }
        }
    }

    let special = vertices
        .iter()
        .map(|v| system.roots.iter().all(|r| r.dot(v).is_integer()))
        .collect();

    let mut vertex_alcoves = vec![Vec::new(); vertices.len()];
    let mut faces: BTreeSet<(usize, Simplex)> = BTreeSet::new();
    for (a, ids) in alcoves.iter().enumerate() {
        for &v in ids {
            vertex_alcoves[v].push(a);
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        for mask in 1u32..(1 << (d + 1)) {
            let s: Simplex = (0..=d).filter(|i| mask >> i & 1 == 1).map(|i| sorted[i]).collect();
            faces.insert((s.len(), s));
        }
    }
    let simplices: Vec<Simplex> = faces.into_iter().map(|(_, s)| s).collect();
    let simplex_index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

    let mut adjacency = vec![Vec::new(); vertices.len()];
    for s in simplices.iter().filter(|s| s.len() == 2) {
        adjacency[s[0]].push(s[1]);
        adjacency[s[1]].push(s[0]);
    }

    Ok(ApartmentPatch {
        tag,
        system,
        weyl,
        radius,
        vertices,
        vertex_type,
        special,
        alcoves,
        neighbors,
        simplices,
        simplex_index,
        vertex_index,
        vertex_alcoves,
        adjacency,
    })
}

/// Reflection of the type-`t` vertex of an alcove across the wall spanned by
/// the opposite panel. Returns the image and the wall normal.
fn panel_reflection(sys: &RootSystem, vertices: &[Vector], ids: &[usize], t: usize) -> (Vector, Vector) {
    let others: Vec<&Vector> = ids.iter().enumerate().filter(|&(s, _)| s != t).map(|(_, &v)| &vertices[v]).collect();
    let dirs: Vec<Vector> = others[1..].iter().map(|v| *v - others[0]).collect();
    let normal = sys.space.normal_to(&dirs).expect("a panel spans a hyperplane");
    let offset = normal.dot(others[0]);
    (reflect_affine(&normal, &offset, &vertices[ids[t]]), normal)
}

impl ApartmentPatch {
    pub fn dim(&self) -> usize {
        self.system.rank()
    }

    pub fn vertex_id(&self, v: &Vector) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    pub fn simplex_id(&self, s: &[usize]) -> Option<usize> {
        self.simplex_index.get(s).copied()
    }

    pub fn is_simplex(&self, s: &[usize]) -> bool {
        self.simplex_index.contains_key(s)
    }

    pub fn coords(&self, s: &[usize]) -> Vec<Vector> {
        s.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    pub fn barycenter(&self, s: &[usize]) -> Vector {
        let sum = Vector::sum(self.system.ambient, s.iter().map(|&v| &self.vertices[v]));
        sum.scale(&(Scalar::one() / Scalar::from_integer((s.len() as i64).into())))
    }

    /// Vertices joined to `v` by an edge.
    pub fn adjacent(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Alcoves containing every vertex of `s`.
    pub fn alcoves_containing(&self, s: &[usize]) -> Vec<usize> {
        match s.first() {
            None => (0..self.alcoves.len()).collect(),
            Some(&v0) => self.vertex_alcoves[v0]
                .iter()
                .copied()
                .filter(|&a| s.iter().all(|v| self.alcoves[a].contains(v)))
                .collect(),
        }
    }

    /// True iff every alcove of the full complex containing `s` lies in the
    /// patch: each alcove containing `s` has all neighbours across panels
    /// that contain `s`.
    pub fn star_complete(&self, s: &[usize]) -> bool {
        let types: Vec<usize> = s.iter().map(|&v| self.vertex_type[v]).collect();
        self.alcoves_containing(s)
            .iter()
            .all(|&a| (0..=self.dim()).filter(|t| !types.contains(t)).all(|t| self.neighbors[a][t].is_some()))
    }

    /// Simplices `τ` such that `s ∪ τ` is a simplex and `τ ∩ s = ∅`
    /// (nonempty ones only).
    pub fn link_simplices(&self, s: &[usize]) -> Vec<Simplex> {
        let mut out = BTreeSet::new();
        for a in self.alcoves_containing(s) {
            let rest: Vec<usize> = {
                let mut r: Vec<usize> = self.alcoves[a].iter().copied().filter(|v| !s.contains(v)).collect();
                r.sort_unstable();
                r
            };
            for mask in 1u32..(1 << rest.len()) {
                let t: Simplex = (0..rest.len()).filter(|i| mask >> i & 1 == 1).map(|i| rest[i]).collect();
                out.insert(t);
            }
        }
        out.into_iter().collect()
    }

    /// An alcove whose closure contains `x`, if any.
    pub fn locate(&self, x: &Vector) -> Result<usize> {
        if !self.system.space.contains(x) {
            return Err(Error::OutsidePatch(x.to_string()));
        }
        let d = self.dim();
        for (a, ids) in self.alcoves.iter().enumerate() {
            let p0 = &self.vertices[ids[0]];
            let edges: Vec<Vector> = ids[1..].iter().map(|&v| &self.vertices[v] - p0).collect();
            let gram: Vec<Vec<Scalar>> = edges.iter().map(|e| edges.iter().map(|f| e.dot(f)).collect()).collect();
            let rel = x - p0;
            let rhs: Vec<Scalar> = edges.iter().map(|e| e.dot(&rel)).collect();
            let lambda = solve(&gram, &rhs).expect("alcove edges are independent");
            let total: Scalar = lambda.iter().sum();
            if lambda.iter().all(|l| !l.is_negative()) && total <= Scalar::one() {
                debug_assert_eq!(lambda.len(), d);
                return Ok(a);
            }
        }
        Err(Error::OutsidePatch(x.to_string()))
    }

    /// Simplex whose relative interior contains `x`.
    pub fn carrier(&self, x: &Vector) -> Result<Simplex> {
        let a = self.locate(x)?;
        let ids = &self.alcoves[a];
        let p0 = &self.vertices[ids[0]];
        let edges: Vec<Vector> = ids[1..].iter().map(|&v| &self.vertices[v] - p0).collect();
        let gram: Vec<Vec<Scalar>> = edges.iter().map(|e| edges.iter().map(|f| e.dot(f)).collect()).collect();
        let rel = x - p0;
        let rhs: Vec<Scalar> = edges.iter().map(|e| e.dot(&rel)).collect();
        let lambda = solve(&gram, &rhs).expect("alcove edges are independent");
        let l0 = Scalar::one() - lambda.iter().sum::<Scalar>();
        let mut s: Simplex = std::iter::once(&l0)
            .chain(lambda.iter())
            .zip(ids)
            .filter(|(l, _)| !l.is_zero())
            .map(|(_, &v)| v)
            .collect();
        s.sort_unstable();
        Ok(s)
    }

    /// Vertices at 1-skeleton distance at most `k` from `v`.
    pub fn ball(&self, v: usize, k: usize) -> Vec<usize> {
        let mut dist = HashMap::from([(v, 0usize)]);
        let mut frontier = vec![v];
        for step in 1..=k {
            let mut next = Vec::new();
            for u in frontier {
                for &w in &self.adjacency[u] {
                    if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                        e.insert(step);
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<usize> = dist.into_keys().collect();
        out.sort_unstable();
        out
    }

    pub fn origin(&self) -> usize {
        self.vertex_id(&Vector::zeros(self.system.ambient)).expect("the origin is a vertex")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::FiniteType;
    use crate::scalar::{frac, int};

    fn patch(t: FiniteType, r: usize) -> ApartmentPatch {
        generate_patch(TypeTag::affine(t), r).unwrap()
    }

    #[test]
    fn line_tessellation() {
        let p = patch(FiniteType::A1, 2);
        assert_eq!(p.alcoves.len(), 4);
        assert_eq!(p.vertices.len(), 5);
        let mut xs: Vec<Vector> = p.vertices.clone();
        xs.sort();
        assert_eq!(xs, (-2..=2).map(|i| Vector::from_ints(&[i])).collect::<Vec<_>>());
        assert!(p.special.iter().all(|&s| s));
        assert_eq!(patch(FiniteType::A1, 5).alcoves.len(), 10);
    }

    #[test]
    fn radius_zero_is_rejected() {
        assert_eq!(generate_patch(TypeTag::affine(FiniteType::A2), 0).unwrap_err(), Error::InvalidRadius(0));
        assert!(matches!(
            generate_patch(TypeTag::finite(FiniteType::A2), 2),
            Err(Error::UnsupportedType(_))
        ));
    }

    #[test]
    fn star_of_origin_counts() {
        for (t, n) in [(FiniteType::A2, 6), (FiniteType::C2, 8), (FiniteType::G2, 12), (FiniteType::A3, 24)] {
            let p = patch(t, 1);
            let o = p.origin();
            assert_eq!(p.alcoves_containing(&[o]).len(), n, "{t}");
            assert!(p.star_complete(&[o]));
        }
    }

    #[test]
    fn c2_base_alcove() {
        let sys = build_system(TypeTag::affine(FiniteType::C2)).unwrap().0;
        let b = base_alcove(&sys);
        assert_eq!(b[1], Vector(vec![frac(1, 2), int(0)]));
        assert_eq!(b[2], Vector(vec![frac(1, 2), frac(1, 2)]));
    }

    #[test]
    fn adjacent_alcoves_differ_by_panel_reflection() {
        for t in [FiniteType::A2, FiniteType::C2, FiniteType::G2] {
            let p = patch(t, 3);
            for (a, ids) in p.alcoves.iter().enumerate() {
                for (s, nb) in p.neighbors[a].iter().enumerate() {
                    let Some(b) = *nb else { continue };
                    let other = &p.alcoves[b];
                    assert_eq!(p.neighbors[b][s], Some(a));
                    let (img, normal) = panel_reflection(&p.system, &p.vertices, ids, s);
                    assert_eq!(img, p.vertices[other[s]]);
                    // the panel lies on the wall
                    let on_wall: BTreeSet<Scalar> =
                        (0..ids.len()).filter(|&u| u != s).map(|u| normal.dot(&p.vertices[ids[u]])).collect();
                    assert_eq!(on_wall.len(), 1);
                    for u in (0..ids.len()).filter(|&u| u != s) {
                        assert_eq!(ids[u], other[u]);
                    }
                }
            }
        }
    }

    #[test]
    fn face_closed_and_typed() {
        let p = patch(FiniteType::A2, 2);
        for s in &p.simplices {
            for skip in 0..s.len() {
                let f: Simplex = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                assert!(f.is_empty() || p.is_simplex(&f));
            }
            let types: BTreeSet<usize> = s.iter().map(|&v| p.vertex_type[v]).collect();
            assert_eq!(types.len(), s.len());
        }
    }

    #[test]
    fn special_vertices_have_full_weyl_stars() {
        let p = patch(FiniteType::C2, 4);
        for v in 0..p.vertices.len() {
            if p.star_complete(&[v]) {
                let full = p.alcoves_containing(&[v]).len() == p.weyl.order();
                assert_eq!(full, p.special[v], "vertex {}", p.vertices[v]);
            }
        }
    }

    #[test]
    fn locate_and_carrier() {
        let p = patch(FiniteType::C2, 2);
        let c = p.carrier(&Vector(vec![frac(1, 4), int(0)])).unwrap();
        assert_eq!(c.len(), 2);
        let c = p.carrier(&Vector(vec![frac(1, 2), frac(1, 2)])).unwrap();
        assert_eq!(c, vec![p.vertex_id(&Vector(vec![frac(1, 2), frac(1, 2)])).unwrap()]);
        assert!(p.locate(&Vector::from_ints(&[40, 0])).is_err());
    }
}
