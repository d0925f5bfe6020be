use std::collections::{BTreeSet, HashMap};

use num_traits::{Signed, Zero};

use crate::coxeter::Wall;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Subspace, Vector};

pub const MAX_AMBIENT: usize = 4;
pub const MAX_LINES: usize = 16;

/// A facet of a face, relative to the face's own affine hull. The face is
/// `base + Z(lines in mask)`; the facet is `base + shift + Z(lines in sub)`
/// and the face satisfies `<normal, y - base> <= hi`.
#[derive(Clone, Debug)]
pub struct RelFacet {
    pub normal: Vector,
    pub shift: Vector,
    pub hi: Scalar,
    pub sub: u32,
}

#[derive(Clone, Debug)]
struct FaceData {
    span: Subspace,
    facets: Vec<RelFacet>,
}

/// A facet of the whole zonotope: `<wall.normal, x> <= wall.offset`.
#[derive(Clone, Debug)]
pub struct Facet {
    pub wall: Wall,
    pub base: Vector,
    pub mask: u32,
}

/// A face `base + Z(lines in mask)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceKey {
    pub base: Vector,
    pub mask: u32,
}

/// The zonotope `Z(D) = { sum t_v v : 0 <= t_v <= 1 }`.
///
/// Parallel generators are merged: `Z(D) = translation + Z(lines)` where each
/// line vector is the total length of one parallel class.
#[derive(Clone, Debug)]
pub struct Zonotope {
    pub generators: Vec<Vector>,
    pub ambient: usize,
    pub translation: Vector,
    pub lines: Vec<Vector>,
    pub span: Subspace,
    /// `<c, x - translation> = 0` for each `c` when `Z` is not full-dimensional.
    pub equalities: Vec<Vector>,
    pub facets: Vec<Facet>,
    pub vertices: Vec<Vector>,
    faces: HashMap<u32, FaceData>,
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// Index subsets of size `k` of `items`.
fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = combinations(&items[1..], k - 1);
    for c in out.iter_mut() {
        c.insert(0, items[0]);
    }
    out.extend(combinations(&items[1..], k));
    out
}

impl Zonotope {
    /// Zonotope of a nonempty generator list (the ambient dimension is read
    /// off the generators).
    pub fn new(generators: &[Vector]) -> Result<Self> {
        let ambient = generators.first().map(Vector::dim).ok_or_else(|| {
            Error::Precondition("empty generator list; use Zonotope::new_in".into())
        })?;
        Self::new_in(ambient, generators)
    }

    pub fn new_in(ambient: usize, generators: &[Vector]) -> Result<Self> {
        if ambient > MAX_AMBIENT {
            return Err(Error::Capacity(format!("ambient dimension {ambient} > {MAX_AMBIENT}")));
        }
        if generators.iter().any(|g| g.dim() != ambient) {
            return Err(Error::Precondition("generators of mixed dimension".into()));
        }
        // parallel classes: direction u with first nonzero coordinate 1
        let mut classes: Vec<(Vector, Scalar, Scalar)> = Vec::new();
        for g in generators.iter().filter(|g| !g.is_zero()) {
            let u = g.line_sign_normalized().ray_normalized();
            let c = g.dot(&u) / u.norm2();
            let entry = match classes.iter().position(|(v, _, _)| *v == u) {
                Some(i) => &mut classes[i],
                None => {
                    classes.push((u, Scalar::zero(), Scalar::zero()));
                    classes.last_mut().unwrap()
                }
            };
            if c.is_negative() {
                entry.1 += c;
            } else {
                entry.2 += c;
            }
        }
        if classes.len() > MAX_LINES {
            return Err(Error::Capacity(format!("{} distinct generator lines > {MAX_LINES}", classes.len())));
        }
        classes.sort();
        let mut translation = Vector::zeros(ambient);
        let mut lines = Vec::new();
        for (u, lo, hi) in &classes {
            translation.add_scaled(lo, u);
            lines.push(u.scale(&(hi - lo)));
        }
        let span = Subspace::span(ambient, &lines);
        let equalities = span.complement();
        let mut z = Zonotope {
            generators: generators.to_vec(),
            ambient,
            translation,
            lines,
            span,
            equalities,
            facets: Vec::new(),
            vertices: Vec::new(),
            faces: HashMap::new(),
        };
        z.build_faces();
        let full = z.full_mask();
        z.facets = z.faces[&full]
            .facets
            .iter()
            .map(|f| Facet {
                wall: Wall { offset: &f.hi + f.normal.dot(&z.translation), normal: f.normal.clone() },
                base: &z.translation + &f.shift,
                mask: f.sub,
            })
            .collect();
        z.vertices = z.all_faces().into_iter().filter(|f| f.mask == 0).map(|f| f.base).collect();
        z.vertices.sort();
        Ok(z)
    }

    pub fn full_mask(&self) -> u32 {
        if self.lines.is_empty() {
            0
        } else {
            u32::MAX >> (32 - self.lines.len())
        }
    }

    fn build_faces(&mut self) {
        let mut todo = vec![self.full_mask()];
        while let Some(mask) = todo.pop() {
            if self.faces.contains_key(&mask) {
                continue;
            }
            let data = self.face_data(mask);
            todo.extend(data.facets.iter().map(|f| f.sub));
            self.faces.insert(mask, data);
        }
    }

    fn face_data(&self, mask: u32) -> FaceData {
        let idx: Vec<usize> = bits(mask).collect();
        let ws: Vec<Vector> = idx.iter().map(|&i| self.lines[i].clone()).collect();
        let span = Subspace::span(self.ambient, &ws);
        let k = span.rank();
        let mut normals: BTreeSet<Vector> = BTreeSet::new();
        if k > 0 {
            for c in combinations(&(0..ws.len()).collect::<Vec<_>>(), k - 1) {
                let sub: Vec<Vector> = c.iter().map(|&i| ws[i].clone()).collect();
                if crate::scalar::rank(&sub) != k - 1 {
                    continue;
                }
                if let Some(n) = span.normal_to(&sub) {
                    normals.insert(n.line_sign_normalized().ray_normalized());
                }
            }
        }
        let mut facets = Vec::new();
        for n in normals {
            for n in [-&n, n] {
                let mut shift = Vector::zeros(self.ambient);
                let mut hi = Scalar::zero();
                let mut sub = 0u32;
                for &i in &idx {
                    let p = n.dot(&self.lines[i]);
                    if p.is_positive() {
                        shift = &shift + &self.lines[i];
                        hi += p;
                    } else if p.is_zero() {
                        sub |= 1 << i;
                    }
                }
                facets.push(RelFacet { normal: n, shift, hi, sub });
            }
        }
        FaceData { span, facets }
    }

    /// Dimension of `Z`.
    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    /// Every nonempty face, each as `base + Z(lines in mask)`.
    pub fn all_faces(&self) -> Vec<FaceKey> {
        let mut seen: BTreeSet<FaceKey> = BTreeSet::new();
        let mut todo = vec![FaceKey { base: self.translation.clone(), mask: self.full_mask() }];
        while let Some(f) = todo.pop() {
            if seen.contains(&f) {
                continue;
            }
            for rf in &self.faces[&f.mask].facets {
                todo.push(FaceKey { base: &f.base + &rf.shift, mask: rf.sub });
            }
            seen.insert(f);
        }
        seen.into_iter().collect()
    }

    pub fn face_lines(&self, mask: u32) -> Vec<Vector> {
        bits(mask).map(|i| self.lines[i].clone()).collect()
    }

    pub fn contains(&self, x: &Vector) -> bool {
        let rel = x - &self.translation;
        self.equalities.iter().all(|c| c.dot(&rel).is_zero()) && self.facets.iter().all(|f| f.wall.eval(x) <= Scalar::zero())
    }

    /// Support function `max_{z in Z} <c, z>`.
    pub fn support(&self, c: &Vector) -> Scalar {
        let mut h = c.dot(&self.translation);
        for w in &self.lines {
            let p = c.dot(w);
            if p.is_positive() {
                h += p;
            }
        }
        h
    }

    /// A maximizer of `<c, ·>` over `Z` (a vertex when `c` is generic).
    pub fn argmax(&self, c: &Vector) -> Vector {
        let mut z = self.translation.clone();
        for w in &self.lines {
            if c.dot(w).is_positive() {
                z = &z + w;
            }
        }
        z
    }

    /// Closest point of `Z` to `x` and the squared distance.
    pub fn project(&self, x: &Vector) -> (Vector, Scalar) {
        if self.contains(x) {
            return (x.clone(), Scalar::zero());
        }
        let mut memo = HashMap::new();
        let p = self.project_face(&FaceKey { base: self.translation.clone(), mask: self.full_mask() }, x, &mut memo);
        let d2 = x.dist2(&p);
        (p, d2)
    }

    /// Nearest point of the face to `x`: first project onto its affine hull,
    /// then, if that lands outside, onto the violated facets (the nearest
    /// point lies in one of them). The nearest point of a face to `x` does not
    /// depend on the route, so it is memoized per face.
    fn project_face(&self, face: &FaceKey, x: &Vector, memo: &mut HashMap<FaceKey, Vector>) -> Vector {
        if let Some(p) = memo.get(face) {
            return p.clone();
        }
        let data = &self.faces[&face.mask];
        let y = &face.base + &data.span.project(&(x - &face.base));
        let rel = &y - &face.base;
        let mut best: Option<(Vector, Scalar)> = None;
        for f in data.facets.iter().filter(|f| f.normal.dot(&rel) > f.hi) {
            let sub = FaceKey { base: &face.base + &f.shift, mask: f.sub };
            let p = self.project_face(&sub, &y, memo);
            let e2 = y.dist2(&p);
            if best.as_ref().map_or(true, |(_, b)| e2 < *b) {
                best = Some((p, e2));
            }
        }
        let p = best.map_or(y, |(p, _)| p);
        memo.insert(face.clone(), p.clone());
        p
    }

    /// Squared distance from `x` to `Z`.
    pub fn dist2(&self, x: &Vector) -> Scalar {
        self.project(x).1
    }

    /// Checks the optimality certificate of a claimed projection `p` of `x`:
    /// `p in Z` and `<x - p, p> = h_Z(x - p)`.
    pub fn certifies(&self, x: &Vector, p: &Vector) -> bool {
        let n = x - p;
        self.contains(p) && n.dot(p) == self.support(&n)
    }

    /// True iff `w(Z) = Z` for every given linear map, compared on vertices.
    pub fn invariant_under(&self, maps: &[crate::scalar::Matrix]) -> bool {
        let vs: BTreeSet<&Vector> = self.vertices.iter().collect();
        maps.iter().all(|m| self.vertices.iter().all(|v| vs.contains(&m.apply(v))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn z(gens: &[&[i64]]) -> Zonotope {
        Zonotope::new(&gens.iter().map(|g| Vector::from_ints(g)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn basic_shapes() {
        let seg = z(&[&[1, 0]]);
        assert_eq!(seg.vertices, vec![Vector::from_ints(&[0, 0]), Vector::from_ints(&[1, 0])]);
        assert_eq!(seg.dim(), 1);
        assert_eq!(z(&[&[1, 0], &[0, 1]]).vertices.len(), 4);
        let hex = z(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(hex.vertices.len(), 6);
        assert_eq!(hex.facets.len(), 6);
    }

    #[test]
    fn parallel_generators_merge() {
        let a = z(&[&[1, 0], &[-2, 0], &[0, 1]]);
        assert_eq!(a.lines.len(), 2);
        assert_eq!(a.translation, Vector::from_ints(&[-2, 0]));
        assert!(a.contains(&Vector::from_ints(&[-2, 1])));
        assert!(!a.contains(&Vector::from_ints(&[-3, 0])));
    }

    #[test]
    fn projection_examples() {
        let sq = z(&[&[1, 0], &[0, 1]]);
        let x = Vector(vec![int(3), frac(1, 2)]);
        assert_eq!(sq.project(&x), (Vector(vec![int(1), frac(1, 2)]), int(4)));
        let inside = Vector(vec![frac(1, 3), frac(1, 2)]);
        assert_eq!(sq.project(&inside), (inside.clone(), int(0)));
        let hex = z(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(hex.project(&Vector::from_ints(&[3, 3])), (Vector::from_ints(&[2, 2]), int(2)));
    }

    #[test]
    fn projection_reaching_a_vertex_through_two_facets() {
        let oct = z(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1], &[1, -1], &[-1, 1]]);
        // both violated facets lead to the vertex (3, 1); the distance must not
        // depend on which route reached it first
        assert_eq!(oct.project(&Vector::from_ints(&[6, 2])), (Vector::from_ints(&[3, 1]), int(10)));
        assert_eq!(oct.project(&Vector::from_ints(&[6, 1])), (Vector::from_ints(&[3, 1]), int(9)));
    }

    #[test]
    fn lower_dimensional_projection() {
        let seg = z(&[&[1, 1, 0]]);
        let (p, d2) = seg.project(&Vector::from_ints(&[3, 1, 1]));
        assert_eq!(p, Vector::from_ints(&[1, 1, 0]));
        assert_eq!(d2, int(5));
        let pt = Zonotope::new(&[Vector::zeros(2)]).unwrap();
        assert_eq!(pt.project(&Vector::from_ints(&[1, 1])).1, int(2));
    }

    #[test]
    fn capacity() {
        let gens: Vec<Vector> = (1..=17).map(|i| Vector::from_ints(&[1, i])).collect();
        assert!(matches!(Zonotope::new(&gens), Err(Error::Capacity(_))));
        assert!(matches!(Zonotope::new(&[Vector::zeros(5)]), Err(Error::Capacity(_))));
    }
}
