use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::coxeter::{link_of, ApartmentPatch, LinkComplex, Simplex};
use crate::error::{Error, Result};
use crate::scalar::{sign, Scalar, Vector};
use crate::zonotope::{min_on_simplex, GeneratorSet, Richness, Zonotope};

/// Squared heights `h^2(v) = d(Z, v)^2` of all patch vertices, with the
/// projections onto `Z`.
#[derive(Clone, Debug)]
pub struct HeightTable {
    pub patch: ApartmentPatch,
    pub zonotope: Zonotope,
    /// Richness of the generator set; `None` for an arbitrary generator list.
    pub level: Option<Richness>,
    pub h2: Vec<Scalar>,
    pub proj: Vec<Vector>,
}

impl HeightTable {
    pub fn new(patch: ApartmentPatch, generators: &GeneratorSet) -> Result<Self> {
        let zonotope = Zonotope::new_in(patch.system.ambient, &generators.vectors)?;
        Ok(Self::with_zonotope(patch, zonotope, Some(generators.level)))
    }

    pub fn with_zonotope(patch: ApartmentPatch, zonotope: Zonotope, level: Option<Richness>) -> Self {
        let (proj, h2) = patch.vertices.iter().map(|v| zonotope.project(v)).unzip();
        HeightTable { patch, zonotope, level, h2, proj }
    }

    /// True when the generator set is at least almost rich, so that the
    /// statements about minima on simplices apply.
    pub fn almost_rich(&self) -> bool {
        matches!(self.level, Some(Richness::AlmostRich | Richness::Rich))
    }

    pub fn rich(&self) -> bool {
        self.level == Some(Richness::Rich)
    }

    /// Gradient `v - proj(v)` at a vertex, `None` at height zero.
    pub fn vertex_gradient(&self, v: usize) -> Option<Vector> {
        (!self.h2[v].is_zero()).then(|| &self.patch.vertices[v] - &self.proj[v])
    }

    /// Common squared height of the vertices, if they all agree.
    pub fn constant_height(&self, s: &[usize]) -> Option<Scalar> {
        let h = &self.h2[s[0]];
        s.iter().all(|&v| &self.h2[v] == h).then(|| h.clone())
    }
}

pub fn height_and_gradient(table: &HeightTable, x: &Vector) -> Result<(Scalar, Option<Vector>)> {
    table.patch.locate(x)?;
    let (p, d2) = table.zonotope.project(x);
    let g = (!d2.is_zero()).then(|| x - &p);
    Ok((d2, g))
}

#[derive(Clone, Debug, Serialize)]
pub struct Horizontality {
    pub horizontal: bool,
    /// Vertex classes of equal height; each spans a horizontal face.
    pub classes: Vec<Simplex>,
}

/// Decides whether `h` is constant on the simplex: equal vertex heights and an
/// exact minimum equal to them. Also partitions the vertices into maximal
/// horizontal faces. For almost rich generators any disagreement between
/// the vertex test and the exact minimum is a violation.
pub fn classify_horizontal(table: &HeightTable, s: &[usize]) -> Result<Horizontality> {
    let mut classes: Vec<Simplex> = Vec::new();
    for &v in s {
        match classes.iter_mut().find(|c| table.h2[c[0]] == table.h2[v]) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut horizontal = true;
    for c in &classes {
        if c.len() > 1 {
            let m = min_on_simplex(&table.zonotope, &table.patch.coords(c))?;
            if m.min != table.h2[c[0]] {
                if table.almost_rich() {
                    return Err(Error::violation(
                        "horizontal",
                        format!("face {:?} has equal vertex heights {} but minimum {}", table.patch.coords(c), table.h2[c[0]], m.min),
                    ));
                }
                horizontal = false;
            }
        }
    }
    horizontal &= classes.len() == 1;
    Ok(Horizontality { horizontal, classes })
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeReport {
    pub edge: [usize; 2],
    pub monotone: bool,
    /// Sign of `<grad(v), w - v>` at each endpoint `v` of positive height.
    pub angle_sign: [Option<i8>; 2],
    pub consistent: bool,
}

/// Monotonicity of `h` along an edge and the obtuse-angle criterion at each
/// endpoint of positive height.
pub fn edge_check(table: &HeightTable, e: [usize; 2]) -> Result<EdgeReport> {
    let [a, b] = e;
    let m = min_on_simplex(&table.zonotope, &table.patch.coords(&[a, b]))?;
    let lo = table.h2[a].clone().min(table.h2[b].clone());
    let monotone = m.min == lo;
    let mut angle_sign = [None, None];
    let mut consistent = monotone;
    for (i, (v, w)) in [(a, b), (b, a)].into_iter().enumerate() {
        if let Some(g) = table.vertex_gradient(v) {
            let s = sign(&g.dot(&(&table.patch.vertices[w] - &table.patch.vertices[v])));
            angle_sign[i] = Some(s);
            let descends = table.h2[v] > table.h2[w];
            consistent &= (s < 0) == descends;
        }
    }
    Ok(EdgeReport { edge: e, monotone, angle_sign, consistent })
}

/// The link of a simplex split by a gradient pole.
#[derive(Clone, Debug)]
pub struct LinkSplit {
    pub link: LinkComplex,
    pub gradient: Vector,
    /// Factors all of whose vertex directions are orthogonal to the pole.
    pub horizontal: Vec<usize>,
    pub vertical: Vec<usize>,
    /// Link vertices (patch ids) with direction orthogonal to the pole.
    pub equatorial: Vec<usize>,
    /// Link vertices at an obtuse angle to the pole.
    pub obtuse: Vec<usize>,
}

impl LinkSplit {
    /// Patch ids of the vertices in horizontal factors.
    pub fn horizontal_vertices(&self) -> Vec<usize> {
        self.horizontal.iter().flat_map(|&f| self.link.factor_vertices(f)).collect()
    }

    pub fn in_horizontal_part(&self, v: usize) -> bool {
        self.link.factor_of(v).is_some_and(|f| self.horizontal.contains(&f))
    }
}

/// Splits `Lk(s)` into horizontal and vertical factors with respect to
/// `gradient` (the pole).
pub fn split_link_by(patch: &ApartmentPatch, s: &[usize], gradient: &Vector) -> Result<LinkSplit> {
    let link = link_of(patch, s)?;
    let mut horizontal = Vec::new();
    let mut vertical = Vec::new();
    for (f, factor) in link.factors.iter().enumerate() {
        let flat = factor.members.iter().all(|&i| link.vertices[i].direction.dot(gradient).is_zero());
        if flat {
            horizontal.push(f);
        } else {
            vertical.push(f);
        }
    }
    let equatorial = link.vertices.iter().filter(|lv| lv.direction.dot(gradient).is_zero()).map(|lv| lv.vertex).collect();
    let obtuse = link.vertices.iter().filter(|lv| lv.direction.dot(gradient).is_negative()).map(|lv| lv.vertex).collect();
    Ok(LinkSplit { link, gradient: gradient.clone(), horizontal, vertical, equatorial, obtuse })
}

/// Splits the link of a horizontal simplex of positive height by its own
/// gradient (taken at the barycenter).
pub fn split_link(table: &HeightTable, s: &[usize]) -> Result<LinkSplit> {
    let b = table.patch.barycenter(s);
    let (g, _) = table.zonotope.project(&b);
    let grad = &b - &g;
    if grad.is_zero() {
        return Err(Error::NoGradient);
    }
    split_link_by(&table.patch, s, &grad)
}

#[derive(Clone, Debug, Serialize)]
pub struct DownUp {
    pub down: Vec<usize>,
    pub up: Vec<usize>,
    /// Exact minimum of `h^2` over the convex hull of the up set.
    #[serde(serialize_with = "crate::scalar::serialize_scalar")]
    pub up_min: Scalar,
    /// Up-set vertices attaining that minimum.
    pub up_minimizers: Vec<usize>,
    /// The down set equals the strictly obtuse vertices of the vertical link.
    pub down_is_open_hemisphere: bool,
    /// A hyperplane separates the up set from the simplex.
    pub separated: bool,
}

/// Down and up sets in the link of a horizontal simplex of positive height.
pub fn down_up_sets(table: &HeightTable, s: &[usize]) -> Result<DownUp> {
    if !table.rich() {
        return Err(Error::Precondition("the up-set separation needs a rich generator set".into()));
    }
    let h = table
        .constant_height(s)
        .ok_or_else(|| Error::Precondition(format!("{s:?} is not horizontal")))?;
    let split = split_link(table, s)?;
    let verts: Vec<usize> = split.link.vertices.iter().map(|lv| lv.vertex).collect();
    let down: Vec<usize> = verts.iter().copied().filter(|&v| table.h2[v] < h).collect();
    let up: Vec<usize> = verts.iter().copied().filter(|&v| table.h2[v] > h).collect();
    let mut open: Vec<usize> = split.obtuse.iter().copied().filter(|&v| !split.in_horizontal_part(v)).collect();
    open.sort_unstable();
    let mut d = down.clone();
    d.sort_unstable();
    let down_is_open_hemisphere = d == open;
    let (up_min, up_minimizers) = if up.is_empty() {
        (Scalar::zero(), Vec::new())
    } else {
        let m = min_on_simplex(&table.zonotope, &table.patch.coords(&up))?;
        let mins = m.vertex_minimizers.iter().map(|&i| up[i]).collect();
        (m.min, mins)
    };
    let separated = up.is_empty() || (!up_minimizers.is_empty() && up_min > h);
    Ok(DownUp { down, up, up_min, up_minimizers, down_is_open_hemisphere, separated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{generate_patch, FiniteType, TypeTag};
    use crate::scalar::{frac, int};
    use crate::zonotope::build_generators;

    fn line_table(r: usize, level: Richness) -> HeightTable {
        let p = generate_patch(TypeTag::affine(FiniteType::A1), r).unwrap();
        let g = build_generators(&p, level).unwrap();
        HeightTable::new(p, &g).unwrap()
    }

    fn vid(t: &HeightTable, x: i64) -> usize {
        t.patch.vertex_id(&Vector::from_ints(&[x])).unwrap()
    }

    #[test]
    fn line_heights() {
        let t = line_table(4, Richness::AlmostRich);
        assert_eq!(height_and_gradient(&t, &Vector::from_ints(&[3])).unwrap(), (int(4), Some(Vector::from_ints(&[2]))));
        assert_eq!(height_and_gradient(&t, &Vector(vec![frac(1, 2)])).unwrap(), (int(0), None));
        assert!(height_and_gradient(&t, &Vector::from_ints(&[30])).is_err());
    }

    #[test]
    fn line_horizontality_and_edges() {
        let t = line_table(4, Richness::AlmostRich);
        let (z, o, two) = (vid(&t, 0), vid(&t, 1), vid(&t, 2));
        let mut e = vec![z, o];
        e.sort_unstable();
        assert!(classify_horizontal(&t, &e).unwrap().horizontal);
        let mut e = vec![o, two];
        e.sort_unstable();
        let c = classify_horizontal(&t, &e).unwrap();
        assert!(!c.horizontal);
        assert_eq!(c.classes.len(), 2);
        let r = edge_check(&t, [o, two]).unwrap();
        assert!(r.monotone && r.consistent);
        assert_eq!(r.angle_sign, [None, Some(-1)]);
        let r = edge_check(&t, [z, o]).unwrap();
        assert_eq!(r.angle_sign, [None, None]);
        assert!(r.consistent);
    }

    #[test]
    fn line_link_is_vertical() {
        let t = line_table(6, Richness::AlmostRich);
        let s = split_link(&t, &[vid(&t, 3)]).unwrap();
        assert!(s.horizontal.is_empty());
        assert_eq!(s.vertical.len(), 1);
        assert!(s.equatorial.is_empty());
        assert_eq!(s.obtuse, vec![vid(&t, 2)]);
        assert_eq!(split_link(&t, &[vid(&t, 0)]).unwrap_err(), Error::NoGradient);
    }

    #[test]
    fn line_down_up() {
        let t = line_table(8, Richness::Rich);
        // rich Z = [-3, 3]
        let du = down_up_sets(&t, &[vid(&t, 5)]).unwrap();
        assert_eq!(du.down, vec![vid(&t, 4)]);
        assert_eq!(du.up, vec![vid(&t, 6)]);
        assert!(du.down_is_open_hemisphere && du.separated);
        assert!(matches!(down_up_sets(&line_table(8, Richness::AlmostRich), &[vid(&t, 5)]), Err(Error::Precondition(_))));
    }
}
