use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::coxeter::{build_system, FiniteType, TypeTag};
use crate::error::{Error, Result};
use crate::homology::SimplicialComplex;
use crate::scalar::{Matrix, Vector};

/// A supported spherical building, possibly a join of factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BuildingSpec {
    /// The thin Coxeter complex of a finite type.
    Thin { finite: FiniteType },
    /// `q + 1` points.
    A1 { q: u32 },
    /// Flags of the projective plane over the field with `q` elements.
    A2 { q: u32 },
    /// Flags of the symplectic generalized quadrangle over the field with 2
    /// elements.
    C2 { q: u32 },
    Join { factors: Vec<BuildingSpec> },
}

impl fmt::Display for BuildingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildingSpec::Thin { finite } => write!(f, "thin-{finite:?}"),
            BuildingSpec::A1 { q } => write!(f, "A1({q})"),
            BuildingSpec::A2 { q } => write!(f, "A2({q})"),
            BuildingSpec::C2 { q } => write!(f, "C2({q})"),
            BuildingSpec::Join { factors } => {
                let parts: Vec<String> = factors.iter().map(|s| s.to_string()).collect();
                f.write_str(&parts.join("*"))
            }
        }
    }
}

impl std::str::FromStr for BuildingSpec {
    type Err = Error;

    /// Parses `A1(2)`, `A2(3)`, `C2(2)`, `thin-A2` and joins with `*`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('*').map(str::trim).collect();
        if parts.len() > 1 {
            let factors = parts.iter().map(|p| p.parse()).collect::<Result<Vec<_>>>()?;
            return Ok(BuildingSpec::Join { factors });
        }
        let bad = || Error::UnsupportedSpec(s.to_string());
        if let Some(t) = s.strip_prefix("thin-") {
            let finite = match t {
                "A1" => FiniteType::A1,
                "A2" => FiniteType::A2,
                "B2" => FiniteType::B2,
                "C2" => FiniteType::C2,
                "G2" => FiniteType::G2,
                "A3" => FiniteType::A3,
                "B3" => FiniteType::B3,
                "C3" => FiniteType::C3,
                _ => return Err(bad()),
            };
            return Ok(BuildingSpec::Thin { finite });
        }
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let q: u32 = rest.strip_suffix(')').and_then(|x| x.parse().ok()).ok_or_else(bad)?;
        match name {
            "A1" => Ok(BuildingSpec::A1 { q }),
            "A2" => Ok(BuildingSpec::A2 { q }),
            "C2" | "B2" => Ok(BuildingSpec::C2 { q }),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildingFactor {
    pub finite: FiniteType,
    /// `None` for a thin factor.
    pub q: Option<u32>,
    /// Global type indices of this factor.
    pub types: Vec<usize>,
    /// Global vertex ids of this factor.
    pub vertices: Vec<usize>,
}

/// A finite spherical building as a chamber system: chambers list their
/// vertices by type, and chambers sharing all vertices but the one of type
/// `t` are `t`-adjacent.
#[derive(Clone, Debug)]
pub struct SphericalBuildingCx {
    pub spec: BuildingSpec,
    pub factors: Vec<BuildingFactor>,
    pub rank: usize,
    pub vertex_type: Vec<usize>,
    pub chambers: Vec<Vec<usize>>,
    /// `panel_of[c][t]`: the panel of type `t` of chamber `c`.
    pub panel_of: Vec<Vec<usize>>,
    pub panels: Vec<Vec<usize>>,
    /// Simple reflections, one per type, on the concatenated ambient space of
    /// the factors.
    pub simple: Vec<Matrix>,
    /// Fundamental rays `ω_t`: the direction of the type-`t` vertex of the
    /// fundamental chamber.
    pub fundamental: Vec<Vector>,
    /// Positive roots on the concatenated ambient space.
    pub positive: Vec<Vector>,
    pub ambient: usize,
    pub base_chamber: usize,
    pub base_apartment: Vec<usize>,
    /// `δ(base, c)` for chambers of the base apartment.
    apartment_element: HashMap<usize, Matrix>,
    vertex_chambers: Vec<Vec<usize>>,
}

/// One irreducible model: local vertex count and chambers by local type.
struct LocalModel {
    finite: FiniteType,
    q: Option<u32>,
    vertices: usize,
    chambers: Vec<Vec<usize>>,
}

fn thin_model(finite: FiniteType) -> Result<LocalModel> {
    let (sys, weyl) = build_system(TypeTag::finite(finite))?;
    let rays = sys.fundamental_rays();
    let mut ids: HashMap<(usize, Vector), usize> = HashMap::new();
    let mut chambers = Vec::new();
    for w in &weyl.elements {
        let ch = rays
            .iter()
            .enumerate()
            .map(|(t, r)| {
                let n = ids.len();
                *ids.entry((t, w.apply(r))).or_insert(n)
            })
            .collect();
        chambers.push(ch);
    }
    Ok(LocalModel { finite, q: None, vertices: ids.len(), chambers })
}

/// Normalized representatives of the points of the projective space of
/// dimension `n - 1` over the prime field with `q` elements.
fn projective_points(n: usize, q: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = (q as usize).pow(n as u32);
    for code in 1..total {
        let mut x = vec![0u32; n];
        let mut c = code;
        for xi in x.iter_mut() {
            *xi = (c % q as usize) as u32;
            c /= q as usize;
        }
        if x.iter().find(|&&a| a != 0) == Some(&1) {
            out.push(x);
        }
    }
    out
}

fn a1_model(q: u32) -> Result<LocalModel> {
    if !(2..=5).contains(&q) {
        return Err(Error::UnsupportedSpec(format!("A1({q}) needs a prime power q <= 5")));
    }
    let n = q as usize + 1;
    Ok(LocalModel { finite: FiniteType::A1, q: Some(q), vertices: n, chambers: (0..n).map(|i| vec![i]).collect() })
}

fn a2_model(q: u32) -> Result<LocalModel> {
    if !(q == 2 || q == 3) {
        return Err(Error::UnsupportedSpec(format!("A2({q}) is only modelled for q in {{2, 3}}")));
    }
    let pts = projective_points(3, q);
    let n = pts.len();
    let mut chambers = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            if p.iter().zip(l).map(|(a, b)| a * b).sum::<u32>() % q == 0 {
                chambers.push(vec![i, n + j]);
            }
        }
    }
    Ok(LocalModel { finite: FiniteType::A2, q: Some(q), vertices: 2 * n, chambers })
}

fn c2_model(q: u32) -> Result<LocalModel> {
    if q != 2 {
        return Err(Error::UnsupportedSpec(format!("C2({q}) is only modelled for q = 2")));
    }
    let pts = projective_points(4, 2);
    let form = |x: &[u32], y: &[u32]| (x[0] * y[1] + x[1] * y[0] + x[2] * y[3] + x[3] * y[2]) % 2;
    let index: HashMap<&Vec<u32>, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    // totally isotropic lines {x, y, x + y}
    let mut lines: Vec<[usize; 3]> = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate().skip(i + 1) {
            if form(x, y) == 0 {
                let s: Vec<u32> = x.iter().zip(y).map(|(a, b)| (a + b) % 2).collect();
                let mut l = [i, j, index[&s]];
                l.sort_unstable();
                if !lines.contains(&l) {
                    lines.push(l);
                }
            }
        }
    }
    let n = pts.len();
    let mut chambers = Vec::new();
    for (j, l) in lines.iter().enumerate() {
        for &p in l {
            chambers.push(vec![p, n + j]);
        }
    }
    Ok(LocalModel { finite: FiniteType::C2, q: Some(q), vertices: n + lines.len(), chambers })
}

fn local_models(spec: &BuildingSpec) -> Result<Vec<LocalModel>> {
    match spec {
        BuildingSpec::Thin { finite } => Ok(vec![thin_model(*finite)?]),
        BuildingSpec::A1 { q } => Ok(vec![a1_model(*q)?]),
        BuildingSpec::A2 { q } => Ok(vec![a2_model(*q)?]),
        BuildingSpec::C2 { q } => Ok(vec![c2_model(*q)?]),
        BuildingSpec::Join { factors } => {
            let mut out = Vec::new();
            for f in factors {
                out.extend(local_models(f)?);
            }
            if out.is_empty() {
                return Err(Error::UnsupportedSpec("empty join".into()));
            }
            Ok(out)
        }
    }
}

fn pad(v: &Vector, offset: usize, ambient: usize) -> Vector {
    let mut out = Vector::zeros(ambient);
    for (i, x) in v.0.iter().enumerate() {
        out.0[offset + i] = x.clone();
    }
    out
}

/// Length of a Weyl group element: the number of positive roots it sends to
/// negative roots.
fn length(w: &Matrix, positive: &[Vector]) -> usize {
    positive.iter().filter(|a| !positive.contains(&w.apply(a))).count()
}

#[derive(Clone, Debug)]
pub struct WDistance {
    pub element: Matrix,
    /// Type sequence of a minimal gallery.
    pub word: Vec<usize>,
}

impl WDistance {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

pub fn build_building(spec: &BuildingSpec) -> Result<SphericalBuildingCx> {
    let models = local_models(spec)?;
    let mut factors = Vec::new();
    let mut vertex_type = Vec::new();
    let mut simple_blocks = Vec::new();
    let mut fundamental_local = Vec::new();
    let mut positive_local = Vec::new();
    let (mut type_off, mut vert_off, mut amb_off) = (0, 0, 0);
    for m in &models {
        let (sys, _) = build_system(TypeTag::finite(m.finite))?;
        let rank = sys.rank();
        let types: Vec<usize> = (type_off..type_off + rank).collect();
        let vertices: Vec<usize> = (vert_off..vert_off + m.vertices).collect();
        // local vertex types from the chambers
        let mut vt = vec![usize::MAX; m.vertices];
        for ch in &m.chambers {
            for (t, &v) in ch.iter().enumerate() {
                vt[v] = type_off + t;
            }
        }
        vertex_type.extend(vt);
        for a in &sys.simple {
            simple_blocks.push((amb_off, Matrix::reflection(a)));
        }
        for r in sys.fundamental_rays() {
            fundamental_local.push((amb_off, r));
        }
        for a in &sys.positive {
            positive_local.push((amb_off, a.clone()));
        }
        factors.push(BuildingFactor { finite: m.finite, q: m.q, types, vertices });
        type_off += rank;
        vert_off += m.vertices;
        amb_off += sys.ambient;
    }
    let ambient = amb_off;
    let rank = type_off;
    let simple: Vec<Matrix> = simple_blocks
        .iter()
        .map(|(off, r)| {
            let mut m = Matrix::identity(ambient);
            for i in 0..r.dim() {
                for j in 0..r.dim() {
                    m.0[off + i][off + j] = r.0[i][j].clone();
                }
            }
            m
        })
        .collect();
    let fundamental = fundamental_local.iter().map(|(o, r)| pad(r, *o, ambient)).collect();
    let positive = positive_local.iter().map(|(o, a)| pad(a, *o, ambient)).collect();
    // chambers of the join: products of factor chambers
    let mut chambers: Vec<Vec<usize>> = vec![Vec::new()];
    let mut off = 0;
    for m in &models {
        let mut next = Vec::new();
        for c in &chambers {
            for d in &m.chambers {
                let mut e = c.clone();
                e.extend(d.iter().map(|v| v + off));
                next.push(e);
            }
        }
        chambers = next;
        off += m.vertices;
    }
    let mut panel_ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut panels: Vec<Vec<usize>> = Vec::new();
    let mut panel_of = Vec::with_capacity(chambers.len());
    for (c, ch) in chambers.iter().enumerate() {
        let mut row = Vec::with_capacity(rank);
        for t in 0..rank {
            let mut key = ch.clone();
            key[t] = usize::MAX;
            let n = panel_ids.len();
            let p = *panel_ids.entry(key).or_insert(n);
            if p == panels.len() {
                panels.push(Vec::new());
            }
            panels[p].push(c);
            row.push(p);
        }
        panel_of.push(row);
    }
    let mut vertex_chambers = vec![Vec::new(); vertex_type.len()];
    for (c, ch) in chambers.iter().enumerate() {
        for &v in ch {
            vertex_chambers[v].push(c);
        }
    }
    let mut b = SphericalBuildingCx {
        spec: spec.clone(),
        factors,
        rank,
        vertex_type,
        chambers,
        panel_of,
        panels,
        simple,
        fundamental,
        positive,
        ambient,
        base_chamber: 0,
        base_apartment: Vec::new(),
        apartment_element: HashMap::new(),
        vertex_chambers,
    };
    if b.panels.iter().any(|p| p.len() < 2) {
        return Err(Error::violation("building", "a panel with fewer than two chambers"));
    }
    let apartment = b.apartment_through(0)?.into_iter().next().ok_or_else(|| Error::violation("building", "no apartment through the base chamber"))?;
    let dist = b.w_distances_from(0)?;
    b.apartment_element = apartment.iter().map(|&c| (c, dist[c].element.clone())).collect();
    b.base_apartment = apartment;
    Ok(b)
}

impl SphericalBuildingCx {
    pub fn dim(&self) -> usize {
        self.rank - 1
    }

    pub fn is_thick(&self) -> bool {
        self.panels.iter().all(|p| p.len() >= 3)
    }

    pub fn weyl_order(&self) -> usize {
        self.factors.iter().map(|f| f.finite.weyl_order()).product()
    }

    /// Number of positive roots, the length of the longest element.
    pub fn longest_length(&self) -> usize {
        self.positive.len()
    }

    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_maximal(self.chambers.iter().map(|c| c.iter().copied()))
    }

    pub fn chambers_containing(&self, s: &[usize]) -> Vec<usize> {
        match s.first() {
            None => (0..self.chambers.len()).collect(),
            Some(&v) => self.vertex_chambers[v].iter().copied().filter(|&c| s.iter().all(|x| self.chambers[c].contains(x))).collect(),
        }
    }

    /// Chambers adjacent to `c` (sharing a panel), with the panel type.
    pub fn neighbors(&self, c: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rank).flat_map(move |t| self.panels[self.panel_of[c][t]].iter().filter(move |&&d| d != c).map(move |&d| (d, t)))
    }

    /// Gallery distances from `c`.
    pub fn gallery_distances(&self, c: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.chambers.len()];
        dist[c] = 0;
        let mut queue = VecDeque::from([c]);
        while let Some(x) = queue.pop_front() {
            for (y, _) in self.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// `δ(c, d)` for every chamber `d`, from the types of minimal galleries.
    /// All minimal galleries must give the same element, of length equal to
    /// the gallery distance.
    pub fn w_distances_from(&self, c: usize) -> Result<Vec<WDistance>> {
        let n = self.chambers.len();
        let mut out: Vec<Option<WDistance>> = vec![None; n];
        out[c] = Some(WDistance { element: Matrix::identity(self.ambient), word: Vec::new() });
        let mut queue = VecDeque::from([c]);
        while let Some(x) = queue.pop_front() {
            let wx = out[x].clone().unwrap();
            for (y, t) in self.neighbors(x) {
                let element = wx.element.mul(&self.simple[t]);
                match &out[y] {
                    None => {
                        let mut word = wx.word.clone();
                        word.push(t);
                        if length(&element, &self.positive) != word.len() {
                            return Err(Error::violation("w_distance", format!("gallery {c} -> {y} of type {word:?} is not reduced")));
                        }
                        out[y] = Some(WDistance { element, word });
                        queue.push_back(y);
                    }
                    Some(wy) if wy.len() == wx.len() + 1 && wy.element != element => {
                        return Err(Error::violation("w_distance", format!("two minimal galleries {c} -> {y} of different types")));
                    }
                    _ => {}
                }
            }
        }
        out.into_iter().map(|w| w.ok_or_else(|| Error::violation("w_distance", "disconnected chamber graph"))).collect()
    }

    /// Checks the building axioms on all pairs `(c, d)` and all panel
    /// neighbours `d'` of `d`: `δ(c, d') ∈ {w, w s}`, and `δ(c, d') = w s`
    /// whenever `l(w s) = l(w) + 1`; `δ(c, d) = 1` iff `c = d`.
    pub fn check_axioms(&self) -> Result<usize> {
        let mut checked = 0;
        for c in 0..self.chambers.len() {
            let dist = self.w_distances_from(c)?;
            for d in 0..self.chambers.len() {
                if dist[d].is_empty() != (c == d) {
                    return Err(Error::violation("building_axioms", format!("δ({c},{d}) trivial iff equal")));
                }
                let w = &dist[d].element;
                for (e, t) in self.neighbors(d) {
                    let ws = w.mul(&self.simple[t]);
                    let we = &dist[e].element;
                    let longer = length(&ws, &self.positive) == dist[d].len() + 1;
                    if (we != w && we != &ws) || (longer && we != &ws) {
                        return Err(Error::violation("building_axioms", format!("chambers {c}, {d}, {e}")));
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }

    /// Apartments containing `c`: one for every chamber opposite `c`, formed
    /// by the chambers on minimal galleries between the two.
    pub fn apartment_through(&self, c: usize) -> Result<Vec<Vec<usize>>> {
        let from_c = self.w_distances_from(c)?;
        let top = self.longest_length();
        let mut out = Vec::new();
        for e in (0..self.chambers.len()).filter(|&e| from_c[e].len() == top) {
            let from_e = self.gallery_distances(e);
            let a: Vec<usize> = (0..self.chambers.len()).filter(|&d| from_c[d].len() + from_e[d] == top).collect();
            if a.len() != self.weyl_order() {
                return Err(Error::violation("apartment", format!("convex hull of opposite chambers has {} chambers", a.len())));
            }
            out.push(a);
        }
        Ok(out)
    }

    pub fn in_base_apartment(&self, c: usize) -> bool {
        self.apartment_element.contains_key(&c)
    }

    /// `δ(base, c)` for a chamber of the base apartment.
    pub fn apartment_element(&self, c: usize) -> Option<&Matrix> {
        self.apartment_element.get(&c)
    }

    /// The retraction onto the base apartment centered at `center`: each
    /// chamber goes to the apartment chamber at the same W-distance from
    /// `center`.
    pub fn retraction(&self, center: usize) -> Result<Vec<usize>> {
        let wc = self.apartment_element.get(&center).ok_or(Error::NotInApartment)?;
        let probe = self.generic_probe();
        let by_key: HashMap<Vector, usize> = self.apartment_element.iter().map(|(&e, w)| (w.apply(&probe), e)).collect();
        let dist = self.w_distances_from(center)?;
        Ok(dist.iter().map(|d| by_key[&wc.mul(&d.element).apply(&probe)]).collect())
    }

    /// A vector with trivial stabilizer: the sum of the fundamental rays.
    fn generic_probe(&self) -> Vector {
        Vector::sum(self.ambient, &self.fundamental)
    }

    /// Vertex images under a chamber map that is type preserving.
    pub fn vertex_images(&self, chamber_map: &[usize]) -> Result<Vec<usize>> {
        let mut out = vec![usize::MAX; self.vertex_type.len()];
        for (c, ch) in self.chambers.iter().enumerate() {
            for (t, &v) in ch.iter().enumerate() {
                let img = self.chambers[chamber_map[c]][t];
                if out[v] == usize::MAX {
                    out[v] = img;
                } else if out[v] != img {
                    return Err(Error::violation("retraction", format!("vertex {v} has two images")));
                }
            }
        }
        Ok(out)
    }

    /// The gate of `c` in the residue of the simplex `s`: the unique chamber
    /// of the residue nearest to `c`. Verifies the gate identity.
    pub fn residue_projection(&self, s: &[usize], c: usize) -> Result<usize> {
        let residue = self.chambers_containing(s);
        if residue.is_empty() {
            return Err(Error::Precondition(format!("{s:?} is not a simplex of the building")));
        }
        let dist = self.gallery_distances(c);
        let best = residue.iter().copied().min_by_key(|&x| dist[x]).unwrap();
        let from_best = self.gallery_distances(best);
        for &x in &residue {
            if dist[x] != dist[best] + from_best[x] {
                return Err(Error::violation("gate", format!("chamber {x} of the residue of {s:?} breaks the gate identity from {c}")));
            }
        }
        Ok(best)
    }

    /// Direction of the type-`t` vertex of the base-apartment chamber `c`.
    pub fn apartment_direction(&self, c: usize, t: usize) -> Option<Vector> {
        self.apartment_element.get(&c).map(|w| w.apply(&self.fundamental[t]))
    }

    /// Factor index of a vertex.
    pub fn factor_of(&self, v: usize) -> usize {
        self.factors.iter().position(|f| f.types.contains(&self.vertex_type[v])).unwrap()
    }
}

/// Number of chambers of a model, from the classical counts.
pub fn expected_chambers(spec: &BuildingSpec) -> usize {
    match spec {
        BuildingSpec::Thin { finite } => finite.weyl_order(),
        BuildingSpec::A1 { q } => *q as usize + 1,
        BuildingSpec::A2 { q } => {
            let q = *q as usize;
            (q * q + q + 1) * (q + 1)
        }
        BuildingSpec::C2 { q } => {
            let q = *q as usize;
            (q + 1) * (q * q + 1) * (q + 1)
        }
        BuildingSpec::Join { factors } => factors.iter().map(expected_chambers).product(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> SphericalBuildingCx {
        build_building(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn classical_counts() {
        for s in ["A1(2)", "A1(3)", "A1(4)", "A1(5)", "A2(2)", "A2(3)", "C2(2)", "thin-A2", "thin-C2", "A1(2)*A1(2)", "thin-A1*A1(3)"] {
            let spec: BuildingSpec = s.parse().unwrap();
            let x = build_building(&spec).unwrap();
            assert_eq!(x.chambers.len(), expected_chambers(&spec), "{s}");
        }
        let a2 = b("A2(2)");
        assert_eq!(a2.vertex_type.len(), 14);
        assert!(a2.is_thick());
        assert_eq!(b("C2(2)").vertex_type.len(), 30);
        assert_eq!(b("A1(2)").dim(), 0);
        assert!(!b("thin-A2").is_thick());
        assert!(matches!("A2(5)".parse::<BuildingSpec>().map(|s| build_building(&s)), Ok(Err(Error::UnsupportedSpec(_)))));
        assert!(matches!("D4(2)".parse::<BuildingSpec>(), Err(Error::UnsupportedSpec(_))));
    }

    #[test]
    fn axioms_hold() {
        for s in ["A2(2)", "C2(2)", "A1(2)*A1(2)", "thin-G2", "A2(3)"] {
            assert!(b(s).check_axioms().unwrap() > 0, "{s}");
        }
    }

    #[test]
    fn apartments_are_thin_and_counted() {
        let a2 = b("A2(2)");
        assert_eq!(a2.base_apartment.len(), 6);
        // chambers opposite a chamber: q^3
        assert_eq!(a2.apartment_through(0).unwrap().len(), 8);
        let c2 = b("C2(2)");
        assert_eq!(c2.apartment_through(0).unwrap().len(), 16);
    }

    #[test]
    fn retraction_properties() {
        let a2 = b("A2(2)");
        let rho = a2.retraction(a2.base_chamber).unwrap();
        let before = a2.gallery_distances(a2.base_chamber);
        for &c in &a2.base_apartment {
            assert_eq!(rho[c], c);
        }
        for c in 0..a2.chambers.len() {
            assert_eq!(before[rho[c]], before[c]);
        }
        a2.vertex_images(&rho).unwrap();
        let outside = (0..a2.chambers.len()).find(|c| !a2.in_base_apartment(*c)).unwrap();
        assert_eq!(a2.retraction(outside).unwrap_err(), Error::NotInApartment);
        let a1 = b("A1(2)");
        let rho = a1.retraction(a1.base_chamber).unwrap();
        let opposite = a1.base_apartment.iter().copied().find(|&c| c != a1.base_chamber).unwrap();
        for c in 0..3 {
            if c != a1.base_chamber {
                assert_eq!(rho[c], opposite);
            }
        }
    }

    #[test]
    fn residue_gates() {
        let a2 = b("A2(2)");
        let far = a2.gallery_distances(0).iter().position(|&d| d == 3).unwrap();
        for v in 0..14 {
            let g = a2.residue_projection(&[v], far).unwrap();
            let dist = a2.gallery_distances(far);
            assert!(a2.chambers_containing(&[v]).iter().all(|&x| dist[x] >= dist[g]));
        }
        assert_eq!(a2.residue_projection(&a2.chambers[5].clone(), 5).unwrap(), 5);
    }
}
