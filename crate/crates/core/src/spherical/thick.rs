use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{Signed, Zero};

use super::building::{build_building, BuildingSpec, SphericalBuildingCx};
use crate::coxeter::{FiniteType, LinkComplex, Simplex};
use crate::error::{Error, Result};
use crate::homology::{betti, BettiReport, SimplicialComplex};
use crate::morse::{nonempty_faces, order_complex, split_link, sub_morse, HeightTable, HorizontalRegistry, SubMorseValue};
use crate::scalar::{solve, Scalar, Vector};

pub const THICK_HEIGHT_ASSUMPTION: &str =
    "heights of thick link vertices are the heights of their images under the retraction onto the thin link centered at a chamber containing the gradient pole";

/// Thick model of a thin link factor at thickness `q`.
pub fn thick_model(finite: FiniteType, q: u32) -> Result<BuildingSpec> {
    match finite {
        FiniteType::A1 => Ok(BuildingSpec::A1 { q }),
        FiniteType::A2 => Ok(BuildingSpec::A2 { q }),
        FiniteType::B2 | FiniteType::C2 => Ok(BuildingSpec::C2 { q }),
        other => Err(Error::UnsupportedSpec(format!("no thick model of type {other:?}"))),
    }
}

/// Thin chambers (maximal simplices) of one link factor, with vertices as
/// patch ids.
fn factor_chambers(link: &LinkComplex, f: usize) -> Vec<Simplex> {
    let members: BTreeSet<usize> = link.factor_vertices(f).into_iter().collect();
    let rank = link.factors[f].finite.rank();
    link.simplices.iter().filter(|s| s.len() == rank && s.iter().all(|v| members.contains(v))).cloned().collect()
}

/// A thin chamber whose cone contains `pole` (any chamber if the pole is
/// zero).
fn chamber_containing(link: &LinkComplex, chambers: &[Simplex], pole: &Vector) -> Option<usize> {
    if pole.is_zero() {
        return Some(0);
    }
    chambers.iter().position(|c| {
        let dirs: Vec<&Vector> = c.iter().map(|&v| &link.vertices[link.position(v).unwrap()].direction).collect();
        let gram: Vec<Vec<Scalar>> = dirs.iter().map(|a| dirs.iter().map(|b| a.dot(b)).collect()).collect();
        let rhs: Vec<Scalar> = dirs.iter().map(|a| a.dot(pole)).collect();
        solve(&gram, &rhs).is_some_and(|l| l.iter().all(|x| !x.is_negative()))
    })
}

/// Type-preserving isomorphism from the base apartment of `b` onto the thin
/// factor, sending the base chamber to `thin[start]`. Returns the image of
/// every apartment vertex.
fn apartment_isomorphism(b: &SphericalBuildingCx, thin: &[Simplex], start: usize, thin_type: &dyn Fn(usize) -> usize) -> Option<HashMap<usize, usize>> {
    let rank = b.rank;
    let thin_types: Vec<usize> = {
        let mut t: Vec<usize> = thin[start].iter().map(|&v| thin_type(v)).collect();
        t.sort_unstable();
        t
    };
    let perms: Vec<Vec<usize>> = if rank == 1 { vec![vec![thin_types[0]]] } else { vec![thin_types.clone(), thin_types.iter().rev().copied().collect()] };
    let apt: BTreeSet<usize> = b.base_apartment.iter().copied().collect();
    'perm: for pi in perms {
        let vertex_of = |t: &Simplex, ty: usize| t.iter().copied().find(|&v| thin_type(v) == ty);
        let mut cmap: HashMap<usize, usize> = HashMap::from([(b.base_chamber, start)]);
        let mut vmap: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([b.base_chamber]);
        while let Some(c) = queue.pop_front() {
            let tc = &thin[cmap[&c]];
            for t in 0..rank {
                let Some(img) = vertex_of(tc, pi[t]) else { continue 'perm };
                if *vmap.entry(b.chambers[c][t]).or_insert(img) != img {
                    continue 'perm;
                }
            }
            for (d, t) in b.neighbors(c) {
                if !apt.contains(&d) || cmap.contains_key(&d) {
                    continue;
                }
                let drop = vertex_of(tc, pi[t]).unwrap();
                let Some(k) = thin.iter().position(|x| x != tc && tc.iter().filter(|&&v| v != drop).all(|v| x.contains(v))) else {
                    continue 'perm;
                };
                cmap.insert(d, k);
                queue.push_back(d);
            }
        }
        let images: BTreeSet<usize> = vmap.values().copied().collect();
        if images.len() == vmap.len() && cmap.len() == thin.len() {
            return Some(vmap);
        }
    }
    None
}

/// One thick factor of the link with its transport to the thin link.
#[derive(Clone, Debug)]
pub struct ThickFactor {
    pub spec: BuildingSpec,
    pub building: SphericalBuildingCx,
    /// Thin link vertex (patch id) of every thick vertex.
    pub thin: Vec<usize>,
    pub horizontal: bool,
}

#[derive(Clone, Debug)]
pub struct ThickDescendingLink {
    pub carrier: Simplex,
    pub q: u32,
    pub factors: Vec<ThickFactor>,
    /// Descending vertices of the subdivided thick link, found by comparing
    /// transported Morse values.
    pub direct: SimplicialComplex,
    /// Join of the three parts below.
    pub predicted: SimplicialComplex,
    pub face_part: SimplicialComplex,
    pub horizontal_part: SimplicialComplex,
    pub vertical_part: SimplicialComplex,
    pub report: BettiReport,
}

impl ThickDescendingLink {
    pub fn matches(&self) -> bool {
        self.direct == self.predicted
    }
}

/// Assembles the descending link of the barycenter of a horizontal simplex
/// with `σ_min = σ` in the thick building whose links have thickness `q`.
pub fn thick_descending_link(table: &HeightTable, reg: &HorizontalRegistry, v: usize, q: u32) -> Result<ThickDescendingLink> {
    let sigma = reg.simplices[v].clone();
    if reg.h2[v].is_zero() {
        return Err(Error::NoGradient);
    }
    if reg.sigma_min[v] != Some(v) {
        return Err(Error::Precondition(format!("{sigma:?} is not its own minimal face")));
    }
    if !reg.reliable[v] {
        return Err(Error::InsufficientRadius(format!("depths around {:?} are not determined by the patch", table.patch.coords(&sigma))));
    }
    let split = split_link(table, &sigma)?;
    let link = &split.link;
    let mut factors = Vec::new();
    for (f, lf) in link.factors.iter().enumerate() {
        let spec = thick_model(lf.finite, q)?;
        let building = build_building(&spec)?;
        let chambers = factor_chambers(link, f);
        let pole = lf.span.project(&split.gradient);
        let start = chamber_containing(link, &chambers, &pole).ok_or_else(|| Error::violation("thick_descending_link", "pole lies in no chamber cone"))?;
        let iso = apartment_isomorphism(&building, &chambers, start, &|x| table.patch.vertex_type[x])
            .ok_or_else(|| Error::violation("thick_descending_link", format!("apartment of {spec} does not match the thin link factor")))?;
        let rho = building.retraction(building.base_chamber)?;
        let image = building.vertex_images(&rho)?;
        let thin = image.iter().map(|i| iso[i]).collect();
        factors.push(ThickFactor { spec, building, thin, horizontal: split.horizontal.contains(&f) });
    }
    // global thick vertex ids: factor offsets
    let mut thin_of: Vec<usize> = Vec::new();
    let mut horizontal_vertex: Vec<bool> = Vec::new();
    let mut link_complex = SimplicialComplex::from_maximal([Vec::<usize>::new()]);
    for tf in &factors {
        let off = thin_of.len();
        let k = tf.building.complex().relabel(|x| x + off);
        link_complex = if link_complex.is_empty() { k } else { link_complex.join(&k) };
        thin_of.extend(&tf.thin);
        horizontal_vertex.extend(std::iter::repeat(tf.horizontal).take(tf.thin.len()));
    }
    let h = reg.h2[v].clone();
    let height = |x: usize| table.h2[thin_of[x]].clone();
    let (sub_link, labels) = link_complex.subdivide_along_levels(height);
    // Morse value of each subdivided link vertex via its thin image
    let mut values: Vec<SubMorseValue> = Vec::with_capacity(labels.len());
    for kappa in &labels {
        let mut img: Simplex = kappa.iter().map(|&x| thin_of[x]).collect();
        if height(kappa[0]) == h {
            img.extend(&sigma);
        }
        img.sort_unstable();
        let id = reg.id(&img).ok_or_else(|| Error::violation("thick_descending_link", format!("image {img:?} of a level class is not horizontal")))?;
        // depth only breaks ties at the height of σ
        if reg.h2[id] == h && !reg.reliable[id] {
            return Err(Error::InsufficientRadius(format!("depth of {img:?} is not determined by the patch")));
        }
        values.push(sub_morse(reg, id));
    }
    let own = sub_morse(reg, v);
    // face labels come first, thick labels after
    let faces: Vec<Simplex> = nonempty_faces(&sigma).into_iter().filter(|f| f.len() < sigma.len()).collect();
    let nf = faces.len();
    let face_part = order_complex(&faces);
    let shifted = sub_link.relabel(|i| i + nf);
    let whole = if face_part.is_empty() { shifted.clone() } else if shifted.is_empty() { face_part.clone() } else { face_part.join(&shifted) };
    let face_lower: Vec<bool> = faces.iter().map(|f| sub_morse(reg, reg.id(f).unwrap()) < own).collect();
    let direct = whole.full_subcomplex(|i| if i < nf { face_lower[i] } else { values[i - nf] < own });

    // independent prediction
    let direction = |x: usize| &link.vertices[link.position(thin_of[x]).unwrap()].direction;
    let label_index: HashMap<&Simplex, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let hor_items: Vec<Simplex> = link_complex
        .iter()
        .filter(|k| k.iter().all(|&x| horizontal_vertex[x] && height(x) == h))
        .cloned()
        .collect();
    let horizontal_part = order_complex(&hor_items).relabel(|i| nf + label_index[&hor_items[i]]);
    let obtuse: Vec<bool> = (0..thin_of.len()).map(|x| !horizontal_vertex[x] && split.gradient.dot(direction(x)).is_negative()).collect();
    let (ver, ver_labels) = link_complex.full_subcomplex(|x| obtuse[x]).subdivide_along_levels(height);
    let vertical_part = ver.relabel(|i| nf + label_index[&ver_labels[i]]);
    let mut predicted = face_part.clone();
    for part in [&horizontal_part, &vertical_part] {
        predicted = if predicted.is_empty() { part.clone() } else if part.is_empty() { predicted } else { predicted.join(part) };
    }
    let report = betti(&direct)?;
    Ok(ThickDescendingLink { carrier: sigma, q, factors, direct, predicted, face_part, horizontal_part, vertical_part, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{generate_patch, TypeTag};
    use crate::morse::build_registry;
    use crate::zonotope::{build_generators, Richness};

    fn setup(t: FiniteType, r: usize, level: Richness, gen_r: usize) -> (HeightTable, HorizontalRegistry) {
        let g = build_generators(&generate_patch(TypeTag::affine(t), gen_r).unwrap(), level).unwrap();
        let table = HeightTable::new(generate_patch(TypeTag::affine(t), r).unwrap(), &g).unwrap();
        let reg = build_registry(&table).unwrap();
        (table, reg)
    }

    #[test]
    fn tree_descending_links_are_two_points() {
        let (t, reg) = setup(FiniteType::A1, 10, Richness::Rich, 4);
        let mut n = 0;
        for v in reg.positive() {
            if reg.simplices[v].len() == 1 && reg.reliable[v] {
                let d = thick_descending_link(&t, &reg, v, 2).unwrap();
                assert!(d.matches());
                assert_eq!(d.direct.vertices().len(), 2);
                assert_eq!(d.report.reduced_betti, vec![0, 1]);
                n += 1;
            }
        }
        assert!(n > 0);
    }

    #[test]
    fn a2_thick_links_are_circles() {
        let (t, reg) = setup(FiniteType::A2, 10, Richness::AlmostRich, 3);
        let mut n = 0;
        for v in reg.positive() {
            if reg.reliable[v] && reg.sigma_min[v] == Some(v) {
                let d = thick_descending_link(&t, &reg, v, 2).unwrap();
                assert!(d.matches(), "{:?}", reg.simplices[v]);
                assert!(d.report.is_spherical(1), "{:?}", d.report);
                n += 1;
            }
        }
        assert!(n > 0);
    }
}
