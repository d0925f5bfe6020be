use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use serde::Serialize;

use super::height::{split_link, HeightTable};
use super::registry::{nonempty_faces, HorizontalRegistry};
use crate::coxeter::Simplex;
use crate::error::{Error, Result};
use crate::homology::SimplicialComplex;
use crate::scalar::Scalar;

/// `(h², dp, dim)` of a horizontal simplex, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SubMorseValue {
    #[serde(serialize_with = "crate::scalar::serialize_scalar")]
    pub h2: Scalar,
    pub dp: usize,
    pub dim: usize,
}

pub fn sub_morse(reg: &HorizontalRegistry, v: usize) -> SubMorseValue {
    SubMorseValue { h2: reg.h2[v].clone(), dp: reg.dp[v], dim: reg.simplices[v].len() - 1 }
}

/// The subdivision of the patch whose vertices are the barycenters of the
/// horizontal simplices. Vertex labels are registry ids.
#[derive(Clone, Debug)]
pub struct SubdividedComplex {
    pub complex: SimplicialComplex,
    pub maximal: Vec<Simplex>,
    /// Indices into `maximal` of the maximal simplices through each vertex.
    star: Vec<Vec<usize>>,
}

impl SubdividedComplex {
    /// Vertices joined to `v` by an edge.
    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        self.star[v].iter().flat_map(|&m| self.maximal[m].iter().copied()).filter(|&w| w != v).collect()
    }

    /// Link of a vertex, computed from the maximal simplices through it.
    pub fn vertex_link(&self, v: usize) -> SimplicialComplex {
        SimplicialComplex::from_maximal(self.star[v].iter().map(|&m| self.maximal[m].iter().copied().filter(move |&w| w != v)))
    }
}

/// Subdivides every patch simplex as the join of the barycentric
/// subdivisions of its maximal horizontal faces. Needs an almost rich
/// generator set, so that equal vertex heights on a simplex span horizontal
/// faces.
pub fn subdivide(table: &HeightTable, reg: &HorizontalRegistry) -> Result<SubdividedComplex> {
    if !table.almost_rich() {
        return Err(Error::Precondition("subdivision along horizontal simplices needs an almost rich generator set".into()));
    }
    let patch = SimplicialComplex::from_maximal(table.patch.alcoves.iter().map(|a| a.iter().copied()));
    let (k, labels) = patch.subdivide_along_levels(|v| table.h2[v].clone());
    let mut ids = Vec::with_capacity(labels.len());
    for l in &labels {
        let i = reg
            .id(l)
            .ok_or_else(|| Error::violation("subdivide", format!("level class {:?} is not horizontal", table.patch.coords(l))))?;
        ids.push(i);
    }
    let complex = k.relabel(|v| ids[v]);
    if complex.vertices().len() != reg.len() {
        return Err(Error::violation("subdivide", "some horizontal simplex is not a vertex of the subdivision"));
    }
    let maximal = complex.maximal();
    let mut star = vec![Vec::new(); reg.len()];
    for (i, m) in maximal.iter().enumerate() {
        for &v in m {
            star[v].push(i);
        }
    }
    Ok(SubdividedComplex { complex, maximal, star })
}

/// Order complex of the inclusion poset on the given simplices. Vertex `i`
/// stands for `items[i]`.
pub fn order_complex(items: &[Simplex]) -> SimplicialComplex {
    let subset = |a: &Simplex, b: &Simplex| a.len() < b.len() && a.iter().all(|v| b.binary_search(v).is_ok());
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| items[i].len());
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = order.iter().map(|&i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        let top = &items[*c.last().unwrap()];
        let ext: Vec<usize> = order.iter().copied().filter(|&j| subset(top, &items[j])).collect();
        if ext.is_empty() {
            chains.push(c);
        } else {
            for j in ext {
                let mut d = c.clone();
                d.push(j);
                stack.push(d);
            }
        }
    }
    SimplicialComplex::from_maximal(chains)
}

#[derive(Clone, Debug, Serialize)]
pub struct DescendingLinkParts {
    /// Descending proper faces of the carrier (registry ids).
    pub face_vertices: Vec<usize>,
    /// Horizontal cofaces `σ ∪ κ` with `κ` in the horizontal link.
    pub horizontal: Vec<usize>,
    /// Carriers of the subdivided open hemisphere of the vertical link.
    pub vertical: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DescendingLink {
    pub vertex: usize,
    pub value: SubMorseValue,
    pub sigma_is_min: bool,
    pub direct: SimplicialComplex,
    pub predicted: SimplicialComplex,
    pub face_part: SimplicialComplex,
    pub coface_part: SimplicialComplex,
    pub parts: DescendingLinkParts,
}

impl DescendingLink {
    pub fn matches(&self) -> bool {
        self.direct == self.predicted
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Checks that the descending link of `v` is determined inside the patch:
/// the star of its carrier is complete and the depths of the carrier and
/// of all its subdivision neighbours are reliable.
pub fn descending_link_available(table: &HeightTable, reg: &HorizontalRegistry, sub: &SubdividedComplex, v: usize) -> bool {
    let s = &reg.simplices[v];
    if !table.patch.star_complete(s) {
        return false;
    }
    if reg.h2[v].is_zero() {
        return true;
    }
    reg.eligible[v] && reg.reliable[v] && sub.neighbors(v).iter().all(|&w| reg.reliable[w])
}

/// Descending link of a subdivision vertex: computed directly, and predicted
/// from the face part and the horizontal/vertical split of the link.
pub fn descending_link(table: &HeightTable, reg: &HorizontalRegistry, sub: &SubdividedComplex, v: usize) -> Result<DescendingLink> {
    if !descending_link_available(table, reg, sub, v) {
        return Err(Error::InsufficientRadius(format!(
            "descending link of the barycenter of {:?} needs more of the patch",
            table.patch.coords(&reg.simplices[v])
        )));
    }
    let value = sub_morse(reg, v);
    let values: HashMap<usize, SubMorseValue> = sub.neighbors(v).into_iter().map(|w| (w, sub_morse(reg, w))).collect();
    let lower = |w: usize| values.get(&w).is_some_and(|x| x.cmp(&value) == Ordering::Less);
    let direct = sub.vertex_link(v).full_subcomplex(lower);

    let sigma = &reg.simplices[v];
    let min = reg.sigma_min[v].map(|m| reg.simplices[m].clone());
    let sigma_is_min = min.as_ref().map_or(true, |m| m == sigma);
    // face part
    let faces: Vec<Simplex> = nonempty_faces(sigma).into_iter().filter(|f| f.len() < sigma.len()).collect();
    let face_vertices: Vec<usize> = faces
        .iter()
        .filter(|f| match &min {
            None => true,
            Some(m) if m == sigma => true,
            Some(m) if !is_subset(m, f) => true,
            Some(m) if m == *f => false,
            Some(_) => lower(reg.id(f).unwrap()),
        })
        .map(|f| reg.id(f).unwrap())
        .collect();
    let face_items: Vec<Simplex> = face_vertices.iter().map(|&i| reg.simplices[i].clone()).collect();
    let face_part = order_complex(&face_items).relabel(|i| face_vertices[i]);

    let mut horizontal = Vec::new();
    let mut vertical = Vec::new();
    let coface_part = if reg.h2[v].is_zero() {
        SimplicialComplex::empty()
    } else if sigma_is_min {
        let split = split_link(table, sigma)?;
        let hv: BTreeSet<usize> = split.horizontal_vertices().into_iter().collect();
        for kappa in table.patch.link_simplices(sigma) {
            if kappa.iter().all(|w| hv.contains(w)) {
                let mut rho = sigma.clone();
                rho.extend(&kappa);
                rho.sort_unstable();
                if let Some(i) = reg.id(&rho) {
                    horizontal.push(i);
                }
            }
        }
        let hor_items: Vec<Simplex> = horizontal.iter().map(|&i| reg.simplices[i].clone()).collect();
        let hor = order_complex(&hor_items).relabel(|i| horizontal[i]);
        let down: BTreeSet<usize> = split.obtuse.iter().copied().filter(|&w| !split.in_horizontal_part(w)).collect();
        let vlink = SimplicialComplex::from_iter(table.patch.link_simplices(sigma)).full_subcomplex(|w| down.contains(&w));
        let (k, labels) = vlink.subdivide_along_levels(|w| table.h2[w].clone());
        let mut ids = Vec::with_capacity(labels.len());
        for l in &labels {
            match reg.id(l) {
                Some(i) => ids.push(i),
                // not horizontal: the prediction cannot be a subcomplex, so
                // label it outside the registry
                None => ids.push(reg.len() + ids.len()),
            }
        }
        vertical = ids.clone();
        let ver = k.relabel(|i| ids[i]);
        hor.join(&ver)
    } else {
        direct.full_subcomplex(|w| {
            let r = &reg.simplices[w];
            is_subset(sigma, r) || r.iter().all(|x| sigma.binary_search(x).is_err())
        })
    };
    let predicted = face_part.join(&coface_part);
    Ok(DescendingLink {
        vertex: v,
        value,
        sigma_is_min,
        direct,
        predicted,
        face_part,
        coface_part,
        parts: DescendingLinkParts { face_vertices, horizontal, vertical },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub stages: usize,
    pub vertices: usize,
    /// Largest number of vertices entering at one stage.
    pub widest_stage: usize,
    /// Vertices entering together are never adjacent.
    pub new_vertices_independent: bool,
    /// For every vertex, its link meets the previous stage in its
    /// descending link.
    pub relative_links_match: bool,
    pub mismatches: Vec<usize>,
}

/// Distinct values in increasing order and the rank of each vertex.
fn ranks(reg: &HorizontalRegistry) -> (Vec<SubMorseValue>, Vec<usize>) {
    let mut distinct: Vec<SubMorseValue> = (0..reg.len()).map(|v| sub_morse(reg, v)).collect();
    distinct.sort();
    distinct.dedup();
    let rank = (0..reg.len()).map(|v| distinct.binary_search(&sub_morse(reg, v)).unwrap()).collect();
    (distinct, rank)
}

/// Full subcomplex on the vertices with at most `j` smaller values.
pub fn filtration_stage(reg: &HorizontalRegistry, sub: &SubdividedComplex, j: usize) -> SimplicialComplex {
    let (_, rank) = ranks(reg);
    sub.complex.full_subcomplex(|v| rank[v] <= j)
}

/// Checks every stage transition of the filtration of the whole
/// subdivided patch.
pub fn filtration_check(reg: &HorizontalRegistry, sub: &SubdividedComplex) -> FiltrationReport {
    let (distinct, rank) = ranks(reg);
    let mut by_stage = vec![Vec::new(); distinct.len()];
    for v in 0..reg.len() {
        by_stage[rank[v]].push(v);
    }
    let mut independent = true;
    let mut mismatches = Vec::new();
    for (j, entering) in by_stage.iter().enumerate() {
        let set: BTreeSet<usize> = entering.iter().copied().collect();
        for &v in entering {
            let nb = sub.neighbors(v);
            if nb.iter().any(|w| set.contains(w)) {
                independent = false;
            }
            let relative = sub.vertex_link(v).full_subcomplex(|w| rank[w] < j);
            let value = sub_morse(reg, v);
            let desc = sub.vertex_link(v).full_subcomplex(|w| sub_morse(reg, w) < value);
            if relative != desc {
                mismatches.push(v);
            }
        }
    }
    FiltrationReport {
        stages: distinct.len(),
        vertices: reg.len(),
        widest_stage: by_stage.iter().map(Vec::len).max().unwrap_or(0),
        new_vertices_independent: independent,
        relative_links_match: mismatches.is_empty(),
        mismatches,
    }
}
