use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coxeter::{ApartmentPatch, WeylGroup};
use crate::error::{Error, Result};
use crate::scalar::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Richness {
    /// The W-orbit of the roots.
    OrbitClosure,
    /// Contains every difference of adjacent vertices.
    AlmostRich,
    /// Contains every difference of vertices whose closed stars intersect.
    Rich,
}

impl fmt::Display for Richness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Richness::OrbitClosure => "orbit-closure",
            Richness::AlmostRich => "almost-rich",
            Richness::Rich => "rich",
        })
    }
}

impl FromStr for Richness {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orbit" | "orbit-closure" => Ok(Richness::OrbitClosure),
            "almost-rich" => Ok(Richness::AlmostRich),
            "rich" => Ok(Richness::Rich),
            _ => Err(Error::InvalidConfig(format!("unknown richness level `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorSet {
    pub vectors: Vec<Vector>,
    pub level: Richness,
    /// Checked by applying every element of W.
    pub w_invariant: bool,
}

impl GeneratorSet {
    /// A W-orbit closure of arbitrary seeds, tagged as `OrbitClosure`.
    pub fn orbit_closure(weyl: &WeylGroup, seeds: &[Vector]) -> Self {
        let vectors = weyl.orbit_closure(seeds);
        GeneratorSet { vectors, level: Richness::OrbitClosure, w_invariant: true }
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.vectors.binary_search(v).is_ok()
    }
}

/// Differences `u - v` for patch vertices at 1-skeleton distance in `1..=k`,
/// over the given vertices `u`.
fn differences(patch: &ApartmentPatch, from: &[usize], k: usize) -> BTreeSet<Vector> {
    let mut out = BTreeSet::new();
    for &u in from {
        for v in patch.ball(u, k) {
            if v != u {
                out.insert(&patch.vertices[u] - &patch.vertices[v]);
            }
        }
    }
    out
}

/// Every difference of adjacent patch vertices lies in `d`.
pub fn is_almost_rich(patch: &ApartmentPatch, d: &GeneratorSet) -> bool {
    let all: Vec<usize> = (0..patch.vertices.len()).collect();
    differences(patch, &all, 1).iter().all(|v| d.contains(v))
}

/// Every difference of patch vertices whose closed stars (as far as the patch
/// shows them) meet lies in `d`.
pub fn is_rich(patch: &ApartmentPatch, d: &GeneratorSet) -> bool {
    let all: Vec<usize> = (0..patch.vertices.len()).collect();
    differences(patch, &all, 2).iter().all(|v| d.contains(v))
}

/// Builds the generator set of the requested level from the base alcove of
/// `patch` and verifies it against the whole patch.
pub fn build_generators(patch: &ApartmentPatch, level: Richness) -> Result<GeneratorSet> {
    let base = patch.alcoves[0].clone();
    let seeds: Vec<Vector> = match level {
        Richness::OrbitClosure => patch.system.roots.clone(),
        Richness::AlmostRich => differences(patch, &base, 1).into_iter().collect(),
        Richness::Rich => {
            for &u in &base {
                for v in patch.ball(u, 1) {
                    if !patch.star_complete(&[v]) {
                        return Err(Error::InsufficientRadius(format!(
                            "rich generators need the star of {} (radius {})",
                            patch.vertices[v], patch.radius
                        )));
                    }
                }
            }
            differences(patch, &base, 2).into_iter().collect()
        }
    };
    let vectors = patch.weyl.orbit_closure(&seeds);
    let set = GeneratorSet { w_invariant: patch.weyl.preserves(&vectors), vectors, level };
    let ok = match level {
        Richness::OrbitClosure => true,
        Richness::AlmostRich => is_almost_rich(patch, &set),
        Richness::Rich => is_rich(patch, &set),
    };
    if !set.w_invariant || !ok {
        return Err(Error::violation("build_generators", format!("{level} set fails its predicate on the patch")));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{generate_patch, FiniteType, TypeTag};
    use crate::scalar::frac;

    fn patch(t: FiniteType, r: usize) -> ApartmentPatch {
        generate_patch(TypeTag::affine(t), r).unwrap()
    }

    #[test]
    fn line_generators() {
        let p = patch(FiniteType::A1, 3);
        let ar = build_generators(&p, Richness::AlmostRich).unwrap();
        assert_eq!(ar.vectors, vec![Vector::from_ints(&[-1]), Vector::from_ints(&[1])]);
        let r = build_generators(&p, Richness::Rich).unwrap();
        let expect: Vec<Vector> = [-2, -1, 1, 2].iter().map(|&i| Vector::from_ints(&[i])).collect();
        assert_eq!(r.vectors, expect);
    }

    #[test]
    fn c2_almost_rich_is_orbit_of_alcove_edges() {
        let p = patch(FiniteType::C2, 2);
        let ar = build_generators(&p, Richness::AlmostRich).unwrap();
        let seeds = [
            Vector(vec![frac(1, 2), frac(0, 1)]),
            Vector(vec![frac(0, 1), frac(1, 2)]),
            Vector(vec![frac(1, 2), frac(1, 2)]),
        ];
        assert_eq!(ar.vectors, p.weyl.orbit_closure(&seeds));
        assert_eq!(ar.vectors.len(), 8);
    }

    #[test]
    fn rich_needs_radius() {
        let p = patch(FiniteType::A2, 1);
        assert!(matches!(build_generators(&p, Richness::Rich), Err(Error::InsufficientRadius(_))));
        let p = patch(FiniteType::A2, 5);
        let r = build_generators(&p, Richness::Rich).unwrap();
        assert!(is_almost_rich(&p, &r));
    }
}
