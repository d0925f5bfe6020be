//! Finite root systems in integral realizations and their Weyl groups.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{int, Matrix, Scalar, Subspace, Vector};

/// Irreducible finite crystallographic types supported by the toolkit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FiniteType {
    A1,
    A2,
    B2,
    C2,
    G2,
    A3,
    B3,
    C3,
}

impl FiniteType {
    pub fn rank(self) -> usize {
        match self {
            FiniteType::A1 => 1,
            FiniteType::A2 | FiniteType::B2 | FiniteType::C2 | FiniteType::G2 => 2,
            FiniteType::A3 | FiniteType::B3 | FiniteType::C3 => 3,
        }
    }

    /// Classical order of the Weyl group.
    pub fn weyl_order(self) -> usize {
        match self {
            FiniteType::A1 => 2,
            FiniteType::A2 => 6,
            FiniteType::B2 | FiniteType::C2 => 8,
            FiniteType::G2 => 12,
            FiniteType::A3 => 24,
            FiniteType::B3 | FiniteType::C3 => 48,
        }
    }

    pub fn root_count(self) -> usize {
        match self {
            FiniteType::A1 => 2,
            FiniteType::A2 => 6,
            FiniteType::B2 | FiniteType::C2 => 8,
            FiniteType::G2 => 12,
            FiniteType::A3 => 12,
            FiniteType::B3 | FiniteType::C3 => 18,
        }
    }

    /// Dimension of the coordinate space of the standard realization.
    pub fn ambient(self) -> usize {
        match self {
            FiniteType::A1 => 1,
            FiniteType::A2 | FiniteType::G2 => 3,
            FiniteType::B2 | FiniteType::C2 => 2,
            FiniteType::A3 => 4,
            FiniteType::B3 | FiniteType::C3 => 3,
        }
    }

    /// Simple roots of the standard integral realization. A-types and G2
    /// live in the zero-sum hyperplane.
    pub fn simple_roots(self) -> Vec<Vector> {
        let v = Vector::from_ints;
        match self {
            FiniteType::A1 => vec![v(&[1])],
            FiniteType::A2 => vec![v(&[1, -1, 0]), v(&[0, 1, -1])],
            FiniteType::B2 => vec![v(&[1, -1]), v(&[0, 1])],
            FiniteType::C2 => vec![v(&[1, -1]), v(&[0, 2])],
            FiniteType::G2 => vec![v(&[1, -1, 0]), v(&[-2, 1, 1])],
            FiniteType::A3 => vec![v(&[1, -1, 0, 0]), v(&[0, 1, -1, 0]), v(&[0, 0, 1, -1])],
            FiniteType::B3 => vec![v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[0, 0, 1])],
            FiniteType::C3 => vec![v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[0, 0, 2])],
        }
    }

    /// Identifies an irreducible root system from its rank, size and root
    /// lengths.
    pub fn identify(roots: &[Vector]) -> Result<FiniteType> {
        let rank = crate::scalar::rank(roots);
        let n = roots.len();
        let short = {
            let min = roots.iter().map(Vector::norm2).min();
            roots.iter().filter(|r| Some(r.norm2()) == min).count()
        };
        Ok(match (rank, n) {
            (1, 2) => FiniteType::A1,
            (2, 6) => FiniteType::A2,
            (2, 8) => FiniteType::B2,
            (2, 12) => FiniteType::G2,
            (3, 12) => FiniteType::A3,
            (3, 18) if short == 6 => FiniteType::B3,
            (3, 18) => FiniteType::C3,
            _ => return Err(Error::UnsupportedType(format!("root system of rank {rank} with {n} roots"))),
        })
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A finite type, optionally affine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TypeTag {
    pub finite: FiniteType,
    pub affine: bool,
}

impl TypeTag {
    pub fn finite(t: FiniteType) -> Self {
        TypeTag { finite: t, affine: false }
    }

    pub fn affine(t: FiniteType) -> Self {
        TypeTag { finite: t, affine: true }
    }
}

impl FromStr for TypeTag {
    type Err = Error;

    /// Accepts `A2`, `~A2`, `A2~`, `Ã2`, `C̃2`, `affine-C2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut affine = false;
        let mut core = String::new();
        let body = s.trim();
        let body = match body.strip_prefix("affine-") {
            Some(rest) => {
                affine = true;
                rest
            }
            None => body,
        };
        for ch in body.chars() {
            match ch {
                '~' | '\u{303}' => affine = true,
                'Ã' => {
                    affine = true;
                    core.push('A');
                }
                c => core.push(c.to_ascii_uppercase()),
            }
        }
        let finite = match core.as_str() {
            "A1" => FiniteType::A1,
            "A2" => FiniteType::A2,
            "B2" => FiniteType::B2,
            "C2" => FiniteType::C2,
            "G2" => FiniteType::G2,
            "A3" => FiniteType::A3,
            "B3" => FiniteType::B3,
            "C3" => FiniteType::C3,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        Ok(TypeTag { finite, affine })
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.affine {
            write!(f, "~{}", self.finite)
        } else {
            write!(f, "{}", self.finite)
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub finite: FiniteType,
    pub ambient: usize,
    pub simple: Vec<Vector>,
    pub roots: Vec<Vector>,
    pub positive: Vec<Vector>,
    pub highest: Vector,
    /// The span of the roots; all geometry happens inside it.
    pub space: Subspace,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// Coordinates of `v` in the basis of simple roots.
    pub fn simple_coordinates(&self, v: &Vector) -> Vec<Scalar> {
        let gram: Vec<Vec<Scalar>> = self
            .simple
            .iter()
            .map(|a| self.simple.iter().map(|b| a.dot(b)).collect())
            .collect();
        let rhs: Vec<Scalar> = self.simple.iter().map(|a| a.dot(v)).collect();
        crate::scalar::solve(&gram, &rhs).expect("simple roots are independent")
    }

    /// Directions of the fundamental chamber's extreme rays: `rays[i]` is
    /// orthogonal to every simple root except the i-th and pairs positively
    /// with it.
    pub fn fundamental_rays(&self) -> Vec<Vector> {
        (0..self.rank())
            .map(|i| {
                let others: Vec<Vector> =
                    (0..self.rank()).filter(|&j| j != i).map(|j| self.simple[j].clone()).collect();
                let n = self.space.normal_to(&others).expect("simple roots span the space");
                if n.dot(&self.simple[i]).is_negative() {
                    -&n
                } else {
                    n
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<Matrix>,
    pub generators: Vec<Matrix>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Closure of the given generators under composition.
    pub fn generate(generators: Vec<Matrix>, dim: usize) -> Self {
        let id = Matrix::identity(dim);
        let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(m) = queue.pop_front() {
            for g in &generators {
                let p = g.mul(&m);
                if seen.insert(p.clone()) {
                    elements.push(p.clone());
                    queue.push_back(p);
                }
            }
        }
        WeylGroup { elements, generators }
    }

    /// W-orbit closure of a set of vectors, deduplicated, in a stable order.
    pub fn orbit_closure(&self, seeds: &[Vector]) -> Vec<Vector> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for s in seeds {
            for w in &self.elements {
                let v = w.apply(s);
                if seen.insert(v.clone()) {
                    out.push(v);
                }
            }
        }
        out.sort();
        out
    }

    /// True iff every element maps the finite set onto itself.
    pub fn preserves(&self, set: &[Vector]) -> bool {
        let s: HashSet<&Vector> = set.iter().collect();
        self.elements.iter().all(|w| set.iter().all(|v| s.contains(&w.apply(v))))
    }
}

/// Builds the finite root system of the tag's finite part together with its
/// Weyl group, verifying the classical counts.
pub fn build_system(tag: TypeTag) -> Result<(RootSystem, WeylGroup)> {
    let t = tag.finite;
    let ambient = t.ambient();
    let simple = t.simple_roots();
    let generators: Vec<Matrix> = simple.iter().map(Matrix::reflection).collect();
    let weyl = WeylGroup::generate(generators, ambient);
    let roots = weyl.orbit_closure(&simple);
    if weyl.order() != t.weyl_order() || roots.len() != t.root_count() {
        return Err(Error::violation(
            "build_system",
            format!("{t}: |W| = {}, |roots| = {}", weyl.order(), roots.len()),
        ));
    }
    let space = Subspace::span(ambient, &simple);
    let mut sys = RootSystem {
        finite: t,
        ambient,
        simple,
        roots: roots.clone(),
        positive: Vec::new(),
        highest: Vector::zeros(ambient),
        space,
    };
    let mut best: Option<(Scalar, Vector)> = None;
    for r in &roots {
        let c = sys.simple_coordinates(r);
        if c.iter().all(|x| !x.is_negative()) {
            sys.positive.push(r.clone());
            let h: Scalar = c.iter().sum();
            if best.as_ref().map_or(true, |(bh, _)| h > *bh) {
                best = Some((h, r.clone()));
            }
        }
    }
    sys.highest = best.expect("positive roots exist").1;
    Ok((sys, weyl))
}

/// Reflection of `v` across the affine hyperplane `{x : <normal, x> = offset}`.
pub fn reflect_affine(normal: &Vector, offset: &Scalar, v: &Vector) -> Vector {
    let c = int(2) * (normal.dot(v) - offset) / normal.norm2();
    let mut out = v.clone();
    out.add_scaled(&-c, normal);
    out
}

/// Connected components of the non-orthogonality graph on `roots`; each
/// component is an irreducible subsystem.
pub fn irreducible_components(roots: &[Vector]) -> Vec<Vec<usize>> {
    let n = roots.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for b in 0..n {
                if comp[b] == usize::MAX && !roots[a].dot(&roots[b]).is_zero() {
                    comp[b] = id;
                    members.push(b);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}
