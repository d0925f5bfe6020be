use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A sorted list of vertex labels.
pub type Simplex = Vec<usize>;

/// A finite abstract simplicial complex on `usize` labels, stored as the set
/// of all its nonempty faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

fn normalized(s: impl IntoIterator<Item = usize>) -> Simplex {
    let mut v: Vec<usize> = s.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// All nonempty subsets of a sorted simplex.
pub fn faces_of(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    assert!(s.len() < 32, "simplex too large");
    (1u32..(1 << s.len())).map(move |m| (0..s.len()).filter(|i| m >> i & 1 == 1).map(|i| s[i]).collect())
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Closure under faces of the given simplices.
    pub fn from_maximal<I, S>(simplices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        let mut out = BTreeSet::new();
        for s in simplices {
            let s = normalized(s);
            if s.is_empty() || out.contains(&s) {
                continue;
            }
            out.extend(faces_of(&s));
        }
        SimplicialComplex { simplices: out }
    }

    pub fn simplex(vertices: &[usize]) -> Self {
        Self::from_maximal([vertices.iter().copied()])
    }

    /// Boundary of a simplex: all its proper nonempty faces.
    pub fn boundary_of(vertices: &[usize]) -> Self {
        let s = normalized(vertices.iter().copied());
        let mut k = Self::simplex(&s);
        k.simplices.remove(&s);
        k
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.simplices.iter().map(|s| s.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.simplices.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect()
    }

    /// Simplices of dimension `k`, in lexicographic order.
    pub fn of_dim(&self, k: usize) -> Vec<Simplex> {
        self.simplices.iter().filter(|s| s.len() == k + 1).cloned().collect()
    }

    /// Number of simplices of each dimension, starting at 0.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 1).max(0) as usize];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn maximal(&self) -> Vec<Simplex> {
        let mut cofaces: BTreeSet<&Simplex> = BTreeSet::new();
        for s in &self.simplices {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if let Some(x) = self.simplices.get(&f) {
                        cofaces.insert(x);
                    }
                }
            }
        }
        self.simplices.iter().filter(|s| !cofaces.contains(s)).cloned().collect()
    }

    /// Reduced Euler characteristic `-1 + f0 - f1 + ...`.
    pub fn reduced_euler(&self) -> i64 {
        -1 + self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum::<i64>()
    }

    /// Subcomplex of simplices all of whose vertices satisfy `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(usize) -> bool) -> Self {
        SimplicialComplex { simplices: self.simplices.iter().filter(|s| s.iter().all(|&v| keep(v))).cloned().collect() }
    }

    /// Simplices `t` disjoint from `s` with `s ∪ t` in the complex.
    pub fn link(&self, s: &[usize]) -> Self {
        let s = normalized(s.iter().copied());
        let simplices = self
            .simplices
            .iter()
            .filter(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v)))
            .map(|t| t.iter().copied().filter(|v| !s.contains(v)).collect())
            .collect();
        SimplicialComplex { simplices }
    }

    pub fn union(&self, other: &Self) -> Self {
        SimplicialComplex { simplices: self.simplices.union(&other.simplices).cloned().collect() }
    }

    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        SimplicialComplex { simplices: self.simplices.iter().map(|s| normalized(s.iter().map(|&v| f(v)))).collect() }
    }

    /// Join of two complexes whose vertex sets are disjoint.
    pub fn join(&self, other: &Self) -> Self {
        debug_assert!(self.vertices().iter().all(|v| !other.contains(&[*v])));
        let mut simplices = self.simplices.clone();
        simplices.extend(other.simplices.iter().cloned());
        for a in &self.simplices {
            for b in &other.simplices {
                simplices.insert(normalized(a.iter().chain(b).copied()));
            }
        }
        SimplicialComplex { simplices }
    }

    /// Join after shifting the labels of `other` past those of `self`.
    pub fn join_disjoint(&self, other: &Self) -> Self {
        let shift = self.vertices().last().map_or(0, |v| v + 1);
        self.join(&other.relabel(|v| v + shift))
    }

    /// True iff every set of pairwise adjacent vertices spans a simplex.
    pub fn is_flag(&self) -> bool {
        let mut adj: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        for e in self.simplices.iter().filter(|s| s.len() == 2) {
            adj.entry(e[0]).or_default().insert(e[1]);
            adj.entry(e[1]).or_default().insert(e[0]);
        }
        self.simplices.iter().all(|s| {
            let common = s.iter().skip(1).fold(adj.get(&s[0]).cloned().unwrap_or_default(), |acc, v| {
                adj.get(v).map_or(BTreeSet::new(), |n| acc.intersection(n).copied().collect())
            });
            common.into_iter().all(|w| self.contains(&normalized(s.iter().copied().chain([w]))))
        })
    }

    /// Barycentric subdivision. Vertex `i` of the result stands for
    /// `labels[i]`, a simplex of `self`.
    pub fn barycentric_subdivision(&self) -> (Self, Vec<Simplex>) {
        self.subdivide_along_levels(|_| 0u8)
    }

    /// Subdivides each simplex as the join of the barycentric subdivisions of
    /// its level classes: the parts on which `level` is constant. With a
    /// constant level this is the barycentric subdivision. Vertex `i` of the
    /// result stands for `labels[i]`, a level-pure simplex of `self`.
    pub fn subdivide_along_levels<L: Ord + Clone>(&self, level: impl Fn(usize) -> L) -> (Self, Vec<Simplex>) {
        let mut labels: Vec<Simplex> = Vec::new();
        let mut index: HashMap<Simplex, usize> = HashMap::new();
        let mut id = |s: &Simplex| {
            *index.entry(s.clone()).or_insert_with(|| {
                labels.push(s.clone());
                labels.len() - 1
            })
        };
        let mut out: BTreeSet<Simplex> = BTreeSet::new();
        for m in self.maximal() {
            let mut classes: BTreeMap<L, Vec<usize>> = BTreeMap::new();
            for &v in &m {
                classes.entry(level(v)).or_default().push(v);
            }
            // maximal simplices: one full flag per class
            let mut partial: Vec<Vec<usize>> = vec![Vec::new()];
            for class in classes.values() {
                let flags = full_flags(class);
                let mut next = Vec::new();
                for p in &partial {
                    for f in &flags {
                        let mut q = p.clone();
                        q.extend(f.iter().map(&mut id));
                        next.push(q);
                    }
                }
                partial = next;
            }
            for p in partial {
                let p = normalized(p);
                if !out.contains(&p) {
                    out.extend(faces_of(&p));
                }
            }
        }
        (SimplicialComplex { simplices: out }, labels)
    }
}

/// All chains `{v0} < {v0,v1} < ... < class` as lists of simplices.
fn full_flags(class: &[usize]) -> Vec<Vec<Simplex>> {
    if class.len() == 1 {
        return vec![vec![class.to_vec()]];
    }
    let mut out = Vec::new();
    for i in 0..class.len() {
        let rest: Vec<usize> = class.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        for mut flag in full_flags(&rest) {
            flag.push(normalized(class.iter().copied()));
            out.push(flag);
        }
    }
    out
}

impl FromIterator<Simplex> for SimplicialComplex {
    fn from_iter<T: IntoIterator<Item = Simplex>>(iter: T) -> Self {
        Self::from_maximal(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_counts() {
        let k = SimplicialComplex::from_maximal([vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(k.f_vector(), vec![4, 4, 1]);
        assert_eq!(k.maximal(), vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(k.reduced_euler(), -1 + 4 - 4 + 1);
        assert_eq!(SimplicialComplex::empty().dim(), -1);
    }

    #[test]
    fn link_and_join() {
        let k = SimplicialComplex::from_maximal([vec![0, 1, 2], vec![0, 2, 3]]);
        assert_eq!(k.link(&[0]).maximal(), vec![vec![1, 2], vec![2, 3]]);
        assert_eq!(k.link(&[0, 2]).vertices(), vec![1, 3]);
        let s0 = SimplicialComplex::from_maximal([vec![0], vec![1]]);
        let sq = s0.join_disjoint(&s0);
        assert_eq!(sq.f_vector(), vec![4, 4]);
    }

    #[test]
    fn barycentric_subdivision_of_triangle() {
        let (sd, labels) = SimplicialComplex::simplex(&[0, 1, 2]).barycentric_subdivision();
        assert_eq!(labels.len(), 7);
        assert_eq!(sd.f_vector(), vec![7, 12, 6]);
        assert!(sd.is_flag());
    }

    #[test]
    fn level_subdivision_joins_classes() {
        // levels {0,1} | {2}: subdivide the edge 01, then cone with 2
        let (sd, labels) = SimplicialComplex::simplex(&[0, 1, 2]).subdivide_along_levels(|v| v == 2);
        assert_eq!(labels.len(), 4);
        assert_eq!(sd.f_vector(), vec![4, 5, 2]);
        let (same, _) = SimplicialComplex::simplex(&[0, 1, 2]).subdivide_along_levels(|v| v);
        assert_eq!(same.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn flag_detection() {
        assert!(!SimplicialComplex::boundary_of(&[0, 1, 2]).is_flag());
        assert!(SimplicialComplex::simplex(&[0, 1, 2]).is_flag());
    }
}
