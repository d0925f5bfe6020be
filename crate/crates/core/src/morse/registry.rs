use std::collections::HashMap;

use num_traits::Zero;

use super::height::{classify_horizontal, split_link_by, HeightTable, LinkSplit};
use crate::coxeter::Simplex;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Vector};

/// Nonempty faces of a sorted simplex (including itself), as sorted lists.
pub fn nonempty_faces(s: &[usize]) -> Vec<Simplex> {
    (1u32..(1 << s.len()))
        .map(|m| (0..s.len()).filter(|i| m >> i & 1 == 1).map(|i| s[i]).collect())
        .collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// All horizontal simplices of a patch with their gradients, minimal faces,
/// moves and depths.
#[derive(Clone, Debug)]
pub struct HorizontalRegistry {
    pub simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    pub h2: Vec<Scalar>,
    /// Gradient at the barycenter; `None` at height zero.
    pub gradient: Vec<Option<Vector>>,
    /// Every vertex has its full star in the patch, so all links of faces
    /// are available.
    pub eligible: Vec<bool>,
    /// Registry id of `σ_min`, for eligible simplices of positive height.
    pub sigma_min: Vec<Option<usize>>,
    /// Targets of moves.
    pub moves: Vec<Vec<usize>>,
    pub dp: Vec<usize>,
    /// No move sequence from here reaches a simplex whose moves are not
    /// fully known inside the patch.
    pub reliable: Vec<bool>,
    /// Registry ids of the horizontal cofaces (excluding itself).
    pub cofaces: Vec<Vec<usize>>,
}

impl HorizontalRegistry {
    pub fn id(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn sigma_min_of(&self, s: &[usize]) -> Option<&Simplex> {
        self.id(s).and_then(|i| self.sigma_min[i]).map(|j| &self.simplices[j])
    }

    pub fn max_dp(&self) -> usize {
        self.dp.iter().copied().max().unwrap_or(0)
    }

    pub fn positive(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| !self.h2[i].is_zero())
    }
}

/// Registers the horizontal simplices and checks that gradients are
/// constant along them and orthogonal to them.
fn register(table: &HeightTable) -> Result<HorizontalRegistry> {
    let patch = &table.patch;
    let mut simplices = Vec::new();
    for s in &patch.simplices {
        if table.constant_height(s).is_some() && classify_horizontal(table, s)?.horizontal {
            simplices.push(s.clone());
        }
    }
    let index: HashMap<Simplex, usize> = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut h2 = Vec::with_capacity(simplices.len());
    let mut gradient = Vec::with_capacity(simplices.len());
    for s in &simplices {
        let h = table.h2[s[0]].clone();
        let g = if h.is_zero() {
            None
        } else {
            let b = patch.barycenter(s);
            let g = &b - &table.zonotope.project(&b).0;
            for &v in s {
                if table.vertex_gradient(v).as_ref() != Some(&g) || !g.dot(&(&patch.vertices[v] - &b)).is_zero() {
                    return Err(Error::violation("flow_on_horizontal", format!("gradient not constant and orthogonal on {:?}", patch.coords(s))));
                }
            }
            Some(g)
        };
        h2.push(h);
        gradient.push(g);
    }
    let eligible = simplices.iter().map(|s| s.iter().all(|&v| patch.star_complete(&[v]))).collect();
    let mut cofaces = vec![Vec::new(); simplices.len()];
    for (i, s) in simplices.iter().enumerate() {
        for f in nonempty_faces(s) {
            if f.len() < s.len() {
                cofaces[index[&f]].push(i);
            }
        }
    }
    let n = simplices.len();
    Ok(HorizontalRegistry {
        simplices,
        index,
        h2,
        gradient,
        eligible,
        sigma_min: vec![None; n],
        moves: vec![Vec::new(); n],
        dp: vec![0; n],
        reliable: vec![false; n],
        cofaces,
    })
}

/// Finds the unique face `τ0` with `σ∖τ ∈ Lk_hor(τ) ⟺ τ0 ≤ τ` for every
/// nonempty proper face `τ`.
fn find_sigma_min(reg: &HorizontalRegistry, splits: &HashMap<usize, LinkSplit>, s: &[usize]) -> Result<Simplex> {
    let faces = nonempty_faces(s);
    let proper: Vec<&Simplex> = faces.iter().filter(|f| f.len() < s.len()).collect();
    let pred: Vec<bool> = proper
        .iter()
        .map(|t| {
            let split = &splits[&reg.index[*t]];
            s.iter().filter(|v| t.binary_search(v).is_err()).all(|&v| split.in_horizontal_part(v))
        })
        .collect();
    let candidates: Vec<&Simplex> = faces
        .iter()
        .filter(|t0| proper.iter().zip(&pred).all(|(t, &p)| p == is_subset(t0, t)))
        .collect();
    match candidates.as_slice() {
        [one] => Ok((*one).clone()),
        _ => Err(Error::violation(
            "sigma_min",
            format!("{} candidate minimal faces for {s:?} (predicate {pred:?} on {proper:?})", candidates.len()),
        )),
    }
}

/// Computes σ_min for every eligible simplex of positive height, then the
/// move graph, depths and reliability.
pub fn build_registry(table: &HeightTable) -> Result<HorizontalRegistry> {
    let mut reg = register(table)?;
    let n = reg.len();
    let mut splits: HashMap<usize, LinkSplit> = HashMap::new();
    for i in 0..n {
        if reg.eligible[i] {
            if let Some(g) = &reg.gradient[i] {
                splits.insert(i, split_link_by(&table.patch, &reg.simplices[i], g)?);
            }
        }
    }
    for i in 0..n {
        if reg.eligible[i] && reg.gradient[i].is_some() {
            let m = find_sigma_min(&reg, &splits, &reg.simplices[i])?;
            reg.sigma_min[i] = Some(reg.index[&m]);
        }
    }
    // wedging: σ_min ≤ τ ≤ σ implies τ_min = σ_min
    for i in 0..n {
        let Some(m) = reg.sigma_min[i] else { continue };
        for t in nonempty_faces(&reg.simplices[i]) {
            if is_subset(&reg.simplices[m], &t) {
                let ti = reg.index[&t];
                if reg.sigma_min[ti] != Some(m) {
                    return Err(Error::violation("wedging", format!("{:?} lies between {:?} and {:?}", t, reg.simplices[m], reg.simplices[i])));
                }
            }
        }
    }
    for i in 0..n {
        let Some(m) = reg.sigma_min[i] else { continue };
        if m != i {
            reg.moves[m].push(i);
        }
        for t in nonempty_faces(&reg.simplices[i]) {
            if t.len() < reg.simplices[i].len() && !is_subset(&reg.simplices[m], &t) {
                reg.moves[i].push(reg.index[&t]);
            }
        }
    }
    for m in &mut reg.moves {
        m.sort_unstable();
        m.dedup();
    }
    longest_paths(&mut reg)?;
    Ok(reg)
}

/// Longest move sequences by memoized depth-first search; a cycle is a
/// violation. Also propagates reliability backwards along moves.
fn longest_paths(reg: &mut HorizontalRegistry) -> Result<()> {
    let n = reg.len();
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let local_ok: Vec<bool> = (0..n)
        .map(|i| reg.h2[i].is_zero() || (reg.eligible[i] && reg.cofaces[i].iter().all(|&c| reg.eligible[c])))
        .collect();
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some((v, k)) = stack.pop() {
            if k < reg.moves[v].len() {
                stack.push((v, k + 1));
                let w = reg.moves[v][k];
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        return Err(Error::violation("moves_acyclic", format!("cycle through {:?}", reg.simplices[w])));
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                reg.dp[v] = reg.moves[v].iter().map(|&w| reg.dp[w] + 1).max().unwrap_or(0);
                reg.reliable[v] = local_ok[v] && reg.moves[v].iter().all(|&w| reg.reliable[w]);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{generate_patch, FiniteType, TypeTag};
    use crate::zonotope::{build_generators, Richness};

    fn table(t: FiniteType, r: usize, gen_r: usize, level: Richness) -> HeightTable {
        let gp = generate_patch(TypeTag::affine(t), gen_r).unwrap();
        let g = build_generators(&gp, level).unwrap();
        HeightTable::new(generate_patch(TypeTag::affine(t), r).unwrap(), &g).unwrap()
    }

    #[test]
    fn faces_enumerated() {
        assert_eq!(nonempty_faces(&[2, 5]), vec![vec![2], vec![5], vec![2, 5]]);
        assert_eq!(nonempty_faces(&[1, 2, 3]).len(), 7);
    }

    #[test]
    fn line_registry() {
        let t = table(FiniteType::A1, 8, 3, Richness::AlmostRich);
        let reg = build_registry(&t).unwrap();
        let v = |x: i64| t.patch.vertex_id(&Vector::from_ints(&[x])).unwrap();
        // horizontal: all vertices, and the edges inside [-1, 1]
        assert_eq!(reg.len(), t.patch.vertices.len() + 2);
        assert!(reg.id(&{
            let mut e = vec![v(0), v(1)];
            e.sort_unstable();
            e
        })
        .is_some());
        let i = reg.id(&[v(3)]).unwrap();
        assert_eq!(reg.sigma_min[i], Some(i));
        assert_eq!(reg.dp[i], 0);
        assert!(reg.reliable[i]);
        assert!(reg.moves.iter().all(Vec::is_empty));
    }

    #[test]
    fn a2_registry_is_consistent() {
        let t = table(FiniteType::A2, 8, 3, Richness::AlmostRich);
        let reg = build_registry(&t).unwrap();
        for i in 0..reg.len() {
            let s = &reg.simplices[i];
            for &w in &reg.moves[i] {
                let o = &reg.simplices[w];
                assert!(is_subset(o, s) || is_subset(s, o));
            }
            if s.len() == 1 && reg.sigma_min[i].is_some() {
                assert_eq!(reg.sigma_min[i], Some(i));
            }
        }
        assert!(reg.positive().any(|i| reg.eligible[i]));
    }
}
