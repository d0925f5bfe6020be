use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::polytope::Zonotope;
use crate::error::{Error, Result};
use crate::scalar::{solve, Scalar, Vector};

/// Minimum-norm point of a convex set given by a linear minimization oracle,
/// by Wolfe's corral algorithm. Finite and exact over the rationals.
///
/// `oracle(c)` returns `(q, tag)` with `q` minimizing `<c, ·>` over the set.
/// Returns the point together with the corral: the points and tags of an
/// affinely independent set whose convex hull contains it, with weights.
pub fn min_norm_point<T: Clone>(
    start: (Vector, T),
    mut oracle: impl FnMut(&Vector) -> (Vector, T),
) -> Result<(Vector, Vec<(Vector, T, Scalar)>)> {
    let mut corral: Vec<(Vector, T, Scalar)> = vec![(start.0.clone(), start.1, Scalar::one())];
    let mut x = start.0;
    for _ in 0..10_000 {
        let (q, tag) = oracle(&x);
        if x.norm2() <= x.dot(&q) || corral.iter().any(|(p, _, _)| *p == q) {
            return Ok((x, corral));
        }
        corral.push((q, tag, Scalar::zero()));
        loop {
            let alpha = affine_min(&corral.iter().map(|(p, _, _)| p.clone()).collect::<Vec<_>>())
                .ok_or_else(|| Error::violation("min-norm point", "corral became affinely dependent"))?;
            if alpha.iter().all(Signed::is_positive) {
                for (c, a) in corral.iter_mut().zip(alpha) {
                    c.2 = a;
                }
                break;
            }
            // move toward the affine minimizer until a weight hits zero
            let mut theta: Option<Scalar> = None;
            for ((_, _, l), a) in corral.iter().zip(&alpha) {
                if !a.is_positive() {
                    let t = l / (l - a);
                    if theta.as_ref().map_or(true, |th| &t < th) {
                        theta = Some(t);
                    }
                }
            }
            let theta = theta.expect("some weight is not positive");
            for (c, a) in corral.iter_mut().zip(&alpha) {
                c.2 = (Scalar::one() - &theta) * &c.2 + &theta * a;
            }
            corral.retain(|(_, _, l)| l.is_positive());
        }
        x = Vector::zeros(x.dim());
        for (p, _, l) in &corral {
            x.add_scaled(l, p);
        }
    }
    Err(Error::violation("min-norm point", "iteration limit reached"))
}

/// Affine combination weights of the minimum-norm point of `aff(points)`.
fn affine_min(points: &[Vector]) -> Option<Vec<Scalar>> {
    let k = points.len();
    let mut a: Vec<Vec<Scalar>> = points
        .iter()
        .map(|p| {
            let mut row: Vec<Scalar> = points.iter().map(|q| p.dot(q)).collect();
            row.push(Scalar::one());
            row
        })
        .collect();
    let mut last = vec![Scalar::one(); k];
    last.push(Scalar::zero());
    a.push(last);
    let mut b = vec![Scalar::zero(); k];
    b.push(Scalar::one());
    let sol = solve(&a, &b)?;
    Some(sol[..k].to_vec())
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplexMin {
    #[serde(serialize_with = "crate::scalar::serialize_scalar")]
    pub min: Scalar,
    /// A closest point of the simplex.
    pub point: Vector,
    /// Indices of simplex vertices carrying `point`.
    pub carrier: Vec<usize>,
    /// Indices of simplex vertices that attain the minimum.
    pub vertex_minimizers: Vec<usize>,
}

/// Exact minimum of `d(Z, ·)^2` over the convex hull of `simplex`: the
/// minimum-norm point of the Minkowski difference `simplex - Z`.
pub fn min_on_simplex(z: &Zonotope, simplex: &[Vector]) -> Result<SimplexMin> {
    if simplex.is_empty() {
        return Err(Error::Precondition("empty simplex".into()));
    }
    let oracle = |c: &Vector| {
        let i = (0..simplex.len()).min_by(|&a, &b| c.dot(&simplex[a]).cmp(&c.dot(&simplex[b]))).unwrap();
        let zc = z.argmax(c);
        (&simplex[i] - &zc, i)
    };
    let (x0, _) = z.project(&simplex[0]);
    let (x, corral) = min_norm_point((&simplex[0] - &x0, 0), oracle)?;
    let min = x.norm2();
    let total: Scalar = corral.iter().map(|(_, _, l)| l.clone()).sum();
    let mut point = Vector::zeros(simplex[0].dim());
    let mut carrier = Vec::new();
    for (_, i, l) in &corral {
        point.add_scaled(&(l / &total), &simplex[*i]);
        carrier.push(*i);
    }
    carrier.sort_unstable();
    carrier.dedup();
    let vertex_minimizers = (0..simplex.len()).filter(|&i| z.dist2(&simplex[i]) == min).collect();
    Ok(SimplexMin { min, point, carrier, vertex_minimizers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn line(gens: &[i64]) -> Zonotope {
        Zonotope::new(&gens.iter().map(|&g| Vector::from_ints(&[g])).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn line_examples() {
        let z = line(&[1, -1]);
        let m = min_on_simplex(&z, &[Vector::from_ints(&[1]), Vector::from_ints(&[2])]).unwrap();
        assert_eq!(m.min, int(0));
        assert_eq!(m.vertex_minimizers, vec![0]);
        let m = min_on_simplex(&z, &[Vector::from_ints(&[2]), Vector::from_ints(&[3])]).unwrap();
        assert_eq!(m.min, int(1));
        assert_eq!(m.vertex_minimizers, vec![0]);
    }

    #[test]
    fn interior_minimum_of_a_segment() {
        // segment from (-1,2) to (1,2) over the unit-ish square [-1,1]^2 + 0
        let z = Zonotope::new(&[Vector::from_ints(&[2, 0]), Vector::from_ints(&[0, 1])]).unwrap();
        let m = min_on_simplex(&z, &[Vector::from_ints(&[-1, 3]), Vector::from_ints(&[5, 3])]).unwrap();
        assert_eq!(m.min, int(4));
        let m = min_on_simplex(&z, &[Vector::from_ints(&[-3, 4]), Vector::from_ints(&[7, -6])]).unwrap();
        assert_eq!(m.min, int(0));
        // a line crossing near a corner: closest point is interior to the edge
        let m = min_on_simplex(&z, &[Vector::from_ints(&[0, 4]), Vector::from_ints(&[4, 0])]).unwrap();
        assert_eq!(m.min, frac(1, 2));
        assert!(m.vertex_minimizers.is_empty());
        assert_eq!(m.carrier, vec![0, 1]);
    }
}
