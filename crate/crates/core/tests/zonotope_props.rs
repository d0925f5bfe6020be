use num_traits::{Signed, Zero};
use proptest::prelude::*;
use zonomorse::scalar::{frac, int, rank, Scalar, Vector};
use zonomorse::zonotope::{face_and_cone, min_on_simplex, segment_through, Zonotope};

fn vec_of(dim: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(lo..=hi, dim).prop_map(|xs| Vector::from_ints(&xs))
}

fn half_point(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-16i64..=16, dim).prop_map(|xs| Vector(xs.into_iter().map(|x| frac(x, 2)).collect()))
}

fn gens(dim: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(vec_of(dim, -3, 3), 1..=5).prop_map(|vs| vs.into_iter().filter(|v| !v.is_zero()).collect())
}

fn full_dim(dim: usize) -> impl Strategy<Value = Zonotope> {
    gens(dim).prop_filter("full rank", move |g| rank(g) == dim).prop_map(move |g| Zonotope::new_in(dim, &g).unwrap())
}

/// `p` is the projection of `x` iff `<x - p, v - p> <= 0` for every vertex `v`.
fn variational(z: &Zonotope, x: &Vector, p: &Vector) -> bool {
    let n = x - p;
    z.vertices.iter().all(|v| !n.dot(&(v - p)).is_positive())
}

fn cross(o: &Vector, a: &Vector, b: &Vector) -> Scalar {
    (&a.0[0] - &o.0[0]) * (&b.0[1] - &o.0[1]) - (&a.0[1] - &o.0[1]) * (&b.0[0] - &o.0[0])
}

/// Counterclockwise convex hull (monotone chain).
fn hull(points: &[Vector]) -> Vec<Vector> {
    let mut ps = points.to_vec();
    ps.sort();
    ps.dedup();
    if ps.len() < 2 {
        return ps;
    }
    let mut lower: Vec<Vector> = Vec::new();
    for p in &ps {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vector> = Vec::new();
    for p in ps.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn inside(poly: &[Vector], x: &Vector) -> bool {
    (0..poly.len()).all(|i| !cross(&poly[i], &poly[(i + 1) % poly.len()], x).is_negative())
}

fn point_seg(x: &Vector, a: &Vector, b: &Vector) -> Scalar {
    let d = b - a;
    let len = d.norm2();
    if len.is_zero() {
        return x.dist2(a);
    }
    let mut t = (x - a).dot(&d) / len;
    if t.is_negative() {
        t = Scalar::zero();
    } else if t > int(1) {
        t = int(1);
    }
    let mut q = a.clone();
    q.add_scaled(&t, &d);
    x.dist2(&q)
}

fn seg_seg(a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> Scalar {
    let s = |v: Scalar| v.signum();
    let crosses = s(cross(a, b, c)) * s(cross(a, b, d)) == -int(1) && s(cross(c, d, a)) * s(cross(c, d, b)) == -int(1);
    if crosses {
        return Scalar::zero();
    }
    [point_seg(a, c, d), point_seg(b, c, d), point_seg(c, a, b), point_seg(d, a, b)].into_iter().min().unwrap()
}

fn edges(poly: &[Vector]) -> Vec<(Vector, Vector)> {
    (0..poly.len()).map(|i| (poly[i].clone(), poly[(i + 1) % poly.len()].clone())).collect()
}

/// Squared distance between a planar polygon and the hull of a few points,
/// by enumerating vertex/edge and edge/edge pairs.
fn planar_gap(poly: &[Vector], pts: &[Vector]) -> Scalar {
    let other = hull(pts);
    if pts.iter().any(|p| inside(poly, p)) || (other.len() >= 3 && poly.iter().any(|v| inside(&other, v))) {
        return Scalar::zero();
    }
    let mut se = edges(&other);
    if other.len() == 1 {
        se = vec![(other[0].clone(), other[0].clone())];
    } else if other.len() == 2 {
        se.truncate(1);
    }
    let mut best: Option<Scalar> = None;
    for (a, b) in &se {
        for (c, d) in edges(poly) {
            let g = seg_seg(a, b, &c, &d);
            if best.as_ref().map_or(true, |m| g < *m) {
                best = Some(g);
            }
        }
    }
    best.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn projection_is_certified_and_idempotent(g in gens(3), x in half_point(3)) {
        prop_assume!(!g.is_empty());
        let z = Zonotope::new_in(3, &g).unwrap();
        let (p, d2) = z.project(&x);
        prop_assert!(z.contains(&p));
        prop_assert!(variational(&z, &x, &p));
        prop_assert!(z.certifies(&x, &p));
        prop_assert_eq!(d2, x.dist2(&p));
        let (pp, e) = z.project(&p);
        prop_assert_eq!(pp, p);
        prop_assert!(e.is_zero());
    }

    #[test]
    fn projection_is_one_lipschitz(g in gens(3), x in half_point(3), y in half_point(3)) {
        prop_assume!(!g.is_empty());
        let z = Zonotope::new_in(3, &g).unwrap();
        let (px, _) = z.project(&x);
        let (py, _) = z.project(&y);
        prop_assert!(px.dist2(&py) <= x.dist2(&y));
    }

    #[test]
    fn planar_distance_matches_polygon(z in full_dim(2), x in half_point(2)) {
        let poly = hull(&z.vertices);
        prop_assert_eq!(poly.len(), z.vertices.len());
        let oracle = if inside(&poly, &x) {
            Scalar::zero()
        } else {
            edges(&poly).iter().map(|(a, b)| point_seg(&x, a, b)).min().unwrap()
        };
        prop_assert_eq!(z.dist2(&x), oracle);
    }

    #[test]
    fn face_is_argmax_over_vertices(g in gens(3), c in vec_of(3, -4, 4)) {
        prop_assume!(!g.is_empty() && !c.is_zero());
        let z = Zonotope::new_in(3, &g).unwrap();
        let (face, cone) = face_and_cone(&z, &c).unwrap();
        let top = z.support(&c);
        let mut brute: Vec<Vector> = z.vertices.iter().filter(|v| c.dot(v) == top).cloned().collect();
        let mut got = face.vertices().unwrap();
        brute.sort();
        got.sort();
        got.dedup();
        prop_assert_eq!(got, brute);
        prop_assert!(cone.contains(&c));
    }

    #[test]
    fn every_vertex_admits_every_generator_segment(g in gens(3)) {
        prop_assume!(!g.is_empty());
        let z = Zonotope::new_in(3, &g).unwrap();
        for p in &z.vertices {
            for v in &z.generators {
                let t = segment_through(&z, p, v).unwrap();
                prop_assert!(t.is_some(), "vertex {} generator {}", p, v);
                let t = t.unwrap();
                let mut lo = p.clone();
                lo.add_scaled(&-t.clone(), v);
                let mut hi = p.clone();
                hi.add_scaled(&(int(1) - t), v);
                prop_assert!(z.contains(&lo) && z.contains(&hi));
            }
        }
    }

    #[test]
    fn simplex_minimum_matches_pair_enumeration(z in full_dim(2), pts in prop::collection::vec(half_point(2), 1..=3)) {
        let poly = hull(&z.vertices);
        let m = min_on_simplex(&z, &pts).unwrap();
        prop_assert_eq!(m.min.clone(), planar_gap(&poly, &pts));
        for &i in &m.vertex_minimizers {
            prop_assert_eq!(z.dist2(&pts[i]), m.min.clone());
        }
    }

    #[test]
    fn simplex_minimum_satisfies_both_sided_optimality(g in gens(3), pts in prop::collection::vec(half_point(3), 1..=4)) {
        prop_assume!(!g.is_empty());
        let z = Zonotope::new_in(3, &g).unwrap();
        let m = min_on_simplex(&z, &pts).unwrap();
        let (p, d2) = z.project(&m.point);
        prop_assert_eq!(d2, m.min.clone());
        // the point of the simplex is also nearest to p among simplex points
        let back = &p - &m.point;
        prop_assert!(pts.iter().all(|w| !back.dot(&(w - &m.point)).is_positive()));
        prop_assert!(variational(&z, &m.point, &p));
        prop_assert!(pts.iter().all(|w| z.dist2(w) >= m.min));
    }
}
