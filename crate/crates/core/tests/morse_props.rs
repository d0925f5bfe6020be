use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use zonomorse::coxeter::FiniteType;
use zonomorse::morse::{build_registry, height_and_gradient, sub_morse, subdivide, HeightTable, HorizontalRegistry};
use zonomorse::scalar::{frac, int, Scalar, Vector};
use zonomorse::suites::height_table;
use zonomorse::zonotope::{min_on_simplex, Richness};

fn plane() -> &'static (HeightTable, HorizontalRegistry) {
    static CELL: OnceLock<(HeightTable, HorizontalRegistry)> = OnceLock::new();
    CELL.get_or_init(|| {
        let t = height_table(FiniteType::A2, 8, Richness::AlmostRich).unwrap();
        let r = build_registry(&t).unwrap();
        (t, r)
    })
}

fn point(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-40i64..=40, dim).prop_map(|xs| Vector(xs.into_iter().map(|x| frac(x, 4)).collect()))
}

/// Convex combination of the vertices of `s` with the given positive weights.
fn blend(t: &HeightTable, s: &[usize], w: &[u32]) -> Vector {
    let w = &w[..s.len()];
    let total: u32 = w.iter().sum();
    let mut p = Vector::zeros(t.patch.vertices[s[0]].dim());
    for (&v, &c) in s.iter().zip(w) {
        p.add_scaled(&frac(c as i64, total as i64), &t.patch.vertices[v]);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // d(m) <= (d(x) + d(y)) / 2 at the midpoint m, squared out exactly:
    // 4a <= b + c + 2 sqrt(bc)
    #[test]
    fn distance_is_convex(x in point(3), y in point(3)) {
        let z = &plane().0.zonotope;
        let mut m = x.clone();
        m.add_scaled(&int(1), &y);
        let m = m.scale(&frac(1, 2));
        let (a, b, c) = (z.dist2(&m), z.dist2(&x), z.dist2(&y));
        let lhs: Scalar = int(4) * &a - &b - &c;
        prop_assert!(!lhs.is_positive() || &lhs * &lhs <= int(4) * &b * &c);
    }

    #[test]
    fn height_is_constant_on_horizontal_simplices(pick in any::<prop::sample::Index>(), w in prop::collection::vec(1u32..=9, 3)) {
        let (t, reg) = plane();
        let positive: Vec<usize> = reg.positive().collect();
        let id = positive[pick.index(positive.len())];
        let s = &reg.simplices[id];
        let p = blend(t, s, &w);
        let (h2, g) = height_and_gradient(t, &p).unwrap();
        prop_assert_eq!(&h2, &reg.h2[id]);
        let g = g.unwrap();
        prop_assert_eq!(Some(&g), reg.gradient[id].as_ref());
        for &v in &s[1..] {
            let e = &t.patch.vertices[v] - &t.patch.vertices[s[0]];
            prop_assert!(g.dot(&e).is_zero());
        }
    }

    #[test]
    fn patch_simplices_take_their_minimum_at_a_vertex(pick in any::<prop::sample::Index>()) {
        let (t, _) = plane();
        let s = &t.patch.simplices[pick.index(t.patch.simplices.len())];
        let coords: Vec<Vector> = s.iter().map(|&v| t.patch.vertices[v].clone()).collect();
        let m = min_on_simplex(&t.zonotope, &coords).unwrap();
        prop_assert!(!m.vertex_minimizers.is_empty());
        let lowest = s.iter().map(|&v| t.h2[v].clone()).min().unwrap();
        prop_assert_eq!(m.min, lowest);
    }
}

#[test]
fn minimal_faces_are_horizontal_faces_fixed_by_the_map() {
    let (_, reg) = plane();
    let mut checked = 0;
    for id in reg.positive() {
        let Some(m) = reg.sigma_min[id] else { continue };
        let s = &reg.simplices[id];
        assert!(reg.simplices[m].iter().all(|v| s.contains(v)));
        assert_eq!(reg.h2[m], reg.h2[id]);
        assert_eq!(reg.sigma_min[m], Some(m));
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn subdivision_is_flag_and_adjacent_values_differ() {
    let (t, reg) = plane();
    let sub = subdivide(t, reg).unwrap();
    assert!(sub.complex.is_flag());
    for e in sub.complex.of_dim(1) {
        assert_ne!(sub_morse(reg, e[0]), sub_morse(reg, e[1]), "edge {e:?}");
    }
}

#[test]
fn depth_zero_exactly_where_there_is_no_move() {
    let (_, reg) = plane();
    for id in 0..reg.len() {
        assert_eq!(reg.dp[id] == 0, reg.moves[id].is_empty(), "{:?}", reg.simplices[id]);
        for &m in &reg.moves[id] {
            assert!(reg.dp[id] > reg.dp[m]);
        }
    }
}
