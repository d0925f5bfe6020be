use proptest::prelude::*;
use zonomorse::homology::{betti, SimplicialComplex};

const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = pow_mod(rows[r][c], P - 2);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c] * inv % P;
                for j in 0..cols {
                    rows[i][j] = ((rows[i][j] - f * rows[r][j]) % P + P) % P;
                }
            }
        }
        r += 1;
    }
    r
}

/// Reduced Betti numbers from dense boundary matrices, starting in degree -1.
fn dense_betti(k: &SimplicialComplex) -> Vec<usize> {
    let by_dim: Vec<Vec<Vec<usize>>> = (0..=k.dim().max(-1) as usize).map(|d| k.of_dim(d)).take_while(|s| !s.is_empty()).collect();
    let mut f = vec![1usize];
    f.extend(by_dim.iter().map(Vec::len));
    // rank of the boundary from degree d to d - 1, with the empty simplex in degree -1
    let mut ranks = vec![0usize; f.len() + 1];
    for d in 0..by_dim.len() {
        let lower: Vec<Vec<usize>> = if d == 0 { vec![vec![]] } else { by_dim[d - 1].clone() };
        let rows = lower
            .iter()
            .map(|t| {
                by_dim[d]
                    .iter()
                    .map(|s| match (0..s.len()).find(|&i| s[..i].iter().chain(&s[i + 1..]).eq(t.iter())) {
                        Some(i) if i % 2 == 0 => 1,
                        Some(_) => P - 1,
                        None => 0,
                    })
                    .collect()
            })
            .collect();
        ranks[d + 1] = rank_mod_p(rows);
    }
    (0..f.len()).map(|i| f[i] - ranks[i] - ranks[i + 1]).collect()
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..7, 1..=4), 1..=7).prop_map(SimplicialComplex::from_maximal)
}

fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..4, 1..=3), 1..=3).prop_map(SimplicialComplex::from_maximal)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn betti_matches_dense_elimination(k in complex()) {
        let r = betti(&k).unwrap();
        let mut want = dense_betti(&k);
        want.resize(r.reduced_betti.len(), 0);
        prop_assert_eq!(&r.reduced_betti, &want);
        prop_assert_eq!(r.reduced_euler, k.reduced_euler());
    }

    #[test]
    fn join_shifts_and_multiplies(a in small_complex(), b in small_complex()) {
        let x = betti(&a).unwrap();
        let y = betti(&b).unwrap();
        let j = betti(&a.join_disjoint(&b)).unwrap();
        for n in -1..=(a.dim() + b.dim() + 1) {
            let mut want = 0;
            for i in -1..=a.dim() {
                want += x.b(i) * y.b(n - 1 - i);
            }
            prop_assert_eq!(j.b(n), want, "degree {}", n);
        }
    }

    #[test]
    fn cones_are_acyclic(k in complex()) {
        let apex = SimplicialComplex::simplex(&[100]);
        prop_assert!(betti(&k.join(&apex)).unwrap().is_acyclic());
    }

    #[test]
    fn suspension_shifts_degree(k in complex()) {
        let poles = SimplicialComplex::from_maximal([vec![100], vec![101]]);
        let s = betti(&k.join(&poles)).unwrap();
        let r = betti(&k).unwrap();
        for d in -1..=k.dim() {
            prop_assert_eq!(s.b(d + 1), r.b(d));
        }
        prop_assert_eq!(s.b(-1), 0);
    }
}

#[test]
fn simplex_boundaries_are_spheres() {
    for n in 1..=6usize {
        let v: Vec<usize> = (0..n).collect();
        let r = betti(&SimplicialComplex::boundary_of(&v)).unwrap();
        assert!(r.is_spherical(n as isize - 2), "boundary of a {n}-vertex simplex: {:?}", r.reduced_betti);
        assert_eq!(r.b(n as isize - 2), 1);
    }
}

#[test]
fn projective_plane_is_rationally_acyclic() {
    // six-vertex triangulation; its 2-torsion is invisible over the rationals
    let rp2 = SimplicialComplex::from_maximal([
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ]);
    let r = betti(&rp2).unwrap();
    assert_eq!(r.f_vector, vec![6, 15, 10]);
    assert!(r.is_acyclic());
}
