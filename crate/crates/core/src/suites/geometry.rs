use std::collections::BTreeSet;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{height_table, show, SuiteOptions, SuiteReport, Tally};
use crate::coxeter::{build_system, separates, FiniteType, TypeTag, Wall};
use crate::morse::edge_check;
use crate::scalar::{int, Vector};
use crate::zonotope::{face_and_cone, min_on_simplex, Richness, Zonotope};

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vector {
    loop {
        let v = Vector((0..dim).map(|_| int(rng.gen_range(-3..=3))).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

/// Face formula against the brute-force argmax over the vertex list, on
/// random generator sets.
pub fn zonotope_faces(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("zonotope-faces");
    t.seed(opts.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for set in 0..50 {
        let dim = 2 + set % 2;
        let size = rng.gen_range(1..=8);
        let gens: Vec<Vector> = (0..size).map(|_| random_vector(&mut rng, dim)).collect();
        let Some(z) = t.check("zonotope", Zonotope::new_in(dim, &gens)) else { continue };
        t.bump("generator_sets");
        t.add("vertices", z.vertices.len() as u64);
        for _ in 0..20 {
            // small entries make directions orthogonal to generators common
            let n = random_vector(&mut rng, dim);
            t.bump("directions");
            let Some((face, cone)) = t.check("face_and_cone", face_and_cone(&z, &n)) else { continue };
            let best = z.vertices.iter().map(|v| n.dot(v)).max().unwrap();
            let expected: BTreeSet<Vector> = z.vertices.iter().filter(|v| n.dot(v) == best).cloned().collect();
            let Some(got) = t.check("face vertices", face.vertices()) else { continue };
            let got: BTreeSet<Vector> = got.into_iter().collect();
            if got != expected || !cone.contains(&n) {
                t.contradiction(format!("generators {gens:?}, direction {n}: formula gives {got:?}, argmax is {expected:?}"));
            }
            if !face.residual.is_empty() {
                t.bump("positive_dimensional_faces");
            }
        }
    }
    t.finish()
}

fn default_weyl_types() -> Vec<FiniteType> {
    vec![FiniteType::A2, FiniteType::B2, FiniteType::G2, FiniteType::A3, FiniteType::B3]
}

/// Walls never separate two of `f`, `c`, `f + c` for face vertices `f` and
/// normal cone rays `c`, over all faces of several invariant zonotopes.
pub fn no_wall(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("no-wall");
    for ty in opts.types.clone().unwrap_or_else(default_weyl_types) {
        let Some((sys, weyl)) = t.check("root system", build_system(TypeTag::finite(ty))) else { continue };
        let walls: Vec<Wall> = sys.positive.iter().map(|r| Wall::linear(r.clone()).unwrap()).collect();
        t.add("walls", walls.len() as u64);
        let mut sets = vec![("roots".to_string(), sys.roots.clone())];
        for (i, ray) in sys.fundamental_rays().into_iter().enumerate() {
            sets.push((format!("orbit of fundamental ray {i}"), weyl.orbit_closure(&[ray])));
        }
        for (label, gens) in sets {
            let ctx = format!("{ty}, {label}");
            let Some(z) = t.check(&ctx, Zonotope::new_in(sys.ambient, &gens)) else { continue };
            if !z.invariant_under(&weyl.elements) {
                t.fail(format!("{ctx}: zonotope is not invariant"));
                continue;
            }
            t.bump("zonotopes");
            for key in z.all_faces() {
                let Some(sub) = t.check(&ctx, Zonotope::new_in(sys.ambient, &z.face_lines(key.mask))) else { continue };
                let fv: Vec<Vector> = sub.vertices.iter().map(|v| &key.base + v).collect();
                let n = z
                    .facets
                    .iter()
                    .filter(|f| fv.iter().all(|v| f.wall.contains(v)))
                    .fold(Vector::zeros(sys.ambient), |acc, f| &acc + &f.wall.normal);
                if n.is_zero() {
                    // the zonotope itself: its normal cone is the lineality space
                    continue;
                }
                t.bump("faces");
                let Some((face, cone)) = t.check(&ctx, face_and_cone(&z, &n)) else { continue };
                let got: BTreeSet<Vector> = face.vertices().unwrap_or_default().into_iter().collect();
                if got != fv.iter().cloned().collect::<BTreeSet<_>>() {
                    t.contradiction(format!("{ctx}: face {key:?} is not the face of its normal {n}"));
                    continue;
                }
                let mut cs = cone.rays.clone();
                for l in &cone.lineality {
                    cs.push(l.clone());
                    cs.push(-l);
                }
                for f in &fv {
                    for c in &cs {
                        let s = f + c;
                        for w in &walls {
                            t.bump("triples_tested");
                            if separates(w, f, c) || separates(w, f, &s) || separates(w, c, &s) {
                                t.contradiction(format!("{ctx}: wall {} separates face vector {f} and cone vector {c}", w.normal));
                            }
                        }
                    }
                }
            }
        }
    }
    t.finish()
}

/// Stated patches and larger ones reaching positive heights.
fn patch_plan(opts: &SuiteOptions) -> Vec<(FiniteType, usize)> {
    let stated = [(FiniteType::A2, 4), (FiniteType::C2, 4), (FiniteType::G2, 4), (FiniteType::A3, 3)];
    let extended = [(FiniteType::A2, 10), (FiniteType::C2, 12), (FiniteType::G2, 24), (FiniteType::A3, 12)];
    let types = opts.types.clone();
    match (types, opts.radius) {
        (Some(ts), Some(r)) => ts.into_iter().map(|t| (t, r)).collect(),
        (Some(ts), None) => stated.iter().chain(&extended).filter(|(t, _)| ts.contains(t)).copied().collect(),
        (None, Some(r)) => stated.iter().map(|&(t, _)| (t, r)).collect(),
        (None, None) => stated.iter().chain(&extended).copied().collect(),
    }
}

/// Every patch simplex attains its minimal height at one of its vertices.
pub fn contains_vertex(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("contains-vertex");
    let level = opts.richness.unwrap_or(Richness::AlmostRich);
    for (ty, r) in patch_plan(opts) {
        let ctx = format!("~{ty} R={r} {level}");
        let Some(table) = t.check(&ctx, height_table(ty, r, level)) else { continue };
        t.note(format!("{ctx} simplices"), table.patch.simplices.len());
        for s in &table.patch.simplices {
            let coords = table.patch.coords(s);
            let Some(m) = t.check(&ctx, min_on_simplex(&table.zonotope, &coords)) else { continue };
            t.bump("simplices");
            if m.min.is_positive() {
                t.bump("positive_minimum");
            }
            if m.vertex_minimizers.is_empty() {
                t.contradiction(format!("{ctx}: minimum {} over {} is attained at no vertex", m.min, show(&coords)));
            }
        }
    }
    t.finish()
}

/// Every edge is monotone and descends exactly toward obtuse-angle
/// neighbours.
pub fn gradient_criterion(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("gradient-criterion");
    let level = opts.richness.unwrap_or(Richness::AlmostRich);
    for (ty, r) in patch_plan(opts) {
        let ctx = format!("~{ty} R={r} {level}");
        let Some(table) = t.check(&ctx, height_table(ty, r, level)) else { continue };
        for s in table.patch.simplices.iter().filter(|s| s.len() == 2) {
            let Some(e) = t.check(&ctx, edge_check(&table, [s[0], s[1]])) else { continue };
            t.bump("edges");
            t.add("positive_endpoints", e.angle_sign.iter().filter(|a| a.is_some()).count() as u64);
            t.add("obtuse_endpoints", e.angle_sign.iter().filter(|a| **a == Some(-1)).count() as u64);
            if !e.monotone || !e.consistent {
                t.contradiction(format!(
                    "{ctx}: edge {} monotone={} consistent={} signs={:?}",
                    show(&table.patch.coords(s)),
                    e.monotone,
                    e.consistent,
                    e.angle_sign
                ));
            }
        }
    }
    t.finish()
}
